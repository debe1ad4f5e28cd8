#include <catch2/catch_amalgamated.hpp>

#include <eil/designs.hpp>
#include <eil/exact.hpp>
#include <eil/proof.hpp>
#include <eil/rng.hpp>

#include <cmath>

using eil::Rational;
using eil::RationalMatrix;

namespace {

RationalMatrix random_interior(eil::RngStream& rng, int n) {
    // entries in [1/8, 7/8]: keeps second-difference probes inside the box
    RationalMatrix a(n);
    for (auto& x : a)
        x = Rational(1, 8) + Rational(static_cast<long long>(rng.next_below(49)), 64);
    return a;
}

} // namespace

TEST_CASE("proof pair coincides with itself exactly at an S-matrix") {
    const auto s3 = eil::smatrix_of_order(3).rational();
    const auto pair = eil::build_proof_pair(s3);
    CHECK(pair.kind == eil::BoundCaseKind::odd);
    CHECK(pair.k == 2);
    CHECK(eil::pair_m_equals_n(pair));

    const auto id_pair = eil::build_proof_pair(RationalMatrix::identity(3));
    CHECK_FALSE(eil::pair_m_equals_n(id_pair));

    const auto s7 = eil::smatrix_of_order(7).rational();
    CHECK(eil::pair_m_equals_n(eil::build_proof_pair(s7)));
}

TEST_CASE("trace identity at S-matrices gives the squared embedding order") {
    for (int n : {3, 7, 11}) {
        const auto s = eil::smatrix_of_order(n).rational();
        const auto t = eil::verify_trace_identity(eil::build_proof_pair(s));
        CHECK(t.expected_inner_product == Rational((n + 1) * (n + 1)));
        CHECK(t.inner_product_value == t.expected_inner_product);
        CHECK(t.cauchy_schwarz_holds);
        // Cauchy–Schwarz is tight exactly when M = N
        CHECK(t.inner_product_value * t.inner_product_value ==
              t.m_norm_sq * t.n_norm_sq);
        CHECK(t.derived_bound_sq_on_inverse == eil::lower_bound_sq(n));
        CHECK(t.inv_norm_sq == eil::lower_bound_sq(n));
    }
}

TEST_CASE("trace identity holds for arbitrary invertible box matrices") {
    eil::RngStream rng(314, 0);
    for (int n : {3, 4, 5, 6, 7}) {
        int done = 0;
        while (done < 8) {
            RationalMatrix a = random_interior(rng, n);
            if (eil::determinant_exact(a).is_zero())
                continue;
            const auto t = eil::verify_trace_identity(eil::build_proof_pair(a));
            const int k = eil::classify(n).k;
            if (n % 2 == 1)
                CHECK(t.expected_inner_product == Rational((n + 1) * (n + 1)));
            else
                CHECK(t.expected_inner_product ==
                      Rational(2 * k) * Rational(2 * k * k - 1) / Rational(k - 1));
            CHECK(t.cauchy_schwarz_holds);
            CHECK(t.derived_bound_sq_on_inverse <= t.inv_norm_sq);
            ++done;
        }
    }
}

TEST_CASE("trace identity on the identity matrix, order 4") {
    const auto t = eil::verify_trace_identity(
        eil::build_proof_pair(RationalMatrix::identity(4)));
    // k = 2: expected inner product 2k(2k^2 - 1)/(k - 1) = 28
    CHECK(t.expected_inner_product == Rational(28));
    CHECK(t.inner_product_value == Rational(28));
    CHECK(t.cauchy_schwarz_holds);
    CHECK(t.derived_bound_sq_on_inverse <= Rational(4));
}

TEST_CASE("even-case scale factors multiply to one") {
    const auto p = eil::build_proof_pair(RationalMatrix::identity(6));
    CHECK(p.kind == eil::BoundCaseKind::even);
    CHECK(p.k == 3);
    CHECK(p.scale_sq_m == Rational(27, 2)); // k^3/(k-1)
    CHECK(p.scale_sq_m * p.scale_sq_n == Rational(1));
    CHECK(p.inv_coeff_sq == p.scale_sq_m);
    CHECK(p.corner == Rational(0));

    const auto podd = eil::build_proof_pair(RationalMatrix::identity(5));
    CHECK(podd.scale_sq_m == Rational(1));
    CHECK(podd.inv_coeff_sq == Rational(9)); // k^2 with k = 3
    CHECK(podd.corner == Rational(1));
}

TEST_CASE("proof pair rejects invalid input") {
    CHECK_THROWS_AS(eil::build_proof_pair(RationalMatrix::ones(3)),
                    eil::SingularMatrix);
    RationalMatrix big = RationalMatrix::identity(3);
    big(0, 0) = Rational(3);
    CHECK_THROWS_AS(eil::build_proof_pair(big), eil::EntryOutOfBox);
    CHECK_THROWS_AS(eil::build_proof_pair(RationalMatrix::identity(2)),
                    eil::ParityMismatch); // n = 2 has its own case
}

TEST_CASE("f values on reference matrices") {
    const auto s3 = eil::smatrix_of_order(3).rational();
    CHECK(eil::f_value(s3, 2) == Rational(9));
    CHECK(eil::f_value(RationalMatrix::identity(3), 2) == Rational(33, 4));
    CHECK(eil::f_value(RationalMatrix(3), 2) == Rational(0));
    // all-ones overshoots the optimal row sum: 36 - (5/4)*27 = 9/4
    CHECK(eil::f_value(RationalMatrix::ones(3), 2) == Rational(9, 4));

    eil::RngStream rng(2718, 0);
    for (int n : {3, 5}) {
        const int k = (n + 1) / 2;
        for (int rep = 0; rep < 10; ++rep) {
            const RationalMatrix a = random_interior(rng, n);
            CHECK(eil::f_value(a, k) == eil::f_value_matrix_form(a, k));
        }
    }
}

TEST_CASE("g values on reference matrices") {
    CHECK(eil::g_value(RationalMatrix::identity(4), 2) == Rational(14));
    CHECK(eil::g_value(RationalMatrix(4), 2) == Rational(0));

    // any {0,1} matrix with all row sums k attains the maximum
    RationalMatrix rows2(4);
    const int pattern[4][4] = {{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}, {1, 0, 0, 1}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            rows2(i, j) = Rational(pattern[i][j]);
    CHECK(eil::g_value(rows2, 2) == Rational(20));

    eil::RngStream rng(1618, 0);
    for (int n : {4, 6}) {
        const int k = n / 2;
        for (int rep = 0; rep < 10; ++rep) {
            const RationalMatrix a = random_interior(rng, n);
            CHECK(eil::g_value(a, k) == eil::g_value_matrix_form(a, k));
        }
    }
}

TEST_CASE("per-row terms and their integer maxima") {
    // k = 2: h(p) = 4p - (2k+1)p^2/k^2 maximized over integers at p = k
    CHECK(eil::f_row_term(1, 2) == Rational(11, 4));
    CHECK(eil::f_row_term(2, 2) == Rational(3));
    CHECK(eil::f_row_term(3, 2) == Rational(3, 4));
    CHECK(eil::f_row_term(2, 2) > eil::f_row_term(1, 2));

    for (int k : {2, 3, 4, 16}) {
        for (long long p = 0; p <= 2 * k - 1; ++p)
            if (p != k)
                CHECK(eil::f_row_term(p, k) < eil::f_row_term(k, k));
        for (long long p = 0; p <= 2 * k; ++p)
            if (p != k)
                CHECK(eil::g_row_term(p, k) < eil::g_row_term(k, k));
    }
}

TEST_CASE("f maximization closed form and exhaustive check") {
    const auto r3 = eil::verify_f_max(3);
    CHECK(r3.ok);
    CHECK(r3.max_value == Rational(9));
    CHECK(r3.argmax_p == 2);
    CHECK(r3.unique_argmax);
    CHECK(r3.enumerated);
    CHECK(r3.enumeration_matches);
    // 27 = C(3,2)^3 binary matrices with every row sum equal to 2
    CHECK(r3.enumeration_maximizers == 27);

    const auto r31 = eil::verify_f_max(31);
    CHECK(r31.ok);
    CHECK(r31.max_value == Rational(961));
    CHECK(r31.argmax_p == 16);
    CHECK_FALSE(r31.enumerated);

    CHECK(eil::verify_f_max(5).ok);
    CHECK(eil::verify_f_max(7).ok);
    CHECK_THROWS_AS(eil::verify_f_max(4), eil::ParityMismatch);
}

TEST_CASE("g maximization closed form and exhaustive check") {
    const auto r4 = eil::verify_g_max(4);
    CHECK(r4.ok);
    CHECK(r4.max_value == Rational(20));
    CHECK(r4.argmax_p == 2);
    CHECK(r4.enumerated);
    CHECK(r4.enumeration_matches);
    // 1296 = C(4,2)^4 binary matrices with every row sum equal to 2
    CHECK(r4.enumeration_maximizers == 1296);

    const auto r6 = eil::verify_g_max(6);
    CHECK(r6.ok);
    CHECK(r6.max_value == Rational(39)); // 2k(2k^2-2k+1)/(k-1), k = 3
    CHECK_FALSE(r6.enumerated);

    const auto r8 = eil::verify_g_max(8);
    CHECK(r8.max_value == Rational(200, 3));

    CHECK_THROWS_AS(eil::verify_g_max(5), eil::ParityMismatch);
}

TEST_CASE("second differences of f and g are the predicted constants") {
    CHECK(eil::f_second_derivative_constant(2) == Rational(11, 2));
    CHECK(eil::g_second_derivative_constant(3) == Rational(7));

    eil::RngStream rng(555, 0);
    for (int k : {2, 3}) {
        const int n_odd = 2 * k - 1;
        const int n_even = 2 * k;
        const Rational h(1, 8);
        for (int rep = 0; rep < 4; ++rep) {
            RationalMatrix a = random_interior(rng, n_odd);
            const int i = static_cast<int>(rng.next_below(n_odd));
            const int j = static_cast<int>(rng.next_below(n_odd));
            RationalMatrix up = a, down = a;
            up(i, j) += h;
            down(i, j) -= h;
            // f is quadratic and convex in each entry, so the centered second
            // difference equals +c * h^2 exactly for any step size
            const Rational second = eil::f_value(up, k) + eil::f_value(down, k) -
                                    Rational(2) * eil::f_value(a, k);
            CHECK(second == eil::f_second_derivative_constant(k) * h * h);

            RationalMatrix b = random_interior(rng, n_even);
            const int i2 = static_cast<int>(rng.next_below(n_even));
            const int j2 = static_cast<int>(rng.next_below(n_even));
            RationalMatrix bup = b, bdown = b;
            bup(i2, j2) += h;
            bdown(i2, j2) -= h;
            const Rational gsecond = eil::g_value(bup, k) + eil::g_value(bdown, k) -
                                     Rational(2) * eil::g_value(b, k);
            CHECK(gsecond == eil::g_second_derivative_constant(k) * h * h);
        }
    }

    // float cross-check of the same quantity, probed at an interior entry
    const double hf = 1e-3;
    const double fc = eil::f_second_derivative_constant(2).to_double();
    RationalMatrix a = RationalMatrix::identity(3);
    a(1, 2) = Rational(1, 2);
    auto feval = [&](double delta) {
        RationalMatrix m = a;
        m(1, 2) += Rational::from_double(delta);
        return eil::f_value(m, 2).to_double();
    };
    const double second = feval(hf) + feval(-hf) - 2.0 * feval(0.0);
    CHECK(second == Catch::Approx(fc * hf * hf).epsilon(1e-6));
}

TEST_CASE("even-case equality would force a non-integer Gram entry") {
    CHECK(eil::check_even_non_attainment(4) == Rational(2, 3));
    CHECK(eil::check_even_non_attainment(6) == Rational(6, 5));
    CHECK(eil::check_even_non_attainment(20) == Rational(90, 19));
    for (int k = 2; k <= 100; ++k) {
        const Rational v = eil::check_even_non_attainment(2 * k);
        CHECK(v.den() > 1);
        CHECK(v == Rational(static_cast<long long>(k) * (k - 1), 2 * k - 1));
    }
    CHECK_THROWS_AS(eil::check_even_non_attainment(5), eil::ParityMismatch);
}

TEST_CASE("2x2 identity holds exactly on rational quadruples") {
    using eil::case2x2_identity_residual;
    CHECK(case2x2_identity_residual(Rational(1), Rational(0), Rational(0),
                                    Rational(1)) == Rational(0));
    CHECK(case2x2_identity_residual(Rational(0), Rational(1), Rational(1),
                                    Rational(0)) == Rational(0));
    CHECK(case2x2_identity_residual(Rational(1), Rational(1, 2), Rational(0),
                                    Rational(1)) == Rational(0));

    eil::RngStream rng(777, 0);
    for (int rep = 0; rep < 200; ++rep) {
        const Rational a(static_cast<long long>(rng.next_below(9)), 8);
        const Rational b(static_cast<long long>(rng.next_below(9)), 8);
        const Rational c(static_cast<long long>(rng.next_below(9)), 8);
        const Rational d(static_cast<long long>(rng.next_below(9)), 8);
        if ((a * d - b * c).is_zero())
            continue;
        CHECK(case2x2_identity_residual(a, b, c, d) == Rational(0));
    }

    CHECK_THROWS_AS(case2x2_identity_residual(Rational(1), Rational(1), Rational(1),
                                              Rational(1)),
                    eil::SingularMatrix);
}

TEST_CASE("2x2 bracket separates equality from strict excess") {
    using eil::case2x2_bracket;
    CHECK(case2x2_bracket(Rational(1), Rational(0), Rational(0), Rational(1)) ==
          Rational(0));
    CHECK(case2x2_bracket(Rational(0), Rational(1), Rational(1), Rational(0)) ==
          Rational(0));
    CHECK(case2x2_bracket(Rational(1), Rational(1, 2), Rational(0), Rational(1)) >
          Rational(0));
    CHECK(case2x2_bracket(Rational(1), Rational(0), Rational(0), Rational(1, 2)) >
          Rational(0));
    // bracket >= 0 across the box (spot check on a grid)
    for (int ai = 0; ai <= 4; ++ai)
        for (int bi = 0; bi <= 4; ++bi)
            for (int ci = 0; ci <= 4; ++ci)
                for (int di = 0; di <= 4; ++di)
                    CHECK_FALSE(case2x2_bracket(Rational(ai, 4), Rational(bi, 4),
                                                Rational(ci, 4), Rational(di, 4))
                                    .is_negative());
}

TEST_CASE("2x2 identity float residual is tiny") {
    const double r = eil::case2x2_identity_residual(0.9, 0.3, 0.2, 0.8);
    CHECK(std::abs(r) < 1e-12);
}

TEST_CASE("odd equality chain accepts S-matrices and rejects others") {
    CHECK(eil::verify_equality_case_odd(eil::smatrix_of_order(3).rational()));
    CHECK(eil::verify_equality_case_odd(eil::smatrix_of_order(7).rational()));
    CHECK_FALSE(eil::verify_equality_case_odd(RationalMatrix::identity(3)));
    CHECK_FALSE(eil::verify_equality_case_odd(RationalMatrix::identity(7)));
    CHECK_THROWS_AS(eil::verify_equality_case_odd(RationalMatrix::identity(4)),
                    eil::ParityMismatch);
}

TEST_CASE("trace suite passes and is partition independent") {
    const auto r1 = eil::run_trace_suite(3, 20260823, 60, 1);
    CHECK(r1.all_pass);
    CHECK(r1.completed == 60);
    CHECK(r1.cauchy_schwarz_all);
    CHECK(r1.expected == Rational(16));

    const auto r3 = eil::run_trace_suite(3, 20260823, 60, 3);
    CHECK(r1.to_json().dump() == r3.to_json().dump());

    const auto re = eil::run_trace_suite(4, 7, 40, 2);
    CHECK(re.all_pass);
    CHECK(re.expected == Rational(28));
}

TEST_CASE("2x2 suite finds zero rational residuals") {
    const auto r = eil::run_2x2_suite(99, 300, 1);
    CHECK(r.rational_all_zero);
    CHECK(r.brackets_all_nonnegative);
    CHECK(r.rational_done == 300);
    CHECK(r.max_float_residual < 1e-12);

    const auto r2 = eil::run_2x2_suite(99, 300, 4);
    CHECK(r.to_json().dump() == r2.to_json().dump());
}

TEST_CASE("equality chain suite across constructible orders") {
    const auto r = eil::run_equality_chain_suite({3, 7, 11});
    CHECK(r.all_equality_true);
    CHECK(r.negative_controls_false);
}

TEST_CASE("non-attainment suite runs over a k range") {
    const auto r = eil::run_non_attainment_suite(2, 500);
    CHECK(r.all_non_integer);
    CHECK_THROWS_AS(eil::run_non_attainment_suite(1, 5), eil::InvalidArgument);
}
