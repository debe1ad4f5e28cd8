#include <catch2/catch_amalgamated.hpp>

#include <eil/designs.hpp>
#include <eil/exact.hpp>
#include <eil/search.hpp>

#include <algorithm>
#include <cmath>
#include <set>

using eil::Backend;
using eil::Rational;
using eil::RationalMatrix;
using eil::SearchConfig;

namespace {

SearchConfig make_config(Backend b, int n) {
    SearchConfig c;
    c.backend = b;
    c.n = n;
    return c;
}

} // namespace

TEST_CASE("mask round-trip") {
    for (int n : {2, 3, 4}) {
        const std::uint64_t total = 1ULL << (n * n);
        for (std::uint64_t mask = 0; mask < total; mask += (n == 4 ? 257 : 1)) {
            CHECK(eil::matrix_to_mask(eil::mask_to_matrix(mask, n)) == mask);
        }
    }
}

TEST_CASE("int64 inverse-norm kernel agrees with exact inversion") {
    for (int n = 2; n <= 4; ++n) {
        const std::uint64_t total = 1ULL << (n * n);
        std::uint64_t step = n == 4 ? 97 : 1;
        for (std::uint64_t mask = 0; mask < total; mask += step) {
            const auto kernel = eil::detail::binary_inverse_norm_sq(mask, n);
            const RationalMatrix a = eil::to_rational(eil::mask_to_matrix(mask, n));
            if (eil::determinant_exact(a).is_zero()) {
                CHECK(kernel.singular);
            } else {
                REQUIRE_FALSE(kernel.singular);
                CHECK(Rational(kernel.num, kernel.den) ==
                      eil::frobenius_norm_sq(eil::invert_exact(a)));
            }
        }
    }
}

TEST_CASE("exhaustive enumeration at order two finds identity and swap") {
    const auto r = eil::enumerate_binary(make_config(Backend::enumerate, 2));
    CHECK(r.exact);
    CHECK(r.examined == 16);
    CHECK(r.singular == 10);
    CHECK(r.min_norm_sq == Rational(2));
    CHECK(r.minimizer_count == 2);
    CHECK(r.all_satisfy_bound);
    REQUIRE(r.minimizers.size() == 2);
    std::set<std::uint64_t> masks;
    for (const auto& m : r.minimizers)
        masks.insert(eil::matrix_to_mask(m));
    // 0b0110 = antidiagonal (swap), 0b1001 = identity
    CHECK(masks == std::set<std::uint64_t>{6, 9});
}

TEST_CASE("exhaustive enumeration at order three finds the six S-matrices") {
    const auto r = eil::enumerate_binary(make_config(Backend::enumerate, 3));
    CHECK(r.examined == 512);
    CHECK(r.min_norm_sq == Rational(9, 4));
    CHECK(r.minimizer_count == 6);
    CHECK(r.all_satisfy_bound);
    REQUIRE(r.minimizers.size() == 6);
    std::set<std::uint64_t> masks;
    for (const auto& m : r.minimizers) {
        CHECK(eil::is_smatrix(eil::to_rational(m)));
        masks.insert(eil::matrix_to_mask(m));
    }
    CHECK(masks.size() == 6);
    // the minimizer set is closed under transpose
    for (const auto& m : r.minimizers)
        CHECK(masks.count(eil::matrix_to_mask(eil::transpose(m))) == 1);
    // J - P for every permutation matrix P is a minimizer; check one
    RationalMatrix jp = eil::sub(RationalMatrix::ones(3), RationalMatrix::identity(3));
    CHECK(eil::frobenius_norm_sq(eil::invert_exact(jp)) == Rational(9, 4));
}

TEST_CASE("enumeration at order four stays strictly above the bound") {
    auto config = make_config(Backend::enumerate, 4);
    const auto r = eil::enumerate_binary(config);
    CHECK(r.examined == 65536);
    CHECK(r.min_norm_sq > Rational(5, 2));
    CHECK(r.all_satisfy_bound);
    CHECK(r.minimizer_count >= 1);
}

TEST_CASE("canonical pruning preserves the minimum") {
    auto plain = make_config(Backend::enumerate, 3);
    auto pruned = plain;
    pruned.canonical_prune = true;
    const auto r1 = eil::enumerate_binary(plain);
    const auto r2 = eil::enumerate_binary(pruned);
    CHECK(r2.pruned);
    CHECK(r2.min_norm_sq == r1.min_norm_sq);
    CHECK(r2.examined < r1.examined);
    // representatives only, but every representative is still an S-matrix
    for (const auto& m : r2.minimizers)
        CHECK(eil::is_smatrix(eil::to_rational(m)));

    auto pruned4 = make_config(Backend::enumerate, 4);
    pruned4.canonical_prune = true;
    const auto r4 = eil::enumerate_binary(pruned4);
    const auto r4p = eil::enumerate_binary(make_config(Backend::enumerate, 4));
    CHECK(r4.min_norm_sq == r4p.min_norm_sq);

    auto pruned5 = make_config(Backend::enumerate, 5);
    pruned5.canonical_prune = true;
    CHECK_THROWS_AS(eil::enumerate_binary(pruned5), eil::InvalidArgument);
}

TEST_CASE("enumeration rejects unsupported orders") {
    CHECK_THROWS_AS(eil::enumerate_binary(make_config(Backend::enumerate, 1)),
                    eil::InvalidArgument);
    CHECK_THROWS_AS(eil::enumerate_binary(make_config(Backend::enumerate, 6)),
                    eil::OrderTooLarge);
}

TEST_CASE("enumeration results are independent of worker count") {
    auto c1 = make_config(Backend::enumerate, 3);
    auto c4 = c1;
    c1.workers = 1;
    c4.workers = 4;
    const auto r1 = eil::enumerate_binary(c1);
    const auto r4 = eil::enumerate_binary(c4);
    CHECK(r1.to_json().dump() == r4.to_json().dump());
}

TEST_CASE("box sampling respects the bound on every draw") {
    auto config = make_config(Backend::sample, 3);
    config.count = 2000;
    config.seed = 42;
    const auto r = eil::sample_box(config);
    CHECK(r.examined == 2000);
    CHECK(r.violations == 0);
    CHECK(r.all_satisfy_bound);
    CHECK(r.min_norm_sq_float > eil::lower_bound_sq(3).to_double());
    CHECK(r.min_index < 2000);

    auto c4 = config;
    c4.workers = 3;
    const auto rp = eil::sample_box(c4);
    CHECK(r.to_json().dump() == rp.to_json().dump());
}

TEST_CASE("planted identity at order two is detected as an equality candidate") {
    auto config = make_config(Backend::sample, 2);
    config.count = 500;
    config.seed = 7;
    config.plant_identity = true;
    const auto r = eil::sample_box(config);
    CHECK(r.escalations >= 1);
    CHECK(r.equality_candidates == 1);
    CHECK(r.violations == 0);
    CHECK(r.min_index == 0);
    CHECK(r.min_norm_sq_float == 2.0);
}

TEST_CASE("analytic gradient matches closed forms and finite differences") {
    eil::FloatMatrix id(2);
    id(0, 0) = 1.0;
    id(1, 1) = 1.0;
    const auto g_id = eil::gradient_inv_norm_sq(id);
    CHECK(g_id(0, 0) == Catch::Approx(-2.0));
    CHECK(g_id(1, 1) == Catch::Approx(-2.0));
    CHECK(std::abs(g_id(0, 1)) < 1e-14);

    eil::FloatMatrix d(2);
    d(0, 0) = 1.0;
    d(1, 1) = 0.5;
    const auto g_d = eil::gradient_inv_norm_sq(d);
    CHECK(g_d(0, 0) == Catch::Approx(-2.0));
    CHECK(g_d(1, 1) == Catch::Approx(-16.0));

    // accept/reject on conditioning so the finite-difference reference is sound
    int done = 0;
    for (std::uint64_t draw = 0; done < 5 && draw < 200; ++draw) {
        eil::RngStream rng(31337, draw);
        eil::FloatMatrix a(4);
        for (auto& x : a)
            x = rng.next_unit();
        if (eil::condition_estimate(a) > 50.0)
            continue;
        const auto g = eil::gradient_inv_norm_sq(a);
        const auto fd = eil::fd_gradient(a);
        double num = 0, den = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                num += (g(i, j) - fd(i, j)) * (g(i, j) - fd(i, j));
                den += g(i, j) * g(i, j);
            }
        CHECK(std::sqrt(num) <= 1e-6 * std::sqrt(den));
        ++done;
    }
    CHECK(done == 5);

    eil::FloatMatrix sing(2);
    sing(0, 0) = 1.0;
    sing(0, 1) = 1.0;
    sing(1, 0) = 1.0;
    sing(1, 1) = 1.0;
    CHECK_THROWS_AS(eil::gradient_inv_norm_sq(sing), eil::SingularMatrix);
}

TEST_CASE("projected descent from an S-matrix stays at the optimum") {
    const auto s3 = eil::to_float(eil::smatrix_of_order(3).rational());
    auto config = make_config(Backend::descend, 3);
    config.starts = 1;
    config.seed = 5;
    const auto r = eil::descend(config, s3);
    REQUIRE(r.runs.size() == 1);
    CHECK(r.runs[0].from_given_start);
    CHECK(r.runs[0].converged);
    CHECK(std::abs(r.runs[0].terminal - 2.25) <= 1e-10);
    CHECK(r.violations == 0);
}

TEST_CASE("projected descent from random starts stays above the bound") {
    auto config = make_config(Backend::descend, 3);
    config.starts = 20;
    config.seed = 11;
    config.max_iters = 4000;
    const auto r = eil::descend(config, std::nullopt);
    CHECK(r.runs.size() == 20);
    CHECK(r.violations == 0);
    CHECK(r.all_satisfy_bound);
    int converged = 0;
    for (const auto& run : r.runs) {
        if (run.converged) {
            ++converged;
            CHECK(run.terminal >= 2.25 - 1e-6);
            CHECK(run.pg_norm <= eil::kProjGradTol);
        }
    }
    CHECK(converged >= 15); // most random starts must actually finish

    auto c2 = config;
    c2.workers = 2;
    const auto r2 = eil::descend(c2, std::nullopt);
    CHECK(r.to_json().dump() == r2.to_json().dump());
}

TEST_CASE("descent at order two reaches the flat minimum") {
    auto config = make_config(Backend::descend, 2);
    config.starts = 8;
    config.seed = 3;
    const auto r = eil::descend(config, std::nullopt);
    CHECK(r.violations == 0);
    double best = std::numeric_limits<double>::infinity();
    int converged = 0;
    for (const auto& run : r.runs)
        if (run.converged) {
            ++converged;
            best = std::min(best, run.terminal);
        }
    REQUIRE(converged >= 1);
    CHECK(best >= 2.0 - 1e-9);
    CHECK(best <= 2.0 + 1e-4); // the basin of the global optimum is reachable
}

TEST_CASE("search configs echo deterministic parameters but not workers") {
    SearchConfig c = make_config(Backend::sample, 3);
    c.workers = 7;
    const eil::json j = c.echo_json();
    CHECK_FALSE(j.contains("workers"));
    CHECK(j["prng"] == "splitmix64-ctr/v1");
    CHECK(j["backend"] == "sample");
}
