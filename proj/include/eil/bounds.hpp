#pragma once

/*
 * Lower bounds on ‖A⁻¹‖_F over D_n (the n×n matrices with entries in [0,1])
 * and the report type used by every verification path.
 *
 * The bound depends on the parity of n; everything is compared on squares so
 * the comparison stays exact:
 *   odd n ≥ 3:  ‖A⁻¹‖_F² ≥ 4n²/(n+1)²        (equality iff A is an S-matrix)
 *   even n ≥ 4: ‖A⁻¹‖_F² > 4(n²−2n+2)/n²     (strict; sharpness open)
 *   n = 2:      ‖A⁻¹‖_F² ≥ 2                  (equality iff identity or swap)
 *   n = 1:      ‖A⁻¹‖_F² ≥ 1 — documented extension, reported paper_scope=false
 */

#include <string>

#include <json.hpp>

#include "eil/errors.hpp"
#include "eil/exact.hpp"
#include "eil/float_lu.hpp"
#include "eil/io.hpp"
#include "eil/matrix.hpp"
#include "eil/rational.hpp"

namespace eil {

// Float-path margins closer to the bound than this are only "equality
// candidates" and must be escalated to the exact path before any claim.
inline constexpr double kFloatMarginTol = 1e-9;

enum class BoundCaseKind { odd, even, two };

inline const char* to_string(BoundCaseKind c) {
    switch (c) {
    case BoundCaseKind::odd:
        return "odd";
    case BoundCaseKind::even:
        return "even";
    default:
        return "two";
    }
}

struct BoundCase {
    int n = 0;
    BoundCaseKind kind = BoundCaseKind::odd;
    int k = 0; // (n+1)/2 for odd n, n/2 for even n
};

inline BoundCase classify(int n) {
    if (n < 1)
        throw InvalidArgument("classify: order must be positive");
    BoundCase c;
    c.n = n;
    if (n == 2) {
        c.kind = BoundCaseKind::two;
        c.k = 1;
    } else if (n % 2 == 1) {
        c.kind = BoundCaseKind::odd;
        c.k = (n + 1) / 2;
    } else {
        c.kind = BoundCaseKind::even;
        c.k = n / 2;
    }
    return c;
}

// n = 1 falls under the odd formula (value 1) but is flagged out of scope.
inline bool paper_scope(int n) {
    return n >= 2;
}

// Exact square of the lower bound on ‖A⁻¹‖_F over D_n.
inline Rational lower_bound_sq(int n) {
    if (n < 1)
        throw InvalidArgument("lower_bound_sq: order must be positive");
    const Rational nn(n);
    if (n == 2)
        return Rational(2);
    if (n % 2 == 1)
        return Rational(4) * nn * nn / (Rational(n + 1) * Rational(n + 1));
    return Rational(4) * (nn * nn - Rational(2) * nn + Rational(2)) / (nn * nn);
}

struct BoundReport {
    int n = 0;
    BoundCaseKind kind = BoundCaseKind::two;
    Rational bound_sq;
    bool exact = true; // rational path vs float path
    Rational norm_sq;  // exact path
    Rational margin;   // exact path: norm_sq - bound_sq
    double norm_sq_float = 0.0;
    double margin_float = 0.0;
    bool satisfied = false;
    bool equality = false;
    bool in_scope = true;

    json to_json() const {
        json j;
        j["n"] = n;
        j["case"] = to_string(kind);
        j["bound_sq"] = bound_sq.str();
        j["norm_sq"] = exact ? norm_sq.str() : fmt_double(norm_sq_float);
        j["margin"] = exact ? margin.str() : fmt_double(margin_float);
        j["satisfied"] = satisfied;
        j["equality"] = equality;
        j["paper_scope"] = in_scope;
        return j;
    }
};

namespace detail {

inline void require_unit_box(const RationalMatrix& a) {
    if (!entries_in_unit_box(a))
        throw EntryOutOfBox("matrix has an entry outside [0,1]");
}

inline void require_unit_box(const FloatMatrix& a) {
    const int n = a.order();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!(a(i, j) >= 0.0 && a(i, j) <= 1.0))
                throw EntryOutOfBox("matrix has an entry outside [0,1]");
}

} // namespace detail

// Exact path: inverts A with fraction-free elimination and compares squares
// as rationals. Equality is exact rational equality.
inline BoundReport check_bound(const RationalMatrix& a) {
    detail::require_unit_box(a);
    const int n = a.order();
    BoundReport r;
    r.n = n;
    r.kind = classify(n).kind;
    r.bound_sq = lower_bound_sq(n);
    r.in_scope = paper_scope(n);
    r.exact = true;
    r.norm_sq = frobenius_norm_sq(invert_exact(a));
    r.margin = r.norm_sq - r.bound_sq;
    r.satisfied = !(r.margin < Rational(0));
    r.equality = r.margin == Rational(0);
    r.norm_sq_float = r.norm_sq.to_double();
    r.margin_float = r.margin.to_double();
    return r;
}

// Float path used by sampling. A margin below kFloatMarginTol (including any
// apparent violation) is only a candidate finding: re-check exactly.
inline BoundReport check_bound(const FloatMatrix& a) {
    detail::require_unit_box(a);
    const int n = a.order();
    BoundReport r;
    r.n = n;
    r.kind = classify(n).kind;
    r.bound_sq = lower_bound_sq(n);
    r.in_scope = paper_scope(n);
    r.exact = false;
    auto ns = inverse_norm_sq_float(a);
    if (!ns)
        throw SingularMatrix("check_bound: matrix is numerically singular");
    r.norm_sq_float = *ns;
    r.margin_float = *ns - r.bound_sq.to_double();
    r.satisfied = r.margin_float >= -kFloatMarginTol;
    r.equality = r.margin_float > -kFloatMarginTol && r.margin_float < kFloatMarginTol;
    return r;
}

} // namespace eil
