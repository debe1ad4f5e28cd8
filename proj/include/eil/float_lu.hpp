#pragma once

/*
 * Binary64 mirror of the exact path: LU with partial pivoting,
 * inverse, and an infinity-norm condition estimate. A pivot counts
 * as zero when its magnitude drops below 1e-12 times the largest
 * entry magnitude of the input.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "eil/errors.hpp"
#include "eil/matrix.hpp"

namespace eil {

inline constexpr double kPivotRelTol = 1e-12;

struct LuFactors {
    int n = 0;
    std::vector<double> lu;  // row-major, L below diagonal (unit), U on/above
    std::vector<int> perm;   // row permutation applied to the input
    bool singular = false;
    int sign = 1;
};

inline LuFactors lu_factor(const FloatMatrix& a) {
    const int n = a.order();
    LuFactors f;
    f.n = n;
    f.lu.resize(static_cast<std::size_t>(n) * n);
    f.perm.resize(n);
    for (int i = 0; i < n; ++i) {
        f.perm[i] = i;
        for (int j = 0; j < n; ++j)
            f.lu[static_cast<std::size_t>(i) * n + j] = a(i, j);
    }

    double scale = 0.0;
    for (double v : a)
        scale = std::max(scale, std::abs(v));
    const double tol = kPivotRelTol * scale;

    auto at = [&](int i, int j) -> double& { return f.lu[static_cast<std::size_t>(i) * n + j]; };

    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(at(k, k));
        for (int i = k + 1; i < n; ++i) {
            double v = std::abs(at(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best <= tol || scale == 0.0) {
            f.singular = true;
            return f;
        }
        if (p != k) {
            for (int j = 0; j < n; ++j)
                std::swap(at(k, j), at(p, j));
            std::swap(f.perm[k], f.perm[p]);
            f.sign = -f.sign;
        }
        const double pivot = at(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double m = at(i, k) / pivot;
            at(i, k) = m;
            for (int j = k + 1; j < n; ++j)
                at(i, j) -= m * at(k, j);
        }
    }
    return f;
}

inline std::optional<FloatMatrix> invert_float(const FloatMatrix& a) {
    const LuFactors f = lu_factor(a);
    if (f.singular)
        return std::nullopt;
    const int n = f.n;
    auto at = [&](int i, int j) { return f.lu[static_cast<std::size_t>(i) * n + j]; };

    FloatMatrix inv(n);
    std::vector<double> col(n);
    for (int c = 0; c < n; ++c) {
        // forward solve L y = P e_c
        for (int i = 0; i < n; ++i) {
            double y = (f.perm[i] == c) ? 1.0 : 0.0;
            for (int j = 0; j < i; ++j)
                y -= at(i, j) * col[j];
            col[i] = y;
        }
        // back solve U x = y
        for (int i = n - 1; i >= 0; --i) {
            double x = col[i];
            for (int j = i + 1; j < n; ++j)
                x -= at(i, j) * col[j];
            col[i] = x / at(i, i);
        }
        for (int i = 0; i < n; ++i)
            inv(i, c) = col[i];
    }
    return inv;
}

inline double determinant_float(const FloatMatrix& a) {
    const LuFactors f = lu_factor(a);
    if (f.singular)
        return 0.0;
    double d = f.sign;
    for (int i = 0; i < f.n; ++i)
        d *= f.lu[static_cast<std::size_t>(i) * f.n + i];
    return d;
}

inline double inf_norm(const FloatMatrix& a) {
    double best = 0.0;
    for (int i = 0; i < a.order(); ++i) {
        double s = 0.0;
        for (int j = 0; j < a.order(); ++j)
            s += std::abs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}

// ||A||_inf * ||A^-1||_inf, +inf when the LU declares A singular
inline double condition_estimate(const FloatMatrix& a) {
    auto inv = invert_float(a);
    if (!inv)
        return std::numeric_limits<double>::infinity();
    return inf_norm(a) * inf_norm(*inv);
}

// ||A^-1||_F^2 on the float path; empty when near-singular
inline std::optional<double> inverse_norm_sq_float(const FloatMatrix& a) {
    auto inv = invert_float(a);
    if (!inv)
        return std::nullopt;
    return frobenius_norm_sq(*inv);
}

} // namespace eil
