#pragma once

/*
 * Exact determinant and inverse for Matrix<Rational>.
 *
 * Both routines first clear denominators row by row, then run
 * fraction-free elimination (Bareiss) on the resulting integer matrix.
 * Intermediate values are minors of that matrix, so they stay integral
 * and their growth is bounded; a single division at the end produces
 * the reduced rational result. The inverse uses the Gauss-Jordan form
 * of the scheme (Montante): eliminating above and below the pivot with
 * the same one-step division keeps everything integral and leaves
 * det * I on the left and det * B^{-1} on the augmented side.
 */

#include <utility>
#include <vector>

#include "eil/errors.hpp"
#include "eil/matrix.hpp"
#include "eil/rational.hpp"

namespace eil {

namespace detail {

struct IntegerizedMatrix {
    std::vector<std::vector<BigInt>> m; // n x n integer matrix
    std::vector<BigInt> row_scale;      // positive; m[i] = row_scale[i] * a[i]
};

inline IntegerizedMatrix integerize(const RationalMatrix& a) {
    const int n = a.order();
    IntegerizedMatrix out;
    out.m.assign(n, std::vector<BigInt>(n));
    out.row_scale.resize(n);
    for (int i = 0; i < n; ++i) {
        BigInt l = 1;
        for (int j = 0; j < n; ++j)
            l = boost::multiprecision::lcm(l, a(i, j).den());
        out.row_scale[i] = l;
        for (int j = 0; j < n; ++j)
            out.m[i][j] = a(i, j).num() * (l / a(i, j).den());
    }
    return out;
}

// Division known to be exact; a nonzero remainder means the elimination
// scheme was violated somewhere upstream.
inline BigInt exact_div(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    boost::multiprecision::divide_qr(a, b, q, r);
    if (!r.is_zero())
        throw IdentityViolated("fraction-free elimination produced a non-integer");
    return q;
}

} // namespace detail

inline Rational determinant_exact(const RationalMatrix& a) {
    const int n = a.order();
    auto [m, row_scale] = detail::integerize(a);

    int sign = 1;
    BigInt prev = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            int r = -1;
            for (int i = k + 1; i < n; ++i)
                if (!m[i][k].is_zero()) {
                    r = i;
                    break;
                }
            if (r < 0)
                return Rational();
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        const BigInt& pivot = m[k][k];
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                m[i][j] = detail::exact_div(m[i][j] * pivot - m[i][k] * m[k][j], prev);
            m[i][k] = 0;
        }
        prev = pivot;
    }

    BigInt det = m[n - 1][n - 1];
    if (sign < 0)
        det.backend().negate();
    BigInt scale = 1;
    for (const BigInt& s : row_scale)
        scale *= s;
    return Rational(std::move(det), std::move(scale));
}

inline RationalMatrix invert_exact(const RationalMatrix& a) {
    const int n = a.order();
    auto [b, row_scale] = detail::integerize(a);

    // working matrix [B | I], 2n columns
    std::vector<std::vector<BigInt>> w(n, std::vector<BigInt>(2 * n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            w[i][j] = std::move(b[i][j]);
        w[i][n + i] = 1;
    }

    BigInt prev = 1;
    for (int k = 0; k < n; ++k) {
        if (w[k][k].is_zero()) {
            int r = -1;
            for (int i = k + 1; i < n; ++i)
                if (!w[i][k].is_zero()) {
                    r = i;
                    break;
                }
            if (r < 0)
                throw SingularMatrix("invert_exact: matrix is singular");
            std::swap(w[k], w[r]);
        }
        const BigInt pivot = w[k][k];
        for (int i = 0; i < n; ++i) {
            if (i == k)
                continue;
            const BigInt lead = w[i][k];
            for (int j = 0; j < 2 * n; ++j)
                w[i][j] = detail::exact_div(w[i][j] * pivot - lead * w[k][j], prev);
            w[i][k] = 0;
        }
        prev = pivot;
    }

    // left block is now p * I with p = w[0][0]; augmented side is p * B^{-1}
    const BigInt& p = w[0][0];
    if (p.is_zero())
        throw SingularMatrix("invert_exact: matrix is singular");

    RationalMatrix inv(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            inv(i, j) = Rational(w[i][n + j] * row_scale[j], p);
    return inv;
}

} // namespace eil
