#pragma once

/*
 * Hadamard matrices and S-matrices.
 *
 * A Hadamard matrix of order n is a {-1,+1} matrix H with H Hᵀ = nI; it is
 * normalized when its first row and first column are all +1. The S-matrix of
 * order n = 2k−1 is obtained from a normalized Hadamard matrix of order n+1
 * by mapping 1 → 0, −1 → 1 and deleting the first row and column. S-matrices
 * satisfy Se = Sᵀe = ke and the closed-form inverse k·S⁻¹ = 2Sᵀ − J.
 *
 * Constructions: Sylvester doubling (orders 2^m) and the quadratic-residue
 * (Paley) construction over GF(q) for prime powers q ≡ 3 (mod 4), giving
 * order q+1. Combining the two covers 4, 8, 12, 16, 20, 24, 28, 32, ...;
 * hadamard_of_order raises UnsupportedOrder for anything else rather than
 * searching.
 */

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include <json.hpp>

#include "eil/config.hpp"
#include "eil/errors.hpp"
#include "eil/io.hpp"
#include "eil/matrix.hpp"

namespace eil {

namespace detail {

// Verifies H Hᵀ = nI for a sign matrix already known to be {-1,+1}.
inline bool rows_orthogonal(const Matrix<int>& h) {
    const int n = h.order();
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            long long dot = 0;
            for (int t = 0; t < n; ++t)
                dot += static_cast<long long>(h(i, t)) * h(j, t);
            if (dot != (i == j ? static_cast<long long>(n) : 0))
                return false;
        }
    return true;
}

inline bool is_sign_matrix(const Matrix<int>& h) {
    const int n = h.order();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (h(i, j) != 1 && h(i, j) != -1)
                return false;
    return true;
}

// Exact conversion of a rational matrix whose entries should all lie in
// `allowed`; empty result when any entry falls outside.
inline bool to_small_int(const RationalMatrix& m, std::initializer_list<int> allowed,
                         Matrix<int>& out) {
    const int n = m.order();
    out = Matrix<int>(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            bool ok = false;
            for (int a : allowed)
                if (m(i, j) == Rational(a)) {
                    out(i, j) = a;
                    ok = true;
                    break;
                }
            if (!ok)
                return false;
        }
    return true;
}

} // namespace detail

inline bool is_hadamard(const Matrix<int>& h) {
    return detail::is_sign_matrix(h) && detail::rows_orthogonal(h);
}

inline bool is_hadamard(const RationalMatrix& h) {
    Matrix<int> m(h.order());
    return detail::to_small_int(h, {-1, 1}, m) && detail::rows_orthogonal(m);
}

class HadamardMatrix {
public:
    explicit HadamardMatrix(Matrix<int> entries) : h_(std::move(entries)) {
        if (!detail::is_sign_matrix(h_))
            throw InvalidArgument("HadamardMatrix: entries must be -1 or 1");
        if (!detail::rows_orthogonal(h_))
            throw InvalidArgument("HadamardMatrix: rows are not orthogonal (H H^T != nI)");
        normalized_ = true;
        for (int i = 0; i < h_.order(); ++i)
            if (h_(i, 0) != 1 || h_(0, i) != 1)
                normalized_ = false;
    }

    int order() const { return h_.order(); }
    bool normalized() const { return normalized_; }
    const Matrix<int>& entries() const { return h_; }
    int operator()(int i, int j) const { return h_(i, j); }
    RationalMatrix rational() const { return to_rational(h_); }

private:
    Matrix<int> h_;
    bool normalized_;
};

class SMatrix {
public:
    explicit SMatrix(Matrix<int> entries) : s_(std::move(entries)) {
        const int n = s_.order();
        if (n % 2 == 0)
            throw ParityMismatch("SMatrix: order must be odd");
        k_ = (n + 1) / 2;
        Matrix<int> emb(n + 1);
        for (int j = 0; j <= n; ++j)
            emb(0, j) = 1;
        for (int i = 0; i < n; ++i) {
            emb(i + 1, 0) = 1;
            for (int j = 0; j < n; ++j) {
                if (s_(i, j) != 0 && s_(i, j) != 1)
                    throw InvalidArgument("SMatrix: entries must be 0 or 1");
                emb(i + 1, j + 1) = 1 - 2 * s_(i, j);
            }
        }
        if (!detail::rows_orthogonal(emb))
            throw InvalidArgument(
                "SMatrix: the embedding [[1,e^T],[e,J-2A]] is not a Hadamard matrix");
        // Row/column sums k and S(2S^T - J) = kI all follow from the embedding
        // being Hadamard; check them anyway so a bug here cannot slip through.
        for (int i = 0; i < n; ++i) {
            long long rsum = 0, csum = 0;
            for (int j = 0; j < n; ++j) {
                rsum += s_(i, j);
                csum += s_(j, i);
            }
            if (rsum != k_ || csum != k_)
                throw IdentityViolated("SMatrix: row/column sums do not equal k");
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                long long dot = 0;
                for (int t = 0; t < n; ++t)
                    dot += static_cast<long long>(s_(i, t)) * (2 * s_(j, t) - 1);
                if (dot != (i == j ? static_cast<long long>(k_) : 0))
                    throw IdentityViolated("SMatrix: S(2S^T - J) != kI");
            }
    }

    int order() const { return s_.order(); }
    int k() const { return k_; }
    const Matrix<int>& entries() const { return s_; }
    int operator()(int i, int j) const { return s_(i, j); }
    RationalMatrix rational() const { return to_rational(s_); }

private:
    Matrix<int> s_;
    int k_;
};

inline HadamardMatrix doubled(const HadamardMatrix& h) {
    const int n = h.order();
    if (2LL * n > max_order())
        throw OrderTooLarge("doubled: order " + std::to_string(2LL * n) +
                            " exceeds the configured maximum");
    Matrix<int> d(2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            d(i, j) = h(i, j);
            d(i, j + n) = h(i, j);
            d(i + n, j) = h(i, j);
            d(i + n, j + n) = -h(i, j);
        }
    return HadamardMatrix(std::move(d));
}

// Normalized Hadamard matrix of order 2^m.
inline HadamardMatrix sylvester(int m) {
    if (m < 0)
        throw InvalidArgument("sylvester: exponent must be nonnegative");
    if (m >= 30 || (1LL << m) > max_order())
        throw OrderTooLarge("sylvester: order 2^" + std::to_string(m) +
                            " exceeds the configured maximum");
    const int n = 1 << m;
    Matrix<int> h(n);
    h(0, 0) = 1;
    for (int s = 1; s < n; s <<= 1)
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) {
                h(i, j + s) = h(i, j);
                h(i + s, j) = h(i, j);
                h(i + s, j + s) = -h(i, j);
            }
    return HadamardMatrix(std::move(h));
}

inline HadamardMatrix normalize(const HadamardMatrix& h) {
    const int n = h.order();
    Matrix<int> m = h.entries();
    for (int i = 0; i < n; ++i)
        if (m(i, 0) == -1)
            for (int j = 0; j < n; ++j)
                m(i, j) = -m(i, j);
    for (int j = 0; j < n; ++j)
        if (m(0, j) == -1)
            for (int i = 0; i < n; ++i)
                m(i, j) = -m(i, j);
    return HadamardMatrix(std::move(m));
}

namespace detail {

inline bool is_prime(long long v) {
    if (v < 2)
        return false;
    for (long long d = 2; d * d <= v; ++d)
        if (v % d == 0)
            return false;
    return true;
}

// q = p^e with p prime; false when q is not a prime power.
inline bool prime_power(long long q, long long& p, int& e) {
    if (q < 2)
        return false;
    p = q;
    for (long long d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    e = 0;
    long long rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    return rest == 1;
}

// GF(p^e). Elements are indices in [0, p^e) whose base-p digits are the
// coefficients of a polynomial over GF(p); arithmetic is modulo a monic
// irreducible polynomial found by exhaustive search (desk-scale fields only).
class GaloisField {
public:
    GaloisField(long long p, int e) : p_(p), e_(e) {
        q_ = 1;
        for (int i = 0; i < e_; ++i)
            q_ *= p_;
        if (e_ > 1)
            mod_ = find_irreducible();
    }

    long long q() const { return q_; }

    long long sub(long long a, long long b) const {
        std::vector<long long> da = digits(a), db = digits(b);
        for (int i = 0; i < e_; ++i)
            da[i] = (da[i] - db[i] % p_ + p_) % p_;
        return pack(da);
    }

    long long mul(long long a, long long b) const {
        std::vector<long long> da = digits(a), db = digits(b);
        std::vector<long long> prod(2 * e_ - 1, 0);
        for (int i = 0; i < e_; ++i)
            for (int j = 0; j < e_; ++j)
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        for (int i = 2 * e_ - 2; i >= e_; --i) {
            long long c = prod[i];
            if (c == 0)
                continue;
            prod[i] = 0;
            // x^e == -mod_ (mod the irreducible), so fold the coefficient down
            for (int j = 0; j < e_; ++j)
                prod[i - e_ + j] = (prod[i - e_ + j] - c * mod_[j] % p_ + c * p_) % p_;
        }
        prod.resize(e_);
        return pack(prod);
    }

private:
    long long p_;
    int e_;
    long long q_;
    std::vector<long long> mod_; // low e coefficients; leading coefficient 1 implied

    std::vector<long long> digits(long long a) const {
        std::vector<long long> d(e_);
        for (int i = 0; i < e_; ++i) {
            d[i] = a % p_;
            a /= p_;
        }
        return d;
    }

    long long pack(const std::vector<long long>& d) const {
        long long a = 0;
        for (int i = e_ - 1; i >= 0; --i)
            a = a * p_ + d[i];
        return a;
    }

    // Remainder of monic x^deg_f + f_low divided by monic x^deg_g + g_low.
    static std::vector<long long> poly_rem(std::vector<long long> f,
                                           const std::vector<long long>& g, long long p) {
        while (f.size() >= g.size()) {
            long long lead = f.back();
            const std::size_t shift = f.size() - g.size();
            if (lead != 0)
                for (std::size_t i = 0; i + 1 < g.size(); ++i)
                    f[shift + i] = (f[shift + i] - lead * g[i] % p + lead * p) % p;
            f.pop_back();
        }
        while (!f.empty() && f.back() == 0)
            f.pop_back();
        return f;
    }

    std::vector<long long> find_irreducible() const {
        // candidates: x^e + sum c_i x^i, scanned in index order
        for (long long idx = 0; idx < q_; ++idx) {
            std::vector<long long> cand = digits(idx);
            cand.push_back(1); // monic of degree e
            if (cand[0] == 0)
                continue; // divisible by x
            bool irreducible = true;
            // trial division by every monic divisor of degree 1..e/2
            for (int d = 1; irreducible && 2 * d <= e_; ++d) {
                long long combos = 1;
                for (int i = 0; i < d; ++i)
                    combos *= p_;
                for (long long c = 0; irreducible && c < combos; ++c) {
                    std::vector<long long> g(d + 1, 0);
                    long long t = c;
                    for (int i = 0; i < d; ++i) {
                        g[i] = t % p_;
                        t /= p_;
                    }
                    g[d] = 1;
                    if (poly_rem(cand, g, p_).empty())
                        irreducible = false;
                }
            }
            if (irreducible) {
                std::vector<long long> low = digits(idx);
                return low;
            }
        }
        throw IdentityViolated("GaloisField: no irreducible polynomial found");
    }
};

} // namespace detail

// Quadratic-residue construction: normalized Hadamard matrix of order q+1
// for a prime power q == 3 (mod 4).
inline HadamardMatrix paley(long long q) {
    if (q < 3 || q % 2 == 0)
        throw InvalidArgument("paley: q must be an odd prime power");
    if (q % 4 != 3)
        throw InvalidArgument("paley: q = " + std::to_string(q) +
                              " is not congruent to 3 mod 4");
    long long p;
    int e;
    if (!detail::prime_power(q, p, e))
        throw InvalidArgument("paley: q = " + std::to_string(q) + " is not a prime power");
    if (q + 1 > max_order())
        throw OrderTooLarge("paley: order " + std::to_string(q + 1) +
                            " exceeds the configured maximum");
    detail::GaloisField field(p, e);
    std::vector<char> is_square(static_cast<std::size_t>(q), 0);
    for (long long t = 1; t < q; ++t)
        is_square[static_cast<std::size_t>(field.mul(t, t))] = 1;
    // Skew core [[0, e^T], [-e, Q]] plus the identity; Q is the Jacobsthal
    // matrix Q_ab = chi(a - b), skew-symmetric because chi(-1) = -1 here.
    const int n = static_cast<int>(q) + 1;
    Matrix<int> h(n);
    for (int j = 0; j < n; ++j)
        h(0, j) = 1;
    for (int i = 1; i < n; ++i)
        h(i, 0) = -1;
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j)
            h(i, j) = i == j ? 1
                             : (is_square[static_cast<std::size_t>(
                                    field.sub(i - 1, j - 1))]
                                    ? 1
                                    : -1);
    return normalize(HadamardMatrix(std::move(h)));
}

// A normalized Hadamard matrix of the requested order, via Sylvester doubling
// over a Paley base when the order is not a power of two.
inline HadamardMatrix hadamard_of_order(long long n) {
    if (n < 1)
        throw InvalidArgument("hadamard_of_order: order must be positive");
    if (n > max_order())
        throw OrderTooLarge("hadamard_of_order: order " + std::to_string(n) +
                            " exceeds the configured maximum");
    if ((n & (n - 1)) == 0)
        return sylvester(std::countr_zero(static_cast<unsigned long long>(n)));
    if (n % 4 != 0)
        throw UnsupportedOrder("hadamard_of_order: no Hadamard matrix of order " +
                               std::to_string(n) +
                               " (orders above 2 are divisible by 4)");
    int doublings = 0;
    for (long long base = n; base % 2 == 0; base /= 2, ++doublings) {
        long long p;
        int e;
        if (base >= 4 && detail::prime_power(base - 1, p, e) && (base - 1) % 4 == 3) {
            HadamardMatrix h = paley(base - 1);
            for (int i = 0; i < doublings; ++i)
                h = doubled(h);
            return h;
        }
    }
    throw UnsupportedOrder("hadamard_of_order: order " + std::to_string(n) +
                           " is not reachable by the Sylvester/Paley constructions");
}

inline SMatrix smatrix_from_hadamard(const HadamardMatrix& h) {
    if (!h.normalized())
        throw NotNormalized("smatrix_from_hadamard: matrix is not normalized");
    if (h.order() < 4)
        throw InvalidArgument("smatrix_from_hadamard: order must be at least 4");
    const int n = h.order() - 1;
    Matrix<int> s(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            s(i, j) = (1 - h(i + 1, j + 1)) / 2;
    return SMatrix(std::move(s));
}

// S-matrix of odd order n (requires a Hadamard matrix of order n+1).
inline SMatrix smatrix_of_order(long long n) {
    if (n % 2 == 0)
        throw ParityMismatch("smatrix_of_order: order must be odd");
    if (n < 3)
        throw InvalidArgument("smatrix_of_order: order must be at least 3");
    return smatrix_from_hadamard(hadamard_of_order(n + 1));
}

// The (n+1)-order matrix [[1, e^T], [e, J - 2A]]; for a valid S-matrix this
// reproduces the normalized Hadamard matrix it came from.
inline HadamardMatrix hadamard_embedding(const SMatrix& s) {
    const int n = s.order();
    Matrix<int> h(n + 1);
    for (int j = 0; j <= n; ++j)
        h(0, j) = 1;
    for (int i = 0; i < n; ++i) {
        h(i + 1, 0) = 1;
        for (int j = 0; j < n; ++j)
            h(i + 1, j + 1) = 1 - 2 * s(i, j);
    }
    return HadamardMatrix(std::move(h));
}

// Executable equality characterization: {0,1} entries, odd order, and the
// embedding [[1,e^T],[e,J-2A]] is a Hadamard matrix.
inline bool is_smatrix(const RationalMatrix& a) {
    const int n = a.order();
    if (n % 2 == 0)
        return false;
    Matrix<int> s(n);
    if (!detail::to_small_int(a, {0, 1}, s))
        return false;
    Matrix<int> emb(n + 1);
    for (int j = 0; j <= n; ++j)
        emb(0, j) = 1;
    for (int i = 0; i < n; ++i) {
        emb(i + 1, 0) = 1;
        for (int j = 0; j < n; ++j)
            emb(i + 1, j + 1) = 1 - 2 * s(i, j);
    }
    return detail::rows_orthogonal(emb);
}

inline RationalMatrix smatrix_closed_form_inverse(const SMatrix& s) {
    const int n = s.order();
    RationalMatrix inv(n);
    const Rational k(s.k());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            inv(i, j) = Rational(2 * s(j, i) - 1) / k;
    return inv;
}

inline json design_to_json(const HadamardMatrix& h) {
    json j = matrix_to_json(h.rational());
    j["kind"] = "hadamard";
    j["normalized"] = h.normalized();
    return j;
}

inline json design_to_json(const SMatrix& s) {
    json j = matrix_to_json(s.rational());
    j["kind"] = "smatrix";
    j["k"] = s.k();
    return j;
}

} // namespace eil
