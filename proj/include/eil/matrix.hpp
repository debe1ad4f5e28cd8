#pragma once

/*
 * Square matrix over an arbitrary scalar, with value semantics.
 * The two instantiations used throughout are Matrix<Rational> (exact
 * path) and Matrix<double> (sampling/optimization mirror).
 */

#include <initializer_list>
#include <vector>

#include "eil/errors.hpp"
#include "eil/rational.hpp"

namespace eil {

template <class T>
class Matrix {
    int n_ = 0;
    std::vector<T> a_;

public:
    Matrix() = default;

    explicit Matrix(int n, const T& init = T{}) : n_(n), a_(static_cast<std::size_t>(n) * n, init) {
        if (n <= 0)
            throw InvalidArgument("Matrix: order must be positive");
    }

    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        n_ = static_cast<int>(rows.size());
        if (n_ == 0)
            throw InvalidArgument("Matrix: empty initializer");
        a_.reserve(static_cast<std::size_t>(n_) * n_);
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != n_)
                throw DimensionMismatch("Matrix: initializer is not square");
            for (const auto& v : row)
                a_.push_back(v);
        }
    }

    int order() const { return n_; }

    T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    auto begin() { return a_.begin(); }
    auto end() { return a_.end(); }
    auto begin() const { return a_.begin(); }
    auto end() const { return a_.end(); }

    friend bool operator==(const Matrix& x, const Matrix& y) = default;

    static Matrix identity(int n) {
        Matrix m(n);
        for (int i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    static Matrix ones(int n) {
        return Matrix(n, T(1));
    }
};

using RationalMatrix = Matrix<Rational>;
using FloatMatrix = Matrix<double>;

template <class T>
Matrix<T> transpose(const Matrix<T>& m) {
    const int n = m.order();
    Matrix<T> r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r(j, i) = m(i, j);
    return r;
}

template <class T>
Matrix<T> matmul(const Matrix<T>& x, const Matrix<T>& y) {
    const int n = x.order();
    if (y.order() != n)
        throw DimensionMismatch("matmul: order mismatch");
    Matrix<T> r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const T& v = x(i, k);
            for (int j = 0; j < n; ++j)
                r(i, j) += v * y(k, j);
        }
    return r;
}

template <class T>
Matrix<T> add(const Matrix<T>& x, const Matrix<T>& y) {
    const int n = x.order();
    if (y.order() != n)
        throw DimensionMismatch("add: order mismatch");
    Matrix<T> r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r(i, j) = x(i, j) + y(i, j);
    return r;
}

template <class T>
Matrix<T> sub(const Matrix<T>& x, const Matrix<T>& y) {
    const int n = x.order();
    if (y.order() != n)
        throw DimensionMismatch("sub: order mismatch");
    Matrix<T> r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r(i, j) = x(i, j) - y(i, j);
    return r;
}

template <class T>
Matrix<T> scalar_mul(const T& s, const Matrix<T>& m) {
    const int n = m.order();
    Matrix<T> r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r(i, j) = s * m(i, j);
    return r;
}

template <class T>
T trace(const Matrix<T>& m) {
    T t{};
    for (int i = 0; i < m.order(); ++i)
        t += m(i, i);
    return t;
}

// sum of squared entries, exact for T = Rational
template <class T>
T frobenius_norm_sq(const Matrix<T>& m) {
    T s{};
    for (const T& v : m)
        s += v * v;
    return s;
}

// Tr(A B^T) = entrywise dot product
template <class T>
T inner_product(const Matrix<T>& x, const Matrix<T>& y) {
    if (x.order() != y.order())
        throw DimensionMismatch("inner_product: order mismatch");
    T s{};
    auto it = y.begin();
    for (const T& v : x)
        s += v * *it++;
    return s;
}

template <class T>
std::vector<T> row_sums(const Matrix<T>& m) {
    const int n = m.order();
    std::vector<T> r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r[i] += m(i, j);
    return r;
}

template <class T>
std::vector<T> col_sums(const Matrix<T>& m) {
    const int n = m.order();
    std::vector<T> r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r[j] += m(i, j);
    return r;
}

template <class T>
Matrix<T> outer(const std::vector<T>& u, const std::vector<T>& v) {
    const int n = static_cast<int>(u.size());
    if (v.size() != u.size())
        throw DimensionMismatch("outer: length mismatch");
    Matrix<T> r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r(i, j) = u[i] * v[j];
    return r;
}

inline FloatMatrix to_float(const RationalMatrix& m) {
    const int n = m.order();
    FloatMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r(i, j) = m(i, j).to_double();
    return r;
}

// exact: binary64 entries are dyadic rationals
inline RationalMatrix to_rational(const FloatMatrix& m) {
    const int n = m.order();
    RationalMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r(i, j) = Rational::from_double(m(i, j));
    return r;
}

inline RationalMatrix to_rational(const Matrix<int>& m) {
    const int n = m.order();
    RationalMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r(i, j) = Rational(m(i, j));
    return r;
}

inline bool entries_in_unit_box(const RationalMatrix& m) {
    static const Rational one(1);
    for (const Rational& v : m)
        if (v.is_negative() || v > one)
            return false;
    return true;
}

inline bool entries_are_binary(const RationalMatrix& m) {
    static const Rational one(1);
    for (const Rational& v : m)
        if (!v.is_zero() && v != one)
            return false;
    return true;
}

} // namespace eil
