#pragma once

// Exact integer/rational scalars and a small dense matrix template shared by
// every module. Integers and rationals are GMP-backed.

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lvvmf {

using Integer = mpz_class;
using Rational = mpq_class;
using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Parses "P", "-P" or "P/Q" into a canonical rational. Throws
/// std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

int sign(const Integer& x);
Integer abs(const Integer& x);
Integer floor_div(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);

/// Fractional part in [0, 1).
Rational frac(const Rational& x);

/// Generalized binomial C(x, k) = x(x-1)...(x-k+1)/k! for any integer x;
/// C(x, 0) = 1 and C(x, k) = 0 for k < 0.
Integer binomial(const Integer& x, long k);

/// e^{2 pi i t} for a rational number of turns t.
Complex unit_root(const Rational& turns);

double to_double(const Integer& x);
double to_double(const Rational& x);

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n, T(0));
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<T>& data() const { return data_; }
    std::vector<T>& data() { return data_; }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("matrix shape mismatch in product");
        Matrix r(x.rows_, y.cols_, T(0));
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const T& xik = x(i, k);
                if (xik == T(0)) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += xik * y(k, j);
            }
        return r;
    }

    friend Matrix operator+(Matrix x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw std::invalid_argument("matrix shape mismatch in sum");
        for (std::size_t i = 0; i < x.data_.size(); ++i) x.data_[i] += y.data_[i];
        return x;
    }

    friend Matrix operator-(Matrix x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw std::invalid_argument("matrix shape mismatch in difference");
        for (std::size_t i = 0; i < x.data_.size(); ++i) x.data_[i] -= y.data_[i];
        return x;
    }

    Matrix scaled(const T& s) const {
        Matrix r = *this;
        for (auto& v : r.data_) v *= s;
        return r;
    }

    Matrix transposed() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntegerMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;
using ComplexMatrix = Matrix<Complex>;

/// Square power by repeated squaring; exponent must be nonnegative.
template <class T>
Matrix<T> matrix_power(Matrix<T> base, unsigned long exponent) {
    Matrix<T> result = Matrix<T>::identity(base.rows());
    while (exponent) {
        if (exponent & 1UL) result = result * base;
        exponent >>= 1;
        if (exponent) base = base * base;
    }
    return result;
}

template <class T>
Matrix<T> block_diagonal(const std::vector<Matrix<T>>& blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.rows();
    Matrix<T> r(n, n, T(0));
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) r(off + i, off + j) = b(i, j);
        off += b.rows();
    }
    return r;
}

RationalMatrix to_rational(const IntegerMatrix& m);
ComplexMatrix to_complex(const IntegerMatrix& m);
ComplexMatrix to_complex(const RationalMatrix& m);

// Exact rational linear algebra.
std::size_t rank(RationalMatrix m);
/// Basis of the right kernel {v : m v = 0}, one vector per column of the result.
RationalMatrix nullspace(const RationalMatrix& m);
/// Throws std::domain_error if singular.
RationalMatrix inverse(const RationalMatrix& m);

/// Gaussian elimination with partial pivoting. Throws std::domain_error if
/// a pivot falls below 1e-300.
ComplexMatrix inverse(const ComplexMatrix& m);

/// Max absolute entry. Dispatches to the active SIMD kernel.
double max_norm(const ComplexMatrix& m);

}  // namespace lvvmf
