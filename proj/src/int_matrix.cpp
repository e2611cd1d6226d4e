#include "tatecoh/int_matrix.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace tatecoh {

Integer mod_floor(Integer const& a, Integer const& m)
{
    Integer r;
    Integer am = abs(m);
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), am.get_mpz_t());
    return r;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols)
{
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (auto const& r : rows) {
        if (r.size() != cols_)
            throw std::invalid_argument("IntMatrix: ragged initializer");
        for (long v : r)
            data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, std::vector<IntVector> const& cols)
{
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows)
            throw std::invalid_argument("IntMatrix::from_columns: column length mismatch");
        for (std::size_t i = 0; i < rows; ++i)
            m(i, j) = cols[j][i];
    }
    return m;
}

IntMatrix IntMatrix::diagonal(std::span<Integer const> diag)
{
    IntMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i)
        m(i, i) = diag[i];
    return m;
}

IntVector IntMatrix::column(std::size_t j) const
{
    IntVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        v[i] = (*this)(i, j);
    return v;
}

IntVector IntMatrix::row(std::size_t i) const
{
    return IntVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

std::vector<IntVector> IntMatrix::columns() const
{
    std::vector<IntVector> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j)
        out.push_back(column(j));
    return out;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::hconcat(IntMatrix const& rhs) const
{
    if (rows_ != rhs.rows_)
        throw std::invalid_argument("IntMatrix::hconcat: row count mismatch");
    IntMatrix m(rows_, cols_ + rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j)
            m(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < rhs.cols_; ++j)
            m(i, cols_ + j) = rhs(i, j);
    }
    return m;
}

IntMatrix IntMatrix::vconcat(IntMatrix const& rhs) const
{
    if (cols_ != rhs.cols_)
        throw std::invalid_argument("IntMatrix::vconcat: column count mismatch");
    IntMatrix m(rows_ + rhs.rows_, cols_);
    std::copy(data_.begin(), data_.end(), m.data_.begin());
    std::copy(rhs.data_.begin(), rhs.data_.end(), m.data_.begin() + data_.size());
    return m;
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    if (r0 + nr > rows_ || c0 + nc > cols_)
        throw std::out_of_range("IntMatrix::block");
    IntMatrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j)
            m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
}

bool IntMatrix::is_zero() const
{
    for (auto const& x : data_)
        if (sgn(x) != 0)
            return false;
    return true;
}

bool IntMatrix::is_identity() const
{
    if (rows_ != cols_)
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0))
                return false;
    return true;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, Integer const& c)
{
    if (sgn(c) == 0)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        if (sgn((*this)(src, j)) != 0)
            (*this)(dst, j) += c * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, Integer const& c)
{
    if (sgn(c) == 0)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        if (sgn((*this)(i, src)) != 0)
            (*this)(i, dst) += c * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r)
{
    for (std::size_t j = 0; j < cols_; ++j)
        (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(std::size_t c)
{
    for (std::size_t i = 0; i < rows_; ++i)
        (*this)(i, c) = -(*this)(i, c);
}

void IntMatrix::reduce_rows(std::span<Integer const> moduli)
{
    if (moduli.size() != rows_)
        throw std::invalid_argument("IntMatrix::reduce_rows: one modulus per row expected");
    for (std::size_t i = 0; i < rows_; ++i) {
        if (sgn(moduli[i]) == 0)
            continue;
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) = mod_floor((*this)(i, j), moduli[i]);
    }
}

std::string IntMatrix::to_string() const
{
    std::ostringstream os;
    os << *this;
    return os.str();
}

IntMatrix operator*(IntMatrix const& a, IntMatrix const& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("IntMatrix product: dimension mismatch");
    IntMatrix c(a.rows(), b.cols());
    Integer t;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            Integer const& aik = a(i, k);
            if (sgn(aik) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (sgn(b(k, j)) != 0) {
                    mpz_mul(t.get_mpz_t(), aik.get_mpz_t(), b(k, j).get_mpz_t());
                    c(i, j) += t;
                }
        }
    return c;
}

IntMatrix operator+(IntMatrix const& a, IntMatrix const& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("IntMatrix sum: dimension mismatch");
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = a(i, j) + b(i, j);
    return c;
}

IntMatrix operator-(IntMatrix const& a, IntMatrix const& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("IntMatrix difference: dimension mismatch");
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = a(i, j) - b(i, j);
    return c;
}

IntVector operator*(IntMatrix const& a, IntVector const& x)
{
    if (a.cols() != x.size())
        throw std::invalid_argument("IntMatrix * vector: dimension mismatch");
    IntVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            y[i] += a(i, j) * x[j];
    return y;
}

Integer determinant(IntMatrix const& a)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("determinant: square matrix expected");
    std::size_t const n = a.rows();
    if (n == 0)
        return 1;
    IntMatrix m = a;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m(k, k)) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && sgn(m(piv, k)) == 0)
                ++piv;
            if (piv == n)
                return 0;
            m.swap_rows(k, piv);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

bool is_zero(IntVector const& v)
{
    for (auto const& x : v)
        if (sgn(x) != 0)
            return false;
    return true;
}

std::string to_string(IntVector const& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ",";
        s += v[i].get_str();
    }
    return s + ")";
}

std::ostream& operator<<(std::ostream& os, IntMatrix const& m)
{
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i)
            os << ", ";
        os << '[';
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j)
                os << ", ";
            os << m(i, j).get_str();
        }
        os << ']';
    }
    return os << ']';
}

} // namespace tatecoh
