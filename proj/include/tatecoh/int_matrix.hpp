#ifndef TATECOH_INT_MATRIX_HPP_
#define TATECOH_INT_MATRIX_HPP_

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace tatecoh {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/* Floor remainder in [0, |m|). m must be nonzero. */
Integer mod_floor(Integer const& a, Integer const& m);

/* Dense integer matrix, row-major storage. Columns are the vectors
 * (relations, generator images) everywhere in this library.
 */
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_columns(std::size_t rows, std::vector<IntVector> const& cols);
    static IntMatrix diagonal(std::span<Integer const> diag);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Integer const& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntVector column(std::size_t j) const;
    IntVector row(std::size_t i) const;
    std::vector<IntVector> columns() const;

    IntMatrix transpose() const;
    IntMatrix hconcat(IntMatrix const& rhs) const;
    IntMatrix vconcat(IntMatrix const& rhs) const;
    /* rows [r0, r0+nr) x cols [c0, c0+nc) */
    IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

    bool is_zero() const;
    bool is_identity() const;

    /* elementary operations used by the Smith reduction */
    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    void add_row_multiple(std::size_t dst, std::size_t src, Integer const& c);  // row dst += c * row src
    void add_col_multiple(std::size_t dst, std::size_t src, Integer const& c);  // col dst += c * col src
    void negate_row(std::size_t r);
    void negate_col(std::size_t c);

    /* reduce row i modulo moduli[i] into [0, moduli[i]); a zero modulus leaves the row alone */
    void reduce_rows(std::span<Integer const> moduli);

    friend bool operator==(IntMatrix const&, IntMatrix const&) = default;

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

IntMatrix operator*(IntMatrix const& a, IntMatrix const& b);
IntMatrix operator+(IntMatrix const& a, IntMatrix const& b);
IntMatrix operator-(IntMatrix const& a, IntMatrix const& b);
IntVector operator*(IntMatrix const& a, IntVector const& x);

/* Bareiss fraction-free elimination; square matrices only. */
Integer determinant(IntMatrix const& a);

bool is_zero(IntVector const& v);
std::string to_string(IntVector const& v);

std::ostream& operator<<(std::ostream& os, IntMatrix const& m);

} // namespace tatecoh

#endif /* TATECOH_INT_MATRIX_HPP_ */
