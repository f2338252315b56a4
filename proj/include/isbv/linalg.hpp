#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "isbv/polynomial.hpp"

namespace isbv {

/// Dense row-major matrix. Entries are field elements (Rational, Fp) or
/// polynomials standing for elements of a rational function field.
template <class E>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const E& zero) : rows_(rows), cols_(cols), data_(rows * cols, zero) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  E& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const E& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::vector<E> row(std::size_t i) const {
    return std::vector<E>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  Matrix transpose() const {
    Matrix t;
    t.rows_ = cols_;
    t.cols_ = rows_;
    t.data_.reserve(data_.size());
    for (std::size_t j = 0; j < cols_; ++j)
      for (std::size_t i = 0; i < rows_; ++i) t.data_.push_back(at(i, j));
    t.row_labels = col_labels;
    t.col_labels = row_labels;
    return t;
  }

  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<E> data_;
};

/// Rank over Q by fraction-free (Bareiss) elimination on cleared rows.
std::size_t rank(const Matrix<Rational>& m);
std::size_t rank(const Matrix<Fp>& m);

/// Rank over the fraction field K(params), where params are whatever
/// variables the entries involve. Rows are only ever scaled by nonzero
/// elements, which leaves the rank unchanged.
template <class K>
std::size_t generic_rank(const Matrix<Poly<K>>& m);

template <class K>
struct Echelon {
  Matrix<K> reduced;                // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

template <class K>
Echelon<K> rref(const Matrix<K>& m);

/// Basis of the right kernel, one vector per free column.
template <class K>
std::vector<std::vector<K>> nullspace(const Matrix<K>& m);

/// Some x with m x = b, or nullopt.
template <class K>
std::optional<std::vector<K>> solve(const Matrix<K>& m, const std::vector<K>& b);

/// Reduces every entry mod p.
Matrix<Fp> reduce_mod(const Matrix<Rational>& m, std::uint32_t p);

/// Degree-2 part of a polynomial in a chosen variable list, as a symmetric
/// Gram matrix. Entries are polynomials in the remaining variables (usually
/// constants); 2 * gram(i, j) is the coefficient of x_i x_j for i != j.
template <class K>
struct QuadraticForm {
  Poly<K> source;
  std::vector<std::size_t> vars;
  Matrix<Poly<K>> gram;
};

/// Throws std::invalid_argument if f has terms of degree < 2 in vars.
template <class K>
QuadraticForm<K> quadratic_form(const Poly<K>& f, const std::vector<std::size_t>& vars);

/// Rank of the Gram matrix, generic over any remaining variables.
template <class K>
std::size_t quadratic_rank(const Poly<K>& f, const std::vector<std::size_t>& vars);

class HomogeneityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dimension of the multidegree (d, ..., d) piece of k[blocks]/I, where I is
/// generated by `gens` after substituting `specialization`. Variables outside
/// the blocks that are not specialized are treated as generic parameters.
/// Throws HomogeneityError if a specialized generator is not multihomogeneous.
template <class K>
std::size_t graded_piece_dim(const std::vector<Poly<K>>& gens, const std::vector<std::vector<std::size_t>>& blocks,
                             unsigned d, const std::map<std::size_t, K>& specialization);

/// Number of monomials of multidegree (d, ..., d) over the blocks.
std::size_t multidegree_count(const std::vector<std::vector<std::size_t>>& blocks, unsigned d);

/// All monomials of multidegree (d, ..., d), in storage order per block.
std::vector<Monomial> multidegree_monomials(const std::vector<std::vector<std::size_t>>& blocks, unsigned d);

}  // namespace isbv
