#pragma once

#include <vector>

#include "moyal/poly_symbol.hpp"

namespace moyal {

// Dense exact matrix. Eigen's expression templates do not combine with
// Boost.Multiprecision expression templates, so products are done here.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols);  // zero-filled
  RationalMatrix(int rows, int cols, std::vector<Rational> row_major);
  static RationalMatrix identity(int d);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  Rational& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
  const Rational& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

  RationalMatrix operator+(const RationalMatrix& o) const;
  RationalMatrix operator-(const RationalMatrix& o) const;
  RationalMatrix operator*(const RationalMatrix& o) const;
  bool operator==(const RationalMatrix& o) const = default;

  bool is_zero() const;
  Rational trace() const;
  int rank() const;  // exact Gaussian elimination

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

// Exact inverse by Gauss-Jordan elimination; throws non_invertible.
RationalMatrix exact_inverse(const RationalMatrix& m);

class IdempotentSet {
 public:
  // Throws invalid_argument unless every member is square, of one dimension,
  // and idempotent.
  explicit IdempotentSet(std::vector<RationalMatrix> members);

  const std::vector<RationalMatrix>& members() const noexcept { return members_; }
  int dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool orthogonal() const;  // e_i e_j = 0 for i != j
  bool complete() const;    // sum e_i = identity

 private:
  std::vector<RationalMatrix> members_;
  int dim_;
};

struct ExplodedSet {
  std::vector<RationalMatrix> transformed;  // A e_j A^-1
  RationalMatrix mixing;                    // M[j,k] = Tr(e'_j e_k)
};

// Conjugates a complete orthogonal set by A and records how each new
// idempotent overlaps the old ones. Throws non_invertible or incomplete_set.
ExplodedSet exploding_transform(const RationalMatrix& A, const IdempotentSet& eps);

RationalMatrix commutator_witness(const RationalMatrix& a, const RationalMatrix& b);

std::string to_string(const RationalMatrix& m);

}  // namespace moyal
