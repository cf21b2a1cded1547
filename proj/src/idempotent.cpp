#include "moyal/idempotent.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "moyal/error.hpp"

namespace moyal {

RationalMatrix::RationalMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), Rational(0)) {
  require(rows > 0 && cols > 0, ErrorCode::invalid_argument, "matrix shape must be positive");
}

RationalMatrix::RationalMatrix(int rows, int cols, std::vector<Rational> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  require(rows > 0 && cols > 0 && data_.size() == static_cast<std::size_t>(rows * cols),
          ErrorCode::invalid_argument, "matrix entries do not match the shape");
}

RationalMatrix RationalMatrix::identity(int d) {
  RationalMatrix m(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, ErrorCode::invalid_argument, "matrix shapes do not match");
  RationalMatrix r(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, ErrorCode::invalid_argument, "matrix shapes do not match");
  RationalMatrix r(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  require(cols_ == o.rows_, ErrorCode::invalid_argument, "matrix shapes do not match");
  RationalMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < o.cols_; ++j) {
      Rational s = 0;
      for (int k = 0; k < cols_; ++k) s += (*this)(i, k) * o(k, j);
      r(i, j) = s;
    }
  return r;
}

bool RationalMatrix::is_zero() const {
  for (const auto& v : data_)
    if (v != 0) return false;
  return true;
}

Rational RationalMatrix::trace() const {
  Rational t = 0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

namespace {

void swap_rows(RationalMatrix& m, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

// Reduced row echelon form of m (applying the same operations to aug when
// given); returns the rank.
int eliminate(RationalMatrix& m, RationalMatrix* aug) {
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int pivot = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m(i, c) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    swap_rows(m, pivot, r);
    if (aug) swap_rows(*aug, pivot, r);
    const Rational inv = Rational(1) / m(r, c);
    for (int j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    if (aug)
      for (int j = 0; j < aug->cols(); ++j) (*aug)(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (int j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
      if (aug)
        for (int j = 0; j < aug->cols(); ++j) (*aug)(i, j) -= f * (*aug)(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace

int RationalMatrix::rank() const {
  RationalMatrix w(*this);
  return eliminate(w, nullptr);
}

RationalMatrix exact_inverse(const RationalMatrix& m) {
  require(m.rows() == m.cols(), ErrorCode::non_invertible, "only square matrices are invertible");
  RationalMatrix w(m);
  RationalMatrix inv = RationalMatrix::identity(m.rows());
  require(eliminate(w, &inv) == m.rows(), ErrorCode::non_invertible, "matrix is singular");
  return inv;
}

IdempotentSet::IdempotentSet(std::vector<RationalMatrix> members) : members_(std::move(members)), dim_(0) {
  require(!members_.empty(), ErrorCode::invalid_argument, "idempotent set is empty");
  dim_ = members_.front().rows();
  for (const auto& e : members_) {
    require(e.rows() == dim_ && e.cols() == dim_, ErrorCode::invalid_argument,
            "idempotents must be square of one dimension");
    require(e * e == e, ErrorCode::invalid_argument, "matrix is not idempotent");
  }
}

bool IdempotentSet::orthogonal() const {
  for (std::size_t i = 0; i < members_.size(); ++i)
    for (std::size_t j = 0; j < members_.size(); ++j)
      if (i != j && !(members_[i] * members_[j]).is_zero()) return false;
  return true;
}

bool IdempotentSet::complete() const {
  RationalMatrix s(dim_, dim_);
  for (const auto& e : members_) s = s + e;
  return s == RationalMatrix::identity(dim_);
}

ExplodedSet exploding_transform(const RationalMatrix& A, const IdempotentSet& eps) {
  require(A.rows() == eps.dimension() && A.cols() == eps.dimension(), ErrorCode::invalid_argument,
          "transformation and idempotents differ in dimension");
  require(eps.complete() && eps.orthogonal(), ErrorCode::incomplete_set,
          "exploding transform needs a complete orthogonal idempotent set");
  const RationalMatrix Ainv = exact_inverse(A);
  ExplodedSet out;
  const int n = static_cast<int>(eps.size());
  out.mixing = RationalMatrix(n, n);
  for (const auto& e : eps.members()) out.transformed.push_back(A * e * Ainv);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      out.mixing(j, k) = (out.transformed[static_cast<std::size_t>(j)] * eps.members()[static_cast<std::size_t>(k)]).trace();
  return out;
}

RationalMatrix commutator_witness(const RationalMatrix& a, const RationalMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols() && a.rows() == a.cols(), ErrorCode::invalid_argument,
          "commutator needs square matrices of one dimension");
  return a * b - b * a;
}

std::string to_string(const RationalMatrix& m) {
  std::string s = "[";
  for (int i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (int j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + to_string(m(i, j));
    s += "]";
  }
  return s + "]";
}

}  // namespace moyal
