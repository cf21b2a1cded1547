#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "moyal/poly_symbol.hpp"

namespace moyal {

struct Signature {
  int p = 0;  // generators squaring to +1 (the first p)
  int q = 0;  // generators squaring to -1 (the remaining q)

  int dimension() const noexcept { return p + q; }
  bool operator==(const Signature&) const = default;
};

inline constexpr int max_generators = 8;

// Element of Cl(p,q) over exact rationals. Blade bit i stands for generator
// e_{i+1}; a blade is the ascending product of its generators.
class Multivector {
 public:
  using Blade = std::uint32_t;

  explicit Multivector(Signature sig);
  Multivector(Signature sig, std::map<Blade, Rational> coefficients);

  static Multivector scalar(Signature sig, const Rational& value);
  static Multivector generator(Signature sig, int index);  // e_index, 1-based
  static Multivector blade(Signature sig, Blade mask, const Rational& value = 1);

  // "2*e1^e2 - 3 + 1/2*e3": terms of optional rational coefficient times a
  // '^'-joined list of generators (1-based); non-ascending lists are reordered
  // with the permutation sign and repeated generators contract by the metric.
  static Multivector parse(std::string_view text, Signature sig);

  const Signature& signature() const noexcept { return sig_; }
  const std::map<Blade, Rational>& coefficients() const noexcept { return coef_; }
  Rational coefficient(Blade b) const;
  bool is_zero() const { return coef_.empty(); }
  bool is_scalar() const;

  Multivector operator+(const Multivector& o) const;
  Multivector operator-(const Multivector& o) const;
  Multivector operator*(const Multivector& o) const;  // geometric (Clifford) product
  Multivector operator-() const;
  Multivector scaled(const Rational& s) const;

  Multivector reverse() const;
  Multivector grade(int k) const;
  bool is_even() const;

  std::string to_string() const;
  bool operator==(const Multivector& o) const = default;

 private:
  void check(const Multivector& o) const;
  void canonicalize();

  Signature sig_;
  std::map<Blade, Rational> coef_;
};

int grade_of(Multivector::Blade b);

// Sign and result blade of the product of two basis blades.
struct BladeProduct {
  int sign;  // -1, 0 (never for nondegenerate metrics), +1
  Multivector::Blade blade;
};
BladeProduct blade_product(Multivector::Blade a, Multivector::Blade b, const Signature& sig);

struct MultiplicationTable {
  Signature sig;
  std::size_t size = 0;  // 2^(p+q)
  std::vector<BladeProduct> entries;  // row-major: entries[a * size + b]

  const BladeProduct& operator()(std::size_t a, std::size_t b) const { return entries[a * size + b]; }
};

// Throws size_limit above max_generators.
MultiplicationTable generate_algebra(int p, int q);

// Exhaustive check for p+q <= 4, otherwise `samples` seeded random triples.
bool table_is_associative(const MultiplicationTable& table, std::size_t samples = 10000,
                          std::uint64_t seed = 1);

// R A R^-1 with R^-1 = reverse(R) / (R reverse(R)); throws non_invertible unless
// R reverse(R) is a nonzero scalar.
Multivector rotor_conjugate(const Multivector& R, const Multivector& A);
Multivector inverse_versor(const Multivector& R);

}  // namespace moyal
