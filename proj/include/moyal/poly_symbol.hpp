#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace moyal {

using Rational = boost::multiprecision::cpp_rational;

// Exact Gaussian rational re + i*im.
struct ExactComplex {
  Rational re{0};
  Rational im{0};

  bool is_zero() const { return re == 0 && im == 0; }
  ExactComplex operator+(const ExactComplex& o) const { return {re + o.re, im + o.im}; }
  ExactComplex operator-(const ExactComplex& o) const { return {re - o.re, im - o.im}; }
  ExactComplex operator*(const ExactComplex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  ExactComplex operator-() const { return {-re, -im}; }
  bool operator==(const ExactComplex&) const = default;
  std::complex<double> to_double() const;
};

// Polynomial in (x, p) with exact complex-rational coefficients. Real and
// imaginary parts are kept separately so symmetric combinations of real
// symbols come back exactly real. hbar is stored exactly as the rational value
// of the double it was built from.
class PolySymbol {
 public:
  using Monomial = std::pair<int, int>;  // (power of x, power of p)

  explicit PolySymbol(double hbar = 1.0);
  PolySymbol(double hbar, std::map<Monomial, ExactComplex> terms);

  static PolySymbol constant(const ExactComplex& c, double hbar);
  static PolySymbol monomial(int px, int pp, const ExactComplex& c, double hbar);
  static PolySymbol x(double hbar) { return monomial(1, 0, {1, 0}, hbar); }
  static PolySymbol p(double hbar) { return monomial(0, 1, {1, 0}, hbar); }

  // Grammar (whitespace ignored):
  //   poly    := ['+'|'-'] term (('+'|'-') term)*
  //   term    := factor ('*' factor)*
  //   factor  := number | 'i' | 'hbar' | ('x'|'p') ['^' digits]
  //   number  := digits ['.' digits] | digits '/' digits
  // Decimal literals are read exactly (0.1 is 1/10).
  static PolySymbol parse(std::string_view text, double hbar);

  double hbar() const noexcept { return hbar_; }
  const Rational& hbar_exact() const noexcept { return hbar_exact_; }
  const std::map<Monomial, ExactComplex>& terms() const noexcept { return terms_; }
  ExactComplex coefficient(int px, int pp) const;

  int degree() const;
  bool is_real() const;
  bool is_zero() const { return terms_.empty(); }

  PolySymbol operator+(const PolySymbol& o) const;
  PolySymbol operator-(const PolySymbol& o) const;
  PolySymbol operator*(const PolySymbol& o) const;  // pointwise (commutative) product
  PolySymbol scaled(const ExactComplex& c) const;

  PolySymbol d_x(int order = 1) const;
  PolySymbol d_p(int order = 1) const;

  std::complex<double> evaluate(double x, double p) const;

  // Sum over terms of |re| + |im|.
  Rational coefficient_norm() const;

  std::string to_string() const;
  bool operator==(const PolySymbol& o) const;

 private:
  void check_compatible(const PolySymbol& o) const;
  void canonicalize();

  double hbar_;
  Rational hbar_exact_;
  std::map<Monomial, ExactComplex> terms_;
};

Rational exact_from_double(double v);
std::string to_string(const Rational& r);

}  // namespace moyal
