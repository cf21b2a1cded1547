#include "moyal/poly_symbol.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <vector>

#include "moyal/error.hpp"

namespace moyal {

std::complex<double> ExactComplex::to_double() const {
  return {static_cast<double>(re), static_cast<double>(im)};
}

Rational exact_from_double(double v) {
  require(std::isfinite(v), ErrorCode::invalid_argument, "cannot convert non-finite value");
  int exp = 0;
  const double mant = std::frexp(v, &exp);
  // 53-bit mantissa scaled to an integer, then an exact power-of-two factor.
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  Rational r{boost::multiprecision::cpp_int(scaled)};
  const int shift = exp - 53;
  boost::multiprecision::cpp_int two_pow = 1;
  two_pow <<= std::abs(shift);
  if (shift >= 0)
    r *= Rational(two_pow);
  else
    r /= Rational(two_pow);
  return r;
}

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

PolySymbol::PolySymbol(double hbar) : hbar_(hbar) {
  require(std::isfinite(hbar) && hbar > 0.0, ErrorCode::invalid_argument, "hbar must be > 0");
  hbar_exact_ = exact_from_double(hbar);
}

PolySymbol::PolySymbol(double hbar, std::map<Monomial, ExactComplex> terms) : PolySymbol(hbar) {
  for (const auto& [m, c] : terms)
    require(m.first >= 0 && m.second >= 0, ErrorCode::invalid_argument,
            "monomial powers must be non-negative");
  terms_ = std::move(terms);
  canonicalize();
}

PolySymbol PolySymbol::constant(const ExactComplex& c, double hbar) {
  return PolySymbol(hbar, {{{0, 0}, c}});
}

PolySymbol PolySymbol::monomial(int px, int pp, const ExactComplex& c, double hbar) {
  return PolySymbol(hbar, {{{px, pp}, c}});
}

void PolySymbol::canonicalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
}

void PolySymbol::check_compatible(const PolySymbol& o) const {
  require(hbar_ == o.hbar_, ErrorCode::invalid_argument, "symbols carry different hbar");
}

ExactComplex PolySymbol::coefficient(int px, int pp) const {
  auto it = terms_.find({px, pp});
  return it == terms_.end() ? ExactComplex{} : it->second;
}

int PolySymbol::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.first + m.second);
  return d;
}

bool PolySymbol::is_real() const {
  for (const auto& [m, c] : terms_)
    if (c.im != 0) return false;
  return true;
}

PolySymbol PolySymbol::operator+(const PolySymbol& o) const {
  check_compatible(o);
  PolySymbol r(*this);
  for (const auto& [m, c] : o.terms_) r.terms_[m] = r.terms_[m] + c;
  r.canonicalize();
  return r;
}

PolySymbol PolySymbol::operator-(const PolySymbol& o) const { return *this + o.scaled({-1, 0}); }

PolySymbol PolySymbol::operator*(const PolySymbol& o) const {
  check_compatible(o);
  PolySymbol r(hbar_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      const Monomial m{ma.first + mb.first, ma.second + mb.second};
      r.terms_[m] = r.terms_[m] + ca * cb;
    }
  r.canonicalize();
  return r;
}

PolySymbol PolySymbol::scaled(const ExactComplex& c) const {
  PolySymbol r(*this);
  for (auto& [m, v] : r.terms_) v = v * c;
  r.canonicalize();
  return r;
}

namespace {

Rational falling(int n, int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= (n - i);
  return r;
}

}  // namespace

PolySymbol PolySymbol::d_x(int order) const {
  PolySymbol r(hbar_);
  for (const auto& [m, c] : terms_) {
    if (m.first < order) continue;
    const Rational f = falling(m.first, order);
    r.terms_[{m.first - order, m.second}] = ExactComplex{c.re * f, c.im * f};
  }
  r.canonicalize();
  return r;
}

PolySymbol PolySymbol::d_p(int order) const {
  PolySymbol r(hbar_);
  for (const auto& [m, c] : terms_) {
    if (m.second < order) continue;
    const Rational f = falling(m.second, order);
    r.terms_[{m.first, m.second - order}] = ExactComplex{c.re * f, c.im * f};
  }
  r.canonicalize();
  return r;
}

std::complex<double> PolySymbol::evaluate(double x, double p) const {
  std::complex<double> s{0.0, 0.0};
  for (const auto& [m, c] : terms_) s += c.to_double() * std::pow(x, m.first) * std::pow(p, m.second);
  return s;
}

Rational PolySymbol::coefficient_norm() const {
  Rational s = 0;
  for (const auto& [m, c] : terms_) s += abs(c.re) + abs(c.im);
  return s;
}

bool PolySymbol::operator==(const PolySymbol& o) const {
  return hbar_ == o.hbar_ && terms_ == o.terms_;
}

std::string PolySymbol::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first, then by x power.
  std::vector<std::pair<Monomial, ExactComplex>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    const int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
    if (da != db) return da > db;
    return a.first.first > b.first.first;
  });
  for (const auto& [m, c] : ordered) {
    std::string coef;
    bool negative = false;
    if (c.im == 0) {
      negative = c.re < 0;
      coef = moyal::to_string(abs(c.re));
    } else if (c.re == 0) {
      negative = c.im < 0;
      coef = abs(c.im) == 1 ? std::string("i") : moyal::to_string(abs(c.im)) + "*i";
    } else {
      coef = "(" + moyal::to_string(c.re) + (c.im < 0 ? " - " : " + ") +
             moyal::to_string(abs(c.im)) + "*i)";
    }
    std::string mono;
    auto add = [&](const char* v, int pw) {
      if (pw == 0) return;
      if (!mono.empty()) mono += "*";
      mono += v;
      if (pw > 1) mono += "^" + std::to_string(pw);
    };
    add("x", m.first);
    add("p", m.second);
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    if (mono.empty())
      os << coef;
    else if (coef == "1")
      os << mono;
    else
      os << coef << "*" << mono;
  }
  return os.str();
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, double hbar) : text_(text), hbar_(hbar) {}

  PolySymbol parse() {
    PolySymbol sum(hbar_);
    skip();
    bool negative = false;
    if (peek() == '+' || peek() == '-') negative = get() == '-';
    sum = sum + term().scaled({negative ? -1 : 1, 0});
    for (skip(); pos_ < text_.size(); skip()) {
      const char op = get();
      if (op != '+' && op != '-') error("expected '+' or '-'");
      sum = sum + term().scaled({op == '-' ? -1 : 1, 0});
    }
    return sum;
  }

 private:
  PolySymbol term() {
    PolySymbol t = factor();
    for (skip(); peek() == '*'; skip()) {
      get();
      t = t * factor();
    }
    return t;
  }

  PolySymbol factor() {
    skip();
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return PolySymbol::constant({number(), 0}, hbar_);
    if (text_.substr(pos_, 4) == "hbar") {
      pos_ += 4;
      return PolySymbol::constant({exact_from_double(hbar_), 0}, hbar_);
    }
    if (c == 'i') {
      get();
      return PolySymbol::constant({0, 1}, hbar_);
    }
    if (c == 'x' || c == 'p') {
      get();
      int power = 1;
      skip();
      if (peek() == '^') {
        get();
        skip();
        power = integer();
      }
      return PolySymbol::monomial(c == 'x' ? power : 0, c == 'p' ? power : 0, {1, 0}, hbar_);
    }
    error("unexpected character");
  }

  Rational number() {
    const std::size_t start = pos_;
    boost::multiprecision::cpp_int whole = digits();
    if (peek() == '/') {
      get();
      const auto den = digits();
      if (den == 0) error("zero denominator", start);
      return Rational(whole, den);
    }
    Rational r(whole);
    if (peek() == '.') {
      get();
      const std::size_t frac_start = pos_;
      const auto frac = digits();
      boost::multiprecision::cpp_int scale = 1;
      for (std::size_t i = frac_start; i < pos_; ++i) scale *= 10;
      r += Rational(frac, scale);
    }
    return r;
  }

  int integer() {
    const std::size_t start = pos_;
    const auto v = digits();
    if (v > 64) error("power too large", start);
    return static_cast<int>(v);
  }

  boost::multiprecision::cpp_int digits() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) error("expected digits");
    boost::multiprecision::cpp_int v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (get() - '0');
    return v;
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }

  [[noreturn]] void error(const std::string& what) const { error(what, pos_); }
  [[noreturn]] void error(const std::string& what, std::size_t at) const {
    fail(ErrorCode::parse,
         what + " at column " + std::to_string(at + 1) + " in '" + std::string(text_) + "'");
  }

  std::string_view text_;
  double hbar_;
  std::size_t pos_ = 0;
};

}  // namespace

PolySymbol PolySymbol::parse(std::string_view text, double hbar) {
  return Parser(text, hbar).parse();
}

}  // namespace moyal
