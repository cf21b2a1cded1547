#include "moyal/clifford.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <random>
#include <sstream>

#include "moyal/error.hpp"

namespace moyal {

int grade_of(Multivector::Blade b) { return std::popcount(b); }

BladeProduct blade_product(Multivector::Blade a, Multivector::Blade b, const Signature& sig) {
  // Transpositions needed to move each generator of b left past the higher
  // generators of a.
  int swaps = 0;
  for (Multivector::Blade x = a >> 1; x != 0; x >>= 1) swaps += std::popcount(x & b);
  int sign = swaps % 2 ? -1 : 1;
  const Multivector::Blade common = a & b;
  for (int i = 0; i < sig.dimension(); ++i)
    if (common & (1u << i) && i >= sig.p) sign = -sign;
  return {sign, a ^ b};
}

Multivector::Multivector(Signature sig) : sig_(sig) {
  require(sig.p >= 0 && sig.q >= 0, ErrorCode::invalid_argument, "signature must be non-negative");
  require(sig.dimension() <= max_generators, ErrorCode::size_limit, "at most 8 generators are supported");
}

Multivector::Multivector(Signature sig, std::map<Blade, Rational> coefficients) : Multivector(sig) {
  for (const auto& [b, c] : coefficients)
    require(b < (1u << sig.dimension()), ErrorCode::invalid_argument, "blade outside the algebra");
  coef_ = std::move(coefficients);
  canonicalize();
}

Multivector Multivector::scalar(Signature sig, const Rational& value) { return {sig, {{0u, value}}}; }

Multivector Multivector::generator(Signature sig, int index) {
  require(index >= 1 && index <= sig.dimension(), ErrorCode::invalid_argument, "generator index out of range");
  return {sig, {{1u << (index - 1), Rational(1)}}};
}

Multivector Multivector::blade(Signature sig, Blade mask, const Rational& value) {
  return {sig, {{mask, value}}};
}

void Multivector::canonicalize() {
  for (auto it = coef_.begin(); it != coef_.end();) {
    if (it->second == 0)
      it = coef_.erase(it);
    else
      ++it;
  }
}

void Multivector::check(const Multivector& o) const {
  require(sig_ == o.sig_, ErrorCode::signature_mismatch, "multivectors belong to different algebras");
}

Rational Multivector::coefficient(Blade b) const {
  auto it = coef_.find(b);
  return it == coef_.end() ? Rational(0) : it->second;
}

bool Multivector::is_scalar() const { return coef_.empty() || (coef_.size() == 1 && coef_.begin()->first == 0); }

Multivector Multivector::operator+(const Multivector& o) const {
  check(o);
  Multivector r(*this);
  for (const auto& [b, c] : o.coef_) r.coef_[b] += c;
  r.canonicalize();
  return r;
}

Multivector Multivector::operator-(const Multivector& o) const { return *this + (-o); }

Multivector Multivector::operator-() const { return scaled(-1); }

Multivector Multivector::scaled(const Rational& s) const {
  Multivector r(*this);
  for (auto& [b, c] : r.coef_) c *= s;
  r.canonicalize();
  return r;
}

Multivector Multivector::operator*(const Multivector& o) const {
  check(o);
  Multivector r(sig_);
  for (const auto& [a, ca] : coef_)
    for (const auto& [b, cb] : o.coef_) {
      const BladeProduct bp = blade_product(a, b, sig_);
      r.coef_[bp.blade] += bp.sign * ca * cb;
    }
  r.canonicalize();
  return r;
}

Multivector Multivector::reverse() const {
  Multivector r(*this);
  for (auto& [b, c] : r.coef_) {
    const int k = grade_of(b);
    if ((k * (k - 1) / 2) % 2) c = -c;
  }
  return r;
}

Multivector Multivector::grade(int k) const {
  Multivector r(sig_);
  for (const auto& [b, c] : coef_)
    if (grade_of(b) == k) r.coef_[b] = c;
  return r;
}

bool Multivector::is_even() const {
  for (const auto& [b, c] : coef_)
    if (grade_of(b) % 2) return false;
  return true;
}

std::string Multivector::to_string() const {
  if (coef_.empty()) return "0";
  std::vector<std::pair<Blade, Rational>> terms(coef_.begin(), coef_.end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
    const int gx = grade_of(x.first), gy = grade_of(y.first);
    return gx != gy ? gx < gy : x.first < y.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [b, c] : terms) {
    const bool neg = c < 0;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    const Rational mag = abs(c);
    std::string name;
    for (int i = 0; i < sig_.dimension(); ++i)
      if (b & (1u << i)) name += (name.empty() ? "e" : "^e") + std::to_string(i + 1);
    if (name.empty())
      os << moyal::to_string(mag);
    else if (mag == 1)
      os << name;
    else
      os << moyal::to_string(mag) << "*" << name;
  }
  return os.str();
}

namespace {

class BladeParser {
 public:
  BladeParser(std::string_view text, Signature sig) : text_(text), sig_(sig) {}

  Multivector parse() {
    Multivector sum(sig_);
    skip();
    int sign = 1;
    if (peek() == '+' || peek() == '-') sign = get() == '-' ? -1 : 1;
    sum = sum + term().scaled(sign);
    for (skip(); pos_ < text_.size(); skip()) {
      const char op = get();
      if (op != '+' && op != '-') error("expected '+' or '-'");
      sum = sum + term().scaled(op == '-' ? -1 : 1);
    }
    return sum;
  }

 private:
  // term := number ['*' blade] | blade
  Multivector term() {
    skip();
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      const Rational c = number();
      skip();
      if (peek() != '*') return Multivector::scalar(sig_, c);
      get();
      return blade().scaled(c);
    }
    return blade();
  }

  // blade := 'e' digits ('^' 'e' digits)*
  Multivector blade() {
    Multivector b = Multivector::scalar(sig_, 1);
    while (true) {
      skip();
      if (peek() != 'e') error("expected a generator like e1");
      get();
      const std::size_t at = pos_;
      const auto idx = digits();
      if (idx < 1 || idx > sig_.dimension()) error("generator index out of range", at);
      b = b * Multivector::generator(sig_, static_cast<int>(idx));
      skip();
      if (peek() != '^') return b;
      get();
    }
  }

  Rational number() {
    const auto num = digits();
    if (peek() != '/') return Rational(num);
    get();
    const std::size_t at = pos_;
    const auto den = digits();
    if (den == 0) error("zero denominator", at);
    return Rational(num, den);
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
    fail(ErrorCode::parse, what + " at column " + std::to_string(at + 1) + " in '" + std::string(text_) + "'");
  }

  std::string_view text_;
  Signature sig_;
  std::size_t pos_ = 0;
};

}  // namespace

Multivector Multivector::parse(std::string_view text, Signature sig) { return BladeParser(text, sig).parse(); }

MultiplicationTable generate_algebra(int p, int q) {
  require(p >= 0 && q >= 0, ErrorCode::invalid_argument, "signature must be non-negative");
  require(p + q <= max_generators, ErrorCode::size_limit, "at most 8 generators are supported");
  MultiplicationTable t{{p, q}, std::size_t{1} << (p + q), {}};
  t.entries.reserve(t.size * t.size);
  for (std::size_t a = 0; a < t.size; ++a)
    for (std::size_t b = 0; b < t.size; ++b)
      t.entries.push_back(blade_product(static_cast<Multivector::Blade>(a), static_cast<Multivector::Blade>(b), t.sig));
  return t;
}

bool table_is_associative(const MultiplicationTable& table, std::size_t samples, std::uint64_t seed) {
  auto triple_ok = [&](std::size_t a, std::size_t b, std::size_t c) {
    const auto& ab = table(a, b);
    const auto& ab_c = table(ab.blade, c);
    const auto& bc = table(b, c);
    const auto& a_bc = table(a, bc.blade);
    return ab.sign * ab_c.sign == bc.sign * a_bc.sign && ab_c.blade == a_bc.blade;
  };
  const std::size_t n = table.size;
  if (table.sig.dimension() <= 4) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (!triple_ok(a, b, c)) return false;
    return true;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i)
    if (!triple_ok(rng() % n, rng() % n, rng() % n)) return false;
  return true;
}

Multivector inverse_versor(const Multivector& R) {
  const Multivector rr = R * R.reverse();
  require(rr.is_scalar() && !rr.is_zero(), ErrorCode::non_invertible,
          "R reverse(R) is not a nonzero scalar");
  return R.reverse().scaled(Rational(1) / rr.coefficient(0));
}

Multivector rotor_conjugate(const Multivector& R, const Multivector& A) { return R * A * inverse_versor(R); }

}  // namespace moyal
