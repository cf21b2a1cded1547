#include <doctest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "moyal/error.hpp"
#include "moyal/star.hpp"

using namespace moyal;
using std::numbers::pi;

namespace {

PolySymbol P(const char* s, double hbar = 1.0) { return PolySymbol::parse(s, hbar); }

Rational binomial(int n, int k) {
  Rational r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Oracle: sum_n (i hbar/2)^n / n! sum_k C(n,k) (-1)^k (d_x^{n-k} d_p^k a)(d_p^{n-k} d_x^k b),
// written out term by term with derivatives and pointwise products only.
PolySymbol star_series(const PolySymbol& a, const PolySymbol& b) {
  const double hbar = a.hbar();
  PolySymbol out(hbar);
  ExactComplex pref{1, 0};
  const ExactComplex half_ih{0, a.hbar_exact() / 2};
  for (int n = 0; n <= a.degree() + b.degree(); ++n) {
    if (n > 0) pref = pref * half_ih * ExactComplex{Rational(1, n), 0};
    for (int k = 0; k <= n; ++k) {
      const Rational sign = (k % 2) ? -1 : 1;
      const PolySymbol left = a.d_x(n - k).d_p(k), right = b.d_p(n - k).d_x(k);
      out = out + (left * right).scaled(pref * ExactComplex{sign * binomial(n, k), 0});
    }
  }
  return out;
}

ExactComplex re(Rational r) { return {std::move(r), 0}; }

double central_max_error(const ComplexPhaseSpaceFunction& f, const std::function<cplx(double, double)>& want) {
  const auto mask = central_quarter(f.grid());
  double e = 0.0;
  for (std::size_t j = 0; j < f.n(); ++j)
    for (std::size_t k = 0; k < f.n(); ++k)
      if (mask[j * f.n() + k]) e = std::max(e, std::abs(f(j, k) - want(f.grid().x(j), f.grid().p(k))));
  return e;
}

}  // namespace

TEST_SUITE("star-algebra") {
  TEST_CASE("parser and printer") {
    const auto a = P("x^2*p - 0.5*p^3");
    CHECK(a.to_string() == "x^2*p - 1/2*p^3");
    CHECK(P(a.to_string().c_str()) == a);
    CHECK(P("hbar*x", 0.5) == P("1/2*x", 0.5));
    CHECK(P("i*x*i") == P("-x"));
    CHECK(P("0.1*p").coefficient(0, 1).re == Rational(1, 10));
    for (const char* bad : {"x^^2", "x +", "q", "x^", "1/0", "(x)"}) CHECK_THROWS_AS(P(bad), Error);
  }

  TEST_CASE("canonical pair") {
    for (double hbar : {1.0, 0.5, 0.125}) {
      const auto x = PolySymbol::x(hbar), p = PolySymbol::p(hbar);
      const auto c = star_poly(x, p) - star_poly(p, x);
      CHECK(c == PolySymbol::constant({0, exact_from_double(hbar)}, hbar));
    }
    CHECK(star_poly(P("x"), P("x")) == P("x^2"));
  }

  TEST_CASE("worked products") {
    CHECK(star_poly(P("x^2"), P("p^2")) == P("x^2*p^2 + 2*i*x*p - 1/2"));
    CHECK(star_poly(P("x^2", 0.5), P("p^2", 0.5)) == P("x^2*p^2 + i*x*p - 1/8", 0.5));
    CHECK(star_poly(P("x^2"), P("p^2")) == star_series(P("x^2"), P("p^2")));
  }

  TEST_CASE("brackets on monomials") {
    CHECK(moyal_bracket(P("x"), P("p")) == P("1"));
    CHECK(moyal_bracket(P("x^2"), P("p^2")) == P("4*x*p"));
    CHECK(moyal_bracket(P("x^3"), P("p^2")) == P("6*x^2*p"));
    CHECK(moyal_bracket(P("x^3"), P("p^3")) == P("9*x^2*p^2 - 3/2"));
    CHECK(baker_bracket(P("x"), P("p")) == P("x*p"));
    CHECK(baker_bracket(P("x^2"), P("p^2")) == P("x^2*p^2 - 1/2"));
    CHECK(poisson_bracket(P("x"), P("p")) == P("1"));
    CHECK(poisson_bracket(P("x^2"), P("p^2")) == P("4*x*p"));
    const auto H = P("1/2*p^2 + 1/2*x^2 + x^4");
    CHECK(poisson_bracket(H, H).is_zero());
  }

  TEST_CASE("classical limit is exact in hbar^2") {
    Rational prev = 0;
    for (double hbar : {0.5, 0.25, 0.125}) {
      const auto a = P("x^3", hbar), b = P("p^3", hbar);
      const Rational d = (moyal_bracket(a, b) - poisson_bracket(a, b)).coefficient_norm();
      CHECK(d == Rational(3, 2) * exact_from_double(hbar) * exact_from_double(hbar));
      if (prev != 0) CHECK(prev / d == 4);
      prev = d;
      const Rational bb = (baker_bracket(a, b) - a * b).coefficient_norm();
      CHECK(bb == Rational(9, 2) * exact_from_double(hbar) * exact_from_double(hbar));
    }
  }

  TEST_CASE("property: star product agrees with the series oracle and is associative") {
    gen::Engine e(31);
    for (int trial = 0; trial < 60; ++trial) {
      const double hbar = std::ldexp(1.0, -gen::integer(e, 0, 3));
      const auto a = gen::polynomial(e, 3, hbar), b = gen::polynomial(e, 3, hbar), c = gen::polynomial(e, 3, hbar);
      REQUIRE(star_poly(a, b) == star_series(a, b));
      REQUIRE(star_poly(star_poly(a, b), c) == star_poly(a, star_poly(b, c)));
    }
  }

  TEST_CASE("property: bracket symmetries and the commutative subalgebra") {
    gen::Engine e(37);
    for (int trial = 0; trial < 60; ++trial) {
      const auto a = gen::polynomial(e, 4, 1.0), b = gen::polynomial(e, 4, 1.0);
      REQUIRE(moyal_bracket(a, b) == moyal_bracket(b, a).scaled(re(-1)));
      REQUIRE(baker_bracket(a, b) == baker_bracket(b, a));
      REQUIRE(baker_bracket(a, PolySymbol::constant(re(1), 1.0)) == a);
      // Symbols of x alone star-multiply pointwise.
      PolySymbol fx(1.0), gx(1.0);
      for (int k = 0; k <= 4; ++k) {
        fx = fx + PolySymbol::monomial(k, 0, re(gen::small_rational(e)), 1.0);
        gx = gx + PolySymbol::monomial(k, 0, re(gen::small_rational(e)), 1.0);
      }
      REQUIRE(star_poly(fx, gx) == fx * gx);
      REQUIRE(star_poly(fx, gx) == star_poly(gx, fx));
    }
  }

  TEST_CASE("property: halving hbar quarters the bracket correction") {
    gen::Engine e(41);
    for (int trial = 0; trial < 30; ++trial) {
      // Same rational coefficients at each hbar.
      const auto seed = e();
      Rational prev = 0;
      for (double hbar : {1.0, 0.5, 0.25}) {
        gen::Engine local(seed);
        const auto a = gen::polynomial(local, 4, hbar, 4, true), b = gen::polynomial(local, 4, hbar, 4, true);
        const Rational d = (moyal_bracket(a, b) - poisson_bracket(a, b)).coefficient_norm();
        if (prev != 0) REQUIRE(prev / d == 4);
        if (d == 0) break;
        prev = d;
      }
    }
  }

  TEST_CASE("grid star: identity element and canonical pair") {
    const PhysicsConfig cfg;
    const Grid g = Grid::self_dual(128);
    const auto x = sample_windowed(P("x"), g, cfg), p = sample_windowed(P("p"), g, cfg);
    // The constant needs no window; star with it must return b to roundoff.
    const auto one = to_complex(PhaseSpaceFunction::sample(g, cfg, [](double, double) { return 1.0; }));
    const auto bump = to_complex(PhaseSpaceFunction::sample(g, cfg, [](double x, double p) { return std::exp(-(x - 1) * (x - 1) - p * p / 2); }));
    const auto ob = star_grid(one, bump), bo = star_grid(bump, one);
    double id_err = 0.0;
    for (std::size_t i = 0; i < ob.values().size(); ++i)
      id_err = std::max({id_err, std::abs(ob.values()[i] - bump.values()[i]), std::abs(bo.values()[i] - bump.values()[i])});
    CHECK(id_err < 1e-10);
    const auto xp = star_grid(x, p), px = star_grid(p, x);
    std::vector<cplx> diff(xp.values().size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = xp.values()[i] - px.values()[i];
    CHECK(central_max_error(ComplexPhaseSpaceFunction(g, cfg, diff), [](double, double) { return cplx(0, 1); }) < 1e-6);
    CHECK(central_max_error(moyal_bracket_grid(x, p), [](double, double) { return cplx(1); }) < 1e-6);
  }

  TEST_CASE("grid star of polynomials matches the exact series on the central region") {
    const PhysicsConfig cfg;
    const Grid g = Grid::self_dual(128);
    const auto a = P("x^2 + x*p"), b = P("p^2 - x");
    const auto exact = star_poly(a, b);
    const auto got = star_grid(sample_windowed(a, g, cfg), sample_windowed(b, g, cfg));
    const auto mask = central_quarter(g);
    double scale = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j)
      for (std::size_t k = 0; k < g.n(); ++k)
        if (mask[j * g.n() + k]) scale = std::max(scale, std::abs(exact.evaluate(g.x(j), g.p(k))));
    CHECK(central_max_error(got, [&](double x, double p) { return exact.evaluate(x, p); }) < 1e-6 * scale);
  }

  TEST_CASE("grid star of gaussians") {
    const PhysicsConfig cfg;
    const Grid g = Grid::self_dual(128);
    // G = exp(-(x^2 + p^2)/hbar) is pi hbar times the ground-state Wigner
    // function, so G * G = G / 2 exactly.
    const auto G = to_complex(PhaseSpaceFunction::sample(g, cfg, [](double x, double p) { return std::exp(-(x * x + p * p)); }));
    const auto GG = star_grid(G, G);
    double err = 0.0;
    for (std::size_t i = 0; i < GG.values().size(); ++i) err = std::max(err, std::abs(GG.values()[i] - 0.5 * G.values()[i]));
    CHECK(err < 1e-10);

    // Two different Gaussians against a brute-force quadrature of the integral
    // form (1/pi^2) int a(x+x1, p+p1) b(x+x2, p+p2) exp(2i(x1 p2 - x2 p1)) at a
    // few points.
    auto fa = [](double x, double p) { return std::exp(-((x - 0.4) * (x - 0.4) + 0.5 * p * p)); };
    auto fb = [](double x, double p) { return std::exp(-(0.7 * x * x + (p + 0.3) * (p + 0.3))); };
    const auto A = to_complex(PhaseSpaceFunction::sample(g, cfg, fa));
    const auto B = to_complex(PhaseSpaceFunction::sample(g, cfg, fb));
    const auto AB = star_grid(A, B);
    const int m = 48;
    const double h = 12.0 / m;
    for (auto [j, k] : {std::pair<std::size_t, std::size_t>{64, 64}, {60, 67}, {70, 58}}) {
      const double x = g.x(j), p = g.p(k);
      std::vector<double> ta(m * m), tb(m * m);
      for (int a1 = 0; a1 < m; ++a1)
        for (int b1 = 0; b1 < m; ++b1) {
          ta[a1 * m + b1] = fa(x - 6 + a1 * h, p - 6 + b1 * h);
          tb[a1 * m + b1] = fb(x - 6 + a1 * h, p - 6 + b1 * h);
        }
      cplx s = 0.0;
      for (int i1 = 0; i1 < m; ++i1)
        for (int j1 = 0; j1 < m; ++j1) {
          const double va = ta[i1 * m + j1];
          if (va < 1e-18) continue;
          const double x1 = -6 + i1 * h, p1 = -6 + j1 * h;
          for (int i2 = 0; i2 < m; ++i2) {
            const double x2 = -6 + i2 * h;
            for (int j2 = 0; j2 < m; ++j2) {
              const double vb = tb[i2 * m + j2];
              if (vb < 1e-18) continue;
              const double p2 = -6 + j2 * h;
              s += va * vb * std::exp(cplx(0, 2 * (x1 * p2 - x2 * p1)));
            }
          }
        }
      s *= std::pow(h, 4) / (pi * pi);
      CHECK(std::abs(AB(j, k) - s) < 1e-6);
    }
  }

  TEST_CASE("grid star rejects symbols that are not band-limited") {
    const PhysicsConfig cfg;
    const Grid g = Grid::self_dual(64);
    const auto raw = to_complex(PhaseSpaceFunction::sample(g, cfg, [](double x, double p) { return x * x * p; }));
    CHECK_THROWS_AS(star_grid(raw, raw), Error);
  }
}
