#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "generators.hpp"
#include "moyal/bohm.hpp"
#include "moyal/wigner.hpp"

using namespace moyal;
using std::numbers::pi;

namespace {

using Psi = std::function<cplx(double)>;

Psi gaussian_fn(double x0, double p0, double sigma, double hbar = 1.0) {
  const double c = std::pow(pi * sigma * sigma, -0.25);
  return [=](double x) { return c * std::exp(cplx(-(x - x0) * (x - x0) / (2 * sigma * sigma), p0 * x / hbar)); };
}

// W(x,p) = (1/pi hbar) * integral psi*(x + y) psi(x - y) exp(2ipy/hbar) dy by the
// trapezoid rule on a fine y grid, using the continuum psi directly.
double wigner_direct(const Psi& psi, double x, double p, double hbar = 1.0) {
  const double h = 0.01, ymax = 12.0;
  cplx s = 0.0;
  for (double y = -ymax; y <= ymax; y += h) s += std::conj(psi(x + y)) * psi(x - y) * std::exp(cplx(0, 2 * p * y / hbar));
  return (s * h).real() / (pi * hbar);
}

std::size_t nearest(const std::vector<double>& v, double t) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i] - t) < std::abs(v[best] - t)) best = i;
  return best;
}

}  // namespace

TEST_SUITE("wigner") {
  TEST_CASE("ground gaussian matches direct quadrature and is nonnegative") {
    const Grid g = Grid::self_dual(128);
    const auto W = wigner_transform(gaussian_packet(g, 0, 0, 1));
    double lo = 0.0;
    for (double v : W.values()) lo = std::min(lo, v);
    CHECK(lo >= -1e-10);
    const auto psi = gaussian_fn(0, 0, 1);
    for (std::size_t j : {40u, 64u, 70u, 80u})
      for (std::size_t k : {50u, 64u, 66u, 75u}) CHECK(W(j, k) == doctest::Approx(wigner_direct(psi, g.x(j), g.p(k))).epsilon(1e-8).scale(1));
  }

  TEST_CASE("cat state has an interference ridge with negative values") {
    const Grid g = Grid::self_dual(256);
    const double a = 2.5;
    const auto cat = superpose({{cplx(1, 0), gaussian_packet(g, -a, 0, 0.8)}, {cplx(1, 0), gaussian_packet(g, a, 0, 0.8)}});
    const auto W = wigner_transform(cat);
    const auto xs = g.positions();
    const std::size_t j0 = nearest(xs, 0.0);
    double ridge_min = 1.0;
    for (std::size_t k = 0; k < g.n(); ++k) ridge_min = std::min(ridge_min, W(j0, k));
    CHECK(ridge_min < -1e-3);
    // Same value from the continuum state.
    const auto c1 = gaussian_fn(-a, 0, 0.8), c2 = gaussian_fn(a, 0, 0.8);
    const Psi psi = [&](double x) { return (c1(x) + c2(x)) / std::sqrt(2.0 * (1.0 + std::exp(-a * a / (0.8 * 0.8)))); };
    for (std::size_t k : {100u, 128u, 140u}) CHECK(W(j0, k) == doctest::Approx(wigner_direct(psi, xs[j0], g.p(k))).epsilon(1e-7).scale(1));
  }

  TEST_CASE("ground gaussian position marginal is N(0, 1/2)") {
    const Grid g = Grid::self_dual(128);
    const auto m = marginals(wigner_transform(gaussian_packet(g, 0, 0, 1)));
    for (std::size_t j = 0; j < g.n(); ++j) CHECK(m.position[j] == doctest::Approx(std::exp(-g.x(j) * g.x(j)) / std::sqrt(pi)).epsilon(1e-10).scale(1));
  }

  TEST_CASE("cat marginals: two humps in x, fringes in p") {
    const Grid g = Grid::self_dual(256);
    const auto cat = superpose({{cplx(1, 0), gaussian_packet(g, -3, 0, 0.7)}, {cplx(1, 0), gaussian_packet(g, 3, 0, 0.7)}});
    const auto m = marginals(wigner_transform(cat));
    const auto xs = g.positions();
    CHECK(m.position[nearest(xs, 0)] < 1e-3 * m.position[nearest(xs, 3)]);
    // p-density ~ cos^2(3p): zero near p = pi/6, maximal at p = 0.
    const auto ps = g.momenta();
    CHECK(m.momentum[nearest(ps, pi / 6)] < 0.05 * m.momentum[nearest(ps, 0)]);
  }

  TEST_CASE("expectations") {
    const Grid g = Grid::self_dual(256);
    const PhysicsConfig cfg;
    const auto W = wigner_transform(gaussian_packet(g, 2, 5, 1));
    const auto one = PhaseSpaceFunction::sample(g, cfg, [](double, double) { return 1.0; });
    const auto x = PhaseSpaceFunction::sample(g, cfg, [](double x, double) { return x; });
    CHECK(expectation(one, W) == doctest::Approx(1).epsilon(1e-10));
    CHECK(expectation(x, W) == doctest::Approx(2).epsilon(1e-6));

    // <P^2> from a spectral derivative of psi.
    const double sigma = 0.9;
    const auto psi = gaussian_packet(g, 0, 0, sigma);
    const auto dpsi = spectral_derivative(psi.amplitudes(), g.length());
    double p2 = 0.0;
    for (const auto& d : dpsi) p2 += std::norm(d) * g.dx();
    const auto psq = PhaseSpaceFunction::sample(g, cfg, [](double, double p) { return p * p; });
    CHECK(expectation(psq, wigner_transform(psi)) == doctest::Approx(p2).epsilon(1e-6));
  }

  TEST_CASE("characteristic function basics") {
    const Grid g = Grid::self_dual(128);
    const auto chi = characteristic_function(wigner_transform(gaussian_packet(g, 0, 0, 1)));
    const std::size_t c = g.n() / 2;
    CHECK(std::abs(chi(c, c) - 1.0) < 1e-10);
    for (std::size_t l = 0; l < g.n(); ++l) {
      // Closed form exp(-(alpha^2 + beta^2)/4) for hbar = sigma = 1.
      CHECK(std::abs(chi(l, c) - std::exp(-chi.alpha(l) * chi.alpha(l) / 4)) < 1e-8);
      CHECK(std::abs(chi(c, l) - std::exp(-chi.beta(l) * chi.beta(l) / 4)) < 1e-8);
    }
  }

  TEST_CASE("property: characteristic function is bounded by one") {
    gen::Engine e(23);
    const Grid g = Grid::self_dual(256);
    for (int trial = 0; trial < 10; ++trial) {
      const auto chi = characteristic_function(wigner_transform(gen::superposition(e, g, {}, 4, 2.5, 1.0)));
      for (const auto& v : chi.values) REQUIRE(std::abs(v) <= 1 + 1e-8);
    }
  }

  TEST_CASE("property: marginals, purity and Galilean covariance") {
    gen::Engine e(20240611);
    const Grid g = Grid::self_dual(256);
    const PhysicsConfig cfg;
    const int sx = 8, sp = 5;
    for (int trial = 0; trial < 20; ++trial) {
      const auto psi = gen::superposition(e, g, cfg, 5, 2.5, 1.0);
      const auto W = wigner_transform(psi);
      const auto m = marginals(W);
      const auto rho = psi.density(), phi = to_momentum(psi).density();
      for (std::size_t i = 0; i < g.n(); ++i) {
        REQUIRE(std::abs(m.position[i] - rho[i]) < 1e-8);
        REQUIRE(std::abs(m.momentum[i] - phi[i]) < 1e-8);
        REQUIRE(m.position[i] >= -1e-10);
      }
      CHECK(purity(W) == doctest::Approx(1).epsilon(1e-6));

      std::vector<cplx> shifted(g.n(), 0.0);
      for (std::size_t j = 0; j + sx < g.n(); ++j)
        shifted[j + sx] = psi[j] * std::exp(cplx(0, sp * g.dp() * g.x(j + sx) / cfg.hbar));
      const auto Ws = wigner_transform(Wavefunction(g, cfg, shifted));
      double err = 0.0;
      for (std::size_t j = sx; j < g.n(); ++j)
        for (std::size_t k = sp; k < g.n(); ++k) err = std::max(err, std::abs(Ws(j, k) - W(j - sx, k - sp)));
      CHECK(err < 1e-8);
    }
  }
}
