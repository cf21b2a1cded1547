#include <doctest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "moyal/analytic.hpp"
#include "moyal/error.hpp"
#include "moyal/shadow.hpp"

using namespace moyal;
using std::numbers::pi;

namespace {

double max_diff(const Wavefunction& a, const Wavefunction& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

// Largest |sign * a - b| on the shared valid set.
double gap(const ConditionalField& a, const ConditionalField& b, double sign = 1.0) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.valid[i] && b.valid[i]) e = std::max(e, std::abs(sign * a.values[i] - b.values[i]));
  return e;
}

// Mean over valid points of |field - value|.
double max_dev(const ConditionalField& f, double value) {
  double e = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.valid[i]) e = std::max(e, std::abs(f.values[i] - value));
  return e;
}

}  // namespace

TEST_SUITE("shadow-manifolds") {
  TEST_CASE("identity and Fourier points") {
    const Grid g = Grid::self_dual(256);
    const auto psi = gaussian_packet(g, 0, 0, 1);
    CHECK(max_diff(frft(psi, 0.0), psi) < 1e-12);
    CHECK(max_diff(frft(psi, pi / 2), to_momentum(psi)) < 1e-8);
    CHECK(max_diff(frft(psi, 2 * pi), psi) < 1e-7);
    const auto q = frft(psi, 0.4);
    CHECK(q.domain() == Domain::fractional(0.4));
  }

  TEST_CASE("property: group laws on random states") {
    gen::Engine e(53);
    const Grid g = Grid::self_dual(256);
    for (int trial = 0; trial < 10; ++trial) {
      const auto psi = gen::superposition(e, g, {}, 4, 2.0, 1.0);
      CHECK(max_diff(frft(frft(psi, pi / 6), pi / 3), frft(psi, pi / 2)) < 1e-7);
      const double a = gen::uniform(e, -pi, pi), b = gen::uniform(e, -pi, pi);
      CHECK(max_diff(frft(frft(psi, a), b), frft(psi, a + b)) < 1e-7);
      CHECK(std::abs(frft(psi, a).norm_squared() - psi.norm_squared()) < 1e-7);
      CHECK(max_diff(frft(psi, pi / 2), to_momentum(psi)) < 1e-7);
    }
  }

  TEST_CASE("states reaching the grid corners are refused") {
    const Grid g = Grid::self_dual(128);
    try {
      frft(gaussian_packet(g, 9, 0, 0.8), 0.3);
      FAIL("expected an error");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::support);
    }
  }

  TEST_CASE("shadow fields of simple states") {
    const Grid g = Grid::self_dual(256);
    const double pw = 7 * g.dp();  // a whole number of periods across the grid
    CHECK(max_dev(shadow_field(gaussian_packet(g, 0, pw, 3.0), 0.0), pw) < 1e-7);
    // At pi/2 the field is -x(p); a packet at x0 gives the constant -x0.
    CHECK(max_dev(shadow_field(gaussian_packet(g, 1.4, 0, 0.9), pi / 2), -1.4) < 1e-8);
    // A coherent state rotated by pi/4: v is constant at the rotated centre.
    const double q0 = 1.2, p0 = -0.7, th = pi / 4;
    const auto coh = analytic::coherent(g, {}, 1.0, q0, p0, 0.0);
    CHECK(max_dev(shadow_field(coh, th), -q0 * std::sin(th) + p0 * std::cos(th)) < 1e-7);
  }

  TEST_CASE("property: shadow fields reproduce both Bohm routes") {
    gen::Engine e(59);
    const Grid g = Grid::self_dual(256);
    for (int trial = 0; trial < 10; ++trial) {
      const auto psi = gen::superposition(e, g, {}, 3, 2.0, 1.0);
      CHECK(gap(shadow_field(psi, 0.0), conditional_momentum(psi)) < 1e-5);
      CHECK(gap(shadow_field(psi, pi / 2), conditional_position(to_momentum(psi)), -1.0) < 1e-5);
    }
  }

  TEST_CASE("harmonic evolution rotates the shadow") {
    const PhysicsConfig cfg;
    const Grid g = Grid::self_dual(256);
    const auto psi = superpose({{cplx(1, 0), gaussian_packet(g, -1.0, 0.5, 0.8, cfg)}, {cplx(0.5, 0.2), gaussian_packet(g, 1.5, 0, 1.2, cfg)}});
    const auto V = Potential::harmonic(g, 1.0, cfg);
    const double dt = 0.5 * max_stable_dt(g, cfg);
    const auto s = split_step_evolve(psi, V, dt, 400, 400);
    const double t = s.times.back();
    for (double th : {0.0, 0.5, 1.2}) CHECK(gap(shadow_field(s.states.back(), th), shadow_field(psi, th + t)) < 1e-5);
  }

  TEST_CASE("streamline divergence") {
    const PhysicsConfig cfg;
    const Grid g = Grid::self_dual(256);
    const auto V = Potential::harmonic(g, 1.0, cfg);
    const double dt = 0.5 * max_stable_dt(g, cfg);
    const std::vector<double> levels{0.2, 0.5, 0.8};
    const auto series = split_step_evolve(gaussian_packet(g, 1.0, 0.5, 0.7, cfg), V, dt, 200, 2);
    CHECK(streamline_divergence(series, V, 0.3, 0.3, levels).divergence == 0.0);
    const auto r = streamline_divergence(series, V, 0.0, pi / 2, levels);
    CHECK(r.divergence < 1e-3);
    CHECK(r.z1.size() == levels.size());
    const auto cat = superpose({{cplx(1, 0), gaussian_packet(g, -2, 0, 1, cfg)}, {cplx(0.6, 0), gaussian_packet(g, 2, 0, 1, cfg)}});
    const auto cs = split_step_evolve(cat, V, dt, 400, 2);
    CHECK(streamline_divergence(cs, V, 0.0, pi / 2, {0.1, 0.25, 0.5, 0.75, 0.9}).divergence > 0.1);
  }
}
