// Acceptance gate: one line per criterion, exit 0 only if every line passes.
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "moyal/bohm.hpp"
#include "moyal/clifford.hpp"
#include "moyal/dynamics.hpp"
#include "moyal/error.hpp"
#include "moyal/groupoid.hpp"
#include "moyal/idempotent.hpp"
#include "moyal/shadow.hpp"
#include "moyal/star.hpp"
#include "moyal/weyl.hpp"
#include "moyal/wigner.hpp"
#include "moyal/analytic.hpp"
#include "determinism.hpp"

using namespace moyal;
using std::numbers::pi;

namespace {

// Pinned tolerances.
constexpr double tol_star_grid = 1e-6;
constexpr double tol_classical_grid = 0.05;
constexpr double tol_marginals = 1e-8;
constexpr double tol_weyl = 1e-5;
constexpr double tol_guidance = 1e-5;
constexpr double tol_qhj = 1e-4;
constexpr double qhj_min_gain = 3.0;
constexpr double tol_tv = 0.05;
constexpr double tol_shadow_gaussian = 1e-3;
constexpr double min_shadow_cat = 0.1;
constexpr double tol_frft = 1e-7;

struct Line {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<Line> lines;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  lines.push_back({id, name, pass, detail});
  std::printf("criterion %2d %-24s %s  %s\n", id, name.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

template <typename Fn>
void guarded(int id, const std::string& name, Fn fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

double central_error(const ComplexPhaseSpaceFunction& got, const std::function<cplx(double, double)>& want) {
  const auto mask = central_quarter(got.grid());
  const std::size_t n = got.n();
  double err = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (mask[j * n + k]) err = std::max(err, std::abs(got(j, k) - want(got.grid().x(j), got.grid().p(k))));
  return err;
}

void canonical_star() {
  const double hbar = 1.0;
  const PhysicsConfig cfg{hbar, 1.0};
  const auto x = PolySymbol::x(hbar), p = PolySymbol::p(hbar);
  const PolySymbol comm = star_poly(x, p) - star_poly(p, x);
  const bool exact = comm == PolySymbol::constant({0, 1}, hbar);
  const Grid g = Grid::self_dual(128, hbar);
  const auto xs = sample_windowed(x, g, cfg), ps = sample_windowed(p, g, cfg);
  const auto a = star_grid(xs, ps), b = star_grid(ps, xs);
  std::vector<cplx> diff(a.values().size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = a.values()[i] - b.values()[i];
  const double err = central_error({g, cfg, diff}, [&](double, double) { return cplx(0, hbar); });
  report(1, "canonical-star", exact && err <= tol_star_grid,
         "poly=" + comm.to_string() + fmt(" grid_err=%.3e tol=%.0e", err, tol_star_grid));
}

void classical_limit() {
  std::vector<double> gaps;
  bool exact = true;
  for (double hbar : {0.5, 0.25, 0.125}) {
    const auto a = PolySymbol::parse("x^3", hbar), b = PolySymbol::parse("p^3", hbar);
    const PolySymbol d = moyal_bracket(a, b) - poisson_bracket(a, b);
    const Rational h = exact_from_double(hbar);
    exact = exact && d.coefficient_norm() == Rational(3, 2) * h * h;
    gaps.push_back(d.coefficient_norm().convert_to<double>());
  }
  const bool ratios = gaps[0] == 4.0 * gaps[1] && gaps[1] == 4.0 * gaps[2];
  // grid route at hbar = 1/2: (MB - PB) is the constant -3/2 hbar^2
  const double hbar = 0.5;
  const PhysicsConfig cfg{hbar, 1.0};
  const Grid g = Grid::self_dual(128, hbar);
  const auto a = PolySymbol::parse("x^3", hbar), b = PolySymbol::parse("p^3", hbar);
  const auto mb = moyal_bracket_grid(sample_windowed(a, g, cfg), sample_windowed(b, g, cfg));
  const PolySymbol pb = poisson_bracket(a, b);
  const double want = 1.5 * hbar * hbar;
  const double err = central_error(mb, [&](double x, double p) { return pb.evaluate(x, p) - want; });
  const double rel = err / want;
  report(2, "classical-limit", exact && ratios && rel <= tol_classical_grid,
         fmt("norms=%.6g,%.6g,%.6g grid_rel=%.3e", gaps[0], gaps[1], gaps[2], rel) +
             fmt(" tol=%.2f", tol_classical_grid));
}

void wigner_marginals() {
  const PhysicsConfig cfg{1.0, 1.0};
  const Grid g = Grid::self_dual(512, cfg.hbar);
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> ux(-4, 4), up(-3, 3), us(0.6, 1.5), uc(-1, 1);
  std::uniform_int_distribution<int> count(1, 5);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::pair<cplx, Wavefunction>> terms;
    const int m = count(rng);
    for (int t = 0; t < m; ++t) {
      const double x0 = ux(rng), p0 = up(rng), s = us(rng);
      const cplx c(uc(rng), uc(rng));
      terms.emplace_back(c, gaussian_packet(g, x0, p0, s, cfg));
    }
    Wavefunction psi = superpose(terms);
    const auto W = wigner_transform(psi);
    const auto mg = marginals(W);
    const auto rho = psi.density();
    const auto phi = to_momentum(psi).density();
    for (std::size_t i = 0; i < g.n(); ++i)
      worst = std::max({worst, std::abs(mg.position[i] - rho[i]), std::abs(mg.momentum[i] - phi[i])});
  }
  report(3, "wigner-marginals", worst <= tol_marginals, fmt("max_err=%.3e tol=%.0e (20 states)", worst, tol_marginals));
}

void weyl_duality() {
  const PhysicsConfig cfg{1.0, 1.0};
  const std::size_t N = 64;
  const Grid g = Grid::self_dual(256, cfg.hbar);
  const Wavefunction psi =
      superpose({{cplx(1, 0), gaussian_packet(g, -1.2, 0.4, 1.0, cfg)}, {cplx(0.3, 0.5), gaussian_packet(g, 1.0, -0.6, 1.0, cfg)}});
  const DensityOperator rho = density_from_wavefunction(psi, N);
  const auto chi = characteristic_function(wigner_transform(psi));
  const auto idx = faithful_indices(g, N);
  std::vector<PhasePoint> pts;
  for (auto [l, m] : idx) pts.push_back({chi.alpha(l), chi.beta(m)});
  const auto tr = char_via_trace(rho, pts);
  double chi_err = 0.0;
  for (std::size_t i = 0; i < idx.size(); ++i)
    chi_err = std::max(chi_err, std::abs(tr[i] - chi(idx[i].first, idx[i].second)));
  double exp_err = 0.0;
  for (const char* s : {"x", "p", "x^2 + p^2", "x*p"}) {
    const auto e = expectation_cross_check(PolySymbol::parse(s, cfg.hbar), rho, g);
    exp_err = std::max(exp_err, std::abs(e.phase_space - e.trace));
  }
  report(4, "weyl-duality", chi_err <= tol_weyl && exp_err <= tol_weyl,
         fmt("chi_err=%.3e (%g points) expect_err=%.3e tol=%.0e", chi_err, double(idx.size()), exp_err, tol_weyl));
}

void guidance() {
  const PhysicsConfig cfg{1.0, 1.0};
  const Grid g = Grid::self_dual(512, cfg.hbar);
  const Wavefunction psi =
      superpose({{cplx(1, 0), gaussian_packet(g, -1.5, 0.8, 0.9, cfg)}, {cplx(0.4, 0.2), gaussian_packet(g, 1.5, -0.5, 1.1, cfg)}});
  const auto wig = conditional_momentum(psi);
  const auto grad = guidance_from_phase(polar_decompose(psi, -1.0, default_refine));
  double gap = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < wig.size(); ++i)
    if (wig.valid[i] && grad.valid[i]) {
      gap = std::max(gap, std::abs(wig.values[i] - grad.values[i]));
      ++used;
    }
  const auto dual = conditional_position(to_momentum(psi));
  const bool ok = used > g.n() / 8 && gap <= tol_guidance && wig.route_gap <= tol_guidance && dual.route_gap <= tol_guidance;
  report(5, "guidance-equivalence", ok,
         fmt("p_gap=%.3e spectral_gap=%.3e x_gap=%.3e tol=%.0e", gap, wig.route_gap, dual.route_gap, tol_guidance));
}

double qhj_case(bool harmonic, std::size_t n, double dt) {
  const PhysicsConfig cfg{1.0, 1.0};
  const Grid g(n, -20.0, 20.0, cfg.hbar);
  const double t0 = 0.5;
  TimeSeries s;
  for (int k = -1; k <= 1; ++k) {
    const double t = t0 + k * dt;
    s.times.push_back(t);
    s.states.push_back(harmonic ? analytic::coherent(g, cfg, 1.0, 1.5, -0.5, t) : analytic::free_gaussian(g, cfg, 0.8, -1.0, 1.2, t));
  }
  const auto V = harmonic ? Potential::harmonic(g, 1.0, cfg) : Potential::free(g);
  return qhj_residual(s, V.values, cfg).max_abs;
}

void qhj() {
  const double f1 = qhj_case(false, 512, 1e-3), f2 = qhj_case(false, 1024, 5e-4);
  const double h1 = qhj_case(true, 512, 1e-3), h2 = qhj_case(true, 1024, 5e-4);
  const bool ok = f1 < tol_qhj && h1 < tol_qhj && f1 / f2 >= qhj_min_gain && h1 / h2 >= qhj_min_gain;
  report(6, "qhj-residual", ok,
         fmt("free=%.3e (gain %.2f) harmonic=%.3e (gain %.2f)", f1, f1 / f2, h1, h1 / h2) + fmt(" tol=%.0e", tol_qhj));
}

void two_slit() {
  const PhysicsConfig cfg{1.0, 1.0};
  const Grid g(512, -30.0, 30.0, cfg.hbar);
  const Wavefunction psi0 = two_slit_state(4.0, 0.5, 10.0, g, cfg);
  const double dt = max_stable_dt(g, cfg);
  const std::size_t steps = 1200;
  const auto series = split_step_evolve(psi0, Potential::free(g), dt, steps, 4);
  const auto few = integrate_trajectories(series, sample_from_density(psi0.coordinates(), psi0.density(), 100, 7));
  const double gap = min_adjacent_gap(few);
  const auto many = integrate_trajectories(series, sample_from_density(psi0.coordinates(), psi0.density(), 1000, 11));
  const double tv = transported_density_check(many, series, series.times.back());
  const bool flagged = std::any_of(few.flagged.begin(), few.flagged.end(), [](auto f) { return f != 0; });
  report(7, "two-slit", gap > 0.0 && tv < tol_tv,
         fmt("min_gap=%.3e tv=%.4f tol=%.2f flagged=%g", gap, tv, tol_tv, flagged ? 1.0 : 0.0));
}

void shadow() {
  const PhysicsConfig cfg{1.0, 1.0};
  const Grid g = Grid::self_dual(256, cfg.hbar);
  const auto V = Potential::harmonic(g, 1.0, cfg);
  const double dt = 0.5 * max_stable_dt(g, cfg);
  const std::vector<double> levels{0.1, 0.25, 0.5, 0.75, 0.9};
  auto divergence = [&](const Wavefunction& psi) {
    const auto series = split_step_evolve(psi, V, dt, 400, 2);
    return streamline_divergence(series, V, 0.0, pi / 2, levels).divergence;
  };
  const double single = divergence(gaussian_packet(g, 1.0, 0.5, 0.7, cfg));
  const double cat = divergence(
      superpose({{cplx(1, 0), gaussian_packet(g, -2.0, 0.0, 1.0, cfg)}, {cplx(0.6, 0), gaussian_packet(g, 2.0, 0.0, 1.0, cfg)}}));
  report(8, "shadow-divergence", single < tol_shadow_gaussian && cat > min_shadow_cat,
         fmt("gaussian=%.3e (< %.0e) cat=%.3f (> %.1f)", single, tol_shadow_gaussian, cat, min_shadow_cat));
}

double max_diff(const Wavefunction& a, const Wavefunction& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

void frft_laws() {
  const PhysicsConfig cfg{1.0, 1.0};
  const Grid g = Grid::self_dual(256, cfg.hbar);
  const Wavefunction psi =
      superpose({{cplx(1, 0), gaussian_packet(g, -1.0, 1.0, 0.8, cfg)}, {cplx(0, 0.7), gaussian_packet(g, 1.5, -0.5, 1.2, cfg)}});
  const double id = max_diff(frft(psi, 0.0), psi);
  const double four = max_diff(frft(psi, pi / 2), to_momentum(psi));
  double add = 0.0, unit = 0.0;
  for (auto [a, b] : std::vector<std::pair<double, double>>{{0.3, 0.9}, {1.2, 1.1}, {-0.7, 2.5}}) {
    add = std::max(add, max_diff(frft(frft(psi, a), b), frft(psi, a + b)));
    unit = std::max(unit, std::abs(frft(psi, a).norm_squared() - psi.norm_squared()));
  }
  const double worst = std::max({id, four, add, unit});
  report(9, "frft-group-laws", worst <= tol_frft,
         fmt("identity=%.1e fourier=%.1e additivity=%.1e unitarity=%.1e", id, four, add, unit));
}

void clifford() {
  const Signature q{0, 2};
  const auto i = Multivector::parse("e1", q), j = Multivector::parse("e2", q), k = Multivector::parse("e1^e2", q);
  const auto m1 = Multivector::scalar(q, -1);
  const bool quat = i * i == m1 && j * j == m1 && k * k == m1 && i * j * k == m1 && i * j == k;
  const Signature st{1, 3};
  bool gamma = true;
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) {
      const auto ga = Multivector::generator(st, a), gb = Multivector::generator(st, b);
      const Rational eta = a != b ? 0 : (a == 1 ? 1 : -1);
      gamma = gamma && ga * gb + gb * ga == Multivector::scalar(st, 2 * eta);
    }
  const LabelSet T(3);
  const auto c = arrow_compose(T.arrow(0, 1), T.arrow(1, 2));
  const bool groupoid = c && *c == T.arrow(0, 2) && !arrow_compose(T.arrow(0, 1), T.arrow(2, 0)) &&
                        arrow_image(T.arrow(0, 1), 2) * arrow_image(T.arrow(1, 2), 2) == arrow_image(T.arrow(0, 2), 2);
  const IdempotentSet eps({RationalMatrix(2, 2, {1, 0, 0, 0}), RationalMatrix(2, 2, {0, 0, 0, 1})});
  const auto ex = exploding_transform(RationalMatrix(2, 2, {1, 1, 1, -1}), eps);
  const bool complete = IdempotentSet(ex.transformed).complete();
  const Rational h(1, 2);
  const bool mixing = ex.mixing == RationalMatrix(2, 2, {h, h, h, h});
  report(10, "clifford-identities", quat && gamma && groupoid && complete && mixing,
         std::string("quaternion=") + (quat ? "ok" : "bad") + " gamma=" + (gamma ? "ok" : "bad") +
             " groupoid=" + (groupoid ? "ok" : "bad") + " explode=" + (complete && mixing ? "ok" : "bad") +
             " mixing=" + to_string(ex.mixing));
}

void determinism() {
  const auto r = acceptance_determinism();
  report(11, "determinism", r.identical, r.detail);
}

}  // namespace

int main() {
  guarded(1, "canonical-star", canonical_star);
  guarded(2, "classical-limit", classical_limit);
  guarded(3, "wigner-marginals", wigner_marginals);
  guarded(4, "weyl-duality", weyl_duality);
  guarded(5, "guidance-equivalence", guidance);
  guarded(6, "qhj-residual", qhj);
  guarded(7, "two-slit", two_slit);
  guarded(8, "shadow-divergence", shadow);
  guarded(9, "frft-group-laws", frft_laws);
  guarded(10, "clifford-identities", clifford);
  guarded(11, "determinism", determinism);
  const auto failed = std::count_if(lines.begin(), lines.end(), [](const Line& l) { return !l.pass; });
  std::printf("%zu/%zu criteria pass\n", lines.size() - failed, lines.size());
  return failed == 0 ? 0 : 1;
}
