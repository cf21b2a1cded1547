#include "moyal/app/checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "json_util.hpp"
#include "moyal/analytic.hpp"
#include "moyal/app/scenario.hpp"
#include "moyal/bohm.hpp"
#include "moyal/clifford.hpp"
#include "moyal/dynamics.hpp"
#include "moyal/groupoid.hpp"
#include "moyal/idempotent.hpp"
#include "moyal/shadow.hpp"
#include "moyal/star.hpp"
#include "moyal/weyl.hpp"
#include "moyal/wigner.hpp"

namespace moyal::app {

using std::numbers::pi;

Check check_at_most(std::string name, double value, double tolerance, double scale) {
  const double tol = tolerance * scale;
  return {std::move(name), value, tol, "<=", std::isfinite(value) && value <= tol, {}};
}

Check check_above(std::string name, double value, double threshold, double scale) {
  const double tol = threshold / scale;
  return {std::move(name), value, tol, ">", std::isfinite(value) && value > tol, {}};
}

Check check_at_least(std::string name, double value, double threshold, double scale) {
  const double tol = threshold / scale;
  return {std::move(name), value, tol, ">=", std::isfinite(value) && value >= tol, {}};
}

Check check_exact(std::string name, bool holds, std::string detail) {
  return {std::move(name), holds ? 1.0 : 0.0, 1.0, "==", holds, std::move(detail)};
}

bool SuiteReport::passed() const {
  return std::all_of(items.begin(), items.end(), [](const Check& c) { return c.pass; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"marginals", "star-identities", "weyl-duality",
                                              "qhj",       "frft-laws",       "clifford-identities"};
  return names;
}

namespace {

const PhysicsConfig unit{1.0, 1.0};

Wavefunction random_superposition(const Grid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ux(-4, 4), up(-3, 3), us(0.6, 1.5), uc(-1, 1);
  std::uniform_int_distribution<int> count(1, 5);
  std::vector<std::pair<cplx, Wavefunction>> terms;
  const int m = count(rng);
  for (int t = 0; t < m; ++t) {
    const double x0 = ux(rng), p0 = up(rng), s = us(rng);
    terms.emplace_back(cplx(uc(rng), uc(rng)), gaussian_packet(g, x0, p0, s, unit));
  }
  return superpose(terms);
}

std::vector<Check> marginals_suite(double scale) {
  const Grid g = Grid::self_dual(256, unit.hbar);
  std::mt19937_64 rng(5);
  double err = 0.0, norm = 0.0, pur = 0.0;
  for (int trial = 0; trial < 8; ++trial) {
    const Wavefunction psi = random_superposition(g, rng).normalized();
    const auto W = wigner_transform(psi);
    const auto m = marginals(W);
    const auto rho = psi.density(), phi = to_momentum(psi).density();
    double total = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) {
      err = std::max({err, std::abs(m.position[i] - rho[i]), std::abs(m.momentum[i] - phi[i])});
      total += m.position[i] * g.dx();
    }
    norm = std::max(norm, std::abs(total - 1.0));
    pur = std::max(pur, std::abs(purity(W) - 1.0));
  }
  const Wavefunction cat =
      superpose({{cplx(1, 0), gaussian_packet(g, -2.5, 0, 1, unit)}, {cplx(1, 0), gaussian_packet(g, 2.5, 0, 1, unit)}});
  const auto Wc = wigner_transform(cat.normalized());
  const double wmin = *std::min_element(Wc.values().begin(), Wc.values().end());
  Check neg = check_exact("cat Wigner function takes negative values", wmin < 0.0);
  neg.value = wmin;
  return {check_at_most("marginals match |psi|^2 and |phi|^2", err, 1e-8, scale),
          check_at_most("Wigner function integrates to one", norm, 1e-10, scale),
          check_at_most("pure-state purity equals one", pur, 1e-8, scale), neg};
}

double central_gap(const ComplexPhaseSpaceFunction& got, const std::function<cplx(double, double)>& want) {
  const auto mask = central_quarter(got.grid());
  const std::size_t n = got.n();
  double err = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (mask[j * n + k]) err = std::max(err, std::abs(got(j, k) - want(got.grid().x(j), got.grid().p(k))));
  return err;
}

std::vector<Check> star_suite(double scale) {
  const double h = unit.hbar;
  const auto x = PolySymbol::x(h), p = PolySymbol::p(h);
  std::vector<Check> out;
  const PolySymbol comm = star_poly(x, p) - star_poly(p, x);
  out.push_back(check_exact("x*p - p*x = i hbar (polynomial route)", comm == PolySymbol::constant({0, 1}, h),
                            comm.to_string()));
  const auto a = PolySymbol::parse("x^2*p - 1/2*p^3", h), b = PolySymbol::parse("x*p + 3*x^3", h),
             c = PolySymbol::parse("p^2 - x", h);
  out.push_back(check_exact("star product is associative", star_poly(star_poly(a, b), c) == star_poly(a, star_poly(b, c))));
  out.push_back(check_exact("Moyal bracket of x and p is one", moyal_bracket(x, p) == PolySymbol::constant({1, 0}, h)));
  out.push_back(check_exact("Baker bracket of x and p is x p", baker_bracket(x, p) == PolySymbol::parse("x*p", h)));
  for (double hb : {0.5, 0.25, 0.125}) {
    const auto ax = PolySymbol::parse("x^3", hb), bp = PolySymbol::parse("p^3", hb);
    const Rational hh = exact_from_double(hb);
    const Rational norm = (moyal_bracket(ax, bp) - poisson_bracket(ax, bp)).coefficient_norm();
    out.push_back(check_exact("|MB - PB|(x^3, p^3) = 3/2 hbar^2 at hbar = " + moyal::to_string(hh),
                              norm == Rational(3, 2) * hh * hh, moyal::to_string(norm)));
  }
  const Grid g = Grid::self_dual(128, h);
  const auto xs = sample_windowed(x, g, unit), ps = sample_windowed(p, g, unit);
  const auto d = moyal_bracket_grid(xs, ps);
  out.push_back(check_at_most("Moyal bracket of x and p is one (grid route)",
                              central_gap(d, [](double, double) { return cplx(1, 0); }), 1e-6, scale));
  return out;
}

std::vector<Check> weyl_suite(double scale) {
  const std::size_t N = 64;
  const Grid g = Grid::self_dual(256, unit.hbar);
  const Wavefunction psi =
      superpose({{cplx(1, 0), gaussian_packet(g, -1.2, 0.4, 1.0, unit)}, {cplx(0.3, 0.5), gaussian_packet(g, 1.0, -0.6, 1.0, unit)}});
  const DensityOperator rho = density_from_wavefunction(psi, N);
  const auto chi = characteristic_function(wigner_transform(psi));
  const auto idx = faithful_indices(g, N);
  std::vector<PhasePoint> pts;
  for (auto [l, m] : idx) pts.push_back({chi.alpha(l), chi.beta(m)});
  const auto tr = char_via_trace(rho, pts);
  double chi_err = 0.0;
  for (std::size_t i = 0; i < idx.size(); ++i) chi_err = std::max(chi_err, std::abs(tr[i] - chi(idx[i].first, idx[i].second)));
  std::vector<Check> out{check_at_most("Tr[rho S] matches the Fourier transform of W", chi_err, 1e-5, scale)};
  for (const char* s : {"x", "p", "x^2 + p^2", "x*p"}) {
    const auto e = expectation_cross_check(PolySymbol::parse(s, unit.hbar), rho, g);
    out.push_back(check_at_most(std::string("<") + s + "> phase space vs trace", std::abs(e.phase_space - e.trace), 1e-5, scale));
  }
  out.push_back(check_at_most("pure state is idempotent", rho.idempotency_defect(), 1e-8, scale));
  return out;
}

double qhj_max(bool harmonic, std::size_t n, double dt) {
  const Grid g(n, -20.0, 20.0, unit.hbar);
  TimeSeries s;
  for (int k = -1; k <= 1; ++k) {
    const double t = 0.5 + k * dt;
    s.times.push_back(t);
    s.states.push_back(harmonic ? analytic::coherent(g, unit, 1.0, 1.5, -0.5, t)
                                : analytic::free_gaussian(g, unit, 0.8, -1.0, 1.2, t));
  }
  const auto V = harmonic ? Potential::harmonic(g, 1.0, unit) : Potential::free(g);
  return qhj_residual(s, V.values, unit).max_abs;
}

std::vector<Check> qhj_suite(double scale) {
  const double f1 = qhj_max(false, 512, 1e-3), f2 = qhj_max(false, 1024, 5e-4);
  const double h1 = qhj_max(true, 512, 1e-3), h2 = qhj_max(true, 1024, 5e-4);
  return {check_at_most("free Gaussian QHJ residual", f1, 1e-4, scale),
          check_at_most("coherent state QHJ residual", h1, 1e-4, scale),
          check_at_least("free Gaussian refinement gain", f1 / f2, 3.0, scale),
          check_at_least("coherent state refinement gain", h1 / h2, 3.0, scale)};
}

double max_diff(const Wavefunction& a, const Wavefunction& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

std::vector<Check> frft_suite(double scale) {
  const Grid g = Grid::self_dual(256, unit.hbar);
  std::mt19937_64 rng(9);
  const Wavefunction psi = random_superposition(g, rng).normalized();
  const Wavefunction g0 = gaussian_packet(g, 0.0, 0.0, 1.0, unit);
  return {check_at_most("F_0 is the identity", max_diff(frft(psi, 0.0), psi), 1e-10, scale),
          check_at_most("F_pi/2 equals the momentum transform", max_diff(frft(g0, pi / 2), to_momentum(g0)), 1e-8, scale),
          check_at_most("F_pi/6 F_pi/3 = F_pi/2", max_diff(frft(frft(psi, pi / 6), pi / 3), frft(psi, pi / 2)), 1e-7, scale),
          check_at_most("F_2pi is the identity", max_diff(frft(psi, 2 * pi), psi), 1e-7, scale),
          check_at_most("F_theta preserves the norm", std::abs(frft(psi, 0.7).norm_squared() - psi.norm_squared()), 1e-10,
                        scale)};
}

}  // namespace

std::vector<Check> clifford_items() {
  std::vector<Check> out;
  const Signature q{0, 2};
  const auto i = Multivector::parse("e1", q), j = Multivector::parse("e2", q), k = Multivector::parse("e1^e2", q);
  const auto m1 = Multivector::scalar(q, -1);
  out.push_back(check_exact("quaternions: i^2 = j^2 = k^2 = ijk = -1 in Cl(0,2)",
                            i * i == m1 && j * j == m1 && k * k == m1 && i * j * k == m1));
  const Signature st{1, 3};
  bool gamma = true;
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) {
      const auto ga = Multivector::generator(st, a), gb = Multivector::generator(st, b);
      const Rational eta = a != b ? 0 : (a == 1 ? 1 : -1);
      gamma = gamma && ga * gb + gb * ga == Multivector::scalar(st, 2 * eta);
    }
  out.push_back(check_exact("gamma anticommutation {g_a, g_b} = 2 eta_ab in Cl(1,3)", gamma));
  const Signature e3{3, 0};
  const auto e1 = Multivector::generator(e3, 1), e2 = Multivector::generator(e3, 2);
  out.push_back(check_exact("rotor 1 - e1^e2 maps e1 to e2", rotor_conjugate(Multivector::parse("1 - e1^e2", e3), e1) == e2));
  out.push_back(check_exact("Cl(3,0) multiplication table is associative", table_is_associative(generate_algebra(3, 0))));
  const LabelSet T(3);
  const auto c = arrow_compose(T.arrow(0, 1), T.arrow(1, 2));
  out.push_back(check_exact("[T0,T1] o [T1,T2] = [T0,T2]", c && *c == T.arrow(0, 2)));
  out.push_back(check_exact("[T0,T1] o [T2,T0] is undefined", !arrow_compose(T.arrow(0, 1), T.arrow(2, 0))));
  out.push_back(check_exact("arrow images compose in Cl(2,0)",
                            arrow_image(T.arrow(0, 1), 2) * arrow_image(T.arrow(1, 2), 2) == arrow_image(T.arrow(0, 2), 2)));
  const LabelSet T4(4);
  const auto a12 = arrow_image(T4.arrow(1, 2), 3), a23 = arrow_image(T4.arrow(2, 3), 3);
  out.push_back(check_exact("[T1,T2][T2,T3] + [T2,T3][T1,T2] = 0 in Cl(3,0)", (a12 * a23 + a23 * a12).is_zero()));
  const IdempotentSet eps({RationalMatrix(2, 2, {1, 0, 0, 0}), RationalMatrix(2, 2, {0, 0, 0, 1})});
  const auto ex = exploding_transform(RationalMatrix(2, 2, {1, 1, 1, -1}), eps);
  out.push_back(check_exact("exploded idempotents sum to the identity", IdempotentSet(ex.transformed).complete()));
  const Rational h(1, 2);
  out.push_back(check_exact("Hadamard mixing tensor is [[1/2,1/2],[1/2,1/2]]",
                            ex.mixing == RationalMatrix(2, 2, {h, h, h, h}), moyal::to_string(ex.mixing)));
  out.push_back(check_exact("exploded and original idempotents do not commute",
                            !commutator_witness(ex.transformed[0], eps.members()[0]).is_zero()));
  return out;
}

SuiteReport run_suite(std::string_view name, double tolerance_scale) {
  if (!(tolerance_scale > 0.0) || !std::isfinite(tolerance_scale))
    throw ValidationError("--tolerance-scale", "must be a positive number");
  SuiteReport r{std::string(name), tolerance_scale, {}};
  if (name == "marginals") r.items = marginals_suite(tolerance_scale);
  else if (name == "star-identities") r.items = star_suite(tolerance_scale);
  else if (name == "weyl-duality") r.items = weyl_suite(tolerance_scale);
  else if (name == "qhj") r.items = qhj_suite(tolerance_scale);
  else if (name == "frft-laws") r.items = frft_suite(tolerance_scale);
  else if (name == "clifford-identities") r.items = clifford_items();
  else {
    std::string known;
    for (const auto& s : suite_names()) known += (known.empty() ? "" : ", ") + s;
    throw ValidationError("suite", "unknown suite '" + std::string(name) + "' (" + known + ")");
  }
  return r;
}

std::string to_json_text(const SuiteReport& report) {
  nlohmann::json j;
  j["suite"] = report.suite;
  j["tolerance_scale"] = report.tolerance_scale;
  j["passed"] = report.passed();
  j["items"] = nlohmann::json::array();
  for (const auto& c : report.items) j["items"].push_back(to_json(c));
  return j.dump(2) + "\n";
}

}  // namespace moyal::app
