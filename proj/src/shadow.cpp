#include "moyal/shadow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "moyal/error.hpp"

namespace moyal {

using std::numbers::pi;

namespace {

double reduce_angle(double theta) {
  double t = std::remainder(theta, 2.0 * pi);  // in [-pi, pi]
  if (t <= -pi) t += 2.0 * pi;
  return t;
}

void check_support(const Wavefunction& wf) {
  const Grid& g = wf.grid();
  const double reach = 0.5 * std::min({-g.x_min(), g.x_max(), g.p_max()});
  require(reach > 0.0, ErrorCode::support, "fractional transform needs a grid containing the origin");
  const auto phi = to_momentum(Wavefunction(g, wf.config(), wf.amplitudes()));
  double tail_x = 0.0, tail_p = 0.0;
  for (std::size_t i = 0; i < g.n(); ++i) {
    if (std::abs(g.x(i)) > reach) tail_x += std::norm(wf[i]);
    if (std::abs(g.p(i)) > reach) tail_p += std::norm(phi[i]);
  }
  const double total = wf.norm_squared();
  require(tail_x * g.dx() <= frft_tail_limit * total && tail_p * g.dp() <= frft_tail_limit * total,
          ErrorCode::support, "state extends too close to the grid edge for the fractional transform");
}

// One factorized step, |theta| <= pi/2.
std::vector<cplx> rotate(const Grid& g, const PhysicsConfig& cfg, std::vector<cplx> a, double theta) {
  const double h = cfg.hbar;
  const double c = std::tan(0.5 * theta);
  const double b = std::sin(theta);
  const std::size_t n = g.n();
  for (std::size_t j = 0; j < n; ++j) a[j] *= std::polar(1.0, -c * g.x(j) * g.x(j) / (2.0 * h));
  Wavefunction tmp(g, cfg, std::move(a));
  Wavefunction phi = to_momentum(tmp);
  std::vector<cplx> pa(phi.amplitudes());
  for (std::size_t k = 0; k < n; ++k) pa[k] *= std::polar(1.0, -b * g.p(k) * g.p(k) / (2.0 * h));
  std::vector<cplx> out = from_momentum(Wavefunction(g, cfg, std::move(pa), Domain::momentum())).amplitudes();
  const cplx global = std::polar(1.0, 0.5 * theta);
  for (std::size_t j = 0; j < n; ++j) out[j] *= global * std::polar(1.0, -c * g.x(j) * g.x(j) / (2.0 * h));
  return out;
}

}  // namespace

Wavefunction frft(const Wavefunction& wf, double theta) {
  require(std::isfinite(theta), ErrorCode::invalid_argument, "theta must be finite");
  double base = 0.0;
  switch (wf.domain().kind) {
    case Domain::Kind::position: break;
    case Domain::Kind::fractional: base = wf.domain().theta; break;
    case Domain::Kind::momentum:
      fail(ErrorCode::invalid_argument, "frft expects a position or fractional-domain wavefunction");
  }
  const double t = reduce_angle(theta);
  if (t == 0.0) return wf;
  check_support(wf);
  std::vector<cplx> a(wf.amplitudes());
  if (std::abs(t) > 0.5 * pi) {
    a = rotate(wf.grid(), wf.config(), std::move(a), 0.5 * t);
    a = rotate(wf.grid(), wf.config(), std::move(a), 0.5 * t);
  } else {
    a = rotate(wf.grid(), wf.config(), std::move(a), t);
  }
  double total = reduce_angle(base + t);
  if (total < 0.0) total += 2.0 * pi;
  const Domain d = total == 0.0 ? Domain::position() : Domain::fractional(total);
  return {wf.grid(), wf.config(), std::move(a), d};
}

ConditionalField shadow_field(const Wavefunction& wf, double theta, double density_floor, std::size_t refine) {
  require(wf.domain().kind == Domain::Kind::position, ErrorCode::invalid_argument,
          "shadow_field expects a position-space wavefunction");
  const Wavefunction rotated = frft(wf, theta);
  ConditionalField f = phase_gradient(polar_decompose(rotated, density_floor, refine), 1.0, {});
  f.domain = Domain::fractional(theta);
  return f;
}

ScalarField shadow_velocity(const ConditionalField& field, double theta, double omega,
                            const PhysicsConfig& config) {
  const double c = std::cos(theta), s = std::sin(theta);
  const double m = config.mass;
  ScalarField out{field.origin, field.spacing, std::vector<double>(field.size(), 0.0), field.valid};
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (!field.valid[i]) continue;
    const double u = field.coordinate(i), v = field.values[i];
    out.values[i] = c * (u * s + v * c) / m - m * omega * omega * s * (u * c - v * s);
  }
  return out;
}

namespace {

struct DomainFlow {
  std::vector<ScalarField> velocity;
  std::vector<double> mean, stdev;
  std::vector<double> u0;
};

// dS/du in spectral form, hbar Im(psi* psi') / |psi|^2. Streamlines cross
// fringes where the stencil route masks itself out; this form only needs the
// density floor.
ConditionalField spectral_field(const Wavefunction& rotated, double theta) {
  const Grid& g = rotated.grid();
  ConditionalField f;
  f.domain = Domain::fractional(theta);
  f.origin = g.x_min();
  f.spacing = g.dx();
  f.density = rotated.density();
  const double floor = default_floor_ratio * *std::max_element(f.density.begin(), f.density.end());
  const auto d = spectral_derivative(rotated.amplitudes(), g.length());
  f.values.assign(g.n(), 0.0);
  f.valid.assign(g.n(), 0);
  for (std::size_t j = 0; j < g.n(); ++j) {
    if (f.density[j] < floor) continue;
    f.valid[j] = 1;
    f.values[j] = rotated.config().hbar * (std::conj(rotated[j]) * d[j]).imag() / f.density[j];
  }
  return f;
}

DomainFlow build_flow(const TimeSeries& series, double theta, double omega, const std::vector<double>& levels) {
  DomainFlow flow;
  for (std::size_t s = 0; s < series.size(); ++s) {
    const Wavefunction& wf = series.states[s];
    const Wavefunction rotated = frft(wf, theta);
    const ConditionalField f = spectral_field(rotated, theta);
    flow.velocity.push_back(shadow_velocity(f, theta, omega, wf.config()));
    flow.mean.push_back(rotated.mean_coordinate());
    flow.stdev.push_back(std::sqrt(rotated.variance_coordinate()));
    if (s == 0) flow.u0 = quantiles_of_density(rotated.coordinates(), rotated.density(), levels);
  }
  return flow;
}

}  // namespace

DivergenceReport streamline_divergence(const TimeSeries& series, const Potential& V, double theta1,
                                       double theta2, const std::vector<double>& levels) {
  require(V.kind != Potential::Kind::tabulated, ErrorCode::invalid_argument,
          "shadow streamlines need free or harmonic evolution");
  require(!levels.empty() && std::is_sorted(levels.begin(), levels.end()), ErrorCode::invalid_argument,
          "quantile levels must be non-empty and ascending");
  const double omega = V.kind == Potential::Kind::harmonic ? V.omega : 0.0;
  DivergenceReport rep;
  rep.theta1 = theta1;
  rep.theta2 = theta2;
  rep.levels = levels;
  const DomainFlow f1 = build_flow(series, theta1, omega, levels);
  const DomainFlow f2 = build_flow(series, theta2, omega, levels);
  rep.paths1 = integrate_paths(series.times, f1.velocity, f1.u0);
  rep.paths2 = integrate_paths(series.times, f2.velocity, f2.u0);
  for (std::size_t i = 0; i < levels.size(); ++i)
    require(!rep.paths1.flagged[i] && !rep.paths2.flagged[i], ErrorCode::chart_incompatibility,
            "a streamline left the valid region of its domain");
  rep.times = rep.paths1.times;
  auto chart = [](const DomainFlow& f, const TrajectoryEnsemble& e) {
    std::vector<std::vector<double>> z(e.size(), std::vector<double>(e.times.size()));
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t t = 0; t < e.times.size(); ++t)
        z[i][t] = (e.paths[i][t] - f.mean[2 * t]) / f.stdev[2 * t];
    return z;
  };
  // quantile levels are sorted by integrate_paths together with positions, which
  // keeps labels aligned because inverse CDFs are monotone
  rep.z1 = chart(f1, rep.paths1);
  rep.z2 = chart(f2, rep.paths2);
  for (std::size_t i = 0; i < rep.z1.size(); ++i)
    for (std::size_t t = 0; t < rep.times.size(); ++t)
      rep.divergence = std::max(rep.divergence, std::abs(rep.z1[i][t] - rep.z2[i][t]));
  return rep;
}

}  // namespace moyal
