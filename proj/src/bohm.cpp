#include "moyal/bohm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "moyal/error.hpp"
#include "moyal/finite_difference.hpp"
#include "moyal/wigner.hpp"

namespace moyal {

using std::numbers::pi;

double ScalarField::max_abs() const {
  double m = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (valid[i]) m = std::max(m, std::abs(values[i]));
  return m;
}

std::vector<cplx> spectral_derivative(const std::vector<cplx>& f, double period) {
  const std::size_t n = f.size();
  std::vector<cplx> a(f);
  const Fft fft(n);
  fft.forward(a);
  const double k0 = 2.0 * pi / period;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == n / 2) {
      a[k] = 0.0;
      continue;
    }
    const double kk = k < n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
    a[k] *= cplx{0.0, k0 * kk / static_cast<double>(n)};
  }
  fft.backward(a);
  return a;
}

namespace {

double resolve_floor(const std::vector<double>& density, double floor) {
  if (floor > 0.0) return floor;
  return default_floor_ratio * *std::max_element(density.begin(), density.end());
}

}  // namespace

ConditionalField conditional_momentum(const Wavefunction& wf, double density_floor, bool cross_check) {
  require(wf.domain().kind == Domain::Kind::position, ErrorCode::invalid_argument,
          "conditional_momentum expects a position-space wavefunction");
  const Grid& g = wf.grid();
  const std::size_t n = g.n();
  const double h = wf.config().hbar;
  ConditionalField out;
  out.domain = Domain::position();
  out.origin = g.x_min();
  out.spacing = g.dx();
  out.density = wf.density();
  const double floor = resolve_floor(out.density, density_floor);
  out.values.assign(n, 0.0);
  out.valid.assign(n, 0);
  const auto d = spectral_derivative(wf.amplitudes(), g.length());
  bool any = false;
  for (std::size_t j = 0; j < n; ++j) {
    if (out.density[j] < floor) continue;
    any = true;
    out.valid[j] = 1;
    out.values[j] = h * (std::conj(wf[j]) * d[j]).imag() / out.density[j];
  }
  require(any, ErrorCode::all_below_floor, "no sample reaches the density floor");
  if (!cross_check) return out;
  const auto W = wigner_transform(wf);
  double gap = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (!out.valid[j]) continue;
    double moment = 0.0;
    for (std::size_t k = 0; k < n; ++k) moment += g.p(k) * W(j, k);
    moment *= g.dp() / out.density[j];
    gap = std::max(gap, std::abs(moment - out.values[j]));
  }
  out.route_gap = gap;
  return out;
}

ConditionalField phase_gradient(const PolarFields& polar, double sign, const PhaseGradientOptions& opts) {
  const std::size_t m = polar.size();
  const std::size_t r = polar.refine;
  // Unresolved-curvature flags on the refined samples.
  std::vector<std::uint8_t> rough(m, 0);
  for (std::size_t i = 1; i + 1 < m; ++i) {
    if (!(polar.valid[i - 1] && polar.valid[i] && polar.valid[i + 1])) continue;
    const double d2 = polar.phase[i + 1] - 2.0 * polar.phase[i] + polar.phase[i - 1];
    if (std::abs(d2) > opts.curvature_limit * polar.hbar) rough[i] = 1;
  }
  const Derivative d = differentiate(polar.phase, polar.spacing, 1, polar.valid, opts.accuracy);
  const std::size_t n = m / r;
  ConditionalField out;
  out.domain = polar.domain;
  out.origin = polar.origin;
  out.spacing = polar.spacing * static_cast<double>(r);
  out.values.assign(n, 0.0);
  out.density.assign(n, 0.0);
  out.valid.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i = j * r;
    out.density[j] = polar.amplitude[i] * polar.amplitude[i];
    // interior only: the full-accuracy stencil must fit inside the run
    if (!d.valid[i] || d.order[i] < opts.accuracy) continue;
    const std::size_t rad = static_cast<std::size_t>(d.order[i] / 2);
    bool ok = true;
    for (std::size_t k = i - rad; k <= i + rad; ++k) ok = ok && !rough[k];
    if (!ok) continue;
    out.valid[j] = 1;
    out.values[j] = sign * d.values[i];
  }
  bool enough = false;
  for (const auto& [b, e] : mask_runs(out.valid)) enough = enough || e - b >= 5;
  require(enough, ErrorCode::mask_too_fragmented, "no valid run with at least 5 points");
  return out;
}

ConditionalField guidance_from_phase(const PolarFields& polar, const PhaseGradientOptions& opts) {
  return phase_gradient(polar, 1.0, opts);
}

ConditionalField conditional_position(const Wavefunction& phi, double density_floor, std::size_t refine,
                                      const PhaseGradientOptions& opts) {
  require(phi.domain().kind == Domain::Kind::momentum, ErrorCode::invalid_argument,
          "conditional_position expects a momentum-space wavefunction");
  const PolarFields polar = polar_decompose(phi, density_floor, refine);
  ConditionalField out = phase_gradient(polar, -1.0, opts);
  // Second route: x-moment of the Wigner function at fixed p.
  const Grid& g = phi.grid();
  const std::size_t n = g.n();
  const auto W = wigner_transform(from_momentum(phi));
  double gap = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (!out.valid[k]) continue;
    double moment = 0.0;
    for (std::size_t j = 0; j < n; ++j) moment += g.x(j) * W(j, k);
    moment *= g.dx() / std::norm(phi[k]);
    gap = std::max(gap, std::abs(moment - out.values[k]));
  }
  out.route_gap = gap;
  return out;
}

ScalarField quantum_potential(const PolarFields& polar, const PhysicsConfig& config) {
  config.validate();
  const Derivative d2 = differentiate(polar.amplitude, polar.spacing, 2, polar.valid);
  ScalarField out;
  out.origin = polar.origin;
  out.spacing = polar.spacing;
  out.values.assign(polar.size(), 0.0);
  out.valid.assign(polar.size(), 0);
  const double c = -config.hbar * config.hbar / (2.0 * config.mass);
  for (std::size_t i = 0; i < polar.size(); ++i) {
    if (!d2.valid[i] || polar.amplitude[i] <= 0.0) continue;
    out.values[i] = c * d2.values[i] / polar.amplitude[i];
    out.valid[i] = 1;
  }
  return out;
}

QhjResult qhj_residual(const TimeSeries& series, const std::vector<double>& potential,
                       const PhysicsConfig& config, double density_floor) {
  config.validate();
  require(series.size() >= 3 && series.times.size() == series.size(), ErrorCode::invalid_argument,
          "QHJ residual needs at least three time slices");
  const double dt = series.times[1] - series.times[0];
  require(dt > 0.0, ErrorCode::invalid_argument, "time slices must increase");
  for (std::size_t i = 1; i < series.size(); ++i)
    require(std::abs((series.times[i] - series.times[i - 1]) - dt) <= 1e-9 * std::max(1.0, dt * 1e3),
            ErrorCode::invalid_argument, "QHJ residual needs uniformly spaced slices");
  const Grid& g = series.states.front().grid();
  require(potential.size() == g.n(), ErrorCode::invalid_argument, "potential length must match grid");
  const double h = config.hbar;
  QhjResult result;
  for (std::size_t s = 1; s + 1 < series.size(); ++s) {
    const Wavefunction& prev = series.states[s - 1];
    const Wavefunction& cur = series.states[s];
    const Wavefunction& next = series.states[s + 1];
    require(prev.grid() == g && cur.grid() == g && next.grid() == g, ErrorCode::grid_mismatch,
            "all slices must share one grid");
    // R and S on a band-limited refined grid keep the stencil error far below
    // the time-difference error; results are reported on the original samples.
    const PolarFields polar = polar_decompose(cur, density_floor, default_refine);
    const std::size_t r = polar.refine;
    const Derivative grad = differentiate(polar.phase, polar.spacing, 1, polar.valid);
    const ScalarField Q = quantum_potential(polar, config);
    double peak = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j) peak = std::max(peak, std::norm(cur[j]));
    const double floor = density_floor > 0.0 ? density_floor : default_floor_ratio * peak;
    ScalarField res;
    res.origin = g.x_min();
    res.spacing = g.dx();
    res.values.assign(g.n(), 0.0);
    res.valid.assign(g.n(), 0);
    double last_plus = 0.0, last_minus = 0.0;
    bool have_last = false;
    for (std::size_t j = 0; j < g.n(); ++j) {
      const std::size_t i = j * r;
      const bool ok = grad.valid[i] && grad.order[i] == 8 && Q.valid[i] && std::norm(cur[j]) >= floor && std::norm(prev[j]) >= floor &&
                      std::norm(next[j]) >= floor;
      if (!ok) {
        have_last = false;
        continue;
      }
      const double plus = std::arg(next[j] * std::conj(cur[j]));
      const double minus = std::arg(prev[j] * std::conj(cur[j]));
      if (have_last)
        require(std::abs(plus - last_plus) < pi && std::abs(minus - last_minus) < pi,
                ErrorCode::unwrap_discontinuity, "inter-slice phase jumps by more than pi");
      last_plus = plus;
      last_minus = minus;
      have_last = true;
      const double dSdt = h * (plus - minus) / (2.0 * dt);
      const double v = grad.values[i];
      res.values[j] = dSdt + v * v / (2.0 * config.mass) + potential[j] + Q.values[i];
      res.valid[j] = 1;
    }
    result.max_abs = std::max(result.max_abs, res.max_abs());
    result.times.push_back(series.times[s]);
    result.residuals.push_back(std::move(res));
  }
  return result;
}

ScalarField continuity_residual(const TimeSeries& series, std::size_t slice) {
  require(slice >= 1 && slice + 1 < series.size(), ErrorCode::invalid_argument,
          "continuity residual needs an interior slice");
  const Wavefunction& cur = series.states[slice];
  const Grid& g = cur.grid();
  const double dt2 = series.times[slice + 1] - series.times[slice - 1];
  const auto dpsi = spectral_derivative(cur.amplitudes(), g.length());
  std::vector<cplx> flux(g.n());
  for (std::size_t j = 0; j < g.n(); ++j)
    flux[j] = cur.config().hbar * (std::conj(cur[j]) * dpsi[j]).imag() / cur.config().mass;
  const auto dflux = spectral_derivative(flux, g.length());
  ScalarField out;
  out.origin = g.x_min();
  out.spacing = g.dx();
  out.values.resize(g.n());
  out.valid.assign(g.n(), 1);
  for (std::size_t j = 0; j < g.n(); ++j) {
    const double drho = (std::norm(series.states[slice + 1][j]) - std::norm(series.states[slice - 1][j])) / dt2;
    out.values[j] = drho + dflux[j].real();
  }
  return out;
}

}  // namespace moyal
