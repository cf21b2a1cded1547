#include "moyal/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "moyal/error.hpp"
#include "moyal/fft.hpp"

namespace moyal {

using std::numbers::pi;

Potential Potential::free(const Grid& grid) { return {Kind::free, 0.0, std::vector<double>(grid.n(), 0.0)}; }

Potential Potential::harmonic(const Grid& grid, double omega, const PhysicsConfig& config) {
  require(std::isfinite(omega) && omega > 0.0, ErrorCode::invalid_argument, "omega must be > 0");
  Potential V{Kind::harmonic, omega, std::vector<double>(grid.n())};
  for (std::size_t j = 0; j < grid.n(); ++j) {
    const double x = grid.x(j);
    V.values[j] = 0.5 * config.mass * omega * omega * x * x;
  }
  return V;
}

Potential Potential::tabulated(const Grid& grid, std::vector<double> values) {
  require(values.size() == grid.n(), ErrorCode::invalid_argument, "potential length must match grid");
  for (double v : values) require(std::isfinite(v), ErrorCode::invalid_argument, "potential must be finite");
  return {Kind::tabulated, 0.0, std::move(values)};
}

double edge_mass(const Wavefunction& wf) {
  const std::size_t n = wf.size();
  const std::size_t w = n / 16;
  double s = 0.0;
  for (std::size_t i = 0; i < w; ++i) s += std::norm(wf[i]) + std::norm(wf[n - 1 - i]);
  return s * wf.spacing();
}

double energy(const Wavefunction& wf, const Potential& V) {
  const auto phi = to_momentum(wf);
  const Grid& g = wf.grid();
  double kinetic = 0.0, potential = 0.0;
  for (std::size_t k = 0; k < g.n(); ++k) kinetic += std::norm(phi[k]) * g.p(k) * g.p(k);
  for (std::size_t j = 0; j < g.n(); ++j) potential += std::norm(wf[j]) * V.values[j];
  return kinetic * g.dp() / (2.0 * wf.config().mass) + potential * g.dx();
}

double max_stable_dt(const Grid& grid, const PhysicsConfig& config) {
  return 0.1 * config.mass * grid.dx() * grid.dx() / config.hbar;
}

TimeSeries split_step_evolve(const Wavefunction& wf0, const Potential& V, double dt, std::size_t steps,
                             std::size_t record_every) {
  require(wf0.domain().kind == Domain::Kind::position, ErrorCode::invalid_argument,
          "split_step_evolve expects a position-space wavefunction");
  const Grid& g = wf0.grid();
  const PhysicsConfig& cfg = wf0.config();
  require(V.values.size() == g.n(), ErrorCode::invalid_argument, "potential length must match grid");
  require(std::isfinite(dt) && dt > 0.0, ErrorCode::invalid_argument, "dt must be > 0");
  require(dt <= max_stable_dt(g, cfg) * (1.0 + 1e-12), ErrorCode::invalid_argument,
          "dt exceeds 0.1 m dx^2 / hbar");
  require(record_every >= 1, ErrorCode::invalid_argument, "record_every must be >= 1");
  require(edge_mass(wf0) <= edge_mass_limit, ErrorCode::boundary_contact, "initial state touches the boundary");

  const std::size_t n = g.n();
  const double h = cfg.hbar;
  std::vector<cplx> half_v(n), kinetic(n);
  for (std::size_t j = 0; j < n; ++j) half_v[j] = std::polar(1.0, -0.5 * V.values[j] * dt / h);
  for (std::size_t k = 0; k < n; ++k) kinetic[k] = std::polar(1.0, -g.p(k) * g.p(k) * dt / (2.0 * cfg.mass * h));
  const Fft fft(n);
  const double inv = 1.0 / static_cast<double>(n);

  TimeSeries out;
  out.times.push_back(0.0);
  out.states.push_back(wf0);
  std::vector<cplx> psi(wf0.amplitudes());
  for (std::size_t step = 1; step <= steps; ++step) {
    for (std::size_t j = 0; j < n; ++j) psi[j] *= (j % 2 ? -half_v[j] : half_v[j]);
    fft.forward(psi);
    for (std::size_t k = 0; k < n; ++k) psi[k] *= kinetic[k];
    fft.backward(psi);
    for (std::size_t j = 0; j < n; ++j) psi[j] *= (j % 2 ? -inv : inv) * half_v[j];
    double edge = 0.0;
    for (std::size_t i = 0; i < n / 16; ++i) edge += std::norm(psi[i]) + std::norm(psi[n - 1 - i]);
    require(edge * g.dx() <= edge_mass_limit, ErrorCode::boundary_contact,
            "wavefunction reached the grid boundary at step " + std::to_string(step));
    if (step % record_every == 0) {
      out.times.push_back(static_cast<double>(step) * dt);
      out.states.emplace_back(g, cfg, psi);
    }
  }
  return out;
}

Wavefunction two_slit_state(double separation, double sigma, double forward_momentum, const Grid& grid,
                            const PhysicsConfig& config) {
  require(std::isfinite(forward_momentum) && forward_momentum > 0.0, ErrorCode::invalid_argument,
          "forward momentum must be > 0");
  require(std::isfinite(separation) && separation >= 4.0 * sigma, ErrorCode::invalid_argument,
          "slit separation must be at least 4 sigma");
  const auto upper = gaussian_packet(grid, 0.5 * separation, 0.0, sigma, config);
  const auto lower = gaussian_packet(grid, -0.5 * separation, 0.0, sigma, config);
  return superpose({{cplx{1.0, 0.0}, lower}, {cplx{1.0, 0.0}, upper}});
}

namespace {

// Cumulative distribution on uniform coordinates. The density is treated as
// periodic and band-limited: its mean integrates to a ramp and the rest is
// integrated spectrally, so the CDF is accurate to round-off at the nodes.
struct Cdf {
  std::vector<double> coords;
  std::vector<double> values;   // normalized, nondecreasing
  std::vector<double> density;  // normalized, the exact slope at each node
};

Cdf cumulative(const std::vector<double>& coords, const std::vector<double>& density) {
  const std::size_t n = coords.size();
  require(n == density.size() && n >= 4 && n % 2 == 0, ErrorCode::invalid_argument,
          "density and coordinates must have equal even length >= 4");
  const double h = coords[1] - coords[0];
  require(h > 0.0, ErrorCode::invalid_argument, "coordinates must increase");
  double total = 0.0;
  for (double d : density) {
    require(std::isfinite(d) && d >= 0.0, ErrorCode::invalid_argument, "density must be finite and >= 0");
    total += d;
  }
  require(total > 0.0, ErrorCode::zero_vector, "density has no mass");
  std::vector<cplx> a(density.begin(), density.end());
  const Fft fft(n);
  fft.forward(a);
  const double mean = a[0].real() / static_cast<double>(n);
  const double k0 = 2.0 * std::numbers::pi / (h * static_cast<double>(n));
  a[0] = 0.0;
  a[n / 2] = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    if (k == n / 2) continue;
    const double kk = k < n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
    a[k] /= cplx{0.0, k0 * kk * static_cast<double>(n)};
  }
  fft.backward(a);
  Cdf c;
  c.coords = coords;
  c.values.resize(n);
  const double mass = mean * h * static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    c.values[i] = (mean * static_cast<double>(i) * h + a[i].real() - a[0].real()) / mass;
  for (std::size_t i = 1; i < n; ++i) c.values[i] = std::max(c.values[i], c.values[i - 1]);
  c.density.resize(n);
  for (std::size_t i = 0; i < n; ++i) c.density[i] = density[i] / mass;
  return c;
}

// Cubic Hermite value on segment i at fraction t, with the density as slope.
double hermite(const Cdf& c, std::size_t i, double t) {
  const double h = c.coords[1] - c.coords[0];
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * c.values[i] + (t3 - 2 * t2 + t) * h * c.density[i] +
         (-2 * t3 + 3 * t2) * c.values[i + 1] + (t3 - t2) * h * c.density[i + 1];
}

double invert(const Cdf& c, double u) {
  auto it = std::lower_bound(c.values.begin(), c.values.end(), u);
  if (it == c.values.begin()) return c.coords.front();
  if (it == c.values.end()) return c.coords.back();
  const std::size_t i = static_cast<std::size_t>(it - c.values.begin()) - 1;
  // bisection keeps the answer inside the bracketing segment even where the
  // cubic is not monotone
  double lo = 0.0, hi = 1.0;
  for (int k = 0; k < 60; ++k) {
    const double mid = 0.5 * (lo + hi);
    (hermite(c, i, mid) < u ? lo : hi) = mid;
  }
  return c.coords[i] + 0.5 * (lo + hi) * (c.coords[i + 1] - c.coords[i]);
}

double cdf_at(const Cdf& c, double x) {
  if (x <= c.coords.front()) return 0.0;
  if (x >= c.coords.back()) return 1.0;
  const double s = (x - c.coords.front()) / (c.coords[1] - c.coords[0]);
  const auto i = std::min(static_cast<std::size_t>(s), c.coords.size() - 2);
  return std::clamp(hermite(c, i, s - static_cast<double>(i)), 0.0, 1.0);
}

}  // namespace

std::vector<double> sample_from_density(const std::vector<double>& coords, const std::vector<double>& density,
                                        std::size_t count, std::uint64_t seed) {
  require(count > 0, ErrorCode::invalid_argument, "sample count must be positive");
  const auto cdf = cumulative(coords, density);
  std::mt19937_64 rng(seed);
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    // 53 random bits to [0,1); independent of the library's distribution code.
    const double r = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    out[i] = invert(cdf, (static_cast<double>(i) + r) / static_cast<double>(count));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> quantiles_of_density(const std::vector<double>& coords, const std::vector<double>& density,
                                         const std::vector<double>& levels) {
  const auto cdf = cumulative(coords, density);
  std::vector<double> out;
  for (double q : levels) {
    require(q > 0.0 && q < 1.0, ErrorCode::invalid_argument, "quantile levels must lie in (0, 1)");
    out.push_back(invert(cdf, q));
  }
  return out;
}

namespace {

struct Lookup {
  double value = 0.0;
  bool ok = false;
};

Lookup interpolate(const ScalarField& f, double x) {
  const double s = (x - f.origin) / f.spacing;
  const double fl = std::floor(s);
  if (!std::isfinite(s) || fl < 1.0 || fl + 2.0 > static_cast<double>(f.size() - 1)) return {};
  const auto j = static_cast<std::size_t>(fl);
  for (std::size_t k = j - 1; k <= j + 2; ++k)
    if (!f.valid[k]) return {};
  const double t = s - fl;
  const double y0 = f.values[j - 1], y1 = f.values[j], y2 = f.values[j + 1], y3 = f.values[j + 2];
  // Lagrange weights on nodes -1, 0, 1, 2
  const double w0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
  const double w1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  const double w2 = -(t + 1.0) * t * (t - 2.0) / 2.0;
  const double w3 = (t + 1.0) * t * (t - 1.0) / 6.0;
  return {w0 * y0 + w1 * y1 + w2 * y2 + w3 * y3, true};
}

}  // namespace

TrajectoryEnsemble integrate_paths(const std::vector<double>& times, const std::vector<ScalarField>& velocity,
                                   std::vector<double> x0) {
  require(times.size() == velocity.size() && times.size() >= 3, ErrorCode::invalid_argument,
          "trajectory integration needs at least three field slices");
  require(!x0.empty(), ErrorCode::invalid_argument, "no initial positions");
  std::sort(x0.begin(), x0.end());
  double scale = 0.0;
  for (const auto& f : velocity) scale = std::max(scale, f.max_abs());
  const double limit = undersample_limit * std::max(scale, 1e-300);

  TrajectoryEnsemble ens;
  const std::size_t steps = (times.size() - 1) / 2;
  for (std::size_t s = 0; s <= steps; ++s) ens.times.push_back(times[2 * s]);
  ens.paths.assign(x0.size(), std::vector<double>(ens.times.size(), 0.0));
  ens.flagged.assign(x0.size(), 0);
  ens.flagged_at.assign(x0.size(), ens.times.size());

  for (std::size_t i = 0; i < x0.size(); ++i) {
    auto& path = ens.paths[i];
    path[0] = x0[i];
    auto flag = [&](std::size_t at) {
      ens.flagged[i] = 1;
      ens.flagged_at[i] = at;
      for (std::size_t t = at; t < path.size(); ++t) path[t] = path[at];
    };
    if (!interpolate(velocity[0], x0[i]).ok) {
      flag(0);
      continue;
    }
    for (std::size_t s = 0; s < steps; ++s) {
      const std::size_t a = 2 * s, m = a + 1, b = a + 2;
      const double h = times[b] - times[a];
      const double x = path[s];
      const Lookup k1 = interpolate(velocity[a], x);
      const Lookup k2 = interpolate(velocity[m], x + 0.5 * h * k1.value);
      const Lookup k3 = k2.ok ? interpolate(velocity[m], x + 0.5 * h * k2.value) : Lookup{};
      const Lookup k4 = k3.ok ? interpolate(velocity[b], x + h * k3.value) : Lookup{};
      if (!(k1.ok && k2.ok && k3.ok && k4.ok)) {
        flag(s);
        break;
      }
      const Lookup km = interpolate(velocity[m], x);
      const Lookup kb = interpolate(velocity[b], x);
      if (km.ok && kb.ok)
        require(std::abs(km.value - k1.value) <= limit && std::abs(kb.value - km.value) <= limit,
                ErrorCode::field_undersampled, "velocity field changes too much between slices");
      path[s + 1] = x + h * (k1.value + 2.0 * k2.value + 2.0 * k3.value + k4.value) / 6.0;
    }
  }
  ens.sampling = "explicit";
  return ens;
}

std::vector<ScalarField> guidance_velocities(const TimeSeries& series) {
  std::vector<ScalarField> out;
  out.reserve(series.size());
  for (const auto& wf : series.states) {
    const ConditionalField p = conditional_momentum(wf, -1.0, false);
    ScalarField v{p.origin, p.spacing, p.values, p.valid};
    for (auto& x : v.values) x /= wf.config().mass;
    out.push_back(std::move(v));
  }
  return out;
}

TrajectoryEnsemble integrate_trajectories(const TimeSeries& series, std::vector<double> x0) {
  return integrate_paths(series.times, guidance_velocities(series), std::move(x0));
}

double min_adjacent_gap(const TrajectoryEnsemble& ensemble) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < ensemble.size(); ++i)
    for (std::size_t t = 0; t < ensemble.times.size(); ++t)
      gap = std::min(gap, ensemble.paths[i + 1][t] - ensemble.paths[i][t]);
  return gap;
}

double transported_density_check(const TrajectoryEnsemble& ensemble, const TimeSeries& series, double t_final,
                                 std::size_t bins) {
  require(ensemble.size() >= 100, ErrorCode::too_few_paths, "density check needs at least 100 paths");
  require(bins >= 2, ErrorCode::invalid_argument, "need at least two bins");
  auto near = [t_final](double t) { return std::abs(t - t_final) <= 1e-9 * std::max(1.0, std::abs(t_final)); };
  const auto ti = std::find_if(ensemble.times.begin(), ensemble.times.end(), near);
  const auto si = std::find_if(series.times.begin(), series.times.end(), near);
  require(ti != ensemble.times.end() && si != series.times.end(), ErrorCode::invalid_argument,
          "t_final is not a recorded time of both ensemble and series");
  const auto t_idx = static_cast<std::size_t>(ti - ensemble.times.begin());
  const Wavefunction& wf = series.states[static_cast<std::size_t>(si - series.times.begin())];
  const auto coords = wf.coordinates();
  const auto cdf = cumulative(coords, wf.density());
  const double lo = invert(cdf, 1e-4), hi = invert(cdf, 1.0 - 1e-4);
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<double> hist(bins, 0.0), model(bins, 0.0);
  for (const auto& path : ensemble.paths) {
    const double x = path[t_idx];
    if (x < lo || x >= hi) continue;
    hist[std::min(bins - 1, static_cast<std::size_t>((x - lo) / width))] += 1.0;
  }
  for (auto& h : hist) h /= static_cast<double>(ensemble.size());
  for (std::size_t b = 0; b < bins; ++b)
    model[b] = cdf_at(cdf, lo + width * static_cast<double>(b + 1)) -
               cdf_at(cdf, lo + width * static_cast<double>(b));
  double tv = 0.0;
  for (std::size_t b = 0; b < bins; ++b) tv += std::abs(hist[b] - model[b]);
  // Mass outside [lo, hi) on either side is counted once per side.
  double outside_paths = 0.0;
  for (const auto& path : ensemble.paths)
    if (path[t_idx] < lo || path[t_idx] >= hi) outside_paths += 1.0;
  tv += std::abs(outside_paths / static_cast<double>(ensemble.size()) - 2e-4);
  return 0.5 * tv;
}

}  // namespace moyal
