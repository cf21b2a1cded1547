#include "moyal/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "moyal/error.hpp"

namespace moyal {

using std::numbers::pi;

void PhysicsConfig::validate() const {
  require(std::isfinite(hbar) && hbar > 0.0, ErrorCode::invalid_argument, "hbar must be > 0");
  require(std::isfinite(mass) && mass > 0.0, ErrorCode::invalid_argument, "mass must be > 0");
}

Grid::Grid(std::size_t n, double x_min, double x_max, double hbar)
    : n_(n), x_min_(x_min), x_max_(x_max), hbar_(hbar) {
  require(n >= 8 && is_power_of_two(n), ErrorCode::invalid_argument,
          "grid size must be a power of two >= 8");
  require(std::isfinite(x_min) && std::isfinite(x_max) && x_max > x_min,
          ErrorCode::invalid_argument, "grid needs x_min < x_max");
  require(std::isfinite(hbar) && hbar > 0.0, ErrorCode::invalid_argument, "hbar must be > 0");
  dx_ = (x_max - x_min) / static_cast<double>(n);
  dp_ = 2.0 * pi * hbar / (static_cast<double>(n) * dx_);
}

Grid Grid::self_dual(std::size_t n, double hbar) {
  const double half = 0.5 * std::sqrt(2.0 * pi * hbar * static_cast<double>(n));
  return Grid(n, -half, half, hbar);
}

std::vector<double> Grid::positions() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = x(j);
  return out;
}

std::vector<double> Grid::momenta() const {
  std::vector<double> out(n_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = p(k);
  return out;
}

bool Grid::operator==(const Grid& o) const noexcept {
  return n_ == o.n_ && x_min_ == o.x_min_ && x_max_ == o.x_max_ && hbar_ == o.hbar_;
}

Wavefunction::Wavefunction(Grid grid, PhysicsConfig config, std::vector<cplx> amplitudes,
                           Domain domain)
    : grid_(std::move(grid)), config_(config), amp_(std::move(amplitudes)), domain_(domain) {
  config_.validate();
  require(grid_.hbar() == config_.hbar, ErrorCode::grid_mismatch,
          "grid and physics config disagree on hbar");
  require(amp_.size() == grid_.n(), ErrorCode::invalid_argument,
          "amplitude count must equal grid size");
  for (const auto& a : amp_)
    require(std::isfinite(a.real()) && std::isfinite(a.imag()), ErrorCode::invalid_argument,
            "non-finite amplitude");
}

double Wavefunction::spacing() const noexcept {
  return domain_.kind == Domain::Kind::momentum ? grid_.dp() : grid_.dx();
}

double Wavefunction::coordinate(std::size_t i) const noexcept {
  return domain_.kind == Domain::Kind::momentum ? grid_.p(i) : grid_.x(i);
}

std::vector<double> Wavefunction::coordinates() const {
  return domain_.kind == Domain::Kind::momentum ? grid_.momenta() : grid_.positions();
}

std::vector<double> Wavefunction::density() const {
  std::vector<double> out(amp_.size());
  std::transform(amp_.begin(), amp_.end(), out.begin(), [](cplx a) { return std::norm(a); });
  return out;
}

double Wavefunction::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amp_) s += std::norm(a);
  return s * spacing();
}

Wavefunction Wavefunction::normalized() const {
  const double n2 = norm_squared();
  require(n2 > 1e-28, ErrorCode::zero_vector, "cannot normalize a zero wavefunction");
  const double scale = 1.0 / std::sqrt(n2);
  std::vector<cplx> out(amp_);
  for (auto& a : out) a *= scale;
  return {grid_, config_, std::move(out), domain_};
}

cplx Wavefunction::inner(const Wavefunction& other) const {
  require(grid_ == other.grid_ && domain_ == other.domain_, ErrorCode::grid_mismatch,
          "inner product needs matching grids and domains");
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < amp_.size(); ++i) s += std::conj(amp_[i]) * other.amp_[i];
  return s * spacing();
}

double Wavefunction::mean_coordinate() const {
  double s = 0.0, w = 0.0;
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    const double d = std::norm(amp_[i]);
    s += d * coordinate(i);
    w += d;
  }
  return s / w;
}

double Wavefunction::variance_coordinate() const {
  const double mu = mean_coordinate();
  double s = 0.0, w = 0.0;
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    const double d = std::norm(amp_[i]);
    const double u = coordinate(i) - mu;
    s += d * u * u;
    w += d;
  }
  return s / w;
}

namespace {

constexpr double tail_threshold = 1e-12;

}  // namespace

Wavefunction gaussian_packet(const Grid& grid, double x0, double p0, double sigma,
                             const PhysicsConfig& config) {
  config.validate();
  require(std::isfinite(x0) && std::isfinite(p0), ErrorCode::invalid_argument,
          "packet center must be finite");
  require(std::isfinite(sigma) && sigma > 0.0, ErrorCode::invalid_argument, "sigma must be > 0");
  require(sigma >= 3.0 * grid.dx(), ErrorCode::grid_too_coarse,
          "sigma must be at least 3*dx");
  const double h = config.hbar;
  const double norm = std::pow(pi * sigma * sigma, -0.25);
  auto density_at = [&](double x) {
    const double u = (x - x0) / sigma;
    return norm * norm * std::exp(-u * u);
  };
  // Periodic grid: the last sample neighbours x_max == x_min + L.
  const double edge = std::max({density_at(grid.x_min()), density_at(grid.x(grid.n() - 1)),
                                density_at(grid.x_max())});
  require(edge < tail_threshold, ErrorCode::support_overflow,
          "packet tails reach the grid boundary");
  // Momentum density is a Gaussian of width hbar/sigma centered at p0.
  const double sp = h / sigma;
  const double pn = 1.0 / (std::sqrt(pi) * sp);
  auto p_density = [&](double p) {
    const double u = (p - p0) / sp;
    return pn * std::exp(-u * u);
  };
  require(std::max(p_density(-grid.p_max()), p_density(grid.p_max())) < tail_threshold,
          ErrorCode::support_overflow, "packet momentum tails reach the dual grid edge");

  std::vector<cplx> amp(grid.n());
  for (std::size_t j = 0; j < grid.n(); ++j) {
    const double x = grid.x(j);
    const double u = (x - x0) / sigma;
    amp[j] = norm * std::exp(-0.5 * u * u) * std::polar(1.0, p0 * x / h);
  }
  return Wavefunction(grid, config, std::move(amp)).normalized();
}

Wavefunction superpose(const std::vector<std::pair<cplx, Wavefunction>>& terms) {
  require(!terms.empty(), ErrorCode::invalid_argument, "superpose needs at least one term");
  const auto& first = terms.front().second;
  std::vector<cplx> amp(first.size(), cplx{0.0, 0.0});
  for (const auto& [c, wf] : terms) {
    require(wf.grid() == first.grid() && wf.config() == first.config() &&
                wf.domain() == first.domain(),
            ErrorCode::grid_mismatch, "superposed terms must share grid, config and domain");
    for (std::size_t i = 0; i < amp.size(); ++i) amp[i] += c * wf[i];
  }
  Wavefunction sum(first.grid(), first.config(), std::move(amp), first.domain());
  require(sum.norm_squared() >= 1e-14, ErrorCode::zero_vector, "superposition cancels to zero");
  return sum.normalized();
}

// With x_j = x_min + j dx and p_k = (k - n/2) dp, the kernel factorizes as
//   exp(-i p_k x_j / hbar) = exp(-i p_k x_min / hbar) * (-1)^j * exp(-2 pi i jk / n).
Wavefunction to_momentum(const Wavefunction& wf) {
  require(wf.domain().kind == Domain::Kind::position, ErrorCode::invalid_argument,
          "to_momentum expects a position-space wavefunction");
  const Grid& g = wf.grid();
  const std::size_t n = g.n();
  const double h = wf.config().hbar;
  std::vector<cplx> a(wf.amplitudes());
  for (std::size_t j = 1; j < n; j += 2) a[j] = -a[j];
  Fft(n).forward(a);
  const double scale = g.dx() / std::sqrt(2.0 * pi * h);
  for (std::size_t k = 0; k < n; ++k) a[k] *= scale * std::polar(1.0, -g.p(k) * g.x_min() / h);
  return {g, wf.config(), std::move(a), Domain::momentum()};
}

Wavefunction from_momentum(const Wavefunction& phi) {
  require(phi.domain().kind == Domain::Kind::momentum, ErrorCode::invalid_argument,
          "from_momentum expects a momentum-space wavefunction");
  const Grid& g = phi.grid();
  const std::size_t n = g.n();
  const double h = phi.config().hbar;
  std::vector<cplx> a(phi.amplitudes());
  for (std::size_t k = 0; k < n; ++k) a[k] *= std::polar(1.0, g.p(k) * g.x_min() / h);
  Fft(n).backward(a);
  const double scale = g.dp() / std::sqrt(2.0 * pi * h);
  for (std::size_t j = 0; j < n; ++j) a[j] *= (j % 2 ? -scale : scale);
  return {g, phi.config(), std::move(a), Domain::position()};
}

std::vector<std::pair<std::size_t, std::size_t>> mask_runs(const std::vector<std::uint8_t>& mask) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  std::size_t i = 0;
  while (i < mask.size()) {
    if (!mask[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < mask.size() && mask[j]) ++j;
    runs.emplace_back(i, j);
    i = j;
  }
  return runs;
}

PolarFields polar_decompose(const Wavefunction& wf, double density_floor, std::size_t refine) {
  require(refine >= 1 && is_power_of_two(refine), ErrorCode::invalid_argument,
          "refine must be a power of two");
  std::vector<cplx> amp = upsample_periodic(wf.amplitudes(), refine);
  double peak = 0.0;
  for (const auto& a : amp) peak = std::max(peak, std::norm(a));
  const double floor = density_floor > 0.0 ? density_floor : default_floor_ratio * peak;
  require(std::isfinite(floor), ErrorCode::invalid_argument, "density floor must be finite");

  PolarFields out;
  out.domain = wf.domain();
  out.origin = wf.coordinate(0);
  out.spacing = wf.spacing() / static_cast<double>(refine);
  out.refine = refine;
  out.hbar = wf.config().hbar;
  const std::size_t m = amp.size();
  out.amplitude.resize(m);
  out.phase.assign(m, 0.0);
  out.valid.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    out.amplitude[i] = std::abs(amp[i]);
    out.valid[i] = std::norm(amp[i]) >= floor ? 1 : 0;
  }
  const auto runs = mask_runs(out.valid);
  require(!runs.empty(), ErrorCode::all_below_floor, "no sample reaches the density floor");
  const double h = wf.config().hbar;
  for (const auto& [b, e] : runs) {
    double theta = std::arg(amp[b]);
    out.phase[b] = h * theta;
    for (std::size_t i = b + 1; i < e; ++i) {
      // Increment taken as the principal argument of the ratio: nearest 2*pi branch.
      theta += std::arg(amp[i] * std::conj(amp[i - 1]));
      out.phase[i] = h * theta;
    }
  }
  return out;
}

}  // namespace moyal
