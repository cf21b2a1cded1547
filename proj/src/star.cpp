#include "moyal/star.hpp"

#include <cmath>
#include <numbers>

#include "moyal/error.hpp"

namespace moyal {

namespace {

Rational binomial(int n, int k) {
  Rational r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// (i hbar / 2)^n / n!
ExactComplex series_weight(int n, const Rational& hbar) {
  Rational mag = 1;
  for (int i = 1; i <= n; ++i) mag = mag * hbar / (2 * i);
  switch (n % 4) {
    case 0: return {mag, 0};
    case 1: return {0, mag};
    case 2: return {-mag, 0};
    default: return {0, -mag};
  }
}

}  // namespace

PolySymbol star_poly(const PolySymbol& a, const PolySymbol& b) {
  require(a.hbar() == b.hbar(), ErrorCode::invalid_argument, "symbols carry different hbar");
  PolySymbol out = a * b;
  const int top = std::min(a.degree(), b.degree());
  for (int n = 1; n <= top; ++n) {
    const ExactComplex w = series_weight(n, a.hbar_exact());
    PolySymbol layer(a.hbar());
    for (int k = 0; k <= n; ++k) {
      const PolySymbol da = a.d_x(n - k).d_p(k);
      const PolySymbol db = b.d_p(n - k).d_x(k);
      if (da.is_zero() || db.is_zero()) continue;
      const Rational c = binomial(n, k) * (k % 2 ? -1 : 1);
      layer = layer + (da * db).scaled({c, 0});
    }
    out = out + layer.scaled(w);
  }
  return out;
}

PolySymbol moyal_bracket(const PolySymbol& a, const PolySymbol& b) {
  // 1/(i hbar) = -i / hbar
  return (star_poly(a, b) - star_poly(b, a)).scaled({0, Rational(-1) / a.hbar_exact()});
}

PolySymbol baker_bracket(const PolySymbol& a, const PolySymbol& b) {
  return (star_poly(a, b) + star_poly(b, a)).scaled({Rational(1, 2), 0});
}

PolySymbol poisson_bracket(const PolySymbol& a, const PolySymbol& b) {
  return a.d_x() * b.d_p() - a.d_p() * b.d_x();
}

namespace {

// Partial Fourier series over p for each x row:
//   a(x_j, p_k) = sum_l hat[j][l] exp(i alpha_l p_k / hbar),  alpha_l = (l - n/2) dx
std::vector<cplx> p_coefficients(const ComplexPhaseSpaceFunction& a) {
  const std::size_t n = a.n();
  std::vector<cplx> hat(a.values());
  const Fft fft(n);
  const double inv = 1.0 / static_cast<double>(n);
  std::span<cplx> all(hat);
  for (std::size_t j = 0; j < n; ++j) {
    auto row = all.subspan(j * n, n);
    for (std::size_t k = 1; k < n; k += 2) row[k] = -row[k];
    fft.forward(row);
    for (std::size_t l = 0; l < n; ++l) row[l] *= (l % 2 ? -inv : inv);
  }
  return hat;
}

// Inverse of p_coefficients, in place.
void p_synthesis(std::vector<cplx>& hat, std::size_t n) {
  const Fft fft(n);
  std::span<cplx> all(hat);
  for (std::size_t j = 0; j < n; ++j) {
    auto row = all.subspan(j * n, n);
    for (std::size_t l = 1; l < n; l += 2) row[l] = -row[l];
    fft.backward(row);
    for (std::size_t k = 1; k < n; k += 2) row[k] = -row[k];
  }
}

// For each alpha column, band-limited values at half steps in x:
// result[l][i] = hat(alpha_l, x_min + i dx/2), i in [0, 2n).
std::vector<cplx> half_step_columns(const std::vector<cplx>& hat, std::size_t n) {
  std::vector<cplx> out(n * 2 * n);
  std::vector<cplx> col(n);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t j = 0; j < n; ++j) col[j] = hat[j * n + l];
    const auto fine = upsample_periodic(col, 2);
    std::copy(fine.begin(), fine.end(), out.begin() + static_cast<std::ptrdiff_t>(l * 2 * n));
  }
  return out;
}

}  // namespace

double out_of_band_fraction(const ComplexPhaseSpaceFunction& a) {
  const std::size_t n = a.n();
  std::vector<cplx> spec(a.values());
  Fft2d(n, n).forward(spec);
  double total = 0.0, outside = 0.0;
  const std::size_t q = n / 4;
  for (std::size_t i = 0; i < n; ++i) {
    // FFT bin i corresponds to signed frequency i or i - n.
    const bool in_i = i < q || i >= n - q;
    for (std::size_t k = 0; k < n; ++k) {
      const bool in_k = k < q || k >= n - q;
      const double e = std::norm(spec[i * n + k]);
      total += e;
      if (!(in_i && in_k)) outside += e;
    }
  }
  return total > 0.0 ? outside / total : 0.0;
}

ComplexPhaseSpaceFunction star_grid(const ComplexPhaseSpaceFunction& a,
                                    const ComplexPhaseSpaceFunction& b) {
  require(a.grid() == b.grid() && a.config() == b.config(), ErrorCode::grid_mismatch,
          "star_grid needs both symbols on one grid");
  require(out_of_band_fraction(a) < band_limit_tolerance &&
              out_of_band_fraction(b) < band_limit_tolerance,
          ErrorCode::band_limit, "symbol is not band-limited to the central half of the dual grid");
  const std::size_t n = a.n();
  const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
  const std::ptrdiff_t nf = 2 * sn;
  const auto ah = half_step_columns(p_coefficients(a), n);
  const auto bh = half_step_columns(p_coefficients(b), n);
  auto wrap = [nf](std::ptrdiff_t i) { return static_cast<std::size_t>(((i % nf) + nf) % nf); };

  std::vector<cplx> out(n * n, cplx{0.0, 0.0});
  for (std::ptrdiff_t l = 0; l < sn; ++l) {
    for (std::ptrdiff_t l1 = 0; l1 < sn; ++l1) {
      // alpha - alpha_1 = alpha_m with m = l - l1 + n/2
      const std::ptrdiff_t m = l - l1 + sn / 2;
      if (m < 0 || m >= sn) continue;
      const cplx* acol = &ah[static_cast<std::size_t>(l1) * 2 * n];
      const cplx* bcol = &bh[static_cast<std::size_t>(m) * 2 * n];
      for (std::ptrdiff_t j = 0; j < sn; ++j) {
        const cplx va = acol[wrap(2 * j - (l - l1))];
        const cplx vb = bcol[wrap(2 * j + (l1 - sn / 2))];
        out[static_cast<std::size_t>(j) * n + static_cast<std::size_t>(l)] += va * vb;
      }
    }
  }
  p_synthesis(out, n);
  return {a.grid(), a.config(), std::move(out)};
}

ComplexPhaseSpaceFunction moyal_bracket_grid(const ComplexPhaseSpaceFunction& a,
                                             const ComplexPhaseSpaceFunction& b) {
  const auto ab = star_grid(a, b);
  const auto ba = star_grid(b, a);
  const cplx f{0.0, -1.0 / a.config().hbar};
  std::vector<cplx> v(ab.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f * (ab.values()[i] - ba.values()[i]);
  return {a.grid(), a.config(), std::move(v)};
}

ComplexPhaseSpaceFunction baker_bracket_grid(const ComplexPhaseSpaceFunction& a,
                                             const ComplexPhaseSpaceFunction& b) {
  const auto ab = star_grid(a, b);
  const auto ba = star_grid(b, a);
  std::vector<cplx> v(ab.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.5 * (ab.values()[i] + ba.values()[i]);
  return {a.grid(), a.config(), std::move(v)};
}

namespace {

double plateau(double u, double c, double w) {
  return 0.5 * (std::erf((u + c) / w) - std::erf((u - c) / w));
}

}  // namespace

PhaseSpaceFunction plateau_window(const Grid& grid, const PhysicsConfig& config) {
  const double xc = 0.5 * (grid.x_min() + grid.x_max());
  const double L = grid.length();
  const double pm = grid.p_max();
  return PhaseSpaceFunction::sample(grid, config, [&](double x, double p) {
    return plateau(x - xc, 0.3 * L, L / 40.0) * plateau(p, 0.6 * pm, pm / 20.0);
  });
}

ComplexPhaseSpaceFunction sample_windowed(const PolySymbol& a, const Grid& grid,
                                          const PhysicsConfig& config) {
  require(a.hbar() == config.hbar, ErrorCode::invalid_argument, "symbol and config disagree on hbar");
  const auto w = plateau_window(grid, config);
  const std::size_t n = grid.n();
  std::vector<cplx> v(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) v[j * n + k] = a.evaluate(grid.x(j), grid.p(k)) * w(j, k);
  return {grid, config, std::move(v)};
}

std::vector<std::uint8_t> central_quarter(const Grid& grid) {
  const std::size_t n = grid.n();
  const double xc = 0.5 * (grid.x_min() + grid.x_max());
  std::vector<std::uint8_t> mask(n * n, 0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      mask[j * n + k] = std::abs(grid.x(j) - xc) <= grid.length() / 8.0 &&
                        std::abs(grid.p(k)) <= grid.p_max() / 4.0;
  return mask;
}

}  // namespace moyal
