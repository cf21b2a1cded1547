#include "moyal/wigner.hpp"

#include <cmath>
#include <numbers>

#include "moyal/error.hpp"

namespace moyal {

using std::numbers::pi;

PhaseSpaceFunction wigner_transform(const Wavefunction& wf) {
  require(wf.domain().kind == Domain::Kind::position, ErrorCode::invalid_argument,
          "wigner_transform expects a position-space wavefunction");
  const Grid& g = wf.grid();
  const std::size_t n = g.n();
  const std::size_t half = n / 2;
  // fine[i] samples psi at x_min + i*dx/2
  const std::vector<cplx> fine = upsample_periodic(wf.amplitudes(), 2);
  const std::ptrdiff_t nf = static_cast<std::ptrdiff_t>(fine.size());
  const Fft fft(n);
  const double scale = g.dx() / (2.0 * pi * wf.config().hbar);
  std::vector<double> values(n * n);
  std::vector<cplx> row(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::ptrdiff_t c = 2 * static_cast<std::ptrdiff_t>(j);
    std::fill(row.begin(), row.end(), cplx{0.0, 0.0});
    // s = -n/2 is left at zero so the kernel stays Hermitian in s.
    for (std::ptrdiff_t s = -static_cast<std::ptrdiff_t>(half) + 1;
         s < static_cast<std::ptrdiff_t>(half); ++s) {
      const std::ptrdiff_t lo = c - s, hi = c + s;
      if (lo < 0 || lo >= nf || hi < 0 || hi >= nf) continue;
      const cplx k = std::conj(fine[lo]) * fine[hi];
      const std::size_t idx = static_cast<std::size_t>((s + static_cast<std::ptrdiff_t>(n)) %
                                                       static_cast<std::ptrdiff_t>(n));
      row[idx] = (s % 2 == 0) ? k : -k;
    }
    fft.forward(row);
    for (std::size_t k = 0; k < n; ++k) {
      const double im = row[k].imag() * scale;
      require(std::abs(im) <= wigner_imag_tolerance, ErrorCode::imaginary_residue,
              "Wigner transform has a non-negligible imaginary part");
      values[j * n + k] = row[k].real() * scale;
    }
  }
  return {g, wf.config(), std::move(values)};
}

Marginals marginals(const PhaseSpaceFunction& f) {
  const std::size_t n = f.n();
  const double dx = f.grid().dx(), dp = f.grid().dp();
  Marginals m{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const double v = f(j, k);
      m.position[j] += v;
      m.momentum[k] += v;
    }
  }
  for (auto& v : m.position) v *= dp;
  for (auto& v : m.momentum) v *= dx;
  return m;
}

double expectation(const PhaseSpaceFunction& symbol, const PhaseSpaceFunction& f) {
  require(symbol.grid() == f.grid(), ErrorCode::grid_mismatch,
          "expectation needs symbol and state on one grid");
  double s = 0.0;
  for (std::size_t i = 0; i < f.values().size(); ++i) s += symbol.values()[i] * f.values()[i];
  return s * f.grid().dx() * f.grid().dp();
}

double purity(const PhaseSpaceFunction& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return s * f.grid().dx() * f.grid().dp() * 2.0 * pi * f.config().hbar;
}

// alpha_l p_k / hbar = 2 pi (l - n/2)(k - n/2) / n, which factorizes into
// (-1)^{l+k} exp(2 pi i l k / n) when n is a multiple of 4.
CharacteristicFunction characteristic_function(const PhaseSpaceFunction& f) {
  const Grid& g = f.grid();
  const std::size_t n = g.n();
  const double h = f.config().hbar;
  std::vector<cplx> a(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) a[j * n + k] = ((j + k) % 2 ? -1.0 : 1.0) * f(j, k);
  Fft2d(n, n).backward(a);
  CharacteristicFunction chi{g, f.config(), std::vector<cplx>(n * n)};
  const double w = g.dx() * g.dp();
  for (std::size_t m = 0; m < n; ++m) {
    const cplx shift = std::polar(w, g.p(m) * g.x_min() / h);
    for (std::size_t l = 0; l < n; ++l)
      chi.values[l * n + m] = (l % 2 ? -1.0 : 1.0) * shift * a[m * n + l];
  }
  return chi;
}

}  // namespace moyal
