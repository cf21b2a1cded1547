#include "moyal/weyl.hpp"

#include <cmath>
#include <numbers>

#include "moyal/error.hpp"
#include "moyal/wigner.hpp"

namespace moyal {

using std::numbers::pi;

bool Operator::is_hermitian(double tol) const {
  return (matrix - matrix.adjoint()).norm() < tol;
}

DensityOperator::DensityOperator(Operator rho) : op(std::move(rho)) {
  const auto& m = op.matrix;
  require(m.rows() == m.cols() && m.rows() > 0, ErrorCode::invalid_argument,
          "density operator must be a non-empty square matrix");
  require(op.is_hermitian(1e-10), ErrorCode::invalid_argument, "density operator must be Hermitian");
  require(std::abs(m.trace() - cplx{1.0, 0.0}) <= 1e-10, ErrorCode::invalid_argument,
          "density operator must have unit trace");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() >= -1e-10, ErrorCode::invalid_argument,
          "density operator must be positive semidefinite");
}

double DensityOperator::idempotency_defect() const {
  return (op.matrix * op.matrix - op.matrix).norm();
}

namespace {

Eigen::MatrixXd position_quadrature(std::size_t M, double hbar) {
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(M), static_cast<Eigen::Index>(M));
  const double s = std::sqrt(hbar / 2.0);
  for (std::size_t n = 0; n + 1 < M; ++n) {
    const auto i = static_cast<Eigen::Index>(n);
    X(i, i + 1) = X(i + 1, i) = s * std::sqrt(static_cast<double>(n + 1));
  }
  return X;
}

std::pair<Matrix, Matrix> ladder_pair(std::size_t M, double hbar) {
  const auto m = static_cast<Eigen::Index>(M);
  Matrix a = Matrix::Zero(m, m);
  for (Eigen::Index n = 1; n < m; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const double s = std::sqrt(hbar / 2.0);
  Matrix X = s * (a + a.adjoint());
  Matrix P = cplx{0.0, -s} * (a - a.adjoint());
  return {X, P};
}

// S(alpha,beta) = e^{i phi N} exp(i r X / hbar) e^{-i phi N} with
// alpha P + beta X = r (cos phi X + sin phi P).
class DisplacementEngine {
 public:
  DisplacementEngine(std::size_t N, double hbar) : N_(N), hbar_(hbar) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(position_quadrature(2 * N, hbar));
    V_ = es.eigenvectors().topRows(static_cast<Eigen::Index>(N));
    lambda_ = es.eigenvalues();
  }

  Matrix block(double alpha, double beta) const {
    const auto n = static_cast<Eigen::Index>(N_);
    if (alpha == 0.0 && beta == 0.0) return Matrix::Identity(n, n);
    const double r = std::hypot(alpha, beta);
    const double phi = std::atan2(alpha, beta);
    Eigen::VectorXcd d(lambda_.size());
    for (Eigen::Index i = 0; i < lambda_.size(); ++i) d(i) = std::polar(1.0, r * lambda_(i) / hbar_);
    Matrix W = V_.cast<cplx>() * d.asDiagonal() * V_.transpose().cast<cplx>();
    for (Eigen::Index m = 0; m < n; ++m)
      for (Eigen::Index k = 0; k < n; ++k) W(m, k) *= std::polar(1.0, phi * static_cast<double>(m - k));
    return W;
  }

  // Tr[rho S] = sum_i e^{i r lambda_i / hbar} u_i^dag rho u_i, u_i(m) = V_mi e^{i phi m}.
  cplx trace_with(const Matrix& rho, double alpha, double beta) const {
    if (alpha == 0.0 && beta == 0.0) return rho.trace();
    const double r = std::hypot(alpha, beta);
    const double phi = std::atan2(alpha, beta);
    Matrix U = V_.cast<cplx>();
    for (Eigen::Index m = 0; m < U.rows(); ++m) U.row(m) *= std::polar(1.0, phi * static_cast<double>(m));
    const Matrix T = rho * U;
    cplx s{0.0, 0.0};
    for (Eigen::Index i = 0; i < U.cols(); ++i)
      s += std::polar(1.0, r * lambda_(i) / hbar_) * U.col(i).dot(T.col(i));
    return s;
  }

 private:
  std::size_t N_;
  double hbar_;
  Eigen::MatrixXd V_;  // leading N rows of the 2N-level eigenvectors
  Eigen::VectorXd lambda_;
};

}  // namespace

std::pair<Operator, Operator> canonical_pair(std::size_t N, const PhysicsConfig& config) {
  config.validate();
  require(N >= 2, ErrorCode::invalid_argument, "basis needs at least two levels");
  auto [X, P] = ladder_pair(N, config.hbar);
  return {Operator{std::move(X), config}, Operator{std::move(P), config}};
}

double faithful_radius(std::size_t N, double hbar) {
  return std::sqrt(static_cast<double>(N) * hbar / 4.0);
}

bool in_faithful_range(double alpha, double beta, std::size_t N, double hbar) {
  return alpha * alpha + beta * beta <= static_cast<double>(N) * hbar / 4.0;
}

Operator displacement(double alpha, double beta, std::size_t N, const PhysicsConfig& config) {
  config.validate();
  require(N >= 2, ErrorCode::invalid_argument, "basis needs at least two levels");
  require(std::isfinite(alpha) && std::isfinite(beta), ErrorCode::invalid_argument,
          "displacement parameters must be finite");
  return {DisplacementEngine(N, config.hbar).block(alpha, beta), config};
}

namespace {

Matrix power(const Matrix& A, int k) {
  Matrix r = Matrix::Identity(A.rows(), A.cols());
  for (int i = 0; i < k; ++i) r = r * A;
  return r;
}

}  // namespace

Operator weyl_quantize(const PolySymbol& symbol, std::size_t N, const PhysicsConfig& config) {
  config.validate();
  require(symbol.hbar() == config.hbar, ErrorCode::invalid_argument,
          "symbol and config disagree on hbar");
  require(symbol.degree() <= 4, ErrorCode::degree, "polynomial symbols are limited to degree 4");
  require(N >= 2, ErrorCode::invalid_argument, "basis needs at least two levels");
  const std::size_t M = N + static_cast<std::size_t>(symbol.degree());
  const auto [X, P] = ladder_pair(M, config.hbar);
  const auto m = static_cast<Eigen::Index>(M);
  Matrix A = Matrix::Zero(m, m);
  for (const auto& [mono, c] : symbol.terms()) {
    const int a = mono.first, b = mono.second;
    const Matrix Pb = power(P, b);
    Matrix term = Matrix::Zero(m, m);
    double binom = 1.0;
    for (int k = 0; k <= a; ++k) {
      term += binom * power(X, k) * Pb * power(X, a - k);
      binom = binom * (a - k) / (k + 1);
    }
    A += c.to_double() * std::ldexp(1.0, -a) * term;
  }
  const auto n = static_cast<Eigen::Index>(N);
  return {A.topLeftCorner(n, n), config};
}

Operator weyl_quantize(const PhaseSpaceFunction& symbol, std::size_t N) {
  require(N >= 2, ErrorCode::invalid_argument, "basis needs at least two levels");
  const Grid& g = symbol.grid();
  const double h = symbol.config().hbar;
  const auto chi = characteristic_function(symbol);
  const double norm = 1.0 / ((2.0 * pi * h) * (2.0 * pi * h));
  const std::size_t n = g.n();
  double inside = 0.0, total = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> disk;
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t mm = 0; mm < n; ++mm) {
      const double e = std::norm(chi(l, mm));
      total += e;
      if (in_faithful_range(chi.alpha(l), chi.beta(mm), N, h)) {
        inside += e;
        disk.emplace_back(l, mm);
      }
    }
  require(total == 0.0 || (total - inside) / total <= weyl_band_tolerance, ErrorCode::band_limit,
          "symbol spectrum extends beyond the faithful range of the basis");
  const DisplacementEngine engine(N, h);
  const auto dim = static_cast<Eigen::Index>(N);
  Matrix A = Matrix::Zero(dim, dim);
  const double w = g.dx() * g.dp() * norm;
  for (const auto& [l, mm] : disk) {
    // a~(alpha, beta) is the conjugate of chi for a real symbol
    const cplx coef = std::conj(chi(l, mm)) * w;
    A += coef * engine.block(chi.alpha(l), chi.beta(mm));
  }
  return {A, symbol.config()};
}

Eigen::MatrixXd hermite_functions(const std::vector<double>& xs, std::size_t N, double hbar) {
  const auto rows = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd H(rows, static_cast<Eigen::Index>(N));
  const double c0 = std::pow(pi * hbar, -0.25);
  const double sh = std::sqrt(hbar);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double u = xs[static_cast<std::size_t>(i)] / sh;
    double prev = 0.0;
    double cur = c0 * std::exp(-0.5 * u * u);
    for (std::size_t k = 0; k < N; ++k) {
      H(i, static_cast<Eigen::Index>(k)) = cur;
      const double kk = static_cast<double>(k);
      const double next = std::sqrt(2.0 / (kk + 1.0)) * u * cur - std::sqrt(kk / (kk + 1.0)) * prev;
      prev = cur;
      cur = next;
    }
  }
  return H;
}

PhaseSpaceFunction weyl_symbol(const Operator& A, const Grid& grid) {
  A.config.validate();
  require(grid.hbar() == A.config.hbar, ErrorCode::grid_mismatch, "grid and operator disagree on hbar");
  require(A.is_hermitian(1e-9 * std::max(1.0, A.matrix.norm())), ErrorCode::invalid_argument,
          "weyl_symbol expects a Hermitian operator");
  const auto N = static_cast<Eigen::Index>(A.dim());
  const auto h2 = N / 2;
  const double total = A.matrix.squaredNorm();
  const double lead = A.matrix.topLeftCorner(h2, h2).squaredNorm();
  require(total == 0.0 || std::sqrt((total - lead) / total) <= weyl_support_tolerance,
          ErrorCode::support, "operator is not supported on the leading half-block");

  const std::size_t n = grid.n();
  std::vector<double> fine(2 * n);
  for (std::size_t i = 0; i < fine.size(); ++i) fine[i] = grid.x_min() + 0.5 * grid.dx() * static_cast<double>(i);
  const Eigen::MatrixXd H = hermite_functions(fine, A.dim(), A.config.hbar);
  // K(u, v) = <u|A|v> on the half-step grid
  const Matrix K = H.cast<cplx>() * A.matrix * H.transpose().cast<cplx>();

  const std::ptrdiff_t nf = static_cast<std::ptrdiff_t>(fine.size());
  const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(n / 2);
  const Fft fft(n);
  std::vector<double> values(n * n);
  std::vector<cplx> row(n);
  double peak = 0.0, worst_im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::ptrdiff_t c = 2 * static_cast<std::ptrdiff_t>(j);
    std::fill(row.begin(), row.end(), cplx{0.0, 0.0});
    for (std::ptrdiff_t s = -half + 1; s < half; ++s) {
      const std::ptrdiff_t u = c + s, v = c - s;
      if (u < 0 || u >= nf || v < 0 || v >= nf) continue;
      const cplx k = K(u, v);
      const std::size_t idx = static_cast<std::size_t>((s + static_cast<std::ptrdiff_t>(n)) %
                                                        static_cast<std::ptrdiff_t>(n));
      row[idx] = (s % 2 == 0) ? k : -k;
    }
    fft.forward(row);
    for (std::size_t k = 0; k < n; ++k) {
      const cplx v = row[k] * grid.dx();
      values[j * n + k] = v.real();
      peak = std::max(peak, std::abs(v.real()));
      worst_im = std::max(worst_im, std::abs(v.imag()));
    }
  }
  require(worst_im <= 1e-8 * std::max(1.0, peak), ErrorCode::imaginary_residue,
          "symbol of a Hermitian operator came out complex");
  return {grid, A.config, std::move(values)};
}

PhaseSpaceFunction wigner_of(const DensityOperator& rho, const Grid& grid) {
  const auto s = weyl_symbol(rho.op, grid);
  std::vector<double> v(s.values());
  const double f = 1.0 / (2.0 * pi * rho.config().hbar);
  for (auto& x : v) x *= f;
  return {grid, rho.config(), std::move(v)};
}

std::vector<cplx> char_via_trace(const DensityOperator& rho, const std::vector<PhasePoint>& points) {
  const DisplacementEngine engine(rho.dim(), rho.config().hbar);
  std::vector<cplx> out;
  out.reserve(points.size());
  for (const auto& pt : points) out.push_back(engine.trace_with(rho.matrix(), pt.alpha, pt.beta));
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> faithful_indices(const Grid& grid, std::size_t N) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = grid.n();
  for (std::size_t l = 0; l < n; ++l) {
    const double alpha = (static_cast<double>(l) - 0.5 * static_cast<double>(n)) * grid.dx();
    for (std::size_t m = 0; m < n; ++m)
      if (in_faithful_range(alpha, grid.p(m), N, grid.hbar())) out.emplace_back(l, m);
  }
  return out;
}

ExpectationPair expectation_cross_check(const PolySymbol& a, const DensityOperator& rho,
                                        const Grid& grid) {
  require(a.is_real(), ErrorCode::invalid_argument, "expectation needs a real symbol");
  const auto W = wigner_of(rho, grid);
  const auto sampled = PhaseSpaceFunction::sample(
      grid, rho.config(), [&](double x, double p) { return a.evaluate(x, p).real(); });
  const Operator A = weyl_quantize(a, rho.dim(), rho.config());
  return {expectation(sampled, W), (rho.matrix() * A.matrix).trace().real()};
}

ExpectationPair expectation_cross_check(const PhaseSpaceFunction& a, const DensityOperator& rho) {
  const auto W = wigner_of(rho, a.grid());
  const Operator A = weyl_quantize(a, rho.dim());
  return {expectation(a, W), (rho.matrix() * A.matrix).trace().real()};
}

DensityOperator density_from_wavefunction(const Wavefunction& wf, std::size_t N) {
  require(wf.domain().kind == Domain::Kind::position, ErrorCode::invalid_argument,
          "density_from_wavefunction expects a position-space wavefunction");
  const auto H = hermite_functions(wf.grid().positions(), N, wf.config().hbar);
  Eigen::VectorXcd psi(static_cast<Eigen::Index>(wf.size()));
  for (std::size_t i = 0; i < wf.size(); ++i) psi(static_cast<Eigen::Index>(i)) = wf[i];
  Eigen::VectorXcd c = H.transpose().cast<cplx>() * psi * wf.grid().dx();
  const double captured = c.squaredNorm() / wf.norm_squared();
  require(captured >= 1.0 - 1e-8, ErrorCode::support,
          "state is not captured by the truncated oscillator basis");
  c /= std::sqrt(c.squaredNorm());
  return DensityOperator(Operator{c * c.adjoint(), wf.config()});
}

DensityOperator coherent_density(double q, double p, std::size_t N, const PhysicsConfig& config) {
  config.validate();
  const cplx alpha = cplx{q, p} / std::sqrt(2.0 * config.hbar);
  Eigen::VectorXcd c(static_cast<Eigen::Index>(N));
  cplx amp = std::exp(-0.5 * std::norm(alpha));
  for (std::size_t k = 0; k < N; ++k) {
    c(static_cast<Eigen::Index>(k)) = amp;
    amp *= alpha / std::sqrt(static_cast<double>(k + 1));
  }
  const double captured = c.squaredNorm();
  require(captured >= 1.0 - 1e-8, ErrorCode::support,
          "coherent state is not captured by the truncated oscillator basis");
  c /= std::sqrt(captured);
  return DensityOperator(Operator{c * c.adjoint(), config});
}

}  // namespace moyal
