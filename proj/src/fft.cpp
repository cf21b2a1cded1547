#include "moyal/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <vector>

#include "moyal/error.hpp"

namespace moyal {

struct Fft::Impl {
  fftw_complex* buffer = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  ~Impl() {
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (buffer) fftw_free(buffer);
  }
};

Fft::Fft(std::size_t n) : n_(n), impl_(std::make_unique<Impl>()) {
  require(n > 0, ErrorCode::invalid_argument, "FFT length must be positive");
  impl_->buffer = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  const int len = static_cast<int>(n);
  impl_->fwd = fftw_plan_dft_1d(len, impl_->buffer, impl_->buffer, FFTW_FORWARD, FFTW_ESTIMATE);
  impl_->bwd = fftw_plan_dft_1d(len, impl_->buffer, impl_->buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() = default;
Fft::Fft(Fft&&) noexcept = default;
Fft& Fft::operator=(Fft&&) noexcept = default;

namespace {

void run(fftw_plan plan, fftw_complex* buffer, std::span<cplx> data) {
  auto* raw = reinterpret_cast<cplx*>(buffer);
  std::copy(data.begin(), data.end(), raw);
  fftw_execute(plan);
  std::copy(raw, raw + data.size(), data.begin());
}

}  // namespace

void Fft::forward(std::span<cplx> data) const {
  require(data.size() == n_, ErrorCode::invalid_argument, "FFT length mismatch");
  run(impl_->fwd, impl_->buffer, data);
}

void Fft::backward(std::span<cplx> data) const {
  require(data.size() == n_, ErrorCode::invalid_argument, "FFT length mismatch");
  run(impl_->bwd, impl_->buffer, data);
}

struct Fft2d::Impl {
  fftw_complex* buffer = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  ~Impl() {
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (buffer) fftw_free(buffer);
  }
};

Fft2d::Fft2d(std::size_t n0, std::size_t n1) : n0_(n0), n1_(n1), impl_(std::make_unique<Impl>()) {
  require(n0 > 0 && n1 > 0, ErrorCode::invalid_argument, "FFT shape must be positive");
  impl_->buffer = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n0 * n1));
  const int a = static_cast<int>(n0);
  const int b = static_cast<int>(n1);
  impl_->fwd = fftw_plan_dft_2d(a, b, impl_->buffer, impl_->buffer, FFTW_FORWARD, FFTW_ESTIMATE);
  impl_->bwd = fftw_plan_dft_2d(a, b, impl_->buffer, impl_->buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft2d::~Fft2d() = default;
Fft2d::Fft2d(Fft2d&&) noexcept = default;
Fft2d& Fft2d::operator=(Fft2d&&) noexcept = default;

void Fft2d::forward(std::span<cplx> data) const {
  require(data.size() == n0_ * n1_, ErrorCode::invalid_argument, "FFT shape mismatch");
  run(impl_->fwd, impl_->buffer, data);
}

void Fft2d::backward(std::span<cplx> data) const {
  require(data.size() == n0_ * n1_, ErrorCode::invalid_argument, "FFT shape mismatch");
  run(impl_->bwd, impl_->buffer, data);
}

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

std::vector<cplx> upsample_periodic(std::span<const cplx> samples, std::size_t factor) {
  const std::size_t n = samples.size();
  require(is_power_of_two(n) && is_power_of_two(factor), ErrorCode::invalid_argument,
          "upsampling needs power-of-two length and factor");
  if (factor == 1) return {samples.begin(), samples.end()};
  std::vector<cplx> spectrum(samples.begin(), samples.end());
  Fft(n).forward(spectrum);
  const std::size_t big = n * factor;
  std::vector<cplx> padded(big, cplx{0.0, 0.0});
  const std::size_t half = n / 2;
  for (std::size_t k = 0; k < half; ++k) padded[k] = spectrum[k];
  for (std::size_t k = half + 1; k < n; ++k) padded[big - n + k] = spectrum[k];
  padded[half] = 0.5 * spectrum[half];
  padded[big - half] = 0.5 * spectrum[half];
  Fft(big).backward(padded);
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& v : padded) v *= scale;
  return padded;
}

}  // namespace moyal
