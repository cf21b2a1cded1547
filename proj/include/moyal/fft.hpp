#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace moyal {

using cplx = std::complex<double>;

// Unnormalized in-place DFTs backed by FFTW.
//   forward:  X_k = sum_j x_j exp(-2 pi i jk / n)
//   backward: x_j = sum_k X_k exp(+2 pi i jk / n)
// Plans are built with FFTW_ESTIMATE so results are bit-reproducible run to run.
// An Fft object owns scratch memory and is not safe to share between threads.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(Fft&&) noexcept;
  Fft& operator=(Fft&&) noexcept;
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const noexcept { return n_; }
  void forward(std::span<cplx> data) const;
  void backward(std::span<cplx> data) const;

 private:
  struct Impl;
  std::size_t n_;
  std::unique_ptr<Impl> impl_;
};

// Row-major 2-D transform of an n0 x n1 array (same sign conventions).
class Fft2d {
 public:
  Fft2d(std::size_t n0, std::size_t n1);
  ~Fft2d();
  Fft2d(Fft2d&&) noexcept;
  Fft2d& operator=(Fft2d&&) noexcept;
  Fft2d(const Fft2d&) = delete;
  Fft2d& operator=(const Fft2d&) = delete;

  void forward(std::span<cplx> data) const;
  void backward(std::span<cplx> data) const;

 private:
  struct Impl;
  std::size_t n0_, n1_;
  std::unique_ptr<Impl> impl_;
};

bool is_power_of_two(std::size_t n) noexcept;

// Band-limited (trigonometric) interpolation of a periodic sample sequence onto
// a grid `factor` times finer; sample j of the input lands on index factor*j.
// The Nyquist bin is split symmetrically so real inputs stay real.
std::vector<cplx> upsample_periodic(std::span<const cplx> samples, std::size_t factor);

}  // namespace moyal
