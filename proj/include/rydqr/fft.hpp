#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace rydqr {

// In-place 1D complex DFT on an owned, SIMD-aligned buffer. Transforms are
// unnormalized (backward(forward(x)) == n * x). Planning is serialized
// internally; distinct instances may execute concurrently.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();

  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;
  Fft(Fft&& other) noexcept;
  Fft& operator=(Fft&& other) noexcept;

  std::size_t size() const noexcept { return n_; }
  std::span<std::complex<double>> data() noexcept { return {buffer_, n_}; }
  std::span<const std::complex<double>> data() const noexcept { return {buffer_, n_}; }

  void forward();
  void backward();

 private:
  void release() noexcept;

  std::size_t n_ = 0;
  std::complex<double>* buffer_ = nullptr;
  void* forwardPlan_ = nullptr;
  void* backwardPlan_ = nullptr;
};

}  // namespace rydqr
