#include "rydqr/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <new>
#include <stdexcept>
#include <utility>

namespace rydqr {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("Fft: size must be positive");
  std::lock_guard lock(planner_mutex());
  buffer_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (buffer_ == nullptr) throw std::bad_alloc();
  auto* raw = reinterpret_cast<fftw_complex*>(buffer_);
  const int size = static_cast<int>(n);
  forwardPlan_ = fftw_plan_dft_1d(size, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
  backwardPlan_ = fftw_plan_dft_1d(size, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (forwardPlan_ == nullptr || backwardPlan_ == nullptr) {
    if (forwardPlan_) fftw_destroy_plan(static_cast<fftw_plan>(forwardPlan_));
    if (backwardPlan_) fftw_destroy_plan(static_cast<fftw_plan>(backwardPlan_));
    fftw_free(buffer_);
    throw std::runtime_error("Fft: FFTW planning failed");
  }
  for (auto& z : data()) z = 0.0;
}

Fft::~Fft() { release(); }

Fft::Fft(Fft&& other) noexcept
    : n_(std::exchange(other.n_, 0)),
      buffer_(std::exchange(other.buffer_, nullptr)),
      forwardPlan_(std::exchange(other.forwardPlan_, nullptr)),
      backwardPlan_(std::exchange(other.backwardPlan_, nullptr)) {}

Fft& Fft::operator=(Fft&& other) noexcept {
  if (this != &other) {
    release();
    n_ = std::exchange(other.n_, 0);
    buffer_ = std::exchange(other.buffer_, nullptr);
    forwardPlan_ = std::exchange(other.forwardPlan_, nullptr);
    backwardPlan_ = std::exchange(other.backwardPlan_, nullptr);
  }
  return *this;
}

void Fft::release() noexcept {
  if (buffer_ == nullptr) return;
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forwardPlan_));
  fftw_destroy_plan(static_cast<fftw_plan>(backwardPlan_));
  fftw_free(buffer_);
  buffer_ = nullptr;
}

void Fft::forward() { fftw_execute(static_cast<fftw_plan>(forwardPlan_)); }

void Fft::backward() { fftw_execute(static_cast<fftw_plan>(backwardPlan_)); }

}  // namespace rydqr
