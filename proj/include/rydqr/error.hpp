#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rydqr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Field-level configuration failures. Each entry names the offending key.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> problems);

  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// Susceptibility denominator vanished at a sampled position.
class ResonantPoleError : public Error {
 public:
  ResonantPoleError(double x, double denominatorMagnitude);

  double position() const noexcept { return x_; }

 private:
  double x_;
};

// Wavepacket density reached the periodic domain edge during a measurement run.
class BoundaryContactError : public Error {
 public:
  BoundaryContactError(double tau, double ratio);

  double tau() const noexcept { return tau_; }

 private:
  double tau_;
};

}  // namespace rydqr
