#include "rydqr/error.hpp"

#include <sstream>

namespace rydqr {

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
  std::ostringstream out;
  out << "invalid configuration";
  for (const auto& p : problems) out << "\n  " << p;
  return out.str();
}

std::string pole_message(double x, double magnitude) {
  std::ostringstream out;
  out.precision(17);
  out << "susceptibility resonant pole at x = " << x << " m (|denominator| = " << magnitude
      << ")";
  return out.str();
}

std::string boundary_message(double tau, double ratio) {
  std::ostringstream out;
  out.precision(17);
  out << "wavepacket reached the domain boundary at tau' = " << tau
      << " (edge/peak density ratio " << ratio << ")";
  return out.str();
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : Error(join_problems(problems)), problems_(std::move(problems)) {}

ResonantPoleError::ResonantPoleError(double x, double denominatorMagnitude)
    : Error(pole_message(x, denominatorMagnitude)), x_(x) {}

BoundaryContactError::BoundaryContactError(double tau, double ratio)
    : Error(boundary_message(tau, ratio)), tau_(tau) {}

}  // namespace rydqr
