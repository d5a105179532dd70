#include "rydqr/oracle.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rydqr/error.hpp"
#include "rydqr/scattering.hpp"
#include "rydqr/split_step.hpp"

namespace rydqr {

namespace {

using Matrix2 = std::array<std::array<complex, 2>, 2>;

Matrix2 multiply(const Matrix2& a, const Matrix2& b) {
  Matrix2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

complex local_wavenumber(double k, double v) {
  complex q = std::sqrt(complex(k * k - v, 0.0));
  // Exactly at a turning level the plane-wave basis degenerates.
  const double floor = 1e-12 * (1.0 + k);
  if (std::abs(q) < floor) q = floor;
  return q;
}

// Maps amplitudes (A, B) of region a, evaluated at the interface, to those of region b.
Matrix2 interface(complex qa, complex qb) {
  const complex ratio = qa / qb;
  return {{{0.5 * (1.0 + ratio), 0.5 * (1.0 - ratio)}, {0.5 * (1.0 - ratio), 0.5 * (1.0 + ratio)}}};
}

Matrix2 propagation(complex q, double length) {
  const complex i(0.0, 1.0);
  return {{{std::exp(i * q * length), 0.0}, {0.0, std::exp(-i * q * length)}}};
}

}  // namespace

void validate(const PiecewisePotential& pw) {
  if (pw.breakpoints.empty()) throw std::invalid_argument("piecewise potential needs at least one breakpoint");
  if (pw.values.size() != pw.breakpoints.size() + 1)
    throw std::invalid_argument("piecewise potential needs breakpoints.size() + 1 values");
  if (pw.values.front() != 0.0 || pw.values.back() != 0.0)
    throw std::invalid_argument("piecewise potential outer segments must be zero");
  for (std::size_t i = 1; i < pw.breakpoints.size(); ++i)
    if (!(pw.breakpoints[i] > pw.breakpoints[i - 1]))
      throw std::invalid_argument("piecewise potential has a zero-length or reversed segment");
}

StationaryRT transfer_matrix_rt(double k, const PiecewisePotential& pw, Incidence side) {
  validate(pw);
  if (!(k > 0.0)) throw std::invalid_argument("transfer_matrix_rt: k must be > 0");

  // psi_j = A e^{iq(x - x_j)} + B e^{-iq(x - x_j)}, x_j the left edge of
  // segment j (the first breakpoint for the outer left segment).
  Matrix2 total{{{1.0, 0.0}, {0.0, 1.0}}};
  complex q = local_wavenumber(k, pw.values[0]);
  for (std::size_t j = 0; j < pw.breakpoints.size(); ++j) {
    if (j > 0) total = multiply(propagation(q, pw.breakpoints[j] - pw.breakpoints[j - 1]), total);
    const complex next = local_wavenumber(k, pw.values[j + 1]);
    total = multiply(interface(q, next), total);
    q = next;
  }

  const complex& m11 = total[0][0];
  const complex& m12 = total[0][1];
  const complex& m21 = total[1][0];
  const complex& m22 = total[1][1];
  if (side == Incidence::Left) {
    const complex r = -m21 / m22;
    const complex t = (m11 * m22 - m12 * m21) / m22;
    return {std::norm(r), std::norm(t)};
  }
  const complex t = 1.0 / m22;
  const complex r = m12 / m22;
  return {std::norm(r), std::norm(t)};
}

PiecewisePotential discretize_function(const std::function<double(double)>& reV, std::size_t segments,
                                       double xiFrom, double xiTo) {
  if (segments < 16) throw std::invalid_argument("discretize_potential: need at least 16 segments");
  if (!(xiFrom < xiTo)) throw std::invalid_argument("discretize_potential: empty interval");
  PiecewisePotential pw;
  const double h = (xiTo - xiFrom) / static_cast<double>(segments);
  pw.breakpoints.resize(segments + 1);
  for (std::size_t i = 0; i <= segments; ++i) pw.breakpoints[i] = xiFrom + h * static_cast<double>(i);
  pw.breakpoints.back() = xiTo;
  pw.values.assign(segments + 2, 0.0);
  for (std::size_t i = 0; i < segments; ++i) pw.values[i + 1] = reV(xiFrom + h * (static_cast<double>(i) + 0.5));
  return pw;
}

PiecewisePotential discretize_potential(const DefectPotential& potential, std::size_t segments,
                                        double xiFrom, double xiTo) {
  if (segments < 16) throw std::invalid_argument("discretize_potential: need at least 16 segments");
  const auto& xs = potential.grid;
  if (!(xiFrom < xiTo) || xiFrom < xs.front() || xiTo > xs.back())
    throw std::invalid_argument("discretize_potential: interval must lie inside the potential grid");

  auto interpolate = [&](double x) {
    const double h = xs[1] - xs[0];
    auto j = static_cast<std::size_t>(std::floor((x - xs.front()) / h));
    if (j + 1 >= xs.size()) j = xs.size() - 2;
    const double w = (x - xs[j]) / h;
    return (1.0 - w) * potential.values[j].real() + w * potential.values[j + 1].real();
  };

  return discretize_function(interpolate, segments, xiFrom, xiTo);
}

PiecewisePotential discretize_potential(const DefectPotential& potential, std::size_t segments,
                                        double epsilonV) {
  const Splits s = default_splits(potential, epsilonV);
  return discretize_potential(potential, segments, s.left, s.right);
}

PiecewisePotential square_well(double depth, double width, double left) {
  if (!(width > 0.0)) throw std::invalid_argument("square_well: width must be > 0");
  return {{left, left + width}, {0.0, -depth, 0.0}};
}

double square_well_transmission(double k, double depth, double width) {
  const double q = std::sqrt(k * k + depth);
  const double s = std::sin(q * width);
  return 1.0 / (1.0 + depth * depth * s * s / (4.0 * k * k * q * q));
}

std::vector<double> square_well_resonances(double depth, double width, std::size_t count) {
  std::vector<double> ks;
  for (std::size_t n = 1; ks.size() < count; ++n) {
    const double q = static_cast<double>(n) * std::numbers::pi / width;
    if (q * q > depth) ks.push_back(std::sqrt(q * q - depth));
  }
  return ks;
}

namespace {

// Tridiagonal Cayley step (M + i dt/2 K) phi' = (M - i dt/2 K) phi with
// K = -A + M diag(V), A the 3-point Laplacian and M = (1, 10, 1) / 12.
class CompactCrankNicolson {
 public:
  CompactCrankNicolson(const Grid& grid, const std::vector<double>& v, double dt)
      : v_(v), n_(grid.n) {
    const double h2 = grid.dXi() * grid.dXi();
    const complex half(0.0, 0.5 * dt);
    lowerL_.resize(n_);
    diagL_.resize(n_);
    upperL_.resize(n_);
    lowerR_.resize(n_);
    diagR_.resize(n_);
    upperR_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      const double vm = j > 0 ? v_[j - 1] : 0.0;
      const double vp = j + 1 < n_ ? v_[j + 1] : 0.0;
      const complex kLower = -1.0 / h2 + vm / 12.0;
      const complex kDiag = 2.0 / h2 + 10.0 * v_[j] / 12.0;
      const complex kUpper = -1.0 / h2 + vp / 12.0;
      lowerL_[j] = 1.0 / 12.0 + half * kLower;
      diagL_[j] = 10.0 / 12.0 + half * kDiag;
      upperL_[j] = 1.0 / 12.0 + half * kUpper;
      lowerR_[j] = 1.0 / 12.0 - half * kLower;
      diagR_[j] = 10.0 / 12.0 - half * kDiag;
      upperR_[j] = 1.0 / 12.0 - half * kUpper;
    }
    // Thomas factorization of the constant left-hand side.
    cPrime_.resize(n_);
    pivot_.resize(n_);
    pivot_[0] = diagL_[0];
    check_pivot(pivot_[0]);
    cPrime_[0] = upperL_[0] / pivot_[0];
    for (std::size_t j = 1; j < n_; ++j) {
      pivot_[j] = diagL_[j] - lowerL_[j] * cPrime_[j - 1];
      check_pivot(pivot_[j]);
      cPrime_[j] = upperL_[j] / pivot_[j];
    }
    rhs_.resize(n_);
  }

  void advance(std::vector<complex>& phi) {
    for (std::size_t j = 0; j < n_; ++j) {
      complex s = diagR_[j] * phi[j];
      if (j > 0) s += lowerR_[j] * phi[j - 1];
      if (j + 1 < n_) s += upperR_[j] * phi[j + 1];
      rhs_[j] = s;
    }
    rhs_[0] /= pivot_[0];
    for (std::size_t j = 1; j < n_; ++j) rhs_[j] = (rhs_[j] - lowerL_[j] * rhs_[j - 1]) / pivot_[j];
    phi[n_ - 1] = rhs_[n_ - 1];
    for (std::size_t j = n_ - 1; j-- > 0;) phi[j] = rhs_[j] - cPrime_[j] * phi[j + 1];
  }

 private:
  static void check_pivot(const complex& p) {
    if (!(std::abs(p) > 1e-300) || !std::isfinite(std::abs(p)))
      throw Error("reference_evolve: tridiagonal solve failed (vanishing pivot)");
  }

  std::vector<double> v_;
  std::size_t n_;
  std::vector<complex> lowerL_, diagL_, upperL_, lowerR_, diagR_, upperR_;
  std::vector<complex> cPrime_, pivot_, rhs_;
};

}  // namespace

Wavepacket reference_evolve(const Wavepacket& psi0, const DefectPotential& potential, double tauEnd,
                            double dTau) {
  validate(psi0.grid);
  require_same_grid(psi0.grid, potential);
  if (!(tauEnd >= 0.0)) throw std::invalid_argument("reference_evolve: tauEnd must be >= 0");
  const double dt = dTau > 0.0 ? dTau : psi0.grid.dTau;

  std::vector<double> v(potential.values.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = potential.values[j].real();

  Wavepacket psi = psi0;
  const auto fullSteps = static_cast<std::size_t>(std::floor(tauEnd / dt + 1e-9));
  const double remainder = tauEnd - static_cast<double>(fullSteps) * dt;
  if (fullSteps > 0) {
    CompactCrankNicolson stepper(psi.grid, v, dt);
    for (std::size_t i = 0; i < fullSteps; ++i) stepper.advance(psi.amplitudes);
  }
  if (remainder > 1e-9 * dt) {
    CompactCrankNicolson stepper(psi.grid, v, remainder);
    stepper.advance(psi.amplitudes);
  }
  psi.tau = psi0.tau + tauEnd;
  return psi;
}

}  // namespace rydqr
