#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "gqwalk/density.hpp"

namespace gqwalk {

constexpr double kHermitianTol = 1e-10;
constexpr double kEigenvalueFloor = 1e-14;

/// von Neumann entropy -sum lambda ln lambda in nats. Eigenvalues are
/// clamped to [0, 1]; values below the floor contribute zero.
inline double entanglement_entropy(const DensityMatrix& rho) {
  if (rho.hermiticity_defect() > kHermitianTol) {
    throw std::invalid_argument("entanglement_entropy: input not Hermitian within tolerance");
  }
  const Eigen::VectorXd evals = rho.eigenvalues();
  double ee = 0.0;
  for (int i = 0; i < evals.size(); ++i) {
    const double lam = std::clamp(evals[i], 0.0, 1.0);
    if (lam > kEigenvalueFloor) ee -= lam * std::log(lam);
  }
  return ee;
}

/// Negativity sum (|lambda| - lambda)/2 over the spectrum of the partial
/// transpose with respect to the named subsystems.
inline double negativity(const DensityMatrix& rho, const std::vector<std::string>& subsystems) {
  const Eigen::VectorXd evals = rho.partial_transpose(subsystems).eigenvalues();
  double neg = 0.0;
  for (int i = 0; i < evals.size(); ++i) {
    neg += (std::abs(evals[i]) - evals[i]) / 2.0;
  }
  return neg;
}

inline double negativity(const DensityMatrix& rho, const char* subsystem) {
  return negativity(rho, std::vector<std::string>{subsystem});
}

/// Schmidt spectrum of the pure state across the (posA,spinA)|(posB,spinB)
/// cut: squared singular values of the side x side amplitude reshape.
inline Eigen::VectorXd schmidt_spectrum(const JointState& state) {
  const int side = state.side_dim();
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      m(state.amp.data(), side, side);
  const Eigen::VectorXd sv = singular_values(m);
  return sv.array().square();
}

/// Entanglement entropy of the pure two-walker state across the A|B cut.
inline double pure_entanglement_entropy(const JointState& state) {
  const Eigen::VectorXd lam = schmidt_spectrum(state);
  double ee = 0.0;
  for (int i = 0; i < lam.size(); ++i) {
    const double l = std::clamp(lam[i], 0.0, 1.0);
    if (l > kEigenvalueFloor) ee -= l * std::log(l);
  }
  return ee;
}

/// Negativity of a pure state across the A|B cut via the Schmidt identity
/// N = ((sum sqrt(lambda))^2 - 1)/2. Agrees with the dense partial-transpose
/// route; used where the full projector would be needlessly large.
inline double pure_negativity(const JointState& state) {
  const Eigen::VectorXd lam = schmidt_spectrum(state);
  double s = 0.0;
  for (int i = 0; i < lam.size(); ++i) s += std::sqrt(std::max(lam[i], 0.0));
  return std::max(0.0, (s * s - 1.0) / 2.0);
}

/// First-order correction to the leading eigenvalue of rho_B:
/// sum_{j,k,l} Q_j Q_k P_l (exp(-i(g_lj - g_lk)) - 1). Diagnostic only.
inline Complex perturbation_correction(const Eigen::VectorXd& P, const Eigen::VectorXd& Q,
                                       const PhaseField& field) {
  const int n = 2 * field.t + 1;
  if (P.size() != n || Q.size() != n) {
    throw std::invalid_argument("perturbation_correction: distribution size mismatch");
  }
  // sum_l P_l (|w_l|^2 - 1) with w_l = sum_j Q_j exp(-i g_lj)
  Complex total(0, 0);
  for (int l = 0; l < n; ++l) {
    Complex w(0, 0);
    for (int j = 0; j < n; ++j) {
      w += Q[j] * std::exp(Complex(0, -field.g(l, j)));
    }
    total += P[l] * (w * std::conj(w) - 1.0);
  }
  return total;
}

/// Second-moment functional: sin^2(theta_A) sin^2(theta_B) times the
/// duration-weighted variance sums over the two distributions, with the
/// proportionality constant taken as 1. Rank-order diagnostic only.
inline double second_moment_functional(const Eigen::VectorXd& P, const Eigen::VectorXd& Q,
                                       int t, const MassPair& masses) {
  const int n = 2 * t + 1;
  if (P.size() != n || Q.size() != n) {
    throw std::invalid_argument("second_moment_functional: distribution size mismatch");
  }
  double total = 0.0;
  for (int l = 0; l < n; ++l) {
    const int al = std::abs(l - t);
    double m1 = 0.0, m2 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double dur = t - std::max(al, std::abs(j - t));
      m1 += Q[j] * dur;
      m2 += Q[j] * dur * dur;
    }
    total += P[l] * (m2 - m1 * m1);
  }
  const double sa = std::sin(masses.theta_a);
  const double sb = std::sin(masses.theta_b);
  return sa * sa * sb * sb * total;
}

}  // namespace gqwalk
