#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "gqwalk/walk.hpp"

namespace gqwalk {

/// Geometry of the two parallel walk lines. `separation` is the
/// perpendicular distance L in lattice units; `step_ratio` is N_t/N_d.
struct GeometrySpec {
  int separation = 100;
  double step_ratio = 1.0;

  GeometrySpec() = default;
  GeometrySpec(int L, double ratio = 1.0) : separation(L), step_ratio(ratio) {
    if (L <= 0) throw std::invalid_argument("GeometrySpec: separation must be positive");
    if (!(ratio > 0.0)) throw std::invalid_argument("GeometrySpec: step_ratio must be positive");
  }
};

/// Mass of a walker in Planck units, sin(theta).
inline double mass_from_theta(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2)) {
    throw std::invalid_argument("mass_from_theta: theta must lie in [0, pi/2]");
  }
  return std::sin(theta);
}

/// Coin angles of the two walkers, acting as their mass parameters.
struct MassPair {
  double theta_a = 0.0;
  double theta_b = 0.0;

  MassPair() = default;
  MassPair(double a, double b) : theta_a(a), theta_b(b) {
    mass_from_theta(a);
    mass_from_theta(b);
  }

  /// kappa = step_ratio * sin(theta_a) * sin(theta_b)
  double coupling(const GeometrySpec& geom) const {
    return geom.step_ratio * std::sin(theta_a) * std::sin(theta_b);
  }
};

/// Euclidean distance between site i on line A and site j on line B.
inline double pair_distance(int i, int j, const GeometrySpec& geom) {
  const double dx = static_cast<double>(i) - static_cast<double>(j);
  const double L = static_cast<double>(geom.separation);
  return std::sqrt(L * L + dx * dx);
}

/// Accumulated gravitational phase for the joint component (i, j) after t
/// steps: -kappa * (t - max(|i|,|j|)) / d_ij. The pair interacts only once
/// both components exist, and the constant retardation phase is dropped.
inline double phase_at(int i, int j, int t, const GeometrySpec& geom,
                       const MassPair& masses) {
  if (std::abs(i) > t || std::abs(j) > t) {
    throw std::invalid_argument("phase_at: position outside the light cone");
  }
  const int duration = t - std::max(std::abs(i), std::abs(j));
  return -masses.coupling(geom) * duration / pair_distance(i, j, geom);
}

/// Matrix of phases g(i, j) over the full joint support, g(i+t, j+t) in storage.
struct PhaseField {
  int t = 0;
  Eigen::MatrixXd g;

  double at(int i, int j) const { return g(i + t, j + t); }
};

inline PhaseField build_phase_field(int t, const GeometrySpec& geom,
                                    const MassPair& masses) {
  if (t < 0) throw std::invalid_argument("build_phase_field: t must be >= 0");
  PhaseField field;
  field.t = t;
  field.g.resize(2 * t + 1, 2 * t + 1);
  for (int i = -t; i <= t; ++i) {
    for (int j = -t; j <= t; ++j) {
      field.g(i + t, j + t) = phase_at(i, j, t, geom, masses);
    }
  }
  return field;
}

/// Phased two-walker state. Flat layout over (i, s_A, j, s_B):
/// index = a * 2*(2t+1) + b with a = 2*(i+t)+s_A, b = 2*(j+t)+s_B.
struct JointState {
  int t = 0;
  Eigen::VectorXcd amp;

  int side_dim() const { return 2 * (2 * t + 1); }
  Complex at(int i, Spin sa, int j, Spin sb) const {
    const int a = 2 * (i + t) + static_cast<int>(sa);
    const int b = 2 * (j + t) + static_cast<int>(sb);
    return amp[a * side_dim() + b];
  }
  double norm() const { return amp.squaredNorm(); }
};

/// amplitude(i,sA,j,sB) = exp(-i g_ij) * ampA(i,sA) * ampB(j,sB).
inline JointState build_joint_state(const WalkState& walk_a, const WalkState& walk_b,
                                    const PhaseField& field) {
  if (walk_a.step() != walk_b.step() || walk_a.step() != field.t) {
    throw std::invalid_argument("build_joint_state: mismatched step counts");
  }
  const int t = field.t;
  const int side = 2 * (2 * t + 1);
  JointState joint;
  joint.t = t;
  joint.amp.resize(side * side);
  for (int i = -t; i <= t; ++i) {
    for (int sa = 0; sa < 2; ++sa) {
      const Complex pa = walk_a.amp(i, static_cast<Spin>(sa));
      const int a = 2 * (i + t) + sa;
      for (int j = -t; j <= t; ++j) {
        const Complex phase = std::exp(Complex(0, -field.g(i + t, j + t)));
        const Complex pre = phase * pa;
        for (int sb = 0; sb < 2; ++sb) {
          const int b = 2 * (j + t) + sb;
          joint.amp[a * side + b] = pre * walk_b.amp(j, static_cast<Spin>(sb));
        }
      }
    }
  }
  return joint;
}

}  // namespace gqwalk
