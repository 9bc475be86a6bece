#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "gqwalk/density.hpp"

namespace gqwalk {

enum class NoiseKind { bit_flip, phase_flip };

/// Per-step flip channel on walker A.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::bit_flip;
  double p = 0.0;

  NoiseSpec() = default;
  NoiseSpec(NoiseKind k, double prob) : kind(k), p(prob) {
    if (!(prob >= 0.0 && prob <= 1.0)) {
      throw std::invalid_argument("NoiseSpec: p must lie in [0, 1]");
    }
  }
};

/// One flip pattern: flips[k] applies the Pauli after walk step k+1.
struct Trajectory {
  std::vector<bool> flips;
  double weight = 1.0;

  int flip_count() const {
    int c = 0;
    for (bool f : flips) c += f ? 1 : 0;
    return c;
  }
};

/// Weighted set of flip patterns. Exact mode enumerates all 2^t patterns;
/// sampled mode draws them reproducibly from the seed with uniform weight.
struct TrajectoryEnsemble {
  enum class Mode { exact, sampled };
  Mode mode = Mode::exact;
  std::vector<Trajectory> trajectories;
  std::uint64_t seed = 0;

  static TrajectoryEnsemble exact(int t, double p) {
    if (t < 0 || t > 30) throw std::invalid_argument("TrajectoryEnsemble: exact mode needs 0 <= t <= 30");
    TrajectoryEnsemble e;
    e.mode = Mode::exact;
    const std::uint64_t count = std::uint64_t{1} << t;
    e.trajectories.reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      Trajectory traj;
      traj.flips.resize(t);
      int flips = 0;
      for (int k = 0; k < t; ++k) {
        const bool f = (mask >> k) & 1;
        traj.flips[k] = f;
        flips += f ? 1 : 0;
      }
      traj.weight = std::pow(p, flips) * std::pow(1.0 - p, t - flips);
      e.trajectories.push_back(std::move(traj));
    }
    return e;
  }

  static TrajectoryEnsemble sampled(int t, double p, int samples, std::uint64_t seed) {
    if (t < 0) throw std::invalid_argument("TrajectoryEnsemble: negative t");
    if (samples < 1) throw std::invalid_argument("TrajectoryEnsemble: samples must be >= 1");
    TrajectoryEnsemble e;
    e.mode = Mode::sampled;
    e.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double w = 1.0 / samples;
    for (int s = 0; s < samples; ++s) {
      Trajectory traj;
      traj.flips.resize(t);
      for (int k = 0; k < t; ++k) traj.flips[k] = u(rng) < p;
      traj.weight = w;
      e.trajectories.push_back(std::move(traj));
    }
    return e;
  }
};

/// Applies the Pauli flip to the spin register at every occupied site.
inline void apply_flip(WalkState& state, NoiseKind kind) {
  for (int x = -state.step(); x <= state.step(); ++x) {
    if (kind == NoiseKind::bit_flip) {
      std::swap(state.amp(x, Spin::up), state.amp(x, Spin::down));
    } else {
      state.amp(x, Spin::down) = -state.amp(x, Spin::down);
    }
  }
}

/// Walk evolution with the trajectory's flips interleaved after each full
/// coin-and-shift step. Output stays pure and normalized.
inline WalkState noisy_walk(const SpinState& initial_spin, const CoinSpec& coin,
                            NoiseKind kind, const Trajectory& traj) {
  const Eigen::Matrix2cd c = coin.matrix();
  WalkState state = WalkState::localized(initial_spin);
  for (std::size_t k = 0; k < traj.flips.size(); ++k) {
    state = shift_step(coin_step(state, c));
    if (traj.flips[k]) apply_flip(state, kind);
  }
  return state;
}

/// rho = sum_traj w |Psi_G^traj><Psi_G^traj| where each trajectory's
/// walker-A state is phased against the same noiseless walker B. Assembled
/// through the trajectory-averaged walker-A density; identical by linearity.
inline DensityMatrix ensemble_joint_density(const SpinState& spin_a, const SpinState& spin_b,
                                            const MassPair& masses, const GeometrySpec& geom,
                                            const NoiseSpec& noise, int t,
                                            const TrajectoryEnsemble& ensemble) {
  const int n = 2 * t + 1;
  const int side = 2 * n;

  // Deduplicate flip patterns; repeated sampled draws collapse to one walk.
  std::map<std::vector<bool>, double> weights;
  for (const auto& traj : ensemble.trajectories) {
    if (static_cast<int>(traj.flips.size()) != t) {
      throw std::invalid_argument("ensemble_joint_density: trajectory length mismatch");
    }
    weights[traj.flips] += traj.weight;
  }

  Eigen::MatrixXcd rho_a = Eigen::MatrixXcd::Zero(side, side);
  for (const auto& [flips, w] : weights) {
    Trajectory traj{flips, w};
    const WalkState psi = noisy_walk(spin_a, CoinSpec(masses.theta_a), noise.kind, traj);
    Eigen::Map<const Eigen::VectorXcd> v(psi.data().data(), side);
    rho_a.noalias() += w * (v * v.adjoint());
  }

  const WalkState walk_b = evolve(spin_b, CoinSpec(masses.theta_b), t);
  Eigen::Map<const Eigen::VectorXcd> phi(walk_b.data().data(), side);
  const PhaseField field = build_phase_field(t, geom, masses);

  // rho[(a,b),(a',b')] = u(a,b) conj(u(a',b')) rho_a[a,a'] with
  // u(a,b) = e^{-i g_ij} phi_b folding the phase and walker-B amplitude.
  Eigen::MatrixXcd u(side, side);
  for (int a = 0; a < side; ++a) {
    for (int b = 0; b < side; ++b) {
      u(a, b) = std::exp(Complex(0, -field.g(a / 2, b / 2))) * phi[b];
    }
  }
  Eigen::MatrixXcd rho(side * side, side * side);
  for (int a = 0; a < side; ++a) {
    for (int b = 0; b < side; ++b) {
      const long row = static_cast<long>(a) * side + b;
      const Complex ur = u(a, b);
      for (int a2 = 0; a2 < side; ++a2) {
        const Complex ra = rho_a(a, a2) * ur;
        for (int b2 = 0; b2 < side; ++b2) {
          rho(row, static_cast<long>(a2) * side + b2) = ra * std::conj(u(a2, b2));
        }
      }
    }
  }
  return DensityMatrix(std::move(rho), joint_structure(t));
}

}  // namespace gqwalk
