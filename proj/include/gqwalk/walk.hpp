#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "gqwalk/linalg.hpp"

namespace gqwalk {

enum class Spin : int { up = 0, down = 1 };

/// Coin rotation angle, doubles as the mass parameter via sin(theta).
struct CoinSpec {
  double theta = 0.0;

  CoinSpec() = default;
  explicit CoinSpec(double th) : theta(th) {
    if (!(th >= 0.0 && th <= std::numbers::pi / 2)) {
      throw std::invalid_argument("CoinSpec: theta must lie in [0, pi/2]");
    }
  }

  Eigen::Matrix2cd matrix() const {
    Eigen::Matrix2cd c;
    c << std::cos(theta), std::sin(theta),
        -std::sin(theta), std::cos(theta);
    return c;
  }
};

inline Eigen::Matrix2cd hadamard_coin() {
  Eigen::Matrix2cd h;
  const double r = 1.0 / std::sqrt(2.0);
  h << r, r, r, -r;
  return h;
}

/// Internal two-level state used as a walk's initial condition.
struct SpinState {
  Complex up{1.0, 0.0};
  Complex down{0.0, 0.0};

  double norm() const { return std::norm(up) + std::norm(down); }
};

inline const SpinState kSpinUp{Complex(1, 0), Complex(0, 0)};
inline const SpinState kSpinDown{Complex(0, 0), Complex(1, 0)};
/// (|up> + i|down>)/sqrt(2), the left-right symmetric initial condition.
inline const SpinState kSpinSymmetric{Complex(1.0 / std::sqrt(2.0), 0),
                                      Complex(0, 1.0 / std::sqrt(2.0))};
inline const SpinState kSpinAntisymmetric{Complex(1.0 / std::sqrt(2.0), 0),
                                          Complex(0, -1.0 / std::sqrt(2.0))};

/// Amplitude field of a single walker over the light-cone support
/// [-t, t] x {up, down}. Flat layout: index = 2*(x + t) + spin.
class WalkState {
public:
  explicit WalkState(int t) : t_(t), amp_(2 * (2 * t + 1), Complex(0, 0)) {
    if (t < 0) throw std::invalid_argument("WalkState: negative step count");
  }

  static WalkState localized(const SpinState& spin) {
    WalkState s(0);
    s.amp_[0] = spin.up;
    s.amp_[1] = spin.down;
    return s;
  }

  int step() const { return t_; }
  int num_sites() const { return 2 * t_ + 1; }
  int dim() const { return static_cast<int>(amp_.size()); }

  Complex amp(int x, Spin s) const { return amp_[index(x, s)]; }
  Complex& amp(int x, Spin s) { return amp_[index(x, s)]; }

  const std::vector<Complex>& data() const { return amp_; }
  std::vector<Complex>& data() { return amp_; }

  double norm() const {
    double n = 0.0;
    for (const auto& a : amp_) n += std::norm(a);
    return n;
  }

  int index(int x, Spin s) const {
    if (x < -t_ || x > t_) throw std::out_of_range("WalkState: position outside light cone");
    return 2 * (x + t_) + static_cast<int>(s);
  }

private:
  int t_;
  std::vector<Complex> amp_;
};

/// Applies the coin to the spin doublet at every site. Positions unchanged.
inline WalkState coin_step(const WalkState& state, const Eigen::Matrix2cd& coin) {
  WalkState out(state.step());
  for (int x = -state.step(); x <= state.step(); ++x) {
    const Complex u = state.amp(x, Spin::up);
    const Complex d = state.amp(x, Spin::down);
    out.amp(x, Spin::up) = coin(0, 0) * u + coin(0, 1) * d;
    out.amp(x, Spin::down) = coin(1, 0) * u + coin(1, 1) * d;
  }
  return out;
}

/// up moves x -> x-1, down moves x -> x+1; support grows one site each side.
inline WalkState shift_step(const WalkState& state) {
  WalkState out(state.step() + 1);
  for (int x = -state.step(); x <= state.step(); ++x) {
    out.amp(x - 1, Spin::up) = state.amp(x, Spin::up);
    out.amp(x + 1, Spin::down) = state.amp(x, Spin::down);
  }
  return out;
}

/// `steps` applications of (shift . coin) to a walker localized at the origin.
inline WalkState evolve(const SpinState& initial_spin, const Eigen::Matrix2cd& coin,
                        int steps) {
  if (steps < 0) throw std::invalid_argument("evolve: steps must be >= 0");
  WalkState state = WalkState::localized(initial_spin);
  for (int k = 0; k < steps; ++k) {
    state = shift_step(coin_step(state, coin));
  }
  return state;
}

inline WalkState evolve(const SpinState& initial_spin, const CoinSpec& coin, int steps) {
  return evolve(initial_spin, coin.matrix(), steps);
}

/// P(x) = |amp(x,up)|^2 + |amp(x,down)|^2, indexed by x + t.
inline Eigen::VectorXd position_distribution(const WalkState& state) {
  Eigen::VectorXd p(state.num_sites());
  for (int x = -state.step(); x <= state.step(); ++x) {
    p[x + state.step()] =
        std::norm(state.amp(x, Spin::up)) + std::norm(state.amp(x, Spin::down));
  }
  return p;
}

/// k-th central moment of the position distribution.
inline double central_moment(const WalkState& state, int k) {
  if (k < 1) throw std::invalid_argument("central_moment: k must be >= 1");
  const Eigen::VectorXd p = position_distribution(state);
  double mean = 0.0;
  for (int x = -state.step(); x <= state.step(); ++x) mean += p[x + state.step()] * x;
  double m = 0.0;
  for (int x = -state.step(); x <= state.step(); ++x) {
    m += p[x + state.step()] * std::pow(x - mean, k);
  }
  return m;
}

}  // namespace gqwalk
