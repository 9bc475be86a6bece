#include <numbers>
#include <random>

#include <doctest.h>

#include "gqwalk/walk.hpp"
#include "support/dense_reference.hpp"

using namespace gqwalk;

namespace {
constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

SpinState random_spin(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Complex u(n(rng), n(rng)), d(n(rng), n(rng));
  const double norm = std::sqrt(std::norm(u) + std::norm(d));
  return SpinState{u / norm, d / norm};
}
}  // namespace

TEST_CASE("coin matrices are unitary") {
  for (double theta : {0.0, 0.3, kPi / 4, kPi / 2}) {
    const Eigen::Matrix2cd c = CoinSpec(theta).matrix();
    CHECK((c.adjoint() * c - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-14);
  }
  const Eigen::Matrix2cd h = hadamard_coin();
  CHECK((h.adjoint() * h - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("coin_step: Hadamard on localized up state") {
  const WalkState s = coin_step(WalkState::localized(kSpinUp), hadamard_coin());
  CHECK(std::abs(s.amp(0, Spin::up) - Complex(kInvSqrt2, 0)) < 1e-15);
  CHECK(std::abs(s.amp(0, Spin::down) - Complex(kInvSqrt2, 0)) < 1e-15);
}

TEST_CASE("coin_step: C(0) is the identity") {
  std::mt19937_64 rng(7);
  const WalkState s = evolve(random_spin(rng), hadamard_coin(), 3);
  const WalkState c = coin_step(s, CoinSpec(0.0).matrix());
  for (int x = -3; x <= 3; ++x) {
    for (Spin sp : {Spin::up, Spin::down}) {
      CHECK(std::abs(c.amp(x, sp) - s.amp(x, sp)) < 1e-15);
    }
  }
}

TEST_CASE("coin_step: C(pi/4) on up gives the first column") {
  const WalkState s = coin_step(WalkState::localized(kSpinUp), CoinSpec(kPi / 4).matrix());
  CHECK(std::abs(s.amp(0, Spin::up) - Complex(std::cos(kPi / 4), 0)) < 1e-15);
  CHECK(std::abs(s.amp(0, Spin::down) - Complex(-std::sin(kPi / 4), 0)) < 1e-15);
}

TEST_CASE("shift_step moves up left and down right") {
  SUBCASE("pure up") {
    const WalkState s = shift_step(WalkState::localized(kSpinUp));
    CHECK(std::abs(s.amp(-1, Spin::up) - Complex(1, 0)) < 1e-15);
    CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("pure down") {
    const WalkState s = shift_step(WalkState::localized(kSpinDown));
    CHECK(std::abs(s.amp(1, Spin::down) - Complex(1, 0)) < 1e-15);
  }
  SUBCASE("superposition is shifted linearly") {
    const WalkState s =
        shift_step(WalkState::localized(SpinState{kInvSqrt2, kInvSqrt2}));
    CHECK(std::abs(s.amp(-1, Spin::up) - Complex(kInvSqrt2, 0)) < 1e-15);
    CHECK(std::abs(s.amp(1, Spin::down) - Complex(kInvSqrt2, 0)) < 1e-15);
  }
}

TEST_CASE("evolve: two Hadamard steps from up") {
  const WalkState s = evolve(kSpinUp, hadamard_coin(), 2);
  const Eigen::VectorXd p = position_distribution(s);
  CHECK(p[0] == doctest::Approx(0.25).epsilon(1e-12));   // x = -2
  CHECK(p[2] == doctest::Approx(0.5).epsilon(1e-12));    // x = 0
  CHECK(p[4] == doctest::Approx(0.25).epsilon(1e-12));   // x = +2
}

TEST_CASE("evolve: zero steps returns the localized state") {
  const WalkState s = evolve(kSpinSymmetric, hadamard_coin(), 0);
  CHECK(s.step() == 0);
  CHECK(std::abs(s.amp(0, Spin::up) - kSpinSymmetric.up) < 1e-15);
  CHECK(std::abs(s.amp(0, Spin::down) - kSpinSymmetric.down) < 1e-15);
}

TEST_CASE("evolve rejects negative step counts") {
  CHECK_THROWS_AS(evolve(kSpinUp, hadamard_coin(), -1), std::invalid_argument);
}

TEST_CASE("position_distribution: one Hadamard step is 1/2 left, 1/2 right") {
  const Eigen::VectorXd p = position_distribution(evolve(kSpinUp, hadamard_coin(), 1));
  CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p[2] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("position_distribution: initial state is a point mass") {
  const Eigen::VectorXd p = position_distribution(WalkState::localized(kSpinDown));
  CHECK(p[0] == doctest::Approx(1.0));
}

TEST_CASE("parity: sites of the wrong parity carry no amplitude") {
  std::mt19937_64 rng(11);
  for (int t : {4, 7, 16}) {
    const WalkState s = evolve(random_spin(rng), CoinSpec(0.9).matrix(), t);
    for (int x = -t; x <= t; ++x) {
      if ((x + t) % 2 != 0) {
        CHECK(std::abs(s.amp(x, Spin::up)) <= 1e-14);
        CHECK(std::abs(s.amp(x, Spin::down)) <= 1e-14);
      }
    }
  }
}

TEST_CASE("unitarity: norm drift stays below 1e-12 up to t = 200") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(0.0, kPi / 2);
  for (int rep = 0; rep < 3; ++rep) {
    const WalkState s = evolve(random_spin(rng), CoinSpec(angle(rng)).matrix(), 200);
    CHECK(std::abs(s.norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("oracle: evolve matches the dense walk unitary for t <= 4") {
  std::mt19937_64 rng(23);
  for (const auto& coin : {hadamard_coin(), CoinSpec(kPi / 5).matrix()}) {
    for (int t = 0; t <= 4; ++t) {
      const SpinState spin = random_spin(rng);
      Eigen::VectorXcd v = testing::dense_localized(t, spin);
      const Eigen::MatrixXcd w = testing::dense_walk_unitary(t, coin);
      for (int k = 0; k < t; ++k) v = w * v;
      const WalkState s = evolve(spin, coin, t);
      for (int idx = 0; idx < s.dim(); ++idx) {
        CHECK(std::abs(v[idx] - s.data()[idx]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("symmetric initial spin gives a reflection-symmetric walk at t = 100") {
  const Eigen::VectorXd p = position_distribution(evolve(kSpinSymmetric, hadamard_coin(), 100));
  double worst = 0.0;
  for (int x = 0; x <= 100; ++x) {
    worst = std::max(worst, std::abs(p[100 + x] - p[100 - x]));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("central_moment basics") {
  CHECK(central_moment(WalkState::localized(kSpinUp), 2) == doctest::Approx(0.0));
  CHECK(central_moment(evolve(kSpinUp, hadamard_coin(), 1), 2) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(central_moment(WalkState::localized(kSpinUp), 0), std::invalid_argument);
}

TEST_CASE("even central moments agree for up and down initial spins at t = 15") {
  for (const auto& coin : {hadamard_coin(), CoinSpec(kPi / 4).matrix()}) {
    const WalkState su = evolve(kSpinUp, coin, 15);
    const WalkState sd = evolve(kSpinDown, coin, 15);
    CHECK(std::abs(central_moment(su, 2) - central_moment(sd, 2)) <= 1e-10);
    CHECK(std::abs(central_moment(su, 4) - central_moment(sd, 4)) <= 1e-8);
  }
}

TEST_CASE("even moments about the origin are independent of the initial spin") {
  // The spin-independence of even moments holds exactly for moments about
  // the origin; about the mean it holds only for the up/down mirror pair.
  std::mt19937_64 rng(41);
  auto origin_m2 = [](const WalkState& s) {
    const Eigen::VectorXd p = position_distribution(s);
    double m = 0.0;
    for (int x = -s.step(); x <= s.step(); ++x) m += p[x + s.step()] * x * x;
    return m;
  };
  const Eigen::Matrix2cd coin = CoinSpec(1.1).matrix();
  const double ref = origin_m2(evolve(kSpinUp, coin, 15));
  for (int rep = 0; rep < 5; ++rep) {
    CHECK(std::abs(origin_m2(evolve(random_spin(rng), coin, 15)) - ref) <= 1e-10);
  }
}
