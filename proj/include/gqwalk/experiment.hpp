#pragma once

#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gqwalk/entanglement.hpp"
#include "gqwalk/noise.hpp"

namespace gqwalk {

/// Thrown for invalid experiment configuration; the message names the field.
class ConfigError : public std::invalid_argument {
public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

enum class ExperimentKind { single_walk, entanglement_curve, theta_sweep, noise_curve, moment_analysis };
enum class OutputFormat { csv, json };

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::entanglement_curve;
  double theta_a = std::numbers::pi / 4;
  double theta_b = std::numbers::pi / 6;
  SpinState spin_a = kSpinUp;
  SpinState spin_b = kSpinDown;
  int steps = 15;
  int separation = 100;  // L
  double step_ratio = 1.0;
  std::optional<NoiseSpec> noise;
  int samples = 4096;
  std::uint64_t seed = 0;
  std::vector<double> theta_grid;  // sweep / moment grids; defaulted when empty
  std::string output_path;  // empty = stdout
  OutputFormat output_format = OutputFormat::csv;

  void validate() const {
    if (steps < 1) throw ConfigError("steps: must be >= 1");
    if (separation <= 2 * steps) throw ConfigError("separation: must exceed 2*steps");
    if (!(step_ratio > 0)) throw ConfigError("ratio: must be positive");
    auto angle_ok = [](double th) { return th >= 0.0 && th <= std::numbers::pi / 2; };
    if (!angle_ok(theta_a)) throw ConfigError("theta-a: must lie in [0, pi/2]");
    if (!angle_ok(theta_b)) throw ConfigError("theta-b: must lie in [0, pi/2]");
    for (double th : theta_grid) {
      if (!angle_ok(th)) throw ConfigError("grid: angles must lie in [0, pi/2]");
    }
    if (std::abs(spin_a.norm() - 1.0) > 1e-12) throw ConfigError("spin-a: not normalized");
    if (std::abs(spin_b.norm() - 1.0) > 1e-12) throw ConfigError("spin-b: not normalized");
    if (noise && !(noise->p >= 0.0 && noise->p <= 1.0)) throw ConfigError("noise-p: must lie in [0, 1]");
    if (samples < 1) throw ConfigError("samples: must be >= 1");
  }

  std::vector<double> grid_or_default() const {
    if (!theta_grid.empty()) return theta_grid;
    const double pi = std::numbers::pi;
    return {pi / 12, pi / 6, pi / 4, pi / 3, 5 * pi / 12};
  }
};

/// One emitted record; `columns` fixes the schema per experiment kind.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

inline ResultTable run_single_walk(const ExperimentConfig& config) {
  config.validate();
  const WalkState state = evolve(config.spin_a, CoinSpec(config.theta_a), config.steps);
  const Eigen::VectorXd p = position_distribution(state);
  ResultTable table;
  table.columns = {"x", "p"};
  for (int x = -config.steps; x <= config.steps; ++x) {
    table.rows.push_back({static_cast<double>(x), p[x + config.steps]});
  }
  return table;
}

namespace detail {

struct StepMeasures {
  double ee;
  double neg_full;
  double neg_traced;
};

inline StepMeasures measures_at(const ExperimentConfig& config, const MassPair& masses, int t) {
  const GeometrySpec geom(config.separation, config.step_ratio);
  const WalkState wa = evolve(config.spin_a, CoinSpec(masses.theta_a), t);
  const WalkState wb = evolve(config.spin_b, CoinSpec(masses.theta_b), t);
  const JointState joint = build_joint_state(wa, wb, build_phase_field(t, geom, masses));
  StepMeasures m;
  m.ee = pure_entanglement_entropy(joint);
  m.neg_full = pure_negativity(joint);
  const DensityMatrix spatial = reduce_density(joint, {"posA", "posB"});
  m.neg_traced = negativity(spatial, "posB");
  return m;
}

}  // namespace detail

inline ResultTable run_entanglement_curve(const ExperimentConfig& config) {
  config.validate();
  if (config.noise) throw ConfigError("noise: not applicable to the entanglement curve");
  const MassPair masses(config.theta_a, config.theta_b);
  ResultTable table;
  table.columns = {"t", "ee_nats", "neg_full", "neg_traced"};
  for (int t = 1; t <= config.steps; ++t) {
    const auto m = detail::measures_at(config, masses, t);
    table.rows.push_back({static_cast<double>(t), m.ee, m.neg_full, m.neg_traced});
  }
  return table;
}

inline ResultTable run_theta_sweep(const ExperimentConfig& config) {
  config.validate();
  const std::vector<double> grid = config.grid_or_default();
  ResultTable table;
  table.columns = {"theta_a", "theta_b", "ee_nats", "neg_full"};
  for (double ta : grid) {
    for (double tb : grid) {
      const MassPair masses(ta, tb);
      const auto m = detail::measures_at(config, masses, config.steps);
      table.rows.push_back({ta, tb, m.ee, m.neg_full});
    }
  }
  return table;
}

inline ResultTable run_noise_curve(const ExperimentConfig& config) {
  config.validate();
  if (!config.noise) throw ConfigError("noise: required for the noise curve");
  const MassPair masses(config.theta_a, config.theta_b);
  const GeometrySpec geom(config.separation, config.step_ratio);
  ResultTable table;
  table.columns = {"t", "neg_noiseless", "neg_noisy"};
  for (int t = 1; t <= config.steps; ++t) {
    const auto clean = detail::measures_at(config, masses, t);
    const TrajectoryEnsemble ensemble =
        t <= 12 ? TrajectoryEnsemble::exact(t, config.noise->p)
                : TrajectoryEnsemble::sampled(t, config.noise->p, config.samples, config.seed);
    const DensityMatrix rho = ensemble_joint_density(config.spin_a, config.spin_b, masses,
                                                     geom, *config.noise, t, ensemble);
    const double noisy = negativity(rho, {"posB", "spinB"});
    table.rows.push_back({static_cast<double>(t), clean.neg_full, noisy});
  }
  return table;
}

inline ResultTable run_moment_analysis(const ExperimentConfig& config) {
  config.validate();
  ResultTable table;
  table.columns = {"theta", "m2", "sin2_m2"};
  for (double th : config.grid_or_default()) {
    const WalkState w = evolve(config.spin_a, CoinSpec(th), config.steps);
    const double m2 = central_moment(w, 2);
    const double s = std::sin(th);
    table.rows.push_back({th, m2, s * s * m2});
  }
  return table;
}

inline ResultTable run_experiment(const ExperimentConfig& config) {
  switch (config.experiment) {
    case ExperimentKind::single_walk: return run_single_walk(config);
    case ExperimentKind::entanglement_curve: return run_entanglement_curve(config);
    case ExperimentKind::theta_sweep: return run_theta_sweep(config);
    case ExperimentKind::noise_curve: return run_noise_curve(config);
    case ExperimentKind::moment_analysis: return run_moment_analysis(config);
  }
  throw ConfigError("experiment: unknown kind");
}

inline std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline std::string to_csv(const ResultTable& table) {
  std::ostringstream out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "," : "") << format_value(row[c]);
    }
    out << "\n";
  }
  return out.str();
}

/// Same rows as the CSV, as a JSON array of objects.
inline std::string to_json(const ResultTable& table) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = row[c];
    rows.push_back(std::move(obj));
  }
  return rows.dump(2) + "\n";
}

inline std::string render(const ResultTable& table, OutputFormat format) {
  return format == OutputFormat::csv ? to_csv(table) : to_json(table);
}

inline void write_output(const ResultTable& table, const ExperimentConfig& config) {
  const std::string text = render(table, config.output_format);
  if (config.output_path.empty() || config.output_path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    std::ofstream f(config.output_path, std::ios::binary);
    if (!f) throw ConfigError("out: cannot open '" + config.output_path + "'");
    f << text;
  }
}

/// Accepts plain radians or pi fractions: "pi/6", "5pi/12", "0.25pi".
inline double parse_angle(const std::string& text) {
  const double pi = std::numbers::pi;
  const auto pos = text.find("pi");
  try {
    if (pos == std::string::npos) return std::stod(text);
    const std::string pre = text.substr(0, pos);
    const std::string post = text.substr(pos + 2);
    double value = pre.empty() ? pi : std::stod(pre) * pi;
    if (!post.empty()) {
      if (post[0] != '/') throw ConfigError("angle: malformed '" + text + "'");
      value /= std::stod(post.substr(1));
    }
    return value;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("angle: cannot parse '" + text + "'");
  }
}

/// Named initial spins: up, down, up+id ((up+i down)/sqrt2), up-id.
inline SpinState parse_spin(const std::string& text) {
  if (text == "up" || text == "u") return kSpinUp;
  if (text == "down" || text == "d") return kSpinDown;
  if (text == "up+id") return kSpinSymmetric;
  if (text == "up-id") return kSpinAntisymmetric;
  throw ConfigError("spin: unknown state '" + text + "' (expected up, down, up+id, up-id)");
}

inline NoiseKind parse_noise_kind(const std::string& text) {
  if (text == "bit_flip" || text == "bit") return NoiseKind::bit_flip;
  if (text == "phase_flip" || text == "phase") return NoiseKind::phase_flip;
  throw ConfigError("noise-kind: unknown kind '" + text + "'");
}

}  // namespace gqwalk
