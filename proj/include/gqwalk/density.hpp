#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gqwalk/gravity.hpp"
#include "gqwalk/linalg.hpp"

namespace gqwalk {

struct Subsystem {
  std::string label;
  int dim;
};

/// Hermitian operator on a declared bipartite/multipartite index structure.
/// Flat indices are row-major over the subsystem list.
class DensityMatrix {
public:
  DensityMatrix(Eigen::MatrixXcd data, std::vector<Subsystem> structure)
      : data_(std::move(data)), structure_(std::move(structure)) {
    long dim = 1;
    for (const auto& s : structure_) dim *= s.dim;
    if (data_.rows() != data_.cols() || data_.rows() != dim) {
      throw std::invalid_argument("DensityMatrix: dimension mismatch with structure");
    }
  }

  const Eigen::MatrixXcd& matrix() const { return data_; }
  const std::vector<Subsystem>& structure() const { return structure_; }
  long dim() const { return data_.rows(); }

  double trace() const { return data_.trace().real(); }

  double hermiticity_defect() const {
    return (data_ - data_.adjoint()).cwiseAbs().maxCoeff();
  }

  /// Eigenvalues, ascending.
  Eigen::VectorXd eigenvalues() const { return hermitian_eigenvalues(data_); }

  /// Partial trace keeping the named subsystems (in their original order).
  DensityMatrix partial_trace_keep(const std::vector<std::string>& keep) const {
    std::vector<int> kept, traced;
    split(keep, kept, traced);
    if (kept.empty() || traced.empty()) {
      throw std::invalid_argument("partial_trace_keep: keep set must be a nonempty proper subset");
    }
    const std::vector<long> strides = row_major_strides();
    long dim_keep = 1, dim_tr = 1;
    for (int s : kept) dim_keep *= structure_[s].dim;
    for (int s : traced) dim_tr *= structure_[s].dim;

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_keep, dim_keep);
    for (long r = 0; r < dim_keep; ++r) {
      const long rbase = embed(r, kept, strides);
      for (long c = 0; c < dim_keep; ++c) {
        const long cbase = embed(c, kept, strides);
        Complex sum(0, 0);
        for (long tr = 0; tr < dim_tr; ++tr) {
          const long off = embed(tr, traced, strides);
          sum += data_(rbase + off, cbase + off);
        }
        out(r, c) = sum;
      }
    }
    std::vector<Subsystem> new_structure;
    for (int s : kept) new_structure.push_back(structure_[s]);
    return DensityMatrix(std::move(out), std::move(new_structure));
  }

  /// Transposes the indices of the named subsystems; trace is unchanged.
  DensityMatrix partial_transpose(const std::vector<std::string>& labels) const {
    std::vector<int> flip, rest;
    split(labels, flip, rest);
    if (flip.size() != labels.size()) {
      throw std::invalid_argument("partial_transpose: unknown subsystem label");
    }
    const std::vector<long> strides = row_major_strides();
    long dim_f = 1;
    for (int s : flip) dim_f *= structure_[s].dim;
    long dim_r = 1;
    for (int s : rest) dim_r *= structure_[s].dim;

    Eigen::MatrixXcd out(data_.rows(), data_.cols());
    for (long rf = 0; rf < dim_f; ++rf) {
      const long rfo = embed(rf, flip, strides);
      for (long cf = 0; cf < dim_f; ++cf) {
        const long cfo = embed(cf, flip, strides);
        for (long rr = 0; rr < dim_r; ++rr) {
          const long rro = embed(rr, rest, strides);
          for (long cr = 0; cr < dim_r; ++cr) {
            const long cro = embed(cr, rest, strides);
            out(cfo + rro, rfo + cro) = data_(rfo + rro, cfo + cro);
          }
        }
      }
    }
    return DensityMatrix(std::move(out), structure_);
  }

  DensityMatrix partial_transpose(const char* label) const {
    return partial_transpose(std::vector<std::string>{label});
  }

private:
  std::vector<long> row_major_strides() const {
    std::vector<long> strides(structure_.size());
    long acc = 1;
    for (int k = static_cast<int>(structure_.size()) - 1; k >= 0; --k) {
      strides[k] = acc;
      acc *= structure_[k].dim;
    }
    return strides;
  }

  // Maps a compact index over the chosen subsystems to its flat-index offset.
  long embed(long compact, const std::vector<int>& subs,
             const std::vector<long>& strides) const {
    long off = 0;
    for (int k = static_cast<int>(subs.size()) - 1; k >= 0; --k) {
      const int s = subs[k];
      off += (compact % structure_[s].dim) * strides[s];
      compact /= structure_[s].dim;
    }
    return off;
  }

  void split(const std::vector<std::string>& named, std::vector<int>& in,
             std::vector<int>& out) const {
    for (int s = 0; s < static_cast<int>(structure_.size()); ++s) {
      const bool hit = std::find(named.begin(), named.end(), structure_[s].label) != named.end();
      (hit ? in : out).push_back(s);
    }
  }

  Eigen::MatrixXcd data_;
  std::vector<Subsystem> structure_;
};

inline std::vector<Subsystem> joint_structure(int t) {
  const int n = 2 * t + 1;
  return {{"posA", n}, {"spinA", 2}, {"posB", n}, {"spinB", 2}};
}

/// |Psi><Psi| of the phased two-walker state, with its four-subsystem structure.
inline DensityMatrix full_density(const JointState& state) {
  Eigen::MatrixXcd rho = state.amp * state.amp.adjoint();
  return DensityMatrix(std::move(rho), joint_structure(state.t));
}

/// Partial trace of |Psi><Psi| over the complement of `keep`, built directly
/// from the pure amplitudes.
inline DensityMatrix reduce_density(const JointState& state,
                                    const std::vector<std::string>& keep) {
  const auto structure = joint_structure(state.t);
  if (keep.empty() || keep.size() >= structure.size()) {
    throw std::invalid_argument("reduce_density: keep set must be a nonempty proper subset");
  }
  std::vector<int> kept, traced;
  for (int s = 0; s < static_cast<int>(structure.size()); ++s) {
    const bool hit = std::find(keep.begin(), keep.end(), structure[s].label) != keep.end();
    (hit ? kept : traced).push_back(s);
  }
  if (kept.size() != keep.size()) {
    throw std::invalid_argument("reduce_density: unknown subsystem label");
  }

  std::vector<long> strides(structure.size());
  long acc = 1;
  for (int k = static_cast<int>(structure.size()) - 1; k >= 0; --k) {
    strides[k] = acc;
    acc *= structure[k].dim;
  }
  auto embed = [&](long compact, const std::vector<int>& subs) {
    long off = 0;
    for (int k = static_cast<int>(subs.size()) - 1; k >= 0; --k) {
      const int s = subs[k];
      off += (compact % structure[s].dim) * strides[s];
      compact /= structure[s].dim;
    }
    return off;
  };

  long dim_keep = 1, dim_tr = 1;
  for (int s : kept) dim_keep *= structure[s].dim;
  for (int s : traced) dim_tr *= structure[s].dim;

  // rho[k,k'] = sum_tau psi(k,tau) conj(psi(k',tau))
  Eigen::MatrixXcd psi(dim_keep, dim_tr);
  for (long k = 0; k < dim_keep; ++k) {
    const long kbase = embed(k, kept);
    for (long tr = 0; tr < dim_tr; ++tr) {
      psi(k, tr) = state.amp[kbase + embed(tr, traced)];
    }
  }
  Eigen::MatrixXcd rho = psi * psi.adjoint();

  std::vector<Subsystem> new_structure;
  for (int s : kept) new_structure.push_back(structure[s]);
  return DensityMatrix(std::move(rho), std::move(new_structure));
}

}  // namespace gqwalk
