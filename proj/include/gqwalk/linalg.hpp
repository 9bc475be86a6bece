#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

namespace gqwalk {

using Complex = std::complex<double>;

/// Thrown when an eigensolver fails to converge.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Eigenvalues of a Hermitian matrix, ascending. Only the lower triangle
/// of the input is referenced.
inline Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix not square");
  }
  const lapack_int n = static_cast<lapack_int>(m.rows());
  if (n == 0) return Eigen::VectorXd();
  Eigen::MatrixXcd work = m;  // zheevd overwrites its input
  Eigen::VectorXd evals(n);
  lapack_int info = LAPACKE_zheevd(
      LAPACK_COL_MAJOR, 'N', 'L', n,
      reinterpret_cast<lapack_complex_double*>(work.data()), n, evals.data());
  if (info > 0) {
    throw NumericalError("zheevd failed to converge (info=" +
                         std::to_string(info) + ", n=" + std::to_string(n) + ")");
  }
  if (info < 0) {
    throw std::logic_error("zheevd: illegal argument " + std::to_string(-info));
  }
  return evals;
}

/// Singular values of a general complex matrix, descending.
inline Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
}

}  // namespace gqwalk
