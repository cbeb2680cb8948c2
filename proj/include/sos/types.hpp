#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sos {

using Cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

constexpr double kPi = 3.14159265358979323846;

/// Thrown on malformed inputs (shape mismatches, bad JSON, invalid enums).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

inline double op_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

/// Largest eigenvalue of a self-adjoint matrix.
inline double lambda_max(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

inline double lambda_min(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// PSD test with scale-aware threshold: lambda_min >= -tol * (1 + ||M||).
bool is_psd(const Mat& h, double tol);

/// PSD square root, clamping slightly negative eigenvalues to zero.
Mat sqrt_psd(const Mat& h);

Mat kron(const Mat& a, const Mat& b);

}  // namespace sos
