#include "sos/types.hpp"

namespace sos {

bool is_psd(const Mat& h, double tol) {
  if (h.rows() != h.cols()) throw InputError("is_psd: non-square input");
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  double scale = 1.0 + es.eigenvalues().cwiseAbs().maxCoeff();
  return es.eigenvalues().minCoeff() >= -tol * scale;
}

Mat sqrt_psd(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace sos
