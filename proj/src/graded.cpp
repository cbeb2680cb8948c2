#include "sos/graded.hpp"

#include <algorithm>

#include <unsupported/Eigen/MatrixFunctions>

#include "sos/rng.hpp"

namespace sos {

GradedDim GradedDim::diag(int p, int q) {
  if (p < 0 || q < 0 || p + q < 1)
    throw InputError("GradedDim: need p, q >= 0 and p + q >= 1");
  GradedDim d;
  d.kind_ = Kind::Diag;
  d.p_ = p;
  d.q_ = q;
  d.size_ = p + q;
  d.eps_ = Mat::Identity(d.size_, d.size_);
  for (int i = p; i < d.size_; ++i) d.eps_(i, i) = -1.0;
  return d;
}

GradedDim GradedDim::swap(int m) {
  if (m < 1) throw InputError("GradedDim::swap: need m >= 1");
  GradedDim d;
  d.kind_ = Kind::Swap;
  d.p_ = m;
  d.q_ = m;
  d.size_ = 2 * m;
  d.eps_ = Mat::Zero(d.size_, d.size_);
  d.eps_.block(0, m, m, m) = Mat::Identity(m, m);
  d.eps_.block(m, 0, m, m) = Mat::Identity(m, m);
  return d;
}

GradedDim GradedDim::product(const GradedDim& a, const GradedDim& b) {
  GradedDim d;
  d.kind_ = Kind::Explicit;
  d.size_ = a.size() * b.size();
  d.eps_ = kron(a.epsilon(), b.epsilon());
  // p/q only informative here: dimensions of the +1 / -1 eigenspaces
  d.p_ = a.p() * b.p() + a.q() * b.q();
  d.q_ = a.p() * b.q() + a.q() * b.p();
  return d;
}

Mat GradedDim::even_proj() const {
  return (Mat::Identity(size_, size_) + eps_) / 2.0;
}

Mat GradedDim::odd_proj() const {
  return (Mat::Identity(size_, size_) - eps_) / 2.0;
}

bool GradedDim::operator==(const GradedDim& o) const {
  return size_ == o.size_ && (eps_ - o.eps_).cwiseAbs().maxCoeff() == 0.0;
}

GradedOperator::GradedOperator(GradedDim d, Mat m) : dim(d), data(std::move(m)) {
  if (data.rows() != dim.size() || data.cols() != dim.size())
    throw InputError("GradedOperator: data size does not match grading");
  if (!data.allFinite())
    throw InputError("GradedOperator: non-finite entries");
}

GradedOperator GradedOperator::identity(const GradedDim& d) {
  return {d, Mat::Identity(d.size(), d.size())};
}

GradedOperator GradedOperator::epsilon(const GradedDim& d) {
  return {d, d.epsilon()};
}

GradedOperator GradedOperator::zero(const GradedDim& d) {
  return {d, Mat::Zero(d.size(), d.size())};
}

OmegaUnitary::OmegaUnitary(GradedDim d, Cx w0, Cx w1)
    : dim(d), omega0(w0), omega1(w1) {
  if (std::abs(std::abs(w0) - 1.0) > 1e-12 ||
      std::abs(std::abs(w1) - 1.0) > 1e-12)
    throw InputError("OmegaUnitary: omega0/omega1 must be unimodular");
}

Mat OmegaUnitary::matrix() const {
  return omega0 * dim.even_proj() + omega1 * dim.odd_proj();
}

AmplifiedOperator::AmplifiedOperator(int n, GradedDim d, Mat m)
    : level(n), base(d), data(std::move(m)) {
  if (n < 1) throw InputError("AmplifiedOperator: level must be >= 1");
  if (data.rows() != Eigen::Index(n) * d.size() || data.rows() != data.cols())
    throw InputError("AmplifiedOperator: data size does not match n*(p+q)");
}

Mat AmplifiedOperator::epsilon() const {
  return kron(Mat::Identity(level, level), base.epsilon());
}

GradedOperator superinvolve(const GradedOperator& x) {
  const Mat& e = x.dim.epsilon();
  return {x.dim, e * x.data.adjoint() * e};
}

AmplifiedOperator superinvolve(const AmplifiedOperator& x) {
  Mat e = x.epsilon();
  return {x.level, x.base, e * x.data.adjoint() * e};
}

GradedOperator omega_involve(const GradedOperator& x, const OmegaUnitary& w) {
  if (!(x.dim == w.dim)) throw InputError("omega_involve: dim mismatch");
  Mat wm = w.matrix();
  return {x.dim, wm * x.data.adjoint() * wm};
}

GradedOperator even_part(const GradedOperator& x) {
  const Mat& e = x.dim.epsilon();
  return {x.dim, (x.data + e * x.data * e) / 2.0};
}

GradedOperator odd_part(const GradedOperator& x) {
  const Mat& e = x.dim.epsilon();
  return {x.dim, (x.data - e * x.data * e) / 2.0};
}

bool is_hermitian(const GradedOperator& x, double tol) {
  return max_abs(x.data - superinvolve(x).data) <= tol;
}

bool is_omega_hermitian(const GradedOperator& x, const OmegaUnitary& w,
                        double tol) {
  return max_abs(x.data - omega_involve(x, w).data) <= tol;
}

std::vector<Cx> graded_spectrum(const GradedOperator& x) {
  Mat ex = x.dim.epsilon() * x.data;
  std::vector<Cx> out;
  if (max_abs(ex - ex.adjoint()) <= 1e-12 * (1.0 + max_abs(ex))) {
    Eigen::SelfAdjointEigenSolver<Mat> es(ex, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      out.emplace_back(es.eigenvalues()(i), 0.0);
  } else {
    Eigen::ComplexEigenSolver<Mat> es(ex, false);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      out.push_back(es.eigenvalues()(i));
  }
  std::sort(out.begin(), out.end(), [](Cx a, Cx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

bool is_epsilon_positive(const GradedOperator& x, double tol) {
  if (!is_hermitian(x, tol)) return false;
  Mat ex = x.dim.epsilon() * x.data;
  return is_psd((ex + ex.adjoint()) / 2.0, tol);
}

GradedOperator iota(const GradedOperator& x) {
  return {x.dim, even_part(x).data + Cx(0, 1) * odd_part(x).data};
}

GradedOperator iota_inverse(const GradedOperator& y) {
  return {y.dim, even_part(y).data - Cx(0, 1) * odd_part(y).data};
}

bool is_superpositive(const GradedOperator& x, double tol) {
  if (!is_hermitian(x, tol)) return false;
  Mat m = iota(x).data;
  return is_psd((m + m.adjoint()) / 2.0, tol);
}

GradedOperator twisted_product(const GradedOperator& x,
                               const GradedOperator& y, Cx omega) {
  if (!(x.dim == y.dim)) throw InputError("twisted_product: dim mismatch");
  if (std::abs(std::abs(omega) - 1.0) > 1e-12)
    throw InputError("twisted_product: omega must be unimodular");
  Mat x0 = even_part(x).data, x1 = odd_part(x).data;
  Mat y0 = even_part(y).data, y1 = odd_part(y).data;
  return {x.dim, x0 * y0 + omega * (x1 * y1) + x0 * y1 + x1 * y0};
}

namespace {
// arg mapped into [0, 2*pi)
double principal_angle(Cx omega) {
  double th = std::arg(omega);
  if (th < 0) th += 2.0 * kPi;
  return th;
}
}  // namespace

GradedOperator fiber_iso(const GradedOperator& x, Cx omega) {
  if (std::abs(std::abs(omega) - 1.0) > 1e-12)
    throw InputError("fiber_iso: omega must be unimodular");
  Cx root = std::polar(1.0, principal_angle(omega) / 2.0);
  return {x.dim, even_part(x).data + root * odd_part(x).data};
}

GradedOperator graded_abs(const GradedOperator& x) {
  Mat u = iota(x).data;
  GradedOperator root{x.dim, sqrt_psd(u.adjoint() * u)};
  return iota_inverse(root);
}

GradedOperator standard_form_embed(const Mat& a, const Mat& b, double tol) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw InputError("standard_form_embed: a, b must be square of equal size");
  if (max_abs(a - a.adjoint()) > tol || max_abs(b - b.adjoint()) > tol)
    throw InputError("standard_form_embed: a and b must be self-adjoint");
  int m = int(a.rows());
  Mat out = Mat::Zero(2 * m, 2 * m);
  out.block(0, 0, m, m) = a;
  out.block(m, m, m, m) = a;
  out.block(0, m, m, m) = Cx(0, 1) * b;
  out.block(m, 0, m, m) = Cx(0, 1) * b;
  return {GradedDim::diag(m, m), out};
}

GradedOperator swap_double(const Mat& x, const Mat& xstar) {
  if (x.rows() != x.cols() || xstar.rows() != xstar.cols() ||
      x.rows() != xstar.rows())
    throw InputError("swap_double: size mismatch");
  int m = int(x.rows());
  Mat out = Mat::Zero(2 * m, 2 * m);
  out.block(0, 0, m, m) = x;
  out.block(m, m, m, m) = xstar.adjoint();
  return {GradedDim::swap(m), out};
}

Mat kappa_conjugate(const GradedOperator& x) {
  Mat kappa = x.dim.even_proj() + Cx(0, 1) * x.dim.odd_proj();
  return kappa * x.data * kappa;
}

bool is_superunitary(const GradedOperator& x, double tol) {
  Mat id = Mat::Identity(x.dim.size(), x.dim.size());
  Mat xs = superinvolve(x).data;
  bool prod_test = op_norm(x.data * xs - id) <= tol &&
                   op_norm(xs * x.data - id) <= tol;
  // pseudo-unitarity x^dagger eps x = eps must agree
  const Mat& e = x.dim.epsilon();
  bool pseudo = op_norm(x.data.adjoint() * e * x.data - e) <= tol;
  return prod_test && pseudo;
}

bool lemma2_check(const GradedOperator& x, const OmegaUnitary& w,
                  const std::vector<double>& t_grid, double tol) {
  if (t_grid.empty()) throw InputError("lemma2_check: empty t grid");
  bool lhs = is_omega_hermitian(x, w, tol) && op_norm(x.data) <= 1.0 + tol;
  Mat wm = w.matrix();
  bool rhs = true;
  for (double t : t_grid) {
    if (op_norm(x.data - Cx(0, t) * wm) > std::sqrt(1.0 + t * t) + tol) {
      rhs = false;
      break;
    }
  }
  return lhs == rhs;
}

RandomKind random_kind_from_string(const std::string& s) {
  if (s == "generic") return RandomKind::Generic;
  if (s == "hermitian") return RandomKind::Hermitian;
  if (s == "eps_positive") return RandomKind::EpsPositive;
  if (s == "superpositive") return RandomKind::Superpositive;
  if (s == "superunitary") return RandomKind::Superunitary;
  if (s == "even_unitary") return RandomKind::EvenUnitary;
  throw InputError("unknown random kind: " + s);
}

GradedOperator random_graded(RandomKind kind, const GradedDim& dim,
                             std::uint64_t seed) {
  Rng rng(seed);
  int n = dim.size();
  const Mat& e = dim.epsilon();
  switch (kind) {
    case RandomKind::Generic:
      return {dim, rng.ginibre(n, n)};
    case RandomKind::Hermitian: {
      // hermitian for the superinvolution: x = (g + eps g^dagger eps)/2
      Mat g = rng.ginibre(n, n);
      return {dim, (g + e * g.adjoint() * e) / 2.0};
    }
    case RandomKind::EpsPositive: {
      // eps * psd is eps-positive: eps x = psd
      return {dim, e * rng.psd(n)};
    }
    case RandomKind::Superpositive: {
      GradedOperator y{dim, rng.psd(n)};
      return iota_inverse(y);
    }
    case RandomKind::Superunitary: {
      // exp(i eps H) with H ordinary-hermitian lies in the pseudo-unitary
      // group {U : U^dagger eps U = eps} = {U : U U* = U* U = 1}
      Mat h = rng.hermitian(n);
      Mat a = Cx(0, 1) * e * h;
      return {dim, a.exp()};
    }
    case RandomKind::EvenUnitary: {
      Mat u = rng.haar_unitary(n);
      // compress to the even subalgebra: commutes with eps
      Mat pe = dim.even_proj(), po = dim.odd_proj();
      Mat even = pe * u * pe + po * u * po;
      // re-unitarize via polar decomposition
      Eigen::JacobiSVD<Mat> svd(even, Eigen::ComputeFullU | Eigen::ComputeFullV);
      return {dim, svd.matrixU() * svd.matrixV().adjoint()};
    }
  }
  throw InputError("random_graded: unknown kind");
}

}  // namespace sos
