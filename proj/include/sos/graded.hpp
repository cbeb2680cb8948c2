#pragma once

#include <cstdint>
#include <vector>

#include "sos/types.hpp"

namespace sos {

/// A finite-dimensional Z2-graded space, i.e. a choice of grading operator
/// eps (a self-adjoint unitary). Two stock conventions exist: the diagonal
/// one eps = diag(I_p, -I_q) and the swap one eps = [[0,I],[I,0]] used by
/// doubling constructions. Product spaces carry an explicit eps matrix, so
/// every operation below is convention-free.
class GradedDim {
 public:
  enum class Kind { Diag, Swap, Explicit };

  static GradedDim diag(int p, int q);
  static GradedDim swap(int m);
  /// Product grading eps_A (x) eps_B.
  static GradedDim product(const GradedDim& a, const GradedDim& b);

  Kind kind() const { return kind_; }
  int p() const { return p_; }
  int q() const { return q_; }
  int size() const { return size_; }
  const Mat& epsilon() const { return eps_; }

  /// Orthogonal projections onto the even (+1) and odd (-1) eigenspaces.
  Mat even_proj() const;
  Mat odd_proj() const;

  bool operator==(const GradedDim& o) const;

 private:
  GradedDim() = default;
  Kind kind_ = Kind::Diag;
  int p_ = 0, q_ = 0;  // meaningful for Diag; p_ = q_ = m for Swap
  int size_ = 0;
  Mat eps_;
};

struct GradedOperator {
  GradedDim dim;
  Mat data;

  GradedOperator() : dim(GradedDim::diag(1, 0)), data(Mat::Zero(1, 1)) {}
  GradedOperator(GradedDim d, Mat m);

  static GradedOperator identity(const GradedDim& d);
  static GradedOperator epsilon(const GradedDim& d);
  static GradedOperator zero(const GradedDim& d);
};

/// A unitary omega0*P_even + omega1*P_odd of C*(1, eps).
struct OmegaUnitary {
  GradedDim dim;
  Cx omega0{1.0, 0.0};
  Cx omega1{1.0, 0.0};

  OmegaUnitary(GradedDim d, Cx w0, Cx w1);
  static OmegaUnitary one(const GradedDim& d) { return {d, {1, 0}, {1, 0}}; }
  static OmegaUnitary eps(const GradedDim& d) { return {d, {1, 0}, {-1, 0}}; }

  Mat matrix() const;
};

/// An element of M_n(X): n x n blocks of size p+q, grading I_n (x) eps.
struct AmplifiedOperator {
  int level = 1;
  GradedDim base;
  Mat data;

  AmplifiedOperator() : base(GradedDim::diag(1, 0)), data(Mat::Zero(1, 1)) {}
  AmplifiedOperator(int n, GradedDim d, Mat m);

  Mat epsilon() const;
};

// --- involutions and parts ---

GradedOperator superinvolve(const GradedOperator& x);
AmplifiedOperator superinvolve(const AmplifiedOperator& x);
GradedOperator omega_involve(const GradedOperator& x, const OmegaUnitary& w);

GradedOperator even_part(const GradedOperator& x);
GradedOperator odd_part(const GradedOperator& x);

bool is_hermitian(const GradedOperator& x, double tol);
bool is_omega_hermitian(const GradedOperator& x, const OmegaUnitary& w,
                        double tol);

// --- spectra and cones ---

/// Eigenvalues of eps*x (the lambda with x - lambda*eps singular), sorted
/// by (real, imaginary).
std::vector<Cx> graded_spectrum(const GradedOperator& x);

bool is_epsilon_positive(const GradedOperator& x, double tol);
bool is_superpositive(const GradedOperator& x, double tol);

// --- the iota isomorphism and twisted products ---

GradedOperator iota(const GradedOperator& x);
GradedOperator iota_inverse(const GradedOperator& y);

GradedOperator twisted_product(const GradedOperator& x,
                               const GradedOperator& y, Cx omega);

/// x0 + sqrt(omega)*x1, branch sqrt(e^{i theta}) = e^{i theta/2} with
/// theta in [0, 2*pi).
GradedOperator fiber_iso(const GradedOperator& x, Cx omega);

GradedOperator graded_abs(const GradedOperator& x);

// --- representations ---

/// [[a, ib],[ib, a]] with grading (m, m); a, b self-adjoint.
GradedOperator standard_form_embed(const Mat& a, const Mat& b,
                                   double tol = 1e-9);

/// block-diag(x, xstar^dagger) on the swap-graded doubling of C^m.
GradedOperator swap_double(const Mat& x, const Mat& xstar);

/// kappa x kappa with kappa = P_even + i*P_odd (kappa^2 = eps up to the
/// documented phase on the odd block).
Mat kappa_conjugate(const GradedOperator& x);

bool is_superunitary(const GradedOperator& x, double tol);

/// Finite witness of the omega-hermitian characterization: true iff
/// [x omega-hermitian and ||x|| <= 1+tol] agrees with
/// [||x - i t w|| <= sqrt(1+t^2)+tol for all t in t_grid].
bool lemma2_check(const GradedOperator& x, const OmegaUnitary& w,
                  const std::vector<double>& t_grid, double tol);

// --- seeded generation ---

enum class RandomKind {
  Generic,
  Hermitian,
  EpsPositive,
  Superpositive,
  Superunitary,
  EvenUnitary,
};

RandomKind random_kind_from_string(const std::string& s);

GradedOperator random_graded(RandomKind kind, const GradedDim& dim,
                             std::uint64_t seed);

}  // namespace sos
