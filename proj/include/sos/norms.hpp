#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sos/graded.hpp"

namespace sos {

/// Result of a numerical-radius style optimization: the value, the angle
/// and unit vector achieving it, and a certified error bound.
struct RadiusResult {
  double value = 0.0;
  double maximizer_theta = 0.0;
  Vec maximizer_vector;
  double certified_error = 0.0;
};

/// w(M) = max_theta lambda_max((e^{i theta} M + e^{-i theta} M^dagger)/2),
/// by a 64-point grid plus golden-section refinement; the certificate uses
/// the Lipschitz bound |f(t1)-f(t2)| <= ||M|| |t1-t2|.
RadiusResult numerical_radius(const Mat& m, double tol = 1e-9);

RadiusResult strong_norm(const GradedOperator& x, double tol = 1e-9);
RadiusResult strong_norm(const AmplifiedOperator& x, double tol = 1e-9);

/// Numerical radius of x0 + eps*x1 (= numerical radius of iota(x)).
RadiusResult sigma_strong_norm(const GradedOperator& x, double tol = 1e-9);

/// 2 * strong norm of [[0,x],[0,0]] at the doubled amplification level;
/// equals the operator norm of x.
double derived_matrix_norm(const GradedOperator& x, double tol = 1e-9);
double derived_matrix_norm(const AmplifiedOperator& x, double tol = 1e-9);

/// p^omega(x) = 1/2 ||omega x + conj(omega) x*||^s  (strong norm),
/// P^omega(x) analogously with the operator norm.
double seminorm_p_omega(const GradedOperator& x, Cx omega, double tol = 1e-9);
double seminorm_P_omega(const GradedOperator& x, Cx omega);

/// r(x) = sup_omega p^omega(x), R(x) = sup_omega P^omega(x); omega grid of
/// grid_size points plus golden-section refinement.
double r_norm(const GradedOperator& x, int grid_size = 128, double tol = 1e-9);
double R_norm(const GradedOperator& x, int grid_size = 128, double tol = 1e-9);

struct AxiomMargins {
  double m1 = 0.0;      // | ||x (+) y||^s - max | , worst case
  double m2 = 0.0;      // max(0, ||a x a*||^s - ||a||^2 ||x||^s), worst case
  double hm_star = 0.0; // | ||x||^s - 2||offcorner x||^s | on hermitians
  double chain = 0.0;   // worst violation of the display chain
  double derived = 0.0; // | derived norm - operator norm |, worst case
  bool passed(double tol) const {
    return m1 <= tol && m2 <= tol && hm_star <= tol && chain <= tol &&
           derived <= tol;
  }
};

/// Verifies (Sigma M1), (Sigma M2), (h Sigma M*), the display chain
/// ||x||^s = ||diag(x,-x)||^s = ||offdiag(x,x)||^s <= ||x||, and
/// derived norm == operator norm, on the given samples.
AxiomMargins check_sigma_axioms(const std::vector<AmplifiedOperator>& samples,
                                const std::vector<Mat>& scalars, double tol);

/// A linear map between matrix spaces given by its action on an explicit
/// basis, extended by linearity; optionally restricted to a subspace T of
/// its domain for the really-strongly-contractive check.
struct LinearMapSpec {
  GradedDim domain_dim;
  GradedDim codomain_dim;
  std::vector<Mat> domain_basis;
  std::vector<Mat> images;
  // optional: a spanning set for the subspace T (subset of the domain)
  std::vector<Mat> subspace_basis;

  LinearMapSpec(GradedDim dd, GradedDim cd, std::vector<Mat> basis,
                std::vector<Mat> imgs, std::vector<Mat> sub = {});

  /// phi(x) for x in span(domain_basis); least-squares coefficient fit,
  /// throws if x is not in the span.
  Mat apply(const Mat& x) const;
  /// Blockwise application id_{M_n} (x) phi.
  Mat apply_amplified(const Mat& x, int level) const;

 private:
  Mat basis_cols_;  // vectorized basis, one column per element
  Eigen::ColPivHouseholderQR<Mat> solver_;
};

/// Projection of M_m with kernel C*p (p the lower-right corner matrix unit)
/// and range the matrices with zero lower-right entry; T = lower triangulars.
LinearMapSpec corner_projection_map(int m);

/// Projection of M_m with kernel C*e (e = E_{m-1,m-1} - E_{m,m}) and range
/// the matrices with equal last two diagonal entries; T = lower triangulars.
LinearMapSpec diagonal_equalizer_map(int m);

LinearMapSpec identity_map(const GradedDim& d);

struct RscReport {
  int pairs = 0;
  int witnessed = 0;
  double witnessed_fraction = 0.0;
  double worst_deficit = 0.0;  // max over pairs of the unmet margin (>= 0)
  int worst_pair_index = -1;
  bool counterexample_found = false;
  // this routine samples; it can refute, never prove
  const char* mode = "sampled-falsifier";
};

/// Samples num_eta unit vectors eta and random x in T; for each pair
/// searches (gradient ascent on the sphere, random restarts, xi_budget
/// objective evaluations) for a unit xi with |alpha| >= |beta| - tol and
/// |Re alpha| >= |Re beta| - tol, alpha = <x xi, eps xi>,
/// beta = <phi(x) eta, eps eta>. With require_sign also matches the sign
/// of the real parts.
RscReport rsc_check(const LinearMapSpec& map, int num_eta, int xi_budget,
                    std::uint64_t seed, double tol, int num_x = 5,
                    bool require_sign = false);

struct ContractionReport {
  int samples = 0;
  int violations = 0;
  double worst_excess = 0.0;  // max over samples of ||phi_n(x)|| - 1
  int worst_sample_index = -1;
};

/// Samples hermitian x in the level-amplified domain with ||x|| <= 1 and
/// reports every ||phi_n(x)|| > 1 + tol.
ContractionReport hermitian_contractive_check(const LinearMapSpec& map,
                                              int level, int num_samples,
                                              std::uint64_t seed, double tol);

}  // namespace sos
