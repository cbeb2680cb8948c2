#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sos/graded.hpp"

namespace sos {

/// An element sum_k a_k (x) b_k of M_a (x) M_b, or of M_n(M_a (x) M_b) for
/// level n > 1, in which case a_k is an (n*a_dim) x a_dim stack of column
/// blocks and b_k a b_dim x (n*b_dim) row of blocks; the (i,j) block of the
/// element is sum_k a_k[i] (x) b_k[j].
struct TensorElement {
  int a_dim = 1;
  int b_dim = 1;
  GradedDim a_grading;
  GradedDim b_grading;
  int level = 1;
  std::vector<std::pair<Mat, Mat>> factors;

  TensorElement()
      : a_grading(GradedDim::diag(1, 0)), b_grading(GradedDim::diag(1, 0)) {}
  TensorElement(GradedDim ga, GradedDim gb,
                std::vector<std::pair<Mat, Mat>> f, int n = 1);

  static TensorElement elementary(const Mat& a, const Mat& b);
  static TensorElement elementary(GradedDim ga, GradedDim gb, const Mat& a,
                                  const Mat& b);
};

struct TensorConfig {
  int restarts = 32;
  int iters = 500;
  int padding = 0;  // extra zero factors appended before gauge search
  std::uint64_t seed = 1;
  double tol = 1e-9;
};

/// Certified interval for a norm computable only by optimization. The upper
/// witness is a decomposition re-evaluating to the upper bound; best_gauge
/// is the gauge that produced it (usable to seed related computations).
struct NormBracket {
  double lower = 0.0;
  double upper = 0.0;
  std::string method;
  std::string lower_witness;
  std::vector<std::pair<Mat, Mat>> upper_witness;
  Mat best_gauge;
};

Mat kron_matrix(const TensorElement& t);
double injective_norm(const TensorElement& t);

/// Drops zero factors and folds linearly dependent ones into the rest; the
/// represented element is unchanged and the factor count is minimal.
TensorElement reduce_factors(const TensorElement& t, double tol = 1e-12);

/// ||sum_k a_k a_k*||^{1/2} ||sum_k b_k* b_k||^{1/2} of a decomposition;
/// an upper bound for the Haagerup norm of the represented element.
double haagerup_objective(const std::vector<std::pair<Mat, Mat>>& factors);

/// Upper bound: gauge descent over invertible G acting on the reduced
/// decomposition (a ~ G a, b ~ G^{-T} b); lower bound: the injective norm.
/// seed_gauges provides extra descent starting points.
NormBracket haagerup_norm(const TensorElement& t, const TensorConfig& cfg,
                          const std::vector<Mat>& seed_gauges = {});

enum class StarMode { Product, HaagerupFlip, AdjointSpace };
StarMode star_mode_from_string(const std::string& s);

/// Product: (a,b) -> (a*,b*), factor superinvolutions. HaagerupFlip:
/// (a,b) -> (b*,a*) with the factor spaces swapped. AdjointSpace:
/// (a,b) -> (conj b, conj a), needs a_dim == b_dim. All antilinear and
/// involutive; block transpose at level > 1.
TensorElement star_tensor(const TensorElement& t, StarMode mode);

/// Componentwise max of the brackets of t and its product involute.
NormBracket symmetrized_haagerup(const TensorElement& t,
                                 const TensorConfig& cfg);

/// Gauge descent on sum_k ||a_k|| ||b_k||; lower bound: the injective norm.
NormBracket projective_norm(const TensorElement& t, const TensorConfig& cfg);

/// Starting gauge for haagerup_norm derived from a projective witness; the
/// balanced rescaling makes the Haagerup objective at this gauge dominated
/// by the projective upper bound.
Mat haagerup_seed_from_projective(const NormBracket& proj);

/// Lower: best |<t, phi>| over sampled functionals phi normalized by their
/// own symmetrized-Haagerup upper bound (trace pairing); upper: the smaller
/// of the Haagerup and projective upper bounds.
NormBracket dual_symmetrized_haagerup(const TensorElement& t,
                                      const TensorConfig& cfg,
                                      int num_functionals = 40);

/// Runs t and its HaagerupFlip involute with cross-seeded gauges so the two
/// brackets witness the antiisometry of the flip.
std::pair<NormBracket, NormBracket> haagerup_with_flip(const TensorElement& t,
                                                       const TensorConfig& cfg);

enum class PositivityCheck { EpsPositive, Superpositive };

/// Kronecker (spatial) representation with the product grading; faithful for
/// full matrix algebras, where the maximal and spatial tensor products agree.
bool finite_dim_cstar_tensor(const TensorElement& t, PositivityCheck check,
                             double tol = 1e-9);

}  // namespace sos
