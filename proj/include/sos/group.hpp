#pragma once

#include <cstdint>
#include <vector>

#include "sos/tensor.hpp"

namespace sos {

/// An element sum_g c_g * g of the group algebra of Z/n, or the diagonal
/// element sum_g c_g * g^{(x)k} of a k-fold tensor power.
struct CyclicGroupElement {
  int n = 1;
  Vec coeffs;

  CyclicGroupElement() : coeffs(Vec::Zero(1)) {}
  CyclicGroupElement(int order, Vec c);

  static CyclicGroupElement generator(int n, int g);
};

/// g -> diag(1, zeta^g, ..., zeta^{(n-1)g}), zeta = e^{2 pi i / n}; the
/// character (Fourier) representation, faithful on the group algebra.
std::vector<Mat> regular_rep(int n);

/// max_s |sum_g c_g zeta^{gs}|: the operator norm of the k=1 element, and
/// the injective norm of every diagonal k-fold element.
double dft_max(const CyclicGroupElement& c);

/// The representing matrix of sum_g c_g g^{(x)k} (an n^k diagonal).
Mat delta_k_matrix(const CyclicGroupElement& c, int k);

/// For k = 2 the element as a TensorElement over the represented factors.
TensorElement delta_k_element(const CyclicGroupElement& c, int k);

enum class DeltaMode { Haagerup, Projective };

/// NormBracket of the diagonal element at tensor power k <= 3. Haagerup
/// mode: closed form at k=1, gauge descent at k=2, two-gauge chain descent
/// at k=3 (valid by associativity of the Haagerup product). Projective
/// mode: gauge descent on sum-of-products upper bounds. Lower bound in all
/// cases: the DFT maximum (the injective certificate).
NormBracket delta_k_norm(const CyclicGroupElement& c, int k, DeltaMode mode,
                         const TensorConfig& cfg);

/// The grading involution c_g -> conj(c_{-g}); antilinear, involutive, and
/// an isometry for the diagonal norms.
CyclicGroupElement dual_involute(const CyclicGroupElement& c);

/// Checks that dual_involute squares to the identity, is antilinear, and
/// preserves the computed delta_k_norm bracket (Haagerup mode, identical
/// budgets, witnesses transported by conjugation) within tol.
bool dual_involution_check(const CyclicGroupElement& c, int k,
                           const TensorConfig& cfg, double tol);

}  // namespace sos
