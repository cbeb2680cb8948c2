#pragma once

#include <cstdint>
#include <random>

#include "sos/types.hpp"

namespace sos {

/// Deterministic generator. All sampling goes through explicit instances of
/// this class; derived streams for parallel-safe per-sample use come from
/// derive(seed, index).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng derive(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 step keeps derived streams decorrelated
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return Rng(z ^ (z >> 31));
  }

  double uniform() {  // in [0,1)
    return (engine_() >> 11) * (1.0 / 9007199254740992.0);
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; avoids the implementation-defined std::normal_distribution.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 <= 1e-300) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

  Cx cgaussian() { return Cx(gaussian(), gaussian()) / std::sqrt(2.0); }

  Cx unit_phase() { return std::polar(1.0, uniform(0.0, 2.0 * kPi)); }

  Mat ginibre(int rows, int cols) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = cgaussian();
    return m;
  }

  Mat hermitian(int n) {
    Mat g = ginibre(n, n);
    return (g + g.adjoint()) / 2.0;
  }

  Mat psd(int n) {
    Mat g = ginibre(n, n);
    return g * g.adjoint() / double(n);
  }

  Mat haar_unitary(int n) {
    Mat g = ginibre(n, n);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat qmat = qr.householderQ() * Mat::Identity(n, n);
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
      Cx d = r(j, j);
      double a = std::abs(d);
      qmat.col(j) *= (a > 0 ? d / a : Cx(1, 0));
    }
    return qmat;
  }

  Vec unit_vector(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = cgaussian();
    double nrm = v.norm();
    if (nrm < 1e-300) {
      v.setZero();
      v(0) = 1.0;
      return v;
    }
    return v / nrm;
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sos
