#include "sos/group.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "sos/rng.hpp"

namespace sos {

CyclicGroupElement::CyclicGroupElement(int order, Vec c)
    : n(order), coeffs(std::move(c)) {
  if (n < 1) throw InputError("cyclic element: order must be positive");
  if (coeffs.size() != n)
    throw InputError("cyclic element: coefficient count must equal the order");
  if (!coeffs.allFinite())
    throw InputError("cyclic element: coefficients must be finite");
}

CyclicGroupElement CyclicGroupElement::generator(int n, int g) {
  Vec c = Vec::Zero(n);
  c(((g % n) + n) % n) = 1.0;
  return CyclicGroupElement(n, c);
}

std::vector<Mat> regular_rep(int n) {
  if (n < 1) throw InputError("regular_rep: order must be positive");
  std::vector<Mat> reps;
  reps.reserve(n);
  for (int g = 0; g < n; ++g) {
    Mat d = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j)
      d(j, j) = std::polar(1.0, 2.0 * kPi * g * j / n);
    reps.push_back(d);
  }
  return reps;
}

double dft_max(const CyclicGroupElement& c) {
  double best = 0.0;
  for (int s = 0; s < c.n; ++s) {
    Cx sum = 0.0;
    for (int g = 0; g < c.n; ++g)
      sum += c.coeffs(g) * std::polar(1.0, 2.0 * kPi * g * s / c.n);
    best = std::max(best, std::abs(sum));
  }
  return best;
}

Mat delta_k_matrix(const CyclicGroupElement& c, int k) {
  if (k < 1) throw InputError("delta element: power must be positive");
  std::vector<Mat> reps = regular_rep(c.n);
  Eigen::Index dim = 1;
  for (int j = 0; j < k; ++j) dim *= c.n;
  Mat out = Mat::Zero(dim, dim);
  for (int g = 0; g < c.n; ++g) {
    if (std::abs(c.coeffs(g)) == 0.0) continue;
    Mat term = reps[g];
    for (int j = 1; j < k; ++j) term = kron(term, reps[g]);
    out += c.coeffs(g) * term;
  }
  return out;
}

TensorElement delta_k_element(const CyclicGroupElement& c, int k) {
  if (k < 1 || k > 3) throw InputError("delta element: power out of range");
  std::vector<Mat> reps = regular_rep(c.n);
  std::vector<std::pair<Mat, Mat>> f;
  for (int g = 0; g < c.n; ++g) {
    if (std::abs(c.coeffs(g)) == 0.0) continue;
    if (k == 1) {
      f.push_back({c.coeffs(g) * reps[g], Mat::Identity(1, 1)});
    } else if (k == 2) {
      f.push_back({c.coeffs(g) * reps[g], reps[g]});
    } else {
      // grouping (1)|(2,3): the trailing pair flattened to one factor
      f.push_back({c.coeffs(g) * reps[g], kron(reps[g], reps[g])});
    }
  }
  if (f.empty()) {
    Mat z = Mat::Zero(c.n, c.n);
    int bd = k == 1 ? 1 : (k == 2 ? c.n : c.n * c.n);
    f.push_back({z, Mat::Zero(bd, bd)});
  }
  int bd = int(f[0].second.rows());
  return TensorElement(GradedDim::diag(c.n, 0), GradedDim::diag(bd, 0), f, 1);
}

namespace {

// three-slot chain decomposition u = sum_{k,l} row_k (x) mid_{kl} (x) col_l
struct Chain {
  std::vector<Mat> row;
  std::vector<std::vector<Mat>> mid;
  std::vector<Mat> col;
};

double chain_value(const Chain& ch) {
  const int r = int(ch.row.size()), s = int(ch.col.size());
  const Eigen::Index d = ch.row[0].rows();
  Mat rs = Mat::Zero(d, d);
  for (const Mat& a : ch.row) rs += a * a.adjoint();
  Mat cs = Mat::Zero(d, d);
  for (const Mat& z : ch.col) cs += z.adjoint() * z;
  Mat block(r * d, s * d);
  for (int k = 0; k < r; ++k)
    for (int l = 0; l < s; ++l) block.block(k * d, l * d, d, d) = ch.mid[k][l];
  return std::sqrt(std::max(0.0, lambda_max(rs))) * op_norm(block) *
         std::sqrt(std::max(0.0, lambda_max(cs)));
}

Chain apply_chain_gauge(const Chain& base, const Mat& g1, const Mat& g2) {
  const int r = int(base.row.size()), s = int(base.col.size());
  const Eigen::Index d = base.row[0].rows();
  Mat g1i = g1.inverse(), g2i = g2.inverse();
  Chain out;
  out.row.assign(r, Mat::Zero(d, d));
  out.col.assign(s, Mat::Zero(d, d));
  out.mid.assign(r, std::vector<Mat>(s, Mat::Zero(d, d)));
  for (int k = 0; k < r; ++k)
    for (int m = 0; m < r; ++m) out.row[k] += g1(m, k) * base.row[m];
  for (int l = 0; l < s; ++l)
    for (int p = 0; p < s; ++p) out.col[l] += g2i(l, p) * base.col[p];
  for (int k = 0; k < r; ++k)
    for (int l = 0; l < s; ++l)
      for (int m = 0; m < r; ++m)
        for (int p = 0; p < s; ++p)
          out.mid[k][l] += g1i(k, m) * g2(p, l) * base.mid[m][p];
  return out;
}

struct ChainResult {
  double value = 0.0;
  Chain chain;
};

ChainResult chain_descent(const Chain& base, Mat g1, Mat g2, int iters) {
  const int r = int(base.row.size()), s = int(base.col.size());
  double val = chain_value(apply_chain_gauge(base, g1, g2));
  const double h = 1e-6;
  double step = 0.1;
  int stall = 0;
  for (int it = 0; it < iters && stall < 8; ++it) {
    Mat grad1 = Mat::Zero(r, r), grad2 = Mat::Zero(s, s);
    auto probe = [&](const Mat& p1, const Mat& p2) {
      return chain_value(apply_chain_gauge(base, p1, p2));
    };
    for (int k = 0; k < r; ++k)
      for (int l = 0; l < r; ++l) {
        Mat e = Mat::Zero(r, r);
        e(k, l) = h;
        double fre = probe(g1 * (Mat::Identity(r, r) + e), g2);
        e(k, l) = Cx(0, h);
        double fim = probe(g1 * (Mat::Identity(r, r) + e), g2);
        grad1(k, l) = Cx((fre - val) / h, (fim - val) / h);
      }
    for (int k = 0; k < s; ++k)
      for (int l = 0; l < s; ++l) {
        Mat e = Mat::Zero(s, s);
        e(k, l) = h;
        double fre = probe(g1, g2 * (Mat::Identity(s, s) + e));
        e(k, l) = Cx(0, h);
        double fim = probe(g1, g2 * (Mat::Identity(s, s) + e));
        grad2(k, l) = Cx((fre - val) / h, (fim - val) / h);
      }
    double gn = std::sqrt(grad1.squaredNorm() + grad2.squaredNorm());
    if (gn < 1e-12 * (1.0 + val)) break;
    Mat d1 = grad1 / gn, d2 = grad2 / gn;
    double st = step;
    bool accepted = false;
    while (st > 1e-12) {
      Mat c1 = g1 * (-st * d1).exp();
      Mat c2 = g2 * (-st * d2).exp();
      double cv = probe(c1, c2);
      if (cv < val - 1e-4 * st * gn) {
        double gain = val - cv;
        g1 = c1;
        g2 = c2;
        val = cv;
        step = std::min(0.5, 2.0 * st);
        accepted = true;
        stall = gain < 1e-13 * (1.0 + val) ? stall + 1 : 0;
        break;
      }
      st *= 0.5;
    }
    if (!accepted) ++stall;
  }
  return {val, apply_chain_gauge(base, g1, g2)};
}

ChainResult chain_optimize(const Chain& base, const TensorConfig& cfg) {
  const int r = int(base.row.size()), s = int(base.col.size());
  ChainResult best =
      chain_descent(base, Mat::Identity(r, r), Mat::Identity(s, s), cfg.iters);
  for (int rs = 1; rs < cfg.restarts; ++rs) {
    Rng rng = Rng::derive(cfg.seed ^ 0x6b6b6b6bull, std::uint64_t(rs));
    double scale = 0.2 + 0.6 * rng.uniform();
    ChainResult res = chain_descent(base, (scale * rng.ginibre(r, r)).exp(),
                                    (scale * rng.ginibre(s, s)).exp(),
                                    cfg.iters);
    if (res.value < best.value) best = res;
  }
  return best;
}

Chain initial_chain(const CyclicGroupElement& c) {
  std::vector<Mat> reps = regular_rep(c.n);
  std::vector<int> support;
  for (int g = 0; g < c.n; ++g)
    if (std::abs(c.coeffs(g)) > 0.0) support.push_back(g);
  if (support.empty()) support.push_back(0);
  const int r = int(support.size());
  Chain ch;
  ch.mid.assign(r, std::vector<Mat>(r, Mat::Zero(c.n, c.n)));
  for (int k = 0; k < r; ++k) {
    int g = support[k];
    ch.row.push_back(c.coeffs(g) * reps[g]);
    ch.col.push_back(reps[g]);
    ch.mid[k][k] = reps[g];
  }
  return ch;
}

Chain conj_chain(const Chain& ch) {
  Chain out = ch;
  for (Mat& a : out.row) a = a.conjugate();
  for (Mat& z : out.col) z = z.conjugate();
  for (auto& rowv : out.mid)
    for (Mat& y : rowv) y = y.conjugate();
  return out;
}

// upper bound for the three-fold projective norm: gauge descent on
// sum_m ||atilde_m|| * l1(coefficient row of the trailing diagonal pair)
double proj3_upper(const CyclicGroupElement& c, const TensorConfig& cfg) {
  std::vector<Mat> reps = regular_rep(c.n);
  std::vector<int> support;
  for (int g = 0; g < c.n; ++g)
    if (std::abs(c.coeffs(g)) > 0.0) support.push_back(g);
  if (support.empty()) return 0.0;
  const int r = int(support.size());
  auto value = [&](const Mat& g) {
    Mat ginvt = g.inverse().transpose();
    double sum = 0.0;
    for (int m = 0; m < r; ++m) {
      Mat a = Mat::Zero(c.n, c.n);
      double l1 = 0.0;
      for (int l = 0; l < r; ++l) {
        a += g(m, l) * c.coeffs(support[l]) * reps[support[l]];
        l1 += std::abs(ginvt(m, l));
      }
      sum += a.diagonal().cwiseAbs().maxCoeff() * l1;
    }
    return sum;
  };
  double best = value(Mat::Identity(r, r));
  const double h = 1e-6;
  for (int rs = 0; rs < cfg.restarts; ++rs) {
    Mat g;
    if (rs == 0) {
      g = Mat::Identity(r, r);
    } else {
      Rng rng = Rng::derive(cfg.seed ^ 0x37373737ull, std::uint64_t(rs));
      g = ((0.2 + 0.6 * rng.uniform()) * rng.ginibre(r, r)).exp();
    }
    double val = value(g);
    double step = 0.1;
    int stall = 0;
    for (int it = 0; it < cfg.iters && stall < 8; ++it) {
      Mat grad = Mat::Zero(r, r);
      for (int k = 0; k < r; ++k)
        for (int l = 0; l < r; ++l) {
          Mat e = Mat::Zero(r, r);
          e(k, l) = h;
          double fre = value(g * (Mat::Identity(r, r) + e));
          e(k, l) = Cx(0, h);
          double fim = value(g * (Mat::Identity(r, r) + e));
          grad(k, l) = Cx((fre - val) / h, (fim - val) / h);
        }
      double gn = grad.norm();
      if (gn < 1e-12 * (1.0 + val)) break;
      double st = step;
      bool accepted = false;
      while (st > 1e-12) {
        Mat cand = g * (-st * grad / gn).exp();
        double cv = value(cand);
        if (cv < val - 1e-4 * st * gn) {
          double gain = val - cv;
          g = cand;
          val = cv;
          step = std::min(0.5, 2.0 * st);
          accepted = true;
          stall = gain < 1e-13 * (1.0 + val) ? stall + 1 : 0;
          break;
        }
        st *= 0.5;
      }
      if (!accepted) ++stall;
    }
    best = std::min(best, val);
  }
  return best;
}

void check_desk_scale(const CyclicGroupElement& c, int k) {
  if (k < 1 || k > 3)
    throw InputError("delta norm: tensor power out of the supported range");
  if (c.n > 4) throw InputError("delta norm: group order above the desk cap");
}

}  // namespace

NormBracket delta_k_norm(const CyclicGroupElement& c, int k, DeltaMode mode,
                         const TensorConfig& cfg) {
  check_desk_scale(c, k);
  NormBracket out;
  double lower = dft_max(c);
  if (k == 1) {
    out.lower = out.upper = lower;
    out.method = "dft-closed-form";
    out.lower_witness = "character of maximal modulus";
    return out;
  }
  if (k == 2) {
    TensorElement t = delta_k_element(c, 2);
    out = mode == DeltaMode::Haagerup ? haagerup_norm(t, cfg)
                                      : projective_norm(t, cfg);
    out.lower = std::max(out.lower, lower);
    out.upper = std::max(out.upper, out.lower);
    out.lower_witness = "character of maximal modulus";
    return out;
  }
  out.lower = lower;
  out.lower_witness = "character of maximal modulus";
  if (mode == DeltaMode::Haagerup) {
    ChainResult res = chain_optimize(initial_chain(c), cfg);
    out.upper = std::max(res.value, lower);
    out.method = "chain-gauge-descent-upper/dft-lower";
  } else {
    out.upper = std::max(proj3_upper(c, cfg), lower);
    out.method = "grouped-gauge-descent-upper/dft-lower";
  }
  return out;
}

CyclicGroupElement dual_involute(const CyclicGroupElement& c) {
  Vec out = Vec::Zero(c.n);
  for (int g = 0; g < c.n; ++g)
    out((c.n - g) % c.n) = std::conj(c.coeffs(g));
  return CyclicGroupElement(c.n, out);
}

bool dual_involution_check(const CyclicGroupElement& c, int k,
                           const TensorConfig& cfg, double tol) {
  check_desk_scale(c, k);
  CyclicGroupElement ci = dual_involute(c);

  // involutive: applying twice restores the element exactly
  if ((dual_involute(ci).coeffs - c.coeffs).cwiseAbs().maxCoeff() != 0.0)
    return false;
  // antilinear: scaling by lambda conjugates through
  Cx lambda(0.3, -1.7);
  CyclicGroupElement scaled(c.n, (lambda * c.coeffs).eval());
  if ((dual_involute(scaled).coeffs - std::conj(lambda) * ci.coeffs)
          .cwiseAbs()
          .maxCoeff() > 1e-14 * (1.0 + c.coeffs.cwiseAbs().maxCoeff()))
    return false;

  if (std::abs(dft_max(c) - dft_max(ci)) > tol) return false;
  if (k == 1) return true;

  if (k == 2) {
    TensorElement t = delta_k_element(c, 2);
    TensorElement ti = delta_k_element(ci, 2);
    NormBracket b1 = haagerup_norm(t, cfg);
    NormBracket b2 = haagerup_norm(ti, cfg);
    // conjugated witnesses transport between the two sides at equal value
    auto conj_factors = [](std::vector<std::pair<Mat, Mat>> f) {
      for (auto& [a, b] : f) {
        a = a.conjugate().eval();
        b = b.conjugate().eval();
      }
      return f;
    };
    double u1 = std::min(
        b1.upper, haagerup_objective(conj_factors(b2.upper_witness)));
    double u2 = std::min(
        b2.upper, haagerup_objective(conj_factors(b1.upper_witness)));
    return std::abs(u1 - u2) <= tol && std::abs(b1.lower - b2.lower) <= tol;
  }

  ChainResult r1 = chain_optimize(initial_chain(c), cfg);
  ChainResult r2 = chain_optimize(initial_chain(ci), cfg);
  double u1 = std::min(r1.value, chain_value(conj_chain(r2.chain)));
  double u2 = std::min(r2.value, chain_value(conj_chain(r1.chain)));
  return std::abs(u1 - u2) <= tol;
}

}  // namespace sos
