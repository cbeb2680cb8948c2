#include "sos/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <unsupported/Eigen/MatrixFunctions>

#include "sos/rng.hpp"

namespace sos {

TensorElement::TensorElement(GradedDim ga, GradedDim gb,
                             std::vector<std::pair<Mat, Mat>> f, int n)
    : a_dim(ga.size()),
      b_dim(gb.size()),
      a_grading(ga),
      b_grading(gb),
      level(n),
      factors(std::move(f)) {
  if (level < 1) throw InputError("tensor element: level must be positive");
  if (factors.empty()) throw InputError("tensor element: empty factor list");
  for (const auto& [a, b] : factors) {
    if (a.rows() != Eigen::Index(level) * a_dim || a.cols() != a_dim)
      throw InputError("tensor element: left factor has wrong shape");
    if (b.rows() != b_dim || b.cols() != Eigen::Index(level) * b_dim)
      throw InputError("tensor element: right factor has wrong shape");
  }
}

TensorElement TensorElement::elementary(const Mat& a, const Mat& b) {
  return elementary(GradedDim::diag(int(a.rows()), 0),
                    GradedDim::diag(int(b.rows()), 0), a, b);
}

TensorElement TensorElement::elementary(GradedDim ga, GradedDim gb,
                                        const Mat& a, const Mat& b) {
  return TensorElement(ga, gb, {{a, b}}, 1);
}

Mat kron_matrix(const TensorElement& t) {
  const int a = t.a_dim, b = t.b_dim, n = t.level;
  Mat out = Mat::Zero(n * a * b, n * a * b);
  for (const auto& [ak, bk] : t.factors)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out.block(i * a * b, j * a * b, a * b, a * b) +=
            kron(ak.block(i * a, 0, a, a), bk.block(0, j * b, b, b));
  return out;
}

double injective_norm(const TensorElement& t) {
  return op_norm(kron_matrix(t));
}

namespace {

// folds factors whose "side" entry depends linearly on the kept ones into
// the kept factors' other side; exact on the represented element
std::vector<std::pair<Mat, Mat>> reduce_side(
    const std::vector<std::pair<Mat, Mat>>& factors, bool left, double tol) {
  std::vector<std::pair<Mat, Mat>> kept;
  Mat cols;  // vectorized kept side entries
  for (const auto& f : factors) {
    const Mat& pivot = left ? f.first : f.second;
    const Mat& other = left ? f.second : f.first;
    double pn = pivot.norm();
    if (pn < tol || other.norm() < tol) continue;
    if (kept.empty()) {
      kept.push_back(f);
      cols = pivot.reshaped();
      continue;
    }
    Vec v = pivot.reshaped();
    Vec c = cols.completeOrthogonalDecomposition().solve(v);
    if ((cols * c - v).norm() <= tol * (1.0 + pn)) {
      for (std::size_t j = 0; j < kept.size(); ++j) {
        Mat& tgt = left ? kept[j].second : kept[j].first;
        tgt += c(Eigen::Index(j)) * other;
      }
    } else {
      kept.push_back(f);
      Mat grown(cols.rows(), cols.cols() + 1);
      grown << cols, v;
      cols = grown;
    }
  }
  return kept;
}

}  // namespace

TensorElement reduce_factors(const TensorElement& t, double tol) {
  TensorElement out = t;
  for (int pass = 0; pass < 4; ++pass) {
    std::size_t before = out.factors.size();
    out.factors = reduce_side(out.factors, true, tol);
    if (!out.factors.empty())
      out.factors = reduce_side(out.factors, false, tol);
    if (out.factors.empty()) {
      // the zero element: keep a single zero pair so shapes stay valid
      out.factors = {{Mat::Zero(Eigen::Index(t.level) * t.a_dim, t.a_dim),
                      Mat::Zero(t.b_dim, Eigen::Index(t.level) * t.b_dim)}};
      return out;
    }
    if (out.factors.size() == before) break;
  }
  return out;
}

namespace {

using Factors = std::vector<std::pair<Mat, Mat>>;

Factors apply_gauge(const Factors& f, const Mat& g) {
  const int r = int(f.size());
  Mat ginvt = g.inverse().transpose();
  Factors out(r);
  for (int k = 0; k < r; ++k) {
    Mat a = Mat::Zero(f[0].first.rows(), f[0].first.cols());
    Mat b = Mat::Zero(f[0].second.rows(), f[0].second.cols());
    for (int l = 0; l < r; ++l) {
      a += g(k, l) * f[l].first;
      b += ginvt(k, l) * f[l].second;
    }
    out[k] = {a, b};
  }
  return out;
}

double haag_value(const Factors& f) {
  Mat s = Mat::Zero(f[0].first.rows(), f[0].first.rows());
  Mat t = Mat::Zero(f[0].second.cols(), f[0].second.cols());
  for (const auto& [a, b] : f) {
    s += a * a.adjoint();
    t += b.adjoint() * b;
  }
  return std::sqrt(std::max(0.0, lambda_max(s))) *
         std::sqrt(std::max(0.0, lambda_max(t)));
}

double proj_value(const Factors& f) {
  double sum = 0.0;
  for (const auto& [a, b] : f) sum += op_norm(a) * op_norm(b);
  return sum;
}

struct GaugeResult {
  double value = 0.0;
  Mat gauge;
  Factors witness;
};

// descent over G in GL(r) with multiplicative updates G <- G exp(-s D),
// numerical gradient, Armijo backtracking
GaugeResult gauge_descent(const Factors& base,
                          const std::function<double(const Factors&)>& obj,
                          Mat g0, int iters) {
  const int r = int(base.size());
  Mat g = std::move(g0);
  double val = obj(apply_gauge(base, g));
  const double h = 1e-6;
  double step = 0.1;
  int stall = 0;
  for (int it = 0; it < iters && stall < 8; ++it) {
    Mat grad = Mat::Zero(r, r);
    for (int k = 0; k < r; ++k)
      for (int l = 0; l < r; ++l) {
        Mat e = Mat::Zero(r, r);
        e(k, l) = h;
        double fre = obj(apply_gauge(base, g * (Mat::Identity(r, r) + e)));
        e(k, l) = Cx(0, h);
        double fim = obj(apply_gauge(base, g * (Mat::Identity(r, r) + e)));
        grad(k, l) = Cx((fre - val) / h, (fim - val) / h);
      }
    double gn = grad.norm();
    if (gn < 1e-12 * (1.0 + val)) break;
    Mat dir = grad / gn;
    double s = step;
    bool accepted = false;
    while (s > 1e-12) {
      Mat cand = g * (-s * dir).exp();
      double cv = obj(apply_gauge(base, cand));
      if (cv < val - 1e-4 * s * gn) {
        double gain = val - cv;
        g = cand;
        val = cv;
        step = std::min(0.5, 2.0 * s);
        accepted = true;
        stall = gain < 1e-13 * (1.0 + val) ? stall + 1 : 0;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) ++stall;
  }
  return {val, g, apply_gauge(base, g)};
}

GaugeResult gauge_optimize(const Factors& base,
                           const std::function<double(const Factors&)>& obj,
                           const TensorConfig& cfg,
                           const std::vector<Mat>& seed_gauges) {
  const int r = int(base.size());
  GaugeResult best = gauge_descent(base, obj, Mat::Identity(r, r), cfg.iters);
  auto consider = [&](const Mat& g0) {
    GaugeResult res = gauge_descent(base, obj, g0, cfg.iters);
    if (res.value < best.value) best = res;
  };
  for (const Mat& g : seed_gauges)
    if (g.rows() == r && g.cols() == r) consider(g);
  for (int rs = 1; rs < cfg.restarts; ++rs) {
    Rng rng = Rng::derive(cfg.seed, std::uint64_t(rs));
    double scale = 0.2 + 0.6 * rng.uniform();
    consider((scale * rng.ginibre(r, r)).exp());
  }
  return best;
}

Factors padded_reduced(const TensorElement& t, const TensorConfig& cfg) {
  TensorElement red = reduce_factors(t);
  Factors f = red.factors;
  for (int p = 0; p < cfg.padding; ++p)
    f.push_back({Mat::Zero(f[0].first.rows(), f[0].first.cols()),
                 Mat::Zero(f[0].second.rows(), f[0].second.cols())});
  return f;
}

}  // namespace

double haagerup_objective(const std::vector<std::pair<Mat, Mat>>& factors) {
  if (factors.empty()) throw InputError("haagerup_objective: empty list");
  return haag_value(factors);
}

NormBracket haagerup_norm(const TensorElement& t, const TensorConfig& cfg,
                          const std::vector<Mat>& seed_gauges) {
  if (cfg.restarts < 8 || cfg.iters < 200)
    throw InputError("haagerup_norm: budget below the supported floor");
  Factors base = padded_reduced(t, cfg);
  GaugeResult res = gauge_optimize(base, haag_value, cfg, seed_gauges);
  NormBracket out;
  out.lower = injective_norm(t);
  out.upper = std::max(res.value, out.lower);
  out.method = "gauge-descent-upper/spatial-lower";
  out.lower_witness = "operator norm of the Kronecker representation";
  out.upper_witness = res.witness;
  out.best_gauge = res.gauge;
  return out;
}

StarMode star_mode_from_string(const std::string& s) {
  if (s == "product") return StarMode::Product;
  if (s == "haagerup_flip") return StarMode::HaagerupFlip;
  if (s == "adjoint_space") return StarMode::AdjointSpace;
  throw InputError("unknown star mode: " + s);
}

namespace {

Mat super_star(const Mat& m, const GradedDim& d) {
  return d.epsilon() * m.adjoint() * d.epsilon();
}

// stackwise superinvolution with block transpose: an n-stack of column
// blocks becomes an n-row of blocks and vice versa
Mat star_stack(const Mat& m, const GradedDim& d, int level, bool to_row) {
  const int s = d.size();
  if (level == 1) return super_star(m, d);
  if (to_row) {
    Mat out(s, level * s);
    for (int i = 0; i < level; ++i)
      out.block(0, i * s, s, s) = super_star(m.block(i * s, 0, s, s), d);
    return out;
  }
  Mat out(level * s, s);
  for (int j = 0; j < level; ++j)
    out.block(j * s, 0, s, s) = super_star(m.block(0, j * s, s, s), d);
  return out;
}

}  // namespace

TensorElement star_tensor(const TensorElement& t, StarMode mode) {
  std::vector<std::pair<Mat, Mat>> f;
  f.reserve(t.factors.size());
  switch (mode) {
    case StarMode::Product: {
      if (t.level != 1)
        throw InputError("product star: only level 1 is supported");
      for (const auto& [a, b] : t.factors)
        f.push_back({super_star(a, t.a_grading), super_star(b, t.b_grading)});
      return TensorElement(t.a_grading, t.b_grading, f, 1);
    }
    case StarMode::HaagerupFlip: {
      for (const auto& [a, b] : t.factors)
        f.push_back({star_stack(b, t.b_grading, t.level, false),
                     star_stack(a, t.a_grading, t.level, true)});
      return TensorElement(t.b_grading, t.a_grading, f, t.level);
    }
    case StarMode::AdjointSpace: {
      if (t.a_dim != t.b_dim)
        throw InputError("adjoint-space star needs equal factor sizes");
      if (t.level != 1)
        throw InputError("adjoint-space star: only level 1 is supported");
      for (const auto& [a, b] : t.factors)
        f.push_back({b.conjugate(), a.conjugate()});
      return TensorElement(t.b_grading, t.a_grading, f, 1);
    }
  }
  throw InputError("unknown star mode");
}

NormBracket symmetrized_haagerup(const TensorElement& t,
                                 const TensorConfig& cfg) {
  NormBracket h = haagerup_norm(t, cfg);
  NormBracket hs = haagerup_norm(star_tensor(t, StarMode::Product), cfg);
  NormBracket out;
  out.lower = std::max(h.lower, hs.lower);
  out.upper = std::max(h.upper, hs.upper);
  out.method = "max-of-haagerup-brackets";
  out.lower_witness = "larger spatial certificate of the element/involute";
  out.upper_witness = h.upper >= hs.upper ? h.upper_witness : hs.upper_witness;
  out.best_gauge = h.upper >= hs.upper ? h.best_gauge : hs.best_gauge;
  return out;
}

NormBracket projective_norm(const TensorElement& t, const TensorConfig& cfg) {
  if (cfg.restarts < 8 || cfg.iters < 200)
    throw InputError("projective_norm: budget below the supported floor");
  Factors base = padded_reduced(t, cfg);
  GaugeResult res = gauge_optimize(base, proj_value, cfg, {});
  NormBracket out;
  out.lower = injective_norm(t);
  out.upper = std::max(res.value, out.lower);
  out.method = "gauge-descent-sum-upper/spatial-lower";
  out.lower_witness = "operator norm of the Kronecker representation";
  out.upper_witness = res.witness;
  out.best_gauge = res.gauge;
  return out;
}

Mat haagerup_seed_from_projective(const NormBracket& proj) {
  const int r = int(proj.upper_witness.size());
  Mat d = Mat::Zero(r, r);
  for (int k = 0; k < r; ++k) {
    double na = op_norm(proj.upper_witness[k].first);
    double nb = op_norm(proj.upper_witness[k].second);
    d(k, k) = (na > 1e-12 && nb > 1e-12) ? std::sqrt(nb / na) : 1.0;
  }
  return d * proj.best_gauge;
}

NormBracket dual_symmetrized_haagerup(const TensorElement& t,
                                      const TensorConfig& cfg,
                                      int num_functionals) {
  if (t.a_dim * t.b_dim > 16)
    throw InputError("dual norm: dimension cap exceeded");
  if (t.level != 1)
    throw InputError("dual norm: only level 1 is supported");
  NormBracket h = haagerup_norm(t, cfg);
  NormBracket p = projective_norm(t, cfg);
  Mat kt = kron_matrix(t);

  TensorConfig small = cfg;
  small.restarts = 8;
  small.iters = 200;
  double lower = 0.0;
  int max_terms = std::min(3, t.a_dim * t.b_dim);
  for (int s = 0; s < num_functionals; ++s) {
    Rng rng = Rng::derive(cfg.seed ^ 0x5f5f5f5full, std::uint64_t(s));
    int terms = 1 + int(rng.uniform() * max_terms);
    std::vector<std::pair<Mat, Mat>> f;
    for (int k = 0; k < terms; ++k)
      f.push_back({rng.ginibre(t.a_dim, t.a_dim),
                   rng.ginibre(t.b_dim, t.b_dim)});
    TensorElement phi(t.a_grading, t.b_grading, f, 1);
    double denom = symmetrized_haagerup(phi, small).upper;
    if (denom < 1e-10) continue;
    double pairing = std::abs((kt.transpose() * kron_matrix(phi)).trace());
    lower = std::max(lower, pairing / denom);
  }
  NormBracket out;
  out.lower = std::max(lower, h.lower);
  out.upper = std::min(h.upper, p.upper);
  out.lower = std::min(out.lower, out.upper);
  out.method = "heuristic-dual-lower";
  out.lower_witness =
      "trace pairing against sampled functionals, spatial floor";
  out.upper_witness =
      h.upper <= p.upper ? h.upper_witness : p.upper_witness;
  out.best_gauge = h.best_gauge;
  return out;
}

std::pair<NormBracket, NormBracket> haagerup_with_flip(
    const TensorElement& t, const TensorConfig& cfg) {
  TensorElement tf = star_tensor(t, StarMode::HaagerupFlip);
  NormBracket h1 = haagerup_norm(t, cfg);
  NormBracket h2 = haagerup_norm(tf, cfg);
  // the flip maps decompositions to decompositions of the involute with the
  // same objective value, so each witness transports to the other side
  TensorElement w1(t.a_grading, t.b_grading, h1.upper_witness, t.level);
  TensorElement w2(tf.a_grading, tf.b_grading, h2.upper_witness, tf.level);
  Factors w1f = star_tensor(w1, StarMode::HaagerupFlip).factors;
  Factors w2f = star_tensor(w2, StarMode::HaagerupFlip).factors;
  double v1f = haag_value(w1f);
  double v2f = haag_value(w2f);
  if (v1f < h2.upper) {
    h2.upper = std::max(v1f, h2.lower);
    h2.upper_witness = w1f;
  }
  if (v2f < h1.upper) {
    h1.upper = std::max(v2f, h1.lower);
    h1.upper_witness = w2f;
  }
  return {h1, h2};
}

bool finite_dim_cstar_tensor(const TensorElement& t, PositivityCheck check,
                             double tol) {
  if (t.level != 1)
    throw InputError("positivity check: only level 1 is supported");
  GradedDim d = GradedDim::product(t.a_grading, t.b_grading);
  GradedOperator x(d, kron_matrix(t));
  return check == PositivityCheck::EpsPositive ? is_epsilon_positive(x, tol)
                                               : is_superpositive(x, tol);
}

}  // namespace sos
