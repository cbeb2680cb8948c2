#include "sos/norms.hpp"

#include <algorithm>
#include <cmath>

#include "sos/rng.hpp"

namespace sos {

namespace {

double lambda_max_field(const Mat& m, double theta) {
  Mat h = 0.5 * (std::polar(1.0, theta) * m +
                 std::polar(1.0, -theta) * m.adjoint());
  return lambda_max(h);
}

// golden-section maximization of f on [lo, hi] down to width wtol
template <class F>
double golden_max(F&& f, double lo, double hi, double wtol, double* arg) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > wtol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  double mid = 0.5 * (a + b);
  double fm = f(mid);
  if (arg) *arg = mid;
  return std::max(fm, std::max(fc, fd));
}

}  // namespace

RadiusResult numerical_radius(const Mat& m, double tol) {
  if (m.rows() != m.cols())
    throw InputError("numerical_radius: non-square input");
  const int n = int(m.rows());
  RadiusResult res;
  res.maximizer_vector = Vec::Zero(n);
  if (n == 0) return res;
  res.maximizer_vector(0) = 1.0;
  double lip = op_norm(m);
  if (lip < 1e-300) return res;

  const int grid = 64;
  const double step = 2.0 * kPi / grid;
  std::vector<double> vals(grid);
  int best = 0;
  for (int i = 0; i < grid; ++i) {
    vals[i] = lambda_max_field(m, i * step);
    if (vals[i] > vals[best]) best = i;
  }
  // refine around the three best grid points
  std::vector<int> order(grid);
  for (int i = 0; i < grid; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return vals[a] > vals[b]; });
  double wtol = std::min(step, tol / lip);
  double best_theta = best * step, best_val = vals[best];
  for (int k = 0; k < 3; ++k) {
    double center = order[k] * step;
    double arg = center;
    double v = golden_max(
        [&](double t) { return lambda_max_field(m, t); }, center - step,
        center + step, wtol, &arg);
    if (v > best_val) {
      best_val = v;
      best_theta = arg;
    }
  }
  best_theta = std::fmod(best_theta + 2.0 * kPi, 2.0 * kPi);
  Mat h = 0.5 * (std::polar(1.0, best_theta) * m +
                 std::polar(1.0, -best_theta) * m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  res.value = best_val;
  res.maximizer_theta = best_theta;
  res.maximizer_vector = es.eigenvectors().col(n - 1);
  res.certified_error = lip * wtol;
  return res;
}

RadiusResult strong_norm(const GradedOperator& x, double tol) {
  return numerical_radius(x.dim.epsilon() * x.data, tol);
}

RadiusResult strong_norm(const AmplifiedOperator& x, double tol) {
  return numerical_radius(x.epsilon() * x.data, tol);
}

RadiusResult sigma_strong_norm(const GradedOperator& x, double tol) {
  Mat m = even_part(x).data + x.dim.epsilon() * odd_part(x).data;
  return numerical_radius(m, tol);
}

double derived_matrix_norm(const GradedOperator& x, double tol) {
  const int d = x.dim.size();
  Mat m = Mat::Zero(2 * d, 2 * d);
  m.block(0, d, d, d) = x.data;
  return 2.0 * strong_norm(AmplifiedOperator(2, x.dim, m), tol).value;
}

double derived_matrix_norm(const AmplifiedOperator& x, double tol) {
  const int d = x.base.size() * x.level;
  Mat m = Mat::Zero(2 * d, 2 * d);
  m.block(0, d, d, d) = x.data;
  return 2.0 * strong_norm(AmplifiedOperator(2 * x.level, x.base, m), tol)
                   .value;
}

double seminorm_p_omega(const GradedOperator& x, Cx omega, double tol) {
  GradedOperator xs = superinvolve(x);
  GradedOperator y(x.dim, omega * x.data + std::conj(omega) * xs.data);
  return 0.5 * strong_norm(y, tol).value;
}

double seminorm_P_omega(const GradedOperator& x, Cx omega) {
  GradedOperator xs = superinvolve(x);
  return 0.5 * op_norm(omega * x.data + std::conj(omega) * xs.data);
}

namespace {

template <class F>
double sup_over_phases(F&& f, int grid_size, double wtol) {
  if (grid_size < 16) throw InputError("omega grid too small");
  const double step = 2.0 * kPi / grid_size;
  std::vector<double> vals(grid_size);
  int best = 0;
  for (int i = 0; i < grid_size; ++i) {
    vals[i] = f(i * step);
    if (vals[i] > vals[best]) best = i;
  }
  double center = best * step;
  double v = golden_max(f, center - step, center + step, wtol, nullptr);
  return std::max(v, vals[best]);
}

}  // namespace

double r_norm(const GradedOperator& x, int grid_size, double tol) {
  double scale = std::max(op_norm(x.data), 1e-12);
  return sup_over_phases(
      [&](double t) { return seminorm_p_omega(x, std::polar(1.0, t), tol); },
      grid_size, tol / scale);
}

double R_norm(const GradedOperator& x, int grid_size, double tol) {
  double scale = std::max(op_norm(x.data), 1e-12);
  return sup_over_phases(
      [&](double t) { return seminorm_P_omega(x, std::polar(1.0, t)); },
      grid_size, tol / scale);
}

namespace {

AmplifiedOperator direct_sum(const AmplifiedOperator& x,
                             const AmplifiedOperator& y) {
  const int d = x.base.size();
  const int nx = x.level * d, ny = y.level * d;
  Mat m = Mat::Zero(nx + ny, nx + ny);
  m.topLeftCorner(nx, nx) = x.data;
  m.bottomRightCorner(ny, ny) = y.data;
  return AmplifiedOperator(x.level + y.level, x.base, m);
}

AmplifiedOperator off_corner(const AmplifiedOperator& x) {
  const int d = x.base.size() * x.level;
  Mat m = Mat::Zero(2 * d, 2 * d);
  m.block(0, d, d, d) = x.data;
  return AmplifiedOperator(2 * x.level, x.base, m);
}

}  // namespace

AxiomMargins check_sigma_axioms(const std::vector<AmplifiedOperator>& samples,
                                const std::vector<Mat>& scalars, double tol) {
  AxiomMargins out;
  const double rtol = tol / 10.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const AmplifiedOperator& x = samples[i];
    const int d = x.base.size();
    double sn = strong_norm(x, rtol).value;
    double on = op_norm(x.data);

    // (Sigma M1) against the next sample over the same base space
    if (i + 1 < samples.size() && samples[i + 1].base == x.base) {
      const AmplifiedOperator& y = samples[i + 1];
      double sy = strong_norm(y, rtol).value;
      double ds = strong_norm(direct_sum(x, y), rtol).value;
      out.m1 = std::max(out.m1, std::abs(ds - std::max(sn, sy)));
    }

    // (Sigma M2) for every scalar matrix with matching column count
    for (const Mat& a : scalars) {
      if (int(a.cols()) != x.level) continue;
      Mat amp = kron(a, Mat::Identity(d, d));
      AmplifiedOperator y(int(a.rows()), x.base, amp * x.data * amp.adjoint());
      double lhs = strong_norm(y, rtol).value;
      double an = op_norm(a);
      out.m2 = std::max(out.m2, lhs - an * an * sn);
    }

    // (h Sigma M*) on the hermitian part
    AmplifiedOperator h(x.level, x.base,
                        0.5 * (x.data + superinvolve(x).data));
    double hs = strong_norm(h, rtol).value;
    double hc = 2.0 * strong_norm(off_corner(h), rtol).value;
    out.hm_star = std::max(out.hm_star, std::abs(hs - hc));

    // the chain: strong norm = diag(x,-x) = offdiag(x,x) <= operator norm
    AmplifiedOperator neg(x.level, x.base, -x.data);
    double diag = strong_norm(direct_sum(x, neg), rtol).value;
    const int n = x.level * d;
    Mat om = Mat::Zero(2 * n, 2 * n);
    om.block(0, n, n, n) = x.data;
    om.block(n, 0, n, n) = x.data;
    double offd = strong_norm(AmplifiedOperator(2 * x.level, x.base, om),
                              rtol).value;
    double c = std::max(std::abs(diag - sn), std::abs(offd - sn));
    c = std::max(c, sn - on);
    out.chain = std::max(out.chain, c);

    out.derived =
        std::max(out.derived, std::abs(derived_matrix_norm(x, rtol) - on));
  }
  return out;
}

// --- linear maps ---

LinearMapSpec::LinearMapSpec(GradedDim dd, GradedDim cd,
                             std::vector<Mat> basis, std::vector<Mat> imgs,
                             std::vector<Mat> sub)
    : domain_dim(dd),
      codomain_dim(cd),
      domain_basis(std::move(basis)),
      images(std::move(imgs)),
      subspace_basis(std::move(sub)) {
  if (domain_basis.empty()) throw InputError("linear map: empty domain basis");
  if (domain_basis.size() != images.size())
    throw InputError("linear map: basis/image length mismatch");
  const int d = domain_dim.size();
  const int c = codomain_dim.size();
  basis_cols_.resize(d * d, Eigen::Index(domain_basis.size()));
  for (std::size_t k = 0; k < domain_basis.size(); ++k) {
    if (domain_basis[k].rows() != d || domain_basis[k].cols() != d)
      throw InputError("linear map: basis element has wrong shape");
    if (images[k].rows() != c || images[k].cols() != c)
      throw InputError("linear map: image has wrong shape");
    basis_cols_.col(k) = domain_basis[k].reshaped();
  }
  solver_.compute(basis_cols_);
  if (solver_.rank() < Eigen::Index(domain_basis.size()))
    throw InputError("linear map: basis not linearly independent");
  for (const Mat& t : subspace_basis)
    if (t.rows() != d || t.cols() != d)
      throw InputError("linear map: subspace element has wrong shape");
}

Mat LinearMapSpec::apply(const Mat& x) const {
  const int d = domain_dim.size();
  if (x.rows() != d || x.cols() != d)
    throw InputError("linear map: argument has wrong shape");
  Vec rhs = x.reshaped();
  Vec coeff = solver_.solve(rhs);
  double resid = (basis_cols_ * coeff - rhs).norm();
  if (resid > 1e-8 * (1.0 + rhs.norm()))
    throw InputError("linear map: argument outside the domain span");
  const int c = codomain_dim.size();
  Mat out = Mat::Zero(c, c);
  for (std::size_t k = 0; k < images.size(); ++k) out += coeff(k) * images[k];
  return out;
}

Mat LinearMapSpec::apply_amplified(const Mat& x, int level) const {
  const int d = domain_dim.size();
  const int c = codomain_dim.size();
  if (x.rows() != level * d || x.cols() != level * d)
    throw InputError("linear map: amplified argument has wrong shape");
  Mat out(level * c, level * c);
  for (int i = 0; i < level; ++i)
    for (int j = 0; j < level; ++j)
      out.block(i * c, j * c, c, c) = apply(x.block(i * d, j * d, d, d));
  return out;
}

namespace {

Mat unit_mat(int m, int i, int j) {
  Mat e = Mat::Zero(m, m);
  e(i, j) = 1.0;
  return e;
}

std::vector<Mat> lower_triangular_basis(int m) {
  std::vector<Mat> t;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) t.push_back(unit_mat(m, i, j));
  return t;
}

}  // namespace

LinearMapSpec corner_projection_map(int m) {
  if (m < 2) throw InputError("corner projection needs size >= 2");
  GradedDim d = GradedDim::diag(m, 0);
  std::vector<Mat> basis, imgs;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      basis.push_back(unit_mat(m, i, j));
      imgs.push_back(i == m - 1 && j == m - 1 ? Mat::Zero(m, m).eval()
                                              : unit_mat(m, i, j));
    }
  return LinearMapSpec(d, d, basis, imgs, lower_triangular_basis(m));
}

LinearMapSpec diagonal_equalizer_map(int m) {
  if (m < 2) throw InputError("diagonal equalizer needs size >= 2");
  GradedDim d = GradedDim::diag(m, 0);
  // averages the last two diagonal entries, killing their difference
  Mat avg = 0.5 * (unit_mat(m, m - 2, m - 2) + unit_mat(m, m - 1, m - 1));
  std::vector<Mat> basis, imgs;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      basis.push_back(unit_mat(m, i, j));
      bool last_diag = (i == j) && (i >= m - 2);
      imgs.push_back(last_diag ? avg : unit_mat(m, i, j));
    }
  return LinearMapSpec(d, d, basis, imgs, lower_triangular_basis(m));
}

LinearMapSpec identity_map(const GradedDim& d) {
  const int m = d.size();
  std::vector<Mat> basis;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) basis.push_back(unit_mat(m, i, j));
  return LinearMapSpec(d, d, basis, basis, basis);
}

namespace {

struct PairingObjective {
  Mat m;  // eps * x
  double target_abs = 0.0;
  double target_re = 0.0;
  int sign = 0;  // 0: ignore signs, otherwise required sign of Re alpha

  Cx alpha(const Vec& xi) const { return xi.dot(m * xi); }

  // score >= 0 exactly when xi witnesses the pair
  double score(const Vec& xi) const {
    Cx a = alpha(xi);
    double re = sign == 0 ? std::abs(a.real()) : sign * a.real();
    return std::min(std::abs(a) - target_abs, re - target_re);
  }

  // Wirtinger gradient of the active branch of the min
  Vec grad(const Vec& xi) const {
    Cx a = alpha(xi);
    double aa = std::abs(a);
    double re = sign == 0 ? std::abs(a.real()) : sign * a.real();
    Vec g;
    if (aa - target_abs <= re - target_re) {
      if (aa < 1e-14) return (m + m.adjoint()) * xi;
      g = (std::conj(a) * (m * xi) + a * (m.adjoint() * xi)) / (2.0 * aa);
    } else {
      double s = sign == 0 ? (a.real() >= 0 ? 1.0 : -1.0) : double(sign);
      g = 0.5 * s * ((m * xi) + (m.adjoint() * xi));
    }
    return g;
  }
};

}  // namespace

RscReport rsc_check(const LinearMapSpec& map, int num_eta, int xi_budget,
                    std::uint64_t seed, double tol, int num_x,
                    bool require_sign) {
  if (xi_budget < 100) throw InputError("rsc_check: budget too small");
  const std::vector<Mat>& tbasis = map.subspace_basis.empty()
                                       ? map.domain_basis
                                       : map.subspace_basis;
  const Mat eps_dom = map.domain_dim.epsilon();
  const Mat eps_cod = map.codomain_dim.epsilon();
  const int dd = map.domain_dim.size();
  const int dc = map.codomain_dim.size();
  const int restarts = 32;
  const int steps = std::max(20, xi_budget / restarts);

  RscReport rep;
  rep.pairs = num_eta * num_x;
  for (int pi = 0; pi < num_eta; ++pi) {
    for (int xj = 0; xj < num_x; ++xj) {
      int idx = pi * num_x + xj;
      Rng rng = Rng::derive(seed, std::uint64_t(idx));
      Vec eta = rng.unit_vector(dc);
      Mat x = Mat::Zero(dd, dd);
      for (const Mat& t : tbasis) x += rng.cgaussian() * t;
      double xs = op_norm(x);
      if (xs > 1e-12) x /= xs;

      Cx beta = eta.dot(eps_cod * (map.apply(x) * eta));
      PairingObjective obj;
      obj.m = eps_dom * x;
      obj.target_abs = std::abs(beta);
      obj.target_re = require_sign ? beta.real() : std::abs(beta.real());
      obj.sign = require_sign ? (beta.real() >= 0 ? 1 : -1) : 0;
      if (require_sign && beta.real() < 0) {
        obj.target_re = -beta.real();
        obj.sign = -1;
      }

      double best = -1e300;
      for (int r = 0; r < restarts && best < -tol; ++r) {
        Vec xi = (r == 0 && dd == dc) ? eta : rng.unit_vector(dd);
        double cur = obj.score(xi);
        double step = 0.1;
        for (int it = 0; it < steps && cur < -tol; ++it) {
          Vec g = obj.grad(xi);
          Vec cand = xi + step * g;
          double nn = cand.norm();
          if (nn < 1e-300) break;
          cand /= nn;
          double cs = obj.score(cand);
          if (cs > cur) {
            xi = cand;
            cur = cs;
            step = std::min(0.1, step * 1.5);
          } else {
            step *= 0.5;
            if (step < 1e-8) break;
          }
        }
        best = std::max(best, cur);
      }
      if (best >= -tol) {
        ++rep.witnessed;
      } else {
        rep.counterexample_found = true;
        double deficit = -best;
        if (deficit > rep.worst_deficit) {
          rep.worst_deficit = deficit;
          rep.worst_pair_index = idx;
        }
      }
    }
  }
  rep.witnessed_fraction =
      rep.pairs > 0 ? double(rep.witnessed) / rep.pairs : 1.0;
  return rep;
}

ContractionReport hermitian_contractive_check(const LinearMapSpec& map,
                                              int level, int num_samples,
                                              std::uint64_t seed, double tol) {
  if (level < 1 || level > 4)
    throw InputError("hermitian_contractive_check: level out of range");
  const int dd = map.domain_dim.size();
  const int n = level * dd;
  ContractionReport rep;
  rep.samples = num_samples;
  for (int s = 0; s < num_samples; ++s) {
    Rng rng = Rng::derive(seed, std::uint64_t(s));
    Mat g = rng.ginibre(n, n);
    AmplifiedOperator raw(level, map.domain_dim, g);
    Mat h = 0.5 * (g + superinvolve(raw).data);
    double hn = op_norm(h);
    if (hn > 1e-12) h /= hn;
    double img = op_norm(map.apply_amplified(h, level));
    double excess = img - 1.0;
    if (excess > tol) {
      ++rep.violations;
      if (excess > rep.worst_excess) {
        rep.worst_excess = excess;
        rep.worst_sample_index = s;
      }
    } else {
      rep.worst_excess = std::max(rep.worst_excess, excess);
    }
  }
  return rep;
}

}  // namespace sos
