#include "sos/verify.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "sos/group.hpp"
#include "sos/norms.hpp"
#include "sos/rng.hpp"

namespace sos {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

class Reporter {
 public:
  explicit Reporter(std::ostream& out) : out_(out) {}

  void check(const std::string& suite, const std::string& name, double margin,
             double allowed) {
    bool ok = margin <= allowed;
    out_ << "[" << suite << "] " << name << ": " << (ok ? "pass" : "FAIL")
         << " (worst " << fmt(margin) << ", allowed " << fmt(allowed) << ")\n";
    ++total_;
    if (!ok) ++failures_;
  }

  void check_bool(const std::string& suite, const std::string& name, bool ok) {
    out_ << "[" << suite << "] " << name << ": " << (ok ? "pass" : "FAIL")
         << "\n";
    ++total_;
    if (!ok) ++failures_;
  }

  void report(const std::string& suite, const std::string& name,
              const std::string& text) {
    out_ << "[" << suite << "] " << name << ": report " << text << "\n";
  }

  int failures() const { return failures_; }
  int total() const { return total_; }

 private:
  std::ostream& out_;
  int total_ = 0;
  int failures_ = 0;
};

GradedDim dim_cycle(int i) {
  switch (i % 4) {
    case 0: return GradedDim::diag(1, 1);
    case 1: return GradedDim::diag(2, 1);
    case 2: return GradedDim::diag(2, 2);
    default: return GradedDim::diag(3, 1);
  }
}

double maxabs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

// ---------------------------------------------------------------- core

void run_core(const SuiteOptions& o, Reporter& rep) {
  const int n = o.samples;

  double iota_err = 0.0;
  for (int i = 0; i < n; ++i) {
    GradedDim d = dim_cycle(i);
    GradedOperator x = random_graded(RandomKind::Generic, d, o.seed + 11 + i);
    GradedOperator y =
        random_graded(RandomKind::Generic, d, o.seed + 500011 + i);
    Mat lhs = iota(twisted_product(x, y, Cx(-1, 0))).data;
    Mat rhs = iota(x).data * iota(y).data;
    iota_err = std::max(iota_err, maxabs(lhs - rhs));
    iota_err = std::max(
        iota_err,
        maxabs(iota(superinvolve(x)).data - iota(x).data.adjoint()));
  }
  rep.check("core", "iota is a star-homomorphism", iota_err, 1e-12);

  double est_err = 0.0;
  for (int i = 0; i < n; ++i) {
    GradedOperator x =
        random_graded(RandomKind::Generic, dim_cycle(i), o.seed + 21 + i);
    double xn = op_norm(x.data), in = op_norm(iota(x).data);
    est_err = std::max(est_err, 0.5 * xn - in);
    est_err = std::max(est_err, in - 2.0 * xn);
  }
  rep.check("core", "norm estimate ||x||/2 <= ||iota(x)|| <= 2||x||", est_err,
            1e-10);

  std::vector<double> tgrid;
  for (int i = 0; i <= 40; ++i) tgrid.push_back(-10.0 + 0.5 * i);
  int disagreements = 0;
  for (int i = 0; i < n; ++i) {
    GradedDim d = dim_cycle(i);
    Rng rng = Rng::derive(o.seed + 31, std::uint64_t(i));
    OmegaUnitary w(d, rng.unit_phase(), rng.unit_phase());
    GradedOperator x = random_graded(RandomKind::Generic, d, o.seed + 41 + i);
    if (i % 2 == 0) {
      // an omega-hermitian contraction: both sides of the test must be true
      Mat h = 0.5 * (x.data + omega_involve(x, w).data);
      x = GradedOperator(d, h / std::max(1.0, op_norm(h)));
    } else if (i % 4 == 1) {
      // omega-hermitian of norm 1.5: violated at t = 0
      Mat h = 0.5 * (x.data + omega_involve(x, w).data);
      double hn = op_norm(h);
      if (hn > 1e-8) x = GradedOperator(d, 1.5 * h / hn);
    } else {
      // non-hermitian contraction
      x = GradedOperator(d, x.data / std::max(1.0, op_norm(x.data)));
      if (is_omega_hermitian(x, w, 1e-6)) continue;
    }
    if (!lemma2_check(x, w, tgrid, 1e-9)) ++disagreements;
  }
  rep.check("core", "hermitian-contraction line characterization",
            double(disagreements), 0.0);

  double spec_imag = 0.0;
  int cone_disagree = 0;
  for (int i = 0; i < n; ++i) {
    GradedDim d = dim_cycle(i);
    bool want_pos = i % 2 == 0;
    GradedOperator x = random_graded(
        want_pos ? RandomKind::EpsPositive : RandomKind::Hermitian, d,
        o.seed + 51 + i);
    for (Cx lam : graded_spectrum(x))
      spec_imag = std::max(spec_imag, std::abs(lam.imag()));
    bool psd_says = is_epsilon_positive(x, 1e-9);
    // quadratic-form side: sampled directions plus the extremal eigenvector
    Mat exm = d.epsilon() * x.data;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (exm + exm.adjoint()));
    double qmin = es.eigenvalues().minCoeff();
    Rng rng = Rng::derive(o.seed + 61, std::uint64_t(i));
    for (int s = 0; s < 200; ++s) {
      Vec xi = rng.unit_vector(d.size());
      qmin = std::min(qmin, (xi.dot(exm * xi)).real());
    }
    double scale = 1.0 + op_norm(x.data);
    if (psd_says != (qmin >= -1e-7 * scale)) ++cone_disagree;
  }
  rep.check("core", "hermitian graded spectrum is real", spec_imag, 1e-10);
  rep.check("core", "quadratic-form and spectral positivity agree",
            double(cone_disagree), 0.0);

  double su_err = 0.0, even_err = 0.0;
  int su_fail = 0;
  for (int i = 0; i < n; ++i) {
    GradedDim d = dim_cycle(i);
    GradedOperator u =
        random_graded(RandomKind::Superunitary, d, o.seed + 71 + i);
    if (!is_superunitary(u, 1e-8)) ++su_fail;
    su_err = std::max(su_err, 1.0 - op_norm(u.data));
    GradedOperator v =
        random_graded(RandomKind::EvenUnitary, d, o.seed + 81 + i);
    if (!is_superunitary(v, 1e-8)) ++su_fail;
    even_err = std::max(even_err, std::abs(op_norm(v.data) - 1.0));
  }
  rep.check("core", "sampled superunitaries verify", double(su_fail), 0.0);
  rep.check("core", "superunitary norm at least one", su_err, 1e-12);
  rep.check("core", "even unitary norm equals one", even_err, 1e-9);

  double fiber_err = 0.0;
  for (int i = 0; i < n; ++i) {
    GradedDim d = dim_cycle(i);
    Rng rng = Rng::derive(o.seed + 91, std::uint64_t(i));
    Cx omega = rng.unit_phase();
    GradedOperator x = random_graded(RandomKind::Generic, d, o.seed + 101 + i);
    GradedOperator y =
        random_graded(RandomKind::Generic, d, o.seed + 600101 + i);
    Mat lhs = fiber_iso(twisted_product(x, y, omega), omega).data;
    Mat rhs = fiber_iso(x, omega).data * fiber_iso(y, omega).data;
    fiber_err = std::max(fiber_err, maxabs(lhs - rhs));
  }
  rep.check("core", "fiber evaluation is multiplicative", fiber_err, 1e-10);

  double abs_err = 0.0;
  int abs_fail = 0;
  for (int i = 0; i < n / 2; ++i) {
    GradedDim d = dim_cycle(i);
    GradedOperator x = random_graded(RandomKind::Generic, d, o.seed + 111 + i);
    GradedOperator a = graded_abs(x);
    if (!is_superpositive(a, 1e-7)) ++abs_fail;
    Mat sq = twisted_product(a, a, Cx(-1, 0)).data;
    Mat tgt = twisted_product(superinvolve(x), x, Cx(-1, 0)).data;
    abs_err = std::max(abs_err, maxabs(sq - tgt));
  }
  rep.check("core", "graded absolute value is superpositive", double(abs_fail),
            0.0);
  rep.check("core", "graded absolute value squares back", abs_err, 1e-8);

  // the stored cone-separating element
  GradedDim d11 = GradedDim::diag(1, 1);
  Mat cm(2, 2);
  cm << 1, 1, -1, -1;
  GradedOperator cx(d11, cm);
  bool sep = is_epsilon_positive(cx, 1e-9) && !is_superpositive(cx, 1e-9);
  std::vector<Cx> sp = graded_spectrum(cx);
  double sp_err = std::max(std::abs(sp[0]), std::abs(sp[1] - Cx(2, 0)));
  double ab_err = maxabs(graded_abs(cx).data -
                         std::sqrt(2.0) * Mat::Identity(2, 2));
  rep.check_bool("core", "cone-separating element classified", sep);
  rep.check("core", "cone-separating element spectrum {0,2}", sp_err, 1e-10);
  rep.check("core", "cone-separating element absolute value", ab_err, 1e-9);
}

// ---------------------------------------------------------------- norms

void run_norms(const SuiteOptions& o, Reporter& rep) {
  const int n = std::min(o.samples, 200);

  double rad_err = 0.0, bound_err = 0.0, inv_err = 0.0;
  for (int i = 0; i < n; ++i) {
    GradedDim d = dim_cycle(i);
    GradedOperator x = random_graded(RandomKind::Generic, d, o.seed + 211 + i);
    double w = numerical_radius(x.data, 1e-9).value;
    double wd = numerical_radius(x.data.adjoint(), 1e-9).value;
    double on = op_norm(x.data);
    rad_err = std::max(rad_err, std::abs(w - wd));
    bound_err = std::max(bound_err, std::max(w - on, on - 2.0 * w));
    GradedOperator u =
        random_graded(RandomKind::EvenUnitary, d, o.seed + 221 + i);
    GradedOperator xc(d, u.data * x.data * u.data.adjoint());
    inv_err = std::max(inv_err, std::abs(strong_norm(xc, 1e-9).value -
                                         strong_norm(x, 1e-9).value));
  }
  rep.check("norms", "radius equals adjoint radius", rad_err, 1e-6);
  rep.check("norms", "radius within [||M||/2, ||M||]", bound_err, 1e-6);
  rep.check("norms", "strong norm invariant under even unitaries", inv_err,
            1e-6);

  double herm_err = 0.0, sig_err = 0.0, iso_err = 0.0, der_err = 0.0;
  for (int i = 0; i < n; ++i) {
    GradedDim d = dim_cycle(i);
    GradedOperator h =
        random_graded(RandomKind::Hermitian, d, o.seed + 231 + i);
    herm_err = std::max(
        herm_err, std::abs(strong_norm(h, 1e-9).value - op_norm(h.data)));
    GradedOperator x = random_graded(RandomKind::Generic, d, o.seed + 241 + i);
    sig_err = std::max(sig_err,
                       std::abs(sigma_strong_norm(x, 1e-9).value -
                                numerical_radius(iota(x).data, 1e-9).value));
    GradedOperator xs = superinvolve(x);
    iso_err = std::max(iso_err, std::abs(strong_norm(xs, 1e-9).value -
                                         strong_norm(x, 1e-9).value));
    iso_err = std::max(iso_err, std::abs(sigma_strong_norm(xs, 1e-9).value -
                                         sigma_strong_norm(x, 1e-9).value));
    der_err = std::max(
        der_err, std::abs(derived_matrix_norm(x, 1e-9) - op_norm(x.data)));
  }
  rep.check("norms", "hermitian strong norm equals operator norm", herm_err,
            1e-6);
  rep.check("norms", "sigma norm equals radius of iota", sig_err, 1e-6);
  rep.check("norms", "superinvolution is isometric", iso_err, 1e-6);
  rep.check("norms", "derived matrix norm equals operator norm", der_err,
            1e-5);

  {
    std::vector<AmplifiedOperator> samples;
    std::vector<Mat> scalars;
    int m = std::min(n, 60);
    for (int i = 0; i < m; ++i) {
      GradedDim d = i % 2 == 0 ? GradedDim::diag(1, 1) : GradedDim::diag(2, 1);
      int level = 1 + i % 2;
      Rng rng = Rng::derive(o.seed + 251, std::uint64_t(i));
      samples.emplace_back(level, d,
                           rng.ginibre(level * d.size(), level * d.size()));
    }
    Rng rng = Rng::derive(o.seed + 261, 0);
    scalars.push_back(rng.ginibre(1, 1));
    scalars.push_back(rng.ginibre(2, 2));
    scalars.push_back(rng.ginibre(1, 2));
    scalars.push_back(rng.ginibre(3, 2));
    Mat co(1, 2);
    co << 1, 0;  // a coisometry row
    scalars.push_back(co);
    AxiomMargins ax = check_sigma_axioms(samples, scalars, 1e-5);
    rep.check("norms", "direct sums take the max strong norm", ax.m1, 1e-5);
    rep.check("norms", "scalar compressions are contractive", ax.m2, 1e-5);
    rep.check("norms", "hermitian off-corner identity", ax.hm_star, 1e-5);
    rep.check("norms", "strong norm display chain", ax.chain, 1e-5);
    rep.check("norms", "derived norm inside the axiom check", ax.derived,
              1e-5);
  }

  double rr_err = 0.0;
  for (int i = 0; i < std::min(n, 10); ++i) {
    GradedDim d = i % 2 == 0 ? GradedDim::diag(1, 1) : GradedDim::diag(2, 1);
    GradedOperator x = random_graded(RandomKind::Generic, d, o.seed + 271 + i);
    double s = strong_norm(x, 1e-9).value;
    rr_err = std::max(rr_err, std::abs(r_norm(x, 128, 1e-7) - s));
    rr_err = std::max(rr_err, std::abs(R_norm(x, 128, 1e-7) - s));
  }
  rep.check("norms", "phase seminorm suprema match the strong norm", rr_err,
            1e-4);

  {
    LinearMapSpec id = identity_map(GradedDim::diag(2, 1));
    RscReport r = rsc_check(id, 10, 3200, o.seed + 281, 1e-6, 3);
    rep.check("norms", "identity map is really strongly contractive",
              1.0 - r.witnessed_fraction, 0.0);

    for (int m : {2, 3}) {
      LinearMapSpec phi = corner_projection_map(m);
      RscReport rr = rsc_check(phi, 10, 3200, o.seed + 291 + m, 1e-6, 3);
      ContractionReport cc =
          hermitian_contractive_check(phi, 2, 300, o.seed + 301 + m, 1e-7);
      rep.report("norms",
                 "corner-kernel projection m=" + std::to_string(m),
                 "rsc witnessed_fraction=" + fmt(rr.witnessed_fraction) +
                     " worst_deficit=" + fmt(rr.worst_deficit) +
                     " contraction_violations=" + std::to_string(cc.violations) +
                     " worst_excess=" + fmt(cc.worst_excess));
    }
    LinearMapSpec psi = diagonal_equalizer_map(3);
    RscReport rr = rsc_check(psi, 10, 3200, o.seed + 311, 1e-6, 3);
    ContractionReport cc =
        hermitian_contractive_check(psi, 2, 300, o.seed + 321, 1e-7);
    rep.report("norms", "difference-kernel projection m=3",
               "rsc witnessed_fraction=" + fmt(rr.witnessed_fraction) +
                   " worst_deficit=" + fmt(rr.worst_deficit) +
                   " contraction_violations=" + std::to_string(cc.violations) +
                   " worst_excess=" + fmt(cc.worst_excess));

    // a map that is not contractive at all, as a sanity counterpoint
    GradedDim d2 = GradedDim::diag(2, 0);
    LinearMapSpec twice(d2, d2, identity_map(d2).domain_basis, [&] {
      std::vector<Mat> imgs;
      for (const Mat& b : identity_map(d2).domain_basis)
        imgs.push_back(2.0 * b);
      return imgs;
    }());
    ContractionReport cc2 =
        hermitian_contractive_check(twice, 1, 50, o.seed + 331, 1e-7);
    rep.check("norms", "doubling map flagged as non-contractive",
              cc2.violations == 0 ? 1.0 : 0.0, 0.0);
  }
}

// ---------------------------------------------------------------- tensor

TensorElement random_tensor(std::uint64_t seed, int a_dim = 2, int b_dim = 2,
                            int terms = 2) {
  Rng rng = Rng::derive(seed, 0);
  std::vector<std::pair<Mat, Mat>> f;
  for (int k = 0; k < terms; ++k)
    f.push_back({rng.ginibre(a_dim, a_dim), rng.ginibre(b_dim, b_dim)});
  return TensorElement(GradedDim::diag(a_dim, 0), GradedDim::diag(b_dim, 0),
                       f, 1);
}

void run_tensor(const SuiteOptions& o, Reporter& rep) {
  TensorConfig cfg = o.budgets;
  cfg.seed = o.seed + 1000;

  {
    Rng rng = Rng::derive(o.seed + 411, 0);
    Mat a = rng.ginibre(2, 2), b = rng.ginibre(3, 3);
    TensorElement t = TensorElement::elementary(a, b);
    double expect = op_norm(a) * op_norm(b);
    NormBracket h = haagerup_norm(t, cfg);
    NormBracket p = projective_norm(t, cfg);
    double err = std::max({std::abs(injective_norm(t) - expect),
                           std::abs(h.lower - expect),
                           std::abs(h.upper - expect),
                           std::abs(p.lower - expect),
                           std::abs(p.upper - expect)});
    rep.check("tensor", "elementary tensors collapse to the norm product",
              err, 1e-6);
  }
  {
    double err = 0.0;
    for (int nn : {2, 3}) {
      std::vector<std::pair<Mat, Mat>> f;
      for (int i = 0; i < nn; ++i) {
        Mat a = Mat::Zero(nn, nn), b = Mat::Zero(nn, nn);
        a(i, 0) = 1.0;
        b(0, i) = 1.0;
        f.push_back({a, b});
      }
      TensorElement t(GradedDim::diag(nn, 0), GradedDim::diag(nn, 0), f, 1);
      NormBracket h = haagerup_norm(t, cfg);
      err = std::max({err, std::abs(h.lower - 1.0), std::abs(h.upper - 1.0)});
    }
    Mat e11 = Mat::Zero(2, 2), e22 = Mat::Zero(2, 2);
    e11(0, 0) = 1.0;
    e22(1, 1) = 1.0;
    TensorElement td(GradedDim::diag(2, 0), GradedDim::diag(2, 0),
                     {{e11, e11}, {e22, e22}}, 1);
    NormBracket hd = haagerup_norm(td, cfg);
    err = std::max({err, std::abs(hd.lower - 1.0), std::abs(hd.upper - 1.0)});
    rep.check("tensor", "matrix-unit chains have norm one", err, 1e-6);
  }

  double order_err = 0.0, witness_err = 0.0;
  for (int i = 0; i < 10; ++i) {
    TensorElement t = random_tensor(o.seed + 421 + i);
    double inj = injective_norm(t);
    NormBracket p = projective_norm(t, cfg);
    NormBracket h = haagerup_norm(t, cfg, {haagerup_seed_from_projective(p)});
    order_err = std::max(order_err, inj - h.upper);
    order_err = std::max(order_err, h.lower - h.upper);
    order_err = std::max(order_err, h.upper - p.upper);
    witness_err = std::max(
        witness_err, std::abs(haagerup_objective(h.upper_witness) - h.upper));
  }
  rep.check("tensor", "injective <= haagerup <= projective", order_err, 1e-8);
  rep.check("tensor", "upper witnesses re-evaluate to their bound",
            witness_err, 1e-9);

  double flip_err = 0.0;
  for (int i = 0; i < 5; ++i) {
    TensorElement t = random_tensor(o.seed + 431 + i, 2, 2, 2);
    auto [h1, h2] = haagerup_with_flip(t, cfg);
    flip_err = std::max(flip_err, std::abs(h1.upper - h2.upper));
    flip_err = std::max(flip_err, std::abs(h1.lower - h2.lower));
  }
  rep.check("tensor", "decomposition flip preserves the bracket", flip_err,
            1e-6);

  double gauge_err = 0.0;
  for (int i = 0; i < 3; ++i) {
    TensorElement t = random_tensor(o.seed + 441 + i);
    Rng rng = Rng::derive(o.seed + 451, std::uint64_t(i));
    int r = int(t.factors.size());
    Mat g = (0.4 * rng.ginibre(r, r)).exp();
    Mat git = g.inverse().transpose();
    std::vector<std::pair<Mat, Mat>> f(t.factors.size());
    for (int k = 0; k < r; ++k) {
      Mat a = Mat::Zero(2, 2), b = Mat::Zero(2, 2);
      for (int l = 0; l < r; ++l) {
        a += g(k, l) * t.factors[l].first;
        b += git(k, l) * t.factors[l].second;
      }
      f[k] = {a, b};
    }
    TensorElement t2(t.a_grading, t.b_grading, f, 1);
    gauge_err = std::max(gauge_err, std::abs(haagerup_norm(t, cfg).upper -
                                             haagerup_norm(t2, cfg).upper));
  }
  rep.check("tensor", "upper bound invariant under input gauge", gauge_err,
            1e-5);

  {
    double star_err = 0.0, inj_err = 0.0;
    for (int i = 0; i < 20; ++i) {
      GradedDim ga = GradedDim::diag(1, 1), gb = GradedDim::diag(1, 1);
      Rng rng = Rng::derive(o.seed + 461, std::uint64_t(i));
      TensorElement t(ga, gb,
                      {{rng.ginibre(2, 2), rng.ginibre(2, 2)},
                       {rng.ginibre(2, 2), rng.ginibre(2, 2)}},
                      1);
      for (StarMode mode : {StarMode::Product, StarMode::HaagerupFlip,
                            StarMode::AdjointSpace}) {
        TensorElement tt = star_tensor(star_tensor(t, mode), mode);
        for (std::size_t k = 0; k < t.factors.size(); ++k) {
          star_err = std::max(
              star_err, maxabs(tt.factors[k].first - t.factors[k].first));
          star_err = std::max(
              star_err, maxabs(tt.factors[k].second - t.factors[k].second));
        }
      }
      inj_err = std::max(
          inj_err, std::abs(injective_norm(star_tensor(t, StarMode::Product)) -
                            injective_norm(t)));
    }
    rep.check("tensor", "star maps square to the identity", star_err, 1e-14);
    rep.check("tensor", "product star preserves the injective norm", inj_err,
              1e-10);
  }

  double dual_err = 0.0;
  for (int i = 0; i < 2; ++i) {
    TensorElement t = random_tensor(o.seed + 471 + i);
    NormBracket h = haagerup_norm(t, cfg);
    NormBracket d = dual_symmetrized_haagerup(t, cfg, 6);
    dual_err = std::max(dual_err, d.lower - d.upper);
    dual_err = std::max(dual_err, injective_norm(t) - d.lower);
    dual_err = std::max(dual_err, d.upper - h.upper);
  }
  rep.check("tensor", "dual bracket sits inside its envelope", dual_err, 1e-9);

  {
    GradedDim d11 = GradedDim::diag(1, 1), d20 = GradedDim::diag(2, 0);
    TensorElement one = TensorElement::elementary(
        d11, d11, Mat::Identity(2, 2), Mat::Identity(2, 2));
    // under a nontrivial product grading the identity is superpositive but
    // not eps-positive (eps itself is not PSD)
    bool ok = !finite_dim_cstar_tensor(one, PositivityCheck::EpsPositive) &&
              finite_dim_cstar_tensor(one, PositivityCheck::Superpositive);
    TensorElement triv = TensorElement::elementary(Mat::Identity(2, 2),
                                                   Mat::Identity(2, 2));
    ok = ok && finite_dim_cstar_tensor(triv, PositivityCheck::EpsPositive) &&
         finite_dim_cstar_tensor(triv, PositivityCheck::Superpositive);
    Rng rng = Rng::derive(o.seed + 481, 0);
    Mat pa = d11.epsilon() * rng.psd(2), pb = d11.epsilon() * rng.psd(2);
    // make the factors even so the Kronecker positivity argument applies
    pa(0, 1) = pa(1, 0) = pb(0, 1) = pb(1, 0) = 0.0;
    TensorElement pos = TensorElement::elementary(d11, d11, pa, pb);
    ok = ok && finite_dim_cstar_tensor(pos, PositivityCheck::EpsPositive);
    Mat cm(2, 2);
    cm << 1, 1, -1, -1;
    TensorElement mixed =
        TensorElement::elementary(d11, d20, cm, Mat::Identity(2, 2));
    ok = ok && finite_dim_cstar_tensor(mixed, PositivityCheck::EpsPositive) &&
         !finite_dim_cstar_tensor(mixed, PositivityCheck::Superpositive);
    rep.check_bool("tensor", "product-grading positivity checks", ok);
  }
}

// ---------------------------------------------------------------- group

void run_group(const SuiteOptions& o, Reporter& rep) {
  TensorConfig cfg = o.budgets;
  cfg.seed = o.seed + 2000;

  double gen_err = 0.0;
  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k <= 3; ++k)
      for (DeltaMode mode : {DeltaMode::Haagerup, DeltaMode::Projective}) {
        NormBracket b =
            delta_k_norm(CyclicGroupElement::generator(n, 1), k, mode, cfg);
        gen_err = std::max(
            gen_err, std::max(std::abs(b.lower - 1.0), std::abs(b.upper - 1.0)));
      }
  rep.check("group", "generators have norm one at every power", gen_err, 1e-6);

  double dft_err = 0.0;
  for (int i = 0; i < 12; ++i) {
    int n = 2 + i % 3;
    Rng rng = Rng::derive(o.seed + 511, std::uint64_t(i));
    Vec c(n);
    for (int g = 0; g < n; ++g) c(g) = rng.cgaussian();
    CyclicGroupElement ce(n, c);
    NormBracket b = delta_k_norm(ce, 1, DeltaMode::Haagerup, cfg);
    dft_err = std::max(dft_err,
                       std::abs(b.upper - op_norm(delta_k_matrix(ce, 1))));
  }
  rep.check("group", "order-one norms match the character transform", dft_err,
            1e-10);

  double mono_err = 0.0;
  for (int i = 0; i < 6; ++i) {
    int n = 2 + i % 2;
    Rng rng = Rng::derive(o.seed + 521, std::uint64_t(i));
    Vec c(n);
    for (int g = 0; g < n; ++g) c(g) = rng.cgaussian();
    CyclicGroupElement ce(n, c);
    double prev = delta_k_norm(ce, 1, DeltaMode::Haagerup, cfg).lower;
    for (int k = 2; k <= 3; ++k) {
      NormBracket b = delta_k_norm(ce, k, DeltaMode::Haagerup, cfg);
      mono_err = std::max(mono_err, prev - b.upper);
      prev = b.lower;
    }
  }
  rep.check("group", "diagonal norms nondecreasing in the power", mono_err,
            1e-9);

  {
    bool ok = true;
    Rng rng = Rng::derive(o.seed + 531, 0);
    for (int k = 1; k <= 3; ++k) {
      Vec c(3);
      for (int g = 0; g < 3; ++g) c(g) = rng.cgaussian();
      ok = ok && dual_involution_check(CyclicGroupElement(3, c), k, cfg, 1e-5);
    }
    // a fixed point: real symmetric coefficients
    Vec sym(3);
    sym << Cx(1.0, 0.0), Cx(0.5, 0.0), Cx(0.5, 0.0);
    ok = ok && dual_involution_check(CyclicGroupElement(3, sym), 2, cfg, 1e-5);
    rep.check_bool("group", "dual involution is an isometry", ok);
  }
}

}  // namespace

int run_verify(const SuiteOptions& opts, std::ostream& out) {
  Reporter rep(out);
  out << "suite=" << opts.suite << " seed=" << opts.seed
      << " samples=" << opts.samples << " tol=" << fmt(opts.tol)
      << " restarts=" << opts.budgets.restarts
      << " iters=" << opts.budgets.iters << "\n";
  bool all = opts.suite == "all";
  bool known = all;
  if (all || opts.suite == "core") {
    run_core(opts, rep);
    known = true;
  }
  if (all || opts.suite == "norms") {
    run_norms(opts, rep);
    known = true;
  }
  if (all || opts.suite == "tensor") {
    run_tensor(opts, rep);
    known = true;
  }
  if (all || opts.suite == "group") {
    run_group(opts, rep);
    known = true;
  }
  if (!known) throw InputError("unknown suite: " + opts.suite);
  out << "summary: " << (rep.total() - rep.failures()) << " passed, "
      << rep.failures() << " failed\n";
  return rep.failures();
}

}  // namespace sos
