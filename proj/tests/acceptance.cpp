// Acceptance gate: one line per criterion, exit code = number of failures.
// argv[1] must be the path to the sos_cli binary (used by the determinism
// criterion).

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "sos/graded.hpp"
#include "sos/group.hpp"
#include "sos/json_io.hpp"
#include "sos/norms.hpp"
#include "sos/rng.hpp"
#include "sos/tensor.hpp"

using namespace sos;

namespace {

double maxabs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

struct Gate {
  int failures = 0;
  int index = 0;

  void run(const char* name, double time_cap_s,
           const std::function<bool(std::string&)>& body) {
    ++index;
    std::string detail;
    bool ok = false;
    auto t0 = std::chrono::steady_clock::now();
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (elapsed > time_cap_s) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      char buf[64];
      std::snprintf(buf, sizeof(buf), "over time cap %.0fs", time_cap_s);
      detail += buf;
    }
    if (!ok) ++failures;
    std::printf("[%2d] %s  %s (%.1fs)%s%s\n", index, ok ? "PASS" : "FAIL",
                name, elapsed, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
  }
};

GradedDim dim_for(std::uint64_t i) {
  switch (i % 4) {
    case 0: return GradedDim::diag(1, 1);
    case 1: return GradedDim::diag(2, 2);
    case 2: return GradedDim::diag(3, 1);
    default: return GradedDim::diag(4, 4);
  }
}

std::vector<double> t_grid_41() {
  std::vector<double> g;
  for (int i = 0; i <= 40; ++i) g.push_back(-10.0 + 0.5 * i);
  return g;
}

TensorElement random_tensor(std::uint64_t seed) {
  Rng rng(seed);
  int terms = 1 + int(seed % 3);
  std::vector<std::pair<Mat, Mat>> f;
  for (int k = 0; k < terms; ++k)
    f.push_back({rng.ginibre(2, 2), rng.ginibre(2, 2)});
  return TensorElement(GradedDim::diag(2, 0), GradedDim::diag(2, 0), f, 1);
}

std::string capture_command(const std::string& cmd, int& exit_code) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    exit_code = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), got);
  exit_code = pclose(pipe);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  Gate gate;

  gate.run("iota is a star-homomorphism on 1000 sampled pairs", 5.0,
           [](std::string& detail) {
             double worst = 0.0;
             for (std::uint64_t i = 0; i < 1000; ++i) {
               GradedDim d = dim_for(i);
               GradedOperator x = random_graded(RandomKind::Generic, d, 2 * i);
               GradedOperator y =
                   random_graded(RandomKind::Generic, d, 2 * i + 1);
               worst = std::max(
                   worst, maxabs(iota(twisted_product(x, y, Cx(-1, 0))).data -
                                 iota(x).data * iota(y).data));
               worst = std::max(worst, maxabs(iota(superinvolve(x)).data -
                                              iota(x).data.adjoint()));
             }
             char buf[64];
             std::snprintf(buf, sizeof(buf), "max error %.2e", worst);
             detail = buf;
             return worst <= 1e-12;
           });

  gate.run("iota changes norms by at most a factor of two, 1000 samples", 5.0,
           [](std::string& detail) {
             int bad = 0;
             for (std::uint64_t i = 0; i < 1000; ++i) {
               GradedOperator x =
                   random_graded(RandomKind::Generic, dim_for(i), 5000 + i);
               double xn = op_norm(x.data), in = op_norm(iota(x).data);
               if (in < 0.5 * xn - 1e-10 || in > 2.0 * xn + 1e-10) ++bad;
             }
             detail = std::to_string(bad) + " violations";
             return bad == 0;
           });

  gate.run("line characterization: 200 contractions hold, 200 others break",
           30.0, [](std::string& detail) {
             std::vector<double> grid = t_grid_41();
             int bad = 0;
             for (std::uint64_t i = 0; i < 200; ++i) {
               GradedDim d = i % 2 == 0 ? GradedDim::diag(1, 1)
                                        : GradedDim::diag(2, 1);
               Rng rng = Rng::derive(31, i);
               OmegaUnitary w(d, rng.unit_phase(), rng.unit_phase());
               GradedOperator g =
                   random_graded(RandomKind::Generic, d, 10000 + i);
               Mat h = 0.5 * (g.data + omega_involve(g, w).data);
               GradedOperator c(d, h / std::max(1.0, op_norm(h)));
               if (!lemma2_check(c, w, grid, 1e-9)) ++bad;
               // a breaking sample: inflated hermitian or pure skew part
               if (i % 2 == 0) {
                 GradedOperator big(d, 1.5 * h / op_norm(h));
                 if (!lemma2_check(big, w, grid, 1e-9)) ++bad;
               } else {
                 Mat k = 0.5 * (g.data - omega_involve(g, w).data);
                 for (std::uint64_t extra = 1; op_norm(k) < 0.1; ++extra) {
                   GradedOperator g2 = random_graded(RandomKind::Generic, d,
                                                     20000 + 100 * i + extra);
                   k = 0.5 * (g2.data - omega_involve(g2, w).data);
                 }
                 GradedOperator skew(d, k / op_norm(k));
                 if (!lemma2_check(skew, w, grid, 1e-9)) ++bad;
               }
             }
             detail = std::to_string(bad) + " disagreements";
             return bad == 0;
           });

  gate.run("strong-norm axiom margins stay within 1e-5 on 300 samples", 120.0,
           [](std::string& detail) {
             std::vector<AmplifiedOperator> samples;
             for (std::uint64_t i = 0; i < 300; ++i) {
               GradedDim d = [&] {
                 switch (i % 4) {
                   case 0: return GradedDim::diag(1, 1);
                   case 1: return GradedDim::diag(2, 1);
                   case 2: return GradedDim::diag(2, 2);
                   default: return GradedDim::diag(3, 3);
                 }
               }();
               int level = 1 + int(i % 2);
               Rng rng = Rng::derive(41, i);
               samples.emplace_back(
                   level, d, rng.ginibre(level * d.size(), level * d.size()));
             }
             Rng rng(42);
             std::vector<Mat> scalars = {rng.ginibre(1, 1), rng.ginibre(2, 2),
                                         rng.ginibre(1, 2), rng.ginibre(2, 1),
                                         rng.ginibre(3, 2)};
             AxiomMargins ax = check_sigma_axioms(samples, scalars, 1e-5);
             char buf[160];
             std::snprintf(buf, sizeof(buf),
                           "m1 %.1e, m2 %.1e, hm* %.1e, chain %.1e, der %.1e",
                           ax.m1, ax.m2, ax.hm_star, ax.chain, ax.derived);
             detail = buf;
             return ax.passed(1e-5);
           });

  gate.run("sigma norm equals the radius of iota on 300 samples", 60.0,
           [](std::string& detail) {
             double worst = 0.0;
             for (std::uint64_t i = 0; i < 300; ++i) {
               GradedOperator x =
                   random_graded(RandomKind::Generic, dim_for(i), 30000 + i);
               worst = std::max(
                   worst, std::abs(sigma_strong_norm(x, 1e-9).value -
                                   numerical_radius(iota(x).data, 1e-9).value));
             }
             char buf[64];
             std::snprintf(buf, sizeof(buf), "max gap %.2e", worst);
             detail = buf;
             return worst <= 1e-6;
           });

  gate.run("the stored element separates the two positivity cones", 10.0,
           [](std::string& detail) {
             Mat m(2, 2);
             m << 1, 1, -1, -1;
             GradedOperator x(GradedDim::diag(1, 1), m);
             bool ok = is_epsilon_positive(x, 1e-9) && !is_superpositive(x, 1e-9);
             std::vector<Cx> sp = graded_spectrum(x);
             ok = ok && sp.size() == 2 && std::abs(sp[0]) <= 1e-10 &&
                  std::abs(sp[1] - Cx(2, 0)) <= 1e-10;
             ok = ok && maxabs(graded_abs(x).data -
                               std::sqrt(2.0) * Mat::Identity(2, 2)) <= 1e-9;
             detail = ok ? "" : "cone/spectrum/abs mismatch";
             return ok;
           });

  gate.run("projection examples: full witness fraction and contractivity",
           300.0, [](std::string& detail) {
             double worst_fraction = 1.0;
             int violations = 0;
             double worst_excess = 0.0;
             for (int m : {2, 3, 4})
               for (int which : {0, 1}) {
                 LinearMapSpec phi = which == 0 ? corner_projection_map(m)
                                                : diagonal_equalizer_map(m);
                 RscReport r = rsc_check(phi, 200, 3200,
                                         std::uint64_t(100 * m + which), 1e-6);
                 worst_fraction = std::min(worst_fraction, r.witnessed_fraction);
                 for (int level : {1, 2}) {
                   ContractionReport c = hermitian_contractive_check(
                       phi, level, 5000, std::uint64_t(200 * m + which), 1e-7);
                   violations += c.violations;
                   worst_excess = std::max(worst_excess, c.worst_excess);
                 }
               }
             char buf[128];
             std::snprintf(buf, sizeof(buf),
                           "min witnessed fraction %.3f, %d norm violations, "
                           "worst excess %.2e",
                           worst_fraction, violations, worst_excess);
             detail = buf;
             return worst_fraction >= 1.0 && violations == 0;
           });

  gate.run("tensor brackets: exact instances and ordering on 100 samples",
           180.0, [](std::string& detail) {
             TensorConfig cfg;
             cfg.restarts = 8;
             cfg.iters = 200;
             cfg.seed = 51;
             // elementary collapse
             Rng rng(52);
             for (int i = 0; i < 5; ++i) {
               Mat a = rng.ginibre(2, 2), b = rng.ginibre(2, 2);
               TensorElement t = TensorElement::elementary(a, b);
               double expect = op_norm(a) * op_norm(b);
               if (std::abs(injective_norm(t) - expect) > 1e-6 ||
                   std::abs(haagerup_norm(t, cfg).upper - expect) > 1e-6 ||
                   std::abs(projective_norm(t, cfg).upper - expect) > 1e-6) {
                 detail = "elementary collapse failed";
                 return false;
               }
             }
             // unit chains
             for (int n : {2, 3}) {
               std::vector<std::pair<Mat, Mat>> f;
               for (int i = 0; i < n; ++i) {
                 Mat a = Mat::Zero(n, n), b = Mat::Zero(n, n);
                 a(i, 0) = 1.0;
                 b(0, i) = 1.0;
                 f.push_back({a, b});
               }
               NormBracket h = haagerup_norm(
                   TensorElement(GradedDim::diag(n, 0), GradedDim::diag(n, 0),
                                 f, 1),
                   cfg);
               if (h.lower < 1.0 - 1e-6 || h.upper > 1.0 + 1e-6) {
                 detail = "unit chain bracket off";
                 return false;
               }
             }
             // ordering
             for (std::uint64_t s = 0; s < 100; ++s) {
               TensorElement t = random_tensor(600 + s);
               NormBracket p = projective_norm(t, cfg);
               NormBracket h = haagerup_norm(
                   t, cfg, {haagerup_seed_from_projective(p)});
               if (injective_norm(t) > h.upper + 1e-8 ||
                   h.upper > p.upper + 1e-8) {
                 detail = "ordering violated at sample " + std::to_string(s);
                 return false;
               }
             }
             return true;
           });

  gate.run("the flip is an antiisometry on 50 samples", 180.0,
           [](std::string& detail) {
             TensorConfig cfg;
             cfg.restarts = 8;
             cfg.iters = 200;
             cfg.seed = 61;
             double worst_inj = 0.0, worst_haag = 0.0;
             for (std::uint64_t s = 0; s < 50; ++s) {
               TensorElement t = random_tensor(700 + s);
               worst_inj = std::max(
                   worst_inj,
                   std::abs(injective_norm(
                                star_tensor(t, StarMode::HaagerupFlip)) -
                            injective_norm(t)));
               auto [h1, h2] = haagerup_with_flip(t, cfg);
               worst_haag = std::max(worst_haag, std::abs(h1.upper - h2.upper));
               worst_haag = std::max(worst_haag, std::abs(h1.lower - h2.lower));
             }
             char buf[96];
             std::snprintf(buf, sizeof(buf),
                           "injective gap %.2e, bracket gap %.2e", worst_inj,
                           worst_haag);
             detail = buf;
             return worst_inj <= 1e-12 && worst_haag <= 1e-4;
           });

  gate.run("200 sampled superunitaries verify with the right norms", 10.0,
           [](std::string& detail) {
             GradedDim d = GradedDim::diag(2, 1);
             for (std::uint64_t s = 0; s < 200; ++s) {
               GradedOperator u =
                   random_graded(RandomKind::Superunitary, d, 40000 + s);
               if (!is_superunitary(u, 1e-8) ||
                   op_norm(u.data) < 1.0 - 1e-12) {
                 detail = "superunitary sample " + std::to_string(s);
                 return false;
               }
               GradedOperator v =
                   random_graded(RandomKind::EvenUnitary, d, 50000 + s);
               if (!is_superunitary(v, 1e-8) ||
                   std::abs(op_norm(v.data) - 1.0) > 1e-9) {
                 detail = "even unitary sample " + std::to_string(s);
                 return false;
               }
             }
             return true;
           });

  gate.run("group diagonal norms: generators, monotonicity, duality", 180.0,
           [](std::string& detail) {
             TensorConfig cfg;
             cfg.restarts = 8;
             cfg.iters = 200;
             cfg.seed = 71;
             for (int n = 2; n <= 4; ++n)
               for (int k = 1; k <= 3; ++k) {
                 NormBracket b = delta_k_norm(CyclicGroupElement::generator(n, 1),
                                              k, DeltaMode::Haagerup, cfg);
                 if (std::abs(b.lower - 1.0) > 1e-6 ||
                     std::abs(b.upper - 1.0) > 1e-6) {
                   detail = "generator norm off at n=" + std::to_string(n) +
                            " k=" + std::to_string(k);
                   return false;
                 }
               }
             for (std::uint64_t s = 0; s < 50; ++s) {
               int n = 2 + int(s % 3);
               Rng rng = Rng::derive(72, s);
               Vec c(n);
               for (int g = 0; g < n; ++g) c(g) = rng.cgaussian();
               CyclicGroupElement ce(n, c);
               NormBracket b1 = delta_k_norm(ce, 1, DeltaMode::Haagerup, cfg);
               if (std::abs(b1.upper - dft_max(ce)) > 1e-10) {
                 detail = "k=1 closed form off at sample " + std::to_string(s);
                 return false;
               }
               double prev_lower = b1.lower;
               for (int k = 2; k <= 3; ++k) {
                 NormBracket b = delta_k_norm(ce, k, DeltaMode::Haagerup, cfg);
                 if (prev_lower > b.upper + 1e-9) {
                   detail = "norm sequence decreased at sample " +
                            std::to_string(s) + " k=" + std::to_string(k);
                   return false;
                 }
                 prev_lower = b.lower;
               }
             }
             for (int k = 1; k <= 3; ++k)
               for (std::uint64_t s = 0; s < 2; ++s) {
                 Rng rng = Rng::derive(73, 10 * std::uint64_t(k) + s);
                 Vec c(3);
                 for (int g = 0; g < 3; ++g) c(g) = rng.cgaussian();
                 if (!dual_involution_check(CyclicGroupElement(3, c), k, cfg,
                                            1e-5)) {
                   detail = "dual involution broke at k=" + std::to_string(k);
                   return false;
                 }
               }
             return true;
           });

  gate.run("verification runs are byte-identical across repeats", 600.0,
           [&cli](std::string& detail) {
             if (cli.empty()) {
               detail = "no CLI path given";
               return false;
             }
             std::string cmd =
                 "'" + cli + "' verify --suite all --seed 7 2>/dev/null";
             int rc1 = 0, rc2 = 0;
             std::string out1 = capture_command(cmd, rc1);
             std::string out2 = capture_command(cmd, rc2);
             if (out1.empty()) {
               detail = "no output from the CLI";
               return false;
             }
             if (out1 != out2) {
               detail = "outputs differ";
               return false;
             }
             if (rc1 != rc2) {
               detail = "exit codes differ";
               return false;
             }
             detail = std::to_string(out1.size()) + " bytes, equal";
             return true;
           });

  std::printf("%d of %d criteria failed\n", gate.failures, gate.index);
  return gate.failures;
}
