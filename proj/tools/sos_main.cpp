#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sos/json_io.hpp"
#include "sos/verify.hpp"

namespace {

using sos::Json;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitBadInput = 2;

sos::OmegaUnitary omega_from_json(const Json& j, const sos::GradedDim& d) {
  if (!j.contains("omega"))
    throw sos::InputError("omega-hermitian check needs an \"omega\" field "
                          "{\"omega0\": [re,im], \"omega1\": [re,im]}");
  const Json& w = j.at("omega");
  auto phase = [&](const char* name) {
    if (!w.contains(name) || !w.at(name).is_array() || w.at(name).size() != 2)
      throw sos::InputError(std::string("omega field needs ") + name +
                            " as an [re, im] pair");
    return sos::Cx(w.at(name)[0].get<double>(), w.at(name)[1].get<double>());
  };
  return sos::OmegaUnitary(d, phase("omega0"), phase("omega1"));
}

int run_check(const std::string& kind, const std::string& path, double tol) {
  Json j = sos::parse_json_file(path);
  sos::GradedOperator x = sos::graded_operator_from_json(j);
  bool verdict = false;
  if (kind == "hermitian") {
    verdict = sos::is_hermitian(x, tol);
  } else if (kind == "omega-hermitian") {
    verdict = sos::is_omega_hermitian(x, omega_from_json(j, x.dim), tol);
  } else if (kind == "eps-positive") {
    verdict = sos::is_epsilon_positive(x, tol);
  } else if (kind == "superpositive") {
    verdict = sos::is_superpositive(x, tol);
  } else if (kind == "superunitary") {
    verdict = sos::is_superunitary(x, tol);
  } else {
    throw sos::InputError("unknown check kind: " + kind);
  }
  Json out{{"check", kind}, {"verdict", verdict}, {"tol", tol}};
  std::cout << out.dump(2) << "\n";
  return verdict ? kExitTrue : kExitFalse;
}

int run_norm(const std::string& kind, const std::string& path, double tol,
             std::uint64_t seed, int restarts, int iters) {
  Json j = sos::parse_json_file(path);
  Json out;
  if (kind == "operator" || kind == "strong" || kind == "sigma" ||
      kind == "derived") {
    sos::GradedOperator x = sos::graded_operator_from_json(j);
    out["norm"] = kind;
    if (kind == "operator") {
      out["value"] = sos::op_norm(x.data);
    } else if (kind == "derived") {
      out["value"] = sos::derived_matrix_norm(x, tol);
    } else {
      sos::RadiusResult r = kind == "strong" ? sos::strong_norm(x, tol)
                                             : sos::sigma_strong_norm(x, tol);
      out["value"] = r.value;
      out["maximizer_theta"] = r.maximizer_theta;
      out["certified_error"] = r.certified_error;
    }
  } else {
    sos::TensorElement t = sos::tensor_element_from_json(j);
    sos::TensorConfig cfg;
    cfg.restarts = restarts;
    cfg.iters = iters;
    cfg.seed = seed;
    cfg.tol = tol;
    out["norm"] = kind;
    if (kind == "injective") {
      out["value"] = sos::injective_norm(t);
    } else if (kind == "haagerup") {
      out = sos::bracket_to_json(sos::haagerup_norm(t, cfg));
      out["norm"] = kind;
    } else if (kind == "symmetrized-haagerup") {
      out = sos::bracket_to_json(sos::symmetrized_haagerup(t, cfg));
      out["norm"] = kind;
    } else if (kind == "projective") {
      out = sos::bracket_to_json(sos::projective_norm(t, cfg));
      out["norm"] = kind;
    } else if (kind == "dual-symmetrized") {
      out = sos::bracket_to_json(sos::dual_symmetrized_haagerup(t, cfg));
      out["norm"] = kind;
    } else {
      throw sos::InputError("unknown norm kind: " + kind);
    }
  }
  std::cout << out.dump(2) << "\n";
  return kExitTrue;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graded operator system toolkit"};
  app.require_subcommand(0, 1);

  bool show_schema = false;
  app.add_flag("--schema", show_schema, "print the JSON schemas and exit");

  std::string kind, path;
  double tol = 1e-9;
  std::uint64_t seed = 42;
  int restarts = 32, iters = 500, samples = 200, level = 1;

  CLI::App* check = app.add_subcommand("check", "boolean property of an operator");
  check->add_option("kind", kind,
                    "hermitian|omega-hermitian|eps-positive|superpositive|"
                    "superunitary")
      ->required();
  check->add_option("input", path, "JSON input file")->required();
  check->add_option("--tol", tol, "numerical tolerance");

  CLI::App* norm = app.add_subcommand("norm", "norm of an operator or tensor");
  norm->add_option("kind", kind,
                   "operator|strong|sigma|derived|injective|haagerup|"
                   "symmetrized-haagerup|dual-symmetrized|projective")
      ->required();
  norm->add_option("input", path, "JSON input file")->required();
  norm->add_option("--tol", tol, "numerical tolerance");
  norm->add_option("--seed", seed, "optimizer seed");
  norm->add_option("--restarts", restarts, "optimizer restarts");
  norm->add_option("--iters", iters, "optimizer iterations per restart");
  norm->add_option("--level", level, "amplification level (reserved)");

  sos::SuiteOptions opts;
  opts.budgets.restarts = 8;
  opts.budgets.iters = 200;
  CLI::App* verify = app.add_subcommand("verify", "seeded property suites");
  verify->add_option("--suite", opts.suite, "core|norms|tensor|group|all");
  verify->add_option("--seed", opts.seed, "suite seed");
  verify->add_option("--samples", opts.samples, "sample count")
      ->check(CLI::PositiveNumber);
  verify->add_option("--tol", opts.tol, "suite tolerance")
      ->check(CLI::PositiveNumber);
  verify->add_option("--restarts", opts.budgets.restarts, "optimizer restarts");
  verify->add_option("--iters", opts.budgets.iters, "optimizer iterations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (show_schema) {
      std::cout << sos::schema_text();
      return kExitTrue;
    }
    if (check->parsed()) return run_check(kind, path, tol);
    if (norm->parsed())
      return run_norm(kind, path, tol, seed, restarts, iters);
    if (verify->parsed())
      return sos::run_verify(opts, std::cout) == 0 ? kExitTrue : kExitFalse;
    std::cerr << app.help();
    return kExitBadInput;
  } catch (const sos::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}
