#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "sos/tensor.hpp"

namespace sos {

struct SuiteOptions {
  std::string suite = "all";  // core | norms | tensor | group | all
  std::uint64_t seed = 42;
  int samples = 200;
  double tol = 1e-6;
  TensorConfig budgets{8, 200, 0, 0, 1e-9};  // seed is filled from `seed`
};

/// Runs the named suite, printing one line per property with its worst
/// observed margin. Output is a pure function of the options. Returns the
/// number of failed properties.
int run_verify(const SuiteOptions& opts, std::ostream& out);

}  // namespace sos
