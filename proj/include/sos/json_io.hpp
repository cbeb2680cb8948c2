#pragma once

#include <string>

#include <json.hpp>

#include "sos/graded.hpp"
#include "sos/group.hpp"
#include "sos/norms.hpp"
#include "sos/tensor.hpp"

namespace sos {

using Json = nlohmann::json;

/// Parse errors surface as InputError so callers map them to one exit path.
Json parse_json_file(const std::string& path);
Json parse_json_text(const std::string& text);

// matrices encode as rows of [re, im] pairs
Mat matrix_from_json(const Json& j);
Json matrix_to_json(const Mat& m);

GradedDim graded_dim_from_json(const Json& j);
Json graded_dim_to_json(const GradedDim& d);

// {"p": int, "q": int, "grading": "diag"|"swap", "data": matrix}
GradedOperator graded_operator_from_json(const Json& j);
Json graded_operator_to_json(const GradedOperator& x);

// {"a_dim", "b_dim", "a_grading"|null, "b_grading"|null, "factors":
//  [{"a": matrix, "b": matrix}, ...]}
TensorElement tensor_element_from_json(const Json& j);
Json tensor_element_to_json(const TensorElement& t);

// {"n": int, "coeffs": [[re,im], ...]}
CyclicGroupElement cyclic_element_from_json(const Json& j);
Json cyclic_element_to_json(const CyclicGroupElement& c);

// {"domain_basis": [...], "images": [...], "domain_dims": {...},
//  "codomain_dims": {...}, "subspace_basis": [...] (optional)}
LinearMapSpec linear_map_from_json(const Json& j);

Json bracket_to_json(const NormBracket& b);

/// The schema reference printed by the --schema flag.
std::string schema_text();

}  // namespace sos
