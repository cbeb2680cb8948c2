#include "sos/json_io.hpp"

#include <fstream>

namespace sos {

Json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError(std::string("JSON parse error: ") + e.what());
  }
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw InputError(std::string("JSON parse error: ") + e.what());
  }
}

namespace {

Cx entry_from_json(const Json& j) {
  if (j.is_number()) return Cx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Cx(j[0].get<double>(), j[1].get<double>());
  throw InputError("matrix entry must be a number or an [re, im] pair");
}

double real_from_json(const Json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
  return j.get<double>();
}

int int_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer())
    throw InputError(std::string(what) + " must be an integer");
  return j.get<int>();
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw InputError(std::string("missing field: ") + name);
  return j.at(name);
}

}  // namespace

Mat matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw InputError("matrix must be a nonempty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty())
    throw InputError("matrix rows must be nonempty arrays");
  const std::size_t cols = j[0].size();
  Mat m = Mat::Zero(Eigen::Index(rows), Eigen::Index(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw InputError("matrix rows must all have the same length");
    for (std::size_t k = 0; k < cols; ++k)
      m(Eigen::Index(i), Eigen::Index(k)) = entry_from_json(j[i][k]);
  }
  if (!m.allFinite()) throw InputError("matrix entries must be finite");
  return m;
}

Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(row);
  }
  return rows;
}

GradedDim graded_dim_from_json(const Json& j) {
  std::string kind = "diag";
  if (j.contains("grading")) {
    if (!j.at("grading").is_string())
      throw InputError("grading must be a string");
    kind = j.at("grading").get<std::string>();
  }
  if (kind == "diag") {
    int p = int_from_json(field(j, "p"), "p");
    int q = int_from_json(field(j, "q"), "q");
    if (p < 0 || q < 0 || p + q < 1)
      throw InputError("grading sizes must be nonnegative with p+q >= 1");
    return GradedDim::diag(p, q);
  }
  if (kind == "swap") {
    int m = j.contains("m") ? int_from_json(j.at("m"), "m")
                            : int_from_json(field(j, "p"), "p");
    if (m < 1) throw InputError("swap grading needs m >= 1");
    return GradedDim::swap(m);
  }
  throw InputError("unknown grading kind: " + kind);
}

Json graded_dim_to_json(const GradedDim& d) {
  Json j;
  switch (d.kind()) {
    case GradedDim::Kind::Diag:
      j["grading"] = "diag";
      j["p"] = d.p();
      j["q"] = d.q();
      break;
    case GradedDim::Kind::Swap:
      j["grading"] = "swap";
      j["m"] = d.p();
      break;
    case GradedDim::Kind::Explicit:
      j["grading"] = "explicit";
      j["epsilon"] = matrix_to_json(d.epsilon());
      break;
  }
  return j;
}

GradedOperator graded_operator_from_json(const Json& j) {
  GradedDim d = graded_dim_from_json(j);
  Mat m = matrix_from_json(field(j, "data"));
  if (m.rows() != d.size() || m.cols() != d.size())
    throw InputError("operator data does not match the graded dimension");
  return GradedOperator(d, m);
}

Json graded_operator_to_json(const GradedOperator& x) {
  Json j = graded_dim_to_json(x.dim);
  j["data"] = matrix_to_json(x.data);
  return j;
}

TensorElement tensor_element_from_json(const Json& j) {
  int a_dim = int_from_json(field(j, "a_dim"), "a_dim");
  int b_dim = int_from_json(field(j, "b_dim"), "b_dim");
  if (a_dim < 1 || b_dim < 1)
    throw InputError("tensor factor dimensions must be positive");
  GradedDim ga = GradedDim::diag(a_dim, 0);
  GradedDim gb = GradedDim::diag(b_dim, 0);
  if (j.contains("a_grading") && !j.at("a_grading").is_null())
    ga = graded_dim_from_json(j.at("a_grading"));
  if (j.contains("b_grading") && !j.at("b_grading").is_null())
    gb = graded_dim_from_json(j.at("b_grading"));
  if (ga.size() != a_dim || gb.size() != b_dim)
    throw InputError("tensor grading does not match the declared dimension");
  int level = 1;
  if (j.contains("level")) level = int_from_json(j.at("level"), "level");
  const Json& fs = field(j, "factors");
  if (!fs.is_array() || fs.empty())
    throw InputError("factors must be a nonempty array");
  std::vector<std::pair<Mat, Mat>> factors;
  for (const Json& f : fs)
    factors.push_back(
        {matrix_from_json(field(f, "a")), matrix_from_json(field(f, "b"))});
  return TensorElement(ga, gb, factors, level);
}

Json tensor_element_to_json(const TensorElement& t) {
  Json j;
  j["a_dim"] = t.a_dim;
  j["b_dim"] = t.b_dim;
  j["a_grading"] = graded_dim_to_json(t.a_grading);
  j["b_grading"] = graded_dim_to_json(t.b_grading);
  if (t.level != 1) j["level"] = t.level;
  Json fs = Json::array();
  for (const auto& [a, b] : t.factors)
    fs.push_back({{"a", matrix_to_json(a)}, {"b", matrix_to_json(b)}});
  j["factors"] = fs;
  return j;
}

CyclicGroupElement cyclic_element_from_json(const Json& j) {
  int n = int_from_json(field(j, "n"), "n");
  if (n < 1) throw InputError("group order must be positive");
  const Json& cs = field(j, "coeffs");
  if (!cs.is_array() || int(cs.size()) != n)
    throw InputError("coeffs must be an array of length n");
  Vec c(n);
  for (int g = 0; g < n; ++g) c(g) = entry_from_json(cs[std::size_t(g)]);
  if (!c.allFinite()) throw InputError("coefficients must be finite");
  return CyclicGroupElement(n, c);
}

Json cyclic_element_to_json(const CyclicGroupElement& c) {
  Json cs = Json::array();
  for (int g = 0; g < c.n; ++g)
    cs.push_back(Json::array({c.coeffs(g).real(), c.coeffs(g).imag()}));
  return Json{{"n", c.n}, {"coeffs", cs}};
}

LinearMapSpec linear_map_from_json(const Json& j) {
  GradedDim dd = graded_dim_from_json(field(j, "domain_dims"));
  GradedDim cd = graded_dim_from_json(field(j, "codomain_dims"));
  auto matrices = [](const Json& arr, const char* what) {
    if (!arr.is_array() || arr.empty())
      throw InputError(std::string(what) + " must be a nonempty array");
    std::vector<Mat> out;
    for (const Json& m : arr) out.push_back(matrix_from_json(m));
    return out;
  };
  std::vector<Mat> basis = matrices(field(j, "domain_basis"), "domain_basis");
  std::vector<Mat> images = matrices(field(j, "images"), "images");
  std::vector<Mat> sub;
  if (j.contains("subspace_basis") && !j.at("subspace_basis").is_null())
    sub = matrices(j.at("subspace_basis"), "subspace_basis");
  return LinearMapSpec(dd, cd, basis, images, sub);
}

Json bracket_to_json(const NormBracket& b) {
  Json witness;
  witness["lower"] = b.lower_witness;
  if (!b.upper_witness.empty()) {
    Json fs = Json::array();
    for (const auto& [a, bb] : b.upper_witness)
      fs.push_back({{"a", matrix_to_json(a)}, {"b", matrix_to_json(bb)}});
    witness["upper_decomposition"] = fs;
  }
  return Json{{"lower", b.lower},
              {"upper", b.upper},
              {"method", b.method},
              {"witness", witness}};
}

std::string schema_text() {
  return R"(input/output schemas (all JSON)

matrix:          [[entry, ...], ...] with entry = number | [re, im]

graded operator: {"grading": "diag"|"swap", "p": int, "q": int,
                  ("m": int for swap,) "data": matrix}

tensor element:  {"a_dim": int, "b_dim": int,
                  "a_grading": grading|null, "b_grading": grading|null,
                  ("level": int,) "factors": [{"a": matrix, "b": matrix}, ...]}

cyclic element:  {"n": int, "coeffs": [[re, im], ...]}   (length n)

linear map:      {"domain_dims": grading, "codomain_dims": grading,
                  "domain_basis": [matrix, ...], "images": [matrix, ...],
                  ("subspace_basis": [matrix, ...])}

norm bracket:    {"lower": real, "upper": real, "method": string,
                  "witness": {"lower": string,
                              ("upper_decomposition": [{"a","b"}, ...])}}
)";
}

}  // namespace sos
