#include "wsub/io.hpp"

#include "wsub/catalog.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace wsub {

namespace {

[[noreturn]] void fail_at(const std::string& where, const std::string& what)
{
  throw SpecError(where + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& where)
{
  if (!obj.is_object() || !obj.contains(key)) fail_at(where, std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

std::string read_string(const json& j, const std::string& where)
{
  if (!j.is_string()) fail_at(where, "expected a string");
  return j.get<std::string>();
}

Rational read_rational(const json& j, const std::string& where)
{
  // Integers are accepted as a convenience; everything else must be "p/q".
  if (j.is_number_integer()) return Rational(j.get<long>());
  try {
    return parse_rational(read_string(j, where));
  } catch (const std::invalid_argument& e) {
    fail_at(where, e.what());
  }
}

std::size_t read_index(const json& j, std::size_t dim, const std::string& where)
{
  if (!j.is_number_integer()) fail_at(where, "expected an integer index");
  auto v = j.get<long long>();
  if (v < 1 || static_cast<std::size_t>(v) > dim) fail_at(where, "index " + std::to_string(v) + " outside 1.." + std::to_string(dim));
  return static_cast<std::size_t>(v - 1);
}

json parse_json(const std::string& text)
{
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("parse error ") + e.what());
  }
}

} // namespace

json rational_json(const Rational& r)
{
  return to_string(r);
}

json vector_json(const Vector& v)
{
  json out = json::array();
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back(rational_json(v[k]));
  return out;
}

AlgebraSpec parse_algebra_spec(const std::string& text)
{
  const json doc = parse_json(text);
  if (!doc.is_object()) fail_at("/", "expected an object");
  if (doc.contains("schema") && doc.at("schema") != "wsub.algebra/1") fail_at("/schema", "unsupported schema");

  const std::string name = read_string(require(doc, "name", "/"), "/name");
  const json& dim_j = require(doc, "dim", "/");
  if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1) fail_at("/dim", "expected a positive integer");
  const auto dim = static_cast<std::size_t>(dim_j.get<long long>());

  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    const json& lj = doc.at("labels");
    if (!lj.is_array() || lj.size() != dim) fail_at("/labels", "expected " + std::to_string(dim) + " labels");
    for (std::size_t k = 0; k < dim; ++k) labels.push_back(read_string(lj[k], "/labels/" + std::to_string(k)));
  } else {
    for (std::size_t k = 0; k < dim; ++k) labels.push_back("e" + std::to_string(k + 1));
  }

  std::vector<LieAlgebra::BracketEntry> entries;
  const json& bj = require(doc, "brackets", "/");
  if (!bj.is_array()) fail_at("/brackets", "expected an array");
  for (std::size_t n = 0; n < bj.size(); ++n) {
    const std::string where = "/brackets/" + std::to_string(n);
    const std::size_t i = read_index(require(bj[n], "i", where), dim, where + "/i");
    const std::size_t j = read_index(require(bj[n], "j", where), dim, where + "/j");
    if (i >= j) fail_at(where, "entries must have i < j");
    const json& cj = require(bj[n], "coeffs", where);
    if (!cj.is_array() || cj.size() != dim) fail_at(where + "/coeffs", "expected " + std::to_string(dim) + " coefficients");
    Vector v(dim);
    for (std::size_t k = 0; k < dim; ++k) v[k] = read_rational(cj[k], where + "/coeffs/" + std::to_string(k));
    entries.push_back({i, j, v});
  }

  // Rebuilt from its non-zero entries so explicit zero brackets do not
  // affect equality or serialization.
  LieAlgebra raw = [&] {
    try {
      return LieAlgebra(name, labels, entries);
    } catch (const std::invalid_argument& e) {
      fail_at("/brackets", e.what());
    }
  }();
  AlgebraSpec spec{LieAlgebra(name, labels, raw.entries()), {}, json::object()};

  JacobiReport jac = check_jacobi(spec.algebra);
  if (!jac.ok) {
    std::ostringstream msg;
    msg << "Jacobi identity fails at (" << jac.i + 1 << "," << jac.j + 1 << "," << jac.k + 1 << "), residual "
        << vector_json(jac.residual).dump();
    throw SpecError(msg.str());
  }

  if (doc.contains("weighted_bases")) {
    const json& wj = doc.at("weighted_bases");
    if (!wj.is_array()) fail_at("/weighted_bases", "expected an array");
    for (std::size_t n = 0; n < wj.size(); ++n) {
      const std::string where = "/weighted_bases/" + std::to_string(n);
      WeightedBasisSpec b;
      b.name = wj[n].contains("name") ? read_string(wj[n].at("name"), where + "/name") : "basis" + std::to_string(n + 1);
      const json& ij = require(wj[n], "indices", where);
      const json& ww = require(wj[n], "weights", where);
      if (!ij.is_array() || !ww.is_array() || ij.size() != ww.size() || ij.empty())
        fail_at(where, "indices and weights must be non-empty arrays of equal length");
      for (std::size_t k = 0; k < ij.size(); ++k) {
        b.indices.push_back(read_index(ij[k], dim, where + "/indices/" + std::to_string(k)));
        b.weights.push_back(read_rational(ww[k], where + "/weights/" + std::to_string(k)));
      }
      try {
        (void)WeightedBasis::from_indices(spec.algebra, b.indices, b.weights);
      } catch (const std::invalid_argument& e) {
        fail_at(where, e.what());
      }
      spec.bases.push_back(std::move(b));
    }
  }
  if (doc.contains("metadata")) spec.metadata = doc.at("metadata");
  return spec;
}

std::string emit_algebra_spec(const AlgebraSpec& spec)
{
  const LieAlgebra& lie = spec.algebra;
  json doc = json::object();
  doc["schema"] = "wsub.algebra/1";
  doc["name"] = lie.name();
  doc["dim"] = lie.dim();
  doc["labels"] = lie.labels();
  json brackets = json::array();
  for (const auto& e : lie.entries()) brackets.push_back({{"i", e.i + 1}, {"j", e.j + 1}, {"coeffs", vector_json(e.value)}});
  doc["brackets"] = brackets;
  if (!spec.bases.empty()) {
    json bases = json::array();
    for (const auto& b : spec.bases) {
      json idx = json::array(), w = json::array();
      for (auto i : b.indices) idx.push_back(i + 1);
      for (const auto& x : b.weights) w.push_back(rational_json(x));
      bases.push_back({{"name", b.name}, {"indices", idx}, {"weights", w}});
    }
    doc["weighted_bases"] = bases;
  }
  if (!spec.metadata.empty()) doc["metadata"] = spec.metadata;
  return doc.dump(2) + "\n";
}

AlgebraSpec load_algebra(const std::string& source)
{
  std::ifstream in(source);
  if (in) {
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_algebra_spec(buf.str());
  }
  catalog::Entry entry = catalog::lookup(source);
  AlgebraSpec spec{entry.algebra, {}, json::object()};
  spec.bases.push_back({"canonical", entry.generators.indices, entry.generators.weights});
  if (entry.graded) spec.bases.push_back({"grading", entry.grading.indices, entry.grading.weights});
  spec.metadata["source"] = "catalog";
  return spec;
}

Form parse_form(const std::string& text)
{
  const json doc = parse_json(text);
  const json& wj = require(doc, "weights", "/");
  if (!wj.is_array() || wj.empty()) fail_at("/weights", "expected a non-empty array");
  std::vector<Rational> weights;
  for (std::size_t k = 0; k < wj.size(); ++k) weights.push_back(read_rational(wj[k], "/weights/" + std::to_string(k)));
  const json& tj = require(doc, "terms", "/");
  if (!tj.is_array()) fail_at("/terms", "expected an array");
  Form::Coefficients coeffs;
  for (std::size_t n = 0; n < tj.size(); ++n) {
    const std::string where = "/terms/" + std::to_string(n);
    const json& aj = require(tj[n], "alpha", where);
    if (!aj.is_array()) fail_at(where + "/alpha", "expected an array");
    MultiIndex alpha;
    for (std::size_t k = 0; k < aj.size(); ++k)
      alpha.push_back(read_index(aj[k], weights.size(), where + "/alpha/" + std::to_string(k)));
    ComplexRational c{tj[n].contains("re") ? read_rational(tj[n].at("re"), where + "/re") : Rational(0),
                      tj[n].contains("im") ? read_rational(tj[n].at("im"), where + "/im") : Rational(0)};
    if (!coeffs.emplace(alpha, c).second) fail_at(where, "duplicate multi-index");
  }
  try {
    return Form(weights, coeffs);
  } catch (const std::exception& e) {
    fail_at("/terms", e.what());
  }
}

json form_to_json(const Form& form)
{
  json w = json::array(), terms = json::array();
  for (const auto& x : form.weights()) w.push_back(rational_json(x));
  for (const auto& [alpha, c] : form.coefficients()) {
    json a = json::array();
    for (auto i : alpha) a.push_back(i + 1);
    terms.push_back({{"alpha", a}, {"re", rational_json(c.re)}, {"im", rational_json(c.im)}});
  }
  return {{"weights", w}, {"terms", terms}, {"order", rational_json(form.order())}};
}

//------------------------------------------------------------------------------
// Reports
//------------------------------------------------------------------------------

std::string format_double(double v)
{
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json report_to_json(const Report& r)
{
  json tables = json::array();
  for (const auto& t : r.tables) tables.push_back({{"name", t.name}, {"columns", t.columns}, {"rows", t.rows}});
  return {{"schema", "wsub.report/1"},
          {"command", r.command},
          {"args", r.args},
          {"normalization", r.normalization},
          {"results", r.results},
          {"tables", tables},
          {"verdict", r.verdict == Verdict::Pass ? "pass" : "fail"},
          {"seed", r.seed},
          {"version", r.version}};
}

Report report_from_json(const json& j)
{
  if (j.value("schema", "") != "wsub.report/1") throw SpecError("/schema: not a wsub.report/1 document");
  Report r;
  r.command = j.at("command").get<std::string>();
  r.args = j.at("args").get<std::vector<std::string>>();
  r.normalization = j.at("normalization");
  r.results = j.at("results");
  for (const auto& t : j.at("tables"))
    r.tables.push_back({t.at("name").get<std::string>(), t.at("columns").get<std::vector<std::string>>(),
                        t.at("rows").get<std::vector<std::vector<json>>>()});
  r.verdict = j.at("verdict") == "pass" ? Verdict::Pass : Verdict::Fail;
  r.seed = j.at("seed").get<std::uint64_t>();
  r.version = j.at("version").get<std::string>();
  return r;
}

std::string emit_json(const Report& r)
{
  return report_to_json(r).dump(2) + "\n";
}

std::string emit_csv(const Report& r)
{
  if (r.tables.empty()) throw std::invalid_argument("report has no table to write as CSV");
  const ReportTable& t = r.tables.front();
  auto cell = [](const json& v) -> std::string {
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_string()) {
      std::string s = v.get<std::string>();
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
      return q + "\"";
    }
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  };
  std::string out;
  for (std::size_t k = 0; k < t.columns.size(); ++k) out += (k ? "," : "") + t.columns[k];
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + cell(row[k]);
    out += "\n";
  }
  return out;
}

} // namespace wsub
