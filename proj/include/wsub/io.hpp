#ifndef WSUB_IO_HPP
#define WSUB_IO_HPP

#include "wsub/forms.hpp"
#include "wsub/lie_algebra.hpp"
#include "wsub/weighted.hpp"

#include "json.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wsub {

using nlohmann::json;

/// Malformed input file; the message carries the position or the failing triple.
class SpecError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Named weighted basis in an algebra file. Indices are 0-based in memory and
/// 1-based on disk.
struct WeightedBasisSpec {
  std::string name;
  std::vector<std::size_t> indices;
  std::vector<Rational> weights;
  friend bool operator==(const WeightedBasisSpec&, const WeightedBasisSpec&) = default;
};

struct AlgebraSpec {
  LieAlgebra algebra;
  std::vector<WeightedBasisSpec> bases;
  json metadata = json::object();

  friend bool operator==(const AlgebraSpec& a, const AlgebraSpec& b)
  {
    return a.algebra == b.algebra && a.bases == b.bases && a.metadata == b.metadata;
  }
};

/// Algebra file format (JSON):
///
///   { "schema": "wsub.algebra/1", "name": "...", "dim": 3,
///     "labels": ["e1", "e2", "e3"],
///     "brackets": [ {"i": 1, "j": 2, "coeffs": ["0", "0", "1"]}, ... ],
///     "weighted_bases": [ {"name": "canonical", "indices": [1, 2], "weights": ["1", "1"]} ],
///     "metadata": { ... } }
///
/// Brackets list [e_i, e_j] for i < j only. "schema", "weighted_bases" and
/// "metadata" are optional. The algebra must satisfy the Jacobi identity.
AlgebraSpec parse_algebra_spec(const std::string& text);
std::string emit_algebra_spec(const AlgebraSpec& spec);

/// A readable file at `source` is parsed, anything else is looked up in the
/// catalog (with its canonical generators as the "canonical" basis).
AlgebraSpec load_algebra(const std::string& source);

/// Form file: { "weights": ["1", "1"], "terms": [ {"alpha": [1, 1], "re": "-1", "im": "0"} ] }
/// with 1-based generator indices.
Form parse_form(const std::string& text);
json form_to_json(const Form& form);

/// Exact values on the wire.
json rational_json(const Rational& r);
json vector_json(const Vector& v);

struct ReportTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  friend bool operator==(const ReportTable&, const ReportTable&) = default;
};

enum class Verdict { Pass, Fail };

/// Output of one command, schema "wsub.report/1".
struct Report {
  std::string command;
  std::vector<std::string> args;
  json normalization = json::object();
  json results = json::object();
  std::vector<ReportTable> tables;
  Verdict verdict = Verdict::Pass;
  std::uint64_t seed = 0;
  std::string version;

  friend bool operator==(const Report&, const Report&) = default;
};

json report_to_json(const Report& r);
Report report_from_json(const json& j);
std::string emit_json(const Report& r);
/// The first table as CSV with a header row; strings are quoted only when needed.
std::string emit_csv(const Report& r);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

} // namespace wsub

#endif
