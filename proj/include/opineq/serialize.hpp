#pragma once

#include <json.hpp>
#include <map>
#include <string>

#include "opineq/generators.hpp"
#include "opineq/inequalities.hpp"

namespace opineq {

using Json = nlohmann::json;

/// Row-major list of rows, each entry a [re, im] pair.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

/// {dim, weights, parts}
Json element_to_json(const ModuleElement& x);
ModuleElement element_from_json(const Json& j);

/// One JSONL line: exactly name, seed, dim, len, params, lhs, rhs, margin,
/// holds, norm_detail.
Json report_to_json(const InequalityReport& r);

/// A replayable instance together with the check it was evaluated under.
struct InstanceRecord {
  std::string check;
  Instance instance;
  std::map<std::string, double> params;
  bool drop_normality = false;
  bool drop_contraction = false;
};

Json record_to_json(const InstanceRecord& rec);
InstanceRecord record_from_json(const Json& j);

void write_record(const std::string& path, const InstanceRecord& rec);
InstanceRecord read_record(const std::string& path);

}  // namespace opineq
