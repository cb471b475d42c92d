#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "multimono/verdict.hpp"
#include "multimono/vm_algebra.hpp"

namespace multimono::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaId = "multimono.report/1";

/// Finite values as numbers, others as "inf", "-inf" or "nan".
json num(double v);
json nums(const std::vector<double>& v);

json verdict_json(const Verdict& v);
json vm_norm_json(const VmNorm& n);

/// Outcome of one operation on one profile.
struct TaskResult {
  std::string status;  // holds, fails, inconclusive, ok
  int exit_code = 0;
  json result = json::object();
  double headline = 0.0;  // single number used by sweeps
};

TaskResult from_verdict(const Verdict& v, json result, double headline);
TaskResult from_convergence(Convergence c, json result, double headline);

struct Report {
  std::string command;
  std::string profile;  // empty when the command takes none
  json parameters = json::object();
  TaskResult outcome;
  std::uint64_t seed = 1;

  json to_json() const;
};

/// Minimal CSV writer: header plus rows, numbers in shortest round-trip form.
std::string format_cell(double v);
std::string csv_escape(const std::string& s);

}  // namespace multimono::cli
