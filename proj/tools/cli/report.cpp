#include "report.hpp"

#include <charconv>
#include <cmath>

namespace multimono::cli {

json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json nums(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

json verdict_json(const Verdict& v) {
  json ev;
  ev["cutoffs"] = nums(v.evidence.cutoffs);
  ev["truncated_values"] = nums(v.evidence.truncated_values);
  ev["fitted_exponents"] = json::object();
  for (const auto& [k, x] : v.evidence.fitted_exponents) ev["fitted_exponents"][k] = num(x);
  ev["parameters"] = json::object();
  for (const auto& [k, x] : v.evidence.parameters) ev["parameters"][k] = num(x);
  ev["notes"] = v.evidence.notes;
  json out;
  out["condition"] = to_string(v.condition);
  out["status"] = to_string(v.status);
  out["reason"] = v.reason;
  out["evidence"] = std::move(ev);
  return out;
}

json vm_norm_json(const VmNorm& n) {
  json out;
  out["m"] = n.m;
  out["sup"] = num(n.sup_part);
  out["variation"] = num(n.variation_part);
  out["total"] = num(n.total);
  out["jump"] = num(n.jump_part);
  out["quadrature_error"] = num(n.quadrature_error_estimate);
  out["convergence"] = to_string(n.status);
  out["tail_slope"] = num(n.tail_slope);
  out["cutoffs"] = nums(n.cutoffs);
  out["truncated_values"] = nums(n.truncated_values);
  return out;
}

TaskResult from_verdict(const Verdict& v, json result, double headline) {
  return {to_string(v.status), exit_code(v.status), std::move(result), headline};
}

TaskResult from_convergence(Convergence c, json result, double headline) {
  const Status s = status_from(c);
  return {to_string(s), exit_code(s), std::move(result), headline};
}

json Report::to_json() const {
  json out;
  out["schema"] = kSchemaId;
  out["command"] = command;
  out["profile"] = profile.empty() ? json(nullptr) : json(profile);
  out["seed"] = seed;
  out["parameters"] = parameters;
  out["status"] = outcome.status;
  out["exit_code"] = outcome.exit_code;
  out["result"] = outcome.result;
  return out;
}

std::string format_cell(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace multimono::cli
