#include "commands.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <thread>

#include "multimono/errors.hpp"
#include "multimono/fourier_oracle.hpp"
#include "multimono/membership.hpp"
#include "multimono/monotone_check.hpp"
#include "multimono/radial_calculus.hpp"
#include "multimono/vm_algebra.hpp"
#include "profile_dsl.hpp"

namespace multimono::cli {

namespace {

json certificate_json(const CertificateReport& r) {
  json out;
  out["passed"] = r.passed;
  out["m"] = r.m;
  out["orientation"] = r.orientation;
  out["per_order_sign_ok"] = r.per_order_sign_ok;
  out["per_order_violation"] = nums(r.per_order_violation);
  out["worst_violation"] = num(r.worst_violation);
  out["tol"] = num(r.tol);
  out["grid_points"] = r.grid_points;
  out["certificate"] = r.certificate;
  out["strictness"] = r.strictness;
  json comps = json::array();
  for (const auto& c : r.components) {
    comps.push_back({{"component", c.component},
                     {"orientation", c.orientation},
                     {"per_order_sign_ok", c.per_order_sign_ok},
                     {"worst_violation", num(c.worst_violation)}});
  }
  out["components"] = std::move(comps);
  return out;
}

json decay_json(const DecayReport& r) {
  json orders = json::array();
  for (const auto& o : r.orders) {
    orders.push_back({{"nu", o.nu},
                      {"at_zero", num(o.at_zero)},
                      {"at_infinity", num(o.at_infinity)},
                      {"zero_ok", o.zero_ok},
                      {"infinity_ok", o.infinity_ok}});
  }
  return {{"passed", r.passed}, {"tol", num(r.tol)}, {"orders", std::move(orders)}};
}

json ladder_json(const ConvergenceStudy& s) {
  json rungs = json::array();
  for (const auto& r : s.ladder) {
    rungs.push_back({{"L", num(r.L)},
                     {"N", r.N},
                     {"l1", num(r.l1_estimate)},
                     {"min_real", num(r.min_real_part)},
                     {"max_abs", num(r.max_abs)}});
  }
  json out;
  out["ladder"] = std::move(rungs);
  out["fitted_growth"] = num(s.fitted_growth);
  out["last_relative_change"] = num(s.last_relative_change);
  out["verdict"] = verdict_json(s.verdict);
  return out;
}

LadderSpec ladder_spec(const Options& o) { return LadderSpec{o.L0, o.N0, o.steps, !o.no_taper}; }

GridSpec grid_spec(const Options& o) { return GridSpec{o.t_min, o.t_max, o.per_decade, true}; }

std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_escape(r[i]);
    os << "\n";
  }
  return os.str();
}

json rows_json(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json row = json::object();
    for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = r[i];
    out.push_back(std::move(row));
  }
  return out;
}

// Table output in the requested format; JSON wraps the rows in a report.
CommandOutput table_output(const std::string& command, const Options& o, json parameters,
                           const std::vector<std::string>& header,
                           const std::vector<std::vector<std::string>>& rows, int exit_code) {
  if (o.format != "json") return {to_csv(header, rows), exit_code};
  Report rep;
  rep.command = command;
  rep.seed = o.seed;
  rep.parameters = std::move(parameters);
  rep.outcome.status = exit_code == 0 ? "ok" : "error";
  rep.outcome.exit_code = exit_code;
  rep.outcome.result = {{"columns", header}, {"rows", rows_json(header, rows)}};
  return {rep.to_json().dump(2) + "\n", exit_code};
}

std::string status_cell(bool b) { return b ? "true" : "false"; }

}  // namespace

double p_value(const Options& o) {
  const double p = parse_number(o.p, "--p");
  if (!(p > 0.0)) throw DslError("--p: must be > 0, got '" + o.p + "'");
  return p;
}

int resolve_workers(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("MULTIMONO_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

TaskResult run_check_monotone(const Profile& f, const Options& o) {
  const auto cert = sign_pattern_check(f, o.m, grid_spec(o), o.tol);
  json result = certificate_json(cert);
  bool decay_ok = true;
  if (o.m >= 1) {
    const auto decay = decay_limits_check(f, o.m);
    decay_ok = decay.passed;
    result["decay_limits"] = decay_json(decay);
  }
  const Status s = cert.passed ? Status::holds : Status::fails;
  result["decay_limits_passed"] = decay_ok;
  return {to_string(s), exit_code(s), std::move(result), cert.worst_violation};
}

TaskResult run_vm_norm(const Profile& f, const Options& o) {
  const auto n = vm_norm(f, o.m);
  return from_convergence(n.status, vm_norm_json(n), n.total);
}

TaskResult run_decompose(const Profile& f, const Options& o) {
  std::optional<DecompositionPair> pair;
  try {
    pair = decompose(f, o.m);
  } catch (const DivergenceError& e) {
    const auto n = vm_norm(f, o.m);
    json result{{"m", o.m}, {"norm_f", vm_norm_json(n)}, {"reason", e.what()}};
    return {to_string(Status::fails), exit_code(Status::fails), std::move(result), kInf};
  }
  const auto& dp = *pair;
  const double fact = std::tgamma(o.m + 1.0);
  const GridSpec check{1e-4, 1e4, 16, true};
  const auto s1 = sign_pattern_check(dp.f1, o.m + 1, check);
  const auto s2 = sign_pattern_check(dp.f2, o.m + 1, check);
  json result;
  result["m"] = o.m;
  result["reconstruction_error"] = num(dp.reconstruction_error);
  result["norm_f"] = num(dp.norm_f.total);
  result["norm_f1"] = num(dp.norm_f1.total);
  result["norm_f2"] = num(dp.norm_f2.total);
  result["bound_f1"] = num((1 + 1 / fact) * dp.norm_f.total);
  result["bound_f2"] = num((2 + 1 / fact) * dp.norm_f.total);
  result["f1_sign_pattern"] = s1.passed;
  result["f2_sign_pattern"] = s2.passed;
  if (o.table) {
    json rows = json::array();
    for (double t : dp.test_grid) {
      rows.push_back({{"t", num(t)},
                      {"f", num(f.real_derivative(0, t))},
                      {"f1", num(dp.f1.real_derivative(0, t))},
                      {"f2", num(dp.f2.real_derivative(0, t))}});
    }
    result["table"] = std::move(rows);
  }
  return {"ok", 0, std::move(result), dp.reconstruction_error};
}

TaskResult run_reduce_integral(const Profile& f, const Options& o) {
  const PNorm pn(p_value(o), o.d);
  json result;
  result["constant"] = num(reduction_constant(o.d, pn.p, o.alpha));
  double value = 0.0;
  try {
    value = weighted_integral_reduction(f, pn, o.alpha);
  } catch (const DivergenceError& e) {
    result["reduction"] = "inf";
    result["reason"] = e.what();
    return {to_string(Status::fails), exit_code(Status::fails), std::move(result), kInf};
  }
  result["reduction"] = num(value);
  if (o.brute) {
    const auto bf = weighted_integral_bruteforce(f, pn, o.alpha, {}, o.seed);
    result["bruteforce"] = {{"value", num(bf.value)},
                            {"error_estimate", num(bf.error_estimate)},
                            {"method", bf.method},
                            {"inconclusive", bf.inconclusive}};
    result["relative_difference"] = num(std::abs(value - bf.value) / std::abs(bf.value));
  }
  return {"ok", 0, std::move(result), value};
}

TaskResult run_membership(const Profile& f, const Options& o) {
  const double p = p_value(o);
  Verdict v;
  const std::string& c = o.condition;
  if (c == "A") {
    v = condition_A(f, o.d);
  } else if (c == "B") {
    v = condition_B(f, o.d, p);
  } else if (c == "C") {
    std::optional<DecayParams> params;
    if (o.eps >= 0.0 && o.delta >= 0.0) params = DecayParams{o.eps, o.delta, o.a};
    v = condition_C(f, o.d, params);
  } else if (c == "corollary") {
    v = corollary_membership(f, o.d, p);
  } else if (c == "proposition") {
    v = proposition_p2(f, o.d);
  } else if (c == "lemma3") {
    v = lemma3_predicate(f, PNorm(p, o.d));
  } else if (c == "fft") {
    const auto s = l1_convergence_study(f, PNorm(p, o.d), ladder_spec(o));
    json result = ladder_json(s);
    return from_verdict(s.verdict, std::move(result),
                        s.ladder.empty() ? 0.0 : s.ladder.back().l1_estimate);
  } else {
    throw DslError("--condition: unknown condition '" + c + "'");
  }
  const auto it = v.evidence.parameters.find("integral");
  const double headline = it != v.evidence.parameters.end() ? it->second : 0.0;
  return from_verdict(v, verdict_json(v), headline);
}

TaskResult run_fft_oracle(const Profile& f, const Options& o) {
  const auto s = l1_convergence_study(f, PNorm(p_value(o), o.d), ladder_spec(o));
  return from_verdict(s.verdict, ladder_json(s), s.ladder.empty() ? 0.0 : s.ladder.back().l1_estimate);
}

TaskResult run_task(const std::string& name, const Profile& f, const Options& o) {
  if (name == "check-monotone") return run_check_monotone(f, o);
  if (name == "vm-norm") return run_vm_norm(f, o);
  if (name == "decompose") return run_decompose(f, o);
  if (name == "reduce-integral") return run_reduce_integral(f, o);
  if (name == "test-membership") return run_membership(f, o);
  if (name == "fft-oracle") return run_fft_oracle(f, o);
  throw DslError("--task: unknown task '" + name + "'");
}

json task_parameters(const std::string& name, const Options& o) {
  json p = json::object();
  if (name == "check-monotone") {
    p = {{"m", o.m}, {"tol", o.tol}, {"t_min", o.t_min}, {"t_max", o.t_max}, {"points_per_decade", o.per_decade}};
  } else if (name == "vm-norm" || name == "decompose") {
    p = {{"m", o.m}};
  } else if (name == "reduce-integral") {
    p = {{"d", o.d}, {"p", o.p}, {"alpha", o.alpha}, {"brute", o.brute}};
  } else if (name == "test-membership") {
    p = {{"d", o.d}, {"p", o.p}, {"condition", o.condition}};
    if (o.condition == "C" && o.eps >= 0.0) p.update({{"eps", o.eps}, {"delta", o.delta}, {"a", o.a}});
  } else if (name == "fft-oracle") {
    p = {{"d", o.d}, {"p", o.p}, {"L0", o.L0}, {"N0", o.N0}, {"steps", o.steps}, {"taper", !o.no_taper}};
  }
  return p;
}

CommandOutput gamma_table(const Options& o) {
  const auto t = gamma_coefficients(o.d, p_value(o));
  std::vector<std::vector<std::string>> rows;
  for (int nu = 1; nu <= o.d; ++nu) rows.push_back({std::to_string(nu), format_cell(t(nu))});
  return table_output("gamma-table", o, {{"d", o.d}, {"p", o.p}}, {"nu", "gamma"}, rows, 0);
}

namespace {

struct Axis {
  std::string name;
  std::vector<std::string> values;
};

Axis parse_axis(const std::string& spec) {
  const std::size_t eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) throw DslError("--param: expected name=values, got '" + spec + "'");
  Axis ax{spec.substr(0, eq), {}};
  const std::string body = spec.substr(eq + 1);
  const std::size_t c1 = body.find(':');
  if (c1 != std::string::npos) {
    const std::size_t c2 = body.find(':', c1 + 1);
    if (c2 == std::string::npos) throw DslError("--param " + ax.name + ": expected lo:hi:n");
    const double lo = parse_number(body.substr(0, c1), "--param " + ax.name);
    const double hi = parse_number(body.substr(c1 + 1, c2 - c1 - 1), "--param " + ax.name);
    const int n = static_cast<int>(parse_number(body.substr(c2 + 1), "--param " + ax.name));
    if (n < 1) throw DslError("--param " + ax.name + ": need at least one value");
    for (int i = 0; i < n; ++i) ax.values.push_back(format_cell(n == 1 ? lo : lo + (hi - lo) * i / (n - 1)));
  } else {
    std::size_t pos = 0;
    while (pos <= body.size()) {
      const std::size_t comma = body.find(',', pos);
      ax.values.push_back(body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  for (const auto& v : ax.values)
    if (v.empty()) throw DslError("--param " + ax.name + ": empty value");
  return ax;
}

std::string substitute(std::string text, const std::vector<Axis>& axes, const std::vector<std::size_t>& pick) {
  for (std::size_t k = 0; k < axes.size(); ++k) {
    const std::string key = "{" + axes[k].name + "}";
    for (std::size_t pos = text.find(key); pos != std::string::npos; pos = text.find(key, pos))
      text.replace(pos, key.size(), axes[k].values[pick[k]]);
  }
  return text;
}

}  // namespace

CommandOutput sweep(const Options& o) {
  std::vector<Axis> axes;
  for (const auto& s : o.params) axes.push_back(parse_axis(s));
  for (const auto& ax : axes)
    if (o.profile.find("{" + ax.name + "}") == std::string::npos)
      throw DslError("--param " + ax.name + ": template has no {" + ax.name + "}");
  if (o.task != "check-monotone" && o.task != "vm-norm" && o.task != "decompose" && o.task != "reduce-integral" &&
      o.task != "test-membership" && o.task != "fft-oracle")
    throw DslError("--task: unknown task '" + o.task + "'");

  std::size_t cells = 1;
  for (const auto& ax : axes) cells *= ax.values.size();

  struct Cell {
    std::vector<std::string> row;
    bool error = false;
  };
  const int workers = resolve_workers(o.workers);
  const auto results = parallel_map<Cell>(cells, workers, [&](std::size_t i) {
    std::vector<std::size_t> pick(axes.size());
    std::size_t rest = i;
    for (std::size_t k = axes.size(); k-- > 0;) {
      pick[k] = rest % axes[k].values.size();
      rest /= axes[k].values.size();
    }
    const std::string text = substitute(o.profile, axes, pick);
    Cell c;
    c.row.push_back(std::to_string(i));
    for (std::size_t k = 0; k < axes.size(); ++k) c.row.push_back(axes[k].values[pick[k]]);
    c.row.push_back(text);
    try {
      const auto r = run_task(o.task, parse_profile(text), o);
      c.row.push_back(r.status);
      c.row.push_back(format_cell(r.headline));
      c.row.push_back("");
    } catch (const std::exception& e) {
      c.error = true;
      c.row.push_back("error");
      c.row.push_back("nan");
      c.row.push_back(e.what());
    }
    return c;
  });

  std::vector<std::string> header{"index"};
  for (const auto& ax : axes) header.push_back(ax.name);
  header.insert(header.end(), {"profile", "status", "value", "message"});
  std::vector<std::vector<std::string>> rows;
  bool any_error = false;
  for (const auto& c : results) {
    rows.push_back(c.row);
    any_error = any_error || c.error;
  }
  json params = task_parameters(o.task, o);
  params["task"] = o.task;
  params["template"] = o.profile;
  params["axes"] = o.params;
  return table_output("sweep", o, std::move(params), header, rows, any_error ? 1 : 0);
}

CommandOutput reproduce(const Options& o) {
  const int workers = resolve_workers(o.workers);
  if (o.target == "example2") {
    // classifier against the L1 ladder on e^{i t^alpha} / (1 + t)^beta
    const double p = p_value(o);
    std::vector<std::pair<double, double>> grid;
    for (double alpha : {0.5, 1.0})
      for (double beta : {0.3, 0.7, 0.9, 1.1, 1.4, 1.8})
        if (std::abs(2 * beta - o.d * alpha) > 1e-9) grid.emplace_back(alpha, beta);
    using Row = std::vector<std::string>;
    const auto rows = parallel_map<Row>(grid.size(), workers, [&](std::size_t i) {
      const auto [alpha, beta] = grid[i];
      const bool cls = example2_classifier(alpha, beta, o.d, p);
      const auto s = l1_convergence_study(profiles::example2(alpha, beta), PNorm(p, o.d), ladder_spec(o));
      const bool agree = s.verdict.status != Status::inconclusive && (s.verdict.status == Status::holds) == cls;
      return Row{format_cell(alpha), format_cell(beta), status_cell(cls), to_string(s.verdict.status),
                 format_cell(s.ladder.back().l1_estimate), status_cell(agree)};
    });
    return table_output("reproduce", o, {{"target", o.target}, {"d", o.d}, {"p", o.p}},
                        {"alpha", "beta", "classifier", "oracle", "l1_last", "agree"}, rows, 0);
  }
  if (o.target == "example1") {
    // classifier against the norm-based sufficient condition
    const double p = p_value(o);
    std::vector<std::array<double, 3>> grid;
    for (double g : {0.0, 1.0})
      for (double a : {0.5, 1.0, 2.0})
        for (double b : {0.5, 1.0, 2.0, 3.0}) grid.push_back({g, a, b});
    using Row = std::vector<std::string>;
    const auto rows = parallel_map<Row>(grid.size(), workers, [&](std::size_t i) {
      const auto [g, a, b] = grid[i];
      const bool cls = example1_classifier(g, a, b);
      std::string norm;
      try {
        norm = to_string(corollary_membership(profiles::example1(g, a, b), o.d, p).status);
      } catch (const Error&) {
        norm = "error";
      }
      return Row{format_cell(g), format_cell(a), format_cell(b), status_cell(cls), norm};
    });
    return table_output("reproduce", o, {{"target", o.target}, {"d", o.d}, {"p", o.p}},
                        {"gamma", "alpha", "beta", "classifier", "corollary"}, rows, 0);
  }
  if (o.target == "reduction") {
    std::vector<std::vector<std::string>> rows;
    const auto g = profiles::exp_decay(1);
    for (int d : {2, 3})
      for (double p : {1.0, 2.0, 3.0, kInf})
        for (double alpha : {1.0, 2.0}) {
          const PNorm pn(p, d);
          const double red = weighted_integral_reduction(g, pn, alpha);
          const auto bf = weighted_integral_bruteforce(g, pn, alpha, {}, o.seed);
          rows.push_back({std::to_string(d), format_cell(p), format_cell(alpha),
                          format_cell(reduction_constant(d, p, alpha)), format_cell(red), format_cell(bf.value),
                          format_cell(std::abs(red - bf.value) / std::abs(bf.value))});
        }
    return table_output("reproduce", o, {{"target", o.target}},
                        {"d", "p", "alpha", "constant", "reduction", "bruteforce", "relative_difference"}, rows, 0);
  }
  if (o.target == "polya") {
    std::vector<std::vector<std::string>> rows;
    for (int d : {1, 2}) {
      const auto f = profiles::trunc_power(d, 1);
      const auto s = l1_convergence_study(f, PNorm(2, d), ladder_spec(o));
      const auto& top = s.ladder.back();
      rows.push_back({std::to_string(d), f.descriptor(), format_cell(top.L), std::to_string(top.N),
                      format_cell(top.min_real_part), format_cell(top.max_abs),
                      status_cell(top.min_real_part >= -1e-6 * top.max_abs)});
    }
    return table_output("reproduce", o, {{"target", o.target}},
                        {"d", "profile", "L", "N", "min_real", "max_abs", "nonnegative"}, rows, 0);
  }
  throw DslError("reproduce: unknown target '" + o.target + "' (example1, example2, reduction, polya)");
}

}  // namespace multimono::cli
