#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <typeinfo>

#include "CLI11.hpp"
#include "commands.hpp"
#include "multimono/errors.hpp"
#include "profile_dsl.hpp"

using namespace multimono;
using namespace multimono::cli;

namespace {

const char* error_type(const std::exception& e) {
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const CapabilityError*>(&e)) return "CapabilityError";
  if (dynamic_cast<const ParameterError*>(&e)) return "ParameterError";
  if (dynamic_cast<const DivergenceError*>(&e)) return "DivergenceError";
  if (dynamic_cast<const DslError*>(&e)) return "UsageError";
  return "Error";
}

int emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    std::cout.flush();
    return 0;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "multimono_cli: --out: cannot write '" << out << "'\n";
    return 1;
  }
  f << text;
  return 0;
}

void add_common(CLI::App* sub, Options& o, bool tables) {
  sub->add_option("--out", o.out, "Write the report to this file instead of stdout");
  sub->add_option("--seed", o.seed, "Seed for randomized paths")->capture_default_str();
  if (tables)
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->default_str("csv");
}

void add_profile(CLI::App* sub, Options& o) {
  sub->add_option("profile", o.profile, "Profile, e.g. exp:l=1 or example1:g=0,a=1,b=2")->required();
}

void add_m(CLI::App* sub, Options& o) { sub->add_option("--m", o.m, "Order m")->capture_default_str(); }

void add_dp(CLI::App* sub, Options& o) {
  sub->add_option("--d", o.d, "Dimension")->capture_default_str()->check(CLI::Range(1, 8));
  sub->add_option("--p", o.p, "Exponent of the p-norm (number or inf)")->capture_default_str();
}

void add_ladder(CLI::App* sub, Options& o) {
  sub->add_option("--L0", o.L0, "Half-width of the first rung")->capture_default_str();
  sub->add_option("--N0", o.N0, "Samples per axis on the first rung")->capture_default_str();
  sub->add_option("--steps", o.steps, "Number of rungs")->capture_default_str();
  sub->add_flag("--no-taper", o.no_taper, "Truncate without the smooth window");
}

void add_task_flags(CLI::App* sub, Options& o) {
  add_m(sub, o);
  add_dp(sub, o);
  add_ladder(sub, o);
  sub->add_option("--tol", o.tol, "Sign-pattern tolerance")->capture_default_str();
  sub->add_option("--alpha", o.alpha, "Weight exponent")->capture_default_str();
  sub->add_option("--condition", o.condition, "A, B, C, corollary, proposition, lemma3 or fft")
      ->capture_default_str();
  sub->add_flag("--brute", o.brute, "Also compute the brute-force integral");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiply monotone profiles: certificates, V_m norms and Wiener-algebra verdicts"};
  app.require_subcommand(1);
  Options o;

  auto* mono = app.add_subcommand("check-monotone", "Sign pattern and decay limits of f^(nu), nu <= m");
  add_profile(mono, o);
  add_m(mono, o);
  mono->add_option("--tol", o.tol, "Violation tolerance")->capture_default_str();
  mono->add_option("--t-min", o.t_min, "Grid start")->capture_default_str();
  mono->add_option("--t-max", o.t_max, "Grid end")->capture_default_str();
  mono->add_option("--ppd", o.per_decade, "Grid points per decade")->capture_default_str();
  add_common(mono, o, false);

  auto* vm = app.add_subcommand("vm-norm", "V_m norm: sup|f| + int t^m |df^(m)|");
  add_profile(vm, o);
  add_m(vm, o);
  add_common(vm, o, false);

  auto* dec = app.add_subcommand("decompose", "Split f into two m-monotone parts");
  add_profile(dec, o);
  add_m(dec, o);
  dec->add_flag("--table", o.table, "Include f, f1, f2 on the test grid");
  add_common(dec, o, false);

  auto* gam = app.add_subcommand("gamma-table", "Mixed-derivative coefficients gamma(d, p, nu)");
  add_dp(gam, o);
  add_common(gam, o, true);

  auto* red = app.add_subcommand("reduce-integral", "int g(|x|_p) prod |x_j|^(alpha-1) dx by reduction");
  add_profile(red, o);
  add_dp(red, o);
  red->add_option("--alpha", o.alpha, "Weight exponent")->capture_default_str();
  red->add_flag("--brute", o.brute, "Also compute the brute-force integral");
  add_common(red, o, false);

  auto* mem = app.add_subcommand("test-membership", "Wiener-algebra membership conditions");
  add_profile(mem, o);
  add_dp(mem, o);
  mem->add_option("--condition", o.condition, "A, B, C, corollary, proposition, lemma3 or fft")
      ->capture_default_str()
      ->check(CLI::IsMember({"A", "B", "C", "corollary", "proposition", "lemma3", "fft"}));
  mem->add_option("--eps", o.eps, "Condition C decay exponent eps");
  mem->add_option("--delta", o.delta, "Condition C decay exponent delta");
  mem->add_option("--a", o.a, "Condition C support cutoff");
  add_ladder(mem, o);
  add_common(mem, o, false);

  auto* fft = app.add_subcommand("fft-oracle", "L1 norm of the Fourier preimage along a refinement ladder");
  add_profile(fft, o);
  add_dp(fft, o);
  add_ladder(fft, o);
  add_common(fft, o, false);

  auto* sw = app.add_subcommand("sweep", "Run a task over a parameter grid");
  sw->add_option("template", o.profile, "Profile template with {name} placeholders")->required();
  sw->add_option("--param", o.params, "name=v1,v2,... or name=lo:hi:n")->required();
  sw->add_option("--task", o.task, "check-monotone, vm-norm, decompose, reduce-integral, test-membership or fft-oracle")
      ->capture_default_str();
  sw->add_option("--workers", o.workers, "Worker threads (default: MULTIMONO_WORKERS or all cores)");
  add_task_flags(sw, o);
  add_common(sw, o, true);

  auto* rep = app.add_subcommand("reproduce", "Tables for the closed-form thresholds and constants");
  rep->add_option("target", o.target, "example1, example2, reduction or polya")
      ->required()
      ->check(CLI::IsMember({"example1", "example2", "reduction", "polya"}));
  add_dp(rep, o);
  add_ladder(rep, o);
  rep->add_option("--workers", o.workers, "Worker threads (default: MULTIMONO_WORKERS or all cores)");
  add_common(rep, o, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "multimono_cli: " << e.what() << "\n";
    return 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();

  try {
    CommandOutput out;
    if (name == "gamma-table") {
      out = gamma_table(o);
    } else if (name == "sweep") {
      out = sweep(o);
    } else if (name == "reproduce") {
      out = reproduce(o);
    } else {
      // the profile must parse before any computation
      std::optional<Profile> f;
      try {
        f = parse_profile(o.profile);
        if (name == "reduce-integral" || name == "test-membership" || name == "fft-oracle") p_value(o);
      } catch (const std::exception& e) {
        std::cerr << "multimono_cli: " << (dynamic_cast<const DslError*>(&e) ? "" : "profile: ") << e.what() << "\n";
        return 1;
      }
      Report r;
      r.command = name;
      r.profile = f->descriptor();
      r.seed = o.seed;
      r.parameters = task_parameters(name, o);
      try {
        r.outcome = run_task(name, *f, o);
      } catch (const std::exception& e) {
        r.outcome.status = "error";
        r.outcome.exit_code = 1;
        r.outcome.result = {{"error", {{"type", error_type(e)}, {"message", e.what()}}}};
        std::cerr << "multimono_cli: " << e.what() << "\n";
      }
      out = {r.to_json().dump(2) + "\n", r.outcome.exit_code};
    }
    if (emit(out.text, o.out) != 0) return 1;
    return out.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "multimono_cli: " << e.what() << "\n";
    return 1;
  }
}
