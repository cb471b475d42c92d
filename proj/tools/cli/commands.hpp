#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "multimono/profile.hpp"
#include "report.hpp"

namespace multimono::cli {

/// Flags shared by the subcommands; each subcommand reads the ones it needs.
struct Options {
  std::string profile;
  std::string out;
  std::string format;  // json or csv; empty picks the command default
  std::uint64_t seed = 1;

  int m = 1;
  int d = 2;
  std::string p = "2";
  double alpha = 1.0;
  double tol = 1e-9;
  double t_min = 1e-4;
  double t_max = 1e4;
  double per_decade = 64;

  std::string condition = "corollary";
  double eps = -1.0;  // condition C parameters; negative means fitted
  double delta = -1.0;
  double a = 0.0;

  double L0 = 10.0;
  int N0 = 128;
  int steps = 4;
  bool no_taper = false;

  bool brute = false;
  bool table = false;

  std::string target;  // reproduce
  std::string task = "vm-norm";  // sweep
  std::vector<std::string> params;
  int workers = 0;
};

/// Written text and the process exit code.
struct CommandOutput {
  std::string text;
  int exit_code = 0;
};

double p_value(const Options& o);

TaskResult run_check_monotone(const Profile& f, const Options& o);
TaskResult run_vm_norm(const Profile& f, const Options& o);
TaskResult run_decompose(const Profile& f, const Options& o);
TaskResult run_reduce_integral(const Profile& f, const Options& o);
TaskResult run_membership(const Profile& f, const Options& o);
TaskResult run_fft_oracle(const Profile& f, const Options& o);

/// Runs a profile task by subcommand name.
TaskResult run_task(const std::string& name, const Profile& f, const Options& o);
/// Parameters echoed into the report for a profile task.
json task_parameters(const std::string& name, const Options& o);

CommandOutput gamma_table(const Options& o);
CommandOutput sweep(const Options& o);
CommandOutput reproduce(const Options& o);

/// Worker count: the flag if positive, else MULTIMONO_WORKERS, else the hardware count.
int resolve_workers(int flag);

/// Calls fn(i) for i in [0, n) on up to `workers` threads; results keep index order.
template <class T>
std::vector<T> parallel_map(std::size_t n, int workers, const std::function<T(std::size_t)>& fn);

}  // namespace multimono::cli

#include "parallel_map.ipp"
