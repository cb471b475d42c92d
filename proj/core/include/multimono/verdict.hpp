#pragma once

#include <map>
#include <string>
#include <vector>

#include "multimono/quadrature.hpp"

namespace multimono {

enum class Status { holds, fails, inconclusive };

enum class Condition {
  A,
  B,
  C,
  Corollary1,
  Corollary2,
  Proposition,
  Example1,
  Example2,
  FFTOracle,
  Lemma3,
};

struct Evidence {
  std::vector<double> cutoffs;
  std::vector<double> truncated_values;
  std::map<std::string, double> fitted_exponents;
  std::map<std::string, double> parameters;
  std::vector<std::string> notes;
};

struct Verdict {
  Status status = Status::inconclusive;
  Condition condition = Condition::A;
  Evidence evidence;
  std::string reason;
};

std::string to_string(Status s);
std::string to_string(Condition c);

inline Status status_from(Convergence c) {
  switch (c) {
    case Convergence::converged: return Status::holds;
    case Convergence::divergent: return Status::fails;
    case Convergence::inconclusive: return Status::inconclusive;
  }
  return Status::inconclusive;
}

/// 0 holds, 2 fails, 3 inconclusive.
inline int exit_code(Status s) {
  switch (s) {
    case Status::holds: return 0;
    case Status::fails: return 2;
    case Status::inconclusive: return 3;
  }
  return 3;
}

}  // namespace multimono
