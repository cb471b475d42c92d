#include "multimono/verdict.hpp"

namespace multimono {

std::string to_string(Status s) {
  switch (s) {
    case Status::holds: return "holds";
    case Status::fails: return "fails";
    case Status::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(Condition c) {
  switch (c) {
    case Condition::A: return "A";
    case Condition::B: return "B";
    case Condition::C: return "C";
    case Condition::Corollary1: return "Corollary1";
    case Condition::Corollary2: return "Corollary2";
    case Condition::Proposition: return "Proposition";
    case Condition::Example1: return "Example1";
    case Condition::Example2: return "Example2";
    case Condition::FFTOracle: return "FFT-oracle";
    case Condition::Lemma3: return "Lemma3";
  }
  return "?";
}

}  // namespace multimono
