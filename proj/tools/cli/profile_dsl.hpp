#pragma once

// Profile strings for the command line.
//
//   exp:l=1                      gauss:s=1
//   example1:g=0,a=1,b=2         example2:a=1,b=1.2
//   trunc:m=2,u=1                williamson:m=2,atoms=0.5@1;2@3
//   csv:path/to/file.csv
//
// Any family except csv takes trailing modifiers, applied left to right:
//   pow=<alpha>  scale=<lambda>  cutoff=<a>  part=re|im
// The grammar matches Profile::descriptor(), so descriptors printed in
// reports parse back to the same profile.

#include <stdexcept>
#include <string>

#include "multimono/profile.hpp"

namespace multimono::cli {

class DslError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Profile parse_profile(const std::string& text);

/// Parses a real number; accepts "inf".
double parse_number(const std::string& text, const std::string& what);

}  // namespace multimono::cli
