#pragma once
// Shared domain aliases. Instances are strings over Sigma (binary in all
// shipped fixtures; wider alphabets enter through the AlphabetCodec at
// ingestion). Responses are bit strings over Gamma = {0,1}.

#include "naqkit/bitstring.hpp"

#include <string>

namespace naqkit {

struct Instance {
  std::string id;
  std::string text;  // Sigma-string, digits '0'.. per alphabet arity

  bool operator==(const Instance& other) const = default;
};

using Response = BitString;

}  // namespace naqkit
