#pragma once

#include <cstdint>
#include <map>

#include "scpkit/linearity.hpp"
#include "scpkit/parse.hpp"
#include "scpkit/typing.hpp"

namespace scp {

struct GenConfig {
  std::uint64_t seed = 0;
  int max_depth = 3;   // number of rule applications stacked on top of an axiom
  int type_depth = 2;  // bound on randomly drawn session types
  Calculus calculus = Calculus::CP;
};

struct GeneratedCp {
  TypingContext ctx;
  CpRef proc;
  CpDerivRef deriv;
};

struct GeneratedScp {
  TypingContext ctx;
  ScpRef proc;
  ScpDerivRef deriv;
  std::map<Name, LinDerivRef> lins;
};

// Seeded random construction of a well-typed judgment: start from an axiom
// and stack randomly chosen rules, drawing types up to type_depth. The output
// always validates and is deterministic per seed. Throws std::runtime_error
// after a bounded number of failed attempts (tiny depths with unlucky seeds).
GeneratedCp generate_typed_cp(const GenConfig& cfg);

// Same, then carried across the translation; linearity witnesses come with
// the derivation by construction.
GeneratedScp generate_typed_scp(const GenConfig& cfg);

}  // namespace scp
