#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "scpkit/enumerate.hpp"
#include "scpkit/generate.hpp"
#include "scpkit/reduction.hpp"
#include "scpkit/translate.hpp"

namespace scp {

struct Violation {
  std::string instance;
  std::string message;
};

struct Report {
  std::string suite;
  std::size_t checked = 0;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Type preservation for CP: every enumerated step from a well-typed process
// leads to a process typable in the context restricted to its free names.
Report check_subject_reduction_cp(const TypingContext& ctx, const CpRef& p,
                                  const StepOptions& opts = {true, 2});

// Type and linearity preservation for SCP.
Report check_subject_reduction_scp(const TypingContext& ctx, const ScpRef& p,
                                   const StepOptions& opts = {true, 2});

// The translation theorem on one CP instance: process round trip, typability
// and linearity of the image, derivation round trip, and the reverse
// direction on everything the forward direction produced.
Report check_adequacy_cp(const TypingContext& ctx, const CpRef& p, const CpDerivRef& deriv);

// The reverse direction alone: decode succeeds and encode inverts it.
Report check_adequacy_scp(const ScpDerivRef& deriv, const std::map<Name, LinDerivRef>& lins);

// Native SCP steps coincide with CP steps transported through the
// translation, up to alpha and bounded structural equivalence.
Report check_semantics_agreement(const TypingContext& ctx, const ScpRef& p, int equiv_depth = 2);

// One instance of each lemma-as-property (weakening/strengthening round trip,
// linear names are free, fn = dom under typing+linearity, genericity,
// structural equivalence preserves typing and linearity).
Report check_lemmas_cp(const TypingContext& ctx, const CpRef& p);
Report check_lemmas_scp(const TypingContext& ctx, const ScpRef& p, const ScpDerivRef& deriv);

struct SuiteConfig {
  std::uint64_t seed = 0;
  int count = 100;          // random instances per suite
  int exhaustive_size = 4;  // enumeration bound for the exhaustive part
  int equiv_depth = 2;
};

// name: subject-reduction | adequacy | lemmas | all
std::vector<Report> run_suites(const std::string& name, const SuiteConfig& cfg);

}  // namespace scp
