#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scpkit/process.hpp"

namespace scp {

// Rule tags: five principal reductions, seven commuting conversions, the two
// congruence rules for cut, and the closure under structural equivalence.
enum class StepRule {
  BetaFwd, BetaOneBot, BetaTensorPar, BetaInl, BetaInr,
  KappaOut1, KappaOut2, KappaInp, KappaInl, KappaInr, KappaCase, KappaWait,
  BetaCut1, BetaCut2, BetaEquiv,
};

enum class EquivRule { Comm, Assoc, Refl, Trans, Sym };

const char* step_rule_name(StepRule r);
const char* equiv_rule_name(EquivRule r);

template <typename PRef>
struct EquivDeriv {
  EquivRule rule;
  PRef lhs, rhs;
  std::vector<std::shared_ptr<const EquivDeriv<PRef>>> premises;
};
template <typename PRef>
using EquivRef = std::shared_ptr<const EquivDeriv<PRef>>;

// One reduction. BetaCut1/BetaCut2 steps carry the inner step as premise;
// BetaEquiv carries the pre/post equivalence derivations and the step done on
// the rearranged term.
template <typename PRef>
struct Step {
  StepRule rule;
  PRef source, target;
  std::shared_ptr<const Step<PRef>> premise;
  EquivRef<PRef> pre, post;
};
template <typename PRef>
using StepRef = std::shared_ptr<const Step<PRef>>;

using CpStepRef = StepRef<CpRef>;
using ScpStepRef = StepRef<ScpRef>;

struct StepOptions {
  bool use_equiv_closure = false;
  int equiv_depth = 2;
};

enum class Strategy { First, PrincipalFirst, ByIndex };

// The rule actually fired, below any congruence/equivalence wrappers.
template <typename PRef>
StepRule leaf_rule(const StepRef<PRef>& s);

// Path of the redex: 'L'/'R' per cut descended, '~' where the term was
// rearranged by structural equivalence first.
template <typename PRef>
std::string step_position(const StepRef<PRef>& s);

// Every redex of p. Reduction happens only under cuts: principal steps and
// commuting conversions at each cut (a right-hand-side redex is normalized
// with one comm, recorded as a BetaEquiv step), congruence recursion into
// both branches, and, when enabled, steps reachable within equiv_depth
// structural rearrangements.
std::vector<CpStepRef> enumerate_steps(const CpRef& p, const StepOptions& opts = {});
std::vector<ScpStepRef> enumerate_steps(const ScpRef& p, const StepOptions& opts = {});

// Deterministic selection. ByIndex throws std::out_of_range when the index
// does not name a redex.
std::optional<CpStepRef> step(const CpRef& p, Strategy strat, const StepOptions& opts = {},
                              int index = 0);
std::optional<ScpStepRef> step(const ScpRef& p, Strategy strat, const StepOptions& opts = {},
                               int index = 0);

// Re-runs the recorded rule at the recorded position of s->source.
std::optional<CpRef> reapply(const CpStepRef& s);
std::optional<ScpRef> reapply(const ScpStepRef& s);

std::vector<CpStepRef> trace(const CpRef& p, Strategy strat, int max_steps,
                             const StepOptions& opts = {});
std::vector<ScpStepRef> trace(const ScpRef& p, Strategy strat, int max_steps,
                              const StepOptions& opts = {});

// Bounded search for a structural-equivalence chain from p to q (comm, assoc
// in both directions, at the top of the term).
std::optional<EquivRef<CpRef>> equiv_check(const CpRef& p, const CpRef& q, int depth);
std::optional<EquivRef<ScpRef>> equiv_check(const ScpRef& p, const ScpRef& q, int depth);

// All terms reachable within `depth` rearrangements, including p itself
// (with a Refl witness).
std::vector<std::pair<CpRef, EquivRef<CpRef>>> equiv_neighborhood(const CpRef& p, int depth);
std::vector<std::pair<ScpRef, EquivRef<ScpRef>>> equiv_neighborhood(const ScpRef& p, int depth);

}  // namespace scp
