#pragma once

#include <vector>

#include "scpkit/context.hpp"
#include "scpkit/process.hpp"

namespace scp {

struct TypedCpJudgment {
  TypingContext ctx;
  CpRef proc;
};

// The fixed enumeration alphabet {1, bot, 1+bot, 1&bot, 1*bot, bot par 1} and
// its closure under duals (the universe every enumerated judgment draws from).
const std::vector<SessionType>& enumeration_alphabet();
const std::vector<SessionType>& enumeration_universe();

// All derivable CP judgments with process size <= max_size over the universe,
// one representative per renaming class of free channels (canonical names
// c0, c1, ... in first-occurrence order). Complete for the bound: every
// derivable judgment within it appears up to renaming.
std::vector<TypedCpJudgment> enumerate_typed_cp(int max_size);

// Canonical free-name form of an arbitrary judgment (used for dedup).
TypedCpJudgment canonicalize_judgment(const TypingContext& ctx, const CpRef& proc);

}  // namespace scp
