#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "scpkit/context.hpp"
#include "scpkit/process.hpp"

namespace scp {

// The 18 rules of the judgment lin(x; P): nine principal rules for when the
// subject is the process's own channel, and nine congruence rules for when
// it belongs to a subterm.
enum class LinRule {
  Lfwd1, Lfwd2, Lclose, Lwait, Lout, Linp, Linl, Linr, Lcase,
  Lwait2, Lout2, Lout3, Linp2, Linl2, Linr2, Lcase2, Lpcomp1, Lpcomp2,
};

const char* lin_rule_name(LinRule r);

struct LinDerivation;
using LinDerivRef = std::shared_ptr<const LinDerivation>;

// A derivation of lin(subject; process). Premises about a bound continuation
// or binder are stored instantiated at the term's own binder name.
struct LinDerivation {
  LinRule rule;
  Name subject;
  ScpRef process;
  std::vector<LinDerivRef> premises;
};

LinDerivRef make_lin(LinRule rule, Name subject, ScpRef process,
                     std::vector<LinDerivRef> premises = {});

// Decides lin(x; p). The judgment is syntax-directed, so the returned
// derivation is the unique one when it exists.
std::optional<LinDerivRef> lin_check(const Name& x, const ScpRef& p);

// lin(Delta; p): a witness for every name in dom(delta), or nothing.
std::optional<std::map<Name, LinDerivRef>> lin_all(const TypingContext& delta, const ScpRef& p);

// Re-checks every node of a (possibly hand-built) derivation against the
// rules' side conditions.
bool validate_lin(const LinDerivRef& d);

// Genericity: replaces `from` by a name `to` fresh for the processes involved,
// in subjects, processes and premises alike.
LinDerivRef rename_lin(const LinDerivRef& d, const Name& from, const Name& to);

}  // namespace scp
