#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scpkit/context.hpp"
#include "scpkit/linearity.hpp"
#include "scpkit/process.hpp"

namespace scp {

enum class CpRule { Cid, Ccut, Ctensor, Cpar, Cplus1, Cplus2, Cwith, Cone, Cbot };
enum class ScpRule { Sid, Scut, Stensor, Spar, Splus1, Splus2, Swith, Sone, Sbot };

const char* cp_rule_name(CpRule r);
const char* scp_rule_name(ScpRule r);

struct CpDerivation;
struct ScpDerivation;
using CpDerivRef = std::shared_ptr<const CpDerivation>;
using ScpDerivRef = std::shared_ptr<const ScpDerivation>;

// A derivation of |- Delta  for the process, with the linear context split
// among premises exactly as the rule demands.
struct CpDerivation {
  CpRule rule;
  TypingContext context;
  CpRef process;
  std::vector<CpDerivRef> premises;
};

// A derivation of Gamma |- P. Premise contexts only ever extend the
// conclusion context. Embedded linearity premises: Scut carries two (the cut
// channel in each branch), Stensor and Spar carry one (the sent/received
// fresh channel), all other rules none.
struct ScpDerivation {
  ScpRule rule;
  TypingContext context;
  ScpRef process;
  std::vector<ScpDerivRef> premises;
  std::vector<LinDerivRef> lin_premises;
};

CpDerivRef make_cp_deriv(CpRule rule, TypingContext ctx, CpRef proc,
                         std::vector<CpDerivRef> premises = {});
ScpDerivRef make_scp_deriv(ScpRule rule, TypingContext ctx, ScpRef proc,
                           std::vector<ScpDerivRef> premises = {},
                           std::vector<LinDerivRef> lin_premises = {});

// Deterministic CP checking. Context splits at cut/tensor are computed from
// free names (sound and complete: derivable CP judgments satisfy
// fn(P) = dom(Delta)). On failure optionally reports the first failing locus.
std::optional<CpDerivRef> cp_check(const TypingContext& delta, const CpRef& p,
                                   std::string* why = nullptr);

// Syntax-directed SCP checking against an ambient, growing context.
std::optional<ScpDerivRef> scp_check(const TypingContext& gamma, const ScpRef& p,
                                     std::string* why = nullptr);

bool validate_cp(const CpDerivRef& d);
bool validate_scp(const ScpDerivRef& d);

// Lemma "Weakening": extends every context of the derivation with x : a.
// Fails if x collides with the domain, the free names, or any binder.
std::optional<ScpDerivRef> weaken(const ScpDerivRef& d, const Name& x, const SessionType& a);

// Lemma "Strengthening": drops x : A everywhere; requires x not free in the
// process.
std::optional<ScpDerivRef> strengthen(const ScpDerivRef& d, const Name& x);

// Genericity on derivations: renames a free channel throughout. `to` must be
// fresh for the derivation.
CpDerivRef rename_cp_deriv(const CpDerivRef& d, const Name& from, const Name& to);
ScpDerivRef rename_scp_deriv(const ScpDerivRef& d, const Name& from, const Name& to);

// Structural equality up to alpha on processes (contexts compared as maps).
bool deriv_equal(const CpDerivRef& a, const CpDerivRef& b);
bool deriv_equal(const ScpDerivRef& a, const ScpDerivRef& b);

}  // namespace scp
