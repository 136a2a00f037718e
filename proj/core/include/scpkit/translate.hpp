#pragma once

#include <map>
#include <optional>

#include "scpkit/typing.hpp"

namespace scp {

// CP -> SCP on processes. Continuation binders stand in for the principal
// channel; the result is the alpha-normal form of rebinding the principal
// name over each continuation.
ScpRef encode(const CpRef& p);

// SCP -> CP on processes: substitutes the principal channel for each
// continuation binder. Total; left inverse of encode up to alpha.
CpRef decode(const ScpRef& p);

struct EncodedDerivation {
  ScpDerivRef deriv;                   // of  Delta |- encode(P)
  std::map<Name, LinDerivRef> lins;    // lin(z; encode(P)) for every z in dom(Delta)
};

// CP derivation -> SCP derivation plus linearity witnesses for the whole
// context, by the structural induction: premises are weakened to the shared
// ambient context, continuation channels are renamed fresh, and the witness
// for each context name is assembled from the congruence rules.
// Rejects invalid input derivations.
std::optional<EncodedDerivation> encode_derivation(const CpDerivRef& d);

// SCP derivation + witnesses -> CP derivation of  Delta |- decode(P)  with
// Delta the context restricted to fn(P). The context splits at cut/tensor are
// recovered from the witnesses' rule choices (Lpcomp1 vs Lpcomp2, Lout2 vs
// Lout3), not recomputed from free names. Rejects when the witnesses do not
// cover exactly fn(P) or fail validation.
std::optional<CpDerivRef> decode_derivation(const ScpDerivRef& d,
                                            const std::map<Name, LinDerivRef>& lins);

}  // namespace scp
