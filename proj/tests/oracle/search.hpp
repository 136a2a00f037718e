#pragma once

#include <vector>

#include "scpkit/linearity.hpp"
#include "scpkit/typing.hpp"

// Brute-force derivation search, independent of the deterministic checkers:
// every rule is tried against every context split. Used as the oracle for the
// syntax-directedness and completeness properties.
namespace scp::oracle {

std::vector<CpDerivRef> search_cp(const TypingContext& delta, const CpRef& p);
std::vector<ScpDerivRef> search_scp(const TypingContext& gamma, const ScpRef& p);
std::vector<LinDerivRef> search_lin(const Name& x, const ScpRef& p);

bool lin_deriv_equal(const LinDerivRef& a, const LinDerivRef& b);

}  // namespace scp::oracle
