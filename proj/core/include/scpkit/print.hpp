#pragma once

#include <string>

#include "scpkit/context.hpp"
#include "scpkit/process.hpp"
#include "scpkit/session_type.hpp"
#include "scpkit/typing.hpp"

namespace scp {

// Canonical concrete syntax. parse(print(v)) is alpha-equal to v for any
// value whose free names carry uid 0; bound names are re-displayed with a
// non-clashing identifier when needed.
std::string print_type(const SessionType& t);
std::string print_context(const TypingContext& ctx);
std::string print_process(const CpRef& p);
std::string print_process(const ScpRef& p);
std::string print_judgment(const TypingContext& ctx, const CpRef& p);
std::string print_judgment(const TypingContext& ctx, const ScpRef& p);

// Multi-line derivation trees for terminal output.
std::string print_deriv(const CpDerivRef& d);
std::string print_deriv(const ScpDerivRef& d);
std::string print_lin_deriv(const LinDerivRef& d);

}  // namespace scp
