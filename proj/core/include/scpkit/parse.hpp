#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "scpkit/context.hpp"
#include "scpkit/process.hpp"
#include "scpkit/session_type.hpp"

namespace scp {

enum class Calculus { CP, SCP };

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
        line(line_),
        column(col_) {}
};

// Surface syntax. '#' starts a line comment. Free names get uid 0; every
// bound occurrence gets a fresh uid, so parsed terms are hygienic.
SessionType parse_type(std::string_view text);
CpRef parse_cp(std::string_view text);
ScpRef parse_scp(std::string_view text);
std::pair<TypingContext, CpRef> parse_cp_judgment(std::string_view text);
std::pair<TypingContext, ScpRef> parse_scp_judgment(std::string_view text);

// True if the text contains a top-level "|-" (i.e. looks like a judgment).
bool looks_like_judgment(std::string_view text);

}  // namespace scp
