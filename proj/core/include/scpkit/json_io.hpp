#pragma once

#include <json.hpp>

#include "scpkit/metatheory.hpp"
#include "scpkit/print.hpp"
#include "scpkit/reduction.hpp"
#include "scpkit/typing.hpp"

namespace scp {

nlohmann::json type_json(const SessionType& t);
nlohmann::json context_json(const TypingContext& ctx);
nlohmann::json lin_json(const LinDerivRef& d);
nlohmann::json deriv_json(const CpDerivRef& d);
nlohmann::json deriv_json(const ScpDerivRef& d);
nlohmann::json step_json(const CpStepRef& s);
nlohmann::json step_json(const ScpStepRef& s);
nlohmann::json report_json(const Report& r);

}  // namespace scp
