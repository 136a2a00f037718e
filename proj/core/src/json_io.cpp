#include "scpkit/json_io.hpp"

namespace scp {

using nlohmann::json;

json type_json(const SessionType& t) { return print_type(t); }

json context_json(const TypingContext& ctx) {
  json out = json::array();
  for (const auto& [n, t] : ctx.entries()) out.push_back({to_string(n), print_type(t)});
  return out;
}

json lin_json(const LinDerivRef& d) {
  json out;
  out["rule"] = lin_rule_name(d->rule);
  out["subject"] = to_string(d->subject);
  out["process"] = print_process(d->process);
  json prems = json::array();
  for (const auto& q : d->premises) prems.push_back(lin_json(q));
  out["premises"] = std::move(prems);
  return out;
}

json deriv_json(const CpDerivRef& d) {
  json out;
  out["rule"] = cp_rule_name(d->rule);
  out["context"] = context_json(d->context);
  out["process"] = print_process(d->process);
  json prems = json::array();
  for (const auto& q : d->premises) prems.push_back(deriv_json(q));
  out["premises"] = std::move(prems);
  out["lin"] = json::array();
  return out;
}

json deriv_json(const ScpDerivRef& d) {
  json out;
  out["rule"] = scp_rule_name(d->rule);
  out["context"] = context_json(d->context);
  out["process"] = print_process(d->process);
  json prems = json::array();
  for (const auto& q : d->premises) prems.push_back(deriv_json(q));
  out["premises"] = std::move(prems);
  json lins = json::array();
  for (const auto& l : d->lin_premises) lins.push_back(lin_json(l));
  out["lin"] = std::move(lins);
  return out;
}

namespace {
template <typename PRef>
json step_json_impl(const StepRef<PRef>& s) {
  json out;
  out["rule"] = step_rule_name(leaf_rule(s));
  out["source"] = print_process(s->source);
  out["target"] = print_process(s->target);
  out["position"] = step_position(s);
  return out;
}
}  // namespace

json step_json(const CpStepRef& s) { return step_json_impl(s); }
json step_json(const ScpStepRef& s) { return step_json_impl(s); }

json report_json(const Report& r) {
  json out;
  out["suite"] = r.suite;
  out["checked"] = r.checked;
  json vs = json::array();
  for (const auto& v : r.violations) vs.push_back({{"instance", v.instance}, {"message", v.message}});
  out["violations"] = std::move(vs);
  out["ok"] = r.ok();
  return out;
}

}  // namespace scp
