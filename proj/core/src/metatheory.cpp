#include "scpkit/metatheory.hpp"

#include <algorithm>

#include "scpkit/print.hpp"

namespace scp {

namespace {

void violation(Report& r, const std::string& instance, const std::string& msg) {
  r.violations.push_back({instance, msg});
}

}  // namespace

Report check_subject_reduction_cp(const TypingContext& ctx, const CpRef& p,
                                  const StepOptions& opts) {
  Report r{"subject-reduction-cp"};
  std::string inst = print_judgment(ctx, p);
  auto d = cp_check(ctx, p);
  if (!d) {
    violation(r, inst, "precondition: source not well-typed");
    return r;
  }
  for (const auto& s : enumerate_steps(p, opts)) {
    r.checked++;
    const CpRef& q = s->target;
    TypingContext restricted = ctx.restricted(q->free);
    if (!cp_check(restricted, q))
      violation(r, inst, std::string("target not typable after ") +
                             step_rule_name(leaf_rule(s)) + ": " + print_process(q));
  }
  return r;
}

Report check_subject_reduction_scp(const TypingContext& ctx, const ScpRef& p,
                                   const StepOptions& opts) {
  Report r{"subject-reduction-scp"};
  std::string inst = print_judgment(ctx, p);
  auto d = scp_check(ctx, p);
  auto lins = lin_all(ctx, p);
  if (!d || !lins) {
    violation(r, inst, "precondition: source not well-typed or not linear");
    return r;
  }
  for (const auto& s : enumerate_steps(p, opts)) {
    r.checked++;
    const ScpRef& q = s->target;
    if (!scp_check(ctx, q)) {
      violation(r, inst, std::string("target not typable after ") +
                             step_rule_name(leaf_rule(s)) + ": " + print_process(q));
      continue;
    }
    TypingContext restricted = ctx.restricted(q->free);
    if (!lin_all(restricted, q))
      violation(r, inst, std::string("target not linear after ") +
                             step_rule_name(leaf_rule(s)) + ": " + print_process(q));
  }
  return r;
}

Report check_adequacy_cp(const TypingContext& ctx, const CpRef& p, const CpDerivRef& deriv) {
  Report r{"adequacy-cp"};
  std::string inst = print_judgment(ctx, p);
  r.checked++;

  ScpRef e = encode(p);
  if (!alpha_eq(decode(e), p)) violation(r, inst, "decode(encode(P)) differs from P");
  if (!scp_check(ctx, e)) violation(r, inst, "encode(P) not SCP-typable in the same context");
  if (!lin_all(ctx, e)) violation(r, inst, "lin(Delta; encode(P)) fails");

  auto enc = encode_derivation(deriv);
  if (!enc) {
    violation(r, inst, "encode_derivation rejected a valid derivation");
    return r;
  }
  if (!validate_scp(enc->deriv)) violation(r, inst, "encoded derivation does not validate");
  for (const auto& [z, l] : enc->lins)
    if (!validate_lin(l)) violation(r, inst, "encoded lin witness for " + to_string(z) + " invalid");

  auto dec = decode_derivation(enc->deriv, enc->lins);
  if (!dec) {
    violation(r, inst, "decode_derivation rejected the encoded derivation");
    return r;
  }
  if (!deriv_equal(*dec, deriv)) violation(r, inst, "derivation round trip changed the derivation");
  return r;
}

Report check_adequacy_scp(const ScpDerivRef& deriv, const std::map<Name, LinDerivRef>& lins) {
  Report r{"adequacy-scp"};
  std::string inst = print_judgment(deriv->context, deriv->process);
  r.checked++;
  auto dec = decode_derivation(deriv, lins);
  if (!dec) {
    violation(r, inst, "decode_derivation failed");
    return r;
  }
  if (!alpha_eq(encode((*dec)->process), deriv->process))
    violation(r, inst, "encode(decode(P)) differs from P");
  return r;
}

Report check_semantics_agreement(const TypingContext& ctx, const ScpRef& p, int equiv_depth) {
  Report r{"semantics-agreement"};
  std::string inst = print_judgment(ctx, p);
  StepOptions opts{true, equiv_depth};

  std::vector<ScpRef> native;
  for (const auto& s : enumerate_steps(p, opts)) native.push_back(s->target);

  std::vector<ScpRef> transported;
  for (const auto& s : enumerate_steps(decode(p), opts)) transported.push_back(encode(s->target));

  auto matches = [&](const ScpRef& a, const ScpRef& b) {
    return equiv_check(a, b, equiv_depth).has_value();
  };
  r.checked = native.size() + transported.size();
  for (const auto& t : native) {
    bool found = std::any_of(transported.begin(), transported.end(),
                             [&](const ScpRef& u) { return matches(t, u); });
    if (!found)
      violation(r, inst, "native step target has no transported counterpart: " + print_process(t));
  }
  for (const auto& t : transported) {
    bool found =
        std::any_of(native.begin(), native.end(), [&](const ScpRef& u) { return matches(t, u); });
    if (!found)
      violation(r, inst, "transported step target has no native counterpart: " + print_process(t));
  }
  return r;
}

Report check_lemmas_cp(const TypingContext& ctx, const CpRef& p) {
  Report r{"lemmas-cp"};
  std::string inst = print_judgment(ctx, p);
  r.checked++;
  // structural equivalence preserves CP typing
  for (const auto& [q, chain] : equiv_neighborhood(p, 2)) {
    if (!cp_check(ctx, q))
      violation(r, inst, "equivalence broke CP typing: " + print_process(q));
  }
  return r;
}

Report check_lemmas_scp(const TypingContext& ctx, const ScpRef& p, const ScpDerivRef& deriv) {
  Report r{"lemmas-scp"};
  std::string inst = print_judgment(ctx, p);
  r.checked++;

  NameSet everything = set_union(ctx.domain(), p->free);

  // weakening/strengthening round trip
  Name z = fresh(everything, "zz");
  auto weakened = weaken(deriv, z, SessionType::bot());
  if (!weakened) {
    violation(r, inst, "weakening failed on a fresh name");
  } else {
    if (!validate_scp(*weakened)) violation(r, inst, "weakened derivation does not validate");
    auto back = strengthen(*weakened, z);
    if (!back || !deriv_equal(*back, deriv))
      violation(r, inst, "strengthen(weaken(d)) is not d");
  }
  // strengthening must reject a used name
  if (!p->free.empty()) {
    Name used = *p->free.begin();
    if (ctx.contains(used) && strengthen(deriv, used))
      violation(r, inst, "strengthen accepted a name free in the process");
  }

  // linear names are free; and a fresh name has no witness
  for (const auto& [n, t] : ctx.entries()) {
    auto l = lin_check(n, p);
    if (l && !p->free.count(n))
      violation(r, inst, "lin(" + to_string(n) + "; P) holds but the name is not free");
  }
  if (lin_check(z, p)) violation(r, inst, "lin holds for a name not occurring at all");

  // fn(P) = dom(Delta) under typing + linearity
  if (scp_check(ctx, p) && lin_all(ctx, p) && !(ctx.domain() == p->free))
    violation(r, inst, "typed+linear but fn(P) != dom(Delta)");

  // genericity: rename a non-subject free name to a fresh one
  for (const auto& [x, tx] : ctx.entries()) {
    auto l = lin_check(x, p);
    if (!l) continue;
    for (const auto& y : p->free) {
      if (y == x) continue;
      Name w = fresh(everything, "ww");
      if (!lin_check(x, rename(p, y, w)))
        violation(r, inst, "genericity broke under renaming " + to_string(y));
      break;  // one witness per subject keeps the suite fast
    }
    // renaming the subject itself
    Name w2 = fresh(everything, "ws");
    if (!lin_check(w2, rename(p, x, w2)))
      violation(r, inst, "renaming the subject broke linearity for " + to_string(x));
  }

  // structural equivalence preserves typing and linearity
  for (const auto& [q, chain] : equiv_neighborhood(p, 2)) {
    if (!scp_check(ctx, q)) {
      violation(r, inst, "equivalence broke SCP typing: " + print_process(q));
      continue;
    }
    if (lin_all(ctx, p) && !lin_all(ctx, q))
      violation(r, inst, "equivalence broke linearity: " + print_process(q));
  }
  return r;
}

namespace {

void merge(Report& into, const Report& from) {
  into.checked += from.checked;
  into.violations.insert(into.violations.end(), from.violations.begin(), from.violations.end());
}

struct Instances {
  std::vector<TypedCpJudgment> cp;  // enumerated + generated, all well-typed
};

Instances gather(const SuiteConfig& cfg) {
  Instances out;
  out.cp = enumerate_typed_cp(cfg.exhaustive_size);
  for (int i = 0; i < cfg.count; i++) {
    GenConfig g;
    g.seed = cfg.seed + static_cast<std::uint64_t>(i);
    g.max_depth = 2 + i % 4;
    g.type_depth = 2;
    auto inst = generate_typed_cp(g);
    out.cp.push_back({inst.ctx, inst.proc});
  }
  return out;
}

}  // namespace

std::vector<Report> run_suites(const std::string& name, const SuiteConfig& cfg) {
  std::vector<Report> out;
  const bool all = name == "all";
  Instances inst = gather(cfg);

  if (all || name == "subject-reduction") {
    Report cp_r{"subject-reduction-cp"};
    Report scp_r{"subject-reduction-scp"};
    StepOptions opts{true, cfg.equiv_depth};
    for (const auto& j : inst.cp) {
      merge(cp_r, check_subject_reduction_cp(j.ctx, j.proc, opts));
      ScpRef e = encode(j.proc);
      merge(scp_r, check_subject_reduction_scp(j.ctx, e, opts));
    }
    out.push_back(std::move(cp_r));
    out.push_back(std::move(scp_r));
  }

  if (all || name == "adequacy") {
    Report ad{"adequacy"};
    for (const auto& j : inst.cp) {
      auto d = cp_check(j.ctx, j.proc);
      if (!d) {
        ad.violations.push_back({print_judgment(j.ctx, j.proc), "instance not typable"});
        continue;
      }
      merge(ad, check_adequacy_cp(j.ctx, j.proc, *d));
      auto enc = encode_derivation(*d);
      if (enc) merge(ad, check_adequacy_scp(enc->deriv, enc->lins));
    }
    out.push_back(std::move(ad));
  }

  if (all || name == "lemmas") {
    Report lem{"lemmas"};
    for (const auto& j : inst.cp) {
      merge(lem, check_lemmas_cp(j.ctx, j.proc));
      auto d = cp_check(j.ctx, j.proc);
      if (!d) continue;
      auto enc = encode_derivation(*d);
      if (!enc) {
        lem.violations.push_back({print_judgment(j.ctx, j.proc), "encoding failed"});
        continue;
      }
      merge(lem, check_lemmas_scp(j.ctx, enc->deriv->process, enc->deriv));
    }
    out.push_back(std::move(lem));
  }

  return out;
}

}  // namespace scp
