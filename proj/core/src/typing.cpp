#include "scpkit/typing.hpp"

#include <algorithm>

namespace scp {

namespace {
template <class... Ts>
struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void note(std::string* why, const std::string& msg) {
  if (why && why->empty()) *why = msg;
}

TypingContext minus_names(const TypingContext& ctx, const NameSet& names) {
  NameSet keep;
  for (const auto& [n, t] : ctx.entries())
    if (!names.count(n)) keep.insert(n);
  return ctx.restricted(keep);
}

void collect_binders(const CpRef& p, NameSet& out) {
  std::visit(overloaded{
                 [&](const cp::Fwd&) {},
                 [&](const cp::Close&) {},
                 [&](const cp::Cut& n) {
                   out.insert(n.x);
                   collect_binders(n.left, out);
                   collect_binders(n.right, out);
                 },
                 [&](const cp::Out& n) {
                   out.insert(n.y);
                   collect_binders(n.payload, out);
                   collect_binders(n.cont, out);
                 },
                 [&](const cp::Inp& n) {
                   out.insert(n.y);
                   collect_binders(n.body, out);
                 },
                 [&](const cp::Inl& n) { collect_binders(n.body, out); },
                 [&](const cp::Inr& n) { collect_binders(n.body, out); },
                 [&](const cp::Case& n) {
                   collect_binders(n.left, out);
                   collect_binders(n.right, out);
                 },
                 [&](const cp::Wait& n) { collect_binders(n.body, out); },
             },
             p->node);
}

void collect_binders(const ScpRef& p, NameSet& out) {
  std::visit(overloaded{
                 [&](const scpp::Fwd&) {},
                 [&](const scpp::Close&) {},
                 [&](const scpp::Cut& n) {
                   out.insert(n.x);
                   collect_binders(n.left, out);
                   collect_binders(n.right, out);
                 },
                 [&](const scpp::Out& n) {
                   out.insert(n.y);
                   out.insert(n.w);
                   collect_binders(n.payload, out);
                   collect_binders(n.cont, out);
                 },
                 [&](const scpp::Inp& n) {
                   out.insert(n.w);
                   out.insert(n.y);
                   collect_binders(n.body, out);
                 },
                 [&](const scpp::Inl& n) {
                   out.insert(n.w);
                   collect_binders(n.body, out);
                 },
                 [&](const scpp::Inr& n) {
                   out.insert(n.w);
                   collect_binders(n.body, out);
                 },
                 [&](const scpp::Case& n) {
                   out.insert(n.w);
                   out.insert(n.w2);
                   collect_binders(n.left, out);
                   collect_binders(n.right, out);
                 },
                 [&](const scpp::Wait& n) { collect_binders(n.body, out); },
             },
             p->node);
}

}  // namespace

const char* cp_rule_name(CpRule r) {
  switch (r) {
    case CpRule::Cid: return "C-id";
    case CpRule::Ccut: return "C-cut";
    case CpRule::Ctensor: return "C-tensor";
    case CpRule::Cpar: return "C-par";
    case CpRule::Cplus1: return "C-plus1";
    case CpRule::Cplus2: return "C-plus2";
    case CpRule::Cwith: return "C-with";
    case CpRule::Cone: return "C-one";
    case CpRule::Cbot: return "C-bot";
  }
  return "?";
}

const char* scp_rule_name(ScpRule r) {
  switch (r) {
    case ScpRule::Sid: return "S-id";
    case ScpRule::Scut: return "S-cut";
    case ScpRule::Stensor: return "S-tensor";
    case ScpRule::Spar: return "S-par";
    case ScpRule::Splus1: return "S-plus1";
    case ScpRule::Splus2: return "S-plus2";
    case ScpRule::Swith: return "S-with";
    case ScpRule::Sone: return "S-one";
    case ScpRule::Sbot: return "S-bot";
  }
  return "?";
}

CpDerivRef make_cp_deriv(CpRule rule, TypingContext ctx, CpRef proc,
                         std::vector<CpDerivRef> premises) {
  return std::make_shared<CpDerivation>(
      CpDerivation{rule, std::move(ctx), std::move(proc), std::move(premises)});
}

ScpDerivRef make_scp_deriv(ScpRule rule, TypingContext ctx, ScpRef proc,
                           std::vector<ScpDerivRef> premises,
                           std::vector<LinDerivRef> lin_premises) {
  return std::make_shared<ScpDerivation>(ScpDerivation{
      rule, std::move(ctx), std::move(proc), std::move(premises), std::move(lin_premises)});
}

// ------------------------------------------------------------------ CP check

namespace {

std::optional<CpDerivRef> cp_rec(const TypingContext& delta, const CpRef& p, std::string* why) {
  using R = std::optional<CpDerivRef>;
  return std::visit(
      overloaded{
          [&](const cp::Fwd& n) -> R {
            if (delta.size() != 2) {
              note(why, "fwd: context must have exactly the two forwarded names");
              return std::nullopt;
            }
            auto a = delta.lookup(n.x), b = delta.lookup(n.y);
            if (!a || !b || n.x == n.y) {
              note(why, "fwd: names not both in context");
              return std::nullopt;
            }
            if (!(*b == dual(*a))) {
              note(why, "fwd: types of " + to_string(n.x) + " and " + to_string(n.y) +
                            " are not dual");
              return std::nullopt;
            }
            return make_cp_deriv(CpRule::Cid, delta, p);
          },
          [&](const cp::Close& n) -> R {
            if (delta.size() != 1 || !delta.lookup(n.x) ||
                !(*delta.lookup(n.x) == SessionType::one())) {
              note(why, "close " + to_string(n.x) + ": context must be exactly " +
                            to_string(n.x) + ":1");
              return std::nullopt;
            }
            return make_cp_deriv(CpRule::Cone, delta, p);
          },
          [&](const cp::Wait& n) -> R {
            auto t = delta.lookup(n.x);
            if (!t || t->tag() != TypeTag::Bot) {
              note(why, "wait " + to_string(n.x) + ": needs type bot in context");
              return std::nullopt;
            }
            auto d = cp_rec(delta.without(n.x), n.body, why);
            if (!d) return std::nullopt;
            return make_cp_deriv(CpRule::Cbot, delta, p, {*d});
          },
          [&](const cp::Cut& n) -> R {
            NameSet left_names = set_minus(n.left->free, n.x);
            TypingContext d1 = delta.restricted(left_names);
            TypingContext d2 = minus_names(delta, left_names);
            auto c1 = d1.extended(n.x, n.ann);
            auto c2 = d2.extended(n.x, dual(n.ann));
            if (!c1 || !c2) {
              note(why, "cut: bound channel collides with the context");
              return std::nullopt;
            }
            auto dl = cp_rec(*c1, n.left, why);
            if (!dl) return std::nullopt;
            auto dr = cp_rec(*c2, n.right, why);
            if (!dr) return std::nullopt;
            return make_cp_deriv(CpRule::Ccut, delta, p, {*dl, *dr});
          },
          [&](const cp::Out& n) -> R {
            auto t = delta.lookup(n.x);
            if (!t || t->tag() != TypeTag::Tensor) {
              note(why, "out on " + to_string(n.x) + ": needs a tensor type in context");
              return std::nullopt;
            }
            TypingContext rest = delta.without(n.x);
            NameSet pay_names = set_minus(n.payload->free, n.y);
            TypingContext d1 = rest.restricted(pay_names);
            TypingContext d2 = minus_names(rest, pay_names);
            auto c1 = d1.extended(n.y, t->left());
            auto c2 = d2.extended(n.x, t->right());
            if (!c1 || !c2) {
              note(why, "out: bound or subject channel collides with the context");
              return std::nullopt;
            }
            auto dp = cp_rec(*c1, n.payload, why);
            if (!dp) return std::nullopt;
            auto dq = cp_rec(*c2, n.cont, why);
            if (!dq) return std::nullopt;
            return make_cp_deriv(CpRule::Ctensor, delta, p, {*dp, *dq});
          },
          [&](const cp::Inp& n) -> R {
            auto t = delta.lookup(n.x);
            if (!t || t->tag() != TypeTag::Par) {
              note(why, "inp on " + to_string(n.x) + ": needs a par type in context");
              return std::nullopt;
            }
            auto c = delta.without(n.x).extended(n.x, t->right());
            std::optional<TypingContext> c2;
            if (c) c2 = c->extended(n.y, t->left());
            if (!c2) {
              note(why, "inp: bound channel collides with the context");
              return std::nullopt;
            }
            auto d = cp_rec(*c2, n.body, why);
            if (!d) return std::nullopt;
            return make_cp_deriv(CpRule::Cpar, delta, p, {*d});
          },
          [&](const cp::Inl& n) -> R {
            auto t = delta.lookup(n.x);
            if (!t || t->tag() != TypeTag::Plus) {
              note(why, "inl on " + to_string(n.x) + ": needs a plus type in context");
              return std::nullopt;
            }
            auto c = delta.retyped(n.x, t->left());
            std::optional<CpDerivRef> d;
            if (c) d = cp_rec(*c, n.body, why);
            if (!d) return std::nullopt;
            return make_cp_deriv(CpRule::Cplus1, delta, p, {*d});
          },
          [&](const cp::Inr& n) -> R {
            auto t = delta.lookup(n.x);
            if (!t || t->tag() != TypeTag::Plus) {
              note(why, "inr on " + to_string(n.x) + ": needs a plus type in context");
              return std::nullopt;
            }
            auto c = delta.retyped(n.x, t->right());
            std::optional<CpDerivRef> d;
            if (c) d = cp_rec(*c, n.body, why);
            if (!d) return std::nullopt;
            return make_cp_deriv(CpRule::Cplus2, delta, p, {*d});
          },
          [&](const cp::Case& n) -> R {
            auto t = delta.lookup(n.x);
            if (!t || t->tag() != TypeTag::With) {
              note(why, "case on " + to_string(n.x) + ": needs a with type in context");
              return std::nullopt;
            }
            auto cl = delta.retyped(n.x, t->left());
            auto cr = delta.retyped(n.x, t->right());
            std::optional<CpDerivRef> dl, dr;
            if (cl) dl = cp_rec(*cl, n.left, why);
            if (!dl) return std::nullopt;
            if (cr) dr = cp_rec(*cr, n.right, why);
            if (!dr) return std::nullopt;
            return make_cp_deriv(CpRule::Cwith, delta, p, {*dl, *dr});
          },
      },
      p->node);
}

}  // namespace

std::optional<CpDerivRef> cp_check(const TypingContext& delta, const CpRef& p, std::string* why) {
  CpRef q = freshen_binders(p, set_union(delta.domain(), p->free));
  return cp_rec(delta, q, why);
}

// ----------------------------------------------------------------- SCP check

namespace {

std::optional<ScpDerivRef> scp_rec(const TypingContext& gamma, const ScpRef& p, std::string* why) {
  using R = std::optional<ScpDerivRef>;
  auto lin_or_note = [&](const Name& ch, const ScpRef& q) -> std::optional<LinDerivRef> {
    auto l = lin_check(ch, q);
    if (!l) note(why, "no linearity derivation for " + to_string(ch));
    return l;
  };
  return std::visit(
      overloaded{
          [&](const scpp::Fwd& n) -> R {
            auto a = gamma.lookup(n.x), b = gamma.lookup(n.y);
            if (!a || !b) {
              note(why, "fwd: names not both in context");
              return std::nullopt;
            }
            if (!(*b == dual(*a))) {
              note(why, "fwd: types of " + to_string(n.x) + " and " + to_string(n.y) +
                            " are not dual");
              return std::nullopt;
            }
            return make_scp_deriv(ScpRule::Sid, gamma, p);
          },
          [&](const scpp::Close& n) -> R {
            auto t = gamma.lookup(n.x);
            if (!t || t->tag() != TypeTag::One) {
              note(why, "close " + to_string(n.x) + ": needs type 1 in context");
              return std::nullopt;
            }
            return make_scp_deriv(ScpRule::Sone, gamma, p);
          },
          [&](const scpp::Wait& n) -> R {
            auto t = gamma.lookup(n.x);
            if (!t || t->tag() != TypeTag::Bot) {
              note(why, "wait " + to_string(n.x) + ": needs type bot in context");
              return std::nullopt;
            }
            auto d = scp_rec(gamma, n.body, why);
            if (!d) return std::nullopt;
            return make_scp_deriv(ScpRule::Sbot, gamma, p, {*d});
          },
          [&](const scpp::Cut& n) -> R {
            auto cl = gamma.extended(n.x, n.ann);
            auto cr = gamma.extended(n.x, dual(n.ann));
            if (!cl || !cr) {
              note(why, "cut: bound channel collides with the context");
              return std::nullopt;
            }
            auto dl = scp_rec(*cl, n.left, why);
            if (!dl) return std::nullopt;
            auto dr = scp_rec(*cr, n.right, why);
            if (!dr) return std::nullopt;
            auto ll = lin_or_note(n.x, n.left);
            if (!ll) return std::nullopt;
            auto lr = lin_or_note(n.x, n.right);
            if (!lr) return std::nullopt;
            return make_scp_deriv(ScpRule::Scut, gamma, p, {*dl, *dr}, {*ll, *lr});
          },
          [&](const scpp::Out& n) -> R {
            auto t = gamma.lookup(n.x);
            if (!t || t->tag() != TypeTag::Tensor) {
              note(why, "out on " + to_string(n.x) + ": needs a tensor type in context");
              return std::nullopt;
            }
            auto cp_ = gamma.extended(n.y, t->left());
            auto cq = gamma.extended(n.w, t->right());
            if (!cp_ || !cq) {
              note(why, "out: bound channel collides with the context");
              return std::nullopt;
            }
            auto dp = scp_rec(*cp_, n.payload, why);
            if (!dp) return std::nullopt;
            auto dq = scp_rec(*cq, n.cont, why);
            if (!dq) return std::nullopt;
            auto ly = lin_or_note(n.y, n.payload);
            if (!ly) return std::nullopt;
            return make_scp_deriv(ScpRule::Stensor, gamma, p, {*dp, *dq}, {*ly});
          },
          [&](const scpp::Inp& n) -> R {
            auto t = gamma.lookup(n.x);
            if (!t || t->tag() != TypeTag::Par) {
              note(why, "inp on " + to_string(n.x) + ": needs a par type in context");
              return std::nullopt;
            }
            auto c1 = gamma.extended(n.w, t->right());
            std::optional<TypingContext> c2;
            if (c1) c2 = c1->extended(n.y, t->left());
            if (!c2) {
              note(why, "inp: bound channel collides with the context");
              return std::nullopt;
            }
            auto d = scp_rec(*c2, n.body, why);
            if (!d) return std::nullopt;
            auto ly = lin_or_note(n.y, n.body);
            if (!ly) return std::nullopt;
            return make_scp_deriv(ScpRule::Spar, gamma, p, {*d}, {*ly});
          },
          [&](const scpp::Inl& n) -> R {
            auto t = gamma.lookup(n.x);
            if (!t || t->tag() != TypeTag::Plus) {
              note(why, "inl on " + to_string(n.x) + ": needs a plus type in context");
              return std::nullopt;
            }
            auto c = gamma.extended(n.w, t->left());
            std::optional<ScpDerivRef> d;
            if (c) d = scp_rec(*c, n.body, why);
            if (!d) return std::nullopt;
            return make_scp_deriv(ScpRule::Splus1, gamma, p, {*d});
          },
          [&](const scpp::Inr& n) -> R {
            auto t = gamma.lookup(n.x);
            if (!t || t->tag() != TypeTag::Plus) {
              note(why, "inr on " + to_string(n.x) + ": needs a plus type in context");
              return std::nullopt;
            }
            auto c = gamma.extended(n.w, t->right());
            std::optional<ScpDerivRef> d;
            if (c) d = scp_rec(*c, n.body, why);
            if (!d) return std::nullopt;
            return make_scp_deriv(ScpRule::Splus2, gamma, p, {*d});
          },
          [&](const scpp::Case& n) -> R {
            auto t = gamma.lookup(n.x);
            if (!t || t->tag() != TypeTag::With) {
              note(why, "case on " + to_string(n.x) + ": needs a with type in context");
              return std::nullopt;
            }
            auto cl = gamma.extended(n.w, t->left());
            auto cr = gamma.extended(n.w2, t->right());
            std::optional<ScpDerivRef> dl, dr;
            if (cl) dl = scp_rec(*cl, n.left, why);
            if (!dl) return std::nullopt;
            if (cr) dr = scp_rec(*cr, n.right, why);
            if (!dr) return std::nullopt;
            return make_scp_deriv(ScpRule::Swith, gamma, p, {*dl, *dr});
          },
      },
      p->node);
}

}  // namespace

std::optional<ScpDerivRef> scp_check(const TypingContext& gamma, const ScpRef& p,
                                     std::string* why) {
  ScpRef q = freshen_binders(p, set_union(gamma.domain(), p->free));
  return scp_rec(gamma, q, why);
}

// ---------------------------------------------------------------- validation

namespace {

bool ctx_is_extension(const TypingContext& base, const TypingContext& ext,
                      const std::vector<TypingContext::Entry>& added) {
  TypingContext expect = base;
  for (const auto& [n, t] : added) {
    auto e = expect.extended(n, t);
    if (!e) return false;
    expect = *e;
  }
  return expect.same_as(ext);
}

}  // namespace

bool validate_cp(const CpDerivRef& d) {
  if (!d) return false;
  for (const auto& q : d->premises)
    if (!validate_cp(q)) return false;
  const TypingContext& ctx = d->context;

  return std::visit(
      overloaded{
          [&](const cp::Fwd& n) {
            if (d->rule != CpRule::Cid || !d->premises.empty()) return false;
            if (ctx.size() != 2 || n.x == n.y) return false;
            auto a = ctx.lookup(n.x), b = ctx.lookup(n.y);
            return a && b && *b == dual(*a);
          },
          [&](const cp::Close& n) {
            if (d->rule != CpRule::Cone || !d->premises.empty()) return false;
            auto a = ctx.lookup(n.x);
            return ctx.size() == 1 && a && *a == SessionType::one();
          },
          [&](const cp::Wait& n) {
            if (d->rule != CpRule::Cbot || d->premises.size() != 1) return false;
            auto t = ctx.lookup(n.x);
            if (!t || t->tag() != TypeTag::Bot) return false;
            const auto& q = d->premises[0];
            return alpha_eq(q->process, n.body) && q->context.same_as(ctx.without(n.x));
          },
          [&](const cp::Cut& n) {
            if (d->rule != CpRule::Ccut || d->premises.size() != 2) return false;
            if (ctx.contains(n.x)) return false;
            const auto& ql = d->premises[0];
            const auto& qr = d->premises[1];
            if (!alpha_eq(ql->process, n.left) || !alpha_eq(qr->process, n.right)) return false;
            auto a = ql->context.lookup(n.x), b = qr->context.lookup(n.x);
            if (!a || !b || !(*a == n.ann) || !(*b == dual(n.ann))) return false;
            TypingContext d1 = ql->context.without(n.x);
            TypingContext d2 = qr->context.without(n.x);
            for (const auto& [name, ty] : d1.entries())
              if (d2.contains(name)) return false;
            TypingContext joined = d1;
            for (const auto& [name, ty] : d2.entries()) {
              auto e = joined.extended(name, ty);
              if (!e) return false;
              joined = *e;
            }
            return joined.same_as(ctx);
          },
          [&](const cp::Out& n) {
            if (d->rule != CpRule::Ctensor || d->premises.size() != 2) return false;
            auto t = ctx.lookup(n.x);
            if (!t || t->tag() != TypeTag::Tensor) return false;
            const auto& qp = d->premises[0];
            const auto& qq = d->premises[1];
            if (!alpha_eq(qp->process, n.payload) || !alpha_eq(qq->process, n.cont)) return false;
            auto a = qp->context.lookup(n.y), b = qq->context.lookup(n.x);
            if (!a || !b || !(*a == t->left()) || !(*b == t->right())) return false;
            TypingContext d1 = qp->context.without(n.y);
            TypingContext d2 = qq->context.without(n.x);
            if (d1.contains(n.x)) return false;
            for (const auto& [name, ty] : d1.entries())
              if (d2.contains(name)) return false;
            TypingContext joined = d1;
            for (const auto& [name, ty] : d2.entries()) {
              auto e = joined.extended(name, ty);
              if (!e) return false;
              joined = *e;
            }
            return joined.same_as(ctx.without(n.x));
          },
          [&](const cp::Inp& n) {
            if (d->rule != CpRule::Cpar || d->premises.size() != 1) return false;
            auto t = ctx.lookup(n.x);
            if (!t || t->tag() != TypeTag::Par) return false;
            const auto& q = d->premises[0];
            if (!alpha_eq(q->process, n.body)) return false;
            return ctx_is_extension(ctx.without(n.x), q->context,
                                    {{n.x, t->right()}, {n.y, t->left()}});
          },
          [&](const cp::Inl& n) {
            if (d->rule != CpRule::Cplus1 || d->premises.size() != 1) return false;
            auto t = ctx.lookup(n.x);
            if (!t || t->tag() != TypeTag::Plus) return false;
            const auto& q = d->premises[0];
            auto expect = ctx.retyped(n.x, t->left());
            return alpha_eq(q->process, n.body) && expect && q->context.same_as(*expect);
          },
          [&](const cp::Inr& n) {
            if (d->rule != CpRule::Cplus2 || d->premises.size() != 1) return false;
            auto t = ctx.lookup(n.x);
            if (!t || t->tag() != TypeTag::Plus) return false;
            const auto& q = d->premises[0];
            auto expect = ctx.retyped(n.x, t->right());
            return alpha_eq(q->process, n.body) && expect && q->context.same_as(*expect);
          },
          [&](const cp::Case& n) {
            if (d->rule != CpRule::Cwith || d->premises.size() != 2) return false;
            auto t = ctx.lookup(n.x);
            if (!t || t->tag() != TypeTag::With) return false;
            const auto& ql = d->premises[0];
            const auto& qr = d->premises[1];
            auto el = ctx.retyped(n.x, t->left());
            auto er = ctx.retyped(n.x, t->right());
            return alpha_eq(ql->process, n.left) && alpha_eq(qr->process, n.right) && el && er &&
                   ql->context.same_as(*el) && qr->context.same_as(*er);
          },
      },
      d->process->node);
}

namespace {

bool lin_premise_ok(const LinDerivRef& l, const Name& subject, const ScpRef& proc) {
  return l && l->subject == subject && alpha_eq(l->process, proc) && validate_lin(l);
}

}  // namespace

bool validate_scp(const ScpDerivRef& d) {
  if (!d) return false;
  for (const auto& q : d->premises)
    if (!validate_scp(q)) return false;
  const TypingContext& ctx = d->context;

  return std::visit(
      overloaded{
          [&](const scpp::Fwd& n) {
            if (d->rule != ScpRule::Sid || !d->premises.empty() || !d->lin_premises.empty())
              return false;
            auto a = ctx.lookup(n.x), b = ctx.lookup(n.y);
            return a && b && *b == dual(*a);
          },
          [&](const scpp::Close& n) {
            if (d->rule != ScpRule::Sone || !d->premises.empty() || !d->lin_premises.empty())
              return false;
            auto a = ctx.lookup(n.x);
            return a && *a == SessionType::one();
          },
          [&](const scpp::Wait& n) {
            if (d->rule != ScpRule::Sbot || d->premises.size() != 1 || !d->lin_premises.empty())
              return false;
            auto t = ctx.lookup(n.x);
            if (!t || t->tag() != TypeTag::Bot) return false;
            const auto& q = d->premises[0];
            return alpha_eq(q->process, n.body) && q->context.same_as(ctx);
          },
          [&](const scpp::Cut& n) {
            if (d->rule != ScpRule::Scut || d->premises.size() != 2 ||
                d->lin_premises.size() != 2)
              return false;
            const auto& ql = d->premises[0];
            const auto& qr = d->premises[1];
            if (!alpha_eq(ql->process, n.left) || !alpha_eq(qr->process, n.right)) return false;
            if (!ctx_is_extension(ctx, ql->context, {{n.x, n.ann}})) return false;
            if (!ctx_is_extension(ctx, qr->context, {{n.x, dual(n.ann)}})) return false;
            return lin_premise_ok(d->lin_premises[0], n.x, n.left) &&
                   lin_premise_ok(d->lin_premises[1], n.x, n.right);
          },
          [&](const scpp::Out& n) {
            if (d->rule != ScpRule::Stensor || d->premises.size() != 2 ||
                d->lin_premises.size() != 1)
              return false;
            auto t = ctx.lookup(n.x);
            if (!t || t->tag() != TypeTag::Tensor) return false;
            const auto& qp = d->premises[0];
            const auto& qq = d->premises[1];
            if (!alpha_eq(qp->process, n.payload) || !alpha_eq(qq->process, n.cont)) return false;
            if (!ctx_is_extension(ctx, qp->context, {{n.y, t->left()}})) return false;
            if (!ctx_is_extension(ctx, qq->context, {{n.w, t->right()}})) return false;
            return lin_premise_ok(d->lin_premises[0], n.y, n.payload);
          },
          [&](const scpp::Inp& n) {
            if (d->rule != ScpRule::Spar || d->premises.size() != 1 ||
                d->lin_premises.size() != 1)
              return false;
            auto t = ctx.lookup(n.x);
            if (!t || t->tag() != TypeTag::Par) return false;
            const auto& q = d->premises[0];
            if (!alpha_eq(q->process, n.body)) return false;
            if (!ctx_is_extension(ctx, q->context, {{n.w, t->right()}, {n.y, t->left()}}))
              return false;
            return lin_premise_ok(d->lin_premises[0], n.y, n.body);
          },
          [&](const scpp::Inl& n) {
            if (d->rule != ScpRule::Splus1 || d->premises.size() != 1 ||
                !d->lin_premises.empty())
              return false;
            auto t = ctx.lookup(n.x);
            if (!t || t->tag() != TypeTag::Plus) return false;
            const auto& q = d->premises[0];
            return alpha_eq(q->process, n.body) &&
                   ctx_is_extension(ctx, q->context, {{n.w, t->left()}});
          },
          [&](const scpp::Inr& n) {
            if (d->rule != ScpRule::Splus2 || d->premises.size() != 1 ||
                !d->lin_premises.empty())
              return false;
            auto t = ctx.lookup(n.x);
            if (!t || t->tag() != TypeTag::Plus) return false;
            const auto& q = d->premises[0];
            return alpha_eq(q->process, n.body) &&
                   ctx_is_extension(ctx, q->context, {{n.w, t->right()}});
          },
          [&](const scpp::Case& n) {
            if (d->rule != ScpRule::Swith || d->premises.size() != 2 || !d->lin_premises.empty())
              return false;
            auto t = ctx.lookup(n.x);
            if (!t || t->tag() != TypeTag::With) return false;
            const auto& ql = d->premises[0];
            const auto& qr = d->premises[1];
            return alpha_eq(ql->process, n.left) && alpha_eq(qr->process, n.right) &&
                   ctx_is_extension(ctx, ql->context, {{n.w, t->left()}}) &&
                   ctx_is_extension(ctx, qr->context, {{n.w2, t->right()}});
          },
      },
      d->process->node);
}

// --------------------------------------------------- weakening/strengthening

namespace {

ScpDerivRef weaken_rec(const ScpDerivRef& d, const Name& x, const SessionType& a) {
  std::vector<ScpDerivRef> ps;
  ps.reserve(d->premises.size());
  for (const auto& q : d->premises) ps.push_back(weaken_rec(q, x, a));
  auto ctx = d->context.extended(x, a);
  return make_scp_deriv(d->rule, *ctx, d->process, std::move(ps), d->lin_premises);
}

ScpDerivRef strengthen_rec(const ScpDerivRef& d, const Name& x) {
  std::vector<ScpDerivRef> ps;
  ps.reserve(d->premises.size());
  for (const auto& q : d->premises) ps.push_back(strengthen_rec(q, x));
  return make_scp_deriv(d->rule, d->context.without(x), d->process, std::move(ps),
                        d->lin_premises);
}

}  // namespace

std::optional<ScpDerivRef> weaken(const ScpDerivRef& d, const Name& x, const SessionType& a) {
  if (!d || d->context.contains(x) || d->process->free.count(x)) return std::nullopt;
  NameSet binders;
  collect_binders(d->process, binders);
  if (binders.count(x)) return std::nullopt;
  return weaken_rec(d, x, a);
}

std::optional<ScpDerivRef> strengthen(const ScpDerivRef& d, const Name& x) {
  if (!d || !d->context.contains(x) || d->process->free.count(x)) return std::nullopt;
  NameSet binders;
  collect_binders(d->process, binders);
  if (binders.count(x)) return std::nullopt;
  return strengthen_rec(d, x);
}

// ------------------------------------------------------------ renaming/equal

CpDerivRef rename_cp_deriv(const CpDerivRef& d, const Name& from, const Name& to) {
  std::vector<CpDerivRef> ps;
  ps.reserve(d->premises.size());
  for (const auto& q : d->premises) ps.push_back(rename_cp_deriv(q, from, to));
  return make_cp_deriv(d->rule, d->context.renamed(from, to), rename(d->process, from, to),
                       std::move(ps));
}

ScpDerivRef rename_scp_deriv(const ScpDerivRef& d, const Name& from, const Name& to) {
  std::vector<ScpDerivRef> ps;
  ps.reserve(d->premises.size());
  for (const auto& q : d->premises) ps.push_back(rename_scp_deriv(q, from, to));
  std::vector<LinDerivRef> ls;
  ls.reserve(d->lin_premises.size());
  for (const auto& l : d->lin_premises) ls.push_back(rename_lin(l, from, to));
  return make_scp_deriv(d->rule, d->context.renamed(from, to), rename(d->process, from, to),
                        std::move(ps), std::move(ls));
}

bool deriv_equal(const CpDerivRef& a, const CpDerivRef& b) {
  if (!a || !b) return a == b;
  if (a->rule != b->rule || !a->context.same_as(b->context) || !alpha_eq(a->process, b->process))
    return false;
  if (a->premises.size() != b->premises.size()) return false;
  for (std::size_t i = 0; i < a->premises.size(); i++)
    if (!deriv_equal(a->premises[i], b->premises[i])) return false;
  return true;
}

namespace {
bool lin_equal(const LinDerivRef& a, const LinDerivRef& b) {
  if (!a || !b) return a == b;
  if (a->rule != b->rule || !(a->subject == b->subject) || !alpha_eq(a->process, b->process))
    return false;
  if (a->premises.size() != b->premises.size()) return false;
  for (std::size_t i = 0; i < a->premises.size(); i++)
    if (!lin_equal(a->premises[i], b->premises[i])) return false;
  return true;
}
}  // namespace

bool deriv_equal(const ScpDerivRef& a, const ScpDerivRef& b) {
  if (!a || !b) return a == b;
  if (a->rule != b->rule || !a->context.same_as(b->context) || !alpha_eq(a->process, b->process))
    return false;
  if (a->premises.size() != b->premises.size() ||
      a->lin_premises.size() != b->lin_premises.size())
    return false;
  for (std::size_t i = 0; i < a->premises.size(); i++)
    if (!deriv_equal(a->premises[i], b->premises[i])) return false;
  for (std::size_t i = 0; i < a->lin_premises.size(); i++)
    if (!lin_equal(a->lin_premises[i], b->lin_premises[i])) return false;
  return true;
}

}  // namespace scp
