#include "scpkit/reduction.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace scp {

namespace {
template <class... Ts>
struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

const char* step_rule_name(StepRule r) {
  switch (r) {
    case StepRule::BetaFwd: return "beta_fwd";
    case StepRule::BetaOneBot: return "beta_one_bot";
    case StepRule::BetaTensorPar: return "beta_tensor_par";
    case StepRule::BetaInl: return "beta_inl";
    case StepRule::BetaInr: return "beta_inr";
    case StepRule::KappaOut1: return "kappa_out1";
    case StepRule::KappaOut2: return "kappa_out2";
    case StepRule::KappaInp: return "kappa_inp";
    case StepRule::KappaInl: return "kappa_inl";
    case StepRule::KappaInr: return "kappa_inr";
    case StepRule::KappaCase: return "kappa_case";
    case StepRule::KappaWait: return "kappa_wait";
    case StepRule::BetaCut1: return "beta_cut1";
    case StepRule::BetaCut2: return "beta_cut2";
    case StepRule::BetaEquiv: return "beta_equiv";
  }
  return "?";
}

const char* equiv_rule_name(EquivRule r) {
  switch (r) {
    case EquivRule::Comm: return "comm";
    case EquivRule::Assoc: return "assoc";
    case EquivRule::Refl: return "refl";
    case EquivRule::Trans: return "trans";
    case EquivRule::Sym: return "sym";
  }
  return "?";
}

namespace {

// ---- per-calculus access helpers ------------------------------------------

const cp::Cut* as_cut(const CpRef& p) { return std::get_if<cp::Cut>(&p->node); }
const scpp::Cut* as_cut(const ScpRef& p) { return std::get_if<scpp::Cut>(&p->node); }

CpRef cut_of(const Name& x, const SessionType& a, const CpRef& l, const CpRef& r) {
  return CpProc::cut(x, a, l, r);
}
ScpRef cut_of(const Name& x, const SessionType& a, const ScpRef& l, const ScpRef& r) {
  return ScpProc::cut(x, a, l, r);
}

template <typename PRef>
EquivRef<PRef> mk_equiv(EquivRule rule, PRef lhs, PRef rhs,
                        std::vector<EquivRef<PRef>> premises = {}) {
  return std::make_shared<EquivDeriv<PRef>>(
      EquivDeriv<PRef>{rule, std::move(lhs), std::move(rhs), std::move(premises)});
}

template <typename PRef>
StepRef<PRef> mk_step(StepRule rule, PRef source, PRef target, StepRef<PRef> premise = nullptr,
                      EquivRef<PRef> pre = nullptr, EquivRef<PRef> post = nullptr) {
  return std::make_shared<Step<PRef>>(Step<PRef>{rule, std::move(source), std::move(target),
                                                 std::move(premise), std::move(pre),
                                                 std::move(post)});
}

template <typename PRef>
StepRef<PRef> beta_equiv_step(const PRef& source, const EquivRef<PRef>& pre,
                              const StepRef<PRef>& inner) {
  return mk_step(StepRule::BetaEquiv, source, inner->target, inner, pre,
                 mk_equiv(EquivRule::Refl, inner->target, inner->target));
}

using FoundList = std::vector<std::pair<StepRule, CpRef>>;
using SFoundList = std::vector<std::pair<StepRule, ScpRef>>;

// ---- principal reductions, prefix on the left ------------------------------

FoundList direct_betas(const CpRef& p) {
  FoundList out;
  auto* n = as_cut(p);
  if (!n) return out;
  const Name& z = n->x;
  const SessionType& ann = n->ann;
  const CpRef& L = n->left;
  const CpRef& R = n->right;

  if (auto* f = std::get_if<cp::Fwd>(&L->node)) {
    if (f->x == z && !(f->y == z)) out.emplace_back(StepRule::BetaFwd, rename(R, z, f->y));
  }
  if (auto* c = std::get_if<cp::Close>(&L->node)) {
    if (auto* w = std::get_if<cp::Wait>(&R->node)) {
      if (c->x == z && w->x == z && ann == SessionType::one() && !w->body->free.count(z))
        out.emplace_back(StepRule::BetaOneBot, w->body);
    }
  }
  if (auto* o = std::get_if<cp::Out>(&L->node)) {
    if (auto* i = std::get_if<cp::Inp>(&R->node)) {
      if (o->x == z && i->x == z && ann.tag() == TypeTag::Tensor && !o->payload->free.count(z)) {
        SessionType a = ann.left(), b = ann.right();
        CpRef pay = o->payload, cont = o->cont, body = i->body;
        Name y = o->y;
        NameSet all = set_union(set_union(pay->free, cont->free), body->free);
        all.insert(z);
        all.insert(y);
        all.insert(o->y);
        all.insert(i->y);
        bool clash = y == z || cont->free.count(y) || (body->free.count(y) && !(i->y == y));
        Name ynew = clash ? fresh(all, y.base) : y;
        CpRef pay2 = rename(pay, y, ynew);
        CpRef body2 = rename(body, i->y, ynew);
        CpRef inner = CpProc::cut(z, b, cont, body2);
        out.emplace_back(StepRule::BetaTensorPar, CpProc::cut(ynew, a, pay2, inner));
      }
    }
  }
  if (auto* il = std::get_if<cp::Inl>(&L->node)) {
    if (auto* cs = std::get_if<cp::Case>(&R->node)) {
      if (il->x == z && cs->x == z && ann.tag() == TypeTag::Plus)
        out.emplace_back(StepRule::BetaInl, CpProc::cut(z, ann.left(), il->body, cs->left));
    }
  }
  if (auto* ir = std::get_if<cp::Inr>(&L->node)) {
    if (auto* cs = std::get_if<cp::Case>(&R->node)) {
      if (ir->x == z && cs->x == z && ann.tag() == TypeTag::Plus)
        out.emplace_back(StepRule::BetaInr, CpProc::cut(z, ann.right(), ir->body, cs->right));
    }
  }
  return out;
}

SFoundList direct_betas(const ScpRef& p) {
  SFoundList out;
  auto* n = as_cut(p);
  if (!n) return out;
  const Name& z = n->x;
  const SessionType& ann = n->ann;
  const ScpRef& L = n->left;
  const ScpRef& R = n->right;

  if (auto* f = std::get_if<scpp::Fwd>(&L->node)) {
    if (f->x == z && !(f->y == z)) out.emplace_back(StepRule::BetaFwd, rename(R, z, f->y));
  }
  if (auto* c = std::get_if<scpp::Close>(&L->node)) {
    if (auto* w = std::get_if<scpp::Wait>(&R->node)) {
      if (c->x == z && w->x == z && ann == SessionType::one() && !w->body->free.count(z))
        out.emplace_back(StepRule::BetaOneBot, w->body);
    }
  }
  if (auto* o = std::get_if<scpp::Out>(&L->node)) {
    if (auto* i = std::get_if<scpp::Inp>(&R->node)) {
      if (o->x == z && i->x == z && ann.tag() == TypeTag::Tensor && !o->payload->free.count(z) &&
          !o->cont->free.count(z) && !i->body->free.count(z)) {
        SessionType a = ann.left(), b = ann.right();
        ScpRef pay = o->payload, cont = o->cont, body = i->body;
        NameSet all = set_union(set_union(pay->free, cont->free), body->free);
        for (const Name& nm : {z, o->y, o->w, i->w, i->y}) all.insert(nm);
        // outer cut channel: the sent name y
        bool yclash = (o->y == z) || cont->free.count(o->y) ||
                      (body->free.count(o->y) && !(i->y == o->y) && !(i->w == o->y));
        Name ynew = yclash ? fresh(all, o->y.base) : o->y;
        all.insert(ynew);
        // inner cut channel: the continuation w
        bool wclash = (o->w == z) || o->w == ynew ||
                      (body->free.count(o->w) && !(i->y == o->w) && !(i->w == o->w));
        Name wnew = wclash ? fresh(all, o->w.base) : o->w;
        ScpRef pay2 = rename(pay, o->y, ynew);
        ScpRef cont2 = rename(cont, o->w, wnew);
        ScpRef body2 = rename(rename(body, i->w, wnew), i->y, ynew);
        ScpRef inner = ScpProc::cut(wnew, b, cont2, body2);
        out.emplace_back(StepRule::BetaTensorPar, ScpProc::cut(ynew, a, pay2, inner));
      }
    }
  }
  if (auto* il = std::get_if<scpp::Inl>(&L->node)) {
    if (auto* cs = std::get_if<scpp::Case>(&R->node)) {
      if (il->x == z && cs->x == z && ann.tag() == TypeTag::Plus && !il->body->free.count(z) &&
          !cs->left->free.count(z)) {
        Name w = il->w;
        bool clash = cs->left->free.count(w) && !(cs->w == w);
        NameSet all = set_union(il->body->free, cs->left->free);
        all.insert(z);
        all.insert(w);
        all.insert(cs->w);
        Name wn = clash ? fresh(all, w.base) : w;
        out.emplace_back(StepRule::BetaInl,
                         ScpProc::cut(wn, ann.left(), rename(il->body, w, wn),
                                      rename(cs->left, cs->w, wn)));
      }
    }
  }
  if (auto* ir = std::get_if<scpp::Inr>(&L->node)) {
    if (auto* cs = std::get_if<scpp::Case>(&R->node)) {
      if (ir->x == z && cs->x == z && ann.tag() == TypeTag::Plus && !ir->body->free.count(z) &&
          !cs->right->free.count(z)) {
        Name w = ir->w;
        bool clash = cs->right->free.count(w) && !(cs->w2 == w);
        NameSet all = set_union(ir->body->free, cs->right->free);
        all.insert(z);
        all.insert(w);
        all.insert(cs->w2);
        Name wn = clash ? fresh(all, w.base) : w;
        out.emplace_back(StepRule::BetaInr,
                         ScpProc::cut(wn, ann.right(), rename(ir->body, w, wn),
                                      rename(cs->right, cs->w2, wn)));
      }
    }
  }
  return out;
}

// ---- commuting conversions, prefix on the left ------------------------------

Name guard_binder(Name b, const NameSet& forbidden, const NameSet& avoid_extra) {
  if (!forbidden.count(b)) return b;
  NameSet avoid = forbidden;
  avoid.insert(avoid_extra.begin(), avoid_extra.end());
  avoid.insert(b);
  return fresh(avoid, b.base);
}

FoundList kappa_steps(const CpRef& p) {
  FoundList out;
  auto* n = as_cut(p);
  if (!n) return out;
  const Name& z = n->x;
  const SessionType& ann = n->ann;
  const CpRef& L = n->left;
  const CpRef& R = n->right;

  std::visit(
      overloaded{
          [&](const cp::Out& o) {
            if (o.x == z) return;
            NameSet forbidden = R->free;
            forbidden.insert(z);
            if (o.payload->free.count(z) && !o.cont->free.count(z)) {
              Name y2 = guard_binder(o.y, forbidden, set_union(o.payload->free, o.cont->free));
              CpRef pay = rename(o.payload, o.y, y2);
              out.emplace_back(StepRule::KappaOut1,
                               CpProc::out(o.x, y2, CpProc::cut(z, ann, pay, R), o.cont));
            }
            if (o.cont->free.count(z) && !o.payload->free.count(z)) {
              out.emplace_back(StepRule::KappaOut2,
                               CpProc::out(o.x, o.y, o.payload, CpProc::cut(z, ann, o.cont, R)));
            }
          },
          [&](const cp::Inp& i) {
            if (i.x == z) return;
            NameSet forbidden = R->free;
            forbidden.insert(z);
            Name y2 = guard_binder(i.y, forbidden, i.body->free);
            CpRef body = rename(i.body, i.y, y2);
            out.emplace_back(StepRule::KappaInp,
                             CpProc::inp(i.x, y2, CpProc::cut(z, ann, body, R)));
          },
          [&](const cp::Inl& i) {
            if (i.x == z) return;
            out.emplace_back(StepRule::KappaInl,
                             CpProc::inl(i.x, CpProc::cut(z, ann, i.body, R)));
          },
          [&](const cp::Inr& i) {
            if (i.x == z) return;
            out.emplace_back(StepRule::KappaInr,
                             CpProc::inr(i.x, CpProc::cut(z, ann, i.body, R)));
          },
          [&](const cp::Case& c) {
            if (c.x == z) return;
            out.emplace_back(StepRule::KappaCase,
                             CpProc::case_(c.x, CpProc::cut(z, ann, c.left, R),
                                           CpProc::cut(z, ann, c.right, R)));
          },
          [&](const cp::Wait& w) {
            if (w.x == z) return;
            out.emplace_back(StepRule::KappaWait,
                             CpProc::wait(w.x, CpProc::cut(z, ann, w.body, R)));
          },
          [&](const auto&) {},
      },
      L->node);
  return out;
}

SFoundList kappa_steps(const ScpRef& p) {
  SFoundList out;
  auto* n = as_cut(p);
  if (!n) return out;
  const Name& z = n->x;
  const SessionType& ann = n->ann;
  const ScpRef& L = n->left;
  const ScpRef& R = n->right;

  std::visit(
      overloaded{
          [&](const scpp::Out& o) {
            if (o.x == z) return;
            NameSet forbidden = R->free;
            forbidden.insert(z);
            if (o.payload->free.count(z) && !o.cont->free.count(z)) {
              Name y2 = guard_binder(o.y, forbidden, set_union(o.payload->free, o.cont->free));
              ScpRef pay = rename(o.payload, o.y, y2);
              out.emplace_back(StepRule::KappaOut1,
                               ScpProc::out(o.x, y2, ScpProc::cut(z, ann, pay, R), o.w, o.cont));
            }
            if (o.cont->free.count(z) && !o.payload->free.count(z)) {
              Name w2 = guard_binder(o.w, forbidden, set_union(o.payload->free, o.cont->free));
              ScpRef cont = rename(o.cont, o.w, w2);
              out.emplace_back(StepRule::KappaOut2,
                               ScpProc::out(o.x, o.y, o.payload, w2,
                                            ScpProc::cut(z, ann, cont, R)));
            }
          },
          [&](const scpp::Inp& i) {
            if (i.x == z) return;
            NameSet forbidden = R->free;
            forbidden.insert(z);
            Name w2 = guard_binder(i.w, forbidden, i.body->free);
            NameSet forb2 = forbidden;
            forb2.insert(w2);
            Name y2 = guard_binder(i.y, forb2, i.body->free);
            ScpRef body = rename(rename(i.body, i.w, w2), i.y, y2);
            out.emplace_back(StepRule::KappaInp,
                             ScpProc::inp(i.x, w2, y2, ScpProc::cut(z, ann, body, R)));
          },
          [&](const scpp::Inl& i) {
            if (i.x == z) return;
            NameSet forbidden = R->free;
            forbidden.insert(z);
            Name w2 = guard_binder(i.w, forbidden, i.body->free);
            ScpRef body = rename(i.body, i.w, w2);
            out.emplace_back(StepRule::KappaInl,
                             ScpProc::inl(i.x, w2, ScpProc::cut(z, ann, body, R)));
          },
          [&](const scpp::Inr& i) {
            if (i.x == z) return;
            NameSet forbidden = R->free;
            forbidden.insert(z);
            Name w2 = guard_binder(i.w, forbidden, i.body->free);
            ScpRef body = rename(i.body, i.w, w2);
            out.emplace_back(StepRule::KappaInr,
                             ScpProc::inr(i.x, w2, ScpProc::cut(z, ann, body, R)));
          },
          [&](const scpp::Case& c) {
            if (c.x == z) return;
            NameSet forbidden = R->free;
            forbidden.insert(z);
            Name wl = guard_binder(c.w, forbidden, c.left->free);
            Name wr = guard_binder(c.w2, forbidden, c.right->free);
            ScpRef l = rename(c.left, c.w, wl);
            ScpRef r = rename(c.right, c.w2, wr);
            out.emplace_back(StepRule::KappaCase,
                             ScpProc::case_(c.x, wl, ScpProc::cut(z, ann, l, R), wr,
                                            ScpProc::cut(z, ann, r, R)));
          },
          [&](const scpp::Wait& w) {
            if (w.x == z) return;
            out.emplace_back(StepRule::KappaWait,
                             ScpProc::wait(w.x, ScpProc::cut(z, ann, w.body, R)));
          },
          [&](const auto&) {},
      },
      L->node);
  return out;
}

// ---- structural equivalence -------------------------------------------------

template <typename PRef>
std::vector<std::pair<PRef, EquivRef<PRef>>> equiv_moves(const PRef& p) {
  std::vector<std::pair<PRef, EquivRef<PRef>>> out;
  auto* n = as_cut(p);
  if (!n) return out;

  PRef flipped = cut_of(n->x, dual(n->ann), n->right, n->left);
  out.emplace_back(flipped, mk_equiv(EquivRule::Comm, p, flipped));

  // assoc, left to right:  nu y (nu x (P|Q) | R)  ~  nu x (P | nu y (Q|R))
  if (auto* inner = as_cut(n->left)) {
    if (!inner->left->free.count(n->x)) {  // the outer channel must not occur in P
      Name xi = inner->x;
      auto pp = inner->left;
      auto qq = inner->right;
      if (xi == n->x || n->right->free.count(xi)) {
        NameSet avoid = set_union(set_union(pp->free, qq->free), n->right->free);
        avoid.insert(n->x);
        avoid.insert(xi);
        Name x2 = fresh(avoid, xi.base);
        pp = rename(pp, xi, x2);
        qq = rename(qq, xi, x2);
        xi = x2;
      }
      PRef target = cut_of(xi, inner->ann, pp, cut_of(n->x, n->ann, qq, n->right));
      out.emplace_back(target, mk_equiv(EquivRule::Assoc, p, target));
    }
  }

  // assoc, right to left (recorded under sym):
  //   nu x (P | nu y (Q|R))  ~  nu y (nu x (P|Q) | R)   when x not free in R
  if (auto* inner = as_cut(n->right)) {
    if (!inner->right->free.count(n->x)) {
      Name yi = inner->x;
      auto qq = inner->left;
      auto rr = inner->right;
      if (yi == n->x || n->left->free.count(yi)) {
        NameSet avoid = set_union(set_union(qq->free, rr->free), n->left->free);
        avoid.insert(n->x);
        avoid.insert(yi);
        Name y2 = fresh(avoid, yi.base);
        qq = rename(qq, yi, y2);
        rr = rename(rr, yi, y2);
        yi = y2;
      }
      PRef target = cut_of(yi, inner->ann, cut_of(n->x, n->ann, n->left, qq), rr);
      auto fwd_dir = mk_equiv(EquivRule::Assoc, target, p);
      out.emplace_back(target, mk_equiv(EquivRule::Sym, p, target,
                                        std::vector<EquivRef<PRef>>{fwd_dir}));
    }
  }
  return out;
}

template <typename PRef>
EquivRef<PRef> compose_chain(const PRef& from, const PRef& to,
                             const std::vector<EquivRef<PRef>>& chain) {
  if (chain.empty()) return mk_equiv(EquivRule::Refl, from, to);
  if (chain.size() == 1) return chain[0];
  return mk_equiv(EquivRule::Trans, from, to, chain);
}

template <typename PRef>
std::vector<std::pair<PRef, EquivRef<PRef>>> neighborhood(const PRef& p, int depth) {
  std::vector<std::pair<PRef, EquivRef<PRef>>> out;
  std::set<std::string> seen;
  struct Item {
    PRef proc;
    std::vector<EquivRef<PRef>> chain;
  };
  std::vector<Item> frontier{{p, {}}};
  seen.insert(alpha_key(p));
  out.emplace_back(p, mk_equiv(EquivRule::Refl, p, p));
  for (int d = 0; d < depth; d++) {
    std::vector<Item> next;
    for (const auto& item : frontier) {
      for (auto& [q, move] : equiv_moves(item.proc)) {
        std::string key = alpha_key(q);
        if (seen.count(key)) continue;
        seen.insert(key);
        auto chain = item.chain;
        chain.push_back(move);
        out.emplace_back(q, compose_chain(p, q, chain));
        next.push_back({q, std::move(chain)});
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return out;
}

// ---- enumeration --------------------------------------------------------------

template <typename PRef>
std::vector<std::pair<StepRule, PRef>> found_of(const PRef& p);

template <>
std::vector<std::pair<StepRule, CpRef>> found_of<CpRef>(const CpRef& p) {
  auto out = direct_betas(p);
  auto ks = kappa_steps(p);
  out.insert(out.end(), ks.begin(), ks.end());
  return out;
}
template <>
std::vector<std::pair<StepRule, ScpRef>> found_of<ScpRef>(const ScpRef& p) {
  auto out = direct_betas(p);
  auto ks = kappa_steps(p);
  out.insert(out.end(), ks.begin(), ks.end());
  return out;
}

template <typename PRef>
std::vector<StepRef<PRef>> enum_steps(const PRef& p, const StepOptions& opts) {
  std::vector<StepRef<PRef>> raw;
  auto* n = as_cut(p);
  if (!n) return raw;

  for (auto& [r, t] : direct_betas(p)) raw.push_back(mk_step(r, p, t));
  for (auto& [r, t] : kappa_steps(p)) raw.push_back(mk_step(r, p, t));

  // right-hand-side redexes: normalize with one comm, record as beta_equiv
  PRef flipped = cut_of(n->x, dual(n->ann), n->right, n->left);
  auto comm = mk_equiv(EquivRule::Comm, p, flipped);
  for (auto& [r, t] : found_of<PRef>(flipped))
    raw.push_back(beta_equiv_step(p, comm, mk_step(r, flipped, t)));

  // congruence under the cut
  for (auto& s : enum_steps(n->left, opts))
    raw.push_back(mk_step(StepRule::BetaCut1, p, cut_of(n->x, n->ann, s->target, n->right), s));
  for (auto& s : enum_steps(n->right, opts))
    raw.push_back(mk_step(StepRule::BetaCut2, p, cut_of(n->x, n->ann, n->left, s->target), s));

  if (opts.use_equiv_closure && opts.equiv_depth > 0) {
    StepOptions inner{false, opts.equiv_depth};
    for (auto& [q, chain] : neighborhood(p, opts.equiv_depth)) {
      if (alpha_eq(q, p)) continue;
      for (auto& s : enum_steps(q, inner)) raw.push_back(beta_equiv_step(p, chain, s));
    }
  }

  std::vector<StepRef<PRef>> out;
  std::set<std::string> seen;
  for (auto& s : raw) {
    std::string key = std::to_string(static_cast<int>(leaf_rule(s))) + "|" + alpha_key(s->target);
    if (seen.count(key)) continue;
    seen.insert(key);
    out.push_back(s);
  }
  return out;
}

template <typename PRef>
int rule_class(const StepRef<PRef>& s) {
  switch (s->rule) {
    case StepRule::BetaCut1:
    case StepRule::BetaCut2: return 2;
    case StepRule::BetaEquiv: return rule_class(s->premise);
    case StepRule::KappaOut1:
    case StepRule::KappaOut2:
    case StepRule::KappaInp:
    case StepRule::KappaInl:
    case StepRule::KappaInr:
    case StepRule::KappaCase:
    case StepRule::KappaWait: return 1;
    default: return 0;
  }
}

template <typename PRef>
std::optional<StepRef<PRef>> pick_step(const PRef& p, Strategy strat, const StepOptions& opts,
                                       int index) {
  auto steps = enum_steps(p, opts);
  if (strat == Strategy::ByIndex) {
    if (index < 0 || index >= static_cast<int>(steps.size()))
      throw std::out_of_range("step index " + std::to_string(index) + " out of range (" +
                              std::to_string(steps.size()) + " redexes)");
    return steps[static_cast<std::size_t>(index)];
  }
  if (steps.empty()) return std::nullopt;
  auto by_position = [](const StepRef<PRef>& a, const StepRef<PRef>& b) {
    auto pa = step_position(a), pb = step_position(b);
    if (pa != pb) return pa < pb;
    return leaf_rule(a) < leaf_rule(b);
  };
  if (strat == Strategy::First) {
    std::stable_sort(steps.begin(), steps.end(), by_position);
  } else {
    std::stable_sort(steps.begin(), steps.end(),
                     [&](const StepRef<PRef>& a, const StepRef<PRef>& b) {
                       int ca = rule_class(a), cb = rule_class(b);
                       if (ca != cb) return ca < cb;
                       return by_position(a, b);
                     });
  }
  return steps.front();
}

template <typename PRef>
std::optional<PRef> reapply_rec(const StepRef<PRef>& s) {
  switch (s->rule) {
    case StepRule::BetaCut1: {
      auto* n = as_cut(s->source);
      if (!n || !s->premise) return std::nullopt;
      auto t = reapply_rec(s->premise);
      if (!t) return std::nullopt;
      return cut_of(n->x, n->ann, *t, n->right);
    }
    case StepRule::BetaCut2: {
      auto* n = as_cut(s->source);
      if (!n || !s->premise) return std::nullopt;
      auto t = reapply_rec(s->premise);
      if (!t) return std::nullopt;
      return cut_of(n->x, n->ann, n->left, *t);
    }
    case StepRule::BetaEquiv: {
      if (!s->premise) return std::nullopt;
      return reapply_rec(s->premise);
    }
    default: {
      for (auto& [r, t] : found_of<PRef>(s->source))
        if (r == s->rule) return t;
      return std::nullopt;
    }
  }
}

template <typename PRef>
std::vector<StepRef<PRef>> trace_impl(const PRef& p, Strategy strat, int max_steps,
                                      const StepOptions& opts) {
  std::vector<StepRef<PRef>> out;
  PRef cur = p;
  for (int i = 0; i < max_steps; i++) {
    auto s = pick_step(cur, strat, opts, 0);
    if (!s) break;
    out.push_back(*s);
    cur = (*s)->target;
  }
  return out;
}

template <typename PRef>
std::optional<EquivRef<PRef>> equiv_impl(const PRef& p, const PRef& q, int depth) {
  if (alpha_eq(p, q)) return mk_equiv(EquivRule::Refl, p, q);
  for (auto& [r, chain] : neighborhood(p, depth))
    if (alpha_eq(r, q)) return chain;
  return std::nullopt;
}

}  // namespace

template <typename PRef>
StepRule leaf_rule(const StepRef<PRef>& s) {
  if (s->rule == StepRule::BetaCut1 || s->rule == StepRule::BetaCut2 ||
      s->rule == StepRule::BetaEquiv)
    return s->premise ? leaf_rule(s->premise) : s->rule;
  return s->rule;
}
template StepRule leaf_rule<CpRef>(const StepRef<CpRef>&);
template StepRule leaf_rule<ScpRef>(const StepRef<ScpRef>&);

template <typename PRef>
std::string step_position(const StepRef<PRef>& s) {
  switch (s->rule) {
    case StepRule::BetaCut1: return "L" + (s->premise ? step_position(s->premise) : "");
    case StepRule::BetaCut2: return "R" + (s->premise ? step_position(s->premise) : "");
    case StepRule::BetaEquiv: return "~" + (s->premise ? step_position(s->premise) : "");
    default: return "";
  }
}
template std::string step_position<CpRef>(const StepRef<CpRef>&);
template std::string step_position<ScpRef>(const StepRef<ScpRef>&);

std::vector<CpStepRef> enumerate_steps(const CpRef& p, const StepOptions& opts) {
  return enum_steps(p, opts);
}
std::vector<ScpStepRef> enumerate_steps(const ScpRef& p, const StepOptions& opts) {
  return enum_steps(p, opts);
}

std::optional<CpStepRef> step(const CpRef& p, Strategy strat, const StepOptions& opts, int index) {
  return pick_step(p, strat, opts, index);
}
std::optional<ScpStepRef> step(const ScpRef& p, Strategy strat, const StepOptions& opts,
                               int index) {
  return pick_step(p, strat, opts, index);
}

std::optional<CpRef> reapply(const CpStepRef& s) { return reapply_rec(s); }
std::optional<ScpRef> reapply(const ScpStepRef& s) { return reapply_rec(s); }

std::vector<CpStepRef> trace(const CpRef& p, Strategy strat, int max_steps,
                             const StepOptions& opts) {
  return trace_impl(p, strat, max_steps, opts);
}
std::vector<ScpStepRef> trace(const ScpRef& p, Strategy strat, int max_steps,
                              const StepOptions& opts) {
  return trace_impl(p, strat, max_steps, opts);
}

std::optional<EquivRef<CpRef>> equiv_check(const CpRef& p, const CpRef& q, int depth) {
  return equiv_impl(p, q, depth);
}
std::optional<EquivRef<ScpRef>> equiv_check(const ScpRef& p, const ScpRef& q, int depth) {
  return equiv_impl(p, q, depth);
}

std::vector<std::pair<CpRef, EquivRef<CpRef>>> equiv_neighborhood(const CpRef& p, int depth) {
  return neighborhood(p, depth);
}
std::vector<std::pair<ScpRef, EquivRef<ScpRef>>> equiv_neighborhood(const ScpRef& p, int depth) {
  return neighborhood(p, depth);
}

}  // namespace scp
