#include "scpkit/linearity.hpp"

namespace scp {

namespace {
template <class... Ts>
struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using MaybeLin = std::optional<LinDerivRef>;
}  // namespace

const char* lin_rule_name(LinRule r) {
  switch (r) {
    case LinRule::Lfwd1: return "l_fwd1";
    case LinRule::Lfwd2: return "l_fwd2";
    case LinRule::Lclose: return "l_close";
    case LinRule::Lwait: return "l_wait";
    case LinRule::Lout: return "l_out";
    case LinRule::Linp: return "l_inp";
    case LinRule::Linl: return "l_inl";
    case LinRule::Linr: return "l_inr";
    case LinRule::Lcase: return "l_case";
    case LinRule::Lwait2: return "l_wait2";
    case LinRule::Lout2: return "l_out2";
    case LinRule::Lout3: return "l_out3";
    case LinRule::Linp2: return "l_inp2";
    case LinRule::Linl2: return "l_inl2";
    case LinRule::Linr2: return "l_inr2";
    case LinRule::Lcase2: return "l_case2";
    case LinRule::Lpcomp1: return "l_pcomp1";
    case LinRule::Lpcomp2: return "l_pcomp2";
  }
  return "?";
}

LinDerivRef make_lin(LinRule rule, Name subject, ScpRef process,
                     std::vector<LinDerivRef> premises) {
  return std::make_shared<LinDerivation>(
      LinDerivation{rule, std::move(subject), std::move(process), std::move(premises)});
}

namespace {

// Binders of the inspected node must be distinct from the subject before
// dispatch; colliding ones are alpha-refreshed here, node by node.
ScpRef avoid_subject(const ScpRef& p, const Name& x) {
  return std::visit(
      overloaded{
          [&](const scpp::Cut& n) {
            if (!(n.x == x)) return p;
            NameSet avoid = set_union(n.left->free, n.right->free);
            avoid.insert(x);
            Name b = fresh(avoid, n.x.base);
            return ScpProc::cut(b, n.ann, rename(n.left, n.x, b), rename(n.right, n.x, b));
          },
          [&](const scpp::Out& n) {
            if (!(n.y == x) && !(n.w == x)) return p;
            NameSet avoid = set_union(n.payload->free, n.cont->free);
            avoid.insert(x);
            Name y = n.y, w = n.w;
            ScpRef pay = n.payload, cont = n.cont;
            if (y == x) {
              y = fresh(avoid, n.y.base);
              pay = rename(pay, n.y, y);
              avoid.insert(y);
            }
            if (w == x) {
              w = fresh(avoid, n.w.base);
              cont = rename(cont, n.w, w);
            }
            return ScpProc::out(n.x, y, pay, w, cont);
          },
          [&](const scpp::Inp& n) {
            if (!(n.w == x) && !(n.y == x)) return p;
            NameSet avoid = n.body->free;
            avoid.insert(x);
            avoid.insert(n.w);
            avoid.insert(n.y);
            Name w = n.w, y = n.y;
            ScpRef body = n.body;
            if (w == x) {
              w = fresh(avoid, n.w.base);
              avoid.insert(w);
              body = rename(body, n.w, w);
            }
            if (y == x) {
              y = fresh(avoid, n.y.base);
              body = rename(body, n.y, y);
            }
            return ScpProc::inp(n.x, w, y, body);
          },
          [&](const scpp::Inl& n) {
            if (!(n.w == x)) return p;
            NameSet avoid = n.body->free;
            avoid.insert(x);
            Name w = fresh(avoid, n.w.base);
            return ScpProc::inl(n.x, w, rename(n.body, n.w, w));
          },
          [&](const scpp::Inr& n) {
            if (!(n.w == x)) return p;
            NameSet avoid = n.body->free;
            avoid.insert(x);
            Name w = fresh(avoid, n.w.base);
            return ScpProc::inr(n.x, w, rename(n.body, n.w, w));
          },
          [&](const scpp::Case& n) {
            if (!(n.w == x) && !(n.w2 == x)) return p;
            Name w = n.w, w2 = n.w2;
            ScpRef l = n.left, r = n.right;
            if (w == x) {
              NameSet avoid = l->free;
              avoid.insert(x);
              w = fresh(avoid, n.w.base);
              l = rename(l, n.w, w);
            }
            if (w2 == x) {
              NameSet avoid = r->free;
              avoid.insert(x);
              w2 = fresh(avoid, n.w2.base);
              r = rename(r, n.w2, w2);
            }
            return ScpProc::case_(n.x, w, l, w2, r);
          },
          [&](const auto&) { return p; },
      },
      p->node);
}

}  // namespace

std::optional<LinDerivRef> lin_check(const Name& x, const ScpRef& p0) {
  const ScpRef p = avoid_subject(p0, x);
  return std::visit(
      overloaded{
          [&](const scpp::Fwd& n) -> MaybeLin {
            if (n.x == x && !(n.y == x)) return make_lin(LinRule::Lfwd1, x, p);
            if (n.y == x && !(n.x == x)) return make_lin(LinRule::Lfwd2, x, p);
            return std::nullopt;
          },
          [&](const scpp::Close& n) -> MaybeLin {
            if (n.x == x) return make_lin(LinRule::Lclose, x, p);
            return std::nullopt;
          },
          [&](const scpp::Wait& n) -> MaybeLin {
            if (n.x == x) {
              if (n.body->free.count(x)) return std::nullopt;
              return make_lin(LinRule::Lwait, x, p);
            }
            auto q = lin_check(x, n.body);
            if (!q) return std::nullopt;
            return make_lin(LinRule::Lwait2, x, p, {*q});
          },
          [&](const scpp::Out& n) -> MaybeLin {
            const bool in_payload = n.payload->free.count(x) != 0;
            const bool in_cont = n.cont->free.count(x) != 0;
            if (n.x == x) {
              if (in_payload || in_cont) return std::nullopt;
              auto q = lin_check(n.w, n.cont);
              if (!q) return std::nullopt;
              return make_lin(LinRule::Lout, x, p, {*q});
            }
            if (in_payload && !in_cont) {
              auto q = lin_check(x, n.payload);
              if (!q) return std::nullopt;
              return make_lin(LinRule::Lout2, x, p, {*q});
            }
            if (in_cont && !in_payload) {
              auto q = lin_check(x, n.cont);
              if (!q) return std::nullopt;
              return make_lin(LinRule::Lout3, x, p, {*q});
            }
            return std::nullopt;
          },
          [&](const scpp::Inp& n) -> MaybeLin {
            if (n.x == x) {
              if (n.body->free.count(x)) return std::nullopt;
              auto q = lin_check(n.w, n.body);
              if (!q) return std::nullopt;
              return make_lin(LinRule::Linp, x, p, {*q});
            }
            auto q = lin_check(x, n.body);
            if (!q) return std::nullopt;
            return make_lin(LinRule::Linp2, x, p, {*q});
          },
          [&](const scpp::Inl& n) -> MaybeLin {
            if (n.x == x) {
              if (n.body->free.count(x)) return std::nullopt;
              auto q = lin_check(n.w, n.body);
              if (!q) return std::nullopt;
              return make_lin(LinRule::Linl, x, p, {*q});
            }
            auto q = lin_check(x, n.body);
            if (!q) return std::nullopt;
            return make_lin(LinRule::Linl2, x, p, {*q});
          },
          [&](const scpp::Inr& n) -> MaybeLin {
            if (n.x == x) {
              if (n.body->free.count(x)) return std::nullopt;
              auto q = lin_check(n.w, n.body);
              if (!q) return std::nullopt;
              return make_lin(LinRule::Linr, x, p, {*q});
            }
            auto q = lin_check(x, n.body);
            if (!q) return std::nullopt;
            return make_lin(LinRule::Linr2, x, p, {*q});
          },
          [&](const scpp::Case& n) -> MaybeLin {
            if (n.x == x) {
              if (n.left->free.count(x) || n.right->free.count(x)) return std::nullopt;
              auto ql = lin_check(n.w, n.left);
              auto qr = lin_check(n.w2, n.right);
              if (!ql || !qr) return std::nullopt;
              return make_lin(LinRule::Lcase, x, p, {*ql, *qr});
            }
            auto ql = lin_check(x, n.left);
            auto qr = lin_check(x, n.right);
            if (!ql || !qr) return std::nullopt;
            return make_lin(LinRule::Lcase2, x, p, {*ql, *qr});
          },
          [&](const scpp::Cut& n) -> MaybeLin {
            const bool in_left = n.left->free.count(x) != 0;
            const bool in_right = n.right->free.count(x) != 0;
            if (in_left && !in_right) {
              auto q = lin_check(x, n.left);
              if (!q) return std::nullopt;
              return make_lin(LinRule::Lpcomp1, x, p, {*q});
            }
            if (in_right && !in_left) {
              auto q = lin_check(x, n.right);
              if (!q) return std::nullopt;
              return make_lin(LinRule::Lpcomp2, x, p, {*q});
            }
            return std::nullopt;
          },
      },
      p->node);
}

std::optional<std::map<Name, LinDerivRef>> lin_all(const TypingContext& delta, const ScpRef& p) {
  std::map<Name, LinDerivRef> out;
  for (const auto& [name, ty] : delta.entries()) {
    auto d = lin_check(name, p);
    if (!d) return std::nullopt;
    out.emplace(name, *d);
  }
  return out;
}

namespace {

// A stored premise stands for the subterm instantiated at the term's own
// binder; accept any alpha-variant reached by renaming that binder.
bool premise_matches(const LinDerivRef& q, const Name& binder, const ScpRef& scope) {
  if (q->subject == binder) return alpha_eq(q->process, scope);
  if (scope->free.count(q->subject)) return false;  // would merge two names
  return alpha_eq(q->process, rename(scope, binder, q->subject));
}

bool premise_matches_subject(const LinDerivRef& q, const Name& subject, const ScpRef& scope) {
  return q->subject == subject && alpha_eq(q->process, scope);
}

}  // namespace

bool validate_lin(const LinDerivRef& d) {
  if (!d) return false;
  const Name& z = d->subject;
  for (const auto& q : d->premises)
    if (!validate_lin(q)) return false;

  switch (d->rule) {
    case LinRule::Lfwd1: {
      auto* n = std::get_if<scpp::Fwd>(&d->process->node);
      return n && d->premises.empty() && n->x == z && !(n->y == z);
    }
    case LinRule::Lfwd2: {
      auto* n = std::get_if<scpp::Fwd>(&d->process->node);
      return n && d->premises.empty() && n->y == z && !(n->x == z);
    }
    case LinRule::Lclose: {
      auto* n = std::get_if<scpp::Close>(&d->process->node);
      return n && d->premises.empty() && n->x == z;
    }
    case LinRule::Lwait: {
      auto* n = std::get_if<scpp::Wait>(&d->process->node);
      return n && d->premises.empty() && n->x == z && !n->body->free.count(z);
    }
    case LinRule::Lwait2: {
      auto* n = std::get_if<scpp::Wait>(&d->process->node);
      return n && d->premises.size() == 1 && !(n->x == z) &&
             premise_matches_subject(d->premises[0], z, n->body);
    }
    case LinRule::Lout: {
      auto* n = std::get_if<scpp::Out>(&d->process->node);
      return n && d->premises.size() == 1 && n->x == z && !n->payload->free.count(z) &&
             !n->cont->free.count(z) && premise_matches(d->premises[0], n->w, n->cont);
    }
    case LinRule::Lout2: {
      auto* n = std::get_if<scpp::Out>(&d->process->node);
      return n && d->premises.size() == 1 && !(n->x == z) && !n->cont->free.count(z) &&
             premise_matches_subject(d->premises[0], z, n->payload);
    }
    case LinRule::Lout3: {
      auto* n = std::get_if<scpp::Out>(&d->process->node);
      return n && d->premises.size() == 1 && !(n->x == z) && !n->payload->free.count(z) &&
             premise_matches_subject(d->premises[0], z, n->cont);
    }
    case LinRule::Linp: {
      auto* n = std::get_if<scpp::Inp>(&d->process->node);
      return n && d->premises.size() == 1 && n->x == z && !n->body->free.count(z) &&
             premise_matches(d->premises[0], n->w, n->body);
    }
    case LinRule::Linp2: {
      auto* n = std::get_if<scpp::Inp>(&d->process->node);
      return n && d->premises.size() == 1 && !(n->x == z) &&
             premise_matches_subject(d->premises[0], z, n->body);
    }
    case LinRule::Linl: {
      auto* n = std::get_if<scpp::Inl>(&d->process->node);
      return n && d->premises.size() == 1 && n->x == z && !n->body->free.count(z) &&
             premise_matches(d->premises[0], n->w, n->body);
    }
    case LinRule::Linl2: {
      auto* n = std::get_if<scpp::Inl>(&d->process->node);
      return n && d->premises.size() == 1 && !(n->x == z) &&
             premise_matches_subject(d->premises[0], z, n->body);
    }
    case LinRule::Linr: {
      auto* n = std::get_if<scpp::Inr>(&d->process->node);
      return n && d->premises.size() == 1 && n->x == z && !n->body->free.count(z) &&
             premise_matches(d->premises[0], n->w, n->body);
    }
    case LinRule::Linr2: {
      auto* n = std::get_if<scpp::Inr>(&d->process->node);
      return n && d->premises.size() == 1 && !(n->x == z) &&
             premise_matches_subject(d->premises[0], z, n->body);
    }
    case LinRule::Lcase: {
      auto* n = std::get_if<scpp::Case>(&d->process->node);
      return n && d->premises.size() == 2 && n->x == z && !n->left->free.count(z) &&
             !n->right->free.count(z) && premise_matches(d->premises[0], n->w, n->left) &&
             premise_matches(d->premises[1], n->w2, n->right);
    }
    case LinRule::Lcase2: {
      auto* n = std::get_if<scpp::Case>(&d->process->node);
      return n && d->premises.size() == 2 && !(n->x == z) &&
             premise_matches_subject(d->premises[0], z, n->left) &&
             premise_matches_subject(d->premises[1], z, n->right);
    }
    case LinRule::Lpcomp1: {
      auto* n = std::get_if<scpp::Cut>(&d->process->node);
      return n && d->premises.size() == 1 && !(n->x == z) && !n->right->free.count(z) &&
             premise_matches_subject(d->premises[0], z, n->left);
    }
    case LinRule::Lpcomp2: {
      auto* n = std::get_if<scpp::Cut>(&d->process->node);
      return n && d->premises.size() == 1 && !(n->x == z) && !n->left->free.count(z) &&
             premise_matches_subject(d->premises[0], z, n->right);
    }
  }
  return false;
}

LinDerivRef rename_lin(const LinDerivRef& d, const Name& from, const Name& to) {
  if (!d) return d;
  std::vector<LinDerivRef> ps;
  ps.reserve(d->premises.size());
  for (const auto& q : d->premises) ps.push_back(rename_lin(q, from, to));
  return make_lin(d->rule, d->subject == from ? to : d->subject, rename(d->process, from, to),
                  std::move(ps));
}

}  // namespace scp
