#include "scpkit/translate.hpp"

namespace scp {

namespace {
template <class... Ts>
struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

// ------------------------------------------------------------------ epsilon

ScpRef encode(const CpRef& p) {
  return std::visit(
      overloaded{
          [&](const cp::Fwd& n) { return ScpProc::fwd(n.x, n.y); },
          [&](const cp::Close& n) { return ScpProc::close(n.x); },
          [&](const cp::Wait& n) { return ScpProc::wait(n.x, encode(n.body)); },
          [&](const cp::Cut& n) {
            return ScpProc::cut(n.x, n.ann, encode(n.left), encode(n.right));
          },
          [&](const cp::Out& n) {
            ScpRef pay = encode(n.payload);
            ScpRef cont = encode(n.cont);
            NameSet avoid = set_union(pay->free, cont->free);
            avoid.insert(n.x);
            avoid.insert(n.y);
            Name w = fresh(avoid, n.x.base);
            return ScpProc::out(n.x, n.y, pay, w, rename(cont, n.x, w));
          },
          [&](const cp::Inp& n) {
            ScpRef body = encode(n.body);
            NameSet avoid = body->free;
            avoid.insert(n.x);
            avoid.insert(n.y);
            Name w = fresh(avoid, n.x.base);
            return ScpProc::inp(n.x, w, n.y, rename(body, n.x, w));
          },
          [&](const cp::Inl& n) {
            ScpRef body = encode(n.body);
            NameSet avoid = body->free;
            avoid.insert(n.x);
            Name w = fresh(avoid, n.x.base);
            return ScpProc::inl(n.x, w, rename(body, n.x, w));
          },
          [&](const cp::Inr& n) {
            ScpRef body = encode(n.body);
            NameSet avoid = body->free;
            avoid.insert(n.x);
            Name w = fresh(avoid, n.x.base);
            return ScpProc::inr(n.x, w, rename(body, n.x, w));
          },
          [&](const cp::Case& n) {
            ScpRef l = encode(n.left);
            ScpRef r = encode(n.right);
            NameSet al = l->free;
            al.insert(n.x);
            Name wl = fresh(al, n.x.base);
            NameSet ar = r->free;
            ar.insert(n.x);
            Name wr = fresh(ar, n.x.base);
            return ScpProc::case_(n.x, wl, rename(l, n.x, wl), wr, rename(r, n.x, wr));
          },
      },
      p->node);
}

// -------------------------------------------------------------------- delta

CpRef decode(const ScpRef& p) {
  return std::visit(
      overloaded{
          [&](const scpp::Fwd& n) { return CpProc::fwd(n.x, n.y); },
          [&](const scpp::Close& n) { return CpProc::close(n.x); },
          [&](const scpp::Wait& n) { return CpProc::wait(n.x, decode(n.body)); },
          [&](const scpp::Cut& n) {
            return CpProc::cut(n.x, n.ann, decode(n.left), decode(n.right));
          },
          [&](const scpp::Out& n) {
            return CpProc::out(n.x, n.y, decode(n.payload), rename(decode(n.cont), n.w, n.x));
          },
          [&](const scpp::Inp& n) {
            return CpProc::inp(n.x, n.y, rename(decode(n.body), n.w, n.x));
          },
          [&](const scpp::Inl& n) {
            return CpProc::inl(n.x, rename(decode(n.body), n.w, n.x));
          },
          [&](const scpp::Inr& n) {
            return CpProc::inr(n.x, rename(decode(n.body), n.w, n.x));
          },
          [&](const scpp::Case& n) {
            return CpProc::case_(n.x, rename(decode(n.left), n.w, n.x),
                                 rename(decode(n.right), n.w2, n.x));
          },
      },
      p->node);
}

// --------------------------------------------------- epsilon on derivations

namespace {

struct EncState {
  NameSet used;
  Name fresh_binder(const std::string& base) {
    Name n = fresh(used, base);
    used.insert(n);
    return n;
  }
};

std::optional<ScpDerivRef> weaken_all(ScpDerivRef d,
                                      const std::vector<TypingContext::Entry>& entries) {
  for (const auto& [n, t] : entries) {
    auto w = weaken(d, n, t);
    if (!w) return std::nullopt;
    d = *w;
  }
  return d;
}

std::map<Name, LinDerivRef> rename_lins(const std::map<Name, LinDerivRef>& lins, const Name& from,
                                        const Name& to) {
  std::map<Name, LinDerivRef> out;
  for (const auto& [z, l] : lins)
    out.emplace(z == from ? to : z, rename_lin(l, from, to));
  return out;
}

std::optional<EncodedDerivation> enc_rec(const CpDerivRef& d, EncState& st);

std::optional<EncodedDerivation> enc_rec(const CpDerivRef& d, EncState& st) {
  using R = std::optional<EncodedDerivation>;
  const TypingContext& ctx = d->context;
  return std::visit(
      overloaded{
          [&](const cp::Fwd& n) -> R {
            ScpRef proc = ScpProc::fwd(n.x, n.y);
            EncodedDerivation out;
            out.deriv = make_scp_deriv(ScpRule::Sid, ctx, proc);
            out.lins.emplace(n.x, make_lin(LinRule::Lfwd1, n.x, proc));
            out.lins.emplace(n.y, make_lin(LinRule::Lfwd2, n.y, proc));
            return out;
          },
          [&](const cp::Close& n) -> R {
            ScpRef proc = ScpProc::close(n.x);
            EncodedDerivation out;
            out.deriv = make_scp_deriv(ScpRule::Sone, ctx, proc);
            out.lins.emplace(n.x, make_lin(LinRule::Lclose, n.x, proc));
            return out;
          },
          [&](const cp::Wait& n) -> R {
            auto e = enc_rec(d->premises[0], st);
            if (!e) return std::nullopt;
            auto w = weaken_all(e->deriv, {{n.x, SessionType::bot()}});
            if (!w) return std::nullopt;
            ScpRef proc = ScpProc::wait(n.x, e->deriv->process);
            EncodedDerivation out;
            out.deriv = make_scp_deriv(ScpRule::Sbot, ctx, proc, {*w});
            out.lins.emplace(n.x, make_lin(LinRule::Lwait, n.x, proc));
            for (const auto& [z, l] : e->lins)
              out.lins.emplace(z, make_lin(LinRule::Lwait2, z, proc, {l}));
            return out;
          },
          [&](const cp::Cut& n) -> R {
            auto e1 = enc_rec(d->premises[0], st);
            auto e2 = enc_rec(d->premises[1], st);
            if (!e1 || !e2) return std::nullopt;
            TypingContext d1 = d->premises[0]->context.without(n.x);
            TypingContext d2 = d->premises[1]->context.without(n.x);
            auto w1 = weaken_all(e1->deriv, d2.entries());
            auto w2 = weaken_all(e2->deriv, d1.entries());
            if (!w1 || !w2) return std::nullopt;
            ScpRef proc = ScpProc::cut(n.x, n.ann, e1->deriv->process, e2->deriv->process);
            EncodedDerivation out;
            out.deriv = make_scp_deriv(ScpRule::Scut, ctx, proc, {*w1, *w2},
                                       {e1->lins.at(n.x), e2->lins.at(n.x)});
            for (const auto& [z, t] : d1.entries())
              out.lins.emplace(z, make_lin(LinRule::Lpcomp1, z, proc, {e1->lins.at(z)}));
            for (const auto& [z, t] : d2.entries())
              out.lins.emplace(z, make_lin(LinRule::Lpcomp2, z, proc, {e2->lins.at(z)}));
            return out;
          },
          [&](const cp::Out& n) -> R {
            auto e1 = enc_rec(d->premises[0], st);
            auto e2 = enc_rec(d->premises[1], st);
            if (!e1 || !e2) return std::nullopt;
            auto tensor = ctx.lookup(n.x);
            if (!tensor) return std::nullopt;
            Name w = st.fresh_binder(n.x.base);
            ScpDerivRef s2 = rename_scp_deriv(e2->deriv, n.x, w);
            auto lins2 = rename_lins(e2->lins, n.x, w);
            TypingContext d1 = d->premises[0]->context.without(n.y);
            TypingContext d2 = d->premises[1]->context.without(n.x);
            auto e1entries = d2.entries();
            e1entries.emplace_back(n.x, *tensor);
            auto w1 = weaken_all(e1->deriv, e1entries);
            auto e2entries = d1.entries();
            e2entries.emplace_back(n.x, *tensor);
            auto w2 = weaken_all(s2, e2entries);
            if (!w1 || !w2) return std::nullopt;
            ScpRef proc = ScpProc::out(n.x, n.y, e1->deriv->process, w, s2->process);
            EncodedDerivation out;
            out.deriv = make_scp_deriv(ScpRule::Stensor, ctx, proc, {*w1, *w2},
                                       {e1->lins.at(n.y)});
            out.lins.emplace(n.x, make_lin(LinRule::Lout, n.x, proc, {lins2.at(w)}));
            for (const auto& [z, t] : d1.entries())
              out.lins.emplace(z, make_lin(LinRule::Lout2, z, proc, {e1->lins.at(z)}));
            for (const auto& [z, t] : d2.entries())
              out.lins.emplace(z, make_lin(LinRule::Lout3, z, proc, {lins2.at(z)}));
            return out;
          },
          [&](const cp::Inp& n) -> R {
            auto e1 = enc_rec(d->premises[0], st);
            if (!e1) return std::nullopt;
            auto par = ctx.lookup(n.x);
            if (!par) return std::nullopt;
            Name w = st.fresh_binder(n.x.base);
            ScpDerivRef s1 = rename_scp_deriv(e1->deriv, n.x, w);
            auto lins1 = rename_lins(e1->lins, n.x, w);
            auto w1 = weaken_all(s1, {{n.x, *par}});
            if (!w1) return std::nullopt;
            ScpRef proc = ScpProc::inp(n.x, w, n.y, s1->process);
            EncodedDerivation out;
            out.deriv = make_scp_deriv(ScpRule::Spar, ctx, proc, {*w1}, {lins1.at(n.y)});
            out.lins.emplace(n.x, make_lin(LinRule::Linp, n.x, proc, {lins1.at(w)}));
            TypingContext rest = ctx.without(n.x);
            for (const auto& [z, t] : rest.entries())
              out.lins.emplace(z, make_lin(LinRule::Linp2, z, proc, {lins1.at(z)}));
            return out;
          },
          [&](const cp::Inl& n) -> R {
            auto e1 = enc_rec(d->premises[0], st);
            if (!e1) return std::nullopt;
            auto plus = ctx.lookup(n.x);
            if (!plus) return std::nullopt;
            Name w = st.fresh_binder(n.x.base);
            ScpDerivRef s1 = rename_scp_deriv(e1->deriv, n.x, w);
            auto lins1 = rename_lins(e1->lins, n.x, w);
            auto w1 = weaken_all(s1, {{n.x, *plus}});
            if (!w1) return std::nullopt;
            ScpRef proc = ScpProc::inl(n.x, w, s1->process);
            EncodedDerivation out;
            out.deriv = make_scp_deriv(ScpRule::Splus1, ctx, proc, {*w1});
            out.lins.emplace(n.x, make_lin(LinRule::Linl, n.x, proc, {lins1.at(w)}));
            TypingContext rest = ctx.without(n.x);
            for (const auto& [z, t] : rest.entries())
              out.lins.emplace(z, make_lin(LinRule::Linl2, z, proc, {lins1.at(z)}));
            return out;
          },
          [&](const cp::Inr& n) -> R {
            auto e1 = enc_rec(d->premises[0], st);
            if (!e1) return std::nullopt;
            auto plus = ctx.lookup(n.x);
            if (!plus) return std::nullopt;
            Name w = st.fresh_binder(n.x.base);
            ScpDerivRef s1 = rename_scp_deriv(e1->deriv, n.x, w);
            auto lins1 = rename_lins(e1->lins, n.x, w);
            auto w1 = weaken_all(s1, {{n.x, *plus}});
            if (!w1) return std::nullopt;
            ScpRef proc = ScpProc::inr(n.x, w, s1->process);
            EncodedDerivation out;
            out.deriv = make_scp_deriv(ScpRule::Splus2, ctx, proc, {*w1});
            out.lins.emplace(n.x, make_lin(LinRule::Linr, n.x, proc, {lins1.at(w)}));
            TypingContext rest = ctx.without(n.x);
            for (const auto& [z, t] : rest.entries())
              out.lins.emplace(z, make_lin(LinRule::Linr2, z, proc, {lins1.at(z)}));
            return out;
          },
          [&](const cp::Case& n) -> R {
            auto e1 = enc_rec(d->premises[0], st);
            auto e2 = enc_rec(d->premises[1], st);
            if (!e1 || !e2) return std::nullopt;
            auto with = ctx.lookup(n.x);
            if (!with) return std::nullopt;
            Name wl = st.fresh_binder(n.x.base);
            Name wr = st.fresh_binder(n.x.base);
            ScpDerivRef s1 = rename_scp_deriv(e1->deriv, n.x, wl);
            ScpDerivRef s2 = rename_scp_deriv(e2->deriv, n.x, wr);
            auto lins1 = rename_lins(e1->lins, n.x, wl);
            auto lins2 = rename_lins(e2->lins, n.x, wr);
            auto w1 = weaken_all(s1, {{n.x, *with}});
            auto w2 = weaken_all(s2, {{n.x, *with}});
            if (!w1 || !w2) return std::nullopt;
            ScpRef proc = ScpProc::case_(n.x, wl, s1->process, wr, s2->process);
            EncodedDerivation out;
            out.deriv = make_scp_deriv(ScpRule::Swith, ctx, proc, {*w1, *w2});
            out.lins.emplace(n.x,
                             make_lin(LinRule::Lcase, n.x, proc, {lins1.at(wl), lins2.at(wr)}));
            TypingContext rest = ctx.without(n.x);
            for (const auto& [z, t] : rest.entries())
              out.lins.emplace(
                  z, make_lin(LinRule::Lcase2, z, proc, {lins1.at(z), lins2.at(z)}));
            return out;
          },
      },
      d->process->node);
}

}  // namespace

std::optional<EncodedDerivation> encode_derivation(const CpDerivRef& d) {
  if (!validate_cp(d)) return std::nullopt;
  // re-derive to guarantee hygienic binders (alpha-equal, same skeleton)
  auto fresh_d = cp_check(d->context, d->process);
  if (!fresh_d) return std::nullopt;
  EncState st;
  st.used = (*fresh_d)->context.domain();
  st.used = set_union(st.used, (*fresh_d)->process->free);
  NameSet binders;
  // binder names of the freshened process are already distinct from the
  // context, but the encoder's fresh continuation binders must avoid them too
  std::function<void(const CpRef&)> walk = [&](const CpRef& p) {
    std::visit(overloaded{
                   [&](const cp::Cut& n) {
                     binders.insert(n.x);
                     walk(n.left);
                     walk(n.right);
                   },
                   [&](const cp::Out& n) {
                     binders.insert(n.y);
                     walk(n.payload);
                     walk(n.cont);
                   },
                   [&](const cp::Inp& n) {
                     binders.insert(n.y);
                     walk(n.body);
                   },
                   [&](const cp::Inl& n) { walk(n.body); },
                   [&](const cp::Inr& n) { walk(n.body); },
                   [&](const cp::Case& n) {
                     walk(n.left);
                     walk(n.right);
                   },
                   [&](const cp::Wait& n) { walk(n.body); },
                   [&](const auto&) {},
               },
               p->node);
  };
  walk((*fresh_d)->process);
  st.used = set_union(st.used, binders);
  return enc_rec(*fresh_d, st);
}

// ----------------------------------------------------- delta on derivations

namespace {

// Normalizes a provided witness to the expected subject/process, renaming its
// binder instantiation if needed. Returns nullptr when it cannot match.
LinDerivRef retarget_lin(const LinDerivRef& l, const Name& subject, const ScpRef& process) {
  if (!l) return nullptr;
  LinDerivRef cand = l;
  if (!(l->subject == subject)) {
    if (process->free.count(l->subject)) return nullptr;
    cand = rename_lin(l, l->subject, subject);
  }
  if (!alpha_eq(cand->process, process)) return nullptr;
  return cand;
}

std::optional<CpDerivRef> dec_rec(const ScpDerivRef& d,
                                  const std::map<Name, LinDerivRef>& lins);

// Looks up and retargets the witness for z; nullopt-like failure as nullptr.
LinDerivRef witness(const std::map<Name, LinDerivRef>& lins, const Name& z, const ScpRef& proc) {
  auto it = lins.find(z);
  if (it == lins.end()) return nullptr;
  return retarget_lin(it->second, z, proc);
}

std::optional<CpDerivRef> dec_rec(const ScpDerivRef& d,
                                  const std::map<Name, LinDerivRef>& lins) {
  using R = std::optional<CpDerivRef>;
  const ScpRef& proc = d->process;
  const NameSet& fn = proc->free;

  // witnesses must cover exactly fn(P)
  if (lins.size() != fn.size()) return std::nullopt;
  std::map<Name, LinDerivRef> anchored;
  for (const auto& z : fn) {
    LinDerivRef l = witness(lins, z, proc);
    if (!l || !validate_lin(l)) return std::nullopt;
    if (!strict_eq(l->process, proc)) {
      // an alpha-variant witness: re-anchor it to this term's own binders
      // (syntax-directedness guarantees the same rule skeleton)
      auto re = lin_check(z, proc);
      if (!re || (*re)->rule != l->rule) return std::nullopt;
      l = *re;
    }
    anchored.emplace(z, l);
  }

  TypingContext delta = d->context.restricted(fn);
  if (delta.size() != fn.size()) return std::nullopt;

  return std::visit(
      overloaded{
          [&](const scpp::Fwd& n) -> R {
            if (anchored.at(n.x)->rule != LinRule::Lfwd1 ||
                anchored.at(n.y)->rule != LinRule::Lfwd2)
              return std::nullopt;
            return make_cp_deriv(CpRule::Cid, delta, CpProc::fwd(n.x, n.y));
          },
          [&](const scpp::Close& n) -> R {
            if (anchored.at(n.x)->rule != LinRule::Lclose) return std::nullopt;
            return make_cp_deriv(CpRule::Cone, delta, CpProc::close(n.x));
          },
          [&](const scpp::Wait& n) -> R {
            if (anchored.at(n.x)->rule != LinRule::Lwait) return std::nullopt;
            std::map<Name, LinDerivRef> sub;
            for (const auto& [z, l] : anchored) {
              if (z == n.x) continue;
              if (l->rule != LinRule::Lwait2) return std::nullopt;
              sub.emplace(z, l->premises[0]);
            }
            auto body = dec_rec(d->premises[0], sub);
            if (!body) return std::nullopt;
            return make_cp_deriv(CpRule::Cbot, delta,
                                 CpProc::wait(n.x, (*body)->process), {*body});
          },
          [&](const scpp::Cut& n) -> R {
            // split recovered from Lpcomp1 vs Lpcomp2
            std::map<Name, LinDerivRef> left_lins, right_lins;
            for (const auto& [z, l] : anchored) {
              if (l->rule == LinRule::Lpcomp1)
                left_lins.emplace(z, l->premises[0]);
              else if (l->rule == LinRule::Lpcomp2)
                right_lins.emplace(z, l->premises[0]);
              else
                return std::nullopt;
            }
            left_lins.emplace(n.x, d->lin_premises[0]);
            right_lins.emplace(n.x, d->lin_premises[1]);
            auto dl = dec_rec(d->premises[0], left_lins);
            if (!dl) return std::nullopt;
            auto dr = dec_rec(d->premises[1], right_lins);
            if (!dr) return std::nullopt;
            return make_cp_deriv(
                CpRule::Ccut, delta,
                CpProc::cut(n.x, n.ann, (*dl)->process, (*dr)->process), {*dl, *dr});
          },
          [&](const scpp::Out& n) -> R {
            if (anchored.at(n.x)->rule != LinRule::Lout) return std::nullopt;
            std::map<Name, LinDerivRef> pay_lins, cont_lins;
            for (const auto& [z, l] : anchored) {
              if (z == n.x) continue;
              if (l->rule == LinRule::Lout2)
                pay_lins.emplace(z, l->premises[0]);
              else if (l->rule == LinRule::Lout3)
                cont_lins.emplace(z, l->premises[0]);
              else
                return std::nullopt;
            }
            pay_lins.emplace(n.y, d->lin_premises[0]);
            cont_lins.emplace(n.w, anchored.at(n.x)->premises[0]);
            auto dp = dec_rec(d->premises[0], pay_lins);
            if (!dp) return std::nullopt;
            auto dq = dec_rec(d->premises[1], cont_lins);
            if (!dq) return std::nullopt;
            // rename the continuation channel back to the principal one
            if ((*dq)->process->free.count(n.x) || (*dq)->context.contains(n.x))
              return std::nullopt;
            CpDerivRef dq_x = rename_cp_deriv(*dq, n.w, n.x);
            return make_cp_deriv(
                CpRule::Ctensor, delta,
                CpProc::out(n.x, n.y, (*dp)->process, dq_x->process), {*dp, dq_x});
          },
          [&](const scpp::Inp& n) -> R {
            if (anchored.at(n.x)->rule != LinRule::Linp) return std::nullopt;
            std::map<Name, LinDerivRef> body_lins;
            for (const auto& [z, l] : anchored) {
              if (z == n.x) continue;
              if (l->rule != LinRule::Linp2) return std::nullopt;
              body_lins.emplace(z, l->premises[0]);
            }
            body_lins.emplace(n.y, d->lin_premises[0]);
            body_lins.emplace(n.w, anchored.at(n.x)->premises[0]);
            auto db = dec_rec(d->premises[0], body_lins);
            if (!db) return std::nullopt;
            if ((*db)->process->free.count(n.x) || (*db)->context.contains(n.x))
              return std::nullopt;
            CpDerivRef db_x = rename_cp_deriv(*db, n.w, n.x);
            return make_cp_deriv(CpRule::Cpar, delta, CpProc::inp(n.x, n.y, db_x->process),
                                 {db_x});
          },
          [&](const scpp::Inl& n) -> R {
            if (anchored.at(n.x)->rule != LinRule::Linl) return std::nullopt;
            std::map<Name, LinDerivRef> body_lins;
            for (const auto& [z, l] : anchored) {
              if (z == n.x) continue;
              if (l->rule != LinRule::Linl2) return std::nullopt;
              body_lins.emplace(z, l->premises[0]);
            }
            body_lins.emplace(n.w, anchored.at(n.x)->premises[0]);
            auto db = dec_rec(d->premises[0], body_lins);
            if (!db) return std::nullopt;
            if ((*db)->process->free.count(n.x) || (*db)->context.contains(n.x))
              return std::nullopt;
            CpDerivRef db_x = rename_cp_deriv(*db, n.w, n.x);
            return make_cp_deriv(CpRule::Cplus1, delta, CpProc::inl(n.x, db_x->process), {db_x});
          },
          [&](const scpp::Inr& n) -> R {
            if (anchored.at(n.x)->rule != LinRule::Linr) return std::nullopt;
            std::map<Name, LinDerivRef> body_lins;
            for (const auto& [z, l] : anchored) {
              if (z == n.x) continue;
              if (l->rule != LinRule::Linr2) return std::nullopt;
              body_lins.emplace(z, l->premises[0]);
            }
            body_lins.emplace(n.w, anchored.at(n.x)->premises[0]);
            auto db = dec_rec(d->premises[0], body_lins);
            if (!db) return std::nullopt;
            if ((*db)->process->free.count(n.x) || (*db)->context.contains(n.x))
              return std::nullopt;
            CpDerivRef db_x = rename_cp_deriv(*db, n.w, n.x);
            return make_cp_deriv(CpRule::Cplus2, delta, CpProc::inr(n.x, db_x->process), {db_x});
          },
          [&](const scpp::Case& n) -> R {
            if (anchored.at(n.x)->rule != LinRule::Lcase) return std::nullopt;
            std::map<Name, LinDerivRef> l_lins, r_lins;
            for (const auto& [z, l] : anchored) {
              if (z == n.x) continue;
              if (l->rule != LinRule::Lcase2) return std::nullopt;
              l_lins.emplace(z, l->premises[0]);
              r_lins.emplace(z, l->premises[1]);
            }
            l_lins.emplace(n.w, anchored.at(n.x)->premises[0]);
            r_lins.emplace(n.w2, anchored.at(n.x)->premises[1]);
            auto dl = dec_rec(d->premises[0], l_lins);
            if (!dl) return std::nullopt;
            auto dr = dec_rec(d->premises[1], r_lins);
            if (!dr) return std::nullopt;
            if ((*dl)->process->free.count(n.x) || (*dr)->process->free.count(n.x))
              return std::nullopt;
            CpDerivRef dl_x = rename_cp_deriv(*dl, n.w, n.x);
            CpDerivRef dr_x = rename_cp_deriv(*dr, n.w2, n.x);
            // branch contexts agree except at the case channel itself
            if (!dl_x->context.without(n.x).same_as(dr_x->context.without(n.x)))
              return std::nullopt;
            return make_cp_deriv(CpRule::Cwith, delta,
                                 CpProc::case_(n.x, dl_x->process, dr_x->process),
                                 {dl_x, dr_x});
          },
      },
      proc->node);
}

}  // namespace

std::optional<CpDerivRef> decode_derivation(const ScpDerivRef& d,
                                            const std::map<Name, LinDerivRef>& lins) {
  if (!validate_scp(d)) return std::nullopt;
  auto out = dec_rec(d, lins);
  if (!out || !validate_cp(*out)) return std::nullopt;
  return out;
}

}  // namespace scp
