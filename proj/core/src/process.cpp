#include "scpkit/process.hpp"

#include <map>
#include <optional>
#include <sstream>

namespace scp {

namespace {

template <class... Ts>
struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

NameSet minus(NameSet s, const Name& a) {
  s.erase(a);
  return s;
}
NameSet minus(NameSet s, const Name& a, const Name& b) {
  s.erase(a);
  s.erase(b);
  return s;
}

void type_key(const SessionType& t, std::string& out) {
  switch (t.tag()) {
    case TypeTag::One: out += '1'; return;
    case TypeTag::Bot: out += 'b'; return;
    case TypeTag::Tensor: out += 't'; break;
    case TypeTag::Par: out += 'p'; break;
    case TypeTag::Plus: out += '+'; break;
    case TypeTag::With: out += '&'; break;
  }
  out += '(';
  type_key(t.left(), out);
  out += ',';
  type_key(t.right(), out);
  out += ')';
}

}  // namespace

// ----------------------------------------------------------------- CP build

CpRef CpProc::fwd(Name x, Name y) {
  NameSet f{x, y};
  return std::make_shared<CpProc>(cp::Fwd{std::move(x), std::move(y)}, std::move(f));
}

CpRef CpProc::close(Name x) {
  NameSet f{x};
  return std::make_shared<CpProc>(cp::Close{std::move(x)}, std::move(f));
}

CpRef CpProc::wait(Name x, CpRef body) {
  NameSet f = body->free;
  f.insert(x);
  return std::make_shared<CpProc>(cp::Wait{std::move(x), std::move(body)}, std::move(f));
}

CpRef CpProc::cut(Name x, SessionType ann, CpRef left, CpRef right) {
  NameSet f = minus(set_union(left->free, right->free), x);
  return std::make_shared<CpProc>(
      cp::Cut{std::move(x), std::move(ann), std::move(left), std::move(right)}, std::move(f));
}

CpRef CpProc::out(Name x, Name y, CpRef payload, CpRef cont) {
  if (y == x || cont->free.count(y)) {
    NameSet avoid = set_union(payload->free, cont->free);
    avoid.insert(x);
    avoid.insert(y);
    Name y2 = fresh(avoid, y.base);
    payload = rename(payload, y, y2);
    y = y2;
  }
  NameSet f = minus(payload->free, y);
  f.insert(x);
  f = set_union(f, cont->free);
  return std::make_shared<CpProc>(
      cp::Out{std::move(x), std::move(y), std::move(payload), std::move(cont)}, std::move(f));
}

CpRef CpProc::inp(Name x, Name y, CpRef body) {
  if (y == x) {
    NameSet avoid = body->free;
    avoid.insert(x);
    Name y2 = fresh(avoid, y.base);
    body = rename(body, y, y2);
    y = y2;
  }
  NameSet f = minus(body->free, y);
  f.insert(x);
  return std::make_shared<CpProc>(cp::Inp{std::move(x), std::move(y), std::move(body)},
                                  std::move(f));
}

CpRef CpProc::inl(Name x, CpRef body) {
  NameSet f = body->free;
  f.insert(x);
  return std::make_shared<CpProc>(cp::Inl{std::move(x), std::move(body)}, std::move(f));
}

CpRef CpProc::inr(Name x, CpRef body) {
  NameSet f = body->free;
  f.insert(x);
  return std::make_shared<CpProc>(cp::Inr{std::move(x), std::move(body)}, std::move(f));
}

CpRef CpProc::case_(Name x, CpRef left, CpRef right) {
  NameSet f = set_union(left->free, right->free);
  f.insert(x);
  return std::make_shared<CpProc>(cp::Case{std::move(x), std::move(left), std::move(right)},
                                  std::move(f));
}

// ---------------------------------------------------------------- SCP build

ScpRef ScpProc::fwd(Name x, Name y) {
  NameSet f{x, y};
  return std::make_shared<ScpProc>(scpp::Fwd{std::move(x), std::move(y)}, std::move(f));
}

ScpRef ScpProc::close(Name x) {
  NameSet f{x};
  return std::make_shared<ScpProc>(scpp::Close{std::move(x)}, std::move(f));
}

ScpRef ScpProc::wait(Name x, ScpRef body) {
  NameSet f = body->free;
  f.insert(x);
  return std::make_shared<ScpProc>(scpp::Wait{std::move(x), std::move(body)}, std::move(f));
}

ScpRef ScpProc::cut(Name x, SessionType ann, ScpRef left, ScpRef right) {
  NameSet f = minus(set_union(left->free, right->free), x);
  return std::make_shared<ScpProc>(
      scpp::Cut{std::move(x), std::move(ann), std::move(left), std::move(right)}, std::move(f));
}

ScpRef ScpProc::out(Name x, Name y, ScpRef payload, Name w, ScpRef cont) {
  {
    NameSet avoid = minus(cont->free, w);
    avoid.insert(x);
    avoid.insert(w);
    if (avoid.count(y)) {
      NameSet a2 = set_union(avoid, payload->free);
      a2.insert(y);
      Name y2 = fresh(a2, y.base);
      payload = rename(payload, y, y2);
      y = y2;
    }
  }
  {
    NameSet avoid = minus(payload->free, y);
    avoid.insert(x);
    avoid.insert(y);
    if (avoid.count(w)) {
      NameSet a2 = set_union(avoid, cont->free);
      a2.insert(w);
      Name w2 = fresh(a2, w.base);
      cont = rename(cont, w, w2);
      w = w2;
    }
  }
  NameSet f = minus(payload->free, y);
  f.insert(x);
  f = set_union(f, minus(cont->free, w));
  return std::make_shared<ScpProc>(
      scpp::Out{std::move(x), std::move(y), std::move(payload), std::move(w), std::move(cont)},
      std::move(f));
}

ScpRef ScpProc::inp(Name x, Name w, Name y, ScpRef body) {
  if (w == x) {
    NameSet avoid = body->free;
    avoid.insert(x);
    avoid.insert(y);
    Name w2 = fresh(avoid, w.base);
    body = rename(body, w, w2);
    w = w2;
  }
  if (y == x || y == w) {
    NameSet avoid = body->free;
    avoid.insert(x);
    avoid.insert(w);
    Name y2 = fresh(avoid, y.base);
    body = rename(body, y, y2);
    y = y2;
  }
  NameSet f = minus(body->free, w, y);
  f.insert(x);
  return std::make_shared<ScpProc>(
      scpp::Inp{std::move(x), std::move(w), std::move(y), std::move(body)}, std::move(f));
}

namespace {
// Shared helper for inl/inr: refresh w when it collides with the subject.
std::pair<Name, ScpRef> guard_cont_binder(const Name& x, Name w, ScpRef body) {
  if (w == x) {
    NameSet avoid = body->free;
    avoid.insert(x);
    Name w2 = fresh(avoid, w.base);
    body = rename(body, w, w2);
    w = w2;
  }
  return {std::move(w), std::move(body)};
}
}  // namespace

ScpRef ScpProc::inl(Name x, Name w, ScpRef body) {
  auto [w2, b2] = guard_cont_binder(x, std::move(w), std::move(body));
  NameSet f = minus(b2->free, w2);
  f.insert(x);
  return std::make_shared<ScpProc>(scpp::Inl{std::move(x), std::move(w2), std::move(b2)},
                                   std::move(f));
}

ScpRef ScpProc::inr(Name x, Name w, ScpRef body) {
  auto [w2, b2] = guard_cont_binder(x, std::move(w), std::move(body));
  NameSet f = minus(b2->free, w2);
  f.insert(x);
  return std::make_shared<ScpProc>(scpp::Inr{std::move(x), std::move(w2), std::move(b2)},
                                   std::move(f));
}

ScpRef ScpProc::case_(Name x, Name w, ScpRef left, Name w2, ScpRef right) {
  auto [wl, l2] = guard_cont_binder(x, std::move(w), std::move(left));
  auto [wr, r2] = guard_cont_binder(x, std::move(w2), std::move(right));
  NameSet f = set_union(minus(l2->free, wl), minus(r2->free, wr));
  f.insert(x);
  return std::make_shared<ScpProc>(
      scpp::Case{std::move(x), std::move(wl), std::move(l2), std::move(wr), std::move(r2)},
      std::move(f));
}

const NameSet& free_names(const CpRef& p) { return p->free; }
const NameSet& free_names(const ScpRef& p) { return p->free; }

// -------------------------------------------------------------------- rename

namespace {

// Renames within one binder scope: a shadowing binder stops the substitution,
// and a binder equal to `to` is refreshed before renaming to avoid capture.
template <typename Ref>
std::pair<Name, Ref> rename_scoped(Name b, Ref s, const Name& from, const Name& to) {
  if (b == from) return {std::move(b), std::move(s)};
  if (b == to && s->free.count(from)) {
    NameSet avoid = s->free;
    avoid.insert(from);
    avoid.insert(to);
    Name b2 = fresh(avoid, b.base);
    s = rename(s, b, b2);
    b = b2;
  }
  return {std::move(b), rename(s, from, to)};
}

Name subst(const Name& n, const Name& from, const Name& to) { return n == from ? to : n; }

}  // namespace

CpRef rename(const CpRef& p, const Name& from, const Name& to) {
  if (from == to || !p->free.count(from)) return p;
  return std::visit(
      overloaded{
          [&](const cp::Fwd& n) { return CpProc::fwd(subst(n.x, from, to), subst(n.y, from, to)); },
          [&](const cp::Cut& n) {
            // the binder scopes both branches (n.x != from since from is free)
            Name b = n.x;
            CpRef l = n.left, r = n.right;
            if (b == to && (l->free.count(from) || r->free.count(from))) {
              NameSet avoid = set_union(l->free, r->free);
              avoid.insert(from);
              avoid.insert(to);
              Name b2 = fresh(avoid, b.base);
              l = rename(l, b, b2);
              r = rename(r, b, b2);
              b = b2;
            }
            return CpProc::cut(b, n.ann, rename(l, from, to), rename(r, from, to));
          },
          [&](const cp::Out& n) {
            auto [y, pay] = rename_scoped(n.y, n.payload, from, to);
            return CpProc::out(subst(n.x, from, to), y, pay, rename(n.cont, from, to));
          },
          [&](const cp::Inp& n) {
            auto [y, body] = rename_scoped(n.y, n.body, from, to);
            return CpProc::inp(subst(n.x, from, to), y, body);
          },
          [&](const cp::Inl& n) { return CpProc::inl(subst(n.x, from, to), rename(n.body, from, to)); },
          [&](const cp::Inr& n) { return CpProc::inr(subst(n.x, from, to), rename(n.body, from, to)); },
          [&](const cp::Case& n) {
            return CpProc::case_(subst(n.x, from, to), rename(n.left, from, to),
                                 rename(n.right, from, to));
          },
          [&](const cp::Close& n) { return CpProc::close(subst(n.x, from, to)); },
          [&](const cp::Wait& n) {
            return CpProc::wait(subst(n.x, from, to), rename(n.body, from, to));
          },
      },
      p->node);
}

ScpRef rename(const ScpRef& p, const Name& from, const Name& to) {
  if (from == to || !p->free.count(from)) return p;
  return std::visit(
      overloaded{
          [&](const scpp::Fwd& n) {
            return ScpProc::fwd(subst(n.x, from, to), subst(n.y, from, to));
          },
          [&](const scpp::Cut& n) {
            Name b = n.x;
            ScpRef l = n.left, r = n.right;
            if (b == to && (l->free.count(from) || r->free.count(from))) {
              NameSet avoid = set_union(l->free, r->free);
              avoid.insert(from);
              avoid.insert(to);
              Name b2 = fresh(avoid, b.base);
              l = rename(l, b, b2);
              r = rename(r, b, b2);
              b = b2;
            }
            return ScpProc::cut(b, n.ann, rename(l, from, to), rename(r, from, to));
          },
          [&](const scpp::Out& n) {
            auto [y, pay] = rename_scoped(n.y, n.payload, from, to);
            auto [w, cont] = rename_scoped(n.w, n.cont, from, to);
            return ScpProc::out(subst(n.x, from, to), y, pay, w, cont);
          },
          [&](const scpp::Inp& n) {
            // two binders over the same body
            Name w = n.w, y = n.y;
            ScpRef body = n.body;
            if (w == from || y == from)  // from is shadowed in the body
              return ScpProc::inp(subst(n.x, from, to), w, y, body);
            if (w == to && body->free.count(from)) {
              NameSet avoid = set_union(body->free, NameSet{from, to, y});
              Name w2 = fresh(avoid, w.base);
              body = rename(body, w, w2);
              w = w2;
            }
            if (y == to && body->free.count(from)) {
              NameSet avoid = set_union(body->free, NameSet{from, to, w});
              Name y2 = fresh(avoid, y.base);
              body = rename(body, y, y2);
              y = y2;
            }
            return ScpProc::inp(subst(n.x, from, to), w, y, rename(body, from, to));
          },
          [&](const scpp::Inl& n) {
            auto [w, body] = rename_scoped(n.w, n.body, from, to);
            return ScpProc::inl(subst(n.x, from, to), w, body);
          },
          [&](const scpp::Inr& n) {
            auto [w, body] = rename_scoped(n.w, n.body, from, to);
            return ScpProc::inr(subst(n.x, from, to), w, body);
          },
          [&](const scpp::Case& n) {
            auto [w, l] = rename_scoped(n.w, n.left, from, to);
            auto [w2, r] = rename_scoped(n.w2, n.right, from, to);
            return ScpProc::case_(subst(n.x, from, to), w, l, w2, r);
          },
          [&](const scpp::Close& n) { return ScpProc::close(subst(n.x, from, to)); },
          [&](const scpp::Wait& n) {
            return ScpProc::wait(subst(n.x, from, to), rename(n.body, from, to));
          },
      },
      p->node);
}

// ---------------------------------------------------------------- alpha keys

namespace {

struct KeyEnv {
  std::map<Name, int> levels;
  int counter = 0;

  void emit_name(const Name& n, std::string& out) const {
    auto it = levels.find(n);
    if (it != levels.end()) {
      out += '!';
      out += std::to_string(it->second);
    } else {
      out += n.base;
      out += '#';
      out += std::to_string(n.uid);
    }
  }

  // Enters a binder scope; restores the previous binding on destruction of
  // the returned guard value (manual save/restore).
  int bind(const Name& n) {
    int level = counter++;
    levels[n] = level;  // shadowing inside the key is fine: map reflects scope
    return level;
  }
};

void key_cp(const CpRef& p, KeyEnv& env, std::string& out);

void key_scoped_cp(const Name& b, const CpRef& s, KeyEnv& env, std::string& out) {
  auto saved = env.levels.find(b) != env.levels.end()
                   ? std::optional<int>(env.levels[b])
                   : std::nullopt;
  env.bind(b);
  key_cp(s, env, out);
  if (saved)
    env.levels[b] = *saved;
  else
    env.levels.erase(b);
}

void key_cp(const CpRef& p, KeyEnv& env, std::string& out) {
  std::visit(
      overloaded{
          [&](const cp::Fwd& n) {
            out += "F(";
            env.emit_name(n.x, out);
            out += ',';
            env.emit_name(n.y, out);
            out += ')';
          },
          [&](const cp::Cut& n) {
            out += "C[";
            type_key(n.ann, out);
            out += "](";
            auto saved = env.levels.count(n.x) ? std::optional<int>(env.levels[n.x]) : std::nullopt;
            env.bind(n.x);
            key_cp(n.left, env, out);
            out += '|';
            key_cp(n.right, env, out);
            if (saved)
              env.levels[n.x] = *saved;
            else
              env.levels.erase(n.x);
            out += ')';
          },
          [&](const cp::Out& n) {
            out += "O(";
            env.emit_name(n.x, out);
            out += ")(";
            key_scoped_cp(n.y, n.payload, env, out);
            out += '|';
            key_cp(n.cont, env, out);
            out += ')';
          },
          [&](const cp::Inp& n) {
            out += "I(";
            env.emit_name(n.x, out);
            out += ")(";
            key_scoped_cp(n.y, n.body, env, out);
            out += ')';
          },
          [&](const cp::Inl& n) {
            out += "l(";
            env.emit_name(n.x, out);
            out += ')';
            key_cp(n.body, env, out);
          },
          [&](const cp::Inr& n) {
            out += "r(";
            env.emit_name(n.x, out);
            out += ')';
            key_cp(n.body, env, out);
          },
          [&](const cp::Case& n) {
            out += "K(";
            env.emit_name(n.x, out);
            out += ")(";
            key_cp(n.left, env, out);
            out += ';';
            key_cp(n.right, env, out);
            out += ')';
          },
          [&](const cp::Close& n) {
            out += "c(";
            env.emit_name(n.x, out);
            out += ')';
          },
          [&](const cp::Wait& n) {
            out += "w(";
            env.emit_name(n.x, out);
            out += ')';
            key_cp(n.body, env, out);
          },
      },
      p->node);
}

void key_scp(const ScpRef& p, KeyEnv& env, std::string& out);

template <typename F>
void with_binding(KeyEnv& env, const Name& b, F&& f) {
  auto saved = env.levels.count(b) ? std::optional<int>(env.levels[b]) : std::nullopt;
  env.bind(b);
  f();
  if (saved)
    env.levels[b] = *saved;
  else
    env.levels.erase(b);
}

void key_scp(const ScpRef& p, KeyEnv& env, std::string& out) {
  std::visit(
      overloaded{
          [&](const scpp::Fwd& n) {
            out += "F(";
            env.emit_name(n.x, out);
            out += ',';
            env.emit_name(n.y, out);
            out += ')';
          },
          [&](const scpp::Cut& n) {
            out += "C[";
            type_key(n.ann, out);
            out += "](";
            with_binding(env, n.x, [&] {
              key_scp(n.left, env, out);
              out += '|';
              key_scp(n.right, env, out);
            });
            out += ')';
          },
          [&](const scpp::Out& n) {
            out += "O(";
            env.emit_name(n.x, out);
            out += ")(";
            with_binding(env, n.y, [&] { key_scp(n.payload, env, out); });
            out += '|';
            with_binding(env, n.w, [&] { key_scp(n.cont, env, out); });
            out += ')';
          },
          [&](const scpp::Inp& n) {
            out += "I(";
            env.emit_name(n.x, out);
            out += ")(";
            with_binding(env, n.w, [&] {
              with_binding(env, n.y, [&] { key_scp(n.body, env, out); });
            });
            out += ')';
          },
          [&](const scpp::Inl& n) {
            out += "l(";
            env.emit_name(n.x, out);
            out += ')';
            with_binding(env, n.w, [&] { key_scp(n.body, env, out); });
          },
          [&](const scpp::Inr& n) {
            out += "r(";
            env.emit_name(n.x, out);
            out += ')';
            with_binding(env, n.w, [&] { key_scp(n.body, env, out); });
          },
          [&](const scpp::Case& n) {
            out += "K(";
            env.emit_name(n.x, out);
            out += ")(";
            with_binding(env, n.w, [&] { key_scp(n.left, env, out); });
            out += ';';
            with_binding(env, n.w2, [&] { key_scp(n.right, env, out); });
            out += ')';
          },
          [&](const scpp::Close& n) {
            out += "c(";
            env.emit_name(n.x, out);
            out += ')';
          },
          [&](const scpp::Wait& n) {
            out += "w(";
            env.emit_name(n.x, out);
            out += ')';
            key_scp(n.body, env, out);
          },
      },
      p->node);
}

}  // namespace

std::string alpha_key(const CpRef& p) {
  KeyEnv env;
  std::string out;
  key_cp(p, env, out);
  return out;
}

std::string alpha_key(const ScpRef& p) {
  KeyEnv env;
  std::string out;
  key_scp(p, env, out);
  return out;
}

bool alpha_eq(const CpRef& p, const CpRef& q) {
  if (p == q) return true;
  if (p->free != q->free) return false;
  return alpha_key(p) == alpha_key(q);
}

namespace {
void strict_key_cp(const CpRef& p, std::string& out) {
  KeyEnv env;  // unused bindings: emit every name verbatim
  std::visit(overloaded{
                 [&](const cp::Fwd& n) { out += "F(" + to_string(n.x) + "," + to_string(n.y) + ")"; },
                 [&](const cp::Cut& n) {
                   out += "C[" ;
                   type_key(n.ann, out);
                   out += "]" + to_string(n.x) + "(";
                   strict_key_cp(n.left, out);
                   out += "|";
                   strict_key_cp(n.right, out);
                   out += ")";
                 },
                 [&](const cp::Out& n) {
                   out += "O(" + to_string(n.x) + "," + to_string(n.y) + ")(";
                   strict_key_cp(n.payload, out);
                   out += "|";
                   strict_key_cp(n.cont, out);
                   out += ")";
                 },
                 [&](const cp::Inp& n) {
                   out += "I(" + to_string(n.x) + "," + to_string(n.y) + ")(";
                   strict_key_cp(n.body, out);
                   out += ")";
                 },
                 [&](const cp::Inl& n) {
                   out += "l(" + to_string(n.x) + ")";
                   strict_key_cp(n.body, out);
                 },
                 [&](const cp::Inr& n) {
                   out += "r(" + to_string(n.x) + ")";
                   strict_key_cp(n.body, out);
                 },
                 [&](const cp::Case& n) {
                   out += "K(" + to_string(n.x) + ")(";
                   strict_key_cp(n.left, out);
                   out += ";";
                   strict_key_cp(n.right, out);
                   out += ")";
                 },
                 [&](const cp::Close& n) { out += "c(" + to_string(n.x) + ")"; },
                 [&](const cp::Wait& n) {
                   out += "w(" + to_string(n.x) + ")";
                   strict_key_cp(n.body, out);
                 },
             },
             p->node);
  (void)env;
}

void strict_key_scp(const ScpRef& p, std::string& out) {
  std::visit(overloaded{
                 [&](const scpp::Fwd& n) { out += "F(" + to_string(n.x) + "," + to_string(n.y) + ")"; },
                 [&](const scpp::Cut& n) {
                   out += "C[";
                   type_key(n.ann, out);
                   out += "]" + to_string(n.x) + "(";
                   strict_key_scp(n.left, out);
                   out += "|";
                   strict_key_scp(n.right, out);
                   out += ")";
                 },
                 [&](const scpp::Out& n) {
                   out += "O(" + to_string(n.x) + "," + to_string(n.y) + ">" + to_string(n.w) + ")(";
                   strict_key_scp(n.payload, out);
                   out += "|";
                   strict_key_scp(n.cont, out);
                   out += ")";
                 },
                 [&](const scpp::Inp& n) {
                   out += "I(" + to_string(n.x) + "," + to_string(n.w) + "," + to_string(n.y) + ")(";
                   strict_key_scp(n.body, out);
                   out += ")";
                 },
                 [&](const scpp::Inl& n) {
                   out += "l(" + to_string(n.x) + ">" + to_string(n.w) + ")";
                   strict_key_scp(n.body, out);
                 },
                 [&](const scpp::Inr& n) {
                   out += "r(" + to_string(n.x) + ">" + to_string(n.w) + ")";
                   strict_key_scp(n.body, out);
                 },
                 [&](const scpp::Case& n) {
                   out += "K(" + to_string(n.x) + ">" + to_string(n.w) + "," + to_string(n.w2) + ")(";
                   strict_key_scp(n.left, out);
                   out += ";";
                   strict_key_scp(n.right, out);
                   out += ")";
                 },
                 [&](const scpp::Close& n) { out += "c(" + to_string(n.x) + ")"; },
                 [&](const scpp::Wait& n) {
                   out += "w(" + to_string(n.x) + ")";
                   strict_key_scp(n.body, out);
                 },
             },
             p->node);
}
}  // namespace

bool strict_eq(const CpRef& p, const CpRef& q) {
  if (p == q) return true;
  std::string a, b;
  strict_key_cp(p, a);
  strict_key_cp(q, b);
  return a == b;
}

bool strict_eq(const ScpRef& p, const ScpRef& q) {
  if (p == q) return true;
  std::string a, b;
  strict_key_scp(p, a);
  strict_key_scp(q, b);
  return a == b;
}

bool alpha_eq(const ScpRef& p, const ScpRef& q) {
  if (p == q) return true;
  if (p->free != q->free) return false;
  return alpha_key(p) == alpha_key(q);
}

// ---------------------------------------------------------------- freshening

CpRef freshen_binders(const CpRef& p, NameSet avoid) {
  auto enter = [&avoid](Name b, const CpRef& scope) -> std::pair<Name, CpRef> {
    if (avoid.count(b)) {
      NameSet a = set_union(avoid, scope->free);
      Name b2 = fresh(a, b.base);
      return {b2, rename(scope, b, b2)};
    }
    return {b, scope};
  };
  return std::visit(
      overloaded{
          [&](const cp::Fwd&) { return p; },
          [&](const cp::Close&) { return p; },
          [&](const cp::Cut& n) {
            Name b = n.x;
            CpRef l = n.left, r = n.right;
            if (avoid.count(b)) {
              NameSet a = set_union(avoid, set_union(l->free, r->free));
              Name b2 = fresh(a, b.base);
              l = rename(l, b, b2);
              r = rename(r, b, b2);
              b = b2;
            }
            NameSet inner = avoid;
            inner.insert(b);
            return CpProc::cut(b, n.ann, freshen_binders(l, inner), freshen_binders(r, inner));
          },
          [&](const cp::Out& n) {
            auto [y, pay] = enter(n.y, n.payload);
            NameSet inner = avoid;
            inner.insert(y);
            return CpProc::out(n.x, y, freshen_binders(pay, inner), freshen_binders(n.cont, avoid));
          },
          [&](const cp::Inp& n) {
            auto [y, body] = enter(n.y, n.body);
            NameSet inner = avoid;
            inner.insert(y);
            return CpProc::inp(n.x, y, freshen_binders(body, inner));
          },
          [&](const cp::Inl& n) { return CpProc::inl(n.x, freshen_binders(n.body, avoid)); },
          [&](const cp::Inr& n) { return CpProc::inr(n.x, freshen_binders(n.body, avoid)); },
          [&](const cp::Case& n) {
            return CpProc::case_(n.x, freshen_binders(n.left, avoid),
                                 freshen_binders(n.right, avoid));
          },
          [&](const cp::Wait& n) { return CpProc::wait(n.x, freshen_binders(n.body, avoid)); },
      },
      p->node);
}

ScpRef freshen_binders(const ScpRef& p, NameSet avoid) {
  auto enter = [&avoid](Name b, const ScpRef& scope) -> std::pair<Name, ScpRef> {
    if (avoid.count(b)) {
      NameSet a = set_union(avoid, scope->free);
      Name b2 = fresh(a, b.base);
      return {b2, rename(scope, b, b2)};
    }
    return {b, scope};
  };
  return std::visit(
      overloaded{
          [&](const scpp::Fwd&) { return p; },
          [&](const scpp::Close&) { return p; },
          [&](const scpp::Cut& n) {
            Name b = n.x;
            ScpRef l = n.left, r = n.right;
            if (avoid.count(b)) {
              NameSet a = set_union(avoid, set_union(l->free, r->free));
              Name b2 = fresh(a, b.base);
              l = rename(l, b, b2);
              r = rename(r, b, b2);
              b = b2;
            }
            NameSet inner = avoid;
            inner.insert(b);
            return ScpProc::cut(b, n.ann, freshen_binders(l, inner), freshen_binders(r, inner));
          },
          [&](const scpp::Out& n) {
            auto [y, pay] = enter(n.y, n.payload);
            NameSet inner_y = avoid;
            inner_y.insert(y);
            auto [w, cont] = enter(n.w, n.cont);
            NameSet inner_w = avoid;
            inner_w.insert(w);
            return ScpProc::out(n.x, y, freshen_binders(pay, inner_y), w,
                                freshen_binders(cont, inner_w));
          },
          [&](const scpp::Inp& n) {
            auto [w, body0] = enter(n.w, n.body);
            NameSet a2 = avoid;
            a2.insert(w);
            Name y = n.y;
            ScpRef body = body0;
            if (a2.count(y)) {
              NameSet a3 = set_union(a2, body->free);
              Name y2 = fresh(a3, y.base);
              body = rename(body, y, y2);
              y = y2;
            }
            a2.insert(y);
            return ScpProc::inp(n.x, w, y, freshen_binders(body, a2));
          },
          [&](const scpp::Inl& n) {
            auto [w, body] = enter(n.w, n.body);
            NameSet inner = avoid;
            inner.insert(w);
            return ScpProc::inl(n.x, w, freshen_binders(body, inner));
          },
          [&](const scpp::Inr& n) {
            auto [w, body] = enter(n.w, n.body);
            NameSet inner = avoid;
            inner.insert(w);
            return ScpProc::inr(n.x, w, freshen_binders(body, inner));
          },
          [&](const scpp::Case& n) {
            auto [w, l] = enter(n.w, n.left);
            NameSet il = avoid;
            il.insert(w);
            auto [w2, r] = enter(n.w2, n.right);
            NameSet ir = avoid;
            ir.insert(w2);
            return ScpProc::case_(n.x, w, freshen_binders(l, il), w2, freshen_binders(r, ir));
          },
          [&](const scpp::Wait& n) { return ScpProc::wait(n.x, freshen_binders(n.body, avoid)); },
      },
      p->node);
}

int ast_size(const CpRef& p) {
  return std::visit(overloaded{
                        [&](const cp::Fwd&) { return 1; },
                        [&](const cp::Close&) { return 1; },
                        [&](const cp::Cut& n) { return 1 + ast_size(n.left) + ast_size(n.right); },
                        [&](const cp::Out& n) { return 1 + ast_size(n.payload) + ast_size(n.cont); },
                        [&](const cp::Inp& n) { return 1 + ast_size(n.body); },
                        [&](const cp::Inl& n) { return 1 + ast_size(n.body); },
                        [&](const cp::Inr& n) { return 1 + ast_size(n.body); },
                        [&](const cp::Case& n) { return 1 + ast_size(n.left) + ast_size(n.right); },
                        [&](const cp::Wait& n) { return 1 + ast_size(n.body); },
                    },
                    p->node);
}

int ast_size(const ScpRef& p) {
  return std::visit(overloaded{
                        [&](const scpp::Fwd&) { return 1; },
                        [&](const scpp::Close&) { return 1; },
                        [&](const scpp::Cut& n) { return 1 + ast_size(n.left) + ast_size(n.right); },
                        [&](const scpp::Out& n) { return 1 + ast_size(n.payload) + ast_size(n.cont); },
                        [&](const scpp::Inp& n) { return 1 + ast_size(n.body); },
                        [&](const scpp::Inl& n) { return 1 + ast_size(n.body); },
                        [&](const scpp::Inr& n) { return 1 + ast_size(n.body); },
                        [&](const scpp::Case& n) { return 1 + ast_size(n.left) + ast_size(n.right); },
                        [&](const scpp::Wait& n) { return 1 + ast_size(n.body); },
                    },
                    p->node);
}

}  // namespace scp
