#include "scpkit/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>

namespace scp {

namespace {
template <class... Ts>
struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

const std::vector<SessionType>& enumeration_alphabet() {
  static const std::vector<SessionType> alphabet = [] {
    auto one = SessionType::one();
    auto bot = SessionType::bot();
    return std::vector<SessionType>{
        one, bot,
        SessionType::plus(one, bot),
        SessionType::with(one, bot),
        SessionType::tensor(one, bot),
        SessionType::par(bot, one),
    };
  }();
  return alphabet;
}

const std::vector<SessionType>& enumeration_universe() {
  static const std::vector<SessionType> universe = [] {
    std::vector<SessionType> out = enumeration_alphabet();
    for (const auto& t : enumeration_alphabet()) {
      SessionType d = dual(t);
      if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
    }
    return out;
  }();
  return universe;
}

namespace {

// Free names in first-occurrence (preorder) order.
void preorder_frees(const CpRef& p, NameSet bound, std::vector<Name>& out, NameSet& seen) {
  auto visit_name = [&](const Name& n) {
    if (bound.count(n) || seen.count(n)) return;
    seen.insert(n);
    out.push_back(n);
  };
  std::visit(overloaded{
                 [&](const cp::Fwd& n) {
                   visit_name(n.x);
                   visit_name(n.y);
                 },
                 [&](const cp::Cut& n) {
                   NameSet b = bound;
                   b.insert(n.x);
                   preorder_frees(n.left, b, out, seen);
                   preorder_frees(n.right, b, out, seen);
                 },
                 [&](const cp::Out& n) {
                   visit_name(n.x);
                   NameSet b = bound;
                   b.insert(n.y);
                   preorder_frees(n.payload, b, out, seen);
                   preorder_frees(n.cont, bound, out, seen);
                 },
                 [&](const cp::Inp& n) {
                   visit_name(n.x);
                   NameSet b = bound;
                   b.insert(n.y);
                   preorder_frees(n.body, b, out, seen);
                 },
                 [&](const cp::Inl& n) {
                   visit_name(n.x);
                   preorder_frees(n.body, bound, out, seen);
                 },
                 [&](const cp::Inr& n) {
                   visit_name(n.x);
                   preorder_frees(n.body, bound, out, seen);
                 },
                 [&](const cp::Case& n) {
                   visit_name(n.x);
                   preorder_frees(n.left, bound, out, seen);
                   preorder_frees(n.right, bound, out, seen);
                 },
                 [&](const cp::Close& n) { visit_name(n.x); },
                 [&](const cp::Wait& n) {
                   visit_name(n.x);
                   preorder_frees(n.body, bound, out, seen);
                 },
             },
             p->node);
}

}  // namespace

TypedCpJudgment canonicalize_judgment(const TypingContext& ctx, const CpRef& proc) {
  std::vector<Name> order;
  NameSet seen;
  preorder_frees(proc, {}, order, seen);
  // two passes through throwaway names so c_i targets never collide
  CpRef q = proc;
  for (std::size_t i = 0; i < order.size(); i++)
    q = rename(q, order[i], Name{"$tmp", static_cast<std::uint32_t>(i + 1)});
  std::vector<TypingContext::Entry> entries;
  for (std::size_t i = 0; i < order.size(); i++) {
    Name canon{"c" + std::to_string(i), 0};
    q = rename(q, Name{"$tmp", static_cast<std::uint32_t>(i + 1)}, canon);
    auto ty = ctx.lookup(order[i]);
    if (ty) entries.emplace_back(canon, *ty);
  }
  return {TypingContext(std::move(entries)), q};
}

namespace {

struct Workspace {
  std::uint32_t next_temp = 1;
  Name temp(const std::string& base = "u") { return Name{base, next_temp++}; }

  // Renames every free name of a judgment to fresh temporaries so that two
  // judgments can be combined without clashes.
  TypedCpJudgment apart(const TypedCpJudgment& j) {
    CpRef p = j.proc;
    std::vector<TypingContext::Entry> entries;
    for (const auto& [n, t] : j.ctx.entries()) {
      Name fresh_name = temp();
      p = rename(p, n, fresh_name);
      entries.emplace_back(fresh_name, t);
    }
    return {TypingContext(std::move(entries)), p};
  }
};

using Level = std::vector<TypedCpJudgment>;

void type_structural_key(const SessionType& ty, std::string& tk) {
  switch (ty.tag()) {
    case TypeTag::One: tk += '1'; return;
    case TypeTag::Bot: tk += 'b'; return;
    case TypeTag::Tensor: tk += 't'; break;
    case TypeTag::Par: tk += 'p'; break;
    case TypeTag::Plus: tk += '+'; break;
    case TypeTag::With: tk += '&'; break;
  }
  tk += '(';
  type_structural_key(ty.left(), tk);
  tk += ',';
  type_structural_key(ty.right(), tk);
  tk += ')';
}

void add(std::map<std::string, TypedCpJudgment>& sink, const TypingContext& ctx,
         const CpRef& proc) {
  TypedCpJudgment canon = canonicalize_judgment(ctx, proc);
  std::string key = alpha_key(canon.proc);
  key += "::";
  for (const auto& [n, t] : canon.ctx.entries()) {
    type_structural_key(t, key);
    key += ';';
  }
  sink.emplace(std::move(key), std::move(canon));
}

}  // namespace

std::vector<TypedCpJudgment> enumerate_typed_cp(int max_size) {
  const auto& universe = enumeration_universe();
  std::vector<Level> levels(static_cast<std::size_t>(std::max(max_size, 0)) + 1);
  Workspace ws;

  for (int k = 1; k <= max_size; k++) {
    std::map<std::string, TypedCpJudgment> sink;

    if (k == 1) {
      Name c0{"c0", 0}, c1{"c1", 0};
      add(sink, TypingContext({{c0, SessionType::one()}}), CpProc::close(c0));
      for (const auto& a : universe)
        add(sink, TypingContext({{c0, a}, {c1, dual(a)}}), CpProc::fwd(c0, c1));
    }

    // unary rules over level k-1
    if (k >= 2) {
      for (const auto& j : levels[static_cast<std::size_t>(k - 1)]) {
        // wait z. P   with a fresh z : bot
        {
          Name z = ws.temp("z");
          auto ctx2 = j.ctx.extended(z, SessionType::bot());
          if (ctx2) add(sink, *ctx2, CpProc::wait(z, j.proc));
        }
        for (const auto& [x, a] : j.ctx.entries()) {
          for (const auto& t : universe) {
            if (t.tag() == TypeTag::Plus && t.left() == a) {
              auto ctx2 = j.ctx.retyped(x, t);
              if (ctx2) add(sink, *ctx2, CpProc::inl(x, j.proc));
            }
            if (t.tag() == TypeTag::Plus && t.right() == a) {
              auto ctx2 = j.ctx.retyped(x, t);
              if (ctx2) add(sink, *ctx2, CpProc::inr(x, j.proc));
            }
          }
        }
        // inp: consumes two context entries x:B, y:A with A par B in universe
        for (const auto& [x, b] : j.ctx.entries()) {
          for (const auto& [y, a] : j.ctx.entries()) {
            if (x == y) continue;
            for (const auto& t : universe) {
              if (t.tag() == TypeTag::Par && t.left() == a && t.right() == b) {
                TypingContext rest = j.ctx.without(x).without(y);
                auto ctx2 = rest.extended(x, t);
                if (ctx2) add(sink, *ctx2, CpProc::inp(x, y, j.proc));
              }
            }
          }
        }
      }
    }

    // binary rules: premise sizes i + jj = k - 1
    for (int i = 1; i + 1 < k + 1; i++) {
      int jj = k - 1 - i;
      if (jj < 1) continue;
      for (const auto& j1 : levels[static_cast<std::size_t>(i)]) {
        for (const auto& j2raw : levels[static_cast<std::size_t>(jj)]) {
          TypedCpJudgment j2 = ws.apart(j2raw);

          // cut (j1 and j2 have disjoint names after `apart`)
          for (const auto& [u, a] : j1.ctx.entries()) {
            for (const auto& [v, b] : j2.ctx.entries()) {
              if (!(b == dual(a))) continue;
              Name z = ws.temp("z");
              CpRef l = rename(j1.proc, u, z);
              CpRef r = rename(j2.proc, v, z);
              TypingContext ctx = j1.ctx.without(u);
              TypingContext rest2 = j2.ctx.without(v);
              for (const auto& e : rest2.entries()) ctx = *ctx.extended(e.first, e.second);
              add(sink, ctx, CpProc::cut(z, a, l, r));
            }
          }

          // out: j1 provides the payload (binder y), j2 the continuation (x)
          for (const auto& [u, a] : j1.ctx.entries()) {
            for (const auto& [v, b] : j2.ctx.entries()) {
              for (const auto& t : universe) {
                if (!(t.tag() == TypeTag::Tensor && t.left() == a && t.right() == b)) continue;
                TypingContext ctx = j1.ctx.without(u);
                TypingContext rest2 = j2.ctx.without(v);
                for (const auto& e : rest2.entries()) ctx = *ctx.extended(e.first, e.second);
                ctx = *ctx.extended(v, t);
                add(sink, ctx, CpProc::out(v, u, j1.proc, j2.proc));
              }
            }
          }

          // case: residual contexts must agree through a type-preserving bijection
          for (const auto& [u, a] : j1.ctx.entries()) {
            for (const auto& [v, b] : j2.ctx.entries()) {
              for (const auto& t : universe) {
                if (!(t.tag() == TypeTag::With && t.left() == a && t.right() == b)) continue;
                TypingContext r1 = j1.ctx.without(u);
                TypingContext r2 = j2.ctx.without(v);
                if (r1.size() != r2.size()) continue;
                // enumerate bijections r2 -> r1 preserving types
                std::vector<std::size_t> idx(r2.size());
                for (std::size_t q = 0; q < idx.size(); q++) idx[q] = q;
                std::vector<bool> used(r1.size(), false);
                std::vector<int> assign(r2.size(), -1);
                std::function<void(std::size_t)> rec = [&](std::size_t pos) {
                  if (pos == r2.size()) {
                    CpRef right = rename(j2.proc, v, u);
                    for (std::size_t q = 0; q < r2.size(); q++)
                      right = rename(right, r2.entries()[q].first,
                                     r1.entries()[static_cast<std::size_t>(assign[q])].first);
                    auto ctx2 = j1.ctx.retyped(u, t);
                    if (ctx2) add(sink, *ctx2, CpProc::case_(u, j1.proc, right));
                    return;
                  }
                  for (std::size_t cand = 0; cand < r1.size(); cand++) {
                    if (used[cand]) continue;
                    if (!(r1.entries()[cand].second == r2.entries()[pos].second)) continue;
                    used[cand] = true;
                    assign[pos] = static_cast<int>(cand);
                    rec(pos + 1);
                    used[cand] = false;
                  }
                };
                rec(0);
              }
            }
          }
        }
      }
    }

    Level& lvl = levels[static_cast<std::size_t>(k)];
    for (auto& [key, j] : sink) lvl.push_back(std::move(j));
  }

  std::vector<TypedCpJudgment> out;
  for (int k = 1; k <= max_size; k++)
    for (const auto& j : levels[static_cast<std::size_t>(k)]) out.push_back(j);
  return out;
}

}  // namespace scp
