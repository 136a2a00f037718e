#include "scpkit/generate.hpp"

#include <random>
#include <stdexcept>

#include "scpkit/translate.hpp"

namespace scp {

namespace {

struct Gen {
  std::mt19937_64 rng;
  std::uint32_t next_name = 1;
  int type_depth;

  explicit Gen(std::uint64_t seed, int tdepth) : rng(seed), type_depth(tdepth) {}

  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  }

  Name fresh_name() { return Name{"g", next_name++}; }

  SessionType random_type(int depth) {
    if (depth <= 1 || pick(3) == 0) return pick(2) == 0 ? SessionType::one() : SessionType::bot();
    SessionType l = random_type(depth - 1);
    SessionType r = random_type(depth - 1);
    switch (pick(4)) {
      case 0: return SessionType::tensor(l, r);
      case 1: return SessionType::par(l, r);
      case 2: return SessionType::plus(l, r);
      default: return SessionType::with(l, r);
    }
  }

  struct J {
    TypingContext ctx;
    CpRef proc;
  };

  J axiom() {
    if (pick(2) == 0) {
      Name x = fresh_name();
      return {TypingContext({{x, SessionType::one()}}), CpProc::close(x)};
    }
    Name x = fresh_name(), y = fresh_name();
    SessionType a = random_type(type_depth);
    return {TypingContext({{x, a}, {y, dual(a)}}), CpProc::fwd(x, y)};
  }

  // One random rule on top of j; the budget limits the size of freshly
  // generated side premises. Returns nullopt when the pick does not apply.
  std::optional<J> grow(const J& j, int budget) {
    switch (pick(7)) {
      case 0: {  // wait
        Name z = fresh_name();
        auto ctx = j.ctx.extended(z, SessionType::bot());
        if (!ctx) return std::nullopt;
        return J{*ctx, CpProc::wait(z, j.proc)};
      }
      case 1: {  // inl
        if (j.ctx.empty()) return std::nullopt;
        const auto& [x, a] = j.ctx.entries()[pick(j.ctx.size())];
        SessionType b = random_type(type_depth);
        return J{*j.ctx.retyped(x, SessionType::plus(a, b)), CpProc::inl(x, j.proc)};
      }
      case 2: {  // inr
        if (j.ctx.empty()) return std::nullopt;
        const auto& [x, b] = j.ctx.entries()[pick(j.ctx.size())];
        SessionType a = random_type(type_depth);
        return J{*j.ctx.retyped(x, SessionType::plus(a, b)), CpProc::inr(x, j.proc)};
      }
      case 3: {  // inp
        if (j.ctx.size() < 2) return std::nullopt;
        std::size_t xi = pick(j.ctx.size());
        std::size_t yi = pick(j.ctx.size());
        if (xi == yi) return std::nullopt;
        const auto& [x, b] = j.ctx.entries()[xi];
        const auto& [y, a] = j.ctx.entries()[yi];
        TypingContext rest = j.ctx.without(x).without(y);
        auto ctx = rest.extended(x, SessionType::par(a, b));
        if (!ctx) return std::nullopt;
        return J{*ctx, CpProc::inp(x, y, j.proc)};
      }
      case 4: {  // case over the same branch twice (premise contexts agree)
        if (j.ctx.empty()) return std::nullopt;
        const auto& [x, a] = j.ctx.entries()[pick(j.ctx.size())];
        return J{*j.ctx.retyped(x, SessionType::with(a, a)),
                 CpProc::case_(x, j.proc, j.proc)};
      }
      case 5: {  // cut against a forwarder on the dual type
        if (j.ctx.empty() || budget <= 0) return std::nullopt;
        const auto& [u, a] = j.ctx.entries()[pick(j.ctx.size())];
        Name z = fresh_name(), v2 = fresh_name();
        CpRef l = rename(j.proc, u, z);
        CpRef r = CpProc::fwd(z, v2);
        auto c2 = j.ctx.without(u).extended(v2, a);
        if (!c2) return std::nullopt;
        return J{*c2, CpProc::cut(z, a, l, r)};
      }
      default: {  // out: j as payload, fresh axiom as continuation
        if (j.ctx.empty() || budget <= 0) return std::nullopt;
        const auto& [u, a] = j.ctx.entries()[pick(j.ctx.size())];
        J side = small(budget);
        if (side.ctx.empty()) return std::nullopt;
        const auto& [v, b] = side.ctx.entries()[pick(side.ctx.size())];
        TypingContext ctx = j.ctx.without(u);
        bool ok = true;
        TypingContext side_rest = side.ctx.without(v);
        for (const auto& e : side_rest.entries()) {
          auto c2 = ctx.extended(e.first, e.second);
          if (!c2) { ok = false; break; }
          ctx = *c2;
        }
        if (!ok) return std::nullopt;
        auto ctx2 = ctx.extended(v, SessionType::tensor(a, b));
        if (!ctx2) return std::nullopt;
        return J{*ctx2, CpProc::out(v, u, j.proc, side.proc)};
      }
    }
  }

  J small(int budget) {
    J j = axiom();
    int extra = budget > 1 ? static_cast<int>(pick(static_cast<std::size_t>(budget))) : 0;
    for (int i = 0; i < extra; i++) {
      auto g = grow(j, 0);
      if (g) j = *g;
    }
    return j;
  }
};

}  // namespace

GeneratedCp generate_typed_cp(const GenConfig& cfg) {
  if (cfg.max_depth < 1) throw std::runtime_error("generate: max_depth must be >= 1");
  Gen gen(cfg.seed, std::max(cfg.type_depth, 1));
  for (int attempt = 0; attempt < 64; attempt++) {
    Gen::J j = gen.axiom();
    bool ok = true;
    for (int d = 1; d < cfg.max_depth; d++) {
      std::optional<Gen::J> g;
      for (int tries = 0; tries < 16 && !g; tries++) g = gen.grow(j, cfg.max_depth - d);
      if (!g) { ok = false; break; }
      j = *g;
    }
    if (!ok) continue;
    auto deriv = cp_check(j.ctx, j.proc);
    if (!deriv) continue;  // should not happen; retry defensively
    return {j.ctx, (*deriv)->process, *deriv};
  }
  throw std::runtime_error("generate: exhausted attempts for seed " + std::to_string(cfg.seed));
}

GeneratedScp generate_typed_scp(const GenConfig& cfg) {
  GeneratedCp base = generate_typed_cp(cfg);
  auto enc = encode_derivation(base.deriv);
  if (!enc) throw std::runtime_error("generate: encoding of a checked derivation failed");
  return {base.ctx, enc->deriv->process, enc->deriv, enc->lins};
}

}  // namespace scp
