#pragma once

#include <memory>
#include <string>
#include <variant>

#include "scpkit/name.hpp"
#include "scpkit/session_type.hpp"

namespace scp {

class CpProc;
class ScpProc;
using CpRef = std::shared_ptr<const CpProc>;
using ScpRef = std::shared_ptr<const ScpProc>;

// ---------------------------------------------------------------------------
// CP processes. Binding structure:
//   Cut(x, A, P, Q)   x bound in P and Q
//   Out(x, y, P, Q)   y bound in P only
//   Inp(x, y, P)      y bound in P
// All other constructs bind nothing.
// ---------------------------------------------------------------------------
namespace cp {
struct Fwd { Name x, y; };
struct Cut { Name x; SessionType ann; CpRef left, right; };
struct Out { Name x, y; CpRef payload, cont; };
struct Inp { Name x, y; CpRef body; };
struct Inl { Name x; CpRef body; };
struct Inr { Name x; CpRef body; };
struct Case { Name x; CpRef left, right; };
struct Close { Name x; };
struct Wait { Name x; CpRef body; };
using Node = std::variant<Fwd, Cut, Out, Inp, Inl, Inr, Case, Close, Wait>;
}  // namespace cp

// ---------------------------------------------------------------------------
// SCP processes. Same constructs, but every prefix that persists its subject
// in the typing rules also binds an explicit continuation channel:
//   Out(x, y, P, w, Q)    y bound in P, w bound in Q
//   Inp(x, w, y, P)       w (continuation) and y (payload) bound in P
//   Inl/Inr(x, w, P)      w bound in P
//   Case(x, w, P, w2, Q)  w bound in P, w2 bound in Q
// ---------------------------------------------------------------------------
namespace scpp {
struct Fwd { Name x, y; };
struct Cut { Name x; SessionType ann; ScpRef left, right; };
struct Out { Name x, y; ScpRef payload; Name w; ScpRef cont; };
struct Inp { Name x, w, y; ScpRef body; };
struct Inl { Name x, w; ScpRef body; };
struct Inr { Name x, w; ScpRef body; };
struct Case { Name x, w; ScpRef left; Name w2; ScpRef right; };
struct Close { Name x; };
struct Wait { Name x; ScpRef body; };
using Node = std::variant<Fwd, Cut, Out, Inp, Inl, Inr, Case, Close, Wait>;
}  // namespace scpp

// The factory functions are the only way to build processes. They keep terms
// hygienic: a binder is refreshed whenever it would collide with the node's
// subject channel or with free names of a sibling subterm, so shadowing at a
// node never happens. Values are immutable after construction and carry their
// free-name set.
class CpProc : public std::enable_shared_from_this<CpProc> {
 public:
  static CpRef fwd(Name x, Name y);
  static CpRef cut(Name x, SessionType ann, CpRef left, CpRef right);
  static CpRef out(Name x, Name y, CpRef payload, CpRef cont);
  static CpRef inp(Name x, Name y, CpRef body);
  static CpRef inl(Name x, CpRef body);
  static CpRef inr(Name x, CpRef body);
  static CpRef case_(Name x, CpRef left, CpRef right);
  static CpRef close(Name x);
  static CpRef wait(Name x, CpRef body);

  const cp::Node node;
  const NameSet free;

  CpProc(cp::Node n, NameSet f) : node(std::move(n)), free(std::move(f)) {}
};

class ScpProc : public std::enable_shared_from_this<ScpProc> {
 public:
  static ScpRef fwd(Name x, Name y);
  static ScpRef cut(Name x, SessionType ann, ScpRef left, ScpRef right);
  static ScpRef out(Name x, Name y, ScpRef payload, Name w, ScpRef cont);
  static ScpRef inp(Name x, Name w, Name y, ScpRef body);
  static ScpRef inl(Name x, Name w, ScpRef body);
  static ScpRef inr(Name x, Name w, ScpRef body);
  static ScpRef case_(Name x, Name w, ScpRef left, Name w2, ScpRef right);
  static ScpRef close(Name x);
  static ScpRef wait(Name x, ScpRef body);

  const scpp::Node node;
  const NameSet free;

  ScpProc(scpp::Node n, NameSet f) : node(std::move(n)), free(std::move(f)) {}
};

const NameSet& free_names(const CpRef& p);
const NameSet& free_names(const ScpRef& p);

// Capture-avoiding replacement of free `from` by `to`; binders that would
// capture `to` are refreshed first.
CpRef rename(const CpRef& p, const Name& from, const Name& to);
ScpRef rename(const ScpRef& p, const Name& from, const Name& to);

bool alpha_eq(const CpRef& p, const CpRef& q);
bool alpha_eq(const ScpRef& p, const ScpRef& q);

// Structural equality including binder names.
bool strict_eq(const CpRef& p, const CpRef& q);
bool strict_eq(const ScpRef& p, const ScpRef& q);

// Canonical string with binders replaced by scope indices; equal iff alpha_eq.
std::string alpha_key(const CpRef& p);
std::string alpha_key(const ScpRef& p);

// Alpha-converts so that every binder avoids `avoid` and all binders on any
// scope path are distinct. Result is alpha-equal to the input.
CpRef freshen_binders(const CpRef& p, NameSet avoid);
ScpRef freshen_binders(const ScpRef& p, NameSet avoid);

int ast_size(const CpRef& p);
int ast_size(const ScpRef& p);

}  // namespace scp
