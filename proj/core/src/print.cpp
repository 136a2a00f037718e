#include "scpkit/print.hpp"

#include <map>
#include <set>

namespace scp {

namespace {
template <class... Ts>
struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const char* op_name(TypeTag t) {
  switch (t) {
    case TypeTag::Tensor: return "*";
    case TypeTag::Par: return "par";
    case TypeTag::Plus: return "+";
    case TypeTag::With: return "&";
    default: return "?";
  }
}

// Chooses display identifiers: free names print as-is (uid suffix when
// nonzero); binders shadow scope-wise and are re-displayed when their
// identifier is taken.
struct NamePrinter {
  std::map<Name, std::vector<std::string>> stack;
  std::set<std::string> used;

  std::string show(const Name& n) {
    auto it = stack.find(n);
    if (it != stack.end() && !it->second.empty()) return it->second.back();
    std::string s = to_string(n);
    std::string candidate = s;
    int i = 0;
    while (used.count(candidate)) candidate = s + "_" + std::to_string(++i);
    stack[n].push_back(candidate);
    used.insert(candidate);
    return candidate;
  }

  std::string push_bind(const Name& n) {
    std::string candidate = n.base;
    int i = 0;
    while (used.count(candidate)) candidate = n.base + std::to_string(++i);
    stack[n].push_back(candidate);
    used.insert(candidate);
    return candidate;
  }

  void pop_bind(const Name& n) { stack[n].pop_back(); }

  void seed_frees(const NameSet& frees) {
    for (const auto& n : frees) show(n);
  }
};

void print_cp(const CpRef& p, NamePrinter& np, std::string& out);

void print_cp(const CpRef& p, NamePrinter& np, std::string& out) {
  std::visit(
      overloaded{
          [&](const cp::Fwd& n) { out += "fwd " + np.show(n.x) + " " + np.show(n.y); },
          [&](const cp::Cut& n) {
            out += "nu ";
            out += np.push_bind(n.x);
            out += ":" + print_type(n.ann) + " (";
            print_cp(n.left, np, out);
            out += " | ";
            print_cp(n.right, np, out);
            out += ")";
            np.pop_bind(n.x);
          },
          [&](const cp::Out& n) {
            out += np.show(n.x) + "[" + np.push_bind(n.y) + "](";
            print_cp(n.payload, np, out);
            np.pop_bind(n.y);
            out += " | ";
            print_cp(n.cont, np, out);
            out += ")";
          },
          [&](const cp::Inp& n) {
            out += np.show(n.x) + "(" + np.push_bind(n.y) + "). ";
            print_cp(n.body, np, out);
            np.pop_bind(n.y);
          },
          [&](const cp::Inl& n) {
            out += np.show(n.x) + "[inl]. ";
            print_cp(n.body, np, out);
          },
          [&](const cp::Inr& n) {
            out += np.show(n.x) + "[inr]. ";
            print_cp(n.body, np, out);
          },
          [&](const cp::Case& n) {
            out += "case " + np.show(n.x) + " {";
            print_cp(n.left, np, out);
            out += "; ";
            print_cp(n.right, np, out);
            out += "}";
          },
          [&](const cp::Close& n) { out += "close " + np.show(n.x); },
          [&](const cp::Wait& n) {
            out += "wait " + np.show(n.x) + ". ";
            print_cp(n.body, np, out);
          },
      },
      p->node);
}

void print_scp(const ScpRef& p, NamePrinter& np, std::string& out) {
  std::visit(
      overloaded{
          [&](const scpp::Fwd& n) { out += "fwd " + np.show(n.x) + " " + np.show(n.y); },
          [&](const scpp::Cut& n) {
            out += "nu ";
            out += np.push_bind(n.x);
            out += ":" + print_type(n.ann) + " (";
            print_scp(n.left, np, out);
            out += " | ";
            print_scp(n.right, np, out);
            out += ")";
            np.pop_bind(n.x);
          },
          [&](const scpp::Out& n) {
            out += np.show(n.x) + "[";
            std::string dy = np.push_bind(n.y);
            std::string dw = np.push_bind(n.w);
            out += dy + ">" + dw + "](";
            np.pop_bind(n.w);  // w does not scope the payload
            print_scp(n.payload, np, out);
            np.pop_bind(n.y);
            out += " | ";
            np.stack[n.w].push_back(dw);  // back in scope for the continuation
            print_scp(n.cont, np, out);
            out += ")";
            np.pop_bind(n.w);
          },
          [&](const scpp::Inp& n) {
            out += np.show(n.x) + "(" + np.push_bind(n.w) + "," + np.push_bind(n.y) + "). ";
            print_scp(n.body, np, out);
            np.pop_bind(n.y);
            np.pop_bind(n.w);
          },
          [&](const scpp::Inl& n) {
            out += np.show(n.x) + "[inl>" + np.push_bind(n.w) + "]. ";
            print_scp(n.body, np, out);
            np.pop_bind(n.w);
          },
          [&](const scpp::Inr& n) {
            out += np.show(n.x) + "[inr>" + np.push_bind(n.w) + "]. ";
            print_scp(n.body, np, out);
            np.pop_bind(n.w);
          },
          [&](const scpp::Case& n) {
            out += "case " + np.show(n.x) + " {";
            out += np.push_bind(n.w) + ". ";
            print_scp(n.left, np, out);
            np.pop_bind(n.w);
            out += "; ";
            out += np.push_bind(n.w2) + ". ";
            print_scp(n.right, np, out);
            np.pop_bind(n.w2);
            out += "}";
          },
          [&](const scpp::Close& n) { out += "close " + np.show(n.x); },
          [&](const scpp::Wait& n) {
            out += "wait " + np.show(n.x) + ". ";
            print_scp(n.body, np, out);
          },
      },
      p->node);
}

}  // namespace

std::string print_type(const SessionType& t) {
  switch (t.tag()) {
    case TypeTag::One: return "1";
    case TypeTag::Bot: return "bot";
    default: break;
  }
  // binary operators share one precedence level and associate to the right,
  // so only a binary left operand needs parentheses
  std::string l = print_type(t.left());
  if (t.left().is_binary()) l = "(" + l + ")";
  return l + " " + op_name(t.tag()) + " " + print_type(t.right());
}

std::string print_context(const TypingContext& ctx) {
  std::string out;
  bool first = true;
  for (const auto& [n, t] : ctx.entries()) {
    if (!first) out += ", ";
    first = false;
    out += to_string(n) + ":" + print_type(t);
  }
  return out;
}

std::string print_process(const CpRef& p) {
  NamePrinter np;
  np.seed_frees(p->free);
  std::string out;
  print_cp(p, np, out);
  return out;
}

std::string print_process(const ScpRef& p) {
  NamePrinter np;
  np.seed_frees(p->free);
  std::string out;
  print_scp(p, np, out);
  return out;
}

std::string print_judgment(const TypingContext& ctx, const CpRef& p) {
  return print_context(ctx) + (ctx.empty() ? "|- " : " |- ") + print_process(p);
}

std::string print_judgment(const TypingContext& ctx, const ScpRef& p) {
  return print_context(ctx) + (ctx.empty() ? "|- " : " |- ") + print_process(p);
}

namespace {

void deriv_lines(const CpDerivRef& d, int indent, std::string& out) {
  out.append(static_cast<std::size_t>(indent), ' ');
  out += cp_rule_name(d->rule);
  out += "  ";
  out += print_judgment(d->context, d->process);
  out += "\n";
  for (const auto& q : d->premises) deriv_lines(q, indent + 2, out);
}

void lin_lines(const LinDerivRef& d, int indent, std::string& out) {
  out.append(static_cast<std::size_t>(indent), ' ');
  out += lin_rule_name(d->rule);
  out += "  lin(";
  out += to_string(d->subject);
  out += "; ";
  out += print_process(d->process);
  out += ")\n";
  for (const auto& q : d->premises) lin_lines(q, indent + 2, out);
}

void deriv_lines(const ScpDerivRef& d, int indent, std::string& out) {
  out.append(static_cast<std::size_t>(indent), ' ');
  out += scp_rule_name(d->rule);
  out += "  ";
  out += print_judgment(d->context, d->process);
  out += "\n";
  for (const auto& l : d->lin_premises) lin_lines(l, indent + 2, out);
  for (const auto& q : d->premises) deriv_lines(q, indent + 2, out);
}

}  // namespace

std::string print_deriv(const CpDerivRef& d) {
  std::string out;
  deriv_lines(d, 0, out);
  return out;
}

std::string print_deriv(const ScpDerivRef& d) {
  std::string out;
  deriv_lines(d, 0, out);
  return out;
}

std::string print_lin_deriv(const LinDerivRef& d) {
  std::string out;
  lin_lines(d, 0, out);
  return out;
}

}  // namespace scp
