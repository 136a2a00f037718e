// scpkit: command-line workbench for CP and SCP processes.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "scpkit/json_io.hpp"
#include "scpkit/metatheory.hpp"
#include "scpkit/parse.hpp"
#include "scpkit/print.hpp"

namespace {

using namespace scp;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Calculus pick_calculus(const std::string& flag, const std::string& path) {
  if (flag == "cp") return Calculus::CP;
  if (flag == "scp") return Calculus::SCP;
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".scp") return Calculus::SCP;
  return Calculus::CP;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

Strategy pick_strategy(const std::string& s) {
  if (s == "first") return Strategy::First;
  return Strategy::PrincipalFirst;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SCPKIT_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

int cmd_check(const std::string& file, const std::string& calc_flag, const std::string& lin_list,
              bool lin_all_flag, bool as_json) {
  std::string text = read_input(file);
  Calculus calc = pick_calculus(calc_flag, file);
  nlohmann::json out;

  if (calc == Calculus::CP) {
    auto [ctx, proc] = parse_cp_judgment(text);
    std::string why;
    auto d = cp_check(ctx, proc, &why);
    if (as_json) {
      out["judgment"] = print_judgment(ctx, proc);
      out["ok"] = d.has_value();
      if (d)
        out["derivation"] = deriv_json(*d);
      else
        out["error"] = why;
      std::cout << out.dump(2) << "\n";
    } else if (d) {
      std::cout << print_deriv(*d);
    } else {
      std::cout << "not typable: " << why << "\n";
    }
    return d ? 0 : 1;
  }

  auto [ctx, proc] = parse_scp_judgment(text);
  std::string why;
  auto d = scp_check(ctx, proc, &why);
  bool ok = d.has_value();
  std::vector<std::pair<std::string, std::optional<LinDerivRef>>> lin_results;
  if (ok) {
    if (lin_all_flag) {
      for (const auto& [n, t] : ctx.entries()) lin_results.emplace_back(n.base, lin_check(n, proc));
    } else {
      for (const auto& base : split_commas(lin_list))
        lin_results.emplace_back(base, lin_check(Name{base, 0}, proc));
    }
    for (const auto& [base, l] : lin_results)
      if (!l) {
        ok = false;
        why = "no linearity derivation for " + base;
      }
  }

  if (as_json) {
    out["judgment"] = print_judgment(ctx, proc);
    out["ok"] = ok;
    if (d) out["derivation"] = deriv_json(*d);
    nlohmann::json lj = nlohmann::json::object();
    for (const auto& [base, l] : lin_results) lj[base] = l ? lin_json(*l) : nlohmann::json();
    out["lin"] = std::move(lj);
    if (!ok) out["error"] = why;
    std::cout << out.dump(2) << "\n";
  } else {
    if (d) std::cout << print_deriv(*d);
    for (const auto& [base, l] : lin_results) {
      if (l)
        std::cout << print_lin_deriv(*l);
      else
        std::cout << "no linearity derivation for " << base << "\n";
    }
    if (!d) std::cout << "not typable: " << why << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_lin(const std::string& file, const std::string& channel) {
  std::string text = read_input(file);
  ScpRef proc = looks_like_judgment(text) ? parse_scp_judgment(text).second : parse_scp(text);
  auto l = lin_check(Name{channel, 0}, proc);
  if (!l) {
    std::cout << "no linearity derivation for " << channel << "\n";
    return 1;
  }
  std::cout << print_lin_deriv(*l);
  return 0;
}

template <typename PRef>
int run_step(const PRef& proc, const std::string& strategy, int index, bool apply,
             const StepOptions& opts, bool as_json) {
  if (!apply && index < 0) {
    auto steps = enumerate_steps(proc, opts);
    if (as_json) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& s : steps) arr.push_back(step_json(s));
      std::cout << arr.dump(2) << "\n";
    } else {
      int i = 0;
      for (const auto& s : steps)
        std::cout << "[" << i++ << "] " << step_rule_name(leaf_rule(s)) << " @"
                  << (step_position(s).empty() ? "top" : step_position(s)) << "  ->  "
                  << print_process(s->target) << "\n";
      if (steps.empty()) std::cout << "stuck (no redex)\n";
    }
    return steps.empty() ? 1 : 0;
  }
  std::optional<StepRef<PRef>> s;
  if (index >= 0)
    s = step(proc, Strategy::ByIndex, opts, index);
  else
    s = step(proc, pick_strategy(strategy), opts);
  if (!s) {
    std::cout << "stuck (no redex)\n";
    return 1;
  }
  if (as_json)
    std::cout << step_json(*s).dump(2) << "\n";
  else
    std::cout << step_rule_name(leaf_rule(*s)) << ": " << print_process((*s)->target) << "\n";
  return 0;
}

template <typename PRef>
int run_normalize(const PRef& proc, const std::string& strategy, int max_steps,
                  const StepOptions& opts, bool as_json) {
  auto tr = trace(proc, pick_strategy(strategy), max_steps, opts);
  PRef final_proc = tr.empty() ? proc : tr.back()->target;
  if (as_json) {
    nlohmann::json out;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : tr) arr.push_back(step_json(s));
    out["trace"] = std::move(arr);
    out["final"] = print_process(final_proc);
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& s : tr)
      std::cout << step_rule_name(leaf_rule(s)) << "  ->  " << print_process(s->target) << "\n";
    std::cout << "final: " << print_process(final_proc) << "\n";
  }
  return 0;
}

int cmd_translate(const std::string& file, const std::string& to, bool with_derivation) {
  std::string text = read_input(file);
  if (to == "scp") {
    if (with_derivation || looks_like_judgment(text)) {
      auto [ctx, proc] = parse_cp_judgment(text);
      ScpRef e = encode(proc);
      std::cout << print_judgment(ctx, e) << "\n";
      if (with_derivation) {
        auto d = cp_check(ctx, proc);
        if (!d) {
          std::cout << "source judgment not typable\n";
          return 1;
        }
        auto enc = encode_derivation(*d);
        if (!enc) {
          std::cout << "derivation translation failed\n";
          return 1;
        }
        std::cout << print_deriv(enc->deriv);
        for (const auto& [z, l] : enc->lins) std::cout << print_lin_deriv(l);
      }
      return 0;
    }
    std::cout << print_process(encode(parse_cp(text))) << "\n";
    return 0;
  }
  if (to != "cp") throw CLI::ValidationError("--to must be cp or scp");
  if (with_derivation || looks_like_judgment(text)) {
    auto [ctx, proc] = parse_scp_judgment(text);
    CpRef dec = decode(proc);
    std::cout << print_context(ctx.restricted(proc->free))
              << (ctx.restricted(proc->free).empty() ? "|- " : " |- ") << print_process(dec)
              << "\n";
    if (with_derivation) {
      auto d = scp_check(ctx, proc);
      auto lins = lin_all(ctx.restricted(proc->free), proc);
      if (!d || !lins) {
        std::cout << "source judgment not typable or not linear\n";
        return 1;
      }
      auto cd = decode_derivation(*d, *lins);
      if (!cd) {
        std::cout << "derivation translation failed\n";
        return 1;
      }
      std::cout << print_deriv(*cd);
    }
    return 0;
  }
  std::cout << print_process(decode(parse_scp(text))) << "\n";
  return 0;
}

template <typename PRef>
void print_equiv_chain(const EquivRef<PRef>& e, int indent) {
  std::cout << std::string(static_cast<std::size_t>(indent), ' ') << equiv_rule_name(e->rule)
            << ": " << print_process(e->lhs) << "  ~  " << print_process(e->rhs) << "\n";
  for (const auto& q : e->premises) print_equiv_chain(q, indent + 2);
}

int cmd_equiv(const std::string& file_a, const std::string& file_b, int depth,
              const std::string& calc_flag) {
  std::string ta = read_input(file_a), tb = read_input(file_b);
  Calculus calc = pick_calculus(calc_flag, file_a);
  if (calc == Calculus::CP) {
    auto e = equiv_check(parse_cp(ta), parse_cp(tb), depth);
    if (!e) {
      std::cout << "not structurally equivalent within depth " << depth << "\n";
      return 1;
    }
    print_equiv_chain(*e, 0);
    return 0;
  }
  auto e = equiv_check(parse_scp(ta), parse_scp(tb), depth);
  if (!e) {
    std::cout << "not structurally equivalent within depth " << depth << "\n";
    return 1;
  }
  print_equiv_chain(*e, 0);
  return 0;
}

int cmd_enumerate(int size, const std::string& calc_flag) {
  auto judgments = enumerate_typed_cp(size);
  for (const auto& j : judgments) {
    if (calc_flag == "scp")
      std::cout << print_judgment(j.ctx, encode(j.proc)) << "\n";
    else
      std::cout << print_judgment(j.ctx, j.proc) << "\n";
  }
  std::cerr << judgments.size() << " judgments\n";
  return 0;
}

int cmd_properties(const std::string& suite, std::uint64_t seed, int count, int exhaustive_size,
                   bool as_json) {
  SuiteConfig cfg;
  cfg.seed = seed;
  cfg.count = count;
  cfg.exhaustive_size = exhaustive_size;
  auto reports = run_suites(suite, cfg);
  bool ok = true;
  if (as_json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
      arr.push_back(report_json(r));
      ok = ok && r.ok();
    }
    std::cout << arr.dump(2) << "\n";
  } else {
    for (const auto& r : reports) {
      ok = ok && r.ok();
      std::cout << r.suite << ": checked " << r.checked << ", violations "
                << r.violations.size() << "\n";
      for (const auto& v : r.violations)
        std::cout << "  " << v.instance << ": " << v.message << "\n";
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scpkit: session-type workbench for classical processes (CP) and their "
               "structural reformulation (SCP)"};
  app.require_subcommand(1);

  std::string file, file_b, calc_flag, lin_list, strategy = "principal-first";
  std::string to, suite = "all", channel;
  bool lin_all_flag = false, as_json = false, with_derivation = false;
  int index = -1, equiv_depth = 2, max_steps = 256, size = 3;
  std::uint64_t seed = default_seed();
  int count = 100, exhaustive_size = 4;

  auto* check = app.add_subcommand("check", "type-check a judgment file");
  check->add_option("file", file)->required();
  check->add_option("--calculus", calc_flag)->check(CLI::IsMember({"cp", "scp"}));
  check->add_option("--lin", lin_list, "comma-separated channels to check linearity for");
  check->add_flag("--lin-all", lin_all_flag, "check linearity for every context name");
  check->add_flag("--json", as_json);

  auto* lin = app.add_subcommand("lin", "check the linearity predicate for one channel");
  lin->add_option("file", file)->required();
  lin->add_option("--channel", channel)->required();

  auto* stp = app.add_subcommand("step", "list or apply one reduction");
  stp->add_option("file", file)->required();
  stp->add_option("--calculus", calc_flag)->check(CLI::IsMember({"cp", "scp"}));
  stp->add_option("--strategy", strategy)->check(CLI::IsMember({"first", "principal-first"}));
  stp->add_option("--index", index, "apply the i-th redex");
  stp->add_option("--equiv-depth", equiv_depth);
  stp->add_flag("--json", as_json);
  bool apply = false;
  stp->add_flag("--apply", apply, "apply per strategy instead of listing");

  auto* norm = app.add_subcommand("normalize", "reduce until stuck or budget exhausted");
  norm->add_option("file", file)->required();
  norm->add_option("--calculus", calc_flag)->check(CLI::IsMember({"cp", "scp"}));
  norm->add_option("--strategy", strategy)->check(CLI::IsMember({"first", "principal-first"}));
  norm->add_option("--max-steps", max_steps);
  norm->add_option("--equiv-depth", equiv_depth);
  norm->add_flag("--json", as_json);

  auto* tr = app.add_subcommand("translate", "apply the CP<->SCP translation");
  tr->add_option("file", file)->required();
  tr->add_option("--to", to)->required()->check(CLI::IsMember({"cp", "scp"}));
  tr->add_flag("--with-derivation", with_derivation);

  auto* eq = app.add_subcommand("equiv", "bounded structural-equivalence search");
  eq->add_option("fileA", file)->required();
  eq->add_option("fileB", file_b)->required();
  eq->add_option("--depth", equiv_depth);
  eq->add_option("--calculus", calc_flag)->check(CLI::IsMember({"cp", "scp"}));

  auto* en = app.add_subcommand("enumerate", "dump enumerated typed judgments");
  en->add_option("--size", size)->required();
  en->add_option("--calculus", calc_flag)->check(CLI::IsMember({"cp", "scp"}));

  auto* props = app.add_subcommand("properties", "run the metatheory suites");
  props->add_option("--suite", suite)
      ->check(CLI::IsMember({"subject-reduction", "adequacy", "lemmas", "all"}));
  props->add_option("--seed", seed);
  props->add_option("--count", count);
  props->add_option("--exhaustive-size", exhaustive_size);
  props->add_flag("--json", as_json);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(file, calc_flag, lin_list, lin_all_flag, as_json);
    if (lin->parsed()) return cmd_lin(file, channel);
    if (stp->parsed()) {
      StepOptions opts{equiv_depth > 0, equiv_depth};
      std::string text = read_input(file);
      if (pick_calculus(calc_flag, file) == Calculus::CP) {
        CpRef p = looks_like_judgment(text) ? parse_cp_judgment(text).second : parse_cp(text);
        return run_step(p, strategy, index, apply, opts, as_json);
      }
      ScpRef p = looks_like_judgment(text) ? parse_scp_judgment(text).second : parse_scp(text);
      return run_step(p, strategy, index, apply, opts, as_json);
    }
    if (norm->parsed()) {
      StepOptions opts{equiv_depth > 0, equiv_depth};
      std::string text = read_input(file);
      if (pick_calculus(calc_flag, file) == Calculus::CP) {
        CpRef p = looks_like_judgment(text) ? parse_cp_judgment(text).second : parse_cp(text);
        return run_normalize(p, strategy, max_steps, opts, as_json);
      }
      ScpRef p = looks_like_judgment(text) ? parse_scp_judgment(text).second : parse_scp(text);
      return run_normalize(p, strategy, max_steps, opts, as_json);
    }
    if (tr->parsed()) return cmd_translate(file, to, with_derivation);
    if (eq->parsed()) return cmd_equiv(file, file_b, equiv_depth, calc_flag);
    if (en->parsed()) return cmd_enumerate(size, calc_flag);
    if (props->parsed()) return cmd_properties(suite, seed, count, exhaustive_size, as_json);
  } catch (const scp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
