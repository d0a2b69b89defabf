#include "sld/apt.hpp"
#include "sld/eval.hpp"
#include "sld/lasso.hpp"
#include "sld/nash.hpp"
#include "sld/textio.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitModel = 3;

bool verbose() {
  const char* v = std::getenv("SLD_VERBOSE");
  return v && std::string(v) != "0";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

struct CommonArgs {
  std::string model_path;
  std::string formula_inline;
  std::string formula_path;
  std::string assign_path;
  std::string goals_path;
  std::string threshold = "";
  std::string cmp = "ge";
  std::string output = "text";
  bool full_enumeration = false;
};

sld::ModelFile load_model(const CommonArgs& args) {
  return sld::parse_model(read_file(args.model_path));
}

sld::FormulaPtr load_formula(const CommonArgs& args, const sld::ModelFile& m) {
  std::string text;
  if (!args.formula_inline.empty())
    text = args.formula_inline;
  else if (!args.formula_path.empty())
    text = read_file(args.formula_path);
  else
    throw std::runtime_error("no formula given; use --formula or --formula-file");
  return sld::parse_formula(text, m.discount_env(), m.cgs.agents);
}

void print_report(const sld::Report& r, const CommonArgs& args) {
  std::cout << (args.output == "kv" ? r.kv() : r.text());
}

sld::Rational parse_threshold(const std::string& text) {
  // exact fractions only; decimals would silently lose exactness
  if (text.find('.') != std::string::npos)
    throw std::runtime_error("threshold must be an exact fraction like 1/1000");
  sld::Rational t = sld::Rational::parse(text);
  if (!t.in_unit_interval())
    throw std::runtime_error("threshold must lie in [0,1]");
  return t;
}

std::string describe_strategy(const sld::Cgs& g, const sld::Strategy& s) {
  std::string out;
  for (size_t p = 0; p < s.choice.size(); ++p) {
    if (p)
      out += " ";
    out += g.positions[p] + "->" + g.actions[static_cast<size_t>(s.choice[p])];
  }
  return out;
}

int run_eval(const CommonArgs& args) {
  sld::ModelFile m = load_model(args);
  sld::FormulaPtr f = load_formula(args, m);
  sld::Assignment chi;
  std::vector<std::string> notes;
  if (!args.assign_path.empty())
    std::tie(chi, notes) = sld::parse_assignment(read_file(args.assign_path), m.cgs);
  for (const auto& name : sld::free_names(f, m.cgs.agents))
    if (!chi.count(name))
      throw std::runtime_error("formula has free name '" + name +
                               "'; provide it with --assign");
  sld::EvalOptions opt;
  opt.full_enumeration = args.full_enumeration;
  sld::Rational v = sld::eval(m.cgs, chi, m.cgs.initial, f, opt);
  sld::Report r;
  r.query = sld::render_formula(f);
  r.value = v;
  r.notes = notes;
  print_report(r, args);
  return kExitTrue;
}

int run_check(const CommonArgs& args) {
  sld::ModelFile m = load_model(args);
  sld::FormulaPtr f = load_formula(args, m);
  sld::Rational theta = parse_threshold(args.threshold);
  sld::ThresholdCmp cmp = args.cmp == "gt" ? sld::ThresholdCmp::Greater
                                           : sld::ThresholdCmp::GreaterEqual;
  sld::EvalOptions opt;
  opt.full_enumeration = args.full_enumeration;
  auto [ok, report] = sld::check_threshold(m.cgs, f, theta, cmp, opt);
  print_report(report, args);
  return ok ? kExitTrue : kExitFalse;
}

int run_ne_check(const CommonArgs& args) {
  sld::ModelFile m = load_model(args);
  sld::GoalProfile goals{sld::parse_goals(read_file(args.goals_path), m)};
  auto [chi, notes] = sld::parse_assignment(read_file(args.assign_path), m.cgs);
  sld::StrategyProfile profile;
  for (const auto& agent : m.cgs.agents) {
    auto it = chi.find(agent);
    if (it == chi.end())
      throw std::runtime_error("assignment misses agent '" + agent + "'");
    profile[agent] = it->second;
  }
  sld::EvalOptions opt;
  opt.full_enumeration = args.full_enumeration;
  auto [ok, w] = sld::check_ne_direct(m.cgs, profile, goals, opt);
  if (args.output == "kv") {
    std::cout << "ne=" << (ok ? "true" : "false") << "\n";
    for (const auto& agent : m.cgs.agents) {
      std::cout << "value_" << agent << "=" << w.value.at(agent).str() << "\n";
      std::cout << "deviation_" << agent << "=" << w.best_deviation.at(agent).str()
                << "\n";
    }
  } else {
    std::cout << "nash equilibrium: " << (ok ? "yes" : "no") << "\n";
    for (const auto& agent : m.cgs.agents) {
      std::cout << "  " << agent << ": value " << w.value.at(agent).str()
                << ", best deviation " << w.best_deviation.at(agent).str();
      if (w.best_deviation.at(agent) > w.value.at(agent))
        std::cout << " via " << describe_strategy(m.cgs, w.best_deviation_strategy.at(agent));
      std::cout << "\n";
    }
    for (const auto& n : notes)
      std::cout << "note: " << n << "\n";
  }
  return ok ? kExitTrue : kExitFalse;
}

int run_ne_find(const CommonArgs& args) {
  sld::ModelFile m = load_model(args);
  sld::GoalProfile goals{sld::parse_goals(read_file(args.goals_path), m)};
  sld::EvalOptions opt;
  opt.full_enumeration = args.full_enumeration;
  auto found = sld::find_ne(m.cgs, goals, opt);
  if (!found) {
    std::cout << (args.output == "kv" ? "ne=none\n" : "no memoryless equilibrium\n");
    return kExitFalse;
  }
  const auto& [profile, w] = *found;
  if (args.output == "kv") {
    std::cout << "ne=found\n";
    for (const auto& agent : m.cgs.agents) {
      std::cout << "strategy_" << agent << "="
                << describe_strategy(m.cgs, profile.at(agent)) << "\n";
      std::cout << "value_" << agent << "=" << w.value.at(agent).str() << "\n";
    }
  } else {
    std::cout << "equilibrium found\n";
    for (const auto& agent : m.cgs.agents)
      std::cout << "  strategy " << agent << ": "
                << describe_strategy(m.cgs, profile.at(agent)) << "  (value "
                << w.value.at(agent).str() << ")\n";
  }
  return kExitTrue;
}

int run_apt_build(const CommonArgs& args) {
  sld::ModelFile m = load_model(args);
  sld::FormulaPtr f = load_formula(args, m);
  sld::Rational theta = parse_threshold(args.threshold);
  sld::Apt a = sld::build_apt(f, theta, m.cgs);
  std::cout << a.dump();
  std::cout << "state-count: " << a.states.size() << "\n";
  return kExitTrue;
}

int run_apt_member(const CommonArgs& args) {
  sld::ModelFile m = load_model(args);
  sld::FormulaPtr f = load_formula(args, m);
  sld::Rational theta = parse_threshold(args.threshold);
  auto [chi, notes] = sld::parse_assignment(read_file(args.assign_path), m.cgs);
  sld::Apt a = sld::build_apt(f, theta, m.cgs);
  bool accept = sld::apt_membership(a, m.cgs, chi, m.cgs.initial);
  if (args.output == "kv") {
    std::cout << "membership=" << (accept ? "accept" : "reject") << "\n";
    for (const auto& n : notes)
      std::cout << "note=" << n << "\n";
  } else {
    std::cout << (accept ? "accept" : "reject") << "\n";
    for (const auto& n : notes)
      std::cout << "note: " << n << "\n";
  }
  return accept ? kExitTrue : kExitFalse;
}

int run_gen(const std::string& which, const std::string& out_path,
            const std::string& goals_out, const std::string& ne_formula_out) {
  sld::ModelFile m;
  sld::GoalProfile goals;
  if (which == "secretary") {
    m = sld::gen_secretary();
    goals = sld::secretary_goals(m);
  } else if (which == "negotiation") {
    m = sld::gen_negotiation();
    goals = sld::negotiation_goals(m);
  } else {
    throw std::runtime_error("unknown case study '" + which +
                             "'; expected secretary or negotiation");
  }
  write_file(out_path, sld::serialize_model(m));
  if (!goals_out.empty()) {
    std::string text;
    for (const auto& agent : m.cgs.agents)
      text += "goal " + agent + ": " + sld::render_formula(goals.goals.at(agent)) + "\n";
    write_file(goals_out, text);
  }
  if (!ne_formula_out.empty())
    write_file(ne_formula_out,
               sld::render_formula(sld::ne_existence_formula(m.cgs, goals)) + "\n");
  return kExitTrue;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact model checker for strategy logic with discounting"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string gen_which, gen_out, gen_goals_out, gen_ne_out;

  enum class Assign { None, Optional, Required };
  auto add_common = [&](CLI::App* cmd, bool needs_formula, bool needs_threshold,
                        Assign assign, bool needs_goals) {
    cmd->add_option("--model", args.model_path, "model file")->required();
    if (needs_formula) {
      cmd->add_option("--formula", args.formula_inline, "formula text");
      cmd->add_option("--formula-file", args.formula_path, "formula file");
    }
    if (needs_threshold)
      cmd->add_option("--threshold", args.threshold, "exact fraction p/q")->required();
    if (assign != Assign::None)
      cmd->add_option("--assign", args.assign_path, "assignment file")
          ->required(assign == Assign::Required);
    if (needs_goals)
      cmd->add_option("--goals", args.goals_path, "goals file")->required();
    cmd->add_option("--output", args.output, "text or kv")
        ->check(CLI::IsMember({"text", "kv"}));
    cmd->add_flag("--full-enumeration", args.full_enumeration,
                  "enumerate strategies over every position");
  };

  CLI::App* c_eval = app.add_subcommand("eval", "satisfaction value at the initial position");
  add_common(c_eval, true, false, Assign::Optional, false);
  CLI::App* c_check = app.add_subcommand("check", "threshold model checking");
  add_common(c_check, true, true, Assign::None, false);
  c_check->add_option("--cmp", args.cmp, "ge or gt")->check(CLI::IsMember({"ge", "gt"}));
  CLI::App* c_nec = app.add_subcommand("ne-check", "check a profile for Nash equilibrium");
  add_common(c_nec, false, false, Assign::Required, true);
  CLI::App* c_nef = app.add_subcommand("ne-find", "search for a Nash equilibrium");
  add_common(c_nef, false, false, Assign::None, true);
  CLI::App* c_ab = app.add_subcommand("apt-build", "build and dump the parity automaton");
  add_common(c_ab, true, true, Assign::None, false);
  CLI::App* c_am = app.add_subcommand("apt-member", "automaton membership for an assignment");
  add_common(c_am, true, true, Assign::Required, false);

  CLI::App* c_gen = app.add_subcommand("gen", "write a case-study model");
  c_gen->add_option("case", gen_which, "secretary or negotiation")->required();
  c_gen->add_option("--out", gen_out, "model output path")->required();
  c_gen->add_option("--goals-out", gen_goals_out, "goals output path");
  c_gen->add_option("--ne-formula-out", gen_ne_out, "NE existence formula output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      app.exit(e);
      return kExitTrue;
    }
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  auto started = std::chrono::steady_clock::now();
  int rc = kExitUsage;
  try {
    if (c_eval->parsed())
      rc = run_eval(args);
    else if (c_check->parsed())
      rc = run_check(args);
    else if (c_nec->parsed())
      rc = run_ne_check(args);
    else if (c_nef->parsed())
      rc = run_ne_find(args);
    else if (c_ab->parsed())
      rc = run_apt_build(args);
    else if (c_am->parsed())
      rc = run_apt_member(args);
    else if (c_gen->parsed())
      rc = run_gen(gen_which, gen_out, gen_goals_out, gen_ne_out);
  } catch (const sld::ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitModel;
  } catch (const sld::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (verbose()) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - started)
                  .count();
    std::cerr << "[sld] completed in " << ms << " ms\n";
  }
  return rc;
}
