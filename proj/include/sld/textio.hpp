#pragma once

#include "sld/cgs.hpp"
#include "sld/discount.hpp"
#include "sld/formula.hpp"
#include "sld/rational.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sld {

// Located parse failure (1-based line/column).
struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(int l, int c, const std::string& msg)
      : std::runtime_error("line " + std::to_string(l) + ", col " + std::to_string(c) +
                           ": " + msg),
        line(l),
        col(c) {}
};

// CGS invariant violations, reported as a batch.
struct ModelError : std::runtime_error {
  std::vector<std::string> defects;
  explicit ModelError(std::vector<std::string> d)
      : std::runtime_error(join(d)), defects(std::move(d)) {}

private:
  static std::string join(const std::vector<std::string>& d) {
    std::string s = "model validation failed:";
    for (const auto& e : d)
      s += "\n  " + e;
    return s;
  }
};

// A parsed model file: named discount declarations plus the game.
struct ModelFile {
  std::vector<std::pair<std::string, DiscountFn>> discounts;  // declaration order
  Cgs cgs;

  const DiscountFn* find_discount(const std::string& name) const {
    for (const auto& [n, d] : discounts)
      if (n == name)
        return &d;
    return nullptr;
  }

  std::map<std::string, DiscountFn> discount_env() const {
    std::map<std::string, DiscountFn> env;
    for (const auto& [n, d] : discounts)
      env.emplace(n, d);
    return env;
  }
};

// Query result. The decimal rendering is display-only; verdicts always
// come from exact comparisons.
struct Report {
  std::string query;
  Rational value;
  std::optional<bool> verdict;
  std::string witness;
  std::vector<std::string> notes;

  std::string text() const;
  std::string kv() const;
};

// Line-oriented model format; see the shipped case-study files. Throws
// ParseError for syntax problems and ModelError when the parsed CGS
// violates an invariant (missing transitions, bad initial position, ...).
ModelFile parse_model(const std::string& text);

// Renders a ModelFile back into the line format (gen writes these).
std::string serialize_model(const ModelFile& m);

// SL[D] formula surface syntax. Sugar (&, ->, F, G, F[d], G[d], A x.,
// group bindings) is desugared at parse time. Discount references resolve
// against `discounts`; bindings are checked against `agents`.
FormulaPtr parse_formula(const std::string& text,
                         const std::map<std::string, DiscountFn>& discounts,
                         const std::vector<std::string>& agents);

// Renders the desugared core; parse_formula(render_formula(f)) is
// structurally equal to f.
std::string render_formula(const FormulaPtr& f);

// Assignment files: one `strategy <name>: q0->a q1->b ...` line per
// strategy. Positions not listed default to the first declared action;
// the returned notes name each defaulted position so reports can echo
// them.
std::pair<Assignment, std::vector<std::string>> parse_assignment(const std::string& text,
                                                                 const Cgs& g);

// Goal files for the equilibrium commands: `goal <agent>: <formula>`.
std::map<std::string, FormulaPtr> parse_goals(const std::string& text, const ModelFile& m);

}  // namespace sld
