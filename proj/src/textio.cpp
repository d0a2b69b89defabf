#include "sld/textio.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace sld {

// ---------------------------------------------------------------------------
// Report rendering
// ---------------------------------------------------------------------------

std::string Report::text() const {
  std::ostringstream os;
  if (!query.empty())
    os << "query: " << query << "\n";
  os << "value = " << value.str();
  std::ostringstream approx;
  approx.precision(6);
  approx << value.approx();
  if (value.denominator() != 1)
    os << " (~" << approx.str() << ")";
  os << "\n";
  if (verdict)
    os << "verdict: " << (*verdict ? "true" : "false") << "\n";
  if (!witness.empty())
    os << "witness: " << witness << "\n";
  for (const auto& n : notes)
    os << "note: " << n << "\n";
  return os.str();
}

std::string Report::kv() const {
  std::ostringstream os;
  os << "value=" << value.str() << "\n";
  if (verdict)
    os << "verdict=" << (*verdict ? "true" : "false") << "\n";
  if (!witness.empty())
    os << "witness=" << witness << "\n";
  for (const auto& n : notes)
    os << "note=" << n << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Formula lexer
// ---------------------------------------------------------------------------

namespace {

struct Token {
  enum class Type { Ident, Bang, Pipe, Amp, Arrow, LParen, RParen, LBracket, RBracket,
                    Dot, Comma, Semi, End };
  Type type;
  std::string text;
  int line;
  int col;
};

std::vector<Token> lex_formula(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Token::Type t, std::string s, int l, int c) {
    out.push_back(Token{t, std::move(s), l, c});
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < text.size() && text[i] != '\n')
        ++i;
      continue;
    }
    int tl = line, tc = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      push(Token::Type::Ident, text.substr(i, j - i), tl, tc);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    switch (c) {
      case '!': push(Token::Type::Bang, "!", tl, tc); break;
      case '|': push(Token::Type::Pipe, "|", tl, tc); break;
      case '&': push(Token::Type::Amp, "&", tl, tc); break;
      case '(': push(Token::Type::LParen, "(", tl, tc); break;
      case ')': push(Token::Type::RParen, ")", tl, tc); break;
      case '[': push(Token::Type::LBracket, "[", tl, tc); break;
      case ']': push(Token::Type::RBracket, "]", tl, tc); break;
      case '.': push(Token::Type::Dot, ".", tl, tc); break;
      case ',': push(Token::Type::Comma, ",", tl, tc); break;
      case ';': push(Token::Type::Semi, ";", tl, tc); break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          push(Token::Type::Arrow, "->", tl, tc);
          ++i;
          ++col;
          break;
        }
        throw ParseError(tl, tc, "stray '-'");
      default:
        throw ParseError(tl, tc, std::string("unexpected character '") + c + "'");
    }
    ++i;
    ++col;
  }
  out.push_back(Token{Token::Type::End, "", line, col});
  return out;
}

// ---------------------------------------------------------------------------
// Formula parser
// ---------------------------------------------------------------------------

class FormulaParser {
public:
  FormulaParser(std::vector<Token> toks, const std::map<std::string, DiscountFn>& discounts,
                const std::vector<std::string>& agents)
      : toks_(std::move(toks)), discounts_(discounts), agents_(agents) {}

  FormulaPtr run() {
    FormulaPtr f = parse_implies();
    expect(Token::Type::End, "end of input");
    return f;
  }

private:
  const Token& peek(size_t k = 0) const {
    size_t i = pos_ + k;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& next() { return toks_[pos_++]; }
  bool at(Token::Type t) const { return peek().type == t; }
  bool at_ident(const char* s) const {
    return peek().type == Token::Type::Ident && peek().text == s;
  }
  const Token& expect(Token::Type t, const char* what) {
    if (!at(t))
      throw ParseError(peek().line, peek().col,
                       std::string("expected ") + what + ", got '" + peek().text + "'");
    return next();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(peek().line, peek().col, msg);
  }

  void check_variable(const Token& var) const {
    if (std::find(agents_.begin(), agents_.end(), var.text) != agents_.end())
      throw ParseError(var.line, var.col,
                       "strategy variable '" + var.text + "' collides with an agent name");
  }

  const DiscountFn& discount_ref(const Token& t) {
    auto it = discounts_.find(t.text);
    if (it == discounts_.end())
      throw ParseError(t.line, t.col, "unknown discount name '" + t.text + "'");
    return it->second;
  }

  // `U[name]`, `F[name]`, `G[name]` suffix
  std::pair<const DiscountFn*, std::string> optional_discount() {
    if (!at(Token::Type::LBracket))
      return {nullptr, ""};
    next();
    const Token& name = expect(Token::Type::Ident, "discount name");
    expect(Token::Type::RBracket, "']'");
    return {&discount_ref(name), name.text};
  }

  FormulaPtr parse_implies() {
    FormulaPtr lhs = parse_or();
    if (at(Token::Type::Arrow)) {
      next();
      return f_implies(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  FormulaPtr parse_or() {
    FormulaPtr lhs = parse_and();
    while (at(Token::Type::Pipe)) {
      next();
      lhs = f_or(std::move(lhs), parse_and());
    }
    return lhs;
  }

  FormulaPtr parse_and() {
    FormulaPtr lhs = parse_until();
    while (at(Token::Type::Amp)) {
      next();
      lhs = f_and(std::move(lhs), parse_until());
    }
    return lhs;
  }

  FormulaPtr parse_until() {
    FormulaPtr lhs = parse_unary();
    if (at_ident("U")) {
      next();
      auto [d, dn] = optional_discount();
      FormulaPtr rhs = parse_until();  // right-associative
      if (d)
        return f_until_d(*d, dn, std::move(lhs), std::move(rhs));
      return f_until(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  FormulaPtr parse_unary() {
    if (at(Token::Type::Bang)) {
      next();
      return f_not(parse_unary());
    }
    if (at(Token::Type::LParen))
      return parse_paren_or_binding();
    if (!at(Token::Type::Ident))
      fail("expected a formula");
    const Token& t = next();
    const std::string& w = t.text;
    if (w == "X")
      return f_next(parse_unary());
    if (w == "F") {
      auto [d, dn] = optional_discount();
      FormulaPtr body = parse_unary();
      return d ? f_eventually_d(*d, dn, std::move(body)) : f_eventually(std::move(body));
    }
    if (w == "G") {
      auto [d, dn] = optional_discount();
      FormulaPtr body = parse_unary();
      return d ? f_globally_d(*d, dn, std::move(body)) : f_globally(std::move(body));
    }
    if (w == "E" || w == "A") {
      const Token& var = expect(Token::Type::Ident, "strategy variable");
      check_variable(var);
      expect(Token::Type::Dot, "'.'");
      FormulaPtr body = parse_implies();  // quantifiers extend maximally right
      return w == "E" ? f_exists(var.text, std::move(body))
                      : f_forall(var.text, std::move(body));
    }
    if (w == "true")
      return f_true();
    if (w == "false")
      return f_false();
    return f_atom(w);
  }

  FormulaPtr parse_paren_or_binding() {
    const Token& open = expect(Token::Type::LParen, "'('");
    // (agent, var) body  |  (Ag; x1,...,xn) body  |  (formula)
    if (peek().type == Token::Type::Ident && peek(1).type == Token::Type::Comma &&
        peek(2).type == Token::Type::Ident && peek(3).type == Token::Type::RParen) {
      const Token& agent = next();
      next();  // comma
      const Token& var = next();
      next();  // rparen
      if (std::find(agents_.begin(), agents_.end(), agent.text) == agents_.end())
        throw ParseError(agent.line, agent.col,
                         "unknown agent '" + agent.text + "' in binding");
      check_variable(var);
      return f_bind(agent.text, var.text, parse_implies());
    }
    if (at_ident("Ag") && peek(1).type == Token::Type::Semi) {
      next();
      next();
      std::vector<Token> vars;
      vars.push_back(expect(Token::Type::Ident, "strategy variable"));
      check_variable(vars.back());
      while (at(Token::Type::Comma)) {
        next();
        vars.push_back(expect(Token::Type::Ident, "strategy variable"));
        check_variable(vars.back());
      }
      expect(Token::Type::RParen, "')'");
      if (vars.size() != agents_.size())
        throw ParseError(open.line, open.col,
                         "group binding lists " + std::to_string(vars.size()) +
                             " variables for " + std::to_string(agents_.size()) +
                             " agents");
      FormulaPtr body = parse_implies();
      for (size_t i = agents_.size(); i-- > 0;)
        body = f_bind(agents_[i], vars[i].text, std::move(body));
      return body;
    }
    FormulaPtr inner = parse_implies();
    expect(Token::Type::RParen, "')'");
    return inner;
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  const std::map<std::string, DiscountFn>& discounts_;
  const std::vector<std::string>& agents_;
};

}  // namespace

FormulaPtr parse_formula(const std::string& text,
                         const std::map<std::string, DiscountFn>& discounts,
                         const std::vector<std::string>& agents) {
  FormulaParser p(lex_formula(text), discounts, agents);
  return p.run();
}

// ---------------------------------------------------------------------------
// Formula rendering
// ---------------------------------------------------------------------------

namespace {

// Rendering works with effective binding levels:
//   6 atoms, 5 prefix (!, X), 4 until, 2 or, 0 quantifier/binding bodies.
// Operands below a slot's level get parenthesized, which also closes the
// open right end of quantifier bodies.
struct Rendered {
  std::string text;
  int level;
};

Rendered render(const FormulaPtr& f);

std::string child(const FormulaPtr& f, int min_level) {
  Rendered r = render(f);
  if (r.level < min_level)
    return "(" + r.text + ")";
  return r.text;
}

Rendered render(const FormulaPtr& f) {
  using K = Formula::Kind;
  switch (f->kind) {
    case K::Atom:
      return {f->name, 6};
    case K::True:
      return {"true", 6};
    case K::False:
      return {"false", 6};
    case K::Not:
      return {"!" + child(f->lhs, 5), 5};
    case K::Next:
      return {"X " + child(f->lhs, 5), 5};
    case K::Or:
      return {child(f->lhs, 2) + " | " + child(f->rhs, 3), 2};
    case K::Until:
      return {child(f->lhs, 5) + " U " + child(f->rhs, 4), 4};
    case K::UntilDisc: {
      if (f->discount_name.empty())
        throw std::logic_error("render_formula: discounted until without a declared name");
      return {child(f->lhs, 5) + " U[" + f->discount_name + "] " + child(f->rhs, 4), 4};
    }
    case K::Exists:
      return {"E " + f->name + " . " + render(f->lhs).text, 0};
    case K::Bind:
      return {"(" + f->name + "," + f->var + ") " + render(f->lhs).text, 0};
  }
  throw std::logic_error("render_formula: bad kind");
}

}  // namespace

std::string render_formula(const FormulaPtr& f) { return render(f).text; }

// ---------------------------------------------------------------------------
// Model file parsing
// ---------------------------------------------------------------------------

namespace {

struct Word {
  std::string text;
  int col;  // 1-based
};

std::vector<Word> split_line(const std::string& line) {
  std::vector<Word> words;
  size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == '#')
      break;
    size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
           line[j] != '#')
      ++j;
    words.push_back(Word{line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return words;
}

Rational parse_rational_word(const Word& w, int line) {
  try {
    return Rational::parse(w.text);
  } catch (const std::invalid_argument&) {
    throw ParseError(line, w.col, "expected a rational, got '" + w.text + "'");
  }
}

class DiscountExprParser {
public:
  DiscountExprParser(const std::vector<Word>& words, size_t start, int line,
                     const std::vector<std::pair<std::string, DiscountFn>>& env)
      : words_(words), i_(start), line_(line), env_(env) {}

  DiscountFn run() {
    DiscountFn d = parse();
    if (i_ != words_.size())
      throw ParseError(line_, words_[i_].col,
                       "trailing tokens after discount expression");
    return d;
  }

private:
  const Word& take(const char* what) {
    if (i_ >= words_.size())
      throw ParseError(line_, words_.empty() ? 1 : words_.back().col,
                       std::string("expected ") + what);
    return words_[i_++];
  }

  DiscountFn parse() {
    const Word& w = take("a discount expression");
    try {
      if (w.text == "hyp")
        return DiscountFn::hyperbolic();
      if (w.text == "exp")
        return DiscountFn::exponential(parse_rational_word(take("a base"), line_));
      if (w.text == "scale") {
        Rational factor = parse_rational_word(take("a factor"), line_);
        return DiscountFn::scaled(factor, parse());
      }
      if (w.text == "shift") {
        const Word& k = take("a shift amount");
        unsigned long shift = 0;
        try {
          shift = std::stoul(k.text);
        } catch (...) {
          throw ParseError(line_, k.col, "expected a nonnegative shift, got '" + k.text + "'");
        }
        return parse().shift(shift);
      }
      if (w.text == "table") {
        std::vector<Rational> entries;
        while (i_ < words_.size() && words_[i_].text != "then")
          entries.push_back(parse_rational_word(take("a table entry"), line_));
        if (i_ >= words_.size())
          throw ParseError(line_, w.col, "table needs 'then <tail>'");
        ++i_;  // then
        DiscountFn tail = parse();
        return DiscountFn::table_then_tail(std::move(entries), tail);
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_, w.col, e.what());
    }
    for (const auto& [name, d] : env_)
      if (name == w.text)
        return d;
    throw ParseError(line_, w.col, "unknown discount name '" + w.text + "'");
  }

  const std::vector<Word>& words_;
  size_t i_;
  int line_;
  const std::vector<std::pair<std::string, DiscountFn>>& env_;
};

}  // namespace

ModelFile parse_model(const std::string& text) {
  ModelFile m;
  Cgs& g = m.cgs;
  bool have_agents = false, have_actions = false, have_positions = false;
  std::string init_name;
  int init_line = 0, init_col = 0;
  struct PendingLabel { std::string pos; std::vector<Word> props; int line; };
  struct PendingTrans { std::vector<Word> words; int line; };
  std::vector<PendingLabel> labels;
  std::vector<PendingTrans> transitions;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto require_unique = [](const std::vector<Word>& ws, size_t from, int lineno) {
    for (size_t i = from; i < ws.size(); ++i)
      for (size_t j = i + 1; j < ws.size(); ++j)
        if (ws[i].text == ws[j].text)
          throw ParseError(lineno, ws[j].col, "duplicate name '" + ws[j].text + "'");
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<Word> ws = split_line(line);
    if (ws.empty())
      continue;
    const std::string& head = ws[0].text;
    if (head == "agents") {
      if (have_agents)
        throw ParseError(lineno, ws[0].col, "agents declared twice");
      if (ws.size() < 2)
        throw ParseError(lineno, ws[0].col, "agents line needs at least one name");
      require_unique(ws, 1, lineno);
      for (size_t i = 1; i < ws.size(); ++i)
        g.agents.push_back(ws[i].text);
      have_agents = true;
    } else if (head == "actions") {
      if (have_actions)
        throw ParseError(lineno, ws[0].col, "actions declared twice");
      if (ws.size() < 2)
        throw ParseError(lineno, ws[0].col, "actions line needs at least one name");
      require_unique(ws, 1, lineno);
      for (size_t i = 1; i < ws.size(); ++i)
        g.actions.push_back(ws[i].text);
      have_actions = true;
    } else if (head == "positions") {
      if (have_positions)
        throw ParseError(lineno, ws[0].col, "positions declared twice");
      if (ws.size() < 2)
        throw ParseError(lineno, ws[0].col, "positions line needs at least one name");
      require_unique(ws, 1, lineno);
      for (size_t i = 1; i < ws.size(); ++i)
        g.positions.push_back(ws[i].text);
      have_positions = true;
    } else if (head == "init") {
      if (!init_name.empty())
        throw ParseError(lineno, ws[0].col, "init declared twice");
      if (ws.size() != 2)
        throw ParseError(lineno, ws[0].col, "init line needs exactly one position");
      init_name = ws[1].text;
      init_line = lineno;
      init_col = ws[1].col;
    } else if (head == "label") {
      if (ws.size() < 2)
        throw ParseError(lineno, ws[0].col, "label line needs a position");
      PendingLabel pl;
      pl.pos = ws[1].text;
      pl.line = lineno;
      pl.props.assign(ws.begin() + 2, ws.end());
      labels.push_back(std::move(pl));
    } else if (head == "discount") {
      if (ws.size() < 4 || ws[2].text != "=")
        throw ParseError(lineno, ws[0].col, "discount line needs 'discount <name> = <expr>'");
      const std::string& name = ws[1].text;
      if (m.find_discount(name))
        throw ParseError(lineno, ws[1].col, "duplicate discount name '" + name + "'");
      DiscountExprParser dp(ws, 3, lineno, m.discounts);
      m.discounts.emplace_back(name, dp.run());
    } else if (head == "trans") {
      transitions.push_back(PendingTrans{ws, lineno});
    } else {
      throw ParseError(lineno, ws[0].col, "unknown directive '" + head + "'");
    }
  }

  if (!have_agents)
    throw ParseError(lineno, 1, "missing agents declaration");
  if (!have_actions)
    throw ParseError(lineno, 1, "missing actions declaration");
  if (!have_positions)
    throw ParseError(lineno, 1, "missing positions declaration");

  g.labels.assign(g.positions.size(), {});
  for (const auto& pl : labels) {
    int p = g.position_index(pl.pos);
    if (p < 0)
      throw ParseError(pl.line, 1, "label references unknown position '" + pl.pos + "'");
    for (const auto& w : pl.props)
      g.labels[static_cast<size_t>(p)].insert(w.text);
  }

  if (init_name.empty())
    throw ParseError(lineno, 1, "missing init declaration");
  g.initial = g.position_index(init_name);
  if (g.initial < 0)
    throw ParseError(init_line, init_col, "init references unknown position '" + init_name + "'");

  size_t profiles = g.profile_count();
  g.transition.assign(g.positions.size() * profiles, -1);
  size_t n_agents = g.agents.size();
  for (const auto& pt : transitions) {
    const auto& ws = pt.words;
    // trans <pos> <action>{n} -> <pos>
    if (ws.size() != n_agents + 4)
      throw ParseError(pt.line, ws[0].col,
                       "trans line needs one action per agent (" +
                           std::to_string(n_agents) + "), then '-> <position>'");
    if (ws[1 + n_agents + 1].text != "->")
      throw ParseError(pt.line, ws[1 + n_agents + 1].col, "expected '->'");
    int src = g.position_index(ws[1].text);
    if (src < 0)
      throw ParseError(pt.line, ws[1].col, "unknown position '" + ws[1].text + "'");
    std::vector<int> profile(n_agents);
    for (size_t a = 0; a < n_agents; ++a) {
      int act = g.action_index(ws[2 + a].text);
      if (act < 0)
        throw ParseError(pt.line, ws[2 + a].col, "unknown action '" + ws[2 + a].text + "'");
      profile[a] = act;
    }
    int dst = g.position_index(ws.back().text);
    if (dst < 0)
      throw ParseError(pt.line, ws.back().col, "unknown position '" + ws.back().text + "'");
    size_t code = g.profile_code(profile);
    if (g.target(src, code) != -1)
      throw ParseError(pt.line, ws[1].col, "duplicate transition for " + ws[1].text);
    g.set_target(src, code, dst);
  }

  std::vector<std::string> defects = validate_cgs(g);
  if (!defects.empty())
    throw ModelError(std::move(defects));
  return m;
}

std::string serialize_model(const ModelFile& m) {
  const Cgs& g = m.cgs;
  std::ostringstream os;
  auto emit_names = [&os](const char* head, const std::vector<std::string>& names) {
    os << head;
    for (const auto& n : names)
      os << " " << n;
    os << "\n";
  };
  emit_names("agents", g.agents);
  emit_names("actions", g.actions);
  emit_names("positions", g.positions);
  os << "init " << g.positions[static_cast<size_t>(g.initial)] << "\n";
  for (size_t p = 0; p < g.positions.size(); ++p) {
    if (g.labels[p].empty())
      continue;
    os << "label " << g.positions[p];
    for (const auto& prop : g.labels[p])
      os << " " << prop;
    os << "\n";
  }
  for (const auto& [name, d] : m.discounts)
    os << "discount " << name << " = " << d.str() << "\n";
  size_t profiles = g.profile_count();
  for (size_t p = 0; p < g.positions.size(); ++p) {
    for (size_t code = 0; code < profiles; ++code) {
      os << "trans " << g.positions[p];
      size_t rest = code;
      std::vector<int> acts(g.agents.size());
      for (size_t a = g.agents.size(); a-- > 0;) {
        acts[a] = static_cast<int>(rest % g.actions.size());
        rest /= g.actions.size();
      }
      for (int act : acts)
        os << " " << g.actions[static_cast<size_t>(act)];
      os << " -> " << g.positions[static_cast<size_t>(g.target(static_cast<int>(p), code))]
         << "\n";
    }
  }
  return os.str();
}

std::pair<Assignment, std::vector<std::string>> parse_assignment(const std::string& text,
                                                                 const Cgs& g) {
  Assignment chi;
  std::vector<std::string> notes;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<Word> ws = split_line(line);
    if (ws.empty())
      continue;
    if (ws[0].text != "strategy")
      throw ParseError(lineno, ws[0].col, "expected 'strategy <name>: ...'");
    if (ws.size() < 2)
      throw ParseError(lineno, ws[0].col, "strategy line needs a name");
    std::string name = ws[1].text;
    if (name.empty() || name.back() != ':')
      throw ParseError(lineno, ws[1].col, "strategy name must end with ':'");
    name.pop_back();
    if (chi.count(name))
      throw ParseError(lineno, ws[1].col, "duplicate strategy for '" + name + "'");
    Strategy s;
    s.choice.assign(g.positions.size(), -1);
    for (size_t i = 2; i < ws.size(); ++i) {
      const std::string& entry = ws[i].text;
      auto arrow = entry.find("->");
      if (arrow == std::string::npos)
        throw ParseError(lineno, ws[i].col, "expected '<position>-><action>'");
      int p = g.position_index(entry.substr(0, arrow));
      if (p < 0)
        throw ParseError(lineno, ws[i].col,
                         "unknown position '" + entry.substr(0, arrow) + "'");
      int a = g.action_index(entry.substr(arrow + 2));
      if (a < 0)
        throw ParseError(lineno, ws[i].col,
                         "unknown action '" + entry.substr(arrow + 2) + "'");
      s.choice[static_cast<size_t>(p)] = a;
    }
    std::string defaulted;
    for (size_t p = 0; p < s.choice.size(); ++p) {
      if (s.choice[p] < 0) {
        s.choice[p] = 0;
        defaulted += (defaulted.empty() ? "" : " ") + g.positions[p];
      }
    }
    if (!defaulted.empty())
      notes.push_back("strategy " + name + " defaults to action '" + g.actions[0] +
                      "' at: " + defaulted);
    chi.emplace(std::move(name), std::move(s));
  }
  return {chi, notes};
}

std::map<std::string, FormulaPtr> parse_goals(const std::string& text, const ModelFile& m) {
  std::map<std::string, FormulaPtr> goals;
  auto env = m.discount_env();
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<Word> ws = split_line(line);
    if (ws.empty())
      continue;
    if (ws[0].text != "goal")
      throw ParseError(lineno, ws[0].col, "expected 'goal <agent>: <formula>'");
    if (ws.size() < 3)
      throw ParseError(lineno, ws[0].col, "goal line needs an agent and a formula");
    std::string agent = ws[1].text;
    if (agent.empty() || agent.back() != ':')
      throw ParseError(lineno, ws[1].col, "agent name must end with ':'");
    agent.pop_back();
    if (m.cgs.agent_index(agent) < 0)
      throw ParseError(lineno, ws[1].col, "unknown agent '" + agent + "'");
    if (goals.count(agent))
      throw ParseError(lineno, ws[1].col, "duplicate goal for '" + agent + "'");
    size_t off = line.find(ws[2].text, static_cast<size_t>(ws[2].col) - 1);
    FormulaPtr f;
    try {
      f = parse_formula(line.substr(off), env, m.cgs.agents);
    } catch (const ParseError& e) {
      throw ParseError(lineno, e.col + static_cast<int>(off), e.what());
    }
    if (!is_ltld(f))
      throw ParseError(lineno, ws[2].col,
                       "goal formulas must be quantifier- and binding-free");
    goals.emplace(std::move(agent), std::move(f));
  }
  return goals;
}

}  // namespace sld
