// Copyright 2026 The ucit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ucit/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ucit {

namespace {

// --- tokenizer -------------------------------------------------------------

enum class TokKind : std::uint8_t {
  Ident, Eq, Bang, AndAnd, OrOr, Arrow, IffOp, LParen, RParen, Comma, Colon, End,
};

struct Token {
  TokKind kind;
  std::string text;
  int col;  // 1-based within the source line
};

const char* tok_name(TokKind k) {
  switch (k) {
    case TokKind::Ident: return "identifier";
    case TokKind::Eq: return "'='";
    case TokKind::Bang: return "'!'";
    case TokKind::AndAnd: return "'&&'";
    case TokKind::OrOr: return "'||'";
    case TokKind::Arrow: return "'->'";
    case TokKind::IffOp: return "'<->'";
    case TokKind::LParen: return "'('";
    case TokKind::RParen: return "')'";
    case TokKind::Comma: return "','";
    case TokKind::Colon: return "':'";
    case TokKind::End: return "end of line";
  }
  return "?";
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

std::vector<Token> tokenize(const std::string& text, int line, int base_col) {
  std::vector<Token> out;
  std::size_t i = 0;
  const auto col = [&](std::size_t at) { return base_col + static_cast<int>(at); };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({TokKind::Ident, text.substr(i, j - i), col(i)});
      i = j;
      continue;
    }
    const auto two = text.substr(i, 2);
    const auto three = text.substr(i, 3);
    if (three == "<->") {
      out.push_back({TokKind::IffOp, three, col(i)});
      i += 3;
    } else if (two == "&&") {
      out.push_back({TokKind::AndAnd, two, col(i)});
      i += 2;
    } else if (two == "||") {
      out.push_back({TokKind::OrOr, two, col(i)});
      i += 2;
    } else if (two == "->") {
      out.push_back({TokKind::Arrow, two, col(i)});
      i += 2;
    } else if (c == '=') {
      out.push_back({TokKind::Eq, "=", col(i)});
      ++i;
    } else if (c == '!') {
      out.push_back({TokKind::Bang, "!", col(i)});
      ++i;
    } else if (c == '(') {
      out.push_back({TokKind::LParen, "(", col(i)});
      ++i;
    } else if (c == ')') {
      out.push_back({TokKind::RParen, ")", col(i)});
      ++i;
    } else if (c == ',') {
      out.push_back({TokKind::Comma, ",", col(i)});
      ++i;
    } else if (c == ':') {
      out.push_back({TokKind::Colon, ":", col(i)});
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col(i));
    }
  }
  out.push_back({TokKind::End, "", col(text.size())});
  return out;
}

// --- expression parser -------------------------------------------------------

// What identifiers atoms may reference; filled per document kind.
struct ExprContext {
  const std::unordered_map<std::string, int>* factors = nullptr;
  const std::vector<Factor>* factor_list = nullptr;
  const std::unordered_map<std::string, int>* events = nullptr;
  bool permutation = false;
};

// Recursive descent over: iff > implies (right-assoc) > or > and > not >
// primary. Atoms are `name=value` and `before(a, b)`.
class ExprParser {
public:
  ExprParser(std::vector<Token> tokens, int line, const ExprContext& ctx)
      : tokens_(std::move(tokens)), line_(line), ctx_(ctx) {}

  ModelExpr parse() {
    ModelExpr e = parse_iff();
    expect(TokKind::End);
    return e;
  }

private:
  [[nodiscard]] const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  bool accept(TokKind k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  const Token& expect(TokKind k) {
    if (peek().kind != k)
      throw ParseError(std::string("expected ") + tok_name(k) + ", found " +
                           tok_name(peek().kind),
                       line_, peek().col);
    return advance();
  }

  ModelExpr parse_iff() {
    ModelExpr e = parse_implies();
    while (accept(TokKind::IffOp)) e = ModelExpr::equivalence(std::move(e), parse_implies());
    return e;
  }

  ModelExpr parse_implies() {
    ModelExpr e = parse_or();
    if (accept(TokKind::Arrow)) return ModelExpr::implication(std::move(e), parse_implies());
    return e;
  }

  ModelExpr parse_or() {
    std::vector<ModelExpr> kids{parse_and()};
    while (accept(TokKind::OrOr)) kids.push_back(parse_and());
    return ModelExpr::disjunction(std::move(kids));
  }

  ModelExpr parse_and() {
    std::vector<ModelExpr> kids{parse_unary()};
    while (accept(TokKind::AndAnd)) kids.push_back(parse_unary());
    return ModelExpr::conjunction(std::move(kids));
  }

  ModelExpr parse_unary() {
    if (accept(TokKind::Bang)) return ModelExpr::negation(parse_unary());
    return parse_primary();
  }

  ModelExpr parse_primary() {
    if (accept(TokKind::LParen)) {
      ModelExpr e = parse_iff();
      expect(TokKind::RParen);
      return e;
    }
    const Token& name = expect(TokKind::Ident);
    if (name.text == "before" && peek().kind == TokKind::LParen) return parse_before(name);
    return parse_value_atom(name);
  }

  ModelExpr parse_value_atom(const Token& name) {
    if (ctx_.factors == nullptr)
      throw ParseError("factor atoms are not allowed in this constraint", line_, name.col);
    expect(TokKind::Eq);
    const Token& value = expect(TokKind::Ident);
    auto it = ctx_.factors->find(name.text);
    if (it == ctx_.factors->end())
      throw ParseError("unknown factor '" + name.text + "'", line_, name.col);
    const Factor& f = (*ctx_.factor_list)[static_cast<std::size_t>(it->second)];
    if (std::find(f.domain.begin(), f.domain.end(), value.text) == f.domain.end())
      throw ParseError("'" + value.text + "' is not a value of factor '" + name.text + "'",
                       line_, value.col);
    return ModelExpr::atom(ModelAtom{ValueAtom{name.text, value.text}});
  }

  ModelExpr parse_before(const Token& name) {
    if (ctx_.events == nullptr)
      throw ParseError("before(...) atoms are not allowed in this constraint", line_, name.col);
    expect(TokKind::LParen);
    const Token& first = expect(TokKind::Ident);
    expect(TokKind::Comma);
    const Token& second = expect(TokKind::Ident);
    expect(TokKind::RParen);
    for (const Token* t : {&first, &second})
      if (ctx_.events->find(t->text) == ctx_.events->end())
        throw ParseError("unknown event '" + t->text + "'", line_, t->col);
    if (ctx_.permutation && first.text == second.text)
      throw ParseError("before(" + first.text + ", " + second.text +
                           ") repeats an event; every event occurs once in a permutation space",
                       line_, first.col);
    return ModelExpr::atom(ModelAtom{BeforeAtom{first.text, second.text}});
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int line_;
  const ExprContext& ctx_;
};

// --- line scanner ------------------------------------------------------------

struct RawLine {
  int number = 0;       // 1-based
  std::string key;
  int key_col = 0;
  std::string value;    // text after the first ':', comments stripped
  int value_col = 0;    // 1-based column of the value text
};

std::vector<RawLine> scan_lines(const std::string& text) {
  std::vector<RawLine> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);

    std::size_t begin = 0;
    while (begin < line.size() && std::isspace(static_cast<unsigned char>(line[begin]))) ++begin;
    if (begin == line.size()) continue;

    const auto colon = line.find(':', begin);
    if (colon == std::string::npos)
      throw ParseError("expected 'key: value'", number, static_cast<int>(begin) + 1);
    std::size_t key_end = colon;
    while (key_end > begin && std::isspace(static_cast<unsigned char>(line[key_end - 1])))
      --key_end;

    RawLine raw;
    raw.number = number;
    raw.key = line.substr(begin, key_end - begin);
    raw.key_col = static_cast<int>(begin) + 1;
    raw.value = line.substr(colon + 1);
    raw.value_col = static_cast<int>(colon) + 2;
    if (raw.key.empty()) throw ParseError("missing key before ':'", number, raw.key_col);
    out.push_back(std::move(raw));
  }
  return out;
}

int parse_int(const std::string& text, int line, int col) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ParseError("expected an integer, found '" + text + "'", line, col);
  }
}

// Comma-separated identifier list.
std::vector<Token> parse_ident_list(const RawLine& raw, std::size_t min_count = 1) {
  std::vector<Token> tokens = tokenize(raw.value, raw.number, raw.value_col);
  std::vector<Token> names;
  std::size_t i = 0;
  for (;;) {
    if (tokens[i].kind != TokKind::Ident)
      throw ParseError(std::string("expected identifier, found ") + tok_name(tokens[i].kind),
                       raw.number, tokens[i].col);
    names.push_back(tokens[i++]);
    if (tokens[i].kind == TokKind::End) break;
    if (tokens[i].kind != TokKind::Comma)
      throw ParseError(std::string("expected ',' or end of line, found ") +
                           tok_name(tokens[i].kind),
                       raw.number, tokens[i].col);
    ++i;
  }
  if (names.size() < min_count)
    throw ParseError("expected at least " + std::to_string(min_count) + " names", raw.number,
                     raw.value_col);
  return names;
}

// `name = v1, v2, ...`
std::pair<Token, std::vector<Token>> parse_named_list(const RawLine& raw) {
  std::vector<Token> tokens = tokenize(raw.value, raw.number, raw.value_col);
  std::size_t i = 0;
  const auto want = [&](TokKind k) -> const Token& {
    if (tokens[i].kind != k)
      throw ParseError(std::string("expected ") + tok_name(k) + ", found " +
                           tok_name(tokens[i].kind),
                       raw.number, tokens[i].col);
    return tokens[i++];
  };
  const Token name = want(TokKind::Ident);
  want(TokKind::Eq);
  std::vector<Token> values;
  for (;;) {
    values.push_back(want(TokKind::Ident));
    if (tokens[i].kind == TokKind::End) break;
    want(TokKind::Comma);
  }
  return {name, std::move(values)};
}

Token parse_single_ident(const RawLine& raw) {
  std::vector<Token> names = parse_ident_list(raw);
  if (names.size() != 1)
    throw ParseError("expected a single name", raw.number, raw.value_col);
  return names.front();
}

std::vector<std::string> split_words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> words;
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

// --- criterion clause ----------------------------------------------------------

SimpleCriterion parse_criterion_part(const std::string& part, SpaceKind kind, int line, int col) {
  const std::vector<std::string> words = split_words(part);
  if (words.empty()) throw ParseError("empty criterion", line, col);
  const auto arity = [&](std::size_t n) {
    if (words.size() != n)
      throw ParseError("malformed criterion '" + part + "'", line, col);
  };
  const auto match_kind = [&](SpaceKind want, const char* what) {
    if (kind != want)
      throw ParseError(std::string(what) + " does not apply to a " + to_string(kind) + " model",
                       line, col);
  };

  if (words[0] == "strength") {
    arity(2);
    match_kind(SpaceKind::CoveringArray, "'strength'");
    return CaStrength{parse_int(words[1], line, col)};
  }
  if (words[0] == "seq-strength") {
    arity(2);
    match_kind(SpaceKind::Sequence, "'seq-strength'");
    return SeqStrength{parse_int(words[1], line, col)};
  }
  if (words[0] == "hybrid") {
    match_kind(SpaceKind::Fsm, "'hybrid'");
    FsmHybrid hybrid;
    bool have_value = false;
    bool have_seq = false;
    for (std::size_t i = 1; i < words.size(); ++i) {
      const auto eq = words[i].find('=');
      const std::string name = words[i].substr(0, eq);
      const std::string value = eq == std::string::npos ? "" : words[i].substr(eq + 1);
      if (name == "value") {
        hybrid.value_t = parse_int(value, line, col);
        have_value = true;
      } else if (name == "seq") {
        hybrid.seq_t = parse_int(value, line, col);
        have_seq = true;
      } else if (name == "synthetic") {
        if (value != "yes" && value != "no")
          throw ParseError("synthetic= takes 'yes' or 'no'", line, col);
        hybrid.include_synthetic_states = value == "yes";
      } else {
        throw ParseError("unknown hybrid option '" + words[i] + "'", line, col);
      }
    }
    if (!have_value || !have_seq)
      throw ParseError("hybrid criterion needs value=N and seq=N", line, col);
    return hybrid;
  }
  throw ParseError("unknown criterion '" + words[0] + "'", line, col);
}

Criterion parse_criterion(const RawLine& raw, SpaceKind kind) {
  std::vector<std::string> parts;
  std::string current;
  for (const char c : raw.value) {
    if (c == ',') {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);

  std::vector<SimpleCriterion> simple;
  simple.reserve(parts.size());
  for (const auto& part : parts)
    simple.push_back(parse_criterion_part(part, kind, raw.number, raw.value_col));
  if (simple.size() == 1)
    return std::visit([](const auto& c) { return Criterion(c); }, simple.front());
  return Composite{std::move(simple)};
}

// --- document assembly -----------------------------------------------------------

const std::unordered_set<std::string>& keys_for(SpaceKind kind) {
  static const std::unordered_set<std::string> ca{"kind", "factor", "constraint", "criterion"};
  static const std::unordered_set<std::string> seq{"kind",       "events",    "variant",
                                                   "constraint", "criterion"};
  static const std::unordered_set<std::string> fsm{"kind",       "states", "initial",
                                                   "final",      "path-bound", "transition",
                                                   "factor",     "bind",   "criterion"};
  switch (kind) {
    case SpaceKind::CoveringArray: return ca;
    case SpaceKind::Sequence: return seq;
    case SpaceKind::Fsm: return fsm;
  }
  throw Error("corrupt space kind");
}

// Tracks single-occurrence keys.
class OnceTable {
public:
  void note(const RawLine& raw) {
    if (!seen_.insert(raw.key).second)
      throw ParseError("duplicate '" + raw.key + ":' line", raw.number, raw.key_col);
  }

private:
  std::unordered_set<std::string> seen_;
};

std::vector<Factor> build_factors(const std::vector<const RawLine*>& lines,
                                  std::unordered_map<std::string, int>& index) {
  std::vector<Factor> factors;
  for (const RawLine* raw : lines) {
    auto [name, values] = parse_named_list(*raw);
    if (!index.emplace(name.text, static_cast<int>(factors.size())).second)
      throw ParseError("factor '" + name.text + "' already declared", raw->number, name.col);
    Factor f;
    f.name = name.text;
    std::unordered_set<std::string> seen;
    for (const Token& v : values) {
      if (!seen.insert(v.text).second)
        throw ParseError("value '" + v.text + "' repeated in factor '" + name.text + "'",
                         raw->number, v.col);
      f.domain.push_back(v.text);
    }
    if (f.domain.size() < 2)
      throw ParseError("factor '" + name.text + "' needs at least two values", raw->number,
                       name.col);
    factors.push_back(std::move(f));
  }
  return factors;
}

ModelDocument parse_ca_document(const std::vector<RawLine>& lines) {
  CoveringArrayModel m;
  std::vector<const RawLine*> factor_lines;
  const RawLine* constraint_line = nullptr;
  const RawLine* criterion_line = nullptr;
  OnceTable once;
  for (const RawLine& raw : lines) {
    if (raw.key == "kind") continue;
    if (raw.key == "factor") {
      factor_lines.push_back(&raw);
    } else if (raw.key == "constraint") {
      once.note(raw);
      constraint_line = &raw;
    } else {
      once.note(raw);
      criterion_line = &raw;
    }
  }
  if (factor_lines.empty())
    throw ParseError("a ca model needs at least one 'factor:' line", 1, 1);

  std::unordered_map<std::string, int> factor_index;
  m.factors = build_factors(factor_lines, factor_index);

  if (constraint_line != nullptr) {
    ExprContext ctx;
    ctx.factors = &factor_index;
    ctx.factor_list = &m.factors;
    m.system_constraint =
        ExprParser(tokenize(constraint_line->value, constraint_line->number,
                            constraint_line->value_col),
                   constraint_line->number, ctx)
            .parse();
  }

  ModelDocument doc;
  if (criterion_line != nullptr) {
    doc.criterion = parse_criterion(*criterion_line, SpaceKind::CoveringArray);
    if (const auto* s = std::get_if<CaStrength>(&*doc.criterion)) m.strength = s->t;
  }
  m.strength = std::min<int>(m.strength, static_cast<int>(m.factors.size()));
  doc.model = std::move(m);
  return doc;
}

ModelDocument parse_seq_document(const std::vector<RawLine>& lines) {
  SequenceModel m;
  const RawLine* events_line = nullptr;
  const RawLine* variant_line = nullptr;
  const RawLine* constraint_line = nullptr;
  const RawLine* criterion_line = nullptr;
  OnceTable once;
  for (const RawLine& raw : lines) {
    if (raw.key == "kind") continue;
    once.note(raw);
    if (raw.key == "events") events_line = &raw;
    else if (raw.key == "variant") variant_line = &raw;
    else if (raw.key == "constraint") constraint_line = &raw;
    else criterion_line = &raw;
  }
  if (events_line == nullptr) throw ParseError("a sequence model needs an 'events:' line", 1, 1);

  std::unordered_map<std::string, int> event_index;
  for (const Token& name : parse_ident_list(*events_line)) {
    if (!event_index.emplace(name.text, static_cast<int>(m.events.size())).second)
      throw ParseError("event '" + name.text + "' already declared", events_line->number,
                       name.col);
    m.events.push_back(name.text);
  }

  if (variant_line != nullptr) {
    const std::vector<std::string> words = split_words(variant_line->value);
    if (words.size() == 1 && words[0] == "permutation") {
      m.variant = SequenceVariant::Permutation;
    } else if (words.size() == 2 && words[0] == "variable-length") {
      m.variant = SequenceVariant::VariableLength;
      m.max_len = parse_int(words[1], variant_line->number, variant_line->value_col);
    } else {
      throw ParseError("variant must be 'permutation' or 'variable-length N'",
                       variant_line->number, variant_line->value_col);
    }
  }

  if (constraint_line != nullptr) {
    ExprContext ctx;
    ctx.events = &event_index;
    ctx.permutation = m.variant == SequenceVariant::Permutation;
    m.system_constraint =
        ExprParser(tokenize(constraint_line->value, constraint_line->number,
                            constraint_line->value_col),
                   constraint_line->number, ctx)
            .parse();
  }

  ModelDocument doc;
  if (criterion_line != nullptr) {
    doc.criterion = parse_criterion(*criterion_line, SpaceKind::Sequence);
    if (const auto* s = std::get_if<SeqStrength>(&*doc.criterion)) m.strength = s->t;
  }
  doc.model = std::move(m);
  return doc;
}

ModelDocument parse_fsm_document(const std::vector<RawLine>& lines) {
  FsmModel m;
  const RawLine* states_line = nullptr;
  const RawLine* criterion_line = nullptr;
  std::vector<const RawLine*> factor_lines;
  std::vector<const RawLine*> transition_lines;
  std::vector<const RawLine*> bind_lines;
  OnceTable once;
  for (const RawLine& raw : lines) {
    if (raw.key == "kind") continue;
    if (raw.key == "factor") {
      factor_lines.push_back(&raw);
      continue;
    }
    if (raw.key == "transition") {
      transition_lines.push_back(&raw);
      continue;
    }
    if (raw.key == "bind") {
      bind_lines.push_back(&raw);
      continue;
    }
    once.note(raw);
    if (raw.key == "states") {
      states_line = &raw;
    } else if (raw.key == "initial") {
      m.initial = parse_single_ident(raw).text;
    } else if (raw.key == "final") {
      m.final_state = parse_single_ident(raw).text;
    } else if (raw.key == "path-bound") {
      const std::vector<std::string> words = split_words(raw.value);
      if (words.size() != 1)
        throw ParseError("expected a single integer", raw.number, raw.value_col);
      m.path_bound = parse_int(words.front(), raw.number, raw.value_col);
    } else {
      criterion_line = &raw;
    }
  }
  if (states_line == nullptr) throw ParseError("an fsm model needs a 'states:' line", 1, 1);
  if (m.initial.empty()) throw ParseError("an fsm model needs an 'initial:' line", 1, 1);
  if (m.final_state.empty()) throw ParseError("an fsm model needs a 'final:' line", 1, 1);

  std::unordered_map<std::string, int> state_index;
  for (const Token& name : parse_ident_list(*states_line)) {
    if (!state_index.emplace(name.text, static_cast<int>(m.states.size())).second)
      throw ParseError("state '" + name.text + "' already declared", states_line->number,
                       name.col);
    m.states.push_back(name.text);
  }

  std::unordered_map<std::string, int> factor_index;
  m.factors = build_factors(factor_lines, factor_index);
  m.factor_state.resize(m.factors.size());

  std::vector<char> bound(m.factors.size(), 0);
  for (const RawLine* raw : bind_lines) {
    auto [state, names] = parse_named_list(*raw);
    if (state_index.find(state.text) == state_index.end())
      throw ParseError("unknown state '" + state.text + "'", raw->number, state.col);
    for (const Token& name : names) {
      auto it = factor_index.find(name.text);
      if (it == factor_index.end())
        throw ParseError("unknown factor '" + name.text + "'", raw->number, name.col);
      if (bound[static_cast<std::size_t>(it->second)])
        throw ParseError("factor '" + name.text + "' already bound", raw->number, name.col);
      bound[static_cast<std::size_t>(it->second)] = 1;
      m.factor_state[static_cast<std::size_t>(it->second)] = state.text;
    }
  }
  for (std::size_t f = 0; f < m.factors.size(); ++f)
    if (!bound[f])
      throw ParseError("factor '" + m.factors[f].name + "' is not bound to any state", 1, 1);

  ExprContext guard_ctx;
  guard_ctx.factors = &factor_index;
  guard_ctx.factor_list = &m.factors;
  std::unordered_set<std::string> labels;
  for (const RawLine* raw : transition_lines) {
    std::vector<Token> tokens = tokenize(raw->value, raw->number, raw->value_col);
    std::size_t i = 0;
    const auto want = [&](TokKind k) -> const Token& {
      if (tokens[i].kind != k)
        throw ParseError(std::string("expected ") + tok_name(k) + ", found " +
                             tok_name(tokens[i].kind),
                         raw->number, tokens[i].col);
      return tokens[i++];
    };
    FsmTransition t;
    const Token& label = want(TokKind::Ident);
    t.label = label.text;
    if (!labels.insert(t.label).second)
      throw ParseError("transition '" + t.label + "' already declared", raw->number, label.col);
    want(TokKind::Colon);
    const Token& from = want(TokKind::Ident);
    want(TokKind::Arrow);
    const Token& to = want(TokKind::Ident);
    for (const Token* s : {&from, &to})
      if (state_index.find(s->text) == state_index.end())
        throw ParseError("unknown state '" + s->text + "'", raw->number, s->col);
    t.from = from.text;
    t.to = to.text;
    if (tokens[i].kind != TokKind::End) {
      const Token& kw = want(TokKind::Ident);
      if (kw.text != "guard")
        throw ParseError("expected 'guard:' or end of line", raw->number, kw.col);
      want(TokKind::Colon);
      std::vector<Token> rest(tokens.begin() + static_cast<std::ptrdiff_t>(i), tokens.end());
      t.guard = ExprParser(std::move(rest), raw->number, guard_ctx).parse();
    }
    m.transitions.push_back(std::move(t));
  }

  ModelDocument doc;
  if (criterion_line != nullptr) doc.criterion = parse_criterion(*criterion_line, SpaceKind::Fsm);
  doc.model = std::move(m);
  return doc;
}

// --- printer -----------------------------------------------------------------

int precedence(ExprOp op) {
  switch (op) {
    case ExprOp::Iff: return 1;
    case ExprOp::Implies: return 2;
    case ExprOp::Or: return 3;
    case ExprOp::And: return 4;
    case ExprOp::Not: return 5;
    default: return 6;
  }
}

void print_expr_rec(const ModelExpr& e, int min_prec, std::ostream& out) {
  const int prec = precedence(e.op());
  const bool parens = prec < min_prec;
  if (parens) out << '(';
  switch (e.op()) {
    case ExprOp::Atom: {
      const ModelAtom& at = e.atom_value();
      if (const auto* va = std::get_if<ValueAtom>(&at)) out << va->factor << '=' << va->value;
      else {
        const auto& ba = std::get<BeforeAtom>(at);
        out << "before(" << ba.first << ", " << ba.second << ')';
      }
      break;
    }
    case ExprOp::Not:
      out << '!';
      print_expr_rec(e.child(0), precedence(ExprOp::Not), out);
      break;
    case ExprOp::And:
    case ExprOp::Or: {
      const char* op = e.op() == ExprOp::And ? " && " : " || ";
      for (std::size_t i = 0; i < e.child_count(); ++i) {
        if (i > 0) out << op;
        print_expr_rec(e.child(i), prec + 1, out);
      }
      break;
    }
    case ExprOp::Implies:  // right-associative
      print_expr_rec(e.child(0), prec + 1, out);
      out << " -> ";
      print_expr_rec(e.child(1), prec, out);
      break;
    case ExprOp::Iff:  // left-associative
      print_expr_rec(e.child(0), prec, out);
      out << " <-> ";
      print_expr_rec(e.child(1), prec + 1, out);
      break;
    default:
      throw Error("cannot print a constraint containing constants");
  }
  if (parens) out << ')';
}

void print_list(const std::vector<std::string>& items, std::ostream& out) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out << ", ";
    out << items[i];
  }
}

void print_factor(const Factor& f, std::ostream& out) {
  out << "factor: " << f.name << " = ";
  print_list(f.domain, out);
  out << '\n';
}

}  // namespace

std::string print_expr(const ModelExpr& e) {
  std::ostringstream out;
  print_expr_rec(e, 0, out);
  return out.str();
}

ModelDocument parse_model(const std::string& text) {
  const std::vector<RawLine> lines = scan_lines(text);

  const RawLine* kind_line = nullptr;
  for (const RawLine& raw : lines) {
    if (raw.key != "kind") continue;
    if (kind_line != nullptr)
      throw ParseError("duplicate 'kind:' line", raw.number, raw.key_col);
    kind_line = &raw;
  }
  if (kind_line == nullptr) throw ParseError("missing 'kind:' line", 1, 1);

  const std::vector<std::string> kind_words = split_words(kind_line->value);
  SpaceKind kind;
  if (kind_words.size() == 1 && kind_words[0] == "ca") kind = SpaceKind::CoveringArray;
  else if (kind_words.size() == 1 && kind_words[0] == "sequence") kind = SpaceKind::Sequence;
  else if (kind_words.size() == 1 && kind_words[0] == "fsm") kind = SpaceKind::Fsm;
  else
    throw ParseError("kind must be 'ca', 'sequence', or 'fsm'", kind_line->number,
                     kind_line->value_col);

  const auto& allowed = keys_for(kind);
  for (const RawLine& raw : lines)
    if (allowed.find(raw.key) == allowed.end())
      throw ParseError("key '" + raw.key + ":' is not valid in a " + to_string(kind) + " model",
                       raw.number, raw.key_col);

  ModelDocument doc;
  switch (kind) {
    case SpaceKind::CoveringArray: doc = parse_ca_document(lines); break;
    case SpaceKind::Sequence: doc = parse_seq_document(lines); break;
    case SpaceKind::Fsm: doc = parse_fsm_document(lines); break;
  }

  // Safety net for anything the positioned checks above missed.
  try {
    validate(doc.model);
  } catch (const Error& e) {
    throw ParseError(e.what(), 1, 1);
  }
  return doc;
}

ModelDocument load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_model(text.str());
}

std::string print_model(const ModelDocument& doc) {
  std::ostringstream out;
  if (const auto* ca = std::get_if<CoveringArrayModel>(&doc.model)) {
    out << "kind: ca\n";
    for (const Factor& f : ca->factors) print_factor(f, out);
    if (ca->system_constraint.op() != ExprOp::ConstTrue)
      out << "constraint: " << print_expr(ca->system_constraint) << '\n';
  } else if (const auto* seq = std::get_if<SequenceModel>(&doc.model)) {
    out << "kind: sequence\n";
    out << "events: ";
    print_list(seq->events, out);
    out << '\n';
    if (seq->variant == SequenceVariant::Permutation) out << "variant: permutation\n";
    else out << "variant: variable-length " << seq->max_len << '\n';
    if (seq->system_constraint.op() != ExprOp::ConstTrue)
      out << "constraint: " << print_expr(seq->system_constraint) << '\n';
  } else {
    const auto& fsm = std::get<FsmModel>(doc.model);
    out << "kind: fsm\n";
    out << "states: ";
    print_list(fsm.states, out);
    out << '\n';
    out << "initial: " << fsm.initial << '\n';
    out << "final: " << fsm.final_state << '\n';
    if (fsm.path_bound > 0) out << "path-bound: " << fsm.path_bound << '\n';
    for (const FsmTransition& t : fsm.transitions) {
      out << "transition: " << t.label << ": " << t.from << " -> " << t.to;
      if (t.guard.op() != ExprOp::ConstTrue) out << " guard: " << print_expr(t.guard);
      out << '\n';
    }
    for (const Factor& f : fsm.factors) print_factor(f, out);
    for (const std::string& state : fsm.states) {
      std::vector<std::string> names;
      for (std::size_t f = 0; f < fsm.factors.size(); ++f)
        if (fsm.factor_state[f] == state) names.push_back(fsm.factors[f].name);
      if (names.empty()) continue;
      out << "bind: " << state << " = ";
      print_list(names, out);
      out << '\n';
    }
  }
  if (doc.criterion) out << "criterion: " << to_string(*doc.criterion) << '\n';
  return out.str();
}

SpaceEncoding compile(const ModelDocument& doc) { return encode_space(doc.model); }

Criterion criterion_of(const ModelDocument& doc) {
  if (doc.criterion) return *doc.criterion;
  if (const auto* ca = std::get_if<CoveringArrayModel>(&doc.model))
    return CaStrength{ca->strength};
  if (const auto* seq = std::get_if<SequenceModel>(&doc.model))
    return SeqStrength{seq->strength};
  throw Error("an fsm document needs an explicit 'criterion:' line");
}

}  // namespace ucit
