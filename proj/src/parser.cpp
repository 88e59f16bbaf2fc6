#include "delp/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <tuple>

namespace delp {

std::string ParseDiagnostic::to_string() const {
  return span.file + ":" + std::to_string(span.start_line) + ":" + std::to_string(span.start_column) + ": " +
         (severity == Severity::Error ? "error" : "warning") + ": " + message;
}

namespace {

enum class Tok : std::uint8_t {
  Ident,     // predicate, constant, label or keyword
  Variable,  // uppercase-initial
  LParen,
  RParen,
  Comma,
  Dot,
  Tilde,
  Colon,
  Greater,
  StrictArrow,
  DefeasibleArrow,
  End,
  Bad,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  Lexer(std::string_view text, const std::string& file) : text_(text), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t = next();
      out.push_back(t);
      if (t.kind == Tok::End) break;
    }
    return out;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
      ++col_;  // count code points, not UTF-8 continuation bytes
    }
    ++pos_;
  }

  Token next() {
    Token t;
    t.span = {file_, line_, col_, line_, col_};
    if (pos_ >= text_.size()) return t;
    const std::size_t start = pos_;
    const char c = text_[pos_];
    auto single = [&](Tok k) {
      advance();
      t.kind = k;
    };
    auto is_word = [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; };
    if (is_word(c)) {
      while (pos_ < text_.size() && is_word(text_[pos_])) advance();
      t.kind = (std::isupper(static_cast<unsigned char>(c)) || c == '_') ? Tok::Variable : Tok::Ident;
    } else if (c == '<' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
      advance();
      single(Tok::StrictArrow);
    } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '<') {
      advance();
      single(Tok::DefeasibleArrow);
    } else if (c == '(') {
      single(Tok::LParen);
    } else if (c == ')') {
      single(Tok::RParen);
    } else if (c == ',') {
      single(Tok::Comma);
    } else if (c == '.') {
      single(Tok::Dot);
    } else if (c == '~') {
      single(Tok::Tilde);
    } else if (c == ':') {
      single(Tok::Colon);
    } else if (c == '>') {
      single(Tok::Greater);
    } else {
      // Consume one whole UTF-8 code point.
      advance();
      while (pos_ < text_.size() && (static_cast<unsigned char>(text_[pos_]) & 0xC0) == 0x80) advance();
      t.kind = Tok::Bad;
    }
    t.text = std::string(text_.substr(start, pos_ - start));
    t.span.end_line = line_;
    t.span.end_column = col_;
    return t;
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Bad: return "unexpected character '" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

struct SyntaxError {
  ParseDiagnostic diagnostic;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, Mode mode) : toks_(std::move(tokens)), mode_(mode) {}

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_end() const { return at(Tok::End); }

  const Token& take() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const Token& t, const std::string& message) const {
    throw SyntaxError{{ParseDiagnostic::Severity::Error, message, t.span}};
  }

  const Token& expect(Tok k, const std::string& what) {
    if (!at(k)) fail(peek(), "expected " + what + ", found " + describe(peek()));
    return take();
  }

  /// Skips past the next '.' so parsing can resume at the following clause.
  void recover() {
    while (!at_end() && !at(Tok::Dot)) take();
    if (at(Tok::Dot)) take();
  }

  Term term() {
    if (at(Tok::Variable)) return Term::variable(take().text);
    if (at(Tok::Ident)) return Term::constant(take().text);
    fail(peek(), "expected a term, found " + describe(peek()));
  }

  Literal literal() {
    Literal l;
    if (at(Tok::Tilde)) {
      take();
      l.negated = true;
    }
    const Token& name = peek();
    if (name.kind == Tok::Variable) fail(name, "predicate names must start with a lowercase letter: '" + name.text + "'");
    l.predicate = expect(Tok::Ident, "a predicate").text;
    if (at(Tok::LParen)) {
      take();
      l.args.push_back(term());
      while (at(Tok::Comma)) {
        take();
        l.args.push_back(term());
      }
      expect(Tok::RParen, "')'");
    }
    return l;
  }

  BodyAtom body_atom() {
    BodyAtom b;
    if (at(Tok::Ident) && peek().text == "not" && (peek(1).kind == Tok::Ident || peek(1).kind == Tok::Tilde)) {
      take();
      b.default_negated = true;
    }
    b.literal = literal();
    return b;
  }

  struct LabelledPriority {
    Priority priority;
    SourceSpan span;
  };

  /// One clause: a fact, a rule or a priority declaration.
  void clause(Program& p, std::vector<LabelledPriority>& priorities, std::map<std::string, SourceSpan>& labels,
              std::vector<ParseDiagnostic>& diags) {
    const Token first = peek();
    if (first.kind == Tok::Ident && peek(1).kind == Tok::Greater) {
      take();
      take();
      const Token& lower = expect(Tok::Ident, "a rule label");
      LabelledPriority lp{{first.text, lower.text}, first.span};
      lp.span.end_line = lower.span.end_line;
      lp.span.end_column = lower.span.end_column;
      expect(Tok::Dot, "'.'");
      priorities.push_back(std::move(lp));
      return;
    }
    Rule r;
    if (first.kind == Tok::Ident && peek(1).kind == Tok::Colon) {
      take();
      take();
      r.label = first.text;
    }
    const Token head_tok = peek();
    r.head = literal();
    if (at(Tok::Dot)) {
      const Token& dot = take();
      if (r.label) {
        diags.push_back({ParseDiagnostic::Severity::Error, "facts cannot carry labels", first.span});
        return;
      }
      if (!r.head.is_ground()) {
        SourceSpan span = head_tok.span;
        span.end_line = dot.span.end_line;
        span.end_column = dot.span.end_column;
        diags.push_back({ParseDiagnostic::Severity::Error, "facts must be ground: " + r.head.to_string(), span});
        return;
      }
      p.facts.push_back(r.head);
      return;
    }
    const Token arrow = peek();
    if (arrow.kind == Tok::StrictArrow) {
      r.kind = RuleKind::Strict;
    } else if (arrow.kind == Tok::DefeasibleArrow) {
      r.kind = RuleKind::Defeasible;
    } else {
      fail(arrow, "expected '.', '<-' or '-<', found " + describe(arrow));
    }
    take();
    if (at(Tok::Ident) && peek().text == "true" && peek(1).kind == Tok::Dot) {
      const Token& t = take();
      if (r.kind == RuleKind::Strict) {
        diags.push_back({ParseDiagnostic::Severity::Error, "strict rules need a non-empty body", t.span});
      } else if (!mode_.presumptions) {
        diags.push_back({ParseDiagnostic::Severity::Error, "presumption requires presumptions mode", head_tok.span});
      }
    } else {
      r.body.push_back(body_atom());
      while (at(Tok::Comma)) {
        take();
        r.body.push_back(body_atom());
      }
    }
    const Token& end = expect(Tok::Dot, "',' or '.'");
    SourceSpan span = first.span;
    span.end_line = end.span.end_line;
    span.end_column = end.span.end_column;

    const bool uses_not = std::any_of(r.body.begin(), r.body.end(), [](const BodyAtom& b) { return b.default_negated; });
    if (uses_not && r.kind == RuleKind::Strict) {
      diags.push_back({ParseDiagnostic::Severity::Error, "default negation not allowed in strict rules", span});
      return;
    }
    if (uses_not && !mode_.default_negation) {
      diags.push_back({ParseDiagnostic::Severity::Error, "default negation requires default-negation mode", span});
      return;
    }
    std::set<std::string> body_vars;
    for (const BodyAtom& b : r.body) {
      for (const Term& t : b.literal.args) {
        if (t.is_variable()) body_vars.insert(t.name);
      }
    }
    for (const Term& t : r.head.args) {
      if (t.is_variable() && !body_vars.count(t.name)) {
        diags.push_back({ParseDiagnostic::Severity::Error,
                         "head variable " + t.name + " does not occur in the body (range restriction)", span});
        return;
      }
    }
    if (r.label) {
      if (labels.count(*r.label)) {
        diags.push_back({ParseDiagnostic::Severity::Error, "duplicate rule label '" + *r.label + "'", first.span});
        return;
      }
      labels[*r.label] = first.span;
    }
    (r.kind == RuleKind::Strict ? p.strict_rules : p.defeasible_rules).push_back(std::move(r));
  }

  ParseResult program() {
    ParseResult result;
    Program p;
    p.mode = mode_;
    std::vector<LabelledPriority> priorities;
    std::map<std::string, SourceSpan> labels;
    while (!at_end()) {
      try {
        clause(p, priorities, labels, result.diagnostics);
      } catch (const SyntaxError& e) {
        result.diagnostics.push_back(e.diagnostic);
        recover();
      }
    }
    std::set<std::string> defeasible_labels;
    for (const Rule& r : p.defeasible_rules) {
      if (r.label) defeasible_labels.insert(*r.label);
    }
    for (const LabelledPriority& lp : priorities) {
      for (const std::string& l : {lp.priority.higher, lp.priority.lower}) {
        if (defeasible_labels.count(l)) continue;
        const std::string why = labels.count(l) ? "is not a defeasible rule" : "does not name a labelled rule";
        result.diagnostics.push_back(
            {ParseDiagnostic::Severity::Error, "priority label '" + l + "' " + why, lp.span});
      }
      p.priorities.push_back(lp.priority);
    }
    const bool failed = std::any_of(result.diagnostics.begin(), result.diagnostics.end(), [](const ParseDiagnostic& d) {
      return d.severity == ParseDiagnostic::Severity::Error;
    });
    if (!failed) result.program = std::move(p);
    return result;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Mode mode_;
};

}  // namespace

ParseResult parse_program(std::string_view text, Mode mode, const std::string& file) {
  Lexer lexer(text, file);
  Parser parser(lexer.run(), mode);
  return parser.program();
}

QueryResult parse_query(std::string_view text) {
  Lexer lexer(text, "<query>");
  Parser parser(lexer.run(), Mode{});
  QueryResult out;
  try {
    const Token start = parser.peek();
    Literal l = parser.literal();
    if (parser.at(Tok::Dot)) parser.take();
    if (!parser.at_end()) parser.fail(parser.peek(), "unexpected " + describe(parser.peek()) + " after query");
    if (!l.is_ground()) parser.fail(start, "queries must be ground");
    out.literal = std::move(l);
  } catch (const SyntaxError& e) {
    out.diagnostic = e.diagnostic;
  }
  return out;
}

std::string format_program(const Program& program) {
  const Program c = program.canonical();
  auto sorted_lines = [](const std::vector<Rule>& rules) {
    std::vector<std::tuple<std::string, std::string, std::string>> keyed;
    for (const Rule& r : rules) {
      std::string body;
      for (const BodyAtom& b : r.body) body += b.to_string() + ",";
      keyed.emplace_back(r.head.to_string(), body, r.to_string() + ".");
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::string> out;
    for (auto& k : keyed) out.push_back(std::get<2>(k));
    return out;
  };
  std::vector<std::vector<std::string>> groups;
  {
    std::vector<std::string> facts;
    for (const Literal& f : c.facts) facts.push_back(f.to_string() + ".");
    std::sort(facts.begin(), facts.end());
    groups.push_back(std::move(facts));
  }
  groups.push_back(sorted_lines(c.strict_rules));
  groups.push_back(sorted_lines(c.defeasible_rules));
  {
    std::vector<std::string> prio;
    for (const Priority& p : c.priorities) prio.push_back(p.higher + " > " + p.lower + ".");
    std::sort(prio.begin(), prio.end());
    groups.push_back(std::move(prio));
  }
  std::string out;
  for (const auto& group : groups) {
    if (group.empty()) continue;
    if (!out.empty()) out += '\n';
    for (const std::string& line : group) out += line + '\n';
  }
  return out;
}

}  // namespace delp
