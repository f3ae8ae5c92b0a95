#include <algorithm>
#include <charconv>
#include <deque>
#include <optional>
#include <unordered_map>

#include "ddl/parser.hpp"

namespace ddl {

ParseError::ParseError(SourceSpan span, const std::string& message)
    : std::runtime_error(std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message),
      span_(span),
      detail_(message) {}

namespace {

enum class TokenKind {
  ident,
  number,
  colon,
  assign,
  comma,
  dot,
  at,
  tilde,
  bang,
  plus,
  minus,
  greater,
  lparen,
  rparen,
  arrow,
  end,
};

struct Arrow {
  RuleKind kind = RuleKind::defeasible;
  Mode mode = Mode::constitutive;
  bool explicit_mode = false;
};

struct Token {
  TokenKind kind = TokenKind::end;
  std::string_view text;
  SourceSpan span;
  Arrow arrow;
  double number = 0.0;
};

bool is_ident_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z') || (u >= '0' && u <= '9') || c == '_';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string describe(const Token& token) {
  switch (token.kind) {
    case TokenKind::end: return "end of input";
    case TokenKind::ident: return "identifier '" + std::string(token.text) + "'";
    default: return "'" + std::string(token.text) + "'";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  const Token& peek(std::size_t ahead = 0) {
    while (buffer_.size() <= ahead) buffer_.push_back(scan());
    return buffer_[ahead];
  }

  Token next() {
    peek();
    Token token = buffer_.front();
    buffer_.pop_front();
    return token;
  }

  /// Span of the last byte of the input, used for errors at end of input.
  SourceSpan end_span() const {
    if (text_.empty()) return SourceSpan{1, 1, 1};
    return span_at(text_.size() - 1, 1);
  }

 private:
  // Tokens are requested in increasing offset order, so positions are
  // tracked incrementally from the last query.
  SourceSpan span_at(std::size_t offset, std::size_t length) const {
    if (offset < cursor_.offset) cursor_ = Cursor{};
    for (; cursor_.offset < offset; ++cursor_.offset) {
      if (text_[cursor_.offset] == '\n') {
        ++cursor_.line;
        cursor_.column = 1;
      } else {
        ++cursor_.column;
      }
    }
    return SourceSpan{cursor_.line, cursor_.column, std::max<std::size_t>(length, 1)};
  }

  Token make(TokenKind kind, std::size_t start, std::size_t length) {
    Token token;
    token.kind = kind;
    token.text = text_.substr(start, length);
    token.span = span_at(start, length);
    pos_ = start + length;
    return token;
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(std::size_t offset, std::size_t length, const std::string& message) const {
    throw ParseError(span_at(offset, length), message);
  }

  Token scan_number(std::size_t start) {
    std::size_t p = start;
    while (p < text_.size() && is_digit(text_[p])) ++p;
    if (p == start) {
      fail(start < text_.size() ? start : text_.size() - 1, 1, "malformed assignment: expected a number after ':='");
    }
    if (p + 1 < text_.size() && text_[p] == '.' && is_digit(text_[p + 1])) {
      ++p;
      while (p < text_.size() && is_digit(text_[p])) ++p;
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + p, value);
    if (ec != std::errc{} || ptr != text_.data() + p) {
      fail(start, p - start, "malformed assignment: number out of range");
    }
    Token token = make(TokenKind::number, start, p - start);
    token.number = value;
    return token;
  }

  Token scan() {
    const bool after_assign = last_kind_ == TokenKind::assign;
    skip_trivia();
    Token token = after_assign ? scan_number_or_end() : scan_plain();
    last_kind_ = token.kind;
    return token;
  }

  Token scan_number_or_end() {
    if (pos_ >= text_.size()) fail(text_.empty() ? 0 : text_.size() - 1, 1, "malformed assignment: missing value");
    return scan_number(pos_);
  }

  Token scan_plain() {
    if (pos_ >= text_.size()) {
      Token token;
      token.kind = TokenKind::end;
      token.span = end_span();
      return token;
    }
    const std::size_t start = pos_;
    const char c = text_[start];
    auto at = [&](std::size_t offset) -> char {
      return start + offset < text_.size() ? text_[start + offset] : '\0';
    };

    if (is_ident_char(c)) {
      std::size_t p = start;
      while (p < text_.size() && is_ident_char(text_[p])) ++p;
      return make(TokenKind::ident, start, p - start);
    }
    switch (c) {
      case ':':
        if (at(1) == '=') return make(TokenKind::assign, start, 2);
        return make(TokenKind::colon, start, 1);
      case ',': return make(TokenKind::comma, start, 1);
      case '.': return make(TokenKind::dot, start, 1);
      case '@': return make(TokenKind::at, start, 1);
      case '!': return make(TokenKind::bang, start, 1);
      case '+': return make(TokenKind::plus, start, 1);
      case '>': return make(TokenKind::greater, start, 1);
      case '(': return make(TokenKind::lparen, start, 1);
      case ')': return make(TokenKind::rparen, start, 1);
      case '-':
        if (at(1) == '>') return make_arrow(start, 2, RuleKind::strict);
        return make(TokenKind::minus, start, 1);
      case '=':
        if (at(1) == '>') return make_arrow(start, 2, RuleKind::defeasible);
        break;
      case '~':
        if (at(1) == '>') return make_arrow(start, 2, RuleKind::defeater);
        return make(TokenKind::tilde, start, 1);
      default: break;
    }
    std::size_t length = 1;
    const auto u = static_cast<unsigned char>(c);
    if (u >= 0xF0) {
      length = 4;
    } else if (u >= 0xE0) {
      length = 3;
    } else if (u >= 0xC0) {
      length = 2;
    }
    length = std::min(length, text_.size() - start);
    fail(start, length, "unknown token '" + std::string(text_.substr(start, length)) + "'");
  }

  // `=>O` / `~>P` take the mode suffix only when it is a standalone letter;
  // `=>O(` is the arrow followed by a modal head, `=>Ox` an arrow and an atom.
  Token make_arrow(std::size_t start, std::size_t length, RuleKind kind) {
    Arrow arrow{kind, Mode::constitutive, false};
    const std::size_t suffix = start + length;
    if (kind != RuleKind::strict && suffix < text_.size()) {
      const auto mode = mode_from_symbol(text_[suffix]);
      const char after = suffix + 1 < text_.size() ? text_[suffix + 1] : ' ';
      if (mode && *mode != Mode::constitutive && !is_ident_char(after) && after != '(') {
        arrow.mode = *mode;
        arrow.explicit_mode = true;
        ++length;
      }
    }
    Token token = make(TokenKind::arrow, start, length);
    token.arrow = arrow;
    return token;
  }

  struct Cursor {
    std::size_t offset = 0;
    std::size_t line = 1;
    std::size_t column = 1;
  };

  std::string_view text_;
  mutable Cursor cursor_;
  std::size_t pos_ = 0;
  TokenKind last_kind_ = TokenKind::end;
  std::deque<Token> buffer_;
};

enum class Dialect { theory, scenario };

struct PendingSuperiority {
  Superiority pair;
  SourceSpan stronger_span;
  SourceSpan weaker_span;
};

class Parser {
 public:
  Parser(std::string_view text, Dialect dialect) : lexer_(text), dialect_(dialect) {}

  void run() {
    while (lexer_.peek().kind != TokenKind::end) statement();
    check_superiority();
  }

  std::vector<Literal> facts;
  std::vector<Rule> rules;
  std::vector<Superiority> superiority;
  std::vector<TaggedConclusion> expectations;

 private:
  [[noreturn]] void fail(const Token& token, const std::string& message) { throw ParseError(token.span, message); }

  Token expect(TokenKind kind, const char* what) {
    Token token = lexer_.next();
    if (token.kind != kind) fail(token, std::string("expected ") + what + ", found " + describe(token));
    return token;
  }

  bool at_modal_prefix() {
    const Token& head = lexer_.peek();
    return head.kind == TokenKind::ident && (head.text == "O" || head.text == "P") &&
           lexer_.peek(1).kind == TokenKind::lparen;
  }

  void statement() {
    const Token& first = lexer_.peek();
    if (first.kind != TokenKind::ident) fail(first, "expected a statement, found " + describe(first));
    const TokenKind second = lexer_.peek(1).kind;
    if (second == TokenKind::colon) {
      rule();
    } else if (second == TokenKind::greater) {
      superiority_statement();
    } else if (first.text == "fact") {
      lexer_.next();
      Literal literal = parse_literal();
      expect(TokenKind::dot, "'.'");
      facts.push_back(std::move(literal));
    } else if (first.text == "expect" && dialect_ == Dialect::scenario) {
      expectation();
    } else {
      fail(first, "expected 'fact', a rule or a superiority statement, found " + describe(first));
    }
  }

  Literal parse_literal() {
    Literal literal;
    std::optional<Token> tilde;
    if (lexer_.peek().kind == TokenKind::tilde) tilde = lexer_.next();
    Token atom = expect(TokenKind::ident, "an atom");
    literal.atom = std::string(atom.text);
    literal.negated = tilde.has_value();
    if (lexer_.peek().kind == TokenKind::assign) {
      Token assign = lexer_.next();
      if (tilde) fail(assign, "malformed assignment: assignment literals cannot be negated");
      Token number = lexer_.next();
      Payload payload{number.number, {}};
      if (lexer_.peek().kind == TokenKind::ident) payload.unit = std::string(lexer_.next().text);
      literal.payload = std::move(payload);
    }
    return literal;
  }

  ModalLiteral parse_body_literal() {
    bool negated = false;
    if (lexer_.peek().kind == TokenKind::bang) {
      Token bang = lexer_.next();
      if (!at_modal_prefix()) fail(bang, "'!' must be followed by O( or P(");
      negated = true;
    }
    if (at_modal_prefix()) {
      Token modal = lexer_.next();
      lexer_.next();
      Literal literal = parse_literal();
      if (lexer_.peek().kind == TokenKind::at) {
        fail(lexer_.peek(), "'@' is only allowed in the head of an obligation rule");
      }
      expect(TokenKind::rparen, "')'");
      return modal.text == "O" ? obliged(std::move(literal), negated) : permitted(std::move(literal), negated);
    }
    return plain(parse_literal());
  }

  std::vector<Literal> parse_chain() {
    std::vector<Literal> chain;
    chain.push_back(parse_literal());
    while (lexer_.peek().kind == TokenKind::at) {
      lexer_.next();
      const SourceSpan span = lexer_.peek().span;
      Literal literal = parse_literal();
      for (const auto& existing : chain) {
        if (existing == literal) throw ParseError(span, "'" + to_string(literal) + "' repeats in the chain");
      }
      chain.push_back(std::move(literal));
    }
    return chain;
  }

  void rule() {
    Token label = lexer_.next();
    lexer_.next();  // ':'
    if (auto [it, inserted] = labels_.emplace(std::string(label.text), label.span); !inserted) {
      fail(label, "duplicate rule label '" + std::string(label.text) + "'");
    }

    Rule rule;
    rule.label = std::string(label.text);
    if (lexer_.peek().kind != TokenKind::arrow) {
      rule.body.push_back(parse_body_literal());
      while (true) {
        const Token& sep = lexer_.peek();
        if (sep.kind == TokenKind::comma) {
          lexer_.next();
          rule.body.push_back(parse_body_literal());
        } else if (sep.kind == TokenKind::at) {
          fail(sep, "'@' is only allowed in the head of an obligation rule (after '=>O')");
        } else {
          break;
        }
      }
    }
    Token arrow = expect(TokenKind::arrow, "an arrow ('->', '=>', '=>O', '=>P', '~>', '~>O', '~>P')");
    rule.kind = arrow.arrow.kind;
    rule.mode = arrow.arrow.mode;

    if (at_modal_prefix()) {
      Token modal = lexer_.next();
      if (arrow.arrow.explicit_mode) fail(modal, "modality given twice (arrow suffix and head)");
      if (rule.kind == RuleKind::strict) fail(modal, "strict rules cannot conclude an obligation or permission");
      lexer_.next();  // '('
      rule.mode = modal.text == "O" ? Mode::obligation : Mode::permission;
      parse_head(rule);
      expect(TokenKind::rparen, "')'");
    } else {
      parse_head(rule);
    }
    expect(TokenKind::dot, "'.'");

    if (dialect_ == Dialect::scenario && (rule.mode != Mode::constitutive || rule.kind == RuleKind::defeater)) {
      fail(label, "scenarios may only contain constitutive strict or defeasible rules");
    }
    if (dialect_ == Dialect::scenario &&
        std::any_of(rule.body.begin(), rule.body.end(), [](const ModalLiteral& m) { return m.modality != Modality::none; })) {
      fail(label, "scenario rule bodies must be plain literals");
    }
    rules.push_back(std::move(rule));
  }

  void parse_head(Rule& rule) {
    if (rule.kind == RuleKind::defeasible && rule.mode == Mode::obligation) {
      rule.head = parse_chain();
      return;
    }
    rule.head.push_back(parse_literal());
    if (lexer_.peek().kind == TokenKind::at) {
      fail(lexer_.peek(), "'@' is only allowed in the head of an obligation rule (after '=>O')");
    }
  }

  void superiority_statement() {
    if (dialect_ == Dialect::scenario) fail(lexer_.peek(), "scenarios may not declare superiority");
    Token stronger = lexer_.next();
    lexer_.next();  // '>'
    Token weaker = expect(TokenKind::ident, "a rule label");
    expect(TokenKind::dot, "'.'");
    if (stronger.text == weaker.text) {
      fail(stronger, "rule '" + std::string(stronger.text) + "' cannot be superior to itself");
    }
    pending_.push_back(PendingSuperiority{
        Superiority{std::string(stronger.text), std::string(weaker.text)}, stronger.span, weaker.span});
  }

  void check_superiority() {
    for (auto& pending : pending_) {
      if (!labels_.contains(pending.pair.stronger)) {
        throw ParseError(pending.stronger_span, "superiority names unknown rule '" + pending.pair.stronger + "'");
      }
      if (!labels_.contains(pending.pair.weaker)) {
        throw ParseError(pending.weaker_span, "superiority names unknown rule '" + pending.pair.weaker + "'");
      }
      superiority.push_back(std::move(pending.pair));
    }
  }

  void expectation() {
    lexer_.next();  // 'expect'
    Token sign = lexer_.next();
    if (sign.kind != TokenKind::plus && sign.kind != TokenKind::minus) {
      fail(sign, "expected '+' or '-', found " + describe(sign));
    }
    Token tag = expect(TokenKind::ident, "'definite' or 'defeasible'");
    if (tag.text != "definite" && tag.text != "defeasible") {
      fail(tag, "expected 'definite' or 'defeasible', found " + describe(tag));
    }
    Token mode = expect(TokenKind::ident, "a mode (C, O or P)");
    std::optional<Mode> parsed_mode = mode.text.size() == 1 ? mode_from_symbol(mode.text[0]) : std::nullopt;
    if (!parsed_mode) fail(mode, "expected a mode (C, O or P), found " + describe(mode));
    TaggedConclusion conclusion;
    conclusion.sign = sign.kind == TokenKind::plus ? Sign::plus : Sign::minus;
    conclusion.tag = tag.text == "definite" ? Tag::definite : Tag::defeasible;
    conclusion.mode = *parsed_mode;
    if (!is_legal(conclusion.tag, conclusion.mode)) fail(mode, "definite conclusions exist for mode C only");
    conclusion.literal = parse_literal();
    expect(TokenKind::dot, "'.'");
    expectations.push_back(std::move(conclusion));
  }

  Lexer lexer_;
  Dialect dialect_;
  std::unordered_map<std::string, SourceSpan> labels_;
  std::vector<PendingSuperiority> pending_;
};

}  // namespace

Theory parse_theory(std::string_view text) {
  Parser parser(text, Dialect::theory);
  parser.run();
  Theory theory(std::move(parser.facts), std::move(parser.rules), std::move(parser.superiority));
  for (const auto& diagnostic : validate_theory(theory)) {
    if (diagnostic.severity == Severity::error) throw ParseError(SourceSpan{1, 1, 1}, diagnostic.message);
  }
  return theory;
}

Scenario parse_scenario(std::string_view text, std::string name) {
  Parser parser(text, Dialect::scenario);
  parser.run();
  Scenario scenario{std::move(name), std::move(parser.facts), std::move(parser.rules), std::move(parser.expectations)};
  Theory as_theory(scenario.facts, scenario.rules, {});
  for (const auto& diagnostic : validate_theory(as_theory)) {
    if (diagnostic.severity == Severity::error) throw ParseError(SourceSpan{1, 1, 1}, diagnostic.message);
  }
  return scenario;
}

}  // namespace ddl
