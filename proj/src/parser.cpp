#include "elpp/parser.hpp"

#include <cctype>
#include <charconv>

namespace elpp {

namespace {

struct Token {
  enum class Kind : uint8_t { Ident, Integer, Word, Punct, End };
  Kind kind = Kind::End;
  std::string text;  // identifier, digits, unescaped word, or punctuation
  SourceSpan span;
};

class Lexer {
 public:
  Lexer(std::string_view text, int line) : text_(text), line_(line) {}

  // returns false and fills error on a lexical problem
  bool run(std::vector<Token>& out, ParseError& error) {
    size_t i = 0;
    auto span_at = [&](size_t pos) { return SourceSpan{line_, static_cast<int>(pos) + 1}; };
    while (i < text_.size()) {
      char c = text_[i];
      if (c == '#') break;  // line comment
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t start = i;
        while (i < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[i])) ||
                                    text_[i] == '_' || text_[i] == '\''))
          ++i;
        out.push_back({Token::Kind::Ident, std::string(text_.substr(start, i - start)),
                       span_at(start)});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t start = i;
        while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) ++i;
        out.push_back({Token::Kind::Integer, std::string(text_.substr(start, i - start)),
                       span_at(start)});
        continue;
      }
      if (c == '"') {
        size_t start = i++;
        std::string word;
        bool closed = false;
        while (i < text_.size()) {
          char w = text_[i];
          if (w == '"') {
            closed = true;
            ++i;
            break;
          }
          if (w == '\\') {
            if (i + 1 >= text_.size()) break;
            char esc = text_[i + 1];
            switch (esc) {
              case 'n': word += '\n'; break;
              case 't': word += '\t'; break;
              case 'r': word += '\r'; break;
              case '"':
              case '\\': word += esc; break;
              default:
                error = {span_at(i), std::string("unknown escape '\\") + esc + "' in word"};
                return false;
            }
            i += 2;
            continue;
          }
          word += w;
          ++i;
        }
        if (!closed) {
          error = {span_at(start), "unterminated word literal"};
          return false;
        }
        out.push_back({Token::Kind::Word, std::move(word), span_at(start)});
        continue;
      }
      if (c == '<' && i + 1 < text_.size() && text_[i + 1] == '=') {
        out.push_back({Token::Kind::Punct, "<=", span_at(i)});
        i += 2;
        continue;
      }
      if (std::string_view("(){}[],./-").find(c) != std::string_view::npos) {
        out.push_back({Token::Kind::Punct, std::string(1, c), span_at(i)});
        ++i;
        continue;
      }
      error = {span_at(i), std::string("stray character '") + c + "'"};
      return false;
    }
    out.push_back({Token::Kind::End, "", span_at(text_.size())});
    return true;
  }

 private:
  std::string_view text_;
  int line_;
};

bool is_reserved(const std::string& word) {
  static const std::set<std::string> reserved{"concept", "role",   "individual", "feature",
                                              "axiom",   "top",    "bot",        "and",
                                              "exists",  "o",      "Q",          "S"};
  return reserved.count(word) > 0;
}

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, const KnowledgeBase& kb)
      : tokens_(std::move(tokens)), kb_(kb) {}

  const Token& peek() const { return tokens_[at_]; }
  Token take() { return tokens_[at_ == tokens_.size() - 1 ? at_ : at_++]; }

  bool at_end() const { return peek().kind == Token::Kind::End; }

  [[noreturn]] void fail(const SourceSpan& span, std::string message) {
    throw ParseError{span, std::move(message)};
  }

  void expect_punct(const std::string& p) {
    if (peek().kind != Token::Kind::Punct || peek().text != p)
      fail(peek().span, "expected '" + p + "'");
    take();
  }

  bool eat_punct(const std::string& p) {
    if (peek().kind == Token::Kind::Punct && peek().text == p) {
      take();
      return true;
    }
    return false;
  }

  std::string expect_ident(const char* what) {
    if (peek().kind != Token::Kind::Ident) fail(peek().span, std::string("expected ") + what);
    return take().text;
  }

  Name resolve(NameKind kind, const std::string& word, const SourceSpan& span) {
    auto name = lookup(kind, word);
    if (!name || !kb_.declared(*name))
      fail(span, "unknown name '" + word + "': not declared as a " + std::string(kind_word(kind)));
    return *name;
  }

  Rational parse_rational() {
    bool negative = eat_punct("-");
    if (peek().kind != Token::Kind::Integer) fail(peek().span, "expected a rational constant");
    auto span = peek().span;
    std::string num = take().text;
    std::string den = "1";
    if (eat_punct("/")) {
      if (peek().kind != Token::Kind::Integer) fail(peek().span, "expected a denominator");
      den = take().text;
    }
    try {
      Rational q{boost::multiprecision::cpp_int(num), boost::multiprecision::cpp_int(den)};
      return negative ? -q : q;
    } catch (const std::exception&) {
      fail(span, "malformed rational (zero denominator?)");
    }
  }

  std::vector<Name> feature_args(int arity) {
    expect_punct("(");
    std::vector<Name> features;
    for (;;) {
      auto span = peek().span;
      features.push_back(resolve(NameKind::Feature, expect_ident("a feature name"), span));
      if (!eat_punct(",")) break;
    }
    expect_punct(")");
    if (static_cast<int>(features.size()) != arity) {
      fail(peek().span, "arity mismatch: predicate needs " + std::to_string(arity) +
                            " feature(s), got " + std::to_string(features.size()));
    }
    return features;
  }

  ConceptRef parse_pred(bool rational_domain_pred) {
    expect_punct(".");
    auto span = peek().span;
    std::string pred = expect_ident("a predicate name");
    if (rational_domain_pred) {
      RationalPredicate p;
      if (pred == "top") p.kind = RationalPredicate::Kind::Top;
      else if (pred == "eq") p.kind = RationalPredicate::Kind::EqConst;
      else if (pred == "gt") p.kind = RationalPredicate::Kind::GtConst;
      else if (pred == "plus") p.kind = RationalPredicate::Kind::PlusConst;
      else if (pred == "same") p.kind = RationalPredicate::Kind::Same;
      else fail(span, "unknown predicate 'Q." + pred + "' (expected top, eq, gt, plus, same)");
      bool carries_constant = p.kind != RationalPredicate::Kind::Top &&
                              p.kind != RationalPredicate::Kind::Same;
      if (carries_constant) {
        expect_punct("[");
        p.q = parse_rational();
        expect_punct("]");
      }
      return Concept::pred({p, feature_args(arity_of(Predicate{p}))});
    }
    StringPredicate p;
    if (pred == "top") p.kind = StringPredicate::Kind::Top;
    else if (pred == "eq") p.kind = StringPredicate::Kind::EqWord;
    else if (pred == "concat") p.kind = StringPredicate::Kind::ConcatWord;
    else if (pred == "same") p.kind = StringPredicate::Kind::Same;
    else fail(span, "unknown predicate 'S." + pred + "' (expected top, eq, concat, same)");
    bool carries_word =
        p.kind == StringPredicate::Kind::EqWord || p.kind == StringPredicate::Kind::ConcatWord;
    if (carries_word) {
      expect_punct("[");
      if (peek().kind != Token::Kind::Word) fail(peek().span, "expected a quoted word");
      p.w = take().text;
      expect_punct("]");
    }
    return Concept::pred({p, feature_args(arity_of(Predicate{p}))});
  }

  ConceptRef parse_concept_expr() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Punct && t.text == "{") {
      take();
      auto span = peek().span;
      Name individual = resolve(NameKind::Individual, expect_ident("an individual name"), span);
      expect_punct("}");
      return Concept::nominal(individual);
    }
    if (t.kind == Token::Kind::Punct && t.text == "(") {
      take();
      if (peek().kind == Token::Kind::Ident && peek().text == "exists") {
        take();
        auto span = peek().span;
        Name role = resolve(NameKind::Role, expect_ident("a role name"), span);
        expect_punct(".");
        ConceptRef filler = parse_concept_expr();
        expect_punct(")");
        return Concept::exists(role, filler);
      }
      // n-ary conjunction, desugared left-associatively
      ConceptRef acc = parse_concept_expr();
      if (!(peek().kind == Token::Kind::Ident && peek().text == "and"))
        fail(peek().span, "expected 'and' or 'exists' inside parentheses");
      while (peek().kind == Token::Kind::Ident && peek().text == "and") {
        take();
        acc = Concept::conj(acc, parse_concept_expr());
      }
      expect_punct(")");
      return acc;
    }
    if (t.kind == Token::Kind::Ident) {
      if (t.text == "top") {
        take();
        return Concept::top();
      }
      if (t.text == "bot") {
        take();
        return Concept::bottom();
      }
      if (t.text == "Q") {
        take();
        return parse_pred(true);
      }
      if (t.text == "S") {
        take();
        return parse_pred(false);
      }
      auto span = t.span;
      Name concept_name = resolve(NameKind::Concept, take().text, span);
      return Concept::atomic(concept_name);
    }
    fail(t.span, "expected a concept (top, bot, a name, '{a}', '(...)' or a predicate)");
  }

  Constraint parse_axiom() {
    // a leading declared role name selects the role-inclusion form
    if (peek().kind == Token::Kind::Ident && !is_reserved(peek().text)) {
      auto role = lookup(NameKind::Role, peek().text);
      if (role && kb_.declared(*role)) {
        std::vector<Name> chain;
        for (;;) {
          auto span = peek().span;
          chain.push_back(resolve(NameKind::Role, expect_ident("a role name"), span));
          if (!(peek().kind == Token::Kind::Ident && peek().text == "o")) break;
          take();
        }
        expect_punct("<=");
        auto span = peek().span;
        Name super = resolve(NameKind::Role, expect_ident("a role name"), span);
        return RoleInclusion{std::move(chain), super};
      }
    }
    ConceptRef lhs = parse_concept_expr();
    expect_punct("<=");
    ConceptRef rhs = parse_concept_expr();
    return Gci{lhs, rhs};
  }

 private:
  std::vector<Token> tokens_;
  size_t at_ = 0;
  const KnowledgeBase& kb_;
};

}  // namespace

ParseResult parse_ontology(std::string_view text) {
  SourceOntology onto;
  std::vector<ParseError> errors;

  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    ++line_no;

    std::vector<Token> tokens;
    ParseError lex_error;
    if (!Lexer(line, line_no).run(tokens, lex_error)) {
      errors.push_back(lex_error);
    } else if (tokens.size() > 1) {
      LineParser parser(std::move(tokens), onto.kb);
      try {
        const Token& head = parser.peek();
        if (head.kind != Token::Kind::Ident)
          parser.fail(head.span, "expected a declaration or 'axiom'");
        if (head.text == "concept" || head.text == "role" || head.text == "individual" ||
            head.text == "feature") {
          NameKind kind = head.text == "concept"
                              ? NameKind::Concept
                              : head.text == "role"
                                    ? NameKind::Role
                                    : head.text == "individual" ? NameKind::Individual
                                                                : NameKind::Feature;
          parser.take();
          do {
            auto span = parser.peek().span;
            std::string word = parser.expect_ident("a name to declare");
            if (is_reserved(word)) parser.fail(span, "'" + word + "' is a reserved word");
            onto.kb.declare(intern(kind, word));
          } while (!parser.at_end());
        } else if (head.text == "axiom") {
          auto span = head.span;
          parser.take();
          Constraint constraint = parser.parse_axiom();
          if (!parser.at_end())
            parser.fail(parser.peek().span, "unexpected trailing input after axiom");
          onto.kb.constraints.push_back(std::move(constraint));
          onto.constraint_spans.push_back(span);
        } else {
          parser.fail(head.span,
                      "expected 'concept', 'role', 'individual', 'feature' or 'axiom'");
        }
      } catch (const ParseError& e) {
        errors.push_back(e);
      }
    }

    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }

  if (!errors.empty()) return errors;
  // the closure invariant holds by construction; keep the check anyway
  for (const auto& violation : validate(onto.kb))
    errors.push_back({SourceSpan{line_no, 1}, violation.detail});
  if (!errors.empty()) return errors;
  return onto;
}

std::variant<ConceptRef, ParseError> parse_concept(std::string_view text,
                                                   const KnowledgeBase& kb) {
  std::vector<Token> tokens;
  ParseError lex_error;
  if (!Lexer(text, 1).run(tokens, lex_error)) return lex_error;
  LineParser parser(std::move(tokens), kb);
  try {
    ConceptRef c = parser.parse_concept_expr();
    if (!parser.at_end())
      parser.fail(parser.peek().span, "unexpected trailing input after concept");
    return c;
  } catch (const ParseError& e) {
    return e;
  }
}

}  // namespace elpp
