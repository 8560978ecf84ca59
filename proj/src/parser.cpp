#include "proofforge/parser.hpp"

#include <cctype>
#include <optional>
#include <sstream>

#include "proofforge/errors.hpp"

namespace proofforge {

ParseError::ParseError(int line, int column, std::vector<std::string> expected, const std::string& found)
    : Error([&] {
        std::ostringstream msg;
        msg << "line " << line << ", column " << column << ": expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
          if (i) msg << (i + 1 == expected.size() ? " or " : ", ");
          msg << expected[i];
        }
        msg << " but found " << found;
        return msg.str();
      }()),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

namespace {

bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool identChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// --- functional ascii syntax -----------------------------------------------------

enum class Tok { Ident, LParen, RParen, Comma, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    skipBlank();
    cur_ = Token{Tok::End, {}, line_, col_};
    if (pos_ >= src_.size()) return;
    char c = src_[pos_];
    if (identStart(c)) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && identChar(src_[pos_])) bump();
      cur_.kind = Tok::Ident;
      cur_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    bump();
    switch (c) {
      case '(': cur_.kind = Tok::LParen; cur_.text = "("; return;
      case ')': cur_.kind = Tok::RParen; cur_.text = ")"; return;
      case ',': cur_.kind = Tok::Comma; cur_.text = ","; return;
      default:
        throw ParseError(cur_.line, cur_.column, {"an axiom or concept"}, "'" + std::string(1, c) + "'");
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skipBlank() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token cur_;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> kw{"top", "bot", "not", "and", "or", "some", "only", "sub", "equiv", "subrole"};
  return kw;
}

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

class AsciiParser {
 public:
  explicit AsciiParser(std::string_view text) : lex_(text) {}

  bool atEnd() const { return lex_.peek().kind == Tok::End; }
  const Token& peek() const { return lex_.peek(); }

  Axiom axiom() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Ident && (t.text == "sub" || t.text == "equiv")) {
      bool isSub = lex_.take().text == "sub";
      expect(Tok::LParen, "'('");
      Concept lhs = parseConceptExpr();
      expect(Tok::Comma, "','");
      Concept rhs = parseConceptExpr();
      expect(Tok::RParen, "')'");
      return isSub ? Axiom::gci(std::move(lhs), std::move(rhs)) : Axiom::equiv(std::move(lhs), std::move(rhs));
    }
    if (t.kind == Tok::Ident && t.text == "subrole") {
      lex_.take();
      expect(Tok::LParen, "'('");
      auto r = role();
      expect(Tok::Comma, "','");
      auto s = role();
      expect(Tok::RParen, "')'");
      return Axiom::roleInclusion(std::move(r), std::move(s));
    }
    throw ParseError(t.line, t.column, {"'sub'", "'equiv'", "'subrole'"}, describe(t));
  }

  Concept parseConceptExpr() {
    const Token& t = lex_.peek();
    if (t.kind != Tok::Ident) throw ParseError(t.line, t.column, conceptStarts(), describe(t));
    Token head = lex_.take();
    const std::string& w = head.text;
    if (w == "top") return Concept::top();
    if (w == "bot") return Concept::bottom();
    if (w == "not") {
      expect(Tok::LParen, "'('");
      Concept c = parseConceptExpr();
      expect(Tok::RParen, "')'");
      return Concept::negation(std::move(c));
    }
    if (w == "and" || w == "or") {
      expect(Tok::LParen, "'('");
      std::vector<Concept> ops{parseConceptExpr()};
      expect(Tok::Comma, "','");
      ops.push_back(parseConceptExpr());
      while (lex_.peek().kind == Tok::Comma) {
        lex_.take();
        ops.push_back(parseConceptExpr());
      }
      expect(Tok::RParen, "')'");
      return w == "and" ? Concept::conjunction(std::move(ops)) : Concept::disjunction(std::move(ops));
    }
    if (w == "some" || w == "only") {
      expect(Tok::LParen, "'('");
      auto r = role();
      expect(Tok::Comma, "','");
      Concept f = parseConceptExpr();
      expect(Tok::RParen, "')'");
      return w == "some" ? Concept::exists(std::move(r), std::move(f)) : Concept::forall(std::move(r), std::move(f));
    }
    if (keywords().count(w)) throw ParseError(head.line, head.column, conceptStarts(), "keyword '" + w + "'");
    return Concept::name(w);
  }

 private:
  static std::vector<std::string> conceptStarts() {
    return {"'top'", "'bot'", "'not'", "'and'", "'or'", "'some'", "'only'", "a concept name"};
  }

  RoleName role() {
    const Token& t = lex_.peek();
    if (t.kind != Tok::Ident || keywords().count(t.text)) throw ParseError(t.line, t.column, {"a role name"}, describe(t));
    return lex_.take().text;
  }

  void expect(Tok kind, const char* what) {
    const Token& t = lex_.peek();
    if (t.kind != kind) throw ParseError(t.line, t.column, {what}, describe(t));
    lex_.take();
  }

  Lexer lex_;
};

// --- display syntax -----------------------------------------------------------------

enum class DTok { Ident, Top, Bottom, Not, And, Or, Exists, Forall, Dot, LParen, RParen, Sub, Equiv, End };

struct DToken {
  DTok kind = DTok::End;
  std::string text;
  int column = 1;
};

class DisplayParser {
 public:
  explicit DisplayParser(std::string_view src) : src_(src) { advance(); }

  Axiom axiom(const std::set<std::string>& roles) {
    if (cur_.kind == DTok::Ident) {
      // Role inclusions are two bare names around ⊑.
      std::size_t save = pos_;
      int saveCol = col_;
      DToken first = cur_;
      advance();
      if (cur_.kind == DTok::Sub) {
        advance();
        if (cur_.kind == DTok::Ident) {
          DToken second = cur_;
          advance();
          if (cur_.kind == DTok::End && roles.count(first.text) && roles.count(second.text))
            return Axiom::roleInclusion(first.text, second.text);
        }
      }
      pos_ = save;
      col_ = saveCol;
      cur_ = first;
    }
    Concept lhs = disjunction();
    DTok op = cur_.kind;
    if (op != DTok::Sub && op != DTok::Equiv) fail({"'⊑'", "'≡'"});
    advance();
    Concept rhs = disjunction();
    if (cur_.kind != DTok::End) fail({"end of axiom"});
    return op == DTok::Sub ? Axiom::gci(lhs, rhs) : Axiom::equiv(lhs, rhs);
  }

  Concept wholeConcept() {
    Concept c = disjunction();
    if (cur_.kind != DTok::End) fail({"end of concept"});
    return c;
  }

 private:
  Concept disjunction() {
    std::vector<Concept> ops{conjunction()};
    while (cur_.kind == DTok::Or) {
      advance();
      ops.push_back(conjunction());
    }
    return ops.size() == 1 ? ops.front() : Concept::disjunction(std::move(ops));
  }

  Concept conjunction() {
    std::vector<Concept> ops{unary()};
    while (cur_.kind == DTok::And) {
      advance();
      ops.push_back(unary());
    }
    return ops.size() == 1 ? ops.front() : Concept::conjunction(std::move(ops));
  }

  Concept unary() {
    switch (cur_.kind) {
      case DTok::Top: advance(); return Concept::top();
      case DTok::Bottom: advance(); return Concept::bottom();
      case DTok::Ident: {
        std::string n = cur_.text;
        advance();
        return Concept::name(n);
      }
      case DTok::Not: advance(); return Concept::negation(unary());
      case DTok::Exists:
      case DTok::Forall: {
        bool ex = cur_.kind == DTok::Exists;
        advance();
        if (cur_.kind != DTok::Ident) fail({"a role name"});
        std::string r = cur_.text;
        advance();
        if (cur_.kind != DTok::Dot) fail({"'.'"});
        advance();
        Concept f = unary();
        return ex ? Concept::exists(r, f) : Concept::forall(r, f);
      }
      case DTok::LParen: {
        advance();
        Concept c = disjunction();
        if (cur_.kind != DTok::RParen) fail({"')'"});
        advance();
        return c;
      }
      default: fail({"a concept"});
    }
    return Concept::top();
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string found = cur_.kind == DTok::End ? "end of input" : "'" + cur_.text + "'";
    throw ParseError(1, cur_.column, std::move(expected), found);
  }

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
      ++col_;
    }
    cur_ = DToken{DTok::End, {}, col_};
    if (pos_ >= src_.size()) return;
    char c = src_[pos_];
    if (identStart(c)) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && identChar(src_[pos_])) ++pos_;
      cur_.kind = DTok::Ident;
      cur_.text = std::string(src_.substr(start, pos_ - start));
      col_ += static_cast<int>(pos_ - start);
      return;
    }
    static const std::pair<std::string_view, DTok> symbols[] = {
        {"⊤", DTok::Top}, {"⊥", DTok::Bottom}, {"¬", DTok::Not},    {"⊓", DTok::And},
        {"⊔", DTok::Or},  {"∃", DTok::Exists}, {"∀", DTok::Forall}, {"⊑", DTok::Sub},
        {"≡", DTok::Equiv}, {".", DTok::Dot},  {"(", DTok::LParen}, {")", DTok::RParen},
    };
    for (const auto& [sym, kind] : symbols) {
      if (src_.substr(pos_, sym.size()) == sym) {
        cur_.kind = kind;
        cur_.text = std::string(sym);
        pos_ += sym.size();
        ++col_;
        return;
      }
    }
    cur_.text = std::string(1, c);
    cur_.kind = DTok::End;
    throw ParseError(1, col_, {"a concept"}, "'" + cur_.text + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int col_ = 1;
  DToken cur_;
};

}  // namespace

Ontology parseOntology(std::string_view text) {
  AsciiParser p(text);
  Ontology o;
  while (!p.atEnd()) {
    int line = p.peek().line;
    Axiom a = p.axiom();
    if (!o.add(a)) o.addWarning("line " + std::to_string(line) + ": duplicate axiom " + a.key() + " ignored");
  }
  return o;
}

Axiom parseAxiom(std::string_view text) {
  AsciiParser p(text);
  Axiom a = p.axiom();
  if (!p.atEnd()) throw ParseError(p.peek().line, p.peek().column, {"end of input"}, "'" + p.peek().text + "'");
  return a;
}

Concept parseConcept(std::string_view text) {
  AsciiParser p(text);
  Concept c = p.parseConceptExpr();
  if (!p.atEnd()) throw ParseError(p.peek().line, p.peek().column, {"end of input"}, "'" + p.peek().text + "'");
  return c;
}

Axiom parseDisplayAxiom(std::string_view text, const std::set<std::string>& roleNames) {
  return DisplayParser(text).axiom(roleNames);
}

Concept parseDisplayConcept(std::string_view text) { return DisplayParser(text).wholeConcept(); }

std::set<std::string> parseNameList(std::string_view text) {
  std::set<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string w;
    while (words >> w) {
      // Also accept comma-separated lists on one line.
      std::size_t start = 0;
      while (start <= w.size()) {
        auto comma = w.find(',', start);
        auto piece = w.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!piece.empty()) out.insert(piece);
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    }
  }
  return out;
}

std::string printAxiom(const Axiom& a, PrintStyle style) { return a.print(style); }

}  // namespace proofforge
