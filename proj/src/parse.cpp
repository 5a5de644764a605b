#include "ink/parse.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace ink {

namespace {

struct Token {
  enum class Kind { Atom, False, Not, And, Or, LParen, RParen, End };
  Kind kind;
  std::string text;
  std::size_t line, col;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  Token next() {
    skip_ws();
    const std::size_t col = pos_ + 1;
    if (pos_ >= text_.size()) return {Token::Kind::End, "", line_, col};
    const char c = text_[pos_];
    switch (c) {
      case '!': ++pos_; return {Token::Kind::Not, "!", line_, col};
      case '&': ++pos_; return {Token::Kind::And, "&", line_, col};
      case '|': ++pos_; return {Token::Kind::Or, "|", line_, col};
      case '(': ++pos_; return {Token::Kind::LParen, "(", line_, col};
      case ')': ++pos_; return {Token::Kind::RParen, ")", line_, col};
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string word(text_.substr(start, pos_ - start));
      if (word == "false") return {Token::Kind::False, word, line_, col};
      return {Token::Kind::Atom, word, line_, col};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col);
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

class Parser {
 public:
  Parser(std::string_view text, std::size_t line, const Signature* sig)
      : lexer_(text, line), sig_(sig) {
    advance();
  }

  Formula parse() {
    Formula f = parse_or();
    if (tok_.kind != Token::Kind::End) throw ParseError("unexpected trailing input '" + tok_.text + "'", tok_.line, tok_.col);
    return f;
  }

 private:
  void advance() { tok_ = lexer_.next(); }

  Formula parse_or() {
    Formula f = parse_and();
    while (tok_.kind == Token::Kind::Or) {
      advance();
      f = Formula::disj(std::move(f), parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_not();
    while (tok_.kind == Token::Kind::And) {
      advance();
      f = Formula::conj(std::move(f), parse_not());
    }
    return f;
  }

  Formula parse_not() {
    switch (tok_.kind) {
      case Token::Kind::Not: {
        advance();
        return Formula::negate(parse_not());
      }
      case Token::Kind::False: {
        advance();
        return Formula::contradiction();
      }
      case Token::Kind::Atom: {
        if (sig_ && !sig_->contains(tok_.text)) {
          throw ParseError("unknown atom '" + tok_.text + "'", tok_.line, tok_.col);
        }
        Formula f = Formula::atom(tok_.text);
        advance();
        return f;
      }
      case Token::Kind::LParen: {
        advance();
        Formula f = parse_or();
        if (tok_.kind != Token::Kind::RParen) throw ParseError("expected ')'", tok_.line, tok_.col);
        advance();
        return f;
      }
      case Token::Kind::End: throw ParseError("unexpected end of formula", tok_.line, tok_.col);
      default: throw ParseError("unexpected token '" + tok_.text + "'", tok_.line, tok_.col);
    }
  }

  Lexer lexer_;
  Token tok_{Token::Kind::End, "", 0, 0};
  const Signature* sig_;
};

bool is_blank_or_comment(std::string_view line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return std::string(hash == std::string_view::npos ? line : line.substr(0, hash));
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text, 1, nullptr).parse(); }

Formula parse_formula(std::string_view text, const Signature& sig) {
  return Parser(text, 1, &sig).parse();
}

KnowledgeBase parse_kb(std::string_view text) {
  std::vector<Formula> formulas;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? text.size() - start : end - start);
    ++lineno;
    if (!is_blank_or_comment(line)) {
      formulas.push_back(Parser(strip_comment(line), lineno, nullptr).parse());
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return KnowledgeBase(std::move(formulas));
}

KnowledgeBase read_kb_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open knowledge base file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_kb(ss.str());
}

std::string to_kb_text(const KnowledgeBase& kb) {
  std::string out;
  for (const Formula& f : kb.formulas()) {
    out += f.to_string();
    out += '\n';
  }
  return out;
}

void write_kb_file(const KnowledgeBase& kb, const std::string& path, const std::string& header_comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write knowledge base file: " + path);
  if (!header_comment.empty()) out << "# " << header_comment << '\n';
  out << to_kb_text(kb);
}

KnowledgeBase parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  long nvars = -1, nclauses = -1;
  std::vector<Formula> formulas;
  std::vector<long> clause;
  // KBs are sets; repeated clauses in the file collapse silently
  auto flush_clause = [&]() {
    if (clause.empty()) {
      formulas.push_back(Formula::contradiction());
    } else {
      std::optional<Formula> f;
      for (long lit : clause) {
        Formula l = Formula::atom("x" + std::to_string(lit < 0 ? -lit : lit));
        if (lit < 0) l = Formula::negate(std::move(l));
        f = f ? Formula::disj(std::move(*f), std::move(l)) : std::move(l);
      }
      formulas.push_back(std::move(*f));
    }
    clause.clear();
  };
  bool any_clause_open = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
    if (line[0] == 'p') {
      std::istringstream hs(line);
      std::string p, fmt;
      hs >> p >> fmt >> nvars >> nclauses;
      if (fmt != "cnf" || nvars < 0 || nclauses < 0) throw ParseError("malformed DIMACS header", lineno, 1);
      continue;
    }
    if (nvars < 0) throw ParseError("clause before DIMACS header", lineno, 1);
    std::istringstream ls(line);
    long lit;
    while (ls >> lit) {
      if (lit == 0) {
        flush_clause();
        any_clause_open = false;
      } else {
        if (lit > nvars || -lit > nvars) throw ParseError("literal out of range", lineno, 1);
        clause.push_back(lit);
        any_clause_open = true;
      }
    }
  }
  if (any_clause_open) flush_clause();  // tolerate a missing final 0
  if (nvars < 0) throw ParseError("missing DIMACS header", lineno == 0 ? 1 : lineno, 1);
  // dedupe: the KB constructor rejects duplicates, so filter here
  std::vector<Formula> unique;
  for (auto& f : formulas) {
    bool seen = false;
    for (const auto& g : unique) {
      if (g == f) {
        seen = true;
        break;
      }
    }
    if (!seen) unique.push_back(std::move(f));
  }
  // the signature must cover all declared variables even if unused
  std::set<std::string> atoms;
  for (const auto& f : unique) f.collect_atoms(atoms);
  for (long i = 1; i <= nvars; ++i) atoms.insert("x" + std::to_string(i));
  return KnowledgeBase(std::move(unique), make_signature({atoms.begin(), atoms.end()}));
}

KnowledgeBase read_dimacs_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open DIMACS file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_dimacs(ss.str());
}

namespace {

void collect_clause_literals(const Formula& f, std::vector<std::pair<std::string, bool>>& lits) {
  switch (f.kind()) {
    case Formula::Kind::Or:
      collect_clause_literals(f.left(), lits);
      collect_clause_literals(f.right(), lits);
      return;
    case Formula::Kind::Atom: lits.emplace_back(f.atom_name(), false); return;
    case Formula::Kind::Not:
      if (f.child().kind() == Formula::Kind::Atom) {
        lits.emplace_back(f.child().atom_name(), true);
        return;
      }
      throw InvalidArgumentError("not a clause: " + f.to_string());
    default: throw InvalidArgumentError("not a clause: " + f.to_string());
  }
}

}  // namespace

std::string to_dimacs(const KnowledgeBase& kb) {
  const Signature& sig = kb.signature();
  std::string body;
  for (const Formula& f : kb.formulas()) {
    std::vector<std::pair<std::string, bool>> lits;
    collect_clause_literals(f, lits);
    for (const auto& [atom, neg] : lits) {
      body += (neg ? "-" : "") + std::to_string(sig.index_of(atom) + 1) + ' ';
    }
    body += "0\n";
  }
  std::string out = "p cnf " + std::to_string(sig.size()) + ' ' + std::to_string(kb.size()) + '\n';
  return out + body;
}

}  // namespace ink
