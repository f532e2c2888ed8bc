#include "lstar/formula.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace lstar {

Formula::Formula(Kind k, std::string name, Ptr l, Ptr r)
    : kind_(k), name_(std::move(name)), left_(std::move(l)), right_(std::move(r)) {
  contains_bang_ = kind_ == Kind::Bang;
  depth_ = 0;
  for (const Ptr* c : {&left_, &right_})
    if (*c) {
      contains_bang_ = contains_bang_ || (*c)->contains_bang_;
      depth_ = std::max(depth_, (*c)->depth_ + 1);
    }
}

Formula::Ptr Formula::atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty atom name");
  return Ptr(new Formula(Kind::Atom, std::move(name), nullptr, nullptr));
}

Formula::Ptr Formula::empty() {
  return Ptr(new Formula(Kind::Empty, "", nullptr, nullptr));
}

Formula::Ptr Formula::tensor(Ptr l, Ptr r) {
  return Ptr(new Formula(Kind::Tensor, "", std::move(l), std::move(r)));
}

Formula::Ptr Formula::over(Ptr l, Ptr r) {
  return Ptr(new Formula(Kind::Over, "", std::move(l), std::move(r)));
}

Formula::Ptr Formula::under(Ptr l, Ptr r) {
  return Ptr(new Formula(Kind::Under, "", std::move(l), std::move(r)));
}

Formula::Ptr Formula::bang(Ptr body) {
  return Ptr(new Formula(Kind::Bang, "", std::move(body), nullptr));
}

bool equal(const Formula::Ptr& a, const Formula::Ptr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Formula::Kind::Atom:
      return a->name() == b->name();
    case Formula::Kind::Empty:
      return true;
    case Formula::Kind::Bang:
      return equal(a->body(), b->body());
    default:
      return equal(a->left(), b->left()) && equal(a->right(), b->right());
  }
}

std::string format_formula(const Formula::Ptr& f) {
  switch (f->kind()) {
    case Formula::Kind::Atom:
      return f->name();
    case Formula::Kind::Empty:
      return "1";
    case Formula::Kind::Tensor:
      return "(" + format_formula(f->left()) + "," + format_formula(f->right()) + ")";
    case Formula::Kind::Over:
      return "(" + format_formula(f->left()) + "/" + format_formula(f->right()) + ")";
    case Formula::Kind::Under:
      return "(" + format_formula(f->left()) + "\\" + format_formula(f->right()) + ")";
    case Formula::Kind::Bang:
      return "!" + format_formula(f->body());
  }
  throw std::logic_error("unreachable formula kind");
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text), pos_(0) {}

  Formula::Ptr parse_full() {
    skip_ws();
    if (eof()) throw ParseError("empty formula", 0);
    Formula::Ptr f = parse_comma();
    skip_ws();
    if (!eof()) throw ParseError("unexpected trailing input", pos_);
    return f;
  }

 private:
  // comma chains associate to the right
  Formula::Ptr parse_comma() {
    Formula::Ptr lhs = parse_slash();
    skip_ws();
    if (!eof() && peek() == ',') {
      ++pos_;
      Formula::Ptr rhs = parse_comma();
      return Formula::tensor(lhs, rhs);
    }
    return lhs;
  }

  // at most one slash at a level; nesting requires parentheses
  Formula::Ptr parse_slash() {
    Formula::Ptr lhs = parse_unary();
    skip_ws();
    if (eof()) return lhs;
    char c = peek();
    if (c != '/' && c != '\\') return lhs;
    ++pos_;
    Formula::Ptr rhs = parse_unary();
    skip_ws();
    if (!eof() && (peek() == '/' || peek() == '\\'))
      throw ParseError("slashes are non-associative, parenthesize", pos_);
    return c == '/' ? Formula::over(lhs, rhs) : Formula::under(lhs, rhs);
  }

  Formula::Ptr parse_unary() {
    skip_ws();
    if (eof()) throw ParseError("expected formula", pos_);
    if (peek() == '!') {
      ++pos_;
      return Formula::bang(parse_unary());
    }
    return parse_primary();
  }

  Formula::Ptr parse_primary() {
    skip_ws();
    if (eof()) throw ParseError("expected formula", pos_);
    char c = peek();
    if (c == '(') {
      ++pos_;
      Formula::Ptr f = parse_comma();
      skip_ws();
      if (eof() || peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return f;
    }
    if (c == '1') {
      ++pos_;
      return Formula::empty();
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      ++pos_;
      while (!eof() && std::isalnum(static_cast<unsigned char>(peek()))) ++pos_;
      return Formula::atom(s_.substr(start, pos_ - start));
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  void skip_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }
  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }

  const std::string& s_;
  std::size_t pos_;
};

}  // namespace

Formula::Ptr parse_formula(const std::string& text) {
  return Parser(text).parse_full();
}

bool Sequent::contains_bang() const {
  for (const auto& f : antecedent)
    if (f->contains_bang()) return true;
  return succedent->contains_bang();
}

std::string Sequent::str() const {
  std::string out;
  for (std::size_t i = 0; i < antecedent.size(); ++i) {
    if (i) out += ", ";
    out += format_formula(antecedent[i]);
  }
  out += antecedent.empty() ? "|- " : " |- ";
  out += format_formula(succedent);
  return out;
}

bool equal(const Sequent& a, const Sequent& b) {
  if (a.antecedent.size() != b.antecedent.size()) return false;
  for (std::size_t i = 0; i < a.antecedent.size(); ++i)
    if (!equal(a.antecedent[i], b.antecedent[i])) return false;
  return equal(a.succedent, b.succedent);
}

Sequent parse_sequent(const std::string& text) {
  std::size_t turn = text.find("|-");
  if (turn == std::string::npos) throw ParseError("expected '|-'", text.size());
  Sequent s;
  // split antecedent on top-level commas
  const std::string ante = text.substr(0, turn);
  std::size_t depth = 0, start = 0;
  auto flush = [&](std::size_t end) {
    std::string part = ante.substr(start, end - start);
    std::size_t a = part.find_first_not_of(" \t");
    if (a == std::string::npos) throw ParseError("empty antecedent item", start);
    s.antecedent.push_back(parse_formula(part));
  };
  bool any_content = ante.find_first_not_of(" \t") != std::string::npos;
  if (any_content) {
    for (std::size_t i = 0; i < ante.size(); ++i) {
      char c = ante[i];
      if (c == '(') ++depth;
      else if (c == ')') {
        if (depth == 0) throw ParseError("unbalanced ')'", i);
        --depth;
      } else if (c == ',' && depth == 0) {
        flush(i);
        start = i + 1;
      }
    }
    if (depth != 0) throw ParseError("unbalanced '('", ante.size());
    flush(ante.size());
  }
  s.succedent = parse_formula(text.substr(turn + 2));
  return s;
}

void Lexicon::add(const std::string& word, Formula::Ptr type) {
  entries_[word].push_back(std::move(type));
}

bool Lexicon::contains(const std::string& word) const {
  return entries_.count(word) > 0;
}

const std::vector<Formula::Ptr>& Lexicon::types(const std::string& word) const {
  auto it = entries_.find(word);
  if (it == entries_.end()) throw std::out_of_range("word not in lexicon: " + word);
  return it->second;
}

Lexicon parse_lexicon(const std::string& text) {
  Lexicon lex;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::size_t tab = line.find('\t', first);
    if (tab == std::string::npos)
      throw std::runtime_error("lexicon line " + std::to_string(lineno) +
                               ": expected word<TAB>formula");
    std::string word = line.substr(first, tab - first);
    if (word.empty())
      throw std::runtime_error("lexicon line " + std::to_string(lineno) + ": empty word");
    try {
      lex.add(word, parse_formula(line.substr(tab + 1)));
    } catch (const ParseError& e) {
      throw std::runtime_error("lexicon line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return lex;
}

Lexicon load_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lexicon file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_lexicon(buf.str());
}

}  // namespace lstar
