#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace lstar {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " at position " + std::to_string(position)),
        pos(position) {}
  std::size_t pos;
};

/// Types of the calculus: atoms, the empty type, tensor (comma), the two
/// slashes and the ! modality. Immutable, shared subtrees are fine.
class Formula {
 public:
  enum class Kind { Atom, Empty, Tensor, Over, Under, Bang };

  using Ptr = std::shared_ptr<const Formula>;

  static Ptr atom(std::string name);
  static Ptr empty();
  static Ptr tensor(Ptr l, Ptr r);
  /// B/A: left is the result, right the argument sought on the right.
  static Ptr over(Ptr l, Ptr r);
  /// A\B: left is the argument sought on the left, right the result.
  static Ptr under(Ptr l, Ptr r);
  static Ptr bang(Ptr body);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const Ptr& left() const { return left_; }
  const Ptr& right() const { return right_; }
  const Ptr& body() const { return left_; }

  bool is_bang() const { return kind_ == Kind::Bang; }
  /// True if a ! occurs anywhere in the formula.
  bool contains_bang() const { return contains_bang_; }
  std::size_t depth() const { return depth_; }

 private:
  Formula(Kind k, std::string name, Ptr l, Ptr r);

  Kind kind_;
  std::string name_;
  Ptr left_, right_;
  bool contains_bang_;
  std::size_t depth_;
};

bool equal(const Formula::Ptr& a, const Formula::Ptr& b);

/// Canonical fully parenthesized text; parses back to the same structure.
std::string format_formula(const Formula::Ptr& f);

/// Grammar: ! binds tightest, slashes are non-associative (parenthesize to
/// nest), unparenthesized comma associates to the right, "1" is the empty
/// type. Throws ParseError with a byte position on malformed input.
Formula::Ptr parse_formula(const std::string& text);

struct Sequent {
  std::vector<Formula::Ptr> antecedent;
  Formula::Ptr succedent;

  bool contains_bang() const;
  std::string str() const;
};

bool equal(const Sequent& a, const Sequent& b);

/// Parses "F1, F2, ... |- G"; the antecedent may be empty.
Sequent parse_sequent(const std::string& text);

class Lexicon {
 public:
  void add(const std::string& word, Formula::Ptr type);
  bool contains(const std::string& word) const;
  const std::vector<Formula::Ptr>& types(const std::string& word) const;
  const std::map<std::string, std::vector<Formula::Ptr>>& entries() const {
    return entries_;
  }
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::vector<Formula::Ptr>> entries_;
};

/// One "word<TAB>formula" entry per line; '#' starts a comment, blank lines
/// are skipped, repeated words accumulate alternative types.
Lexicon parse_lexicon(const std::string& text);
Lexicon load_lexicon(const std::string& path);

}  // namespace lstar
