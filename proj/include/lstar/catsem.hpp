#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "lstar/formula.hpp"
#include "lstar/prover.hpp"

namespace lstar {

struct TypeError : std::runtime_error {
  explicit TypeError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Objects of the free monoidal biclosed category with a ! modality.
/// Tensors are kept in a normal form (right-nested, units dropped), so
/// structural equality coincides with equality up to associativity/unit.
class ObjectExpr {
 public:
  enum class Kind { Unit, Base, TensorOb, HomR, HomL, BangOb };
  using Ptr = std::shared_ptr<const ObjectExpr>;

  static Ptr unit();
  static Ptr base(std::string atom);
  static Ptr tensor(Ptr l, Ptr r);
  static Ptr tensor_all(const std::vector<Ptr>& factors);
  /// A => B (argument expected on the left).
  static Ptr hom_r(Ptr a, Ptr b);
  /// A <= B (argument expected on the right).
  static Ptr hom_l(Ptr a, Ptr b);
  static Ptr bang(Ptr body);

  Kind kind() const { return kind_; }
  const std::string& atom() const { return atom_; }
  const Ptr& left() const { return left_; }
  const Ptr& right() const { return right_; }
  const Ptr& body() const { return left_; }

 private:
  ObjectExpr(Kind k, std::string atom, Ptr l, Ptr r)
      : kind_(k), atom_(std::move(atom)), left_(std::move(l)), right_(std::move(r)) {}
  Kind kind_;
  std::string atom_;
  Ptr left_, right_;
};

bool equal(const ObjectExpr::Ptr& a, const ObjectExpr::Ptr& b);
std::string format_object(const ObjectExpr::Ptr& o);
/// Top-level tensor factors; Unit has none.
std::vector<ObjectExpr::Ptr> factors(const ObjectExpr::Ptr& o);

/// Structural translation of formulas into objects.
ObjectExpr::Ptr object_of(const Formula::Ptr& f);
ObjectExpr::Ptr object_of_antecedent(const std::vector<Formula::Ptr>& fs);

/// Morphism expressions of the free category: identities, composition,
/// tensoring, evaluation and currying for both homs, the comonad/comonoid
/// structure of !, restricted symmetry, and the lax monoidal m. Every term
/// carries its domain and codomain.
class MorphTerm {
 public:
  enum class Kind {
    Id,
    Compose,
    TensorM,
    EvalR,
    EvalL,
    CurryL,
    CurryR,
    CoDelta,
    CoUnit,
    ComonadDelta,
    ComonadEps,
    SigmaR,
    SigmaL,
    LaxM,
    BangMap
  };
  using Ptr = std::shared_ptr<const MorphTerm>;

  static Ptr id(ObjectExpr::Ptr a);
  static Ptr compose(Ptr g, Ptr f);  // g after f; throws on cod/dom mismatch
  static Ptr tensor(Ptr f, Ptr g);
  static Ptr eval_r(ObjectExpr::Ptr a, ObjectExpr::Ptr b);  // A (x) (A=>B) -> B
  static Ptr eval_l(ObjectExpr::Ptr a, ObjectExpr::Ptr b);  // (A<=B) (x) B -> A
  /// f : A (x) C -> B becomes C -> (A => B); a names the abstracted prefix.
  static Ptr curry_l(Ptr f, ObjectExpr::Ptr a);
  /// f : C (x) B -> A becomes C -> (A <= B); b names the abstracted suffix.
  static Ptr curry_r(Ptr f, ObjectExpr::Ptr b);
  static Ptr co_delta(ObjectExpr::Ptr a);       // !A -> !A (x) !A
  static Ptr co_unit(ObjectExpr::Ptr a);        // !A -> I
  static Ptr comonad_delta(ObjectExpr::Ptr a);  // !A -> !!A
  static Ptr comonad_eps(ObjectExpr::Ptr a);    // !A -> A
  static Ptr sigma_r(ObjectExpr::Ptr a, ObjectExpr::Ptr b);  // A (x) !B -> !B (x) A
  static Ptr sigma_l(ObjectExpr::Ptr a, ObjectExpr::Ptr b);  // !A (x) B -> B (x) !A
  static Ptr lax_m(ObjectExpr::Ptr a, ObjectExpr::Ptr b);    // !A (x) !B -> !(A(x)B)
  static Ptr bang_map(Ptr f);                                // !f

  /// Builds a Compose node without the cod/dom check (for negative tests).
  static Ptr compose_unchecked(Ptr g, Ptr f);

  Kind kind() const { return kind_; }
  const ObjectExpr::Ptr& dom() const { return dom_; }
  const ObjectExpr::Ptr& cod() const { return cod_; }
  const ObjectExpr::Ptr& obj_a() const { return a_; }
  const ObjectExpr::Ptr& obj_b() const { return b_; }
  const Ptr& child(std::size_t i) const { return children_.at(i); }
  std::size_t arity() const { return children_.size(); }

  std::size_t count_kind(Kind k) const;

 private:
  MorphTerm(Kind k, ObjectExpr::Ptr a, ObjectExpr::Ptr b, std::vector<Ptr> children,
            ObjectExpr::Ptr dom, ObjectExpr::Ptr cod)
      : kind_(k),
        a_(std::move(a)),
        b_(std::move(b)),
        children_(std::move(children)),
        dom_(std::move(dom)),
        cod_(std::move(cod)) {}

  Kind kind_;
  ObjectExpr::Ptr a_, b_;
  std::vector<Ptr> children_;
  ObjectExpr::Ptr dom_, cod_;
};

/// True iff all dom/cod constraints hold recursively.
bool typecheck(const MorphTerm::Ptr& t);

/// Maps a checked derivation to a morphism term with dom the tensor of the
/// antecedent objects and cod the succedent object.
MorphTerm::Ptr translate(const Derivation& d);

/// One constructor per node, S-expression style.
std::string format_term(const MorphTerm::Ptr& t);

}  // namespace lstar
