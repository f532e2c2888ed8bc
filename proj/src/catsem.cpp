#include "lstar/catsem.hpp"

#include <sstream>

namespace lstar {

ObjectExpr::Ptr ObjectExpr::unit() {
  static Ptr u(new ObjectExpr(Kind::Unit, "", nullptr, nullptr));
  return u;
}

ObjectExpr::Ptr ObjectExpr::base(std::string atom) {
  return Ptr(new ObjectExpr(Kind::Base, std::move(atom), nullptr, nullptr));
}

ObjectExpr::Ptr ObjectExpr::tensor(Ptr l, Ptr r) {
  if (l->kind() == Kind::Unit) return r;
  if (r->kind() == Kind::Unit) return l;
  if (l->kind() == Kind::TensorOb)
    return tensor(l->left(), tensor(l->right(), std::move(r)));
  return Ptr(new ObjectExpr(Kind::TensorOb, "", std::move(l), std::move(r)));
}

ObjectExpr::Ptr ObjectExpr::tensor_all(const std::vector<Ptr>& fs) {
  Ptr acc = unit();
  for (std::size_t i = fs.size(); i-- > 0;) acc = tensor(fs[i], acc);
  return acc;
}

ObjectExpr::Ptr ObjectExpr::hom_r(Ptr a, Ptr b) {
  return Ptr(new ObjectExpr(Kind::HomR, "", std::move(a), std::move(b)));
}

ObjectExpr::Ptr ObjectExpr::hom_l(Ptr a, Ptr b) {
  return Ptr(new ObjectExpr(Kind::HomL, "", std::move(a), std::move(b)));
}

ObjectExpr::Ptr ObjectExpr::bang(Ptr body) {
  return Ptr(new ObjectExpr(Kind::BangOb, "", std::move(body), nullptr));
}

bool equal(const ObjectExpr::Ptr& a, const ObjectExpr::Ptr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case ObjectExpr::Kind::Unit:
      return true;
    case ObjectExpr::Kind::Base:
      return a->atom() == b->atom();
    case ObjectExpr::Kind::BangOb:
      return equal(a->body(), b->body());
    default:
      return equal(a->left(), b->left()) && equal(a->right(), b->right());
  }
}

std::string format_object(const ObjectExpr::Ptr& o) {
  switch (o->kind()) {
    case ObjectExpr::Kind::Unit:
      return "I";
    case ObjectExpr::Kind::Base:
      return o->atom();
    case ObjectExpr::Kind::TensorOb:
      return "(" + format_object(o->left()) + " * " + format_object(o->right()) + ")";
    case ObjectExpr::Kind::HomR:
      return "(" + format_object(o->left()) + " => " + format_object(o->right()) + ")";
    case ObjectExpr::Kind::HomL:
      return "(" + format_object(o->left()) + " <= " + format_object(o->right()) + ")";
    case ObjectExpr::Kind::BangOb:
      return "!" + format_object(o->body());
  }
  return "?";
}

std::vector<ObjectExpr::Ptr> factors(const ObjectExpr::Ptr& o) {
  std::vector<ObjectExpr::Ptr> out;
  ObjectExpr::Ptr cur = o;
  while (cur->kind() == ObjectExpr::Kind::TensorOb) {
    out.push_back(cur->left());
    cur = cur->right();
  }
  if (cur->kind() != ObjectExpr::Kind::Unit) out.push_back(cur);
  return out;
}

ObjectExpr::Ptr object_of(const Formula::Ptr& f) {
  switch (f->kind()) {
    case Formula::Kind::Atom:
      return ObjectExpr::base(f->name());
    case Formula::Kind::Empty:
      return ObjectExpr::unit();
    case Formula::Kind::Tensor:
      return ObjectExpr::tensor(object_of(f->left()), object_of(f->right()));
    case Formula::Kind::Under:  // A\B  ~>  A => B
      return ObjectExpr::hom_r(object_of(f->left()), object_of(f->right()));
    case Formula::Kind::Over:  // B/A  ~>  B <= A
      return ObjectExpr::hom_l(object_of(f->left()), object_of(f->right()));
    case Formula::Kind::Bang:
      return ObjectExpr::bang(object_of(f->body()));
  }
  throw std::logic_error("unreachable formula kind");
}

ObjectExpr::Ptr object_of_antecedent(const std::vector<Formula::Ptr>& fs) {
  ObjectExpr::Ptr acc = ObjectExpr::unit();
  for (std::size_t i = fs.size(); i-- > 0;)
    acc = ObjectExpr::tensor(object_of(fs[i]), acc);
  return acc;
}

// ---------------------------------------------------------------------------
// MorphTerm constructors

namespace {
using OE = ObjectExpr;
using MT = MorphTerm;

bool is_prefix(const std::vector<OE::Ptr>& pre, const std::vector<OE::Ptr>& all) {
  if (pre.size() > all.size()) return false;
  for (std::size_t i = 0; i < pre.size(); ++i)
    if (!equal(pre[i], all[i])) return false;
  return true;
}

OE::Ptr drop_prefix(const std::vector<OE::Ptr>& all, std::size_t k) {
  return OE::tensor_all({all.begin() + k, all.end()});
}

}  // namespace

MT::Ptr MorphTerm::id(OE::Ptr a) {
  return Ptr(new MT(Kind::Id, a, nullptr, {}, a, a));
}

MT::Ptr MorphTerm::compose(Ptr g, Ptr f) {
  if (!equal(f->cod(), g->dom()))
    throw TypeError("compose: cod " + format_object(f->cod()) + " does not match dom " +
                    format_object(g->dom()));
  auto dom = f->dom();
  auto cod = g->cod();
  return Ptr(new MT(Kind::Compose, nullptr, nullptr, {std::move(g), std::move(f)}, dom,
                    cod));
}

MT::Ptr MorphTerm::compose_unchecked(Ptr g, Ptr f) {
  auto dom = f->dom();
  auto cod = g->cod();
  return Ptr(new MT(Kind::Compose, nullptr, nullptr, {std::move(g), std::move(f)}, dom,
                    cod));
}

MT::Ptr MorphTerm::tensor(Ptr f, Ptr g) {
  auto dom = OE::tensor(f->dom(), g->dom());
  auto cod = OE::tensor(f->cod(), g->cod());
  return Ptr(new MT(Kind::TensorM, nullptr, nullptr, {std::move(f), std::move(g)}, dom,
                    cod));
}

MT::Ptr MorphTerm::eval_r(OE::Ptr a, OE::Ptr b) {
  auto hom = OE::hom_r(a, b);
  return Ptr(new MT(Kind::EvalR, a, b, {}, OE::tensor(a, hom), b));
}

MT::Ptr MorphTerm::eval_l(OE::Ptr a, OE::Ptr b) {
  auto hom = OE::hom_l(a, b);
  return Ptr(new MT(Kind::EvalL, a, b, {}, OE::tensor(hom, b), a));
}

MT::Ptr MorphTerm::curry_l(Ptr f, OE::Ptr a) {
  auto all = factors(f->dom());
  auto pre = factors(a);
  if (!is_prefix(pre, all))
    throw TypeError("curry_l: " + format_object(a) + " is not a prefix of " +
                    format_object(f->dom()));
  auto rest = drop_prefix(all, pre.size());
  auto cod = OE::hom_r(a, f->cod());
  return Ptr(new MT(Kind::CurryL, a, nullptr, {std::move(f)}, rest, cod));
}

MT::Ptr MorphTerm::curry_r(Ptr f, OE::Ptr b) {
  auto all = factors(f->dom());
  auto suf = factors(b);
  if (suf.size() > all.size())
    throw TypeError("curry_r: suffix longer than domain");
  std::vector<OE::Ptr> pre(all.begin(), all.end() - suf.size());
  std::vector<OE::Ptr> tail(all.end() - suf.size(), all.end());
  if (!is_prefix(suf, tail))
    throw TypeError("curry_r: " + format_object(b) + " is not a suffix of " +
                    format_object(f->dom()));
  auto cod = OE::hom_l(f->cod(), b);
  return Ptr(new MT(Kind::CurryR, b, nullptr, {std::move(f)}, OE::tensor_all(pre), cod));
}

MT::Ptr MorphTerm::co_delta(OE::Ptr a) {
  auto ba = OE::bang(a);
  return Ptr(new MT(Kind::CoDelta, a, nullptr, {}, ba, OE::tensor(ba, ba)));
}

MT::Ptr MorphTerm::co_unit(OE::Ptr a) {
  return Ptr(new MT(Kind::CoUnit, a, nullptr, {}, OE::bang(a), OE::unit()));
}

MT::Ptr MorphTerm::comonad_delta(OE::Ptr a) {
  auto ba = OE::bang(a);
  return Ptr(new MT(Kind::ComonadDelta, a, nullptr, {}, ba, OE::bang(ba)));
}

MT::Ptr MorphTerm::comonad_eps(OE::Ptr a) {
  return Ptr(new MT(Kind::ComonadEps, a, nullptr, {}, OE::bang(a), a));
}

MT::Ptr MorphTerm::sigma_r(OE::Ptr a, OE::Ptr b) {
  auto bb = OE::bang(b);
  return Ptr(new MT(Kind::SigmaR, a, b, {}, OE::tensor(a, bb), OE::tensor(bb, a)));
}

MT::Ptr MorphTerm::sigma_l(OE::Ptr a, OE::Ptr b) {
  auto ba = OE::bang(a);
  return Ptr(new MT(Kind::SigmaL, a, b, {}, OE::tensor(ba, b), OE::tensor(b, ba)));
}

MT::Ptr MorphTerm::lax_m(OE::Ptr a, OE::Ptr b) {
  return Ptr(new MT(Kind::LaxM, a, b, {}, OE::tensor(OE::bang(a), OE::bang(b)),
                    OE::bang(OE::tensor(a, b))));
}

MT::Ptr MorphTerm::bang_map(Ptr f) {
  auto dom = OE::bang(f->dom());
  auto cod = OE::bang(f->cod());
  return Ptr(new MT(Kind::BangMap, nullptr, nullptr, {std::move(f)}, dom, cod));
}

std::size_t MorphTerm::count_kind(Kind k) const {
  std::size_t n = kind_ == k ? 1 : 0;
  for (const auto& c : children_) n += c->count_kind(k);
  return n;
}

// ---------------------------------------------------------------------------
// typecheck

namespace {

bool typecheck_rec(const MT::Ptr& t) {
  using K = MT::Kind;
  for (std::size_t i = 0; i < t->arity(); ++i)
    if (!typecheck_rec(t->child(i))) return false;
  switch (t->kind()) {
    case K::Id:
      return equal(t->dom(), t->cod()) && equal(t->dom(), t->obj_a());
    case K::Compose: {
      if (t->arity() != 2) return false;
      const auto& g = t->child(0);
      const auto& f = t->child(1);
      return equal(f->cod(), g->dom()) && equal(t->dom(), f->dom()) &&
             equal(t->cod(), g->cod());
    }
    case K::TensorM: {
      if (t->arity() != 2) return false;
      const auto& f = t->child(0);
      const auto& g = t->child(1);
      return equal(t->dom(), OE::tensor(f->dom(), g->dom())) &&
             equal(t->cod(), OE::tensor(f->cod(), g->cod()));
    }
    case K::EvalR:
      return equal(t->dom(), OE::tensor(t->obj_a(), OE::hom_r(t->obj_a(), t->obj_b()))) &&
             equal(t->cod(), t->obj_b());
    case K::EvalL:
      return equal(t->dom(), OE::tensor(OE::hom_l(t->obj_a(), t->obj_b()), t->obj_b())) &&
             equal(t->cod(), t->obj_a());
    case K::CurryL: {
      if (t->arity() != 1) return false;
      const auto& f = t->child(0);
      return equal(f->dom(), OE::tensor(t->obj_a(), t->dom())) &&
             equal(t->cod(), OE::hom_r(t->obj_a(), f->cod()));
    }
    case K::CurryR: {
      if (t->arity() != 1) return false;
      const auto& f = t->child(0);
      return equal(f->dom(), OE::tensor(t->dom(), t->obj_a())) &&
             equal(t->cod(), OE::hom_l(f->cod(), t->obj_a()));
    }
    case K::CoDelta: {
      auto ba = OE::bang(t->obj_a());
      return equal(t->dom(), ba) && equal(t->cod(), OE::tensor(ba, ba));
    }
    case K::CoUnit:
      return equal(t->dom(), OE::bang(t->obj_a())) &&
             t->cod()->kind() == OE::Kind::Unit;
    case K::ComonadDelta:
      return equal(t->dom(), OE::bang(t->obj_a())) &&
             equal(t->cod(), OE::bang(OE::bang(t->obj_a())));
    case K::ComonadEps:
      return equal(t->dom(), OE::bang(t->obj_a())) && equal(t->cod(), t->obj_a());
    case K::SigmaR: {
      auto bb = OE::bang(t->obj_b());
      return equal(t->dom(), OE::tensor(t->obj_a(), bb)) &&
             equal(t->cod(), OE::tensor(bb, t->obj_a()));
    }
    case K::SigmaL: {
      auto ba = OE::bang(t->obj_a());
      return equal(t->dom(), OE::tensor(ba, t->obj_b())) &&
             equal(t->cod(), OE::tensor(t->obj_b(), ba));
    }
    case K::LaxM:
      return equal(t->dom(), OE::tensor(OE::bang(t->obj_a()), OE::bang(t->obj_b()))) &&
             equal(t->cod(), OE::bang(OE::tensor(t->obj_a(), t->obj_b())));
    case K::BangMap: {
      if (t->arity() != 1) return false;
      const auto& f = t->child(0);
      return equal(t->dom(), OE::bang(f->dom())) && equal(t->cod(), OE::bang(f->cod()));
    }
  }
  return false;
}

}  // namespace

bool typecheck(const MorphTerm::Ptr& t) { return t && typecheck_rec(t); }

// ---------------------------------------------------------------------------
// translate

namespace {

// id_{D1} (x) h (x) id_{D2}, skipping empty contexts
MT::Ptr wrap(MT::Ptr h, const std::vector<Formula::Ptr>& d1,
             const std::vector<Formula::Ptr>& d2) {
  if (!d1.empty()) h = MT::tensor(MT::id(object_of_antecedent(d1)), std::move(h));
  if (!d2.empty()) h = MT::tensor(std::move(h), MT::id(object_of_antecedent(d2)));
  return h;
}

std::vector<Formula::Ptr> slice(const std::vector<Formula::Ptr>& v, int from, int to) {
  return {v.begin() + from, v.begin() + to};
}

}  // namespace

MorphTerm::Ptr translate(const Derivation& d) {
  const auto& ante = d.conclusion.antecedent;
  const int n = static_cast<int>(ante.size());
  switch (d.rule) {
    case Rule::Axiom:
      return MT::id(object_of(d.conclusion.succedent));
    case Rule::SlashR: {
      auto body = translate(d.premises[0]);
      return MT::curry_r(body, object_of(d.conclusion.succedent->right()));
    }
    case Rule::BackslashR: {
      auto body = translate(d.premises[0]);
      return MT::curry_l(body, object_of(d.conclusion.succedent->left()));
    }
    case Rule::SlashL: {
      auto f = translate(d.premises[0]);  // Gamma -> A
      auto g = translate(d.premises[1]);  // D1, B, D2 -> C
      auto b = object_of(ante[d.pos]->left());
      auto a = object_of(ante[d.pos]->right());
      auto hom = OE::hom_l(b, a);
      auto inner = MT::compose(MT::eval_l(b, a), MT::tensor(MT::id(hom), f));
      return MT::compose(g, wrap(inner, slice(ante, 0, d.pos),
                                 slice(ante, d.pos + 1 + d.gamma_len, n)));
    }
    case Rule::BackslashL: {
      auto f = translate(d.premises[0]);  // Gamma -> A
      auto g = translate(d.premises[1]);  // D1, B, D2 -> C
      auto a = object_of(ante[d.pos]->left());
      auto b = object_of(ante[d.pos]->right());
      auto hom = OE::hom_r(a, b);
      auto inner = MT::compose(MT::eval_r(a, b), MT::tensor(f, MT::id(hom)));
      return MT::compose(g, wrap(inner, slice(ante, 0, d.pos - d.gamma_len),
                                 slice(ante, d.pos + 1, n)));
    }
    case Rule::BangL: {
      auto g = translate(d.premises[0]);
      auto eps = MT::comonad_eps(object_of(ante[d.pos]->body()));
      return MT::compose(g, wrap(eps, slice(ante, 0, d.pos), slice(ante, d.pos + 1, n)));
    }
    case Rule::BangR: {
      auto body = translate(d.premises[0]);  // !A1,...,!An -> B
      std::vector<OE::Ptr> bodies;           // the Ai
      bodies.reserve(n);
      for (const auto& f : ante) bodies.push_back(object_of(f->body()));
      // componentwise comonad deltas: (x)i !Ai -> (x)i !!Ai
      MT::Ptr deltas = MT::comonad_delta(bodies[n - 1]);
      for (int i = n - 2; i >= 0; --i)
        deltas = MT::tensor(MT::comonad_delta(bodies[i]), deltas);
      MT::Ptr term = deltas;
      // fold with m: !(!A1 (x) ... (x) !Ak-1) (x) !!Ak -> !(... (x) !Ak)
      OE::Ptr acc = OE::bang(bodies[0]);
      for (int k = 1; k < n; ++k) {
        MT::Ptr step = MT::lax_m(acc, OE::bang(bodies[k]));
        std::vector<OE::Ptr> rest;
        for (int j = k + 1; j < n; ++j)
          rest.push_back(OE::bang(OE::bang(bodies[j])));
        if (!rest.empty()) step = MT::tensor(step, MT::id(OE::tensor_all(rest)));
        term = MT::compose(step, term);
        acc = OE::tensor(acc, OE::bang(bodies[k]));
      }
      return MT::compose(MT::bang_map(body), term);
    }
    case Rule::Perm1: {
      auto g = translate(d.premises[0]);
      auto a = object_of(ante[d.pos]->body());
      auto gamma = object_of_antecedent(slice(ante, d.pos - d.gamma_len, d.pos));
      auto sw = MT::sigma_r(gamma, a);
      return MT::compose(g, wrap(sw, slice(ante, 0, d.pos - d.gamma_len),
                                 slice(ante, d.pos + 1, n)));
    }
    case Rule::Perm2: {
      auto g = translate(d.premises[0]);
      auto a = object_of(ante[d.pos]->body());
      auto gamma = object_of_antecedent(slice(ante, d.pos + 1, d.pos + 1 + d.gamma_len));
      auto sw = MT::sigma_l(a, gamma);
      return MT::compose(g, wrap(sw, slice(ante, 0, d.pos),
                                 slice(ante, d.pos + 1 + d.gamma_len, n)));
    }
    case Rule::Contr: {
      auto g = translate(d.premises[0]);
      auto delta = MT::co_delta(object_of(ante[d.pos]->body()));
      return MT::compose(g, wrap(delta, slice(ante, 0, d.pos),
                                 slice(ante, d.pos + 1, n)));
    }
  }
  throw TypeError("translate: unknown rule");
}

// ---------------------------------------------------------------------------
// printing

namespace {

void print_rec(const MT::Ptr& t, std::ostringstream& os) {
  using K = MT::Kind;
  switch (t->kind()) {
    case K::Id:
      os << "(id " << format_object(t->obj_a()) << ")";
      return;
    case K::Compose:
      os << "(compose ";
      print_rec(t->child(0), os);
      os << " ";
      print_rec(t->child(1), os);
      os << ")";
      return;
    case K::TensorM:
      os << "(tensor ";
      print_rec(t->child(0), os);
      os << " ";
      print_rec(t->child(1), os);
      os << ")";
      return;
    case K::EvalR:
      os << "(ev-r " << format_object(t->obj_a()) << " " << format_object(t->obj_b())
         << ")";
      return;
    case K::EvalL:
      os << "(ev-l " << format_object(t->obj_a()) << " " << format_object(t->obj_b())
         << ")";
      return;
    case K::CurryL:
      os << "(curry-l " << format_object(t->obj_a()) << " ";
      print_rec(t->child(0), os);
      os << ")";
      return;
    case K::CurryR:
      os << "(curry-r " << format_object(t->obj_a()) << " ";
      print_rec(t->child(0), os);
      os << ")";
      return;
    case K::CoDelta:
      os << "(codelta " << format_object(t->obj_a()) << ")";
      return;
    case K::CoUnit:
      os << "(counit " << format_object(t->obj_a()) << ")";
      return;
    case K::ComonadDelta:
      os << "(comonad-delta " << format_object(t->obj_a()) << ")";
      return;
    case K::ComonadEps:
      os << "(comonad-eps " << format_object(t->obj_a()) << ")";
      return;
    case K::SigmaR:
      os << "(sigma-r " << format_object(t->obj_a()) << " " << format_object(t->obj_b())
         << ")";
      return;
    case K::SigmaL:
      os << "(sigma-l " << format_object(t->obj_a()) << " " << format_object(t->obj_b())
         << ")";
      return;
    case K::LaxM:
      os << "(lax-m " << format_object(t->obj_a()) << " " << format_object(t->obj_b())
         << ")";
      return;
    case K::BangMap:
      os << "(bang ";
      print_rec(t->child(0), os);
      os << ")";
      return;
  }
}

}  // namespace

std::string format_term(const MorphTerm::Ptr& t) {
  std::ostringstream os;
  print_rec(t, os);
  return os.str();
}

}  // namespace lstar
