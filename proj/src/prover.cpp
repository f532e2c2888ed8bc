#include "lstar/prover.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace lstar {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Axiom: return "ax";
    case Rule::SlashL: return "/L";
    case Rule::SlashR: return "/R";
    case Rule::BackslashL: return "\\L";
    case Rule::BackslashR: return "\\R";
    case Rule::BangL: return "!L";
    case Rule::BangR: return "!R";
    case Rule::Perm1: return "perm1";
    case Rule::Perm2: return "perm2";
    case Rule::Contr: return "contr";
  }
  return "?";
}

std::size_t Derivation::count_rule(Rule r) const {
  std::size_t n = rule == r ? 1 : 0;
  for (const auto& p : premises) n += p.count_rule(r);
  return n;
}

std::size_t Derivation::height() const {
  std::size_t h = 0;
  for (const auto& p : premises) h = std::max(h, p.height());
  return h + 1;
}

namespace {

// ---------------------------------------------------------------------------
// Atom-count pruning. Every rule preserves the signed atom count except
// contraction, which adds the count of the duplicated !-formula. A sequent is
// derivable only if its count can be balanced by at most k counts of its
// !-subformulas.

using Counts = std::map<std::string, long>;

void add_counts(const Formula::Ptr& f, long sign, Counts& c) {
  switch (f->kind()) {
    case Formula::Kind::Atom:
      c[f->name()] += sign;
      break;
    case Formula::Kind::Empty:
      break;
    case Formula::Kind::Tensor:
      add_counts(f->left(), sign, c);
      add_counts(f->right(), sign, c);
      break;
    case Formula::Kind::Over:
    case Formula::Kind::Under: {
      // result minus argument: Over(B,A)=B/A, Under(A,B)=A\B
      bool over = f->kind() == Formula::Kind::Over;
      add_counts(over ? f->left() : f->right(), sign, c);
      add_counts(over ? f->right() : f->left(), -sign, c);
      break;
    }
    case Formula::Kind::Bang:
      add_counts(f->body(), sign, c);
      break;
  }
}

void collect_bang_subformulas(const Formula::Ptr& f, std::vector<Formula::Ptr>& out) {
  if (!f->contains_bang()) return;
  if (f->kind() == Formula::Kind::Bang) out.push_back(f);
  if (f->left()) collect_bang_subformulas(f->left(), out);
  if (f->right()) collect_bang_subformulas(f->right(), out);
}

bool counts_zero(const Counts& c) {
  for (const auto& [_, v] : c)
    if (v != 0) return false;
  return true;
}

bool balance_possible(const Counts& base, const std::vector<Counts>& adds,
                      std::size_t from, int k) {
  if (counts_zero(base)) return true;
  if (k == 0) return false;
  for (std::size_t i = from; i < adds.size(); ++i) {
    Counts next = base;
    for (const auto& [a, v] : adds[i]) next[a] += v;
    if (balance_possible(next, adds, i, k - 1)) return true;
  }
  return false;
}

bool count_prune(const Sequent& s, int contr_left) {
  Counts base;
  for (const auto& f : s.antecedent) add_counts(f, 1, base);
  add_counts(s.succedent, -1, base);
  if (counts_zero(base)) return false;
  if (!s.contains_bang()) return true;  // exact criterion for bang-free sequents
  if (contr_left <= 0) return true;
  if (contr_left > 4) return false;  // combinatorial check not worth it
  std::vector<Formula::Ptr> bangs;
  for (const auto& f : s.antecedent) collect_bang_subformulas(f, bangs);
  collect_bang_subformulas(s.succedent, bangs);
  std::vector<Counts> adds;
  adds.reserve(bangs.size());
  for (const auto& b : bangs) {
    Counts c;
    add_counts(b, 1, c);
    adds.push_back(std::move(c));
  }
  return !balance_possible(base, adds, 0, contr_left);
}

// ---------------------------------------------------------------------------
// Backward search

struct SearchCtx {
  SearchBudget budget;
  bool cut = false;
  std::unordered_map<std::string, int> failed;  // key -> depth it failed at
  std::unordered_map<std::string, int> path;    // key -> stack index
  // Deepest-up ancestor index a cycle prune referred to; failures that depend
  // on a prune against a strict ancestor must not be cached.
  int prune_floor = std::numeric_limits<int>::max();
};

std::string state_key(const Sequent& s, int contr_left) {
  return s.str() + "#" + std::to_string(contr_left);
}

std::vector<Formula::Ptr> replace_at(const std::vector<Formula::Ptr>& v, int pos,
                                     const Formula::Ptr& f) {
  auto out = v;
  out[pos] = f;
  return out;
}

// Appends derivations of s to out (up to limit); returns true if the bounded
// space below s was explored completely.
bool enumerate(const Sequent& s, int depth_left, int contr_left, SearchCtx& ctx,
               std::vector<Derivation>& out, int limit);

std::size_t count_contr(const Derivation& d) { return d.count_rule(Rule::Contr); }

// Enumerates combinations for a two-premise rule instance.
bool enumerate_pair(const Sequent& conclusion, Rule rule, int pos, int gamma_len,
                    const Sequent& p1, const Sequent& p2, int depth_left,
                    int contr_left, SearchCtx& ctx, std::vector<Derivation>& out,
                    int limit) {
  const int want = limit - static_cast<int>(out.size());
  if (want <= 0) return false;
  std::vector<Derivation> d1s;
  bool complete = enumerate(p1, depth_left - 1, contr_left, ctx, d1s, want);
  for (const auto& d1 : d1s) {
    if (static_cast<int>(out.size()) >= limit) return false;
    int used = static_cast<int>(count_contr(d1));
    std::vector<Derivation> d2s;
    bool c2 = enumerate(p2, depth_left - 1, contr_left - used, ctx, d2s,
                        limit - static_cast<int>(out.size()));
    complete = complete && c2;
    for (auto& d2 : d2s) {
      if (static_cast<int>(out.size()) >= limit) return false;
      Derivation node;
      node.conclusion = conclusion;
      node.rule = rule;
      node.pos = pos;
      node.gamma_len = gamma_len;
      node.premises = {d1, std::move(d2)};
      out.push_back(std::move(node));
    }
  }
  return complete;
}

bool enumerate_single(const Sequent& conclusion, Rule rule, int pos, int gamma_len,
                      const Sequent& premise, int depth_left, int contr_left,
                      SearchCtx& ctx, std::vector<Derivation>& out, int limit) {
  const int want = limit - static_cast<int>(out.size());
  if (want <= 0) return false;
  std::vector<Derivation> ds;
  bool complete = enumerate(premise, depth_left - 1, contr_left, ctx, ds, want);
  for (auto& d : ds) {
    if (static_cast<int>(out.size()) >= limit) return false;
    Derivation node;
    node.conclusion = conclusion;
    node.rule = rule;
    node.pos = pos;
    node.gamma_len = gamma_len;
    node.premises = {std::move(d)};
    out.push_back(std::move(node));
  }
  return complete;
}

bool enumerate(const Sequent& s, int depth_left, int contr_left, SearchCtx& ctx,
               std::vector<Derivation>& out, int limit) {
  if (limit <= 0) return false;
  if (count_prune(s, contr_left)) return true;
  const std::string key = state_key(s, contr_left);
  if (auto it = ctx.failed.find(key); it != ctx.failed.end()) {
    if (it->second == std::numeric_limits<int>::max()) return true;
    if (it->second >= depth_left) return false;
  }
  if (auto it = ctx.path.find(key); it != ctx.path.end()) {
    // Cycle: any derivation through a repeated state has a shorter splice.
    ctx.prune_floor = std::min(ctx.prune_floor, it->second);
    return true;
  }
  if (depth_left <= 0) {
    ctx.cut = true;
    return false;
  }

  const int my_index = static_cast<int>(ctx.path.size());
  ctx.path.emplace(key, my_index);
  const int outer_floor = ctx.prune_floor;
  ctx.prune_floor = std::numeric_limits<int>::max();
  const std::size_t before = out.size();
  bool complete = true;
  const auto& ante = s.antecedent;
  const int n = static_cast<int>(ante.size());
  auto done = [&] { return static_cast<int>(out.size()) >= limit; };

  // Axiom
  if (n == 1 && equal(ante[0], s.succedent)) {
    Derivation node;
    node.conclusion = s;
    node.rule = Rule::Axiom;
    out.push_back(std::move(node));
  }

  // (/R): conclusion Gamma |- B/A from Gamma, A |- B
  if (!done() && s.succedent->kind() == Formula::Kind::Over) {
    Sequent p{ante, s.succedent->left()};
    p.antecedent.push_back(s.succedent->right());
    complete &= enumerate_single(s, Rule::SlashR, -1, -1, p, depth_left, contr_left,
                                 ctx, out, limit);
  }
  // (\R): conclusion Gamma |- A\B from A, Gamma |- B
  if (!done() && s.succedent->kind() == Formula::Kind::Under) {
    Sequent p;
    p.antecedent.push_back(s.succedent->left());
    p.antecedent.insert(p.antecedent.end(), ante.begin(), ante.end());
    p.succedent = s.succedent->right();
    complete &= enumerate_single(s, Rule::BackslashR, -1, -1, p, depth_left,
                                 contr_left, ctx, out, limit);
  }
  // (!R): all antecedent formulas banged
  if (!done() && s.succedent->kind() == Formula::Kind::Bang && n >= 1) {
    bool all_banged = std::all_of(ante.begin(), ante.end(),
                                  [](const Formula::Ptr& f) { return f->is_bang(); });
    if (all_banged) {
      Sequent p{ante, s.succedent->body()};
      complete &= enumerate_single(s, Rule::BangR, -1, -1, p, depth_left, contr_left,
                                   ctx, out, limit);
    }
  }
  // (/L): B/A at pos consumes Gamma to its right
  for (int pos = 0; pos < n && !done(); ++pos) {
    if (ante[pos]->kind() != Formula::Kind::Over) continue;
    for (int g = 0; pos + g < n && !done(); ++g) {
      Sequent p1{{ante.begin() + pos + 1, ante.begin() + pos + 1 + g},
                 ante[pos]->right()};
      Sequent p2;
      p2.antecedent.assign(ante.begin(), ante.begin() + pos);
      p2.antecedent.push_back(ante[pos]->left());
      p2.antecedent.insert(p2.antecedent.end(), ante.begin() + pos + 1 + g, ante.end());
      p2.succedent = s.succedent;
      complete &= enumerate_pair(s, Rule::SlashL, pos, g, p1, p2, depth_left,
                                 contr_left, ctx, out, limit);
    }
  }
  // (\L): A\B at pos consumes Gamma to its left
  for (int pos = 0; pos < n && !done(); ++pos) {
    if (ante[pos]->kind() != Formula::Kind::Under) continue;
    for (int g = 0; g <= pos && !done(); ++g) {
      Sequent p1{{ante.begin() + pos - g, ante.begin() + pos}, ante[pos]->left()};
      Sequent p2;
      p2.antecedent.assign(ante.begin(), ante.begin() + pos - g);
      p2.antecedent.push_back(ante[pos]->right());
      p2.antecedent.insert(p2.antecedent.end(), ante.begin() + pos + 1, ante.end());
      p2.succedent = s.succedent;
      complete &= enumerate_pair(s, Rule::BackslashL, pos, g, p1, p2, depth_left,
                                 contr_left, ctx, out, limit);
    }
  }
  // (!L)
  for (int pos = 0; pos < n && !done(); ++pos) {
    if (!ante[pos]->is_bang()) continue;
    Sequent p{replace_at(ante, pos, ante[pos]->body()), s.succedent};
    complete &= enumerate_single(s, Rule::BangL, pos, -1, p, depth_left, contr_left,
                                 ctx, out, limit);
  }
  // (contr)
  if (contr_left > 0) {
    for (int pos = 0; pos < n && !done(); ++pos) {
      if (!ante[pos]->is_bang()) continue;
      Sequent p{ante, s.succedent};
      p.antecedent.insert(p.antecedent.begin() + pos, ante[pos]);
      std::vector<Derivation> ds;
      bool c = enumerate(p, depth_left - 1, contr_left - 1, ctx, ds,
                         limit - static_cast<int>(out.size()));
      complete &= c;
      for (auto& d : ds) {
        if (done()) break;
        Derivation node;
        node.conclusion = s;
        node.rule = Rule::Contr;
        node.pos = pos;
        node.premises = {std::move(d)};
        out.push_back(std::move(node));
      }
    }
  }
  // (perm1)/(perm2): move a !-formula anywhere
  for (int i = 0; i < n && !done(); ++i) {
    if (!ante[i]->is_bang()) continue;
    for (int j = 0; j < n && !done(); ++j) {
      if (j == i) continue;
      std::vector<Formula::Ptr> moved;
      moved.reserve(n);
      for (int k = 0; k < n; ++k)
        if (k != i) moved.push_back(ante[k]);
      moved.insert(moved.begin() + j, ante[i]);
      Sequent p{std::move(moved), s.succedent};
      Rule rule = j < i ? Rule::Perm1 : Rule::Perm2;
      int gamma = j < i ? i - j : j - i;
      complete &= enumerate_single(s, rule, i, gamma, p, depth_left, contr_left, ctx,
                                   out, limit);
    }
  }

  ctx.path.erase(key);
  const int subtree_floor = ctx.prune_floor;
  const bool cache_ok = subtree_floor >= my_index;  // no prune above this node
  ctx.prune_floor =
      std::min(outer_floor, subtree_floor < my_index ? subtree_floor
                                                     : std::numeric_limits<int>::max());
  if (out.size() == before && cache_ok) {
    auto& slot = ctx.failed[key];
    int value = complete ? std::numeric_limits<int>::max() : depth_left;
    slot = std::max(slot, value);
  }
  if (done()) complete = false;
  return complete;
}

}  // namespace

ProveResult prove(const Sequent& s, const SearchBudget& b) {
  if (b.max_depth <= 0 || b.max_results <= 0 || b.max_contractions < 0)
    throw std::invalid_argument("search budget fields must be finite and positive");
  for (const auto& f : s.antecedent)
    if (!f) throw std::invalid_argument("null formula in sequent");
  if (!s.succedent) throw std::invalid_argument("null succedent");
  SearchCtx ctx;
  ctx.budget = b;
  ProveResult res;
  enumerate(s, b.max_depth, b.max_contractions, ctx, res.derivations, b.max_results);
  res.budget_exhausted = ctx.cut;
  return res;
}

namespace {

bool check_node(const Derivation& d, std::string& why) {
  const auto& ante = d.conclusion.antecedent;
  const int n = static_cast<int>(ante.size());
  auto premise_is = [&](std::size_t i, const Sequent& want) {
    return i < d.premises.size() && equal(d.premises[i].conclusion, want);
  };
  switch (d.rule) {
    case Rule::Axiom:
      if (!d.premises.empty()) { why = "axiom with premises"; return false; }
      if (n != 1 || !equal(ante[0], d.conclusion.succedent)) {
        why = "axiom requires identical single formula on both sides";
        return false;
      }
      return true;
    case Rule::SlashR: {
      if (d.premises.size() != 1) { why = "/R arity"; return false; }
      if (d.conclusion.succedent->kind() != Formula::Kind::Over) {
        why = "/R succedent not B/A";
        return false;
      }
      Sequent want{ante, d.conclusion.succedent->left()};
      want.antecedent.push_back(d.conclusion.succedent->right());
      if (!premise_is(0, want)) { why = "/R premise mismatch"; return false; }
      return true;
    }
    case Rule::BackslashR: {
      if (d.premises.size() != 1) { why = "\\R arity"; return false; }
      if (d.conclusion.succedent->kind() != Formula::Kind::Under) {
        why = "\\R succedent not A\\B";
        return false;
      }
      Sequent want;
      want.antecedent.push_back(d.conclusion.succedent->left());
      want.antecedent.insert(want.antecedent.end(), ante.begin(), ante.end());
      want.succedent = d.conclusion.succedent->right();
      if (!premise_is(0, want)) { why = "\\R premise mismatch"; return false; }
      return true;
    }
    case Rule::BangR: {
      if (d.premises.size() != 1) { why = "!R arity"; return false; }
      if (d.conclusion.succedent->kind() != Formula::Kind::Bang) {
        why = "!R succedent not !B";
        return false;
      }
      if (n < 1) { why = "!R requires a nonempty antecedent"; return false; }
      for (const auto& f : ante)
        if (!f->is_bang()) { why = "!R antecedent contains a non-! formula"; return false; }
      Sequent want{ante, d.conclusion.succedent->body()};
      if (!premise_is(0, want)) { why = "!R premise mismatch"; return false; }
      return true;
    }
    case Rule::SlashL: {
      if (d.premises.size() != 2) { why = "/L arity"; return false; }
      if (d.pos < 0 || d.pos >= n || ante[d.pos]->kind() != Formula::Kind::Over) {
        why = "/L principal formula not B/A";
        return false;
      }
      if (d.gamma_len < 0 || d.pos + d.gamma_len >= n) { why = "/L bad split"; return false; }
      Sequent p1{{ante.begin() + d.pos + 1, ante.begin() + d.pos + 1 + d.gamma_len},
                 ante[d.pos]->right()};
      Sequent p2;
      p2.antecedent.assign(ante.begin(), ante.begin() + d.pos);
      p2.antecedent.push_back(ante[d.pos]->left());
      p2.antecedent.insert(p2.antecedent.end(), ante.begin() + d.pos + 1 + d.gamma_len,
                           ante.end());
      p2.succedent = d.conclusion.succedent;
      if (!premise_is(0, p1)) { why = "/L first premise mismatch"; return false; }
      if (!premise_is(1, p2)) { why = "/L second premise mismatch"; return false; }
      return true;
    }
    case Rule::BackslashL: {
      if (d.premises.size() != 2) { why = "\\L arity"; return false; }
      if (d.pos < 0 || d.pos >= n || ante[d.pos]->kind() != Formula::Kind::Under) {
        why = "\\L principal formula not A\\B";
        return false;
      }
      if (d.gamma_len < 0 || d.gamma_len > d.pos) { why = "\\L bad split"; return false; }
      Sequent p1{{ante.begin() + d.pos - d.gamma_len, ante.begin() + d.pos},
                 ante[d.pos]->left()};
      Sequent p2;
      p2.antecedent.assign(ante.begin(), ante.begin() + d.pos - d.gamma_len);
      p2.antecedent.push_back(ante[d.pos]->right());
      p2.antecedent.insert(p2.antecedent.end(), ante.begin() + d.pos + 1, ante.end());
      p2.succedent = d.conclusion.succedent;
      if (!premise_is(0, p1)) { why = "\\L first premise mismatch"; return false; }
      if (!premise_is(1, p2)) { why = "\\L second premise mismatch"; return false; }
      return true;
    }
    case Rule::BangL: {
      if (d.premises.size() != 1) { why = "!L arity"; return false; }
      if (d.pos < 0 || d.pos >= n || !ante[d.pos]->is_bang()) {
        why = "!L principal formula not !A";
        return false;
      }
      Sequent want{replace_at(ante, d.pos, ante[d.pos]->body()),
                   d.conclusion.succedent};
      if (!premise_is(0, want)) { why = "!L premise mismatch"; return false; }
      return true;
    }
    case Rule::Contr: {
      if (d.premises.size() != 1) { why = "contr arity"; return false; }
      if (d.pos < 0 || d.pos >= n || !ante[d.pos]->is_bang()) {
        why = "contr principal formula not !A";
        return false;
      }
      Sequent want{ante, d.conclusion.succedent};
      want.antecedent.insert(want.antecedent.begin() + d.pos, ante[d.pos]);
      if (!premise_is(0, want)) { why = "contr premise lacks the duplicate"; return false; }
      return true;
    }
    case Rule::Perm1:
    case Rule::Perm2: {
      if (d.premises.size() != 1) { why = "perm arity"; return false; }
      if (d.pos < 0 || d.pos >= n || !ante[d.pos]->is_bang()) {
        why = "perm principal formula not !A";
        return false;
      }
      if (d.gamma_len < 1) { why = "perm requires a nonempty block"; return false; }
      int to = d.rule == Rule::Perm1 ? d.pos - d.gamma_len : d.pos + d.gamma_len;
      if (to < 0 || to >= n) { why = "perm target out of range"; return false; }
      std::vector<Formula::Ptr> moved;
      moved.reserve(n);
      for (int k = 0; k < n; ++k)
        if (k != d.pos) moved.push_back(ante[k]);
      moved.insert(moved.begin() + to, ante[d.pos]);
      Sequent want{std::move(moved), d.conclusion.succedent};
      if (!premise_is(0, want)) { why = "perm premise mismatch"; return false; }
      return true;
    }
  }
  why = "unknown rule";
  return false;
}

bool check_rec(const Derivation& d, std::string path, std::string* diagnostic) {
  std::string why;
  if (!check_node(d, why)) {
    if (diagnostic) *diagnostic = path + ": " + why;
    return false;
  }
  for (std::size_t i = 0; i < d.premises.size(); ++i)
    if (!check_rec(d.premises[i], path + ".premise[" + std::to_string(i) + "]",
                   diagnostic))
      return false;
  return true;
}

}  // namespace

bool check(const Derivation& d, std::string* diagnostic) {
  return check_rec(d, "root", diagnostic);
}

PhraseResult derive_phrase(const std::vector<std::string>& words, const Lexicon& lex,
                           const Formula::Ptr& goal, const SearchBudget& b) {
  std::vector<std::string> missing;
  for (const auto& w : words)
    if (!lex.contains(w)) missing.push_back(w);
  if (!missing.empty()) {
    std::string msg = "unknown words:";
    for (const auto& w : missing) msg += " " + w;
    throw std::runtime_error(msg);
  }
  PhraseResult res;
  std::vector<std::size_t> choice(words.size(), 0);
  while (true) {
    std::vector<Formula::Ptr> types;
    types.reserve(words.size());
    for (std::size_t i = 0; i < words.size(); ++i)
      types.push_back(lex.types(words[i])[choice[i]]);
    ProveResult pr = prove(Sequent{types, goal}, b);
    res.budget_exhausted = res.budget_exhausted || pr.budget_exhausted;
    for (auto& d : pr.derivations) {
      if (static_cast<int>(res.derivations.size()) >= b.max_results) return res;
      res.derivations.push_back(PhraseDerivation{types, std::move(d)});
    }
    // next type assignment
    std::size_t i = 0;
    for (; i < words.size(); ++i) {
      if (++choice[i] < lex.types(words[i]).size()) break;
      choice[i] = 0;
    }
    if (i == words.size()) break;
  }
  return res;
}

namespace {

void format_rec(const Derivation& d, int indent, std::ostringstream& os) {
  os << std::string(indent * 2, ' ') << "[" << rule_name(d.rule) << "] "
     << d.conclusion.str() << "\n";
  for (const auto& p : d.premises) format_rec(p, indent + 1, os);
}

void latex_rec(const Derivation& d, std::ostringstream& os) {
  std::string seq = d.conclusion.str();
  // latexify the turnstile and slashes
  std::string fixed;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq.compare(i, 2, "|-") == 0) {
      fixed += "\\vdash ";
      ++i;
    } else if (seq[i] == '\\') {
      fixed += "\\backslash ";
    } else {
      fixed += seq[i];
    }
  }
  os << "\\prftree[r]{$\\scriptstyle{(" << rule_name(d.rule) << ")}$}";
  for (const auto& p : d.premises) {
    os << "{";
    latex_rec(p, os);
    os << "}";
  }
  os << "{" << fixed << "}";
}

}  // namespace

std::string format_derivation(const Derivation& d) {
  std::ostringstream os;
  format_rec(d, 0, os);
  return os.str();
}

std::string format_derivation_latex(const Derivation& d) {
  std::ostringstream os;
  latex_rec(d, os);
  os << "\n";
  return os.str();
}

}  // namespace lstar
