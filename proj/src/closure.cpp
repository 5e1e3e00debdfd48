#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "nomprop/dsl.hpp"
#include "nomprop/equiv.hpp"

namespace nomprop {

namespace {

using Bij = std::map<Name, Name>;

std::string bij_key(const Bij& b) {
  std::string out = "B{";
  for (const auto& [x, y] : b) out += x.str() + ">" + y.str() + ",";
  return out + "}";
}

std::string table_key(const std::vector<std::size_t>& t) {
  std::string out = "P[";
  for (auto v : t) out += std::to_string(v) + ",";
  return out + "]";
}

bool is_identity(const Bij& b) {
  return std::all_of(b.begin(), b.end(), [](const auto& kv) { return kv.first == kv.second; });
}

bool is_identity(const std::vector<std::size_t>& t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] != i) return false;
  return true;
}

/// Sorted tensor of renamings realizing `b`.
BaseNmt bij_term(const Bij& b) {
  std::vector<BaseNmt> parts;
  for (const auto& [x, y] : b) parts.push_back(BaseNmt::delta(x, y));
  return nmt_tensor_all(parts);
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

enum class Op { Leaf, Seq, Tensor, Swap };

struct Shape {
  Op op = Op::Leaf;
  int a = -1, b = -1;  // name ids of a swap
};

struct CongruenceKey {
  Op op;
  std::size_t l, r;
  int a, b;
  bool operator==(const CongruenceKey&) const = default;
};

struct CongruenceHash {
  std::size_t operator()(const CongruenceKey& k) const {
    std::size_t h = std::size_t(k.op);
    for (std::size_t v : {k.l, k.r, std::size_t(k.a + 1), std::size_t(k.b + 1)}) h = h * 1000003u ^ v;
    return h;
  }
};

// ---------------------------------------------------------------------------
// Nominal rules

class NmtRules {
 public:
  using Term = BaseNmt;

  NmtRules(const TheoryPresentation& th, bool coherence) : th_(th), coherence_(coherence) {}

  void set_alphabet(const NameSet& names) {
    alphabet_.assign(names.begin(), names.end());
    transpositions_.clear();
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
      for (std::size_t j = i + 1; j < alphabet_.size(); ++j) transpositions_.emplace_back(alphabet_[i], alphabet_[j]);
  }

  void collect_alphabet(const Term& t, NameSet& out) const { collect_names(t, out); }

  std::string print(const Term& t) const { return print_term(t); }

  std::string key(const Term& t) const {
    if (coherence_)
      if (auto b = generator_free_bijection(t)) return bij_key(*b);
    return std::visit(overloaded{[&](const nmt::Gen<GenRef>& g) {
                                   return "[" + print_names(g.in) + ">" + g.value.name + "<" + print_names(g.out) + "]";
                                 },
                                 [&](const nmt::Seq<GenRef>& s) { return "(" + key(s.first) + ";" + key(s.second) + ")"; },
                                 [&](const nmt::Tensor<GenRef>& s) {
                                   return "(" + key(s.first) + "*" + key(s.second) + ")";
                                 },
                                 [&](const nmt::Swap<GenRef>& s) { return "(" + s.a.str() + " " + s.b.str() + ")" + key(s.body); },
                                 [&](const auto&) { return print(t); }},
                      t.node());
  }

  template <class F>
  void children(const Term& t, Shape& shape, const F& visit_child, const std::function<int(const Name&)>& name_id) const {
    std::visit(overloaded{[&](const nmt::Seq<GenRef>& s) {
                            shape.op = Op::Seq;
                            visit_child(s.first);
                            visit_child(s.second);
                          },
                          [&](const nmt::Tensor<GenRef>& s) {
                            shape.op = Op::Tensor;
                            visit_child(s.first);
                            visit_child(s.second);
                          },
                          [&](const nmt::Swap<GenRef>& s) {
                            shape.op = Op::Swap;
                            shape.a = name_id(s.a);
                            shape.b = name_id(s.b);
                            visit_child(s.body);
                          },
                          [](const auto&) {}},
               t.node());
  }

  const std::vector<std::pair<Name, Name>>& transpositions() const { return transpositions_; }

  Term permute(const std::pair<Name, Name>& tau, const Term& t) const {
    return nmt_perm_action(Perm::transposition(tau.first, tau.second), t);
  }

  static constexpr bool has_perm_rule = true;

  void root_rewrites(const Term& t, std::vector<Term>& out) const {
    std::visit(overloaded{[&](const nmt::Seq<GenRef>& s) { seq_rules(t, s, out); },
                          [&](const nmt::Tensor<GenRef>& s) { tensor_rules(s, out); },
                          [&](const nmt::Swap<GenRef>& s) { swap_rules(s, out); },
                          [](const auto&) {}},
               t.node());
    theory_rules(t, out);
  }

 private:
  NmtType type(const Term& t) const { return nmt_typecheck(t, th_.signature); }

  bool typechecks(const Term& t) const {
    try {
      type(t);
      return true;
    } catch (const Error&) {
      return false;
    }
  }

  void seq_rules(const Term& t, const nmt::Seq<GenRef>& s, std::vector<Term>& out) const {
    const Term& x = s.first;
    const Term& y = s.second;
    if (const auto* inner = x.as<nmt::Seq<GenRef>>()) out.push_back(Term::seq(inner->first, Term::seq(inner->second, y)));

    auto bx = generator_free_bijection(x);
    auto by = generator_free_bijection(y);
    if (bx && is_identity(*bx)) out.push_back(y);
    if (by && is_identity(*by)) out.push_back(x);

    const auto* tx = x.as<nmt::Tensor<GenRef>>();
    const auto* ty = y.as<nmt::Tensor<GenRef>>();
    if (tx && ty) {
      Term cand = Term::tensor(Term::seq(tx->first, ty->first), Term::seq(tx->second, ty->second));
      if (typechecks(cand)) out.push_back(cand);
    }

    // A renaming in front of (behind) a generator is absorbed into its wire list.
    if (bx) {
      if (const auto* g = y.as<nmt::Gen<GenRef>>()) {
        Bij inv;
        for (const auto& [p, q] : *bx) inv.emplace(q, p);
        std::vector<Name> in;
        for (const auto& n : g->in) in.push_back(inv.at(n));
        out.push_back(Term::gen(NameList(in), g->value, g->out));
      }
      if (ty) split_renaming(*bx, *ty, true, out);
    }
    if (by) {
      if (const auto* g = x.as<nmt::Gen<GenRef>>()) {
        std::vector<Name> o;
        for (const auto& n : g->out) o.push_back(by->at(n));
        out.push_back(Term::gen(g->in, g->value, NameList(o)));
      }
      if (tx) split_renaming(*by, *tx, false, out);
    }

    // A factor with no inputs (outputs) slides out of a composite.
    if (ty) {
      if (type(ty->second).dom.empty()) out.push_back(Term::tensor(Term::seq(x, ty->first), ty->second));
      if (type(ty->first).dom.empty()) out.push_back(Term::tensor(ty->first, Term::seq(x, ty->second)));
    }
    if (tx) {
      if (type(tx->second).cod.empty()) out.push_back(Term::tensor(Term::seq(tx->first, y), tx->second));
      if (type(tx->first).cod.empty()) out.push_back(Term::tensor(tx->first, Term::seq(tx->second, y)));
    }

    // Internal wires may be renamed by any transposition fixing the boundary.
    auto ty_t = type(t);
    for (const auto& tau : transpositions_) {
      if (ty_t.dom.count(tau.first) || ty_t.dom.count(tau.second) || ty_t.cod.count(tau.first) ||
          ty_t.cod.count(tau.second))
        continue;
      out.push_back(Term::seq(permute(tau, x), permute(tau, y)));
    }

    // A middle wire may move to any name unused in the middle.
    auto middle = type(x).cod;
    for (const auto& from : middle)
      for (const auto& to : alphabet_)
        if (!middle.count(to)) out.push_back(Term::seq(rename_cod(x, from, to), rename_dom(y, from, to)));
  }

  /// t ; d(from,to), with the renaming pushed into the output lists of t.
  static Term rename_cod(const Term& t, const Name& from, const Name& to) {
    auto sub = [&](const Name& n) { return n == from ? to : n; };
    return std::visit(
        overloaded{[&](const nmt::Gen<GenRef>& g) {
                     std::vector<Name> o;
                     for (const auto& n : g.out) o.push_back(sub(n));
                     return Term::gen(g.in, g.value, NameList(o));
                   },
                   [&](const nmt::Id& i) { return i.wire == from ? Term::delta(from, to) : t; },
                   [&](const nmt::Delta& d) { return Term::delta(d.from, sub(d.to)); },
                   [&](const nmt::Empty&) { return t; },
                   [&](const nmt::Seq<GenRef>& q) { return Term::seq(q.first, rename_cod(q.second, from, to)); },
                   [&](const nmt::Tensor<GenRef>& q) {
                     return Term::tensor(rename_cod(q.first, from, to), rename_cod(q.second, from, to));
                   },
                   [&](const nmt::Swap<GenRef>& q) {
                     Perm tau = Perm::transposition(q.a, q.b);
                     return Term::swap(q.a, q.b, rename_cod(q.body, tau(from), tau(to)));
                   }},
        t.node());
  }

  /// d(to,from) ; t, with the renaming pushed into the input lists of t.
  static Term rename_dom(const Term& t, const Name& from, const Name& to) {
    auto sub = [&](const Name& n) { return n == from ? to : n; };
    return std::visit(
        overloaded{[&](const nmt::Gen<GenRef>& g) {
                     std::vector<Name> i;
                     for (const auto& n : g.in) i.push_back(sub(n));
                     return Term::gen(NameList(i), g.value, g.out);
                   },
                   [&](const nmt::Id& i) { return i.wire == from ? Term::delta(to, from) : t; },
                   [&](const nmt::Delta& d) { return Term::delta(sub(d.from), d.to); },
                   [&](const nmt::Empty&) { return t; },
                   [&](const nmt::Seq<GenRef>& q) { return Term::seq(rename_dom(q.first, from, to), q.second); },
                   [&](const nmt::Tensor<GenRef>& q) {
                     return Term::tensor(rename_dom(q.first, from, to), rename_dom(q.second, from, to));
                   },
                   [&](const nmt::Swap<GenRef>& q) {
                     Perm tau = Perm::transposition(q.a, q.b);
                     return Term::swap(q.a, q.b, rename_dom(q.body, tau(from), tau(to)));
                   }},
        t.node());
  }

  // r ; (X * Y) = (r1 ; X) * (r2 ; Y), and dually, with r split along the tensor.
  void split_renaming(const Bij& r, const nmt::Tensor<GenRef>& parts, bool before, std::vector<Term>& out) const {
    auto t1 = type(parts.first);
    const NameSet& side = before ? t1.dom : t1.cod;
    Bij r1, r2;
    for (const auto& [p, q] : r) {
      bool left = before ? side.count(q) > 0 : side.count(p) > 0;
      (left ? r1 : r2).emplace(p, q);
    }
    auto attach = [&](const Bij& piece, const Term& body, bool drop_identity) {
      if (drop_identity && is_identity(piece)) return body;
      return before ? Term::seq(bij_term(piece), body) : Term::seq(body, bij_term(piece));
    };
    for (bool drop : {true, false}) {
      Term cand = Term::tensor(attach(r1, parts.first, drop), attach(r2, parts.second, drop));
      if (typechecks(cand)) out.push_back(cand);
    }
  }

  void tensor_rules(const nmt::Tensor<GenRef>& s, std::vector<Term>& out) const {
    if (const auto* inner = s.first.as<nmt::Tensor<GenRef>>())
      out.push_back(Term::tensor(inner->first, Term::tensor(inner->second, s.second)));
    out.push_back(Term::tensor(s.second, s.first));
    auto b1 = generator_free_bijection(s.first);
    auto b2 = generator_free_bijection(s.second);
    if (b1 && b1->empty()) out.push_back(s.second);
    if (b2 && b2->empty()) out.push_back(s.first);
  }

  void swap_rules(const nmt::Swap<GenRef>& s, std::vector<Term>& out) const {
    if (s.a == s.b) {
      out.push_back(s.body);
      return;
    }
    Perm tau = Perm::transposition(s.a, s.b);
    out.push_back(Term::swap(s.b, s.a, s.body));
    out.push_back(nmt_perm_action(tau, s.body));
    std::visit(overloaded{[&](const nmt::Seq<GenRef>& q) {
                            out.push_back(Term::seq(Term::swap(s.a, s.b, q.first), Term::swap(s.a, s.b, q.second)));
                          },
                          [&](const nmt::Tensor<GenRef>& q) {
                            out.push_back(
                                Term::tensor(Term::swap(s.a, s.b, q.first), Term::swap(s.a, s.b, q.second)));
                          },
                          [&](const nmt::Swap<GenRef>& q) {
                            if (Perm::transposition(q.a, q.b) == tau) out.push_back(q.body);
                            out.push_back(Term::swap(tau(q.a), tau(q.b), Term::swap(s.a, s.b, q.body)));
                          },
                          [](const auto&) {}},
               s.body.node());
    auto ty = type(s.body);
    if (!ty.dom.count(s.a) && !ty.dom.count(s.b) && !ty.cod.count(s.a) && !ty.cod.count(s.b)) out.push_back(s.body);
  }

  using Binding = std::map<Name, Name>;

  static bool bind(Binding& b, const Name& var, const Name& val) {
    auto [it, inserted] = b.emplace(var, val);
    return inserted || it->second == val;
  }

  void match(const Term& p, const Term& s, const Binding& b, std::vector<Binding>& out) const {
    if (auto pb = generator_free_bijection(p)) {
      auto sb = generator_free_bijection(s);
      if (!sb || sb->size() != pb->size()) return;
      std::vector<std::pair<Name, Name>> pp(pb->begin(), pb->end()), sp(sb->begin(), sb->end());
      std::vector<bool> used(sp.size(), false);
      std::function<void(std::size_t, const Binding&)> go = [&](std::size_t k, const Binding& cur) {
        if (k == pp.size()) {
          out.push_back(cur);
          return;
        }
        for (std::size_t j = 0; j < sp.size(); ++j) {
          if (used[j]) continue;
          Binding next = cur;
          if (!bind(next, pp[k].first, sp[j].first) || !bind(next, pp[k].second, sp[j].second)) continue;
          used[j] = true;
          go(k + 1, next);
          used[j] = false;
        }
      };
      go(0, b);
      return;
    }
    std::visit(overloaded{[&](const nmt::Gen<GenRef>& pg) {
                            const auto* sg = s.as<nmt::Gen<GenRef>>();
                            if (!sg || sg->value != pg.value || sg->in.size() != pg.in.size() ||
                                sg->out.size() != pg.out.size())
                              return;
                            Binding next = b;
                            for (std::size_t i = 0; i < pg.in.size(); ++i)
                              if (!bind(next, pg.in[i], sg->in[i])) return;
                            for (std::size_t i = 0; i < pg.out.size(); ++i)
                              if (!bind(next, pg.out[i], sg->out[i])) return;
                            out.push_back(std::move(next));
                          },
                          [&](const nmt::Seq<GenRef>& ps) {
                            if (const auto* ss = s.as<nmt::Seq<GenRef>>()) match_pair(ps.first, ps.second, ss->first, ss->second, b, out);
                          },
                          [&](const nmt::Tensor<GenRef>& ps) {
                            if (const auto* ss = s.as<nmt::Tensor<GenRef>>())
                              match_pair(ps.first, ps.second, ss->first, ss->second, b, out);
                          },
                          [&](const nmt::Swap<GenRef>& ps) {
                            const auto* ss = s.as<nmt::Swap<GenRef>>();
                            if (!ss) return;
                            Binding next = b;
                            if (bind(next, ps.a, ss->a) && bind(next, ps.b, ss->b)) match(ps.body, ss->body, next, out);
                          },
                          [](const auto&) {}},
               p.node());
  }

  void match_pair(const Term& p1, const Term& p2, const Term& s1, const Term& s2, const Binding& b,
                  std::vector<Binding>& out) const {
    std::vector<Binding> first;
    match(p1, s1, b, first);
    for (const auto& fb : first) match(p2, s2, fb, out);
  }

  void theory_rules(const Term& t, std::vector<Term>& out) const {
    for (const auto& eq : th_.nmt_equations) {
      std::vector<Binding> bindings;
      match(eq.lhs, t, {}, bindings);
      if (bindings.empty()) continue;
      NameSet vars = names_of(eq.lhs);
      collect_names(eq.rhs, vars);
      auto ty = type(t);
      for (const auto& b : bindings) {
        std::vector<Name> free;
        for (const auto& v : vars)
          if (!b.count(v)) free.push_back(v);
        std::vector<std::size_t> choice(free.size(), 0);
        while (true) {
          Binding full = b;
          for (std::size_t i = 0; i < free.size(); ++i) full.insert_or_assign(free[i], alphabet_[choice[i]]);
          auto f = [&](const Name& n) { return full.at(n); };
          try {
            Term lhs = rename_names(eq.lhs, f);
            Term rhs = rename_names(eq.rhs, f);
            if (type(lhs) == ty && type(rhs) == ty) out.push_back(rhs);
          } catch (const Error&) {
          }
          std::size_t k = 0;
          while (k < choice.size() && ++choice[k] == alphabet_.size()) choice[k++] = 0;
          if (k == choice.size()) break;
        }
      }
    }
  }

  const TheoryPresentation& th_;
  bool coherence_;
  std::vector<Name> alphabet_;
  std::vector<std::pair<Name, Name>> transpositions_;
};

// ---------------------------------------------------------------------------
// Ordinal rules

class SmtRules {
 public:
  using Term = BaseSmt;

  SmtRules(const TheoryPresentation& th, bool coherence) : th_(th), coherence_(coherence) {
    for (const auto& eq : th.smt_equations) axioms_[key(eq.lhs)].push_back(eq.rhs);
  }

  void set_alphabet(const NameSet&) {}
  void collect_alphabet(const Term&, NameSet&) const {}

  std::string print(const Term& t) const { return print_term(t); }

  std::string key(const Term& t) const {
    if (coherence_)
      if (auto p = generator_free_table(t)) return table_key(*p);
    return std::visit(overloaded{[&](const smt::Gen<GenRef>& g) { return g.value.name; },
                                 [&](const smt::Seq<GenRef>& s) { return "(" + key(s.first) + ";" + key(s.second) + ")"; },
                                 [&](const smt::Tensor<GenRef>& s) {
                                   return "(" + key(s.first) + "*" + key(s.second) + ")";
                                 },
                                 [&](const auto&) { return print(t); }},
                      t.node());
  }

  template <class F>
  void children(const Term& t, Shape& shape, const F& visit_child, const std::function<int(const Name&)>&) const {
    std::visit(overloaded{[&](const smt::Seq<GenRef>& s) {
                            shape.op = Op::Seq;
                            visit_child(s.first);
                            visit_child(s.second);
                          },
                          [&](const smt::Tensor<GenRef>& s) {
                            shape.op = Op::Tensor;
                            visit_child(s.first);
                            visit_child(s.second);
                          },
                          [](const auto&) {}},
               t.node());
  }

  const std::vector<std::pair<Name, Name>>& transpositions() const { return none_; }
  Term permute(const std::pair<Name, Name>&, const Term& t) const { return t; }

  static constexpr bool has_perm_rule = false;

  void root_rewrites(const Term& t, std::vector<Term>& out) const {
    if (const auto* s = t.as<smt::Seq<GenRef>>()) seq_rules(*s, out);
    if (const auto* s = t.as<smt::Tensor<GenRef>>()) tensor_rules(*s, out);
    auto it = axioms_.find(key(t));
    if (it != axioms_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
  }

 private:
  SmtType type(const Term& t) const { return smt_typecheck(t, th_.signature); }

  void seq_rules(const smt::Seq<GenRef>& s, std::vector<Term>& out) const {
    const Term& x = s.first;
    const Term& y = s.second;
    if (const auto* inner = x.as<smt::Seq<GenRef>>()) out.push_back(Term::seq(inner->first, Term::seq(inner->second, y)));
    auto px = generator_free_table(x);
    auto py = generator_free_table(y);
    if (px && is_identity(*px)) out.push_back(y);
    if (py && is_identity(*py)) out.push_back(x);
    const auto* tx = x.as<smt::Tensor<GenRef>>();
    if (const auto* ty = y.as<smt::Tensor<GenRef>>()) {
      if (type(ty->second).arity == 0) out.push_back(Term::tensor(Term::seq(x, ty->first), ty->second));
      if (type(ty->first).arity == 0) out.push_back(Term::tensor(ty->first, Term::seq(x, ty->second)));
    }
    if (!tx) return;
    if (type(tx->second).coarity == 0) out.push_back(Term::tensor(Term::seq(tx->first, y), tx->second));
    if (type(tx->first).coarity == 0) out.push_back(Term::tensor(tx->first, Term::seq(tx->second, y)));
    if (const auto* ty = y.as<smt::Tensor<GenRef>>()) {
      if (type(tx->first).coarity == type(ty->first).arity)
        out.push_back(Term::tensor(Term::seq(tx->first, ty->first), Term::seq(tx->second, ty->second)));
    }
    // Naturality: (s * t) ; sym(n,p) = sym(m,o) ; (t * s).
    if (py) {
      auto ts = type(tx->first), tt = type(tx->second);
      if (*py == block_swap_table(ts.coarity, tt.coarity))
        out.push_back(Term::seq(smt_canonical_symmetry<GenRef>(ts.arity, tt.arity), Term::tensor(tx->second, tx->first)));
    }
  }

  void tensor_rules(const smt::Tensor<GenRef>& s, std::vector<Term>& out) const {
    if (const auto* inner = s.first.as<smt::Tensor<GenRef>>())
      out.push_back(Term::tensor(inner->first, Term::tensor(inner->second, s.second)));
    auto p1 = generator_free_table(s.first);
    auto p2 = generator_free_table(s.second);
    if (p1 && p1->empty() && type(s.first).coarity == 0) out.push_back(s.second);
    if (p2 && p2->empty() && type(s.second).coarity == 0) out.push_back(s.first);
  }

  const TheoryPresentation& th_;
  bool coherence_;
  std::unordered_map<std::string, std::vector<Term>> axioms_;
  std::vector<std::pair<Name, Name>> none_;
};

// ---------------------------------------------------------------------------
// Engine

template <class Rules>
class Closure {
 public:
  using Term = typename Rules::Term;

  explicit Closure(Rules rules) : rules_(std::move(rules)) {}

  ClosureResult run(const std::vector<Term>& universe, const ClosureOptions& opts) {
    NameSet alphabet;
    for (const auto& t : universe) rules_.collect_alphabet(t, alphabet);
    rules_.set_alphabet(alphabet);

    std::vector<std::size_t> given;
    for (const auto& t : universe) given.push_back(intern(t));

    ClosureResult result;
    result.universe_size = universe.size();
    result.budget = opts.budget.value_or(10 * universe.size());
    UnionFind uf(terms_.size());
    bool exhausted = false;
    auto unite = [&](std::size_t a, std::size_t b) {
      if (exhausted) return false;
      if (result.merges >= result.budget) {
        if (uf.find(a) != uf.find(b)) exhausted = true;
        return false;
      }
      if (!uf.unite(a, b)) return false;
      ++result.merges;
      return true;
    };

    for (std::size_t i = 0; i < terms_.size(); ++i) unite(i, by_key_.at(keys_[i]));

    std::vector<Term> rewrites;
    for (std::size_t i = 0; i < terms_.size() && !exhausted; ++i) {
      rewrites.clear();
      rules_.root_rewrites(terms_[i], rewrites);
      for (const auto& r : rewrites) {
        auto it = by_key_.find(rules_.key(r));
        if (it != by_key_.end()) unite(i, it->second);
      }
    }

    std::vector<std::vector<long>> images;
    if constexpr (Rules::has_perm_rule) {
      for (const auto& tau : rules_.transpositions()) {
        std::vector<long> img(terms_.size(), -1);
        for (std::size_t i = 0; i < terms_.size(); ++i) {
          auto it = by_key_.find(rules_.key(rules_.permute(tau, terms_[i])));
          if (it != by_key_.end()) img[i] = long(it->second);
        }
        images.push_back(std::move(img));
      }
    }

    bool changed = true;
    while (changed && !exhausted) {
      changed = false;
      std::unordered_map<CongruenceKey, std::size_t, CongruenceHash> seen;
      for (std::size_t i = 0; i < terms_.size(); ++i) {
        const auto& s = shapes_[i];
        if (s.op == Op::Leaf) continue;
        CongruenceKey k{s.op, uf.find(kids_[i][0]), kids_[i].size() > 1 ? uf.find(kids_[i][1]) : 0, s.a, s.b};
        auto [it, inserted] = seen.emplace(k, i);
        if (!inserted && unite(it->second, i)) changed = true;
      }
      for (const auto& img : images) {
        std::unordered_map<std::size_t, std::size_t> first;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
          if (img[i] < 0) continue;
          auto [it, inserted] = first.emplace(uf.find(i), std::size_t(img[i]));
          if (!inserted && unite(it->second, std::size_t(img[i]))) changed = true;
        }
      }
    }
    result.fixpoint_reached = !exhausted;

    std::unordered_map<std::size_t, std::size_t> dense;
    for (auto g : given) {
      auto [it, inserted] = dense.emplace(uf.find(g), dense.size());
      result.class_of.push_back(it->second);
    }
    result.classes = dense.size();
    return result;
  }

 private:
  std::size_t intern(const Term& t) {
    std::string printed = rules_.print(t);
    auto it = by_print_.find(printed);
    if (it != by_print_.end()) return it->second;
    Shape shape;
    std::vector<std::size_t> kids;
    rules_.children(
        t, shape, [&](const Term& c) { kids.push_back(intern(c)); },
        [&](const Name& n) {
          auto [nit, inserted] = name_ids_.emplace(n, int(name_ids_.size()));
          return nit->second;
        });
    std::size_t id = terms_.size();
    terms_.push_back(t);
    keys_.push_back(rules_.key(t));
    shapes_.push_back(shape);
    kids_.push_back(std::move(kids));
    by_print_.emplace(std::move(printed), id);
    by_key_.emplace(keys_.back(), id);
    return id;
  }

  Rules rules_;
  std::vector<Term> terms_;
  std::vector<std::string> keys_;
  std::vector<Shape> shapes_;
  std::vector<std::vector<std::size_t>> kids_;
  std::unordered_map<std::string, std::size_t> by_print_;
  std::unordered_map<std::string, std::size_t> by_key_;
  std::map<Name, int> name_ids_;
};

void require_kind(const TheoryPresentation& th, Calculus kind) {
  if (th.kind != kind)
    throw Error(ErrorKind::TypeMismatch, std::string("closure over ") + to_string(kind) + " terms needs a " +
                                             to_string(kind) + " theory, got " + to_string(th.kind));
}

}  // namespace

std::optional<std::map<Name, Name>> generator_free_bijection(const BaseNmt& t) {
  using R = std::optional<Bij>;
  return std::visit(overloaded{[](const nmt::Gen<GenRef>&) -> R { return std::nullopt; },
                               [](const nmt::Id& i) -> R { return Bij{{i.wire, i.wire}}; },
                               [](const nmt::Delta& d) -> R { return Bij{{d.from, d.to}}; },
                               [](const nmt::Empty&) -> R { return Bij{}; },
                               [](const nmt::Seq<GenRef>& s) -> R {
                                 auto f = generator_free_bijection(s.first);
                                 if (!f) return std::nullopt;
                                 auto g = generator_free_bijection(s.second);
                                 if (!g) return std::nullopt;
                                 Bij out;
                                 for (const auto& [x, y] : *f) {
                                   auto it = g->find(y);
                                   if (it == g->end()) throw Error(ErrorKind::SeqDomainMismatch, "ill-typed composite");
                                   out.emplace(x, it->second);
                                 }
                                 return out;
                               },
                               [](const nmt::Tensor<GenRef>& s) -> R {
                                 auto f = generator_free_bijection(s.first);
                                 if (!f) return std::nullopt;
                                 auto g = generator_free_bijection(s.second);
                                 if (!g) return std::nullopt;
                                 f->insert(g->begin(), g->end());
                                 return f;
                               },
                               [](const nmt::Swap<GenRef>& s) -> R {
                                 auto f = generator_free_bijection(s.body);
                                 if (!f) return std::nullopt;
                                 Perm p = Perm::transposition(s.a, s.b);
                                 Bij out;
                                 for (const auto& [x, y] : *f) out.emplace(p(x), p(y));
                                 return out;
                               }},
                    t.node());
}

std::optional<std::vector<std::size_t>> generator_free_table(const BaseSmt& t) {
  using R = std::optional<std::vector<std::size_t>>;
  return std::visit(overloaded{[](const smt::Gen<GenRef>&) -> R { return std::nullopt; },
                               [](const smt::Id&) -> R { return std::vector<std::size_t>{0}; },
                               [](const smt::Sym&) -> R { return std::vector<std::size_t>{1, 0}; },
                               [](const smt::Empty&) -> R { return std::vector<std::size_t>{}; },
                               [](const smt::Seq<GenRef>& s) -> R {
                                 auto f = generator_free_table(s.first);
                                 if (!f) return std::nullopt;
                                 auto g = generator_free_table(s.second);
                                 if (!g) return std::nullopt;
                                 if (f->size() != g->size())
                                   throw Error(ErrorKind::SeqArityMismatch, "ill-typed composite");
                                 for (auto& v : *f) v = (*g)[v];
                                 return f;
                               },
                               [](const smt::Tensor<GenRef>& s) -> R {
                                 auto f = generator_free_table(s.first);
                                 if (!f) return std::nullopt;
                                 auto g = generator_free_table(s.second);
                                 if (!g) return std::nullopt;
                                 std::size_t off = f->size();
                                 for (auto v : *g) f->push_back(v + off);
                                 return f;
                               }},
                    t.node());
}

ClosureResult th_closure(const TheoryPresentation& th, const std::vector<BaseNmt>& universe,
                         const ClosureOptions& opts) {
  require_kind(th, Calculus::Nmt);
  for (const auto& t : universe) nmt_typecheck(t, th.signature);
  return Closure<NmtRules>(NmtRules(th, opts.coherence)).run(universe, opts);
}

ClosureResult th_closure(const TheoryPresentation& th, const std::vector<BaseSmt>& universe,
                         const ClosureOptions& opts) {
  require_kind(th, Calculus::Smt);
  for (const auto& t : universe) smt_typecheck(t, th.signature);
  return Closure<SmtRules>(SmtRules(th, opts.coherence)).run(universe, opts);
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<BaseNmt> enumerate_nmt(const Signature& sig, const std::vector<Name>& alphabet, std::size_t max_size) {
  if (alphabet.size() > 16) throw Error(ErrorKind::InvalidName, "enumeration alphabet too large");
  auto mask_of = [&](const NameSet& s) {
    unsigned m = 0;
    for (const auto& n : s) m |= 1u << (std::find(alphabet.begin(), alphabet.end(), n) - alphabet.begin());
    return m;
  };
  struct Entry {
    BaseNmt term;
    unsigned dom, cod;
  };
  std::vector<std::vector<Entry>> by_size(max_size + 1);
  auto add = [&](std::size_t size, BaseNmt t) {
    auto ty = nmt_typecheck(t, sig);
    by_size[size].push_back({std::move(t), mask_of(ty.dom), mask_of(ty.cod)});
  };

  auto lists = [&](std::size_t len) {
    std::vector<NameList> out;
    std::vector<Name> cur;
    std::function<void()> go = [&] {
      if (cur.size() == len) {
        out.emplace_back(cur);
        return;
      }
      for (const auto& n : alphabet) {
        if (std::find(cur.begin(), cur.end(), n) != cur.end()) continue;
        cur.push_back(n);
        go();
        cur.pop_back();
      }
    };
    go();
    return out;
  };

  if (max_size >= 1) {
    for (const auto& a : alphabet) add(1, BaseNmt::id(a));
    for (const auto& a : alphabet)
      for (const auto& b : alphabet) add(1, BaseNmt::delta(a, b));
    add(1, BaseNmt::empty());
    for (const auto& g : sig.list())
      for (const auto& in : lists(g.arity))
        for (const auto& out : lists(g.coarity)) add(1, BaseNmt::gen(in, GenRef{g.name}, out));
  }

  for (std::size_t k = 2; k <= max_size; ++k) {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      for (std::size_t j = i + 1; j < alphabet.size(); ++j)
        for (const auto& e : by_size[k - 1]) add(k, BaseNmt::swap(alphabet[i], alphabet[j], e.term));
    for (std::size_t left = 1; left + 1 < k; ++left) {
      std::size_t right = k - 1 - left;
      std::map<unsigned, std::vector<const Entry*>> right_by_dom;
      for (const auto& e : by_size[right]) right_by_dom[e.dom].push_back(&e);
      for (const auto& x : by_size[left]) {
        auto it = right_by_dom.find(x.cod);
        if (it != right_by_dom.end())
          for (const auto* y : it->second) add(k, BaseNmt::seq(x.term, y->term));
      }
      for (const auto& x : by_size[left])
        for (const auto& y : by_size[right])
          if (!(x.dom & y.dom) && !(x.cod & y.cod)) add(k, BaseNmt::tensor(x.term, y.term));
    }
  }
  std::vector<BaseNmt> out;
  for (auto& bucket : by_size)
    for (auto& e : bucket) out.push_back(std::move(e.term));
  return out;
}

std::vector<BaseSmt> enumerate_smt(const Signature& sig, std::size_t max_boundary, std::size_t max_size) {
  struct Entry {
    BaseSmt term;
    SmtType type;
  };
  std::vector<std::vector<Entry>> by_size(max_size + 1);
  auto add = [&](std::size_t size, BaseSmt t) {
    auto ty = smt_typecheck(t, sig);
    if (ty.arity > max_boundary || ty.coarity > max_boundary) return;
    by_size[size].push_back({std::move(t), ty});
  };
  if (max_size >= 1) {
    add(1, BaseSmt::id());
    add(1, BaseSmt::sym());
    add(1, BaseSmt::empty());
    for (const auto& g : sig.list()) add(1, BaseSmt::gen(GenRef{g.name}));
  }
  for (std::size_t k = 3; k <= max_size; ++k) {
    for (std::size_t left = 1; left + 1 < k; ++left) {
      std::size_t right = k - 1 - left;
      for (const auto& x : by_size[left])
        for (const auto& y : by_size[right]) {
          if (x.type.coarity == y.type.arity) add(k, BaseSmt::seq(x.term, y.term));
          add(k, BaseSmt::tensor(x.term, y.term));
        }
    }
  }
  std::vector<BaseSmt> out;
  for (auto& bucket : by_size)
    for (auto& e : bucket) out.push_back(std::move(e.term));
  return out;
}

}  // namespace nomprop
