#pragma once

// Term calculi for symmetric (ordinal) and nominal monoidal theories.
//
// Both term types are generic over the generator payload G. Base terms use GenRef;
// the translations reuse the same machinery with whole terms as payloads
// (NmtTerm<SmtTerm<GenRef>> for boxed terms, SmtTerm<DiaBox> for dia'd terms).
// Terms are immutable and share subterms.

#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "nomprop/error.hpp"
#include "nomprop/name.hpp"

namespace nomprop {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

/// Reference to a generator of a signature, by symbol.
struct GenRef {
  std::string name;
  auto operator<=>(const GenRef&) const = default;
  bool operator==(const GenRef&) const = default;
};

struct GenDecl {
  std::string name;
  std::size_t arity = 0;
  std::size_t coarity = 0;
  bool operator==(const GenDecl&) const = default;
};

/// Generator symbols with their arities. Nominal generators are schemas: one
/// declaration per symbol, instantiated with wire names at each use site.
class Signature {
 public:
  Signature() = default;
  Signature(std::initializer_list<GenDecl> decls);

  static bool is_reserved_word(std::string_view s);

  void add(GenDecl decl);
  const GenDecl* find(std::string_view name) const;
  const GenDecl& at(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  std::vector<GenDecl> list() const;
  std::size_t size() const { return decls_.size(); }

  bool operator==(const Signature&) const = default;

 private:
  std::map<std::string, GenDecl, std::less<>> decls_;
};

/// Union of two signatures; throws InvalidTheory on conflicting arities.
Signature merge(const Signature& a, const Signature& b);

template <class G>
class SmtTerm;
template <class G>
class NmtTerm;

namespace smt {
template <class G>
struct Gen {
  G value;
  bool operator==(const Gen&) const = default;
};
struct Id {
  bool operator==(const Id&) const = default;
};
struct Sym {
  bool operator==(const Sym&) const = default;
};
/// The unit of the tensor, 0 -> 0.
struct Empty {
  bool operator==(const Empty&) const = default;
};
template <class G>
struct Seq {
  SmtTerm<G> first;
  SmtTerm<G> second;
  bool operator==(const Seq&) const = default;
};
template <class G>
struct Tensor {
  SmtTerm<G> first;
  SmtTerm<G> second;
  bool operator==(const Tensor&) const = default;
};
}  // namespace smt

template <class G>
class SmtTerm {
 public:
  using Payload = G;
  using Node = std::variant<smt::Gen<G>, smt::Id, smt::Sym, smt::Empty, smt::Seq<G>, smt::Tensor<G>>;

  static SmtTerm gen(G g) { return SmtTerm(Node(smt::Gen<G>{std::move(g)})); }
  static SmtTerm id() { return SmtTerm(Node(smt::Id{})); }
  static SmtTerm sym() { return SmtTerm(Node(smt::Sym{})); }
  static SmtTerm empty() { return SmtTerm(Node(smt::Empty{})); }
  static SmtTerm seq(SmtTerm a, SmtTerm b) {
    return SmtTerm(Node(smt::Seq<G>{std::move(a), std::move(b)}));
  }
  static SmtTerm tensor(SmtTerm a, SmtTerm b) {
    return SmtTerm(Node(smt::Tensor<G>{std::move(a), std::move(b)}));
  }

  const Node& node() const { return *node_; }
  template <class T>
  const T* as() const {
    return std::get_if<T>(node_.get());
  }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(*node_);
  }

  /// AST node count.
  std::size_t size() const {
    return std::visit(overloaded{[](const smt::Seq<G>& s) { return 1 + s.first.size() + s.second.size(); },
                                 [](const smt::Tensor<G>& s) { return 1 + s.first.size() + s.second.size(); },
                                 [](const auto&) -> std::size_t { return 1; }},
                      *node_);
  }

  friend bool operator==(const SmtTerm& a, const SmtTerm& b) {
    return a.node_ == b.node_ || *a.node_ == *b.node_;
  }

 private:
  explicit SmtTerm(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
  std::shared_ptr<const Node> node_;
};

namespace nmt {
template <class G>
struct Gen {
  NameList in;
  G value;
  NameList out;
  bool operator==(const Gen&) const = default;
};
struct Id {
  Name wire;
  bool operator==(const Id&) const = default;
};
struct Delta {
  Name from;
  Name to;
  bool operator==(const Delta&) const = default;
};
/// The unit of the nominal tensor, typed {} -> {}.
struct Empty {
  bool operator==(const Empty&) const = default;
};
template <class G>
struct Seq {
  NmtTerm<G> first;
  NmtTerm<G> second;
  bool operator==(const Seq&) const = default;
};
template <class G>
struct Tensor {
  NmtTerm<G> first;
  NmtTerm<G> second;
  bool operator==(const Tensor&) const = default;
};
/// The transposition (a b) applied to a term.
template <class G>
struct Swap {
  Name a;
  Name b;
  NmtTerm<G> body;
  bool operator==(const Swap&) const = default;
};
}  // namespace nmt

template <class G>
class NmtTerm {
 public:
  using Payload = G;
  using Node = std::variant<nmt::Gen<G>, nmt::Id, nmt::Delta, nmt::Empty, nmt::Seq<G>, nmt::Tensor<G>,
                            nmt::Swap<G>>;

  static NmtTerm gen(NameList in, G g, NameList out) {
    return NmtTerm(Node(nmt::Gen<G>{std::move(in), std::move(g), std::move(out)}));
  }
  static NmtTerm id(Name a) { return NmtTerm(Node(nmt::Id{std::move(a)})); }
  static NmtTerm delta(Name a, Name b) { return NmtTerm(Node(nmt::Delta{std::move(a), std::move(b)})); }
  static NmtTerm empty() { return NmtTerm(Node(nmt::Empty{})); }
  static NmtTerm seq(NmtTerm a, NmtTerm b) {
    return NmtTerm(Node(nmt::Seq<G>{std::move(a), std::move(b)}));
  }
  static NmtTerm tensor(NmtTerm a, NmtTerm b) {
    return NmtTerm(Node(nmt::Tensor<G>{std::move(a), std::move(b)}));
  }
  static NmtTerm swap(Name a, Name b, NmtTerm t) {
    return NmtTerm(Node(nmt::Swap<G>{std::move(a), std::move(b), std::move(t)}));
  }

  const Node& node() const { return *node_; }
  template <class T>
  const T* as() const {
    return std::get_if<T>(node_.get());
  }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(*node_);
  }

  std::size_t size() const {
    return std::visit(overloaded{[](const nmt::Seq<G>& s) { return 1 + s.first.size() + s.second.size(); },
                                 [](const nmt::Tensor<G>& s) { return 1 + s.first.size() + s.second.size(); },
                                 [](const nmt::Swap<G>& s) { return 1 + s.body.size(); },
                                 [](const auto&) -> std::size_t { return 1; }},
                      *node_);
  }

  friend bool operator==(const NmtTerm& a, const NmtTerm& b) {
    return a.node_ == b.node_ || *a.node_ == *b.node_;
  }

 private:
  explicit NmtTerm(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
  std::shared_ptr<const Node> node_;
};

using BaseSmt = SmtTerm<GenRef>;
using BaseNmt = NmtTerm<GenRef>;

struct SmtType {
  std::size_t arity = 0;
  std::size_t coarity = 0;
  bool operator==(const SmtType&) const = default;
};

struct NmtType {
  NameSet dom;
  NameSet cod;
  bool operator==(const NmtType&) const = default;
};

std::string describe(const NameSet& s);

// ---------------------------------------------------------------------------
// Typing

template <class G, class PayloadType>
SmtType smt_type_of(const SmtTerm<G>& t, const PayloadType& payload_type) {
  return std::visit(
      overloaded{
          [&](const smt::Gen<G>& g) -> SmtType { return payload_type(g.value); },
          [](const smt::Id&) { return SmtType{1, 1}; },
          [](const smt::Sym&) { return SmtType{2, 2}; },
          [](const smt::Empty&) { return SmtType{0, 0}; },
          [&](const smt::Seq<G>& s) {
            auto a = smt_type_of(s.first, payload_type);
            auto b = smt_type_of(s.second, payload_type);
            if (a.coarity != b.arity)
              throw Error(ErrorKind::SeqArityMismatch, "sequential composition expects arity " +
                                                           std::to_string(a.coarity) + ", got " +
                                                           std::to_string(b.arity));
            return SmtType{a.arity, b.coarity};
          },
          [&](const smt::Tensor<G>& s) {
            auto a = smt_type_of(s.first, payload_type);
            auto b = smt_type_of(s.second, payload_type);
            return SmtType{a.arity + b.arity, a.coarity + b.coarity};
          }},
      t.node());
}

template <class G, class PayloadType>
NmtType nmt_type_of(const NmtTerm<G>& t, const PayloadType& payload_type) {
  return std::visit(
      overloaded{
          [&](const nmt::Gen<G>& g) -> NmtType {
            SmtType ty = payload_type(g.value);
            if (ty.arity != g.in.size() || ty.coarity != g.out.size())
              throw Error(ErrorKind::BoundaryMismatch,
                          "generator expects " + std::to_string(ty.arity) + " input and " +
                              std::to_string(ty.coarity) + " output wires, got " +
                              std::to_string(g.in.size()) + " and " + std::to_string(g.out.size()));
            return NmtType{g.in.underline(), g.out.underline()};
          },
          [](const nmt::Id& i) { return NmtType{{i.wire}, {i.wire}}; },
          [](const nmt::Delta& d) { return NmtType{{d.from}, {d.to}}; },
          [](const nmt::Empty&) { return NmtType{}; },
          [&](const nmt::Seq<G>& s) {
            auto a = nmt_type_of(s.first, payload_type);
            auto b = nmt_type_of(s.second, payload_type);
            if (a.cod != b.dom)
              throw Error(ErrorKind::SeqDomainMismatch,
                          "sequential composition expects " + describe(a.cod) + ", got " + describe(b.dom));
            return NmtType{std::move(a.dom), std::move(b.cod)};
          },
          [&](const nmt::Tensor<G>& s) {
            auto a = nmt_type_of(s.first, payload_type);
            auto b = nmt_type_of(s.second, payload_type);
            NameSet overlap;
            for (const auto& n : a.dom)
              if (b.dom.count(n)) overlap.insert(n);
            for (const auto& n : a.cod)
              if (b.cod.count(n)) overlap.insert(n);
            if (!overlap.empty())
              throw Error(ErrorKind::TensorOverlap, "tensor operands share wires " + describe(overlap));
            a.dom.insert(b.dom.begin(), b.dom.end());
            a.cod.insert(b.cod.begin(), b.cod.end());
            return a;
          },
          [&](const nmt::Swap<G>& s) {
            auto ty = nmt_type_of(s.body, payload_type);
            Perm p = Perm::transposition(s.a, s.b);
            return NmtType{act(p, ty.dom), act(p, ty.cod)};
          }},
      t.node());
}

/// Payload typer for base generators.
struct SignatureTyper {
  const Signature& sig;
  SmtType operator()(const GenRef& g) const {
    const auto& d = sig.at(g.name);
    return SmtType{d.arity, d.coarity};
  }
};

SmtType smt_typecheck(const BaseSmt& t, const Signature& sig);
NmtType nmt_typecheck(const BaseNmt& t, const Signature& sig);

template <class G, class PayloadType>
bool nmt_well_typed(const NmtTerm<G>& t, const PayloadType& payload_type) {
  try {
    nmt_type_of(t, payload_type);
    return true;
  } catch (const Error&) {
    return false;
  }
}

/// Support modulo diagrammatic alpha-equivalence: the boundary dom ∪ cod.
NameSet nmt_support(const BaseNmt& t, const Signature& sig);

// ---------------------------------------------------------------------------
// Names and the permutation action

/// Every name occurring anywhere in the term, internal wires included.
template <class G>
void collect_names(const NmtTerm<G>& t, NameSet& out) {
  std::visit(overloaded{[&](const nmt::Gen<G>& g) {
                          out.insert(g.in.begin(), g.in.end());
                          out.insert(g.out.begin(), g.out.end());
                        },
                        [&](const nmt::Id& i) { out.insert(i.wire); },
                        [&](const nmt::Delta& d) {
                          out.insert(d.from);
                          out.insert(d.to);
                        },
                        [](const nmt::Empty&) {},
                        [&](const nmt::Seq<G>& s) {
                          collect_names(s.first, out);
                          collect_names(s.second, out);
                        },
                        [&](const nmt::Tensor<G>& s) {
                          collect_names(s.first, out);
                          collect_names(s.second, out);
                        },
                        [&](const nmt::Swap<G>& s) {
                          out.insert(s.a);
                          out.insert(s.b);
                          collect_names(s.body, out);
                        }},
             t.node());
}

template <class G>
NameSet names_of(const NmtTerm<G>& t) {
  NameSet out;
  collect_names(t, out);
  return out;
}

/// Pushes `p` down to the wire labels. Swap nodes of the input are resolved by the
/// same pushdown, so the result contains none.
template <class G>
NmtTerm<G> nmt_perm_action(const Perm& p, const NmtTerm<G>& t) {
  using T = NmtTerm<G>;
  return std::visit(overloaded{[&](const nmt::Gen<G>& g) { return T::gen(act(p, g.in), g.value, act(p, g.out)); },
                               [&](const nmt::Id& i) { return T::id(p(i.wire)); },
                               [&](const nmt::Delta& d) { return T::delta(p(d.from), p(d.to)); },
                               [](const nmt::Empty&) { return T::empty(); },
                               [&](const nmt::Seq<G>& s) {
                                 return T::seq(nmt_perm_action(p, s.first), nmt_perm_action(p, s.second));
                               },
                               [&](const nmt::Tensor<G>& s) {
                                 return T::tensor(nmt_perm_action(p, s.first), nmt_perm_action(p, s.second));
                               },
                               [&](const nmt::Swap<G>& s) {
                                 return nmt_perm_action(compose(Perm::transposition(s.a, s.b), p), s.body);
                               }},
                    t.node());
}

/// Applies an arbitrary (not necessarily injective) renaming to every label,
/// keeping Swap nodes. Throws DuplicateWireName if a generator list collapses.
template <class G, class F>
NmtTerm<G> rename_names(const NmtTerm<G>& t, const F& f) {
  using T = NmtTerm<G>;
  auto list = [&](const NameList& l) {
    std::vector<Name> out;
    for (const auto& n : l) out.push_back(f(n));
    return NameList(std::move(out));
  };
  return std::visit(overloaded{[&](const nmt::Gen<G>& g) { return T::gen(list(g.in), g.value, list(g.out)); },
                               [&](const nmt::Id& i) { return T::id(f(i.wire)); },
                               [&](const nmt::Delta& d) { return T::delta(f(d.from), f(d.to)); },
                               [](const nmt::Empty&) { return T::empty(); },
                               [&](const nmt::Seq<G>& s) {
                                 return T::seq(rename_names(s.first, f), rename_names(s.second, f));
                               },
                               [&](const nmt::Tensor<G>& s) {
                                 return T::tensor(rename_names(s.first, f), rename_names(s.second, f));
                               },
                               [&](const nmt::Swap<G>& s) { return T::swap(f(s.a), f(s.b), rename_names(s.body, f)); }},
                    t.node());
}

template <class G>
bool contains_swap(const NmtTerm<G>& t) {
  return std::visit(overloaded{[](const nmt::Seq<G>& s) { return contains_swap(s.first) || contains_swap(s.second); },
                               [](const nmt::Tensor<G>& s) {
                                 return contains_swap(s.first) || contains_swap(s.second);
                               },
                               [](const nmt::Swap<G>&) { return true; },
                               [](const auto&) { return false; }},
                    t.node());
}

// ---------------------------------------------------------------------------
// Builders

/// Left-nested fold with `combine`; `unit` when the range is empty.
template <class T, class Combine>
T fold_terms(const std::vector<T>& parts, T unit, const Combine& combine) {
  if (parts.empty()) return unit;
  T acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = combine(acc, parts[i]);
  return acc;
}

template <class G>
NmtTerm<G> nmt_tensor_all(const std::vector<NmtTerm<G>>& parts) {
  return fold_terms(parts, NmtTerm<G>::empty(), [](auto a, auto b) { return NmtTerm<G>::tensor(a, b); });
}

template <class G>
SmtTerm<G> smt_tensor_all(const std::vector<SmtTerm<G>>& parts) {
  return fold_terms(parts, SmtTerm<G>::empty(), [](auto a, auto b) { return SmtTerm<G>::tensor(a, b); });
}

/// id ⊕ ... ⊕ id on n wires; the empty term when n = 0.
template <class G>
SmtTerm<G> smt_identity(std::size_t n) {
  return smt_tensor_all(std::vector<SmtTerm<G>>(n, SmtTerm<G>::id()));
}

/// Realizes the bijection i -> table[i] with adjacent twists.
template <class G>
SmtTerm<G> smt_permutation(std::span<const std::size_t> table) {
  const std::size_t n = table.size();
  std::vector<std::size_t> wires(table.begin(), table.end());
  std::vector<SmtTerm<G>> layers;
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (wires[k] > wires[k + 1]) {
        std::swap(wires[k], wires[k + 1]);
        std::vector<SmtTerm<G>> parts(k, SmtTerm<G>::id());
        parts.push_back(SmtTerm<G>::sym());
        parts.insert(parts.end(), n - k - 2, SmtTerm<G>::id());
        layers.push_back(smt_tensor_all(parts));
        swapped = true;
      }
    }
  }
  if (layers.empty()) return smt_identity<G>(n);
  return fold_terms(layers, SmtTerm<G>::empty(), [](auto a, auto b) { return SmtTerm<G>::seq(a, b); });
}

/// Block swap m+n -> n+m: i -> i+n for i < m, i -> i-m otherwise.
std::vector<std::size_t> block_swap_table(std::size_t m, std::size_t n);

template <class G>
SmtTerm<G> smt_canonical_symmetry(std::size_t m, std::size_t n) {
  auto table = block_swap_table(m, n);
  return smt_permutation<G>(table);
}

/// The symmetry ⟨a|a'⟩ sending i to j whenever a[i] = a'[j].
std::vector<std::size_t> realignment_table(const NameList& a, const NameList& a2);

template <class G>
SmtTerm<G> smt_realignment(const NameList& a, const NameList& a2) {
  auto table = realignment_table(a, a2);
  return smt_permutation<G>(table);
}

/// π_A = ⊎_{a ∈ A} δ_{a π(a)} in sorted name order.
template <class G>
NmtTerm<G> perm_as_nmt_term(const Perm& p, const NameSet& names) {
  std::vector<NmtTerm<G>> parts;
  for (const auto& a : names) parts.push_back(NmtTerm<G>::delta(a, p(a)));
  return nmt_tensor_all(parts);
}

/// [a|b] = ⊎ δ_{a_i b_i}.
template <class G>
NmtTerm<G> nmt_list_bijection(const NameList& a, const NameList& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::BoundaryMismatch, "list bijection needs equal lengths");
  std::vector<NmtTerm<G>> parts;
  for (std::size_t i = 0; i < a.size(); ++i) parts.push_back(NmtTerm<G>::delta(a[i], b[i]));
  return nmt_tensor_all(parts);
}

/// id_A = ⊎_{a ∈ A} id_a.
template <class G>
NmtTerm<G> nmt_identity(const NameSet& names) {
  std::vector<NmtTerm<G>> parts;
  for (const auto& a : names) parts.push_back(NmtTerm<G>::id(a));
  return nmt_tensor_all(parts);
}

}  // namespace nomprop
