#pragma once

// Concrete models: finite functions, partial functions and relations, ordinal
// (objects are natural numbers) and nominal (objects are finite name sets).
//
// Every arrow is stored as a 0/1 incidence matrix, rows indexed by the domain and
// columns by the codomain; composition is the boolean matrix product and the
// tensor is the block-diagonal sum. Named arrows index rows and columns by the
// sorted enumeration of their name sets.

#include <Eigen/Dense>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nomprop/name.hpp"
#include "nomprop/term.hpp"

namespace nomprop {

enum class ModelTag { B, I, S, F, P, R, nB, nI, nS, nF, nP, nR };

const char* to_string(ModelTag tag);
std::optional<ModelTag> try_parse_model_tag(std::string_view s);
/// Throws UnknownTheory.
ModelTag parse_model_tag(std::string_view s);

bool is_nominal(ModelTag tag);
ModelTag nominal_counterpart(ModelTag tag);
ModelTag ordinal_counterpart(ModelTag tag);

using Incidence = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

enum class ArrowKind { Function, PartialFunction, Relation };

const char* to_string(ArrowKind kind);

/// An arrow m -> n of the ordinal models.
class Arrow {
 public:
  Arrow(std::size_t m, std::size_t n) : rel_(Incidence::Zero(Eigen::Index(m), Eigen::Index(n))) {}
  explicit Arrow(Incidence rel);

  static Arrow identity(std::size_t n);
  /// Total function table.size() -> n with i -> table[i].
  static Arrow function(std::size_t n, std::span<const std::size_t> table);

  std::size_t dom() const { return std::size_t(rel_.rows()); }
  std::size_t cod() const { return std::size_t(rel_.cols()); }
  const Incidence& incidence() const { return rel_; }
  bool related(std::size_t i, std::size_t j) const { return rel_(Eigen::Index(i), Eigen::Index(j)) != 0; }

  /// The most specific class the arrow belongs to.
  ArrowKind kind() const;
  /// Image of each input, nullopt where undefined; throws TypeMismatch for a proper relation.
  std::vector<std::optional<std::size_t>> partial_table() const;
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

  friend bool operator==(const Arrow& f, const Arrow& g);

 private:
  Incidence rel_;
};

/// Diagrammatic composition f ; g.
Arrow then(const Arrow& f, const Arrow& g);
Arrow tensor(const Arrow& f, const Arrow& g);

/// An arrow A -> B between finite sets of names.
class NamedArrow {
 public:
  NamedArrow() = default;
  NamedArrow(NameSet dom, NameSet cod, Incidence rel);

  static NamedArrow identity(const NameSet& names);
  static NamedArrow renaming(const Name& a, const Name& b);
  /// The bijection a_i -> b_i.
  static NamedArrow list_bijection(const NameList& a, const NameList& b);

  const NameSet& dom() const { return dom_; }
  const NameSet& cod() const { return cod_; }
  const NameList& dom_list() const { return dom_list_; }
  const NameList& cod_list() const { return cod_list_; }
  const Incidence& incidence() const { return rel_; }
  bool related(const Name& a, const Name& b) const;

  ArrowKind kind() const;
  std::vector<std::pair<Name, Name>> pairs() const;
  /// The graph as a map; throws TypeMismatch unless the arrow is a partial function.
  std::map<Name, Name> graph() const;

  friend bool operator==(const NamedArrow& f, const NamedArrow& g);

 private:
  NameSet dom_, cod_;
  NameList dom_list_, cod_list_;
  Incidence rel_;
};

NamedArrow then(const NamedArrow& f, const NamedArrow& g);
NamedArrow tensor(const NamedArrow& f, const NamedArrow& g);
/// Pointwise renaming of both boundaries.
NamedArrow act(const Perm& p, const NamedArrow& f);

/// ⟦a⟩f⟨b⟧ = a⃗ ; f ; b⃗⁻¹ where a⃗ sends a_i to i.
NamedArrow semantic_box(const NameList& a, const Arrow& f, const NameList& b);
/// ⟪a]f[b⟫ = a⃗⁻¹ ; f ; b⃗.
Arrow semantic_unbox(const NameList& a, const NamedArrow& f, const NameList& b);

// ---------------------------------------------------------------------------
// Generators

/// eta, mu, etahat, muhat with their ordinal arities.
const std::vector<GenDecl>& model_generators();
/// Generators interpreted by the model, in the order of model_generators().
Signature model_signature(ModelTag tag);
/// Interpretation of a generator symbol; throws UnknownGenerator or ModelMismatch.
Arrow generator_arrow(std::string_view gen, ModelTag tag);

template <class G, class PayloadEval>
Arrow eval_smt_with(const SmtTerm<G>& t, const PayloadEval& payload) {
  return std::visit(overloaded{[&](const smt::Gen<G>& g) -> Arrow { return payload(g.value); },
                               [](const smt::Id&) { return Arrow::identity(1); },
                               [](const smt::Sym&) {
                                 const std::size_t table[] = {1, 0};
                                 return Arrow::function(2, table);
                               },
                               [](const smt::Empty&) { return Arrow::identity(0); },
                               [&](const smt::Seq<G>& s) {
                                 return then(eval_smt_with(s.first, payload), eval_smt_with(s.second, payload));
                               },
                               [&](const smt::Tensor<G>& s) {
                                 return tensor(eval_smt_with(s.first, payload), eval_smt_with(s.second, payload));
                               }},
                    t.node());
}

/// Nominal evaluation; a generator site [a⟩g⟨b] is the semantic box of payload(g).
template <class G, class PayloadEval>
NamedArrow eval_nmt_with(const NmtTerm<G>& t, const PayloadEval& payload) {
  return std::visit(
      overloaded{[&](const nmt::Gen<G>& g) { return semantic_box(g.in, payload(g.value), g.out); },
                 [](const nmt::Id& i) { return NamedArrow::identity({i.wire}); },
                 [](const nmt::Delta& d) { return NamedArrow::renaming(d.from, d.to); },
                 [](const nmt::Empty&) { return NamedArrow(); },
                 [&](const nmt::Seq<G>& s) {
                   return then(eval_nmt_with(s.first, payload), eval_nmt_with(s.second, payload));
                 },
                 [&](const nmt::Tensor<G>& s) {
                   return tensor(eval_nmt_with(s.first, payload), eval_nmt_with(s.second, payload));
                 },
                 [&](const nmt::Swap<G>& s) {
                   return act(Perm::transposition(s.a, s.b), eval_nmt_with(s.body, payload));
                 }},
      t.node());
}

/// Throws ModelMismatch when `tag` is nominal.
Arrow eval_smt(const BaseSmt& t, ModelTag tag);
/// Throws ModelMismatch when `tag` is ordinal.
NamedArrow eval_nmt(const BaseNmt& t, ModelTag tag);

}  // namespace nomprop
