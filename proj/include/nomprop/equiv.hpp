#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nomprop/semantics.hpp"
#include "nomprop/term.hpp"
#include "nomprop/theory.hpp"
#include "nomprop/theory_io.hpp"

namespace nomprop {

/// Equality of the two evaluations; throws TypeMismatch when the types differ.
bool semantic_equiv(const BaseNmt& t1, const BaseNmt& t2, ModelTag tag);
bool semantic_equiv(const BaseSmt& t1, const BaseSmt& t2, ModelTag tag);

/// A bijection dom -> cod, rendered as a sorted tensor of renamings.
struct BijNormalForm {
  std::map<Name, Name> entries;

  BaseNmt term() const;
  bool operator==(const BijNormalForm&) const = default;
};

/// For generator-free terms; throws ModelMismatch if a generator occurs.
BijNormalForm normalize_bijection_nmt(const BaseNmt& t);

/// The bijection denoted by a generator-free term, nullopt if a generator occurs.
std::optional<std::map<Name, Name>> generator_free_bijection(const BaseNmt& t);
/// The permutation table of a generator-free ordinal term, nullopt if a generator occurs.
std::optional<std::vector<std::size_t>> generator_free_table(const BaseSmt& t);

struct ClosureOptions {
  /// Bound on productive merges; 10 * |universe| when unset.
  std::optional<std::size_t> budget;
  /// Identify generator-free subterms that denote the same bijection up front.
  bool coherence = true;
};

struct ClosureResult {
  std::size_t universe_size = 0;
  /// Class id of each input term; ids are dense, numbered in order of first occurrence.
  std::vector<std::size_t> class_of;
  std::size_t classes = 0;
  /// Productive unions performed.
  std::size_t merges = 0;
  std::size_t budget = 0;
  bool fixpoint_reached = false;

  bool same_class(std::size_t i, std::size_t j) const { return class_of.at(i) == class_of.at(j); }
};

/// Bounded deductive closure over `universe`: the least congruence (restricted to the
/// universe and its subterms) containing the axiom instances of the theory and of the
/// base calculus, closed under the permutation rule for nominal theories.
ClosureResult th_closure(const TheoryPresentation& th, const std::vector<BaseNmt>& universe,
                         const ClosureOptions& opts = {});
ClosureResult th_closure(const TheoryPresentation& th, const std::vector<BaseSmt>& universe,
                         const ClosureOptions& opts = {});

/// All well-typed terms of at most `max_size` nodes whose names come from `alphabet`.
/// Swaps range over the transpositions (x y) with x before y in the alphabet.
std::vector<BaseNmt> enumerate_nmt(const Signature& sig, const std::vector<Name>& alphabet, std::size_t max_size);
/// All well-typed terms of at most `max_size` nodes in which every subterm has arity
/// and coarity at most `max_boundary`.
std::vector<BaseSmt> enumerate_smt(const Signature& sig, std::size_t max_boundary, std::size_t max_size);

struct ProbePair {
  std::string lhs;
  std::string rhs;
};

struct ProbeReport {
  std::string theory;
  std::size_t size_bound = 0;
  std::size_t budget = 0;
  std::size_t universe = 0;
  std::size_t pairs_total = 0;
  std::size_t pairs_equal = 0;
  std::size_t pairs_merged = 0;
  bool fixpoint_reached = false;
  /// Merged pairs with different evaluations.
  std::vector<ProbePair> counterexamples;
  std::size_t unsound_pairs = 0;
  /// A sample of semantically equal pairs left in different classes.
  std::vector<ProbePair> unmerged;
  /// Terms whose bijection normal form evaluates differently (nB only).
  std::size_t normal_form_mismatches = 0;

  double coverage() const { return pairs_equal == 0 ? 1.0 : double(pairs_merged - unsound_pairs) / double(pairs_equal); }
  bool sound() const { return unsound_pairs == 0; }
};

/// Enumerates the universe for `tag` (three names for nominal theories, boundaries up
/// to three for ordinal ones), closes it and compares the partition with the model.
ProbeReport completeness_probe(ModelTag tag, std::size_t size_bound, std::optional<std::size_t> budget = {});

json to_json(const ProbeReport& r);

}  // namespace nomprop
