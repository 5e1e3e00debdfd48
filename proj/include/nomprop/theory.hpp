#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nomprop/semantics.hpp"
#include "nomprop/term.hpp"

namespace nomprop {

enum class Calculus { Smt, Nmt };

const char* to_string(Calculus kind);

template <class T>
struct Equation {
  T lhs;
  T rhs;
  bool operator==(const Equation&) const = default;
};

using SmtEquation = Equation<BaseSmt>;
/// Nominal equations are schemas: their names are variables, instantiated by renaming.
using NmtEquation = Equation<BaseNmt>;

struct TheoryPresentation {
  std::string name;
  Calculus kind = Calculus::Nmt;
  Signature signature;
  std::vector<SmtEquation> smt_equations;
  std::vector<NmtEquation> nmt_equations;
  std::optional<ModelTag> model;

  std::size_t equation_count() const {
    return kind == Calculus::Smt ? smt_equations.size() : nmt_equations.size();
  }
};

/// Throws InvalidTheory unless every equation's sides typecheck with equal types
/// and the model (if any) matches the calculus and interprets every generator.
void validate_theory(const TheoryPresentation& th);

/// nX are written out directly; the ordinal X are the Smt translations of nX.
TheoryPresentation builtin_theory(ModelTag tag);

/// The six-name alphabet a..f used to instantiate equation schemas.
const std::vector<Name>& test_alphabet();

/// All maps from `vars` into `alphabet` up to a permutation of the alphabet: the
/// image of each variable is either an already used letter or the next unused one.
std::vector<std::map<Name, Name>> schema_assignments(const NameSet& vars, const std::vector<Name>& alphabet);

/// Every well-typed instance (both sides typecheck) of a nominal equation schema.
std::vector<NmtEquation> instantiate_schema(const NmtEquation& eq, const Signature& sig,
                                            const std::vector<Name>& alphabet);

struct SoundnessFailure {
  std::size_t equation = 0;
  std::string lhs;
  std::string rhs;
};

struct SoundnessReport {
  std::string theory;
  ModelTag model = ModelTag::F;
  std::size_t equations = 0;
  std::size_t instances = 0;
  std::vector<SoundnessFailure> failures;

  bool passed() const { return failures.empty(); }
};

/// Evaluates both sides of every (instantiated) equation in the theory's model.
SoundnessReport check_soundness(const TheoryPresentation& th);

}  // namespace nomprop
