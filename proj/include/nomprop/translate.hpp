#pragma once

// Translations between the ordinal and the nominal calculus.
//
//   box  [a⟩f⟨b] : an SMT term f used as a nominal generator with wire lists a, b
//   dia  ⟨a]f[b⟩ : an NMT term f used as an ordinal generator, a and b enumerating
//                  its domain and codomain
//
// nf_nmt and nf_smt flatten boxes (resp. dia boxes) away; iota_nmt and iota_smt
// embed plain terms back, one generator per box.

#include <utility>
#include <vector>

#include "nomprop/semantics.hpp"
#include "nomprop/theory.hpp"

namespace nomprop {

struct DiaBox {
  NameList in;
  BaseNmt body;
  NameList out;
  bool operator==(const DiaBox&) const = default;
};

using BoxedNmt = NmtTerm<BaseSmt>;
using DiaSmt = SmtTerm<DiaBox>;

struct BoxedTyper {
  const Signature& sig;
  SmtType operator()(const BaseSmt& f) const { return smt_typecheck(f, sig); }
};

struct DiaTyper {
  const Signature& sig;
  SmtType operator()(const DiaBox& box) const;
};

NmtType boxed_typecheck(const BoxedNmt& t, const Signature& sig);
SmtType dia_typecheck(const DiaSmt& t, const Signature& sig);

inline BoxedNmt box(NameList a, BaseSmt f, NameList b) {
  return BoxedNmt::gen(std::move(a), std::move(f), std::move(b));
}
inline DiaSmt dia(NameList a, BaseNmt f, NameList b) {
  return DiaSmt::gen(DiaBox{std::move(a), std::move(f), std::move(b)});
}

/// Fresh middle wires are drawn from `fresh` in left-to-right order.
BaseNmt nf_nmt(const BoxedNmt& t, const Signature& sig, FreshSupply& fresh);
/// As above, with a supply that avoids every reserved name already in `t`.
BaseNmt nf_nmt(const BoxedNmt& t, const Signature& sig);
BoxedNmt iota_nmt(const BaseNmt& t);

BaseSmt nf_smt(const DiaSmt& t, const Signature& sig);
DiaSmt iota_smt(const BaseSmt& t, const Signature& sig, FreshSupply& fresh);
DiaSmt iota_smt(const BaseSmt& t, const Signature& sig);

/// Boxes evaluate through the semantic box over the ordinal model `base`.
NamedArrow eval_boxed(const BoxedNmt& t, ModelTag base = ModelTag::F);
/// Dia boxes evaluate through the semantic unbox over the nominal model `base`.
Arrow eval_dia(const DiaSmt& t, ModelTag base = ModelTag::nF);

std::vector<Equation<BoxedNmt>> box_equations(const std::vector<SmtEquation>& eqs, const Signature& sig,
                                              FreshSupply& fresh);
std::vector<Equation<DiaSmt>> dia_equations(const std::vector<NmtEquation>& eqs, const Signature& sig);

/// Nmt⟨Σ,E⟩ = ⟨Σ, nf_nmt(box(E))⟩.
TheoryPresentation translate_theory_nmt(const TheoryPresentation& th);
/// Smt⟨Σ,E⟩ = ⟨Σ, nf_smt(dia(E))⟩.
TheoryPresentation translate_theory_smt(const TheoryPresentation& th);

std::string print_term(const BoxedNmt& t);
std::string print_term(const DiaSmt& t);

}  // namespace nomprop
