#include "nomprop/theory.hpp"

#include <utility>

#include "nomprop/dsl.hpp"
#include "nomprop/translate.hpp"

namespace nomprop {

const char* to_string(Calculus kind) { return kind == Calculus::Smt ? "smt" : "nmt"; }

void validate_theory(const TheoryPresentation& th) {
  auto fail = [&](std::size_t i, const std::string& why) {
    throw Error(ErrorKind::InvalidTheory, th.name + ": equation " + std::to_string(i) + ": " + why);
  };
  if (th.model) {
    if (is_nominal(*th.model) != (th.kind == Calculus::Nmt))
      throw Error(ErrorKind::InvalidTheory, th.name + ": model " + to_string(*th.model) + " does not match the calculus");
    auto interpreted = model_signature(*th.model);
    for (const auto& g : th.signature.list()) {
      const auto* d = interpreted.find(g.name);
      if (!d || *d != g)
        throw Error(ErrorKind::InvalidTheory,
                    th.name + ": generator '" + g.name + "' has no interpretation in " + to_string(*th.model));
    }
  }
  try {
    if (th.kind == Calculus::Smt) {
      for (std::size_t i = 0; i < th.smt_equations.size(); ++i)
        if (smt_typecheck(th.smt_equations[i].lhs, th.signature) != smt_typecheck(th.smt_equations[i].rhs, th.signature))
          fail(i, "sides have different types");
    } else {
      for (std::size_t i = 0; i < th.nmt_equations.size(); ++i)
        if (nmt_typecheck(th.nmt_equations[i].lhs, th.signature) != nmt_typecheck(th.nmt_equations[i].rhs, th.signature))
          fail(i, "sides have different types");
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidTheory) throw;
    throw Error(ErrorKind::InvalidTheory, th.name + ": " + e.what());
  }
}

namespace {

const char* const kAssoc = "([a,b> mu <x] * id(c)) ; [x,c> mu <d] = ([b,c> mu <x] * id(a)) ; [a,x> mu <d]";
const char* const kComm = "[a,b> mu <c] = [b,a> mu <c]";
const char* const kUnit = "(id(a) * [> eta <x]) ; [a,x> mu <b] = d(a,b)";
const char* const kCounitEta = "[> eta <x] ; [x> etahat <] = empty";
const char* const kDiscardMu = "[a,b> mu <x] ; [x> etahat <] = [a> etahat <] * [b> etahat <]";
const char* const kCoassoc =
    "[a> muhat <x,d] ; ([x> muhat <b,c] * id(d)) = [a> muhat <b,x] ; (id(b) * [x> muhat <c,d])";
const char* const kCocomm = "[a> muhat <b,c] = [a> muhat <c,b]";
const char* const kCounit = "[a> muhat <b,x] ; (id(b) * [x> etahat <]) = d(a,b)";
const char* const kSpecial = "[a> muhat <x,y] ; [x,y> mu <b] = d(a,b)";
const char* const kCopyEta = "[> eta <x] ; [x> muhat <a,b] = [> eta <a] * [> eta <b]";
const char* const kBialgebra =
    "[a,b> mu <x] ; [x> muhat <c,d] = ([a> muhat <a1,a2] * [b> muhat <b1,b2]) ; ([a1,b1> mu <c] * [a2,b2> mu <d])";

NmtEquation parse_equation(const std::string& text, const Signature& sig) {
  auto eq = text.find('=');
  return {parse_nmt(text.substr(0, eq), &sig), parse_nmt(text.substr(eq + 1), &sig)};
}

TheoryPresentation nominal_builtin(ModelTag tag) {
  TheoryPresentation th;
  th.name = to_string(tag);
  th.kind = Calculus::Nmt;
  th.model = tag;
  th.signature = model_signature(tag);
  std::vector<const char*> eqs;
  if (tag == ModelTag::nS || tag == ModelTag::nF || tag == ModelTag::nP || tag == ModelTag::nR)
    eqs.insert(eqs.end(), {kAssoc, kComm});
  if (tag == ModelTag::nF || tag == ModelTag::nP || tag == ModelTag::nR) eqs.push_back(kUnit);
  if (tag == ModelTag::nP || tag == ModelTag::nR) eqs.insert(eqs.end(), {kCounitEta, kDiscardMu});
  if (tag == ModelTag::nR)
    eqs.insert(eqs.end(), {kCoassoc, kCocomm, kCounit, kSpecial, kCopyEta, kBialgebra});
  for (const char* e : eqs) th.nmt_equations.push_back(parse_equation(e, th.signature));
  return th;
}

}  // namespace

TheoryPresentation builtin_theory(ModelTag tag) {
  if (is_nominal(tag)) return nominal_builtin(tag);
  auto th = translate_theory_smt(nominal_builtin(nominal_counterpart(tag)));
  th.name = to_string(tag);
  return th;
}

const std::vector<Name>& test_alphabet() {
  static const std::vector<Name> names{"a", "b", "c", "d", "e", "f"};
  return names;
}

std::vector<std::map<Name, Name>> schema_assignments(const NameSet& vars, const std::vector<Name>& alphabet) {
  std::vector<Name> vs(vars.begin(), vars.end());
  std::vector<std::map<Name, Name>> out;
  std::map<Name, Name> current;
  auto go = [&](auto&& self, std::size_t i, std::size_t used) -> void {
    if (i == vs.size()) {
      out.push_back(current);
      return;
    }
    for (std::size_t k = 0; k <= used && k < alphabet.size(); ++k) {
      current.insert_or_assign(vs[i], alphabet[k]);
      self(self, i + 1, k == used ? used + 1 : used);
    }
  };
  go(go, 0, 0);
  return out;
}

std::vector<NmtEquation> instantiate_schema(const NmtEquation& eq, const Signature& sig,
                                            const std::vector<Name>& alphabet) {
  NameSet vars = names_of(eq.lhs);
  collect_names(eq.rhs, vars);
  std::vector<NmtEquation> out;
  for (const auto& m : schema_assignments(vars, alphabet)) {
    auto f = [&](const Name& n) { return m.at(n); };
    try {
      NmtEquation inst{rename_names(eq.lhs, f), rename_names(eq.rhs, f)};
      nmt_typecheck(inst.lhs, sig);
      nmt_typecheck(inst.rhs, sig);
      out.push_back(std::move(inst));
    } catch (const Error&) {
    }
  }
  return out;
}

SoundnessReport check_soundness(const TheoryPresentation& th) {
  if (!th.model) throw Error(ErrorKind::ModelMismatch, th.name + " has no model to check against");
  SoundnessReport report;
  report.theory = th.name;
  report.model = *th.model;
  report.equations = th.equation_count();
  if (th.kind == Calculus::Smt) {
    for (std::size_t i = 0; i < th.smt_equations.size(); ++i) {
      const auto& eq = th.smt_equations[i];
      ++report.instances;
      bool equal = false;
      try {
        equal = eval_smt(eq.lhs, *th.model) == eval_smt(eq.rhs, *th.model);
      } catch (const Error&) {
      }
      if (!equal) report.failures.push_back({i, print_term(eq.lhs), print_term(eq.rhs)});
    }
    return report;
  }
  for (std::size_t i = 0; i < th.nmt_equations.size(); ++i) {
    for (const auto& inst : instantiate_schema(th.nmt_equations[i], th.signature, test_alphabet())) {
      ++report.instances;
      bool equal = false;
      try {
        equal = eval_nmt(inst.lhs, *th.model) == eval_nmt(inst.rhs, *th.model);
      } catch (const Error&) {
      }
      if (!equal) report.failures.push_back({i, print_term(inst.lhs), print_term(inst.rhs)});
    }
  }
  return report;
}

}  // namespace nomprop
