#include "nomprop/equiv.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "nomprop/dsl.hpp"

namespace nomprop {

bool semantic_equiv(const BaseNmt& t1, const BaseNmt& t2, ModelTag tag) {
  if (!is_nominal(tag))
    throw Error(ErrorKind::ModelMismatch, std::string("nominal terms need a nominal model, got ") + to_string(tag));
  auto sig = model_signature(tag);
  auto ty1 = nmt_typecheck(t1, sig), ty2 = nmt_typecheck(t2, sig);
  if (ty1 != ty2)
    throw Error(ErrorKind::TypeMismatch, "terms have different types: " + describe(ty1.dom) + " -> " + describe(ty1.cod) +
                                             " and " + describe(ty2.dom) + " -> " + describe(ty2.cod));
  return eval_nmt(t1, tag) == eval_nmt(t2, tag);
}

bool semantic_equiv(const BaseSmt& t1, const BaseSmt& t2, ModelTag tag) {
  if (is_nominal(tag))
    throw Error(ErrorKind::ModelMismatch, std::string("ordinal terms need an ordinal model, got ") + to_string(tag));
  auto sig = model_signature(tag);
  auto ty1 = smt_typecheck(t1, sig), ty2 = smt_typecheck(t2, sig);
  if (ty1 != ty2)
    throw Error(ErrorKind::TypeMismatch, "terms have different types: " + std::to_string(ty1.arity) + " -> " +
                                             std::to_string(ty1.coarity) + " and " + std::to_string(ty2.arity) +
                                             " -> " + std::to_string(ty2.coarity));
  return eval_smt(t1, tag) == eval_smt(t2, tag);
}

BaseNmt BijNormalForm::term() const {
  std::vector<BaseNmt> parts;
  for (const auto& [a, b] : entries) parts.push_back(BaseNmt::delta(a, b));
  return nmt_tensor_all(parts);
}

BijNormalForm normalize_bijection_nmt(const BaseNmt& t) {
  nmt_typecheck(t, Signature{});
  auto b = generator_free_bijection(t);
  if (!b) throw Error(ErrorKind::ModelMismatch, "bijection normal forms exist only for generator-free terms");
  return {*b};
}

namespace {

std::size_t choose2(std::size_t n) { return n * (n - 1) / 2; }

std::string value_key(const NamedArrow& f) {
  std::string out = describe(f.dom()) + "|" + describe(f.cod()) + "|";
  for (const auto& [a, b] : f.pairs()) out += a.str() + ">" + b.str() + ",";
  return out;
}

std::string value_key(const Arrow& f) {
  std::string out = std::to_string(f.dom()) + "|" + std::to_string(f.cod()) + "|";
  for (const auto& [a, b] : f.pairs()) out += std::to_string(a) + ">" + std::to_string(b) + ",";
  return out;
}

std::string type_key(const NmtType& t) { return describe(t.dom) + "->" + describe(t.cod); }
std::string type_key(const SmtType& t) { return std::to_string(t.arity) + "->" + std::to_string(t.coarity); }

constexpr std::size_t kSampleCap = 20;

/// Compares a partition of `terms` with their semantic values.
template <class Term>
void score(ProbeReport& report, const std::vector<Term>& terms, const std::vector<std::string>& types,
           const std::vector<std::string>& values, const std::vector<std::size_t>& class_of) {
  std::unordered_map<std::string, std::size_t> by_type, by_value;
  std::map<std::size_t, std::vector<std::size_t>> by_class;
  std::map<std::pair<std::size_t, std::string>, std::size_t> by_class_value;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    ++by_type[types[i]];
    ++by_value[types[i] + "#" + values[i]];
    by_class[class_of[i]].push_back(i);
    ++by_class_value[{class_of[i], types[i] + "#" + values[i]}];
  }
  for (const auto& [k, n] : by_type) report.pairs_total += choose2(n);
  for (const auto& [k, n] : by_value) report.pairs_equal += choose2(n);
  std::size_t sound_merged = 0;
  for (const auto& [k, members] : by_class) report.pairs_merged += choose2(members.size());
  for (const auto& [k, n] : by_class_value) sound_merged += choose2(n);
  report.unsound_pairs = report.pairs_merged - sound_merged;

  for (const auto& [k, members] : by_class) {
    if (report.counterexamples.size() >= kSampleCap) break;
    for (std::size_t m : members) {
      if (values[m] != values[members[0]] || types[m] != types[members[0]]) {
        report.counterexamples.push_back({print_term(terms[members[0]]), print_term(terms[m])});
        break;
      }
    }
  }

  std::unordered_map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < terms.size(); ++i) groups[types[i] + "#" + values[i]].push_back(i);
  std::vector<std::string> group_keys;
  for (const auto& [k, v] : groups) group_keys.push_back(k);
  std::sort(group_keys.begin(), group_keys.end());
  for (const auto& k : group_keys) {
    if (report.unmerged.size() >= kSampleCap) break;
    const auto& members = groups[k];
    for (std::size_t m : members) {
      if (class_of[m] != class_of[members[0]]) {
        report.unmerged.push_back({print_term(terms[members[0]]), print_term(terms[m])});
        break;
      }
    }
  }
}

}  // namespace

ProbeReport completeness_probe(ModelTag tag, std::size_t size_bound, std::optional<std::size_t> budget) {
  if (tag == ModelTag::nR || tag == ModelTag::R)
    throw Error(ErrorKind::UnknownTheory, std::string("no complete builtin theory for ") + to_string(tag));
  auto th = builtin_theory(tag);
  ProbeReport report;
  report.theory = th.name;
  report.size_bound = size_bound;
  ClosureOptions opts;
  opts.budget = budget;

  if (is_nominal(tag)) {
    static const std::vector<Name> alphabet{"a", "b", "c"};
    auto terms = enumerate_nmt(th.signature, alphabet, size_bound);
    auto closure = th_closure(th, terms, opts);
    std::vector<std::string> types, values;
    for (const auto& t : terms) {
      types.push_back(type_key(nmt_typecheck(t, th.signature)));
      values.push_back(value_key(eval_nmt(t, tag)));
    }
    auto class_of = closure.class_of;
    if (tag == ModelTag::nB) {
      // Terms sharing a normal form are provably equal; join those classes.
      std::vector<std::size_t> parent(closure.classes);
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      std::unordered_map<std::string, std::size_t> first;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        auto nf = normalize_bijection_nmt(terms[i]);
        if (!(eval_nmt(nf.term(), tag) == eval_nmt(terms[i], tag))) ++report.normal_form_mismatches;
        auto [it, inserted] = first.emplace(print_term(nf.term()), class_of[i]);
        if (!inserted) {
          auto a = find(it->second), b = find(class_of[i]);
          if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
      }
      for (auto& c : class_of) c = find(c);
    }
    report.universe = terms.size();
    report.budget = closure.budget;
    report.fixpoint_reached = closure.fixpoint_reached;
    score(report, terms, types, values, class_of);
  } else {
    auto terms = enumerate_smt(th.signature, 3, size_bound);
    auto closure = th_closure(th, terms, opts);
    std::vector<std::string> types, values;
    for (const auto& t : terms) {
      types.push_back(type_key(smt_typecheck(t, th.signature)));
      values.push_back(value_key(eval_smt(t, tag)));
    }
    report.universe = terms.size();
    report.budget = closure.budget;
    report.fixpoint_reached = closure.fixpoint_reached;
    score(report, terms, types, values, closure.class_of);
  }
  return report;
}

json to_json(const ProbeReport& r) {
  auto pairs = [](const std::vector<ProbePair>& ps) {
    json out = json::array();
    for (const auto& p : ps) out.push_back({{"lhs", p.lhs}, {"rhs", p.rhs}});
    return out;
  };
  return {{"theory", r.theory},
          {"size_bound", r.size_bound},
          {"budget", r.budget},
          {"universe", r.universe},
          {"pairs_total", r.pairs_total},
          {"pairs_equal", r.pairs_equal},
          {"pairs_merged", r.pairs_merged},
          {"unsound_pairs", r.unsound_pairs},
          {"coverage", r.coverage()},
          {"fixpoint_reached", r.fixpoint_reached},
          {"normal_form_mismatches", r.normal_form_mismatches},
          {"counterexamples", pairs(r.counterexamples)},
          {"unmerged", pairs(r.unmerged)}};
}

}  // namespace nomprop
