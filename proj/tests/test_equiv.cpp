#include <set>

#include "doctest.h"
#include "nomprop/dsl.hpp"
#include "nomprop/equiv.hpp"
#include "support/check.hpp"
#include "support/generators.hpp"

using namespace nomprop;

namespace {

const Signature kF = model_signature(ModelTag::F);

/// Every term of exactly `size` nodes, typed or not.
std::vector<BaseNmt> naive_nmt(const Signature& sig, const std::vector<Name>& names, std::size_t size) {
  std::vector<BaseNmt> out;
  if (size == 1) {
    for (const auto& a : names) out.push_back(BaseNmt::id(a));
    for (const auto& a : names)
      for (const auto& b : names) out.push_back(BaseNmt::delta(a, b));
    out.push_back(BaseNmt::empty());
    std::vector<std::vector<Name>> lists{{}};
    for (std::size_t len = 1; len <= 2; ++len) {
      std::vector<std::vector<Name>> longer;
      for (const auto& l : lists)
        for (const auto& n : names)
          if (l.size() == len - 1) {
            auto m = l;
            m.push_back(n);
            longer.push_back(m);
          }
      lists.insert(lists.end(), longer.begin(), longer.end());
    }
    for (const auto& g : sig.list())
      for (const auto& in : lists)
        for (const auto& o : lists)
          if (in.size() == g.arity && o.size() == g.coarity) {
            try {
              out.push_back(BaseNmt::gen(NameList(in), GenRef{g.name}, NameList(o)));
            } catch (const Error&) {
            }
          }
    return out;
  }
  for (const auto& body : naive_nmt(sig, names, size - 1))
    for (std::size_t i = 0; i < names.size(); ++i)
      for (std::size_t j = i + 1; j < names.size(); ++j) out.push_back(BaseNmt::swap(names[i], names[j], body));
  for (std::size_t l = 1; l + 1 < size; ++l)
    for (const auto& x : naive_nmt(sig, names, l))
      for (const auto& y : naive_nmt(sig, names, size - 1 - l)) {
        out.push_back(BaseNmt::seq(x, y));
        out.push_back(BaseNmt::tensor(x, y));
      }
  return out;
}

std::set<std::string> typed_prints(const std::vector<BaseNmt>& terms, const Signature& sig) {
  std::set<std::string> out;
  for (const auto& t : terms) {
    try {
      nmt_typecheck(t, sig);
      out.insert(print_term(t));
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace

TEST_CASE("semantic equivalence") {
  auto nI = model_signature(ModelTag::nI);
  CHECK(semantic_equiv(parse_nmt("[> eta <a] * [> eta <b]", &nI), parse_nmt("[> eta <b] * [> eta <a]", &nI), ModelTag::nI));
  CHECK(semantic_equiv(parse_smt("sym ; sym"), parse_smt("id * id"), ModelTag::F));
  CHECK_FALSE(semantic_equiv(parse_smt("sym"), parse_smt("id * id"), ModelTag::B));
  CHECK(error_kind([] { semantic_equiv(parse_nmt("d(a,b)"), parse_nmt("d(a,c)"), ModelTag::nB); }) ==
        ErrorKind::TypeMismatch);
  CHECK(error_kind([] { semantic_equiv(parse_smt("id"), parse_smt("id"), ModelTag::nB); }) == ErrorKind::ModelMismatch);
  CHECK(error_kind([] { semantic_equiv(parse_smt("mu"), parse_smt("mu"), ModelTag::I); }) ==
        ErrorKind::UnknownGenerator);
}

TEST_CASE("bijection normal forms") {
  auto ac = normalize_bijection_nmt(parse_nmt("d(a,b) ; d(b,c)"));
  CHECK(ac.entries == std::map<Name, Name>{{"a", "c"}});
  auto swap = normalize_bijection_nmt(parse_nmt("d(a,x) * d(b,y) ; d(x,b) * d(y,a)"));
  CHECK(swap.term() == parse_nmt("d(a,b) * d(b,a)"));
  CHECK(normalize_bijection_nmt(parse_nmt("id(a)")).term() == parse_nmt("d(a,a)"));
  CHECK(normalize_bijection_nmt(parse_nmt("(a b) (d(a,c) * id(b))")).term() == parse_nmt("d(a,a) * d(b,c)"));
  CHECK(normalize_bijection_nmt(parse_nmt("empty")).term() == BaseNmt::empty());
  CHECK(error_kind([] { normalize_bijection_nmt(parse_nmt("[> eta <a]")); }) == ErrorKind::UnknownGenerator);
  CHECK(error_kind([] { normalize_bijection_nmt(parse_nmt("d(a,b) ; d(c,d)")); }) == ErrorKind::SeqDomainMismatch);
}

TEST_CASE("normal forms decide bijection equality") {
  gen::Rng rng(41);
  Signature none;
  for (int i = 0; i < 400; ++i) {
    auto s = gen::random_nmt(none, 12, true, rng, 5);
    auto nf = normalize_bijection_nmt(s);
    CHECK(eval_nmt(nf.term(), ModelTag::nB) == eval_nmt(s, ModelTag::nB));
    auto ty = nmt_typecheck(s, none);
    auto t = gen::random_nmt_from(none, ty.dom, {}, 8, true, rng, 5);
    if (t.cod != ty.cod) continue;
    CHECK((normalize_bijection_nmt(t.term) == nf) == semantic_equiv(s, t.term, ModelTag::nB));
  }
}

TEST_CASE("renaming an internal wire") {
  gen::Rng rng(42);
  Signature none;
  auto pool = gen::alphabet(5);
  for (int i = 0; i < 300; ++i) {
    auto x = gen::random_nmt_from(kF, gen::random_subset(pool, 2, rng), {}, 5, true, rng, 5);
    auto y = gen::random_nmt_from(kF, x.cod, {}, 5, true, rng, 5);
    if (x.cod.empty()) continue;
    auto ty = nmt_typecheck(BaseNmt::seq(x.term, y.term), kF);
    const Name& inner = *x.cod.begin();
    if (ty.dom.count(inner) || ty.cod.count(inner)) continue;
    Perm tau = Perm::transposition(inner, "z");
    auto renamed = BaseNmt::seq(nmt_perm_action(tau, x.term), nmt_perm_action(tau, y.term));
    if (names_of(BaseNmt::seq(x.term, y.term)).count("z")) continue;
    CHECK(nmt_typecheck(renamed, kF) == ty);
    CHECK(eval_nmt(renamed, ModelTag::nF) == eval_nmt(BaseNmt::seq(x.term, y.term), ModelTag::nF));
    CHECK(nmt_support(renamed, kF) == nmt_support(BaseNmt::seq(x.term, y.term), kF));
  }
  for (int i = 0; i < 300; ++i) {
    auto x = gen::random_nmt_from(none, gen::random_subset(pool, 3, rng), {}, 5, true, rng, 5);
    auto y = gen::random_nmt_from(none, x.cod, {}, 5, true, rng, 5);
    auto t = BaseNmt::seq(x.term, y.term);
    auto ty = nmt_typecheck(t, none);
    for (const auto& inner : x.cod) {
      if (ty.dom.count(inner) || ty.cod.count(inner) || names_of(t).count("z")) continue;
      Perm tau = Perm::transposition(inner, "z");
      auto renamed = BaseNmt::seq(nmt_perm_action(tau, x.term), nmt_perm_action(tau, y.term));
      CHECK(normalize_bijection_nmt(renamed) == normalize_bijection_nmt(t));
    }
  }
}

TEST_CASE("closure examples") {
  auto B = builtin_theory(ModelTag::B);
  auto r = th_closure(B, std::vector<BaseSmt>{parse_smt("sym ; sym"), parse_smt("id * id")});
  CHECK(r.same_class(0, 1));
  CHECK(r.fixpoint_reached);

  auto single = th_closure(B, std::vector<BaseSmt>{parse_smt("sym")});
  CHECK(single.classes == 1);
  CHECK(single.same_class(0, 0));

  auto nB = builtin_theory(ModelTag::nB);
  auto n = th_closure(nB, std::vector<BaseNmt>{parse_nmt("d(a,b) ; d(b,c)"), parse_nmt("d(a,c)"), parse_nmt("d(a,b)")});
  CHECK(n.same_class(0, 1));
  CHECK_FALSE(n.same_class(0, 2));
  CHECK(n.classes == 2);
}

TEST_CASE("closure applies theory axioms at any names") {
  auto nF = builtin_theory(ModelTag::nF);
  std::vector<BaseNmt> u{parse_nmt("id(c) * [> eta <y] ; [c,y> mu <a]", &nF.signature), parse_nmt("d(c,a)"),
                         parse_nmt("[b,a> mu <c] * id(d) ; [c,d> mu <e]", &nF.signature),
                         parse_nmt("[a,d> mu <c] * id(b) ; [b,c> mu <e]", &nF.signature),
                         parse_nmt("(a b) [a,b> mu <c]", &nF.signature), parse_nmt("[b,a> mu <c]", &nF.signature),
                         parse_nmt("[a,b> mu <c]", &nF.signature)};
  auto r = th_closure(nF, u);
  CHECK(r.same_class(0, 1));
  CHECK(r.same_class(4, 5));
  CHECK(r.same_class(5, 6));
  CHECK_FALSE(r.same_class(1, 6));
}

TEST_CASE("closure rejects ill-typed universes and mismatched calculi") {
  auto nB = builtin_theory(ModelTag::nB);
  CHECK(error_kind([&] { th_closure(nB, std::vector<BaseNmt>{parse_nmt("d(a,b) ; d(c,d)")}); }) ==
        ErrorKind::SeqDomainMismatch);
  CHECK(error_kind([&] { th_closure(nB, std::vector<BaseSmt>{parse_smt("id")}); }) == ErrorKind::TypeMismatch);
}

TEST_CASE("budget bounds the merges") {
  auto nB = builtin_theory(ModelTag::nB);
  std::vector<BaseNmt> u{parse_nmt("d(a,b) ; d(b,c)"), parse_nmt("d(a,c)")};
  ClosureOptions zero;
  zero.budget = 0;
  auto r = th_closure(nB, u, zero);
  CHECK(r.merges == 0);
  CHECK_FALSE(r.fixpoint_reached);
  CHECK_FALSE(r.same_class(0, 1));
  auto full = th_closure(nB, u);
  CHECK(full.budget == 20);
  CHECK(full.fixpoint_reached);
}

TEST_CASE("closure is sound and monotone on random universes") {
  auto nF = builtin_theory(ModelTag::nF);
  gen::Rng rng(43);
  for (int round = 0; round < 20; ++round) {
    std::vector<BaseNmt> u;
    for (int i = 0; i < 40; ++i) u.push_back(gen::random_nmt(kF, 7, true, rng, 4));
    auto r = th_closure(nF, u);
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = i + 1; j < u.size(); ++j)
        if (r.same_class(i, j)) CHECK(eval_nmt(u[i], ModelTag::nF) == eval_nmt(u[j], ModelTag::nF));

    ClosureOptions small;
    small.budget = rng.between(0, 30);
    auto bounded = th_closure(nF, u, small);
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = i + 1; j < u.size(); ++j)
        if (bounded.same_class(i, j)) CHECK(r.same_class(i, j));

    auto grown = u;
    for (int i = 0; i < 20; ++i) grown.push_back(gen::random_nmt(kF, 7, true, rng, 4));
    auto wide = th_closure(nF, grown);
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = i + 1; j < u.size(); ++j)
        if (r.same_class(i, j)) CHECK(wide.same_class(i, j));
  }
}

TEST_CASE("ordinal closure is sound on random universes") {
  auto F = builtin_theory(ModelTag::F);
  gen::Rng rng(44);
  for (int round = 0; round < 20; ++round) {
    std::vector<BaseSmt> u;
    for (int i = 0; i < 60; ++i) u.push_back(gen::random_smt(kF, 9, rng, 2));
    auto r = th_closure(F, u);
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = i + 1; j < u.size(); ++j)
        if (r.same_class(i, j)) CHECK(eval_smt(u[i], ModelTag::F) == eval_smt(u[j], ModelTag::F));
  }
}

TEST_CASE("enumeration matches a brute-force listing") {
  std::vector<Name> abc{"a", "b", "c"};
  Signature none;
  for (std::size_t size = 1; size <= 4; ++size) {
    std::vector<BaseNmt> all;
    for (std::size_t k = 1; k <= size; ++k) {
      auto exact = naive_nmt(none, abc, k);
      all.insert(all.end(), exact.begin(), exact.end());
    }
    auto listed = enumerate_nmt(none, abc, size);
    std::set<std::string> printed;
    for (const auto& t : listed) printed.insert(print_term(t));
    CHECK(printed.size() == listed.size());
    CHECK(printed == typed_prints(all, none));
  }
  auto nI = model_signature(ModelTag::nS);
  std::vector<BaseNmt> all;
  for (std::size_t k = 1; k <= 3; ++k) {
    auto exact = naive_nmt(nI, abc, k);
    all.insert(all.end(), exact.begin(), exact.end());
  }
  std::set<std::string> printed;
  for (const auto& t : enumerate_nmt(nI, abc, 3)) printed.insert(print_term(t));
  CHECK(printed == typed_prints(all, nI));
  CHECK(enumerate_nmt(none, abc, 1).size() == 13);
}

TEST_CASE("ordinal enumeration respects the boundary bound") {
  auto terms = enumerate_smt(kF, 3, 5);
  std::set<std::string> printed;
  for (const auto& t : terms) {
    printed.insert(print_term(t));
    auto ty = smt_typecheck(t, kF);
    CHECK(ty.arity <= 3);
    CHECK(ty.coarity <= 3);
    CHECK(t.size() <= 5);
  }
  CHECK(printed.size() == terms.size());
  CHECK(printed.count("mu * id ; mu"));
  CHECK(printed.count("sym ; sym"));
  CHECK_FALSE(printed.count("mu * mu"));
}

TEST_CASE("probe reports") {
  auto nB = completeness_probe(ModelTag::nB, 4);
  CHECK(nB.sound());
  CHECK(nB.coverage() == 1.0);
  CHECK(nB.normal_form_mismatches == 0);
  CHECK(nB.pairs_equal <= nB.pairs_total);
  CHECK(nB.fixpoint_reached);

  auto nI = completeness_probe(ModelTag::nI, 3);
  CHECK(nI.sound());
  CHECK(nI.counterexamples.empty());
  CHECK(nI.budget == 10 * nI.universe);

  auto F = completeness_probe(ModelTag::F, 3, 5);
  CHECK(F.sound());
  CHECK(F.budget == 5);

  CHECK(error_kind([] { completeness_probe(ModelTag::nR, 2); }) == ErrorKind::UnknownTheory);

  auto j = to_json(nI);
  for (const char* key : {"theory", "size_bound", "budget", "pairs_total", "pairs_equal", "pairs_merged",
                          "fixpoint_reached", "counterexamples"})
    CHECK_MESSAGE(j.contains(key), key);
}
