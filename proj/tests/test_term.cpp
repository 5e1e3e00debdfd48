#include "doctest.h"
#include "nomprop/dsl.hpp"
#include "nomprop/equiv.hpp"
#include "support/check.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace nomprop;

namespace {

const Signature kR = model_signature(ModelTag::R);
BaseSmt g(const char* name) { return BaseSmt::gen(GenRef{name}); }
BaseNmt ng(NameList in, const char* name, NameList out) { return BaseNmt::gen(in, GenRef{name}, out); }

}  // namespace

TEST_CASE("ordinal typing") {
  CHECK(smt_typecheck(BaseSmt::sym(), kR) == SmtType{2, 2});
  CHECK(smt_typecheck(BaseSmt::seq(BaseSmt::id(), BaseSmt::id()), kR) == SmtType{1, 1});
  CHECK(smt_typecheck(BaseSmt::tensor(g("mu"), BaseSmt::id()), kR) == SmtType{3, 2});
  CHECK(smt_typecheck(BaseSmt::empty(), kR) == SmtType{0, 0});
  CHECK(error_kind([] { smt_typecheck(BaseSmt::seq(g("mu"), g("mu")), kR); }) == ErrorKind::SeqArityMismatch);
  CHECK(error_kind([] { smt_typecheck(g("nu"), kR); }) == ErrorKind::UnknownGenerator);
}

TEST_CASE("nominal typing") {
  auto ab = BaseNmt::delta("a", "b"), bc = BaseNmt::delta("b", "c");
  CHECK(nmt_typecheck(ab, kR) == NmtType{{"a"}, {"b"}});
  CHECK(nmt_typecheck(BaseNmt::seq(ab, bc), kR) == NmtType{{"a"}, {"c"}});
  CHECK(error_kind([&] { nmt_typecheck(BaseNmt::tensor(BaseNmt::id("a"), ng({"a", "b"}, "mu", {"c"})), kR); }) ==
        ErrorKind::TensorOverlap);
  CHECK(error_kind([&] { nmt_typecheck(BaseNmt::seq(ab, ab), kR); }) == ErrorKind::SeqDomainMismatch);
  CHECK(error_kind([&] { nmt_typecheck(ng({"a"}, "mu", {"c"}), kR); }) == ErrorKind::BoundaryMismatch);
  CHECK(error_kind([&] { nmt_typecheck(ng({"a", "b"}, "nu", {"c"}), kR); }) == ErrorKind::UnknownGenerator);
  CHECK(nmt_typecheck(BaseNmt::swap("a", "c", BaseNmt::seq(ab, bc)), kR) == NmtType{{"c"}, {"a"}});
}

TEST_CASE("support is the boundary") {
  CHECK(nmt_support(BaseNmt::seq(BaseNmt::delta("a", "b"), BaseNmt::delta("b", "c")), kR) == NameSet{"a", "c"});
  CHECK(nmt_support(BaseNmt::id("a"), kR) == NameSet{"a"});
  CHECK(nmt_support(ng({"a", "b"}, "mu", {"c"}), kR) == NameSet{"a", "b", "c"});
  CHECK(names_of(BaseNmt::seq(BaseNmt::delta("a", "b"), BaseNmt::delta("b", "c"))) == NameSet{"a", "b", "c"});
}

TEST_CASE("permutation action on terms") {
  Perm ab = Perm::transposition("a", "b");
  CHECK(nmt_perm_action(ab, BaseNmt::id("a")) == BaseNmt::id("b"));
  CHECK(nmt_perm_action(ab, BaseNmt::delta("a", "b")) == BaseNmt::delta("b", "a"));
  auto t = BaseNmt::seq(ng({"a", "c"}, "mu", {"d"}), BaseNmt::delta("d", "a"));
  CHECK(nmt_perm_action(Perm{}, t) == t);
  CHECK(nmt_perm_action(ab, BaseNmt::swap("a", "b", BaseNmt::delta("a", "c"))) == BaseNmt::delta("a", "c"));
  CHECK_FALSE(contains_swap(nmt_perm_action(ab, BaseNmt::swap("b", "c", t))));
}

TEST_CASE("permutations as renaming terms") {
  CHECK(perm_as_nmt_term<GenRef>(Perm{}, {"a"}) == BaseNmt::delta("a", "a"));
  CHECK(perm_as_nmt_term<GenRef>(Perm::transposition("a", "b"), {"a", "b"}) ==
        BaseNmt::tensor(BaseNmt::delta("a", "b"), BaseNmt::delta("b", "a")));
  CHECK(perm_as_nmt_term<GenRef>(Perm::transposition("a", "b"), {"c"}) == BaseNmt::delta("c", "c"));
  CHECK(nmt_list_bijection<GenRef>({"a", "b"}, {"d", "c"}) ==
        BaseNmt::tensor(BaseNmt::delta("a", "d"), BaseNmt::delta("b", "c")));
  CHECK(error_kind([] { nmt_list_bijection<GenRef>({"a"}, {"b", "c"}); }) == ErrorKind::BoundaryMismatch);
}

TEST_CASE("canonical symmetries") {
  CHECK(smt_canonical_symmetry<GenRef>(1, 1) == BaseSmt::sym());
  CHECK(smt_canonical_symmetry<GenRef>(0, 3) == smt_identity<GenRef>(3));
  CHECK(smt_canonical_symmetry<GenRef>(0, 0) == BaseSmt::empty());
  for (std::size_t m = 0; m <= 3; ++m)
    for (std::size_t n = 0; n <= 3; ++n) {
      auto ref = oracle::eval(smt_canonical_symmetry<GenRef>(m, n));
      oracle::Rel expected{m + n, m + n, {}};
      for (std::size_t i = 0; i < m + n; ++i) expected.pairs.emplace(i, i < m ? i + n : i - m);
      CHECK(ref == expected);
    }
  auto s23 = *generator_free_table(smt_canonical_symmetry<GenRef>(2, 3));
  CHECK(s23 == std::vector<std::size_t>{3, 4, 0, 1, 2});
}

TEST_CASE("realignments send a[i] to its position in a'") {
  CHECK(realignment_table({"a", "b", "c"}, {"c", "a", "b"}) == std::vector<std::size_t>{1, 2, 0});
  CHECK(error_kind([] { realignment_table({"a"}, {"b"}); }) == ErrorKind::BoundaryMismatch);
  gen::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::size_t> table(rng.between(0, 5));
    for (std::size_t k = 0; k < table.size(); ++k) table[k] = k;
    rng.shuffle(table);
    CHECK(*generator_free_table(smt_permutation<GenRef>(table)) == table);
  }
}

TEST_CASE("typing is equivariant") {
  gen::Rng rng(21);
  auto pool = gen::alphabet(8);
  for (int i = 0; i < 500; ++i) {
    auto t = gen::random_nmt(kR, 14, true, rng);
    Perm p = gen::random_perm(pool, rng);
    auto ty = nmt_typecheck(t, kR);
    auto moved = nmt_typecheck(nmt_perm_action(p, t), kR);
    CHECK(moved.dom == act(p, ty.dom));
    CHECK(moved.cod == act(p, ty.cod));
    CHECK(nmt_support(nmt_perm_action(p, t), kR) == act(p, nmt_support(t, kR)));
  }
}

TEST_CASE("generated terms typecheck") {
  gen::Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    CHECK_NOTHROW(nmt_typecheck(gen::random_nmt(kR, 20, true, rng), kR));
    CHECK_NOTHROW(smt_typecheck(gen::random_smt(kR, 20, rng), kR));
  }
}
