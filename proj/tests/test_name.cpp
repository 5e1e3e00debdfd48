#include "doctest.h"
#include "support/check.hpp"
#include "support/generators.hpp"

using namespace nomprop;

TEST_CASE("user and reserved names") {
  CHECK(Name::is_user_name("a"));
  CHECK(Name::is_user_name("x_1"));
  CHECK_FALSE(Name::is_user_name("1a"));
  CHECK_FALSE(Name::is_user_name("_w3"));
  CHECK(Name::is_reserved_name("_w3"));
  CHECK_FALSE(Name::is_reserved_name("_w"));
  CHECK(error_kind([] { Name("a-b"); }) == ErrorKind::InvalidName);
  CHECK(error_kind([] { Name(""); }) == ErrorKind::InvalidName);
}

TEST_CASE("name lists reject repeated wires") {
  CHECK(error_kind([] { NameList{"a", "b", "a"}; }) == ErrorKind::DuplicateWireName);
  NameList l{"c", "a", "b"};
  CHECK(l.index_of("a") == 1);
  CHECK(l.index_of("z") == 3);
  CHECK(l.underline() == NameSet{"a", "b", "c"});
  CHECK(sorted_list(l.underline()) == NameList{"a", "b", "c"});
  CHECK(concat(NameList{"a"}, NameList{"b"}) == NameList{"a", "b"});
  CHECK(error_kind([] { concat(NameList{"a"}, NameList{"a"}); }) == ErrorKind::DuplicateWireName);
}

TEST_CASE("composition applies the left permutation first") {
  Perm ab = Perm::transposition("a", "b"), bc = Perm::transposition("b", "c");
  CHECK(compose(Perm{}, ab) == ab);
  CHECK(compose(ab, ab).is_identity());
  CHECK(compose(ab, bc)("a") == Name("c"));
  CHECK(compose(ab, bc)("b") == Name("a"));
  CHECK(compose(ab, bc)("c") == Name("b"));
}

TEST_CASE("inverses") {
  CHECK(inverse(Perm{}).is_identity());
  Perm ab = Perm::transposition("a", "b");
  CHECK(inverse(ab) == ab);
  Perm cycle = Perm::from_pairs({{"a", "b"}, {"b", "c"}, {"c", "a"}});
  CHECK(inverse(cycle) == Perm::from_pairs({{"a", "c"}, {"c", "b"}, {"b", "a"}}));
  CHECK(error_kind([] { Perm::from_pairs({{"a", "b"}}); }) == ErrorKind::InvalidName);
  CHECK(error_kind([] { Perm::from_pairs({{"a", "b"}, {"c", "b"}}); }) == ErrorKind::InvalidName);
}

TEST_CASE("fixed points are not stored") {
  CHECK(Perm::transposition("a", "a").is_identity());
  CHECK(Perm::from_pairs({{"a", "a"}, {"b", "c"}, {"c", "b"}}) == Perm::transposition("b", "c"));
  CHECK(Perm::transposition("a", "b").domain() == NameSet{"a", "b"});
}

TEST_CASE("pointwise action on names, sets and lists") {
  Perm ab = Perm::transposition("a", "b");
  CHECK(act(ab, NameSet{"a", "c"}) == NameSet{"b", "c"});
  CHECK(act(Perm{}, NameList{"a", "b"}) == NameList{"a", "b"});
  CHECK(act(ab, NameList{"a", "b"}) == NameList{"b", "a"});
  CHECK(act(ab, Name("z")) == Name("z"));
}

TEST_CASE("fresh supply skips used reserved names") {
  FreshSupply fresh;
  CHECK(fresh.next() == Name("_w0"));
  CHECK(fresh.next_list(2) == NameList{"_w1", "_w2"});
  fresh.avoid({"_w7", "a"});
  CHECK(fresh.next() == Name("_w8"));
}

TEST_CASE("group laws on random permutations") {
  gen::Rng rng(11);
  auto pool = gen::alphabet(6);
  for (int i = 0; i < 300; ++i) {
    Perm p = gen::random_perm(pool, rng), q = gen::random_perm(pool, rng), r = gen::random_perm(pool, rng);
    CHECK(compose(p, inverse(p)).is_identity());
    CHECK(compose(compose(p, q), r) == compose(p, compose(q, r)));
    for (const auto& n : pool) CHECK(compose(p, q)(n) == q(p(n)));
    NameSet s = gen::random_subset(pool, 6, rng);
    CHECK(act(inverse(p), act(p, s)) == s);
  }
}
