#include <filesystem>

#include "doctest.h"
#include "nomprop/dsl.hpp"
#include "nomprop/theory_io.hpp"
#include "nomprop/translate.hpp"
#include "support/check.hpp"

using namespace nomprop;

namespace {

const ModelTag kNominal[] = {ModelTag::nB, ModelTag::nI, ModelTag::nS, ModelTag::nF, ModelTag::nP, ModelTag::nR};
const ModelTag kOrdinal[] = {ModelTag::B, ModelTag::I, ModelTag::S, ModelTag::F, ModelTag::P, ModelTag::R};

bool has_equation(const TheoryPresentation& th, const std::string& lhs, const std::string& rhs) {
  auto l = parse_nmt(lhs, &th.signature), r = parse_nmt(rhs, &th.signature);
  for (const auto& e : th.nmt_equations)
    if (e.lhs == l && e.rhs == r) return true;
  return false;
}

}  // namespace

TEST_CASE("builtin presentations") {
  auto nB = builtin_theory(ModelTag::nB);
  CHECK(nB.signature.size() == 0);
  CHECK(nB.equation_count() == 0);

  auto nI = builtin_theory(ModelTag::nI);
  CHECK(nI.signature.at("eta") == GenDecl{"eta", 0, 1});
  CHECK(nI.equation_count() == 0);

  auto nF = builtin_theory(ModelTag::nF);
  CHECK(has_equation(nF, "(id(a) * [> eta <x]) ; [a,x> mu <b]", "d(a,b)"));
  CHECK(has_equation(nF, "([a,b> mu <x] * id(c)) ; [x,c> mu <d]", "([b,c> mu <x] * id(a)) ; [a,x> mu <d]"));

  auto nP = builtin_theory(ModelTag::nP);
  CHECK(nP.signature.at("etahat") == GenDecl{"etahat", 1, 0});
  CHECK(has_equation(nP, "[> eta <x] ; [x> etahat <]", "empty"));

  CHECK(builtin_theory(ModelTag::nR).signature.contains("muhat"));
  for (auto tag : kOrdinal) {
    auto th = builtin_theory(tag);
    CHECK(th.kind == Calculus::Smt);
    CHECK(th.model == tag);
  }
  CHECK(builtin_theory(ModelTag::B).equation_count() == 0);
  CHECK(error_kind([] { parse_model_tag("nQ"); }) == ErrorKind::UnknownTheory);
}

TEST_CASE("every bundled theory is sound") {
  for (auto tag : kNominal) {
    auto report = check_soundness(builtin_theory(tag));
    CHECK_MESSAGE(report.passed(), to_string(tag));
    CHECK(report.instances >= report.equations);
  }
  for (auto tag : kOrdinal) CHECK_MESSAGE(check_soundness(builtin_theory(tag)).passed(), to_string(tag));
}

TEST_CASE("a corrupted axiom is reported") {
  auto th = builtin_theory(ModelTag::nF);
  std::size_t unit = th.nmt_equations.size();
  for (std::size_t i = 0; i < th.nmt_equations.size(); ++i)
    if (th.nmt_equations[i].rhs == parse_nmt("d(a,b)")) {
      th.nmt_equations[i].rhs = parse_nmt("d(b,a)");
      unit = i;
    }
  REQUIRE(unit < th.nmt_equations.size());
  CHECK(error_kind([&] { validate_theory(th); }) == ErrorKind::InvalidTheory);
  auto report = check_soundness(th);
  CHECK_FALSE(report.passed());
  CHECK(report.failures.front().equation == unit);
}

TEST_CASE("a wrong but well-typed axiom fails soundness") {
  auto th = builtin_theory(ModelTag::nS);
  th.nmt_equations.push_back(
      {parse_nmt("[a,b> mu <c] * [d,e> mu <f]", &th.signature), parse_nmt("[a,d> mu <c] * [b,e> mu <f]", &th.signature)});
  validate_theory(th);
  CHECK_FALSE(check_soundness(th).passed());
}

TEST_CASE("schema instantiation covers all name identifications") {
  CHECK(schema_assignments({"x", "y"}, test_alphabet()).size() == 2);
  CHECK(schema_assignments({"x", "y", "z"}, test_alphabet()).size() == 5);
  auto eq = NmtEquation{parse_nmt("[a,b> mu <c]"), parse_nmt("[b,a> mu <c]")};
  // a, b must stay apart; c may coincide with either.
  CHECK(instantiate_schema(eq, model_signature(ModelTag::nS), test_alphabet()).size() == 3);
}

TEST_CASE("bundled theory files match the builtins") {
  for (auto tag : kNominal) {
    auto path = std::filesystem::path(NOMPROP_THEORY_DIR) / (std::string(to_string(tag)) + ".json");
    auto file = load_theory_file(path);
    auto builtin = builtin_theory(tag);
    CHECK(file.name == builtin.name);
    CHECK(file.kind == builtin.kind);
    CHECK(file.model == builtin.model);
    CHECK(file.signature == builtin.signature);
    REQUIRE(file.nmt_equations.size() == builtin.nmt_equations.size());
    for (std::size_t i = 0; i < file.nmt_equations.size(); ++i) {
      CHECK(file.nmt_equations[i].lhs == builtin.nmt_equations[i].lhs);
      CHECK(file.nmt_equations[i].rhs == builtin.nmt_equations[i].rhs);
    }
    CHECK(resolve_theory(path.string()).equation_count() == builtin.equation_count());
  }
}

TEST_CASE("json round trip of translated theories") {
  for (auto tag : kOrdinal) {
    auto th = builtin_theory(tag);
    auto back = theory_from_json(theory_to_json(th));
    CHECK(back.signature == th.signature);
    REQUIRE(back.smt_equations.size() == th.smt_equations.size());
    for (std::size_t i = 0; i < th.smt_equations.size(); ++i) CHECK(back.smt_equations[i].lhs == th.smt_equations[i].lhs);
  }
}

TEST_CASE("malformed theory files") {
  const std::vector<std::string> bad{
      R"j({"generators": [], "equations": []})j",
      R"j({"kind": "nmt", "generators": [], "equations": [{"lhs": "d(a,b)", "rhs": "d(a,c)"}]})j",
      R"j({"kind": "nmt", "model": "nI", "generators": [{"name": "mu", "arity": 2, "coarity": 1}], "equations": []})j",
      R"j({"kind": "smt", "model": "nF", "generators": [], "equations": []})j",
      R"j({"kind": "nmt", "generators": [], "equations": [{"lhs": "d(a,", "rhs": "d(a,b)"}]})j",
  };
  for (const auto& text : bad) {
    CAPTURE(text);
    CHECK(error_kind([&] { theory_from_json(json::parse(text)); }) == ErrorKind::InvalidTheory);
  }
  CHECK(error_kind([] { resolve_theory("no/such/file.json"); }) == ErrorKind::UnknownTheory);
}

TEST_CASE("user theories without a model") {
  auto th = theory_from_json(json::parse(R"j({
    "kind": "smt",
    "generators": [{"name": "m", "arity": 2, "coarity": 1}],
    "equations": [{"lhs": "m * id ; m", "rhs": "id * m ; m"}]})j"));
  CHECK_FALSE(th.model.has_value());
  CHECK(error_kind([&] { check_soundness(th); }) == ErrorKind::ModelMismatch);
  auto nominal = translate_theory_nmt(th);
  CHECK(nominal.kind == Calculus::Nmt);
  CHECK(nominal.nmt_equations.size() == 1);
  validate_theory(nominal);
}
