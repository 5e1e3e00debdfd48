#include "nomprop/theory_io.hpp"

#include <fstream>

#include "nomprop/dsl.hpp"

namespace nomprop {

namespace {

[[noreturn]] void invalid(const std::string& why) { throw Error(ErrorKind::InvalidTheory, why); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) invalid(std::string("theory file is missing '") + key + "'");
  return j.at(key);
}

}  // namespace

TheoryPresentation theory_from_json(const json& j) {
  TheoryPresentation th;
  try {
    std::string kind = field(j, "kind").get<std::string>();
    if (kind == "smt")
      th.kind = Calculus::Smt;
    else if (kind == "nmt")
      th.kind = Calculus::Nmt;
    else
      invalid("unknown calculus '" + kind + "'");
    th.name = j.value("name", "");
    for (const auto& g : field(j, "generators"))
      th.signature.add({g.at("name").get<std::string>(), g.at("arity").get<std::size_t>(),
                        g.at("coarity").get<std::size_t>()});
    if (j.contains("model") && !j.at("model").is_null()) {
      auto tag = try_parse_model_tag(j.at("model").get<std::string>());
      if (!tag) invalid("unknown model '" + j.at("model").get<std::string>() + "'");
      th.model = *tag;
      if (th.name.empty()) th.name = to_string(*tag);
    }
    for (const auto& e : field(j, "equations")) {
      std::string lhs = e.at("lhs").get<std::string>(), rhs = e.at("rhs").get<std::string>();
      if (th.kind == Calculus::Smt)
        th.smt_equations.push_back({parse_smt(lhs, &th.signature), parse_smt(rhs, &th.signature)});
      else
        th.nmt_equations.push_back({parse_nmt(lhs, &th.signature), parse_nmt(rhs, &th.signature)});
    }
  } catch (const json::exception& e) {
    invalid(std::string("malformed theory file: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidTheory) throw;
    invalid(std::string("bad equation: ") + e.what());
  }
  validate_theory(th);
  return th;
}

json theory_to_json(const TheoryPresentation& th) {
  json j;
  j["name"] = th.name;
  j["kind"] = to_string(th.kind);
  j["generators"] = json::array();
  for (const auto& g : th.signature.list())
    j["generators"].push_back({{"name", g.name}, {"arity", g.arity}, {"coarity", g.coarity}});
  j["equations"] = json::array();
  if (th.kind == Calculus::Smt)
    for (const auto& e : th.smt_equations) j["equations"].push_back({{"lhs", print_term(e.lhs)}, {"rhs", print_term(e.rhs)}});
  else
    for (const auto& e : th.nmt_equations) j["equations"].push_back({{"lhs", print_term(e.lhs)}, {"rhs", print_term(e.rhs)}});
  j["model"] = th.model ? json(to_string(*th.model)) : json(nullptr);
  return j;
}

TheoryPresentation load_theory_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::UnknownTheory, "cannot open theory file '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    invalid("theory file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  auto th = theory_from_json(j);
  if (th.name.empty()) th.name = path.stem().string();
  return th;
}

TheoryPresentation resolve_theory(const std::string& source) {
  if (auto tag = try_parse_model_tag(source)) return builtin_theory(*tag);
  if (std::filesystem::exists(source)) return load_theory_file(source);
  throw Error(ErrorKind::UnknownTheory, "unknown theory '" + source + "' (not a builtin tag or a file)");
}

json to_json(const Arrow& f) {
  json j{{"kind", to_string(f.kind())}, {"dom", f.dom()}, {"cod", f.cod()}};
  if (f.kind() == ArrowKind::Relation) {
    j["pairs"] = f.pairs();
  } else {
    json table = json::array();
    for (const auto& v : f.partial_table()) table.push_back(v ? json(*v) : json(nullptr));
    j["table"] = table;
  }
  return j;
}

json to_json(const NameSet& s) {
  json out = json::array();
  for (const auto& n : s) out.push_back(n.str());
  return out;
}

json to_json(const NamedArrow& f) {
  json j{{"kind", to_string(f.kind())}, {"dom", to_json(f.dom())}, {"cod", to_json(f.cod())}};
  if (f.kind() == ArrowKind::Relation) {
    json pairs = json::array();
    for (const auto& [a, b] : f.pairs()) pairs.push_back({a.str(), b.str()});
    j["pairs"] = pairs;
  } else {
    json map = json::object();
    for (const auto& [a, b] : f.graph()) map[a.str()] = b.str();
    j["map"] = map;
  }
  return j;
}

json to_json(const Perm& p) { return p.to_strings(); }

json to_json(const SoundnessReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back({{"equation", f.equation}, {"lhs", f.lhs}, {"rhs", f.rhs}});
  return {{"theory", r.theory},       {"model", to_string(r.model)}, {"equations", r.equations},
          {"instances", r.instances}, {"passed", r.passed()},        {"failures", failures}};
}

}  // namespace nomprop
