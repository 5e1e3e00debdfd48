#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nomprop/dsl.hpp"
#include "nomprop/equiv.hpp"
#include "nomprop/theory_io.hpp"
#include "nomprop/translate.hpp"

using namespace nomprop;

namespace {

struct Output {
  bool json_mode = false;

  int emit(const json& j, const std::string& text, int code) const {
    if (json_mode)
      std::cout << j.dump(2) << "\n";
    else
      std::cout << text << "\n";
    return code;
  }
};

std::string show_type(const NmtType& t) { return describe(t.dom) + " -> " + describe(t.cod); }
std::string show_type(const SmtType& t) { return std::to_string(t.arity) + " -> " + std::to_string(t.coarity); }

json type_json(const NmtType& t) { return {{"dom", to_json(t.dom)}, {"cod", to_json(t.cod)}}; }
json type_json(const SmtType& t) { return {{"dom", t.arity}, {"cod", t.coarity}}; }

std::string show_arrow(const Arrow& f) { return to_json(f).dump(); }
std::string show_arrow(const NamedArrow& f) { return to_json(f).dump(); }

NameList numbered(const std::string& prefix, std::size_t n) {
  std::vector<Name> out;
  for (std::size_t i = 1; i <= n; ++i) out.emplace_back(prefix + std::to_string(i));
  return NameList(out);
}

NameList parse_list(const std::string& text) {
  std::vector<Name> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.emplace_back(item);
  return NameList(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nomprop: ordinal and nominal PROP terms, their models and translations"};
  app.require_subcommand(1);
  Output out;
  app.add_flag("--json", out.json_mode, "Machine-readable output on stdout");

  std::string term, term2, theory, in_list, out_list;
  std::size_t size = 4;
  std::optional<std::size_t> budget;

  auto* check = app.add_subcommand("check", "Parse and typecheck a term");
  check->add_option("term", term)->required();
  check->add_option("--theory", theory, "Builtin tag or theory file")->required();

  auto* eval = app.add_subcommand("eval", "Evaluate a term in a builtin model");
  eval->add_option("term", term)->required();
  eval->add_option("--theory", theory, "Model tag")->required();

  auto* support = app.add_subcommand("support", "Support of a nominal term");
  support->add_option("term", term)->required();

  auto* equiv = app.add_subcommand("equiv", "Semantic equality of two terms");
  equiv->add_option("t1", term)->required();
  equiv->add_option("t2", term2)->required();
  equiv->add_option("--theory", theory, "Model tag")->required();

  auto* smt2nmt = app.add_subcommand("smt2nmt", "Translate an ordinal theory or term to the nominal calculus");
  auto* nmt2smt = app.add_subcommand("nmt2smt", "Translate a nominal theory or term to the ordinal calculus");
  for (auto* sub : {smt2nmt, nmt2smt}) {
    auto* th = sub->add_option("--theory", theory, "Builtin tag or theory file");
    auto* tm = sub->add_option("--term", term, "A single term");
    th->excludes(tm);
    sub->callback([sub] {
      if (sub->count("--theory") + sub->count("--term") != 1)
        throw CLI::ValidationError("exactly one of --theory and --term is required");
    });
  }
  smt2nmt->add_option("--in", in_list, "Input wire names, comma separated (default i1,i2,...)")->needs("--term");
  smt2nmt->add_option("--out", out_list, "Output wire names, comma separated (default o1,o2,...)")->needs("--term");

  auto* normalize = app.add_subcommand("normalize", "Bijection normal form of a generator-free nominal term");
  normalize->add_option("term", term)->required();
  normalize->add_option("--theory", theory, "Must be nB (the default)");

  auto* soundness = app.add_subcommand("soundness", "Check every equation of a theory in its model");
  soundness->add_option("--theory", theory, "Builtin tag or theory file")->required();

  auto* probe = app.add_subcommand("probe", "Compare bounded closure with the model on all small terms");
  probe->add_option("--theory", theory, "Model tag")->required();
  probe->add_option("--size", size, "Largest term size (node count)");
  probe->add_option("--budget", budget, "Bound on merges (default 10 per term)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*check) {
      auto th = resolve_theory(theory);
      if (th.kind == Calculus::Nmt) {
        auto ty = nmt_typecheck(parse_nmt(term, &th.signature), th.signature);
        return out.emit({{"ok", true}, {"type", type_json(ty)}}, show_type(ty), 0);
      }
      auto ty = smt_typecheck(parse_smt(term, &th.signature), th.signature);
      return out.emit({{"ok", true}, {"type", type_json(ty)}}, show_type(ty), 0);
    }
    if (*eval) {
      auto tag = parse_model_tag(theory);
      auto sig = model_signature(tag);
      if (is_nominal(tag)) {
        auto f = eval_nmt(parse_nmt(term, &sig), tag);
        return out.emit(to_json(f), show_arrow(f), 0);
      }
      auto f = eval_smt(parse_smt(term, &sig), tag);
      return out.emit(to_json(f), show_arrow(f), 0);
    }
    if (*support) {
      auto t = parse_nmt(term);
      auto s = nmt_support(t, infer_signature(t));
      return out.emit(to_json(s), describe(s), 0);
    }
    if (*equiv) {
      auto tag = parse_model_tag(theory);
      auto sig = model_signature(tag);
      bool same = is_nominal(tag) ? semantic_equiv(parse_nmt(term, &sig), parse_nmt(term2, &sig), tag)
                                  : semantic_equiv(parse_smt(term, &sig), parse_smt(term2, &sig), tag);
      return out.emit({{"equivalent", same}}, same ? "true" : "false", same ? 0 : 1);
    }
    if (*smt2nmt || *nmt2smt) {
      bool to_nmt = bool(*smt2nmt);
      if (!theory.empty()) {
        auto th = resolve_theory(theory);
        auto tr = to_nmt ? translate_theory_nmt(th) : translate_theory_smt(th);
        auto j = theory_to_json(tr);
        return out.emit(j, j.dump(2), 0);
      }
      if (to_nmt) {
        auto f = parse_smt(term);
        auto sig = infer_signature(f, model_signature(ModelTag::R));
        auto ty = smt_typecheck(f, sig);
        NameList a = in_list.empty() ? numbered("i", ty.arity) : parse_list(in_list);
        NameList b = out_list.empty() ? numbered("o", ty.coarity) : parse_list(out_list);
        auto t = nf_nmt(box(a, f, b), sig);
        return out.emit({{"term", print_term(t)}}, print_term(t), 0);
      }
      auto t = parse_nmt(term);
      auto sig = infer_signature(t);
      auto ty = nmt_typecheck(t, sig);
      auto f = nf_smt(dia(sorted_list(ty.dom), t, sorted_list(ty.cod)), sig);
      return out.emit({{"term", print_term(f)}}, print_term(f), 0);
    }
    if (*normalize) {
      if (!theory.empty() && parse_model_tag(theory) != ModelTag::nB)
        throw Error(ErrorKind::ModelMismatch, "normal forms are computed for nB only");
      auto nf = normalize_bijection_nmt(parse_nmt(term, nullptr));
      json map = json::object();
      for (const auto& [a, b] : nf.entries) map[a.str()] = b.str();
      return out.emit({{"term", print_term(nf.term())}, {"map", map}}, print_term(nf.term()), 0);
    }
    if (*soundness) {
      auto report = check_soundness(resolve_theory(theory));
      std::string text = report.theory + ": " + std::to_string(report.instances) + " instances of " +
                         std::to_string(report.equations) + " equations, " +
                         std::to_string(report.failures.size()) + " failures";
      for (const auto& f : report.failures) text += "\n  " + f.lhs + " = " + f.rhs;
      return out.emit(to_json(report), text, report.passed() ? 0 : 1);
    }
    if (*probe) {
      auto report = completeness_probe(parse_model_tag(theory), size, budget);
      std::ostringstream text;
      text << report.theory << " size " << report.size_bound << ": " << report.universe << " terms, "
           << report.pairs_total << " pairs, " << report.pairs_equal << " equal, " << report.pairs_merged
           << " merged, " << report.unsound_pairs << " unsound, coverage " << report.coverage()
           << (report.fixpoint_reached ? "" : " (budget exhausted)");
      for (const auto& p : report.counterexamples) text << "\n  unsound: " << p.lhs << " = " << p.rhs;
      return out.emit(to_json(report), text.str(), report.sound() ? 0 : 1);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UnknownTheory || e.kind() == ErrorKind::InvalidName) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    if (out.json_mode)
      std::cout << json{{"error", to_string(e.kind())}, {"message", e.what()}}.dump(2) << "\n";
    std::cerr << to_string(e.kind()) << ": " << e.what() << "\n";
    return 1;
  }
  return 2;
}
