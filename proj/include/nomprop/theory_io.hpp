#pragma once

// Theory files and JSON renderings of library values.
//
// A theory file is a JSON object
//   { "kind": "smt" | "nmt",
//     "generators": [ {"name": ..., "arity": m, "coarity": n}, ... ],
//     "equations": [ {"lhs": <term>, "rhs": <term>}, ... ],
//     "model": <tag>, "name": <optional string> }
// with equation sides written in the text syntax of the matching calculus.

#include <filesystem>
#include <string>

#include "json.hpp"
#include "nomprop/semantics.hpp"
#include "nomprop/theory.hpp"

namespace nomprop {

using json = nlohmann::json;

TheoryPresentation theory_from_json(const json& j);
json theory_to_json(const TheoryPresentation& th);
TheoryPresentation load_theory_file(const std::filesystem::path& path);

/// A builtin tag (B, nF, ...) or the path of a theory file.
TheoryPresentation resolve_theory(const std::string& source);

json to_json(const Arrow& f);
json to_json(const NamedArrow& f);
json to_json(const Perm& p);
json to_json(const NameSet& s);
json to_json(const SoundnessReport& r);

}  // namespace nomprop
