#include "nomprop/term.hpp"

#include <algorithm>

namespace nomprop {

Signature::Signature(std::initializer_list<GenDecl> decls) {
  for (const auto& d : decls) add(d);
}

bool Signature::is_reserved_word(std::string_view s) {
  return s == "id" || s == "sym" || s == "d" || s == "empty";
}

void Signature::add(GenDecl decl) {
  if (!Name::is_user_name(decl.name) || is_reserved_word(decl.name))
    throw Error(ErrorKind::InvalidTheory, "invalid generator symbol '" + decl.name + "'");
  auto it = decls_.find(decl.name);
  if (it != decls_.end()) {
    if (it->second != decl)
      throw Error(ErrorKind::InvalidTheory, "generator '" + decl.name + "' declared with two different arities");
    return;
  }
  std::string key = decl.name;
  decls_.emplace(std::move(key), std::move(decl));
}

const GenDecl* Signature::find(std::string_view name) const {
  auto it = decls_.find(name);
  return it == decls_.end() ? nullptr : &it->second;
}

const GenDecl& Signature::at(std::string_view name) const {
  if (const auto* d = find(name)) return *d;
  throw Error(ErrorKind::UnknownGenerator, "unknown generator '" + std::string(name) + "'");
}

std::vector<GenDecl> Signature::list() const {
  std::vector<GenDecl> out;
  for (const auto& [k, d] : decls_) out.push_back(d);
  return out;
}

Signature merge(const Signature& a, const Signature& b) {
  Signature out = a;
  for (const auto& d : b.list()) out.add(d);
  return out;
}

std::string describe(const NameSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& n : s) {
    if (!first) out += ", ";
    out += n.str();
    first = false;
  }
  return out + "}";
}

SmtType smt_typecheck(const BaseSmt& t, const Signature& sig) { return smt_type_of(t, SignatureTyper{sig}); }

NmtType nmt_typecheck(const BaseNmt& t, const Signature& sig) { return nmt_type_of(t, SignatureTyper{sig}); }

NameSet nmt_support(const BaseNmt& t, const Signature& sig) {
  auto ty = nmt_typecheck(t, sig);
  ty.dom.insert(ty.cod.begin(), ty.cod.end());
  return ty.dom;
}

std::vector<std::size_t> block_swap_table(std::size_t m, std::size_t n) {
  std::vector<std::size_t> table(m + n);
  for (std::size_t i = 0; i < m + n; ++i) table[i] = i < m ? i + n : i - m;
  return table;
}

std::vector<std::size_t> realignment_table(const NameList& a, const NameList& a2) {
  if (a.size() != a2.size() || a.underline() != a2.underline())
    throw Error(ErrorKind::BoundaryMismatch, "realignment needs two enumerations of the same set");
  std::vector<std::size_t> table(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) table[i] = a2.index_of(a[i]);
  return table;
}

}  // namespace nomprop
