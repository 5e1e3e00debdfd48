#include "nomprop/name.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "nomprop/error.hpp"

namespace nomprop {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidName: return "InvalidName";
    case ErrorKind::DuplicateWireName: return "DuplicateWireName";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::SeqArityMismatch: return "SeqArityMismatch";
    case ErrorKind::SeqDomainMismatch: return "SeqDomainMismatch";
    case ErrorKind::TensorOverlap: return "TensorOverlap";
    case ErrorKind::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::ModelMismatch: return "ModelMismatch";
    case ErrorKind::UnknownTheory: return "UnknownTheory";
    case ErrorKind::InvalidTheory: return "InvalidTheory";
    case ErrorKind::Parse: return "ParseError";
  }
  return "Error";
}

namespace {

std::string describe_parse_error(SourceSpan span, const std::vector<std::string>& expected,
                                 const std::string& found) {
  std::ostringstream os;
  os << "parse error at " << span.start << ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) os << (i + 1 == expected.size() ? " or " : ", ");
    os << expected[i];
  }
  os << ", found " << found;
  return os.str();
}

}  // namespace

ParseError::ParseError(SourceSpan span, std::vector<std::string> expected, std::string found)
    : Error(ErrorKind::Parse, describe_parse_error(span, expected, found), span),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

bool Name::is_user_name(std::string_view id) {
  if (id.empty() || !std::isalpha(static_cast<unsigned char>(id.front()))) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool Name::is_reserved_name(std::string_view id) {
  if (id.size() < 3 || id.substr(0, 2) != "_w") return false;
  return std::all_of(id.begin() + 2, id.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

Name::Name(std::string id) : id_(std::move(id)) {
  if (!is_valid(id_)) throw Error(ErrorKind::InvalidName, "invalid name '" + id_ + "'");
}

std::ostream& operator<<(std::ostream& os, const Name& n) { return os << n.str(); }

NameList::NameList(std::vector<Name> names) : names_(std::move(names)) {
  NameSet seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second)
      throw Error(ErrorKind::DuplicateWireName, "duplicate wire name '" + n.str() + "'");
  }
}

std::size_t NameList::index_of(const Name& n) const {
  return static_cast<std::size_t>(std::find(names_.begin(), names_.end(), n) - names_.begin());
}

NameList NameList::slice(std::size_t from, std::size_t count) const {
  return NameList(std::vector<Name>(names_.begin() + from, names_.begin() + from + count));
}

NameList concat(const NameList& a, const NameList& b) {
  std::vector<Name> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return NameList(std::move(out));
}

NameList sorted_list(const NameSet& s) { return NameList(std::vector<Name>(s.begin(), s.end())); }

Perm::Perm(std::map<Name, Name> mapping) {
  for (auto& [k, v] : mapping)
    if (k != v) mapping_.emplace(k, v);
}

Perm Perm::from_pairs(const std::vector<std::pair<Name, Name>>& pairs) {
  std::map<Name, Name> m;
  NameSet image;
  for (const auto& [k, v] : pairs) {
    if (!m.emplace(k, v).second || !image.insert(v).second)
      throw Error(ErrorKind::InvalidName, "permutation pairs are not injective");
  }
  for (const auto& v : image)
    if (!m.count(v)) throw Error(ErrorKind::InvalidName, "permutation is not a bijection on its domain");
  return Perm(std::move(m));
}

Perm Perm::transposition(const Name& a, const Name& b) {
  if (a == b) return Perm();
  return Perm(std::map<Name, Name>{{a, b}, {b, a}});
}

Name Perm::operator()(const Name& n) const {
  auto it = mapping_.find(n);
  return it == mapping_.end() ? n : it->second;
}

NameSet Perm::domain() const {
  NameSet out;
  for (const auto& [k, v] : mapping_) out.insert(k);
  return out;
}

std::vector<std::string> Perm::to_strings() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : mapping_) out.push_back(k.str() + "->" + v.str());
  return out;
}

Perm compose(const Perm& p, const Perm& q) {
  std::map<Name, Name> m;
  for (const auto& [k, v] : p.mapping_) m.emplace(k, q(v));
  for (const auto& [k, v] : q.mapping_)
    if (!p.mapping_.count(k)) m.emplace(k, v);
  return Perm(std::move(m));
}

Perm inverse(const Perm& p) {
  std::map<Name, Name> m;
  for (const auto& [k, v] : p.mapping_) m.emplace(v, k);
  return Perm(std::move(m));
}

Name act(const Perm& p, const Name& n) { return p(n); }

NameSet act(const Perm& p, const NameSet& s) {
  NameSet out;
  for (const auto& n : s) out.insert(p(n));
  return out;
}

NameList act(const Perm& p, const NameList& l) {
  std::vector<Name> out;
  out.reserve(l.size());
  for (const auto& n : l) out.push_back(p(n));
  return NameList(std::move(out));
}

std::ostream& operator<<(std::ostream& os, const Perm& p) {
  os << '{';
  bool first = true;
  for (const auto& s : p.to_strings()) {
    if (!first) os << ", ";
    os << s;
    first = false;
  }
  return os << '}';
}

Name FreshSupply::next() { return Name("_w" + std::to_string(next_++)); }

NameList FreshSupply::next_list(std::size_t n) {
  std::vector<Name> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(next());
  return NameList(std::move(out));
}

void FreshSupply::avoid(const NameSet& used) {
  for (const auto& n : used) {
    if (!Name::is_reserved_name(n.str())) continue;
    std::size_t k = std::stoul(n.str().substr(2));
    if (k >= next_) next_ = k + 1;
  }
}

}  // namespace nomprop
