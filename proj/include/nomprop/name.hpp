#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace nomprop {

/// An atom drawn from a countably infinite alphabet.
///
/// User-visible names match [A-Za-z][A-Za-z0-9_]*. Names of the form `_w<digits>`
/// are reserved for the fresh-name supply and never collide with user names.
class Name {
 public:
  explicit Name(std::string id);
  Name(const char* id) : Name(std::string(id)) {}

  static bool is_user_name(std::string_view id);
  static bool is_reserved_name(std::string_view id);
  static bool is_valid(std::string_view id) { return is_user_name(id) || is_reserved_name(id); }

  const std::string& str() const { return id_; }

  auto operator<=>(const Name&) const = default;
  bool operator==(const Name&) const = default;

 private:
  std::string id_;
};

std::ostream& operator<<(std::ostream& os, const Name& n);

using NameSet = std::set<Name>;

/// A finite sequence of pairwise-distinct names.
class NameList {
 public:
  NameList() = default;
  NameList(std::vector<Name> names);
  NameList(std::initializer_list<Name> names) : NameList(std::vector<Name>(names)) {}

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const Name& operator[](std::size_t i) const { return names_[i]; }
  auto begin() const { return names_.begin(); }
  auto end() const { return names_.end(); }
  const std::vector<Name>& names() const { return names_; }

  /// Position of `n` in the list, or size() when absent.
  std::size_t index_of(const Name& n) const;
  bool contains(const Name& n) const { return index_of(n) != size(); }

  /// The underlying set, written with an underline in the literature.
  NameSet underline() const { return NameSet(names_.begin(), names_.end()); }

  NameList slice(std::size_t from, std::size_t count) const;

  bool operator==(const NameList&) const = default;
  auto operator<=>(const NameList&) const = default;

 private:
  std::vector<Name> names_;
};

NameList concat(const NameList& a, const NameList& b);
NameList sorted_list(const NameSet& s);

/// A finitely supported bijection on names, stored without fixed points so that
/// structural and extensional equality coincide.
class Perm {
 public:
  Perm() = default;

  /// Builds a permutation from explicit pairs; throws when the pairs are not a
  /// bijection of their domain onto itself.
  static Perm from_pairs(const std::vector<std::pair<Name, Name>>& pairs);
  static Perm transposition(const Name& a, const Name& b);

  Name operator()(const Name& n) const;

  bool is_identity() const { return mapping_.empty(); }
  NameSet domain() const;
  const std::map<Name, Name>& mapping() const { return mapping_; }

  /// Sorted `"a->b"` pairs.
  std::vector<std::string> to_strings() const;

  bool operator==(const Perm&) const = default;

 private:
  explicit Perm(std::map<Name, Name> mapping);
  std::map<Name, Name> mapping_;

  friend Perm compose(const Perm& p, const Perm& q);
  friend Perm inverse(const Perm& p);
};

/// Diagrammatic order: the result applies `p` first, then `q`.
Perm compose(const Perm& p, const Perm& q);
Perm inverse(const Perm& p);

Name act(const Perm& p, const Name& n);
NameSet act(const Perm& p, const NameSet& s);
NameList act(const Perm& p, const NameList& l);

std::ostream& operator<<(std::ostream& os, const Perm& p);

/// Deterministic supply of reserved names `_w0`, `_w1`, ...
///
/// Passed explicitly to every operation that invents wires; there is no global counter.
class FreshSupply {
 public:
  FreshSupply() = default;
  explicit FreshSupply(std::size_t start) : next_(start) {}

  Name next();
  NameList next_list(std::size_t n);

  /// Advances past every reserved name in `used`.
  void avoid(const NameSet& used);

  std::size_t counter() const { return next_; }

 private:
  std::size_t next_ = 0;
};

}  // namespace nomprop
