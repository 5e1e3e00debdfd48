#include "nomprop/semantics.hpp"

#include <algorithm>
#include <array>

namespace nomprop {

namespace {

constexpr std::array<std::pair<ModelTag, const char*>, 12> kTagNames{{
    {ModelTag::B, "B"},
    {ModelTag::I, "I"},
    {ModelTag::S, "S"},
    {ModelTag::F, "F"},
    {ModelTag::P, "P"},
    {ModelTag::R, "R"},
    {ModelTag::nB, "nB"},
    {ModelTag::nI, "nI"},
    {ModelTag::nS, "nS"},
    {ModelTag::nF, "nF"},
    {ModelTag::nP, "nP"},
    {ModelTag::nR, "nR"},
}};

bool same_shape(const Incidence& a, const Incidence& b) { return a.rows() == b.rows() && a.cols() == b.cols(); }

ArrowKind classify(const Incidence& rel) {
  bool total = true;
  for (Eigen::Index i = 0; i < rel.rows(); ++i) {
    int out = rel.row(i).sum();
    if (out > 1) return ArrowKind::Relation;
    if (out == 0) total = false;
  }
  return total ? ArrowKind::Function : ArrowKind::PartialFunction;
}

Incidence block_diagonal(const Incidence& a, const Incidence& b) {
  Incidence out = Incidence::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace

const char* to_string(ModelTag tag) {
  for (const auto& [t, s] : kTagNames)
    if (t == tag) return s;
  return "?";
}

std::optional<ModelTag> try_parse_model_tag(std::string_view s) {
  for (const auto& [t, name] : kTagNames)
    if (s == name) return t;
  return std::nullopt;
}

ModelTag parse_model_tag(std::string_view s) {
  if (auto t = try_parse_model_tag(s)) return *t;
  throw Error(ErrorKind::UnknownTheory, "unknown theory '" + std::string(s) + "'");
}

bool is_nominal(ModelTag tag) { return int(tag) >= int(ModelTag::nB); }

ModelTag nominal_counterpart(ModelTag tag) { return is_nominal(tag) ? tag : ModelTag(int(tag) + 6); }

ModelTag ordinal_counterpart(ModelTag tag) { return is_nominal(tag) ? ModelTag(int(tag) - 6) : tag; }

const char* to_string(ArrowKind kind) {
  switch (kind) {
    case ArrowKind::Function: return "function";
    case ArrowKind::PartialFunction: return "partial_function";
    case ArrowKind::Relation: return "relation";
  }
  return "?";
}

Arrow::Arrow(Incidence rel) : rel_(std::move(rel)) {}

Arrow Arrow::identity(std::size_t n) { return Arrow(Incidence::Identity(Eigen::Index(n), Eigen::Index(n))); }

Arrow Arrow::function(std::size_t n, std::span<const std::size_t> table) {
  Arrow f(table.size(), n);
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] >= n) throw Error(ErrorKind::TypeMismatch, "function table entry outside the codomain");
    f.rel_(Eigen::Index(i), Eigen::Index(table[i])) = 1;
  }
  return f;
}

ArrowKind Arrow::kind() const { return classify(rel_); }

std::vector<std::optional<std::size_t>> Arrow::partial_table() const {
  if (kind() == ArrowKind::Relation) throw Error(ErrorKind::TypeMismatch, "arrow is not a partial function");
  std::vector<std::optional<std::size_t>> out(dom());
  for (auto [i, j] : pairs()) out[i] = j;
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> Arrow::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (Eigen::Index i = 0; i < rel_.rows(); ++i)
    for (Eigen::Index j = 0; j < rel_.cols(); ++j)
      if (rel_(i, j)) out.emplace_back(std::size_t(i), std::size_t(j));
  return out;
}

bool operator==(const Arrow& f, const Arrow& g) { return same_shape(f.rel_, g.rel_) && f.rel_ == g.rel_; }

Arrow then(const Arrow& f, const Arrow& g) {
  if (f.cod() != g.dom())
    throw Error(ErrorKind::SeqArityMismatch, "cannot compose arrows " + std::to_string(f.dom()) + "->" +
                                                 std::to_string(f.cod()) + " and " + std::to_string(g.dom()) +
                                                 "->" + std::to_string(g.cod()));
  Incidence prod = f.incidence() * g.incidence();
  return Arrow(Incidence(prod.cwiseMin(1)));
}

Arrow tensor(const Arrow& f, const Arrow& g) { return Arrow(block_diagonal(f.incidence(), g.incidence())); }

NamedArrow::NamedArrow(NameSet dom, NameSet cod, Incidence rel)
    : dom_(std::move(dom)),
      cod_(std::move(cod)),
      dom_list_(sorted_list(dom_)),
      cod_list_(sorted_list(cod_)),
      rel_(std::move(rel)) {
  if (std::size_t(rel_.rows()) != dom_.size() || std::size_t(rel_.cols()) != cod_.size())
    throw Error(ErrorKind::TypeMismatch, "incidence matrix does not match the boundary sizes");
}

NamedArrow NamedArrow::identity(const NameSet& names) {
  return NamedArrow(names, names, Incidence::Identity(Eigen::Index(names.size()), Eigen::Index(names.size())));
}

NamedArrow NamedArrow::renaming(const Name& a, const Name& b) {
  return NamedArrow({a}, {b}, Incidence::Ones(1, 1));
}

NamedArrow NamedArrow::list_bijection(const NameList& a, const NameList& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::BoundaryMismatch, "list bijection needs equal lengths");
  return semantic_box(a, Arrow::identity(a.size()), b);
}

bool NamedArrow::related(const Name& a, const Name& b) const {
  std::size_t i = dom_list_.index_of(a), j = cod_list_.index_of(b);
  return i < dom_list_.size() && j < cod_list_.size() && rel_(Eigen::Index(i), Eigen::Index(j)) != 0;
}

ArrowKind NamedArrow::kind() const { return classify(rel_); }

std::vector<std::pair<Name, Name>> NamedArrow::pairs() const {
  std::vector<std::pair<Name, Name>> out;
  for (Eigen::Index i = 0; i < rel_.rows(); ++i)
    for (Eigen::Index j = 0; j < rel_.cols(); ++j)
      if (rel_(i, j)) out.emplace_back(dom_list_[std::size_t(i)], cod_list_[std::size_t(j)]);
  return out;
}

std::map<Name, Name> NamedArrow::graph() const {
  if (kind() == ArrowKind::Relation) throw Error(ErrorKind::TypeMismatch, "arrow is not a partial function");
  std::map<Name, Name> out;
  for (auto& [a, b] : pairs()) out.emplace(a, b);
  return out;
}

bool operator==(const NamedArrow& f, const NamedArrow& g) {
  return f.dom_ == g.dom_ && f.cod_ == g.cod_ && f.rel_ == g.rel_;
}

NamedArrow then(const NamedArrow& f, const NamedArrow& g) {
  if (f.cod() != g.dom())
    throw Error(ErrorKind::SeqDomainMismatch,
                "cannot compose arrows into " + describe(f.cod()) + " and out of " + describe(g.dom()));
  Incidence prod = f.incidence() * g.incidence();
  return NamedArrow(f.dom(), g.cod(), prod.cwiseMin(1));
}

NamedArrow tensor(const NamedArrow& f, const NamedArrow& g) {
  NameSet dom = f.dom(), cod = f.cod();
  for (const auto& a : g.dom())
    if (!dom.insert(a).second) throw Error(ErrorKind::TensorOverlap, "tensor operands share wire " + a.str());
  for (const auto& b : g.cod())
    if (!cod.insert(b).second) throw Error(ErrorKind::TensorOverlap, "tensor operands share wire " + b.str());
  NameList dl = sorted_list(dom), cl = sorted_list(cod);
  Incidence rel = Incidence::Zero(Eigen::Index(dom.size()), Eigen::Index(cod.size()));
  for (const auto* part : {&f, &g})
    for (const auto& [a, b] : part->pairs()) rel(Eigen::Index(dl.index_of(a)), Eigen::Index(cl.index_of(b))) = 1;
  return NamedArrow(std::move(dom), std::move(cod), std::move(rel));
}

NamedArrow act(const Perm& p, const NamedArrow& f) {
  NameSet dom = act(p, f.dom()), cod = act(p, f.cod());
  NameList dl = sorted_list(dom), cl = sorted_list(cod);
  Incidence rel = Incidence::Zero(Eigen::Index(dom.size()), Eigen::Index(cod.size()));
  for (const auto& [a, b] : f.pairs()) rel(Eigen::Index(dl.index_of(p(a))), Eigen::Index(cl.index_of(p(b)))) = 1;
  return NamedArrow(std::move(dom), std::move(cod), std::move(rel));
}

NamedArrow semantic_box(const NameList& a, const Arrow& f, const NameList& b) {
  if (a.size() != f.dom() || b.size() != f.cod())
    throw Error(ErrorKind::BoundaryMismatch, "box lists have lengths " + std::to_string(a.size()) + " and " +
                                                 std::to_string(b.size()) + " around an arrow " +
                                                 std::to_string(f.dom()) + "->" + std::to_string(f.cod()));
  NameSet dom = a.underline(), cod = b.underline();
  NameList dl = sorted_list(dom), cl = sorted_list(cod);
  Incidence rel = Incidence::Zero(Eigen::Index(dom.size()), Eigen::Index(cod.size()));
  for (auto [i, j] : f.pairs()) rel(Eigen::Index(dl.index_of(a[i])), Eigen::Index(cl.index_of(b[j]))) = 1;
  return NamedArrow(std::move(dom), std::move(cod), std::move(rel));
}

Arrow semantic_unbox(const NameList& a, const NamedArrow& f, const NameList& b) {
  if (a.underline() != f.dom() || b.underline() != f.cod())
    throw Error(ErrorKind::BoundaryMismatch, "dia lists " + describe(a.underline()) + " and " +
                                                 describe(b.underline()) + " do not enumerate the boundary " +
                                                 describe(f.dom()) + " -> " + describe(f.cod()));
  Incidence rel = Incidence::Zero(Eigen::Index(a.size()), Eigen::Index(b.size()));
  for (const auto& [x, y] : f.pairs()) rel(Eigen::Index(a.index_of(x)), Eigen::Index(b.index_of(y))) = 1;
  return Arrow(std::move(rel));
}

const std::vector<GenDecl>& model_generators() {
  static const std::vector<GenDecl> gens{{"eta", 0, 1}, {"mu", 2, 1}, {"etahat", 1, 0}, {"muhat", 1, 2}};
  return gens;
}

namespace {

bool model_interprets(ModelTag tag, std::string_view gen) {
  switch (ordinal_counterpart(tag)) {
    case ModelTag::B: return false;
    case ModelTag::I: return gen == "eta";
    case ModelTag::S: return gen == "mu";
    case ModelTag::F: return gen == "eta" || gen == "mu";
    case ModelTag::P: return gen == "eta" || gen == "mu" || gen == "etahat";
    default: return true;
  }
}

}  // namespace

Signature model_signature(ModelTag tag) {
  Signature sig;
  for (const auto& g : model_generators())
    if (model_interprets(tag, g.name)) sig.add(g);
  return sig;
}

Arrow generator_arrow(std::string_view gen, ModelTag tag) {
  const auto& gens = model_generators();
  if (std::none_of(gens.begin(), gens.end(), [&](const GenDecl& d) { return d.name == gen; }))
    throw Error(ErrorKind::UnknownGenerator, "unknown generator '" + std::string(gen) + "'");
  if (!model_interprets(tag, gen))
    throw Error(ErrorKind::ModelMismatch,
                "generator '" + std::string(gen) + "' has no interpretation in " + to_string(tag));
  if (gen == "eta") return Arrow(0, 1);
  if (gen == "mu") {
    const std::size_t table[] = {0, 0};
    return Arrow::function(1, table);
  }
  if (gen == "etahat") return Arrow(1, 0);
  Incidence copy = Incidence::Ones(1, 2);
  return Arrow(copy);
}

Arrow eval_smt(const BaseSmt& t, ModelTag tag) {
  if (is_nominal(tag)) throw Error(ErrorKind::ModelMismatch, std::string("ordinal term evaluated in ") + to_string(tag));
  return eval_smt_with(t, [tag](const GenRef& g) { return generator_arrow(g.name, tag); });
}

NamedArrow eval_nmt(const BaseNmt& t, ModelTag tag) {
  if (!is_nominal(tag)) throw Error(ErrorKind::ModelMismatch, std::string("nominal term evaluated in ") + to_string(tag));
  return eval_nmt_with(t, [tag](const GenRef& g) { return generator_arrow(g.name, tag); });
}

}  // namespace nomprop
