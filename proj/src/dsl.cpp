#include "nomprop/dsl.hpp"

#include <cctype>
#include <optional>

namespace nomprop {

namespace {

enum class Tok { Ident, Int, Semi, Star, LParen, RParen, Comma, LBracket, RBracket, Gt, Lt, End };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

std::string show(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(text.substr(start, i - start)), {start, i}});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      out.push_back({Tok::Int, std::string(text.substr(start, i - start)), {start, i}});
      continue;
    }
    Tok kind;
    switch (c) {
      case ';': kind = Tok::Semi; break;
      case '*': kind = Tok::Star; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ',': kind = Tok::Comma; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case '>': kind = Tok::Gt; break;
      case '<': kind = Tok::Lt; break;
      default: throw ParseError({start, start + 1}, {"a term"}, "'" + std::string(1, c) + "'");
    }
    ++i;
    out.push_back({kind, std::string(1, c), {start, i}});
  }
  out.push_back({Tok::End, "", {text.size(), text.size()}});
  return out;
}

/// Token cursor shared by both grammars.
class Cursor {
 public:
  explicit Cursor(std::string_view text) : toks_(lex(text)) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(Tok kind, std::size_t k = 0) const { return peek(k).kind == kind; }
  bool at_word(std::string_view w) const { return at(Tok::Ident) && peek().text == w; }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  const Token& expect(Tok kind, const char* what) {
    if (!at(kind)) fail({what});
    return next();
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(peek().span, std::move(expected), show(peek()));
  }

  Name name() {
    if (!at(Tok::Ident) || !Name::is_valid(peek().text)) fail({"a name"});
    return Name(next().text);
  }

  void finish() {
    if (!at(Tok::End)) fail({"';'", "'*'", "end of input"});
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

[[noreturn]] void rethrow_at(const Error& e, SourceSpan span) { throw Error(e.kind(), e.what(), span); }

template <class T, class Ty>
struct Parsed {
  T term;
  std::optional<Ty> type;
  SourceSpan span;
};

class SmtParser {
 public:
  using P = Parsed<BaseSmt, SmtType>;

  SmtParser(std::string_view text, const Signature* sig) : cur_(text), sig_(sig) {}

  BaseSmt run() {
    auto t = seq();
    cur_.finish();
    return t.term;
  }

 private:
  P seq() {
    P acc = tens();
    while (cur_.at(Tok::Semi)) {
      cur_.next();
      P rhs = tens();
      SourceSpan span{acc.span.start, rhs.span.end};
      std::optional<SmtType> ty;
      if (acc.type && rhs.type) {
        if (acc.type->coarity != rhs.type->arity)
          throw Error(ErrorKind::SeqArityMismatch,
                      "sequential composition expects arity " + std::to_string(acc.type->coarity) + ", got " +
                          std::to_string(rhs.type->arity),
                      span);
        ty = SmtType{acc.type->arity, rhs.type->coarity};
      }
      acc = P{BaseSmt::seq(acc.term, rhs.term), ty, span};
    }
    return acc;
  }

  P tens() {
    P acc = atom();
    while (cur_.at(Tok::Star)) {
      cur_.next();
      P rhs = atom();
      std::optional<SmtType> ty;
      if (acc.type && rhs.type) ty = SmtType{acc.type->arity + rhs.type->arity, acc.type->coarity + rhs.type->coarity};
      acc = P{BaseSmt::tensor(acc.term, rhs.term), ty, {acc.span.start, rhs.span.end}};
    }
    return acc;
  }

  std::optional<SmtType> typed(SmtType t) const { return sig_ ? std::optional(t) : std::nullopt; }

  std::size_t integer() {
    const Token& t = cur_.expect(Tok::Int, "an integer");
    return std::stoul(t.text);
  }

  P atom() {
    const Token& t = cur_.peek();
    std::size_t start = t.span.start;
    if (t.kind == Tok::LParen) {
      cur_.next();
      P inner = seq();
      const Token& close = cur_.expect(Tok::RParen, "')'");
      inner.span = {start, close.span.end};
      return inner;
    }
    if (t.kind != Tok::Ident) cur_.fail({"'id'", "'sym'", "a generator", "'('"});
    Token word = cur_.next();
    if (word.text == "id") return P{BaseSmt::id(), typed({1, 1}), word.span};
    if (word.text == "sym") {
      if (!cur_.at(Tok::LParen)) return P{BaseSmt::sym(), typed({2, 2}), word.span};
      cur_.next();
      std::size_t m = integer();
      cur_.expect(Tok::Comma, "','");
      std::size_t n = integer();
      const Token& close = cur_.expect(Tok::RParen, "')'");
      return P{smt_canonical_symmetry<GenRef>(m, n), typed({m + n, n + m}), {start, close.span.end}};
    }
    if (!Name::is_user_name(word.text) || Signature::is_reserved_word(word.text))
      throw ParseError(word.span, {"a generator"}, show(word));
    std::optional<SmtType> ty;
    if (sig_) {
      const GenDecl* d = sig_->find(word.text);
      if (!d) throw Error(ErrorKind::UnknownGenerator, "unknown generator '" + word.text + "'", word.span);
      ty = SmtType{d->arity, d->coarity};
    }
    return P{BaseSmt::gen(GenRef{word.text}), ty, word.span};
  }

  Cursor cur_;
  const Signature* sig_;
};

class NmtParser {
 public:
  using P = Parsed<BaseNmt, NmtType>;

  NmtParser(std::string_view text, const Signature* sig) : cur_(text), sig_(sig) {}

  BaseNmt run() {
    auto t = seq();
    cur_.finish();
    return t.term;
  }

 private:
  P seq() {
    P acc = tens();
    while (cur_.at(Tok::Semi)) {
      cur_.next();
      P rhs = tens();
      acc = combine(BaseNmt::seq(acc.term, rhs.term), acc, rhs);
    }
    return acc;
  }

  P tens() {
    P acc = atom();
    while (cur_.at(Tok::Star)) {
      cur_.next();
      P rhs = atom();
      acc = combine(BaseNmt::tensor(acc.term, rhs.term), acc, rhs);
    }
    return acc;
  }

  P combine(BaseNmt term, const P& lhs, const P& rhs) {
    SourceSpan span{lhs.span.start, rhs.span.end};
    std::optional<NmtType> ty;
    if (lhs.type && rhs.type) {
      try {
        ty = type_from_parts(term, *lhs.type, *rhs.type);
      } catch (const Error& e) {
        rethrow_at(e, span);
      }
    }
    return P{std::move(term), std::move(ty), span};
  }

  static NmtType type_from_parts(const BaseNmt& term, const NmtType& a, const NmtType& b) {
    if (term.is<nmt::Seq<GenRef>>()) {
      if (a.cod != b.dom)
        throw Error(ErrorKind::SeqDomainMismatch,
                    "sequential composition expects " + describe(a.cod) + ", got " + describe(b.dom));
      return NmtType{a.dom, b.cod};
    }
    NameSet overlap;
    for (const auto& n : a.dom)
      if (b.dom.count(n)) overlap.insert(n);
    for (const auto& n : a.cod)
      if (b.cod.count(n)) overlap.insert(n);
    if (!overlap.empty()) throw Error(ErrorKind::TensorOverlap, "tensor operands share wires " + describe(overlap));
    NmtType out = a;
    out.dom.insert(b.dom.begin(), b.dom.end());
    out.cod.insert(b.cod.begin(), b.cod.end());
    return out;
  }

  std::optional<NmtType> typed(NmtType t) const { return sig_ ? std::optional(std::move(t)) : std::nullopt; }

  NameList names(Tok close) {
    std::vector<Name> out;
    std::size_t start = cur_.peek().span.start;
    if (!cur_.at(close)) {
      out.push_back(cur_.name());
      while (cur_.at(Tok::Comma)) {
        cur_.next();
        out.push_back(cur_.name());
      }
    }
    try {
      return NameList(std::move(out));
    } catch (const Error& e) {
      rethrow_at(e, {start, cur_.peek().span.start});
    }
  }

  P atom() {
    const Token& t = cur_.peek();
    std::size_t start = t.span.start;
    if (t.kind == Tok::LParen) {
      if (cur_.at(Tok::Ident, 1) && cur_.at(Tok::Ident, 2) && cur_.at(Tok::RParen, 3)) {
        cur_.next();
        Name a = cur_.name();
        Name b = cur_.name();
        cur_.next();
        P body = atom();
        std::optional<NmtType> ty;
        if (body.type) {
          Perm p = Perm::transposition(a, b);
          ty = NmtType{act(p, body.type->dom), act(p, body.type->cod)};
        }
        return P{BaseNmt::swap(a, b, body.term), ty, {start, body.span.end}};
      }
      cur_.next();
      P inner = seq();
      const Token& close = cur_.expect(Tok::RParen, "')'");
      inner.span = {start, close.span.end};
      return inner;
    }
    if (t.kind == Tok::LBracket) {
      cur_.next();
      NameList in = names(Tok::Gt);
      cur_.expect(Tok::Gt, "'>'");
      if (!cur_.at(Tok::Ident)) cur_.fail({"a generator"});
      Token gen = cur_.next();
      if (!Name::is_user_name(gen.text) || Signature::is_reserved_word(gen.text))
        throw ParseError(gen.span, {"a generator"}, show(gen));
      cur_.expect(Tok::Lt, "'<'");
      NameList out = names(Tok::RBracket);
      const Token& close = cur_.expect(Tok::RBracket, "']'");
      SourceSpan span{start, close.span.end};
      BaseNmt term = BaseNmt::gen(in, GenRef{gen.text}, out);
      std::optional<NmtType> ty;
      if (sig_) {
        const GenDecl* d = sig_->find(gen.text);
        if (!d) throw Error(ErrorKind::UnknownGenerator, "unknown generator '" + gen.text + "'", gen.span);
        try {
          ty = nmt_typecheck(term, *sig_);
        } catch (const Error& e) {
          rethrow_at(e, span);
        }
      }
      return P{std::move(term), ty, span};
    }
    if (t.kind != Tok::Ident) cur_.fail({"'id'", "'d'", "'empty'", "'['", "'('"});
    if (cur_.at_word("empty")) {
      Token w = cur_.next();
      return P{BaseNmt::empty(), typed({}), w.span};
    }
    if (cur_.at_word("id")) {
      cur_.next();
      cur_.expect(Tok::LParen, "'('");
      Name a = cur_.name();
      const Token& close = cur_.expect(Tok::RParen, "')'");
      return P{BaseNmt::id(a), typed({{a}, {a}}), {start, close.span.end}};
    }
    if (cur_.at_word("d")) {
      cur_.next();
      cur_.expect(Tok::LParen, "'('");
      Name a = cur_.name();
      cur_.expect(Tok::Comma, "','");
      Name b = cur_.name();
      const Token& close = cur_.expect(Tok::RParen, "')'");
      return P{BaseNmt::delta(a, b), typed({{a}, {b}}), {start, close.span.end}};
    }
    cur_.fail({"'id'", "'d'", "'empty'", "'['", "'('"});
  }

  Cursor cur_;
  const Signature* sig_;
};

template <class G>
void collect_smt_generators(const SmtTerm<G>& t, std::vector<std::string>& out) {
  std::visit(overloaded{[&](const smt::Gen<G>& g) { out.push_back(g.value.name); },
                        [&](const smt::Seq<G>& s) {
                          collect_smt_generators(s.first, out);
                          collect_smt_generators(s.second, out);
                        },
                        [&](const smt::Tensor<G>& s) {
                          collect_smt_generators(s.first, out);
                          collect_smt_generators(s.second, out);
                        },
                        [](const auto&) {}},
             t.node());
}

void collect_nmt_generators(const BaseNmt& t, Signature& sig) {
  std::visit(overloaded{[&](const nmt::Gen<GenRef>& g) { sig.add({g.value.name, g.in.size(), g.out.size()}); },
                        [&](const nmt::Seq<GenRef>& s) {
                          collect_nmt_generators(s.first, sig);
                          collect_nmt_generators(s.second, sig);
                        },
                        [&](const nmt::Tensor<GenRef>& s) {
                          collect_nmt_generators(s.first, sig);
                          collect_nmt_generators(s.second, sig);
                        },
                        [&](const nmt::Swap<GenRef>& s) { collect_nmt_generators(s.body, sig); },
                        [](const auto&) {}},
             t.node());
}

}  // namespace

BaseSmt parse_smt(std::string_view text, const Signature* sig) { return SmtParser(text, sig).run(); }

BaseNmt parse_nmt(std::string_view text, const Signature* sig) { return NmtParser(text, sig).run(); }

Signature infer_signature(const BaseNmt& t) {
  Signature sig;
  collect_nmt_generators(t, sig);
  return sig;
}

Signature infer_signature(const BaseSmt& t, const Signature& known) {
  std::vector<std::string> used;
  collect_smt_generators(t, used);
  Signature sig;
  for (const auto& g : used) sig.add(known.at(g));
  return sig;
}

std::string print_names(const NameList& l) {
  std::string out;
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (i) out += ",";
    out += l[i].str();
  }
  return out;
}

std::string print_term(const BaseSmt& t) {
  return print_smt_with<GenRef>(t, [](const GenRef& g) { return g.name; });
}

std::string print_term(const BaseNmt& t) {
  return print_nmt_with<GenRef>(t, [](const GenRef& g) { return g.name; });
}

}  // namespace nomprop
