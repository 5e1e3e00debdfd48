#include "nomprop/translate.hpp"

#include "nomprop/dsl.hpp"

namespace nomprop {

SmtType DiaTyper::operator()(const DiaBox& box) const {
  auto ty = nmt_typecheck(box.body, sig);
  if (box.in.underline() != ty.dom || box.out.underline() != ty.cod)
    throw Error(ErrorKind::BoundaryMismatch, "dia lists " + describe(box.in.underline()) + " and " +
                                                 describe(box.out.underline()) + " do not enumerate " +
                                                 describe(ty.dom) + " -> " + describe(ty.cod));
  return SmtType{box.in.size(), box.out.size()};
}

NmtType boxed_typecheck(const BoxedNmt& t, const Signature& sig) { return nmt_type_of(t, BoxedTyper{sig}); }

SmtType dia_typecheck(const DiaSmt& t, const Signature& sig) { return smt_type_of(t, DiaTyper{sig}); }

namespace {

class NmtNormalizer {
 public:
  NmtNormalizer(const Signature& sig, FreshSupply& fresh) : sig_(sig), fresh_(fresh) {}

  BaseNmt run(const BoxedNmt& t) {
    return std::visit(overloaded{[&](const nmt::Gen<BaseSmt>& g) { return unbox(g.in, g.value, g.out); },
                                 [](const nmt::Id& i) { return BaseNmt::id(i.wire); },
                                 [](const nmt::Delta& d) { return BaseNmt::delta(d.from, d.to); },
                                 [](const nmt::Empty&) { return BaseNmt::empty(); },
                                 [&](const nmt::Seq<BaseSmt>& s) {
                                   auto lhs = run(s.first);
                                   return BaseNmt::seq(lhs, run(s.second));
                                 },
                                 [&](const nmt::Tensor<BaseSmt>& s) {
                                   auto lhs = run(s.first);
                                   return BaseNmt::tensor(lhs, run(s.second));
                                 },
                                 [&](const nmt::Swap<BaseSmt>& s) { return BaseNmt::swap(s.a, s.b, run(s.body)); }},
                      t.node());
  }

 private:
  BaseNmt unbox(const NameList& a, const BaseSmt& f, const NameList& b) {
    return std::visit(
        overloaded{[&](const smt::Gen<GenRef>& g) { return BaseNmt::gen(a, g.value, b); },
                   [&](const smt::Id&) { return BaseNmt::delta(a[0], b[0]); },
                   [&](const smt::Sym&) {
                     return BaseNmt::tensor(BaseNmt::delta(a[0], b[1]), BaseNmt::delta(a[1], b[0]));
                   },
                   [](const smt::Empty&) { return BaseNmt::empty(); },
                   [&](const smt::Seq<GenRef>& s) {
                     NameList mid = fresh_.next_list(smt_typecheck(s.first, sig_).coarity);
                     auto lhs = unbox(a, s.first, mid);
                     return BaseNmt::seq(lhs, unbox(mid, s.second, b));
                   },
                   [&](const smt::Tensor<GenRef>& s) {
                     auto ty = smt_typecheck(s.first, sig_);
                     auto lhs = unbox(a.slice(0, ty.arity), s.first, b.slice(0, ty.coarity));
                     return BaseNmt::tensor(lhs, unbox(a.slice(ty.arity, a.size() - ty.arity), s.second,
                                                       b.slice(ty.coarity, b.size() - ty.coarity)));
                   }},
        f.node());
  }

  const Signature& sig_;
  FreshSupply& fresh_;
};

BaseSmt then_if_needed(const BaseSmt& pre, const BaseSmt& core, const BaseSmt& post, bool keep_pre, bool keep_post) {
  BaseSmt out = keep_pre ? BaseSmt::seq(pre, core) : core;
  return keep_post ? BaseSmt::seq(out, post) : out;
}

class SmtNormalizer {
 public:
  explicit SmtNormalizer(const Signature& sig) : sig_(sig) {}

  BaseSmt run(const DiaSmt& t) {
    return std::visit(overloaded{[&](const smt::Gen<DiaBox>& g) { return undia(g.value.in, g.value.body, g.value.out); },
                                 [](const smt::Id&) { return BaseSmt::id(); },
                                 [](const smt::Sym&) { return BaseSmt::sym(); },
                                 [](const smt::Empty&) { return BaseSmt::empty(); },
                                 [&](const smt::Seq<DiaBox>& s) { return BaseSmt::seq(run(s.first), run(s.second)); },
                                 [&](const smt::Tensor<DiaBox>& s) {
                                   return BaseSmt::tensor(run(s.first), run(s.second));
                                 }},
                      t.node());
  }

 private:
  // Realignments between equal lists are the identity and are left out.
  BaseSmt undia(const NameList& a, const BaseNmt& f, const NameList& b) {
    return std::visit(
        overloaded{[&](const nmt::Gen<GenRef>& g) {
                     return then_if_needed(smt_realignment<GenRef>(a, g.in), BaseSmt::gen(g.value),
                                           smt_realignment<GenRef>(g.out, b), a != g.in, g.out != b);
                   },
                   [](const nmt::Id&) { return BaseSmt::id(); },
                   [](const nmt::Delta&) { return BaseSmt::id(); },
                   [](const nmt::Empty&) { return BaseSmt::empty(); },
                   [&](const nmt::Seq<GenRef>& s) {
                     NameList mid = sorted_list(nmt_typecheck(s.first, sig_).cod);
                     return BaseSmt::seq(undia(a, s.first, mid), undia(mid, s.second, b));
                   },
                   [&](const nmt::Tensor<GenRef>& s) {
                     auto t1 = nmt_typecheck(s.first, sig_);
                     auto t2 = nmt_typecheck(s.second, sig_);
                     NameList a1 = sorted_list(t1.dom), a2 = sorted_list(t2.dom);
                     NameList b1 = sorted_list(t1.cod), b2 = sorted_list(t2.cod);
                     NameList a12 = concat(a1, a2), b12 = concat(b1, b2);
                     BaseSmt core = BaseSmt::tensor(undia(a1, s.first, b1), undia(a2, s.second, b2));
                     return then_if_needed(smt_realignment<GenRef>(a, a12), core, smt_realignment<GenRef>(b12, b),
                                           a != a12, b12 != b);
                   },
                   [&](const nmt::Swap<GenRef>& s) {
                     Perm p = Perm::transposition(s.a, s.b);
                     return undia(act(p, a), s.body, act(p, b));
                   }},
        f.node());
  }

  const Signature& sig_;
};

}  // namespace

BaseNmt nf_nmt(const BoxedNmt& t, const Signature& sig, FreshSupply& fresh) {
  boxed_typecheck(t, sig);
  return NmtNormalizer(sig, fresh).run(t);
}

BaseNmt nf_nmt(const BoxedNmt& t, const Signature& sig) {
  FreshSupply fresh;
  fresh.avoid(names_of(t));
  return nf_nmt(t, sig, fresh);
}

BoxedNmt iota_nmt(const BaseNmt& t) {
  return std::visit(overloaded{[](const nmt::Gen<GenRef>& g) { return box(g.in, BaseSmt::gen(g.value), g.out); },
                               [](const nmt::Id& i) { return BoxedNmt::id(i.wire); },
                               [](const nmt::Delta& d) { return BoxedNmt::delta(d.from, d.to); },
                               [](const nmt::Empty&) { return BoxedNmt::empty(); },
                               [](const nmt::Seq<GenRef>& s) {
                                 return BoxedNmt::seq(iota_nmt(s.first), iota_nmt(s.second));
                               },
                               [](const nmt::Tensor<GenRef>& s) {
                                 return BoxedNmt::tensor(iota_nmt(s.first), iota_nmt(s.second));
                               },
                               [](const nmt::Swap<GenRef>& s) { return BoxedNmt::swap(s.a, s.b, iota_nmt(s.body)); }},
                    t.node());
}

BaseSmt nf_smt(const DiaSmt& t, const Signature& sig) {
  dia_typecheck(t, sig);
  return SmtNormalizer(sig).run(t);
}

DiaSmt iota_smt(const BaseSmt& t, const Signature& sig, FreshSupply& fresh) {
  return std::visit(overloaded{[&](const smt::Gen<GenRef>& g) {
                                 const auto& d = sig.at(g.value.name);
                                 NameList a = fresh.next_list(d.arity);
                                 NameList b = fresh.next_list(d.coarity);
                                 return dia(a, BaseNmt::gen(a, g.value, b), b);
                               },
                               [](const smt::Id&) { return DiaSmt::id(); },
                               [](const smt::Sym&) { return DiaSmt::sym(); },
                               [](const smt::Empty&) { return DiaSmt::empty(); },
                               [&](const smt::Seq<GenRef>& s) {
                                 auto lhs = iota_smt(s.first, sig, fresh);
                                 return DiaSmt::seq(lhs, iota_smt(s.second, sig, fresh));
                               },
                               [&](const smt::Tensor<GenRef>& s) {
                                 auto lhs = iota_smt(s.first, sig, fresh);
                                 return DiaSmt::tensor(lhs, iota_smt(s.second, sig, fresh));
                               }},
                    t.node());
}

DiaSmt iota_smt(const BaseSmt& t, const Signature& sig) {
  FreshSupply fresh;
  return iota_smt(t, sig, fresh);
}

NamedArrow eval_boxed(const BoxedNmt& t, ModelTag base) {
  if (is_nominal(base)) throw Error(ErrorKind::ModelMismatch, "boxes need an ordinal base model");
  return eval_nmt_with(t, [base](const BaseSmt& f) { return eval_smt(f, base); });
}

Arrow eval_dia(const DiaSmt& t, ModelTag base) {
  if (!is_nominal(base)) throw Error(ErrorKind::ModelMismatch, "dia boxes need a nominal base model");
  return eval_smt_with(t, [base](const DiaBox& d) { return semantic_unbox(d.in, eval_nmt(d.body, base), d.out); });
}

std::vector<Equation<BoxedNmt>> box_equations(const std::vector<SmtEquation>& eqs, const Signature& sig,
                                              FreshSupply& fresh) {
  std::vector<Equation<BoxedNmt>> out;
  for (const auto& eq : eqs) {
    auto tl = smt_typecheck(eq.lhs, sig);
    auto tr = smt_typecheck(eq.rhs, sig);
    if (tl != tr) throw Error(ErrorKind::TypeMismatch, "equation sides have different types");
    NameList a = fresh.next_list(tl.arity);
    NameList b = fresh.next_list(tl.coarity);
    out.push_back({box(a, eq.lhs, b), box(a, eq.rhs, b)});
  }
  return out;
}

std::vector<Equation<DiaSmt>> dia_equations(const std::vector<NmtEquation>& eqs, const Signature& sig) {
  std::vector<Equation<DiaSmt>> out;
  for (const auto& eq : eqs) {
    auto tl = nmt_typecheck(eq.lhs, sig);
    auto tr = nmt_typecheck(eq.rhs, sig);
    if (tl != tr) throw Error(ErrorKind::TypeMismatch, "equation sides have different types");
    NameList a = sorted_list(tl.dom), b = sorted_list(tl.cod);
    out.push_back({dia(a, eq.lhs, b), dia(a, eq.rhs, b)});
  }
  return out;
}

TheoryPresentation translate_theory_nmt(const TheoryPresentation& th) {
  if (th.kind != Calculus::Smt) throw Error(ErrorKind::InvalidTheory, "Nmt expects an ordinal theory");
  TheoryPresentation out;
  out.name = "Nmt(" + th.name + ")";
  out.kind = Calculus::Nmt;
  out.signature = th.signature;
  if (th.model) out.model = nominal_counterpart(*th.model);
  FreshSupply fresh;
  for (const auto& eq : box_equations(th.smt_equations, th.signature, fresh))
    out.nmt_equations.push_back({nf_nmt(eq.lhs, th.signature, fresh), nf_nmt(eq.rhs, th.signature, fresh)});
  return out;
}

TheoryPresentation translate_theory_smt(const TheoryPresentation& th) {
  if (th.kind != Calculus::Nmt) throw Error(ErrorKind::InvalidTheory, "Smt expects a nominal theory");
  TheoryPresentation out;
  out.name = "Smt(" + th.name + ")";
  out.kind = Calculus::Smt;
  out.signature = th.signature;
  if (th.model) out.model = ordinal_counterpart(*th.model);
  for (const auto& eq : dia_equations(th.nmt_equations, th.signature))
    out.smt_equations.push_back({nf_smt(eq.lhs, th.signature), nf_smt(eq.rhs, th.signature)});
  return out;
}

std::string print_term(const BoxedNmt& t) {
  return print_nmt_with<BaseSmt>(t, [](const BaseSmt& f) { return "{" + print_term(f) + "}"; });
}

std::string print_term(const DiaSmt& t) {
  return print_smt_with<DiaBox>(t, [](const DiaBox& d) {
    return "<" + print_names(d.in) + "]{" + print_term(d.body) + "}[" + print_names(d.out) + ">";
  });
}

}  // namespace nomprop
