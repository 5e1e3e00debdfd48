#pragma once

// Text syntax for both calculi.
//
//   SMT:  term  := tens (';' tens)*        tens := atom ('*' atom)*
//         atom  := 'id' | 'sym' | 'sym' '(' INT ',' INT ')' | IDENT | '(' term ')'
//   NMT:  nterm := ntens (';' ntens)*      ntens := natom ('*' natom)*
//         natom := 'id' '(' NAME ')' | 'd' '(' NAME ',' NAME ')' | 'empty'
//                | '[' names '>' IDENT '<' names ']' | '(' NAME NAME ')' natom | '(' nterm ')'
//
// The unit of the ordinal tensor has no atom of its own and prints as sym(0,0).

#include <functional>
#include <string>
#include <string_view>

#include "nomprop/term.hpp"

namespace nomprop {

/// With a signature, generators are resolved and every subterm is typechecked as
/// soon as it is parsed, so type errors carry the span of the offending subterm.
BaseSmt parse_smt(std::string_view text, const Signature* sig = nullptr);
BaseNmt parse_nmt(std::string_view text, const Signature* sig = nullptr);

/// Generator arities as used in `t`; throws InvalidTheory if one symbol is used at two arities.
Signature infer_signature(const BaseNmt& t);
Signature infer_signature(const BaseSmt& t, const Signature& known);

std::string print_names(const NameList& l);

template <class G>
using PayloadPrinter = std::function<std::string(const G&)>;

template <class G>
std::string print_smt_with(const SmtTerm<G>& t, const PayloadPrinter<G>& payload) {
  return std::visit(overloaded{[&](const smt::Gen<G>& g) { return payload(g.value); },
                               [](const smt::Id&) -> std::string { return "id"; },
                               [](const smt::Sym&) -> std::string { return "sym"; },
                               [](const smt::Empty&) -> std::string { return "sym(0,0)"; },
                               [&](const smt::Seq<G>& s) {
                                 std::string rhs = print_smt_with(s.second, payload);
                                 if (s.second.template is<smt::Seq<G>>()) rhs = "(" + rhs + ")";
                                 return print_smt_with(s.first, payload) + " ; " + rhs;
                               },
                               [&](const smt::Tensor<G>& s) {
                                 std::string lhs = print_smt_with(s.first, payload);
                                 std::string rhs = print_smt_with(s.second, payload);
                                 if (s.first.template is<smt::Seq<G>>()) lhs = "(" + lhs + ")";
                                 if (s.second.template is<smt::Seq<G>>() || s.second.template is<smt::Tensor<G>>())
                                   rhs = "(" + rhs + ")";
                                 return lhs + " * " + rhs;
                               }},
                    t.node());
}

template <class G>
std::string print_nmt_with(const NmtTerm<G>& t, const PayloadPrinter<G>& payload) {
  auto compound = [](const NmtTerm<G>& u) { return u.template is<nmt::Seq<G>>() || u.template is<nmt::Tensor<G>>(); };
  return std::visit(
      overloaded{[&](const nmt::Gen<G>& g) {
                   return "[" + print_names(g.in) + "> " + payload(g.value) + " <" + print_names(g.out) + "]";
                 },
                 [](const nmt::Id& i) { return "id(" + i.wire.str() + ")"; },
                 [](const nmt::Delta& d) { return "d(" + d.from.str() + "," + d.to.str() + ")"; },
                 [](const nmt::Empty&) -> std::string { return "empty"; },
                 [&](const nmt::Seq<G>& s) {
                   std::string rhs = print_nmt_with(s.second, payload);
                   if (s.second.template is<nmt::Seq<G>>()) rhs = "(" + rhs + ")";
                   return print_nmt_with(s.first, payload) + " ; " + rhs;
                 },
                 [&](const nmt::Tensor<G>& s) {
                   std::string lhs = print_nmt_with(s.first, payload);
                   std::string rhs = print_nmt_with(s.second, payload);
                   if (s.first.template is<nmt::Seq<G>>()) lhs = "(" + lhs + ")";
                   if (compound(s.second)) rhs = "(" + rhs + ")";
                   return lhs + " * " + rhs;
                 },
                 [&](const nmt::Swap<G>& s) {
                   std::string body = print_nmt_with(s.body, payload);
                   if (compound(s.body)) body = "(" + body + ")";
                   return "(" + s.a.str() + " " + s.b.str() + ") " + body;
                 }},
      t.node());
}

std::string print_term(const BaseSmt& t);
std::string print_term(const BaseNmt& t);

}  // namespace nomprop
