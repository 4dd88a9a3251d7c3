#pragma once

// Core ASTs for the merge language and the standard target language,
// plus the structural operations everything else is built on:
// equality, alpha-equivalence, free variables, capture-avoiding
// substitution, value predicates, and the type translation.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace icc {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

enum class BaseTy { Unit, Int, Real, String, Nat, Pos };

inline const char* base_ty_name(BaseTy b) {
  switch (b) {
    case BaseTy::Unit: return "unit";
    case BaseTy::Int: return "int";
    case BaseTy::Real: return "real";
    case BaseTy::String: return "string";
    case BaseTy::Nat: return "nat";
    case BaseTy::Pos: return "pos";
  }
  return "?";
}

struct SourceType;
using TypePtr = std::shared_ptr<const SourceType>;

// Binary constructors only; n-ary `&`/`\/` are left-nested by the parser.
struct SourceType {
  enum class Tag { Top, Arrow, Intersect, Union, Base, Record, List };
  Tag tag;
  BaseTy base = BaseTy::Unit;  // Base
  std::string label;           // Record
  TypePtr a, b;                // Arrow(dom, cod); Intersect/Union(l, r); Record/List payload in a
};

inline TypePtr ty_top() {
  static TypePtr t = std::make_shared<SourceType>(SourceType{SourceType::Tag::Top});
  return t;
}
inline TypePtr ty_arrow(TypePtr dom, TypePtr cod) {
  return std::make_shared<SourceType>(
      SourceType{SourceType::Tag::Arrow, BaseTy::Unit, "", std::move(dom), std::move(cod)});
}
inline TypePtr ty_sect(TypePtr l, TypePtr r) {
  return std::make_shared<SourceType>(
      SourceType{SourceType::Tag::Intersect, BaseTy::Unit, "", std::move(l), std::move(r)});
}
inline TypePtr ty_union(TypePtr l, TypePtr r) {
  return std::make_shared<SourceType>(
      SourceType{SourceType::Tag::Union, BaseTy::Unit, "", std::move(l), std::move(r)});
}
inline TypePtr ty_base(BaseTy b) {
  return std::make_shared<SourceType>(SourceType{SourceType::Tag::Base, b});
}
inline TypePtr ty_record(std::string label, TypePtr payload) {
  return std::make_shared<SourceType>(
      SourceType{SourceType::Tag::Record, BaseTy::Unit, std::move(label), std::move(payload)});
}
inline TypePtr ty_list(TypePtr elem) {
  return std::make_shared<SourceType>(
      SourceType{SourceType::Tag::List, BaseTy::Unit, "", std::move(elem)});
}

// Structural equality, no normalization.
inline bool type_eq(const TypePtr& x, const TypePtr& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->tag != y->tag) return false;
  switch (x->tag) {
    case SourceType::Tag::Top: return true;
    case SourceType::Tag::Base: return x->base == y->base;
    case SourceType::Tag::Record:
      return x->label == y->label && type_eq(x->a, y->a);
    case SourceType::Tag::List: return type_eq(x->a, y->a);
    case SourceType::Tag::Arrow:
    case SourceType::Tag::Intersect:
    case SourceType::Tag::Union:
      return type_eq(x->a, y->a) && type_eq(x->b, y->b);
  }
  return false;
}

inline int type_size(const TypePtr& t) {
  if (!t) return 0;
  switch (t->tag) {
    case SourceType::Tag::Top:
    case SourceType::Tag::Base: return 1;
    case SourceType::Tag::Record:
    case SourceType::Tag::List: return 1 + type_size(t->a);
    default: return 1 + type_size(t->a) + type_size(t->b);
  }
}

// ---------------------------------------------------------------------------
// Target types
// ---------------------------------------------------------------------------

enum class TBase { Int, Real, String };

inline const char* tbase_name(TBase b) {
  switch (b) {
    case TBase::Int: return "int";
    case TBase::Real: return "real";
    case TBase::String: return "string";
  }
  return "?";
}

struct TargetType;
using TTypePtr = std::shared_ptr<const TargetType>;

struct TargetType {
  enum class Tag { Unit, Arrow, Product, Sum, Base, Record, List };
  Tag tag;
  TBase base = TBase::Int;
  std::string label;
  TTypePtr a, b;
};

inline TTypePtr tty_unit() {
  static TTypePtr t = std::make_shared<TargetType>(TargetType{TargetType::Tag::Unit});
  return t;
}
inline TTypePtr tty_arrow(TTypePtr dom, TTypePtr cod) {
  return std::make_shared<TargetType>(
      TargetType{TargetType::Tag::Arrow, TBase::Int, "", std::move(dom), std::move(cod)});
}
inline TTypePtr tty_prod(TTypePtr l, TTypePtr r) {
  return std::make_shared<TargetType>(
      TargetType{TargetType::Tag::Product, TBase::Int, "", std::move(l), std::move(r)});
}
inline TTypePtr tty_sum(TTypePtr l, TTypePtr r) {
  return std::make_shared<TargetType>(
      TargetType{TargetType::Tag::Sum, TBase::Int, "", std::move(l), std::move(r)});
}
inline TTypePtr tty_base(TBase b) {
  return std::make_shared<TargetType>(TargetType{TargetType::Tag::Base, b});
}
inline TTypePtr tty_record(std::string label, TTypePtr payload) {
  return std::make_shared<TargetType>(
      TargetType{TargetType::Tag::Record, TBase::Int, std::move(label), std::move(payload)});
}
inline TTypePtr tty_list(TTypePtr elem) {
  return std::make_shared<TargetType>(
      TargetType{TargetType::Tag::List, TBase::Int, "", std::move(elem)});
}

inline bool ttype_eq(const TTypePtr& x, const TTypePtr& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->tag != y->tag) return false;
  switch (x->tag) {
    case TargetType::Tag::Unit: return true;
    case TargetType::Tag::Base: return x->base == y->base;
    case TargetType::Tag::Record:
      return x->label == y->label && ttype_eq(x->a, y->a);
    case TargetType::Tag::List: return ttype_eq(x->a, y->a);
    default: return ttype_eq(x->a, y->a) && ttype_eq(x->b, y->b);
  }
}

// ---------------------------------------------------------------------------
// Type translation: intersections become products, unions become sums.
// The refinement atoms nat/pos collapse to target int.
// ---------------------------------------------------------------------------

inline TTypePtr type_translate(const TypePtr& t) {
  switch (t->tag) {
    case SourceType::Tag::Top: return tty_unit();
    case SourceType::Tag::Arrow:
      return tty_arrow(type_translate(t->a), type_translate(t->b));
    case SourceType::Tag::Intersect:
      return tty_prod(type_translate(t->a), type_translate(t->b));
    case SourceType::Tag::Union:
      return tty_sum(type_translate(t->a), type_translate(t->b));
    case SourceType::Tag::Base:
      switch (t->base) {
        case BaseTy::Unit: return tty_unit();
        case BaseTy::Int:
        case BaseTy::Nat:
        case BaseTy::Pos: return tty_base(TBase::Int);
        case BaseTy::Real: return tty_base(TBase::Real);
        case BaseTy::String: return tty_base(TBase::String);
      }
      return tty_unit();
    case SourceType::Tag::Record:
      return tty_record(t->label, type_translate(t->a));
    case SourceType::Tag::List: return tty_list(type_translate(t->a));
  }
  return tty_unit();
}

// ---------------------------------------------------------------------------
// Source expressions
// ---------------------------------------------------------------------------

struct SourceExpr;
using ExprPtr = std::shared_ptr<const SourceExpr>;

struct SourceExpr {
  enum class Tag {
    Var, Unit, Lam, App, Fix, Merge,
    IntLit, RealLit, StrLit,
    Record, FieldProj, Let, Anno,
    Nil, Cons, ListCase, PrimApp
  };
  Tag tag;
  std::string name;   // Var / binder of Lam,Fix,Let / label of Record,FieldProj / head binder of ListCase / prim name
  std::string name2;  // tail binder of ListCase
  ExprPtr a, b, c;    // children: Lam(body=a); App(f=a,arg=b); Merge(a,b); Let(bound=a,body=b);
                      // Anno(a); Record(payload=a); FieldProj(subject=a); Cons(head=a,tail=b);
                      // ListCase(subject=a, nilArm=b, consArm=c)
  BigInt int_val;
  double real_val = 0.0;
  std::string real_text;  // literal spelling, preserved for printing
  std::string str_val;
  TypePtr type;  // Anno
  std::vector<ExprPtr> args;  // PrimApp
  int line = 0, col = 0;
};

namespace detail {
inline ExprPtr mk(SourceExpr e) { return std::make_shared<SourceExpr>(std::move(e)); }
}  // namespace detail

inline ExprPtr e_var(std::string name, int line = 0, int col = 0) {
  SourceExpr e{SourceExpr::Tag::Var};
  e.name = std::move(name);
  e.line = line; e.col = col;
  return detail::mk(std::move(e));
}
inline ExprPtr e_unit() {
  SourceExpr e{SourceExpr::Tag::Unit};
  return detail::mk(std::move(e));
}
inline ExprPtr e_lam(std::string binder, ExprPtr body) {
  SourceExpr e{SourceExpr::Tag::Lam};
  e.name = std::move(binder); e.a = std::move(body);
  return detail::mk(std::move(e));
}
inline ExprPtr e_app(ExprPtr f, ExprPtr arg) {
  SourceExpr e{SourceExpr::Tag::App};
  e.a = std::move(f); e.b = std::move(arg);
  return detail::mk(std::move(e));
}
inline ExprPtr e_fix(std::string binder, ExprPtr body) {
  SourceExpr e{SourceExpr::Tag::Fix};
  e.name = std::move(binder); e.a = std::move(body);
  return detail::mk(std::move(e));
}
inline ExprPtr e_merge(ExprPtr l, ExprPtr r) {
  SourceExpr e{SourceExpr::Tag::Merge};
  e.a = std::move(l); e.b = std::move(r);
  return detail::mk(std::move(e));
}
inline ExprPtr e_int(BigInt v) {
  SourceExpr e{SourceExpr::Tag::IntLit};
  e.int_val = std::move(v);
  return detail::mk(std::move(e));
}
inline ExprPtr e_int(long v) { return e_int(BigInt(v)); }
inline ExprPtr e_real(double v, std::string text) {
  SourceExpr e{SourceExpr::Tag::RealLit};
  e.real_val = v; e.real_text = std::move(text);
  return detail::mk(std::move(e));
}
inline ExprPtr e_str(std::string s) {
  SourceExpr e{SourceExpr::Tag::StrLit};
  e.str_val = std::move(s);
  return detail::mk(std::move(e));
}
inline ExprPtr e_record(std::string label, ExprPtr payload) {
  SourceExpr e{SourceExpr::Tag::Record};
  e.name = std::move(label); e.a = std::move(payload);
  return detail::mk(std::move(e));
}
inline ExprPtr e_proj(ExprPtr subject, std::string label) {
  SourceExpr e{SourceExpr::Tag::FieldProj};
  e.name = std::move(label); e.a = std::move(subject);
  return detail::mk(std::move(e));
}
inline ExprPtr e_let(std::string binder, ExprPtr bound, ExprPtr body) {
  SourceExpr e{SourceExpr::Tag::Let};
  e.name = std::move(binder); e.a = std::move(bound); e.b = std::move(body);
  return detail::mk(std::move(e));
}
inline ExprPtr e_anno(ExprPtr subject, TypePtr ty) {
  SourceExpr e{SourceExpr::Tag::Anno};
  e.a = std::move(subject); e.type = std::move(ty);
  return detail::mk(std::move(e));
}
inline ExprPtr e_nil() {
  SourceExpr e{SourceExpr::Tag::Nil};
  return detail::mk(std::move(e));
}
inline ExprPtr e_cons(ExprPtr head, ExprPtr tail) {
  SourceExpr e{SourceExpr::Tag::Cons};
  e.a = std::move(head); e.b = std::move(tail);
  return detail::mk(std::move(e));
}
inline ExprPtr e_lcase(ExprPtr subject, ExprPtr nil_arm, std::string hb, std::string tb,
                       ExprPtr cons_arm) {
  SourceExpr e{SourceExpr::Tag::ListCase};
  e.a = std::move(subject); e.b = std::move(nil_arm); e.c = std::move(cons_arm);
  e.name = std::move(hb); e.name2 = std::move(tb);
  return detail::mk(std::move(e));
}
inline ExprPtr e_prim(std::string prim, std::vector<ExprPtr> args) {
  SourceExpr e{SourceExpr::Tag::PrimApp};
  e.name = std::move(prim); e.args = std::move(args);
  return detail::mk(std::move(e));
}

// ---------------------------------------------------------------------------
// Target terms
// ---------------------------------------------------------------------------

struct TargetTerm;
using TermPtr = std::shared_ptr<const TargetTerm>;

struct TargetTerm {
  enum class Tag {
    Var, Unit, Lam, App, Fix,
    Pair, Proj, Inj, Case,
    IntLit, RealLit, StrLit,
    Record, FieldProj, Let,
    Nil, Cons, ListCase, PrimApp
  };
  Tag tag;
  std::string name;   // Var / binders / labels / prim name / Case left binder
  std::string name2;  // Case right binder / ListCase tail binder
  TermPtr a, b, c;    // Case(scrutinee=a, arm1=b, arm2=c); Let(bound=a, body=b)
  int idx = 0;        // Proj / Inj index, 1 or 2
  BigInt int_val;
  double real_val = 0.0;
  std::string real_text;
  std::string str_val;
  TTypePtr let_ty;  // optional binder annotation, kept so printed programs typecheck
  std::vector<TermPtr> args;
};

namespace detail {
inline TermPtr mkt(TargetTerm m) { return std::make_shared<TargetTerm>(std::move(m)); }
}  // namespace detail

inline TermPtr t_var(std::string name) {
  TargetTerm m{TargetTerm::Tag::Var};
  m.name = std::move(name);
  return detail::mkt(std::move(m));
}
inline TermPtr t_unit() {
  TargetTerm m{TargetTerm::Tag::Unit};
  return detail::mkt(std::move(m));
}
inline TermPtr t_lam(std::string binder, TermPtr body) {
  TargetTerm m{TargetTerm::Tag::Lam};
  m.name = std::move(binder); m.a = std::move(body);
  return detail::mkt(std::move(m));
}
inline TermPtr t_app(TermPtr f, TermPtr arg) {
  TargetTerm m{TargetTerm::Tag::App};
  m.a = std::move(f); m.b = std::move(arg);
  return detail::mkt(std::move(m));
}
inline TermPtr t_fix(std::string binder, TermPtr body) {
  TargetTerm m{TargetTerm::Tag::Fix};
  m.name = std::move(binder); m.a = std::move(body);
  return detail::mkt(std::move(m));
}
inline TermPtr t_pair(TermPtr l, TermPtr r) {
  TargetTerm m{TargetTerm::Tag::Pair};
  m.a = std::move(l); m.b = std::move(r);
  return detail::mkt(std::move(m));
}
inline TermPtr t_proj(int k, TermPtr subject) {
  TargetTerm m{TargetTerm::Tag::Proj};
  m.idx = k; m.a = std::move(subject);
  return detail::mkt(std::move(m));
}
inline TermPtr t_inj(int k, TermPtr payload) {
  TargetTerm m{TargetTerm::Tag::Inj};
  m.idx = k; m.a = std::move(payload);
  return detail::mkt(std::move(m));
}
inline TermPtr t_case(TermPtr scrutinee, std::string b1, TermPtr arm1, std::string b2,
                      TermPtr arm2) {
  TargetTerm m{TargetTerm::Tag::Case};
  m.a = std::move(scrutinee); m.b = std::move(arm1); m.c = std::move(arm2);
  m.name = std::move(b1); m.name2 = std::move(b2);
  return detail::mkt(std::move(m));
}
inline TermPtr t_int(BigInt v) {
  TargetTerm m{TargetTerm::Tag::IntLit};
  m.int_val = std::move(v);
  return detail::mkt(std::move(m));
}
inline TermPtr t_int(long v) { return t_int(BigInt(v)); }
inline TermPtr t_real(double v, std::string text) {
  TargetTerm m{TargetTerm::Tag::RealLit};
  m.real_val = v; m.real_text = std::move(text);
  return detail::mkt(std::move(m));
}
inline TermPtr t_str(std::string s) {
  TargetTerm m{TargetTerm::Tag::StrLit};
  m.str_val = std::move(s);
  return detail::mkt(std::move(m));
}
inline TermPtr t_record(std::string label, TermPtr payload) {
  TargetTerm m{TargetTerm::Tag::Record};
  m.name = std::move(label); m.a = std::move(payload);
  return detail::mkt(std::move(m));
}
inline TermPtr t_proj_field(TermPtr subject, std::string label) {
  TargetTerm m{TargetTerm::Tag::FieldProj};
  m.name = std::move(label); m.a = std::move(subject);
  return detail::mkt(std::move(m));
}
inline TermPtr t_let(std::string binder, TTypePtr ty, TermPtr bound, TermPtr body) {
  TargetTerm m{TargetTerm::Tag::Let};
  m.name = std::move(binder); m.let_ty = std::move(ty);
  m.a = std::move(bound); m.b = std::move(body);
  return detail::mkt(std::move(m));
}
inline TermPtr t_nil() {
  TargetTerm m{TargetTerm::Tag::Nil};
  return detail::mkt(std::move(m));
}
inline TermPtr t_cons(TermPtr head, TermPtr tail) {
  TargetTerm m{TargetTerm::Tag::Cons};
  m.a = std::move(head); m.b = std::move(tail);
  return detail::mkt(std::move(m));
}
inline TermPtr t_lcase(TermPtr subject, TermPtr nil_arm, std::string hb, std::string tb,
                       TermPtr cons_arm) {
  TargetTerm m{TargetTerm::Tag::ListCase};
  m.a = std::move(subject); m.b = std::move(nil_arm); m.c = std::move(cons_arm);
  m.name = std::move(hb); m.name2 = std::move(tb);
  return detail::mkt(std::move(m));
}
inline TermPtr t_prim(std::string prim, std::vector<TermPtr> args) {
  TargetTerm m{TargetTerm::Tag::PrimApp};
  m.name = std::move(prim); m.args = std::move(args);
  return detail::mkt(std::move(m));
}

// ---------------------------------------------------------------------------
// Value predicates
// ---------------------------------------------------------------------------

// v ::= x | () | \x.e | v1,,v2, extended with literals, records of values,
// nil and cons of values.  A merge of values counts as a value even though
// it can still step.
inline bool is_source_value(const ExprPtr& e) {
  switch (e->tag) {
    case SourceExpr::Tag::Var:
    case SourceExpr::Tag::Unit:
    case SourceExpr::Tag::Lam:
    case SourceExpr::Tag::IntLit:
    case SourceExpr::Tag::RealLit:
    case SourceExpr::Tag::StrLit:
    case SourceExpr::Tag::Nil:
      return true;
    case SourceExpr::Tag::Merge:
    case SourceExpr::Tag::Cons:
      return is_source_value(e->a) && is_source_value(e->b);
    case SourceExpr::Tag::Record:
      return is_source_value(e->a);
    default:
      return false;
  }
}

// W ::= x | () | \x.M | <W1,W2> | inj_k W, plus literal/record/list values.
inline bool is_target_value(const TermPtr& m) {
  switch (m->tag) {
    case TargetTerm::Tag::Var:
    case TargetTerm::Tag::Unit:
    case TargetTerm::Tag::Lam:
    case TargetTerm::Tag::IntLit:
    case TargetTerm::Tag::RealLit:
    case TargetTerm::Tag::StrLit:
    case TargetTerm::Tag::Nil:
      return true;
    case TargetTerm::Tag::Pair:
    case TargetTerm::Tag::Cons:
      return is_target_value(m->a) && is_target_value(m->b);
    case TargetTerm::Tag::Inj:
    case TargetTerm::Tag::Record:
      return is_target_value(m->a);
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------
// Free variables and closedness
// ---------------------------------------------------------------------------

inline void free_vars_into(const ExprPtr& e, std::vector<std::string>& bound,
                           std::set<std::string>& out) {
  auto is_bound = [&](const std::string& n) {
    return std::find(bound.begin(), bound.end(), n) != bound.end();
  };
  switch (e->tag) {
    case SourceExpr::Tag::Var:
      if (!is_bound(e->name)) out.insert(e->name);
      break;
    case SourceExpr::Tag::Lam:
    case SourceExpr::Tag::Fix:
      bound.push_back(e->name);
      free_vars_into(e->a, bound, out);
      bound.pop_back();
      break;
    case SourceExpr::Tag::Let:
      free_vars_into(e->a, bound, out);
      bound.push_back(e->name);
      free_vars_into(e->b, bound, out);
      bound.pop_back();
      break;
    case SourceExpr::Tag::ListCase:
      free_vars_into(e->a, bound, out);
      free_vars_into(e->b, bound, out);
      bound.push_back(e->name);
      bound.push_back(e->name2);
      free_vars_into(e->c, bound, out);
      bound.pop_back();
      bound.pop_back();
      break;
    case SourceExpr::Tag::PrimApp:
      for (auto& x : e->args) free_vars_into(x, bound, out);
      break;
    default:
      if (e->a) free_vars_into(e->a, bound, out);
      if (e->b) free_vars_into(e->b, bound, out);
      if (e->c) free_vars_into(e->c, bound, out);
      break;
  }
}

inline std::set<std::string> free_vars(const ExprPtr& e) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  free_vars_into(e, bound, out);
  return out;
}

inline bool is_closed(const ExprPtr& e) { return free_vars(e).empty(); }

inline void free_vars_into(const TermPtr& m, std::vector<std::string>& bound,
                           std::set<std::string>& out) {
  auto is_bound = [&](const std::string& n) {
    return std::find(bound.begin(), bound.end(), n) != bound.end();
  };
  switch (m->tag) {
    case TargetTerm::Tag::Var:
      if (!is_bound(m->name)) out.insert(m->name);
      break;
    case TargetTerm::Tag::Lam:
    case TargetTerm::Tag::Fix:
      bound.push_back(m->name);
      free_vars_into(m->a, bound, out);
      bound.pop_back();
      break;
    case TargetTerm::Tag::Let:
      free_vars_into(m->a, bound, out);
      bound.push_back(m->name);
      free_vars_into(m->b, bound, out);
      bound.pop_back();
      break;
    case TargetTerm::Tag::Case:
      free_vars_into(m->a, bound, out);
      bound.push_back(m->name);
      free_vars_into(m->b, bound, out);
      bound.pop_back();
      bound.push_back(m->name2);
      free_vars_into(m->c, bound, out);
      bound.pop_back();
      break;
    case TargetTerm::Tag::ListCase:
      free_vars_into(m->a, bound, out);
      free_vars_into(m->b, bound, out);
      bound.push_back(m->name);
      bound.push_back(m->name2);
      free_vars_into(m->c, bound, out);
      bound.pop_back();
      bound.pop_back();
      break;
    case TargetTerm::Tag::PrimApp:
      for (auto& x : m->args) free_vars_into(x, bound, out);
      break;
    default:
      if (m->a) free_vars_into(m->a, bound, out);
      if (m->b) free_vars_into(m->b, bound, out);
      if (m->c) free_vars_into(m->c, bound, out);
      break;
  }
}

inline std::set<std::string> free_vars(const TermPtr& m) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  free_vars_into(m, bound, out);
  return out;
}

inline bool is_closed(const TermPtr& m) { return free_vars(m).empty(); }

// ---------------------------------------------------------------------------
// Alpha-equivalence
// ---------------------------------------------------------------------------

namespace detail {

// Rename environment: pairs of bound names, scanned right to left.
struct AlphaEnv {
  std::vector<std::pair<std::string, std::string>> pairs;

  bool var_eq(const std::string& x, const std::string& y) const {
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
      if (it->first == x || it->second == y) return it->first == x && it->second == y;
    }
    return x == y;  // both free
  }
  void push(const std::string& x, const std::string& y) { pairs.emplace_back(x, y); }
  void pop() { pairs.pop_back(); }
};

inline bool alpha_eq_rec(const ExprPtr& x, const ExprPtr& y, AlphaEnv& env) {
  if (x->tag != y->tag) return false;
  switch (x->tag) {
    case SourceExpr::Tag::Var: return env.var_eq(x->name, y->name);
    case SourceExpr::Tag::Unit:
    case SourceExpr::Tag::Nil: return true;
    case SourceExpr::Tag::IntLit: return x->int_val == y->int_val;
    case SourceExpr::Tag::RealLit:
      return x->real_val == y->real_val && x->real_text == y->real_text;
    case SourceExpr::Tag::StrLit: return x->str_val == y->str_val;
    case SourceExpr::Tag::Lam:
    case SourceExpr::Tag::Fix: {
      env.push(x->name, y->name);
      bool ok = alpha_eq_rec(x->a, y->a, env);
      env.pop();
      return ok;
    }
    case SourceExpr::Tag::Let: {
      if (!alpha_eq_rec(x->a, y->a, env)) return false;
      env.push(x->name, y->name);
      bool ok = alpha_eq_rec(x->b, y->b, env);
      env.pop();
      return ok;
    }
    case SourceExpr::Tag::App:
    case SourceExpr::Tag::Merge:
    case SourceExpr::Tag::Cons:
      return alpha_eq_rec(x->a, y->a, env) && alpha_eq_rec(x->b, y->b, env);
    case SourceExpr::Tag::Record:
    case SourceExpr::Tag::FieldProj:
      return x->name == y->name && alpha_eq_rec(x->a, y->a, env);
    case SourceExpr::Tag::Anno:
      return type_eq(x->type, y->type) && alpha_eq_rec(x->a, y->a, env);
    case SourceExpr::Tag::ListCase: {
      if (!alpha_eq_rec(x->a, y->a, env)) return false;
      if (!alpha_eq_rec(x->b, y->b, env)) return false;
      env.push(x->name, y->name);
      env.push(x->name2, y->name2);
      bool ok = alpha_eq_rec(x->c, y->c, env);
      env.pop();
      env.pop();
      return ok;
    }
    case SourceExpr::Tag::PrimApp: {
      if (x->name != y->name || x->args.size() != y->args.size()) return false;
      for (size_t i = 0; i < x->args.size(); i++)
        if (!alpha_eq_rec(x->args[i], y->args[i], env)) return false;
      return true;
    }
  }
  return false;
}

inline bool alpha_eq_rec(const TermPtr& x, const TermPtr& y, AlphaEnv& env) {
  if (x->tag != y->tag) return false;
  switch (x->tag) {
    case TargetTerm::Tag::Var: return env.var_eq(x->name, y->name);
    case TargetTerm::Tag::Unit:
    case TargetTerm::Tag::Nil: return true;
    case TargetTerm::Tag::IntLit: return x->int_val == y->int_val;
    case TargetTerm::Tag::RealLit:
      return x->real_val == y->real_val && x->real_text == y->real_text;
    case TargetTerm::Tag::StrLit: return x->str_val == y->str_val;
    case TargetTerm::Tag::Lam:
    case TargetTerm::Tag::Fix: {
      env.push(x->name, y->name);
      bool ok = alpha_eq_rec(x->a, y->a, env);
      env.pop();
      return ok;
    }
    case TargetTerm::Tag::Let: {
      if (!alpha_eq_rec(x->a, y->a, env)) return false;
      env.push(x->name, y->name);
      bool ok = alpha_eq_rec(x->b, y->b, env);
      env.pop();
      return ok;
    }
    case TargetTerm::Tag::App:
    case TargetTerm::Tag::Pair:
    case TargetTerm::Tag::Cons:
      return alpha_eq_rec(x->a, y->a, env) && alpha_eq_rec(x->b, y->b, env);
    case TargetTerm::Tag::Proj:
    case TargetTerm::Tag::Inj:
      return x->idx == y->idx && alpha_eq_rec(x->a, y->a, env);
    case TargetTerm::Tag::Record:
    case TargetTerm::Tag::FieldProj:
      return x->name == y->name && alpha_eq_rec(x->a, y->a, env);
    case TargetTerm::Tag::Case: {
      if (!alpha_eq_rec(x->a, y->a, env)) return false;
      env.push(x->name, y->name);
      bool ok1 = alpha_eq_rec(x->b, y->b, env);
      env.pop();
      if (!ok1) return false;
      env.push(x->name2, y->name2);
      bool ok2 = alpha_eq_rec(x->c, y->c, env);
      env.pop();
      return ok2;
    }
    case TargetTerm::Tag::ListCase: {
      if (!alpha_eq_rec(x->a, y->a, env)) return false;
      if (!alpha_eq_rec(x->b, y->b, env)) return false;
      env.push(x->name, y->name);
      env.push(x->name2, y->name2);
      bool ok = alpha_eq_rec(x->c, y->c, env);
      env.pop();
      env.pop();
      return ok;
    }
    case TargetTerm::Tag::PrimApp: {
      if (x->name != y->name || x->args.size() != y->args.size()) return false;
      for (size_t i = 0; i < x->args.size(); i++)
        if (!alpha_eq_rec(x->args[i], y->args[i], env)) return false;
      return true;
    }
  }
  return false;
}

}  // namespace detail

inline bool alpha_eq(const ExprPtr& x, const ExprPtr& y) {
  detail::AlphaEnv env;
  return detail::alpha_eq_rec(x, y, env);
}

inline bool alpha_eq(const TermPtr& x, const TermPtr& y) {
  detail::AlphaEnv env;
  return detail::alpha_eq_rec(x, y, env);
}

// ---------------------------------------------------------------------------
// Fresh names and capture-avoiding substitution
// ---------------------------------------------------------------------------

inline std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; i++) {
    std::string cand = base + "_" + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

ExprPtr subst(const ExprPtr& e, const std::string& x, const ExprPtr& v);

namespace detail {

inline ExprPtr subst_under_binder(const ExprPtr& body, const std::string& binder,
                                  std::string& binder_out, const std::string& x,
                                  const ExprPtr& v, const std::set<std::string>& fv_v) {
  if (binder == x) {  // shadowed
    binder_out = binder;
    return body;
  }
  if (fv_v.count(binder)) {
    std::set<std::string> avoid = fv_v;
    auto bfv = free_vars(body);
    avoid.insert(bfv.begin(), bfv.end());
    avoid.insert(x);
    std::string nb = fresh_name(binder, avoid);
    binder_out = nb;
    return subst(subst(body, binder, e_var(nb)), x, v);
  }
  binder_out = binder;
  return subst(body, x, v);
}

}  // namespace detail

inline ExprPtr subst(const ExprPtr& e, const std::string& x, const ExprPtr& v) {
  switch (e->tag) {
    case SourceExpr::Tag::Var: return e->name == x ? v : e;
    case SourceExpr::Tag::Unit:
    case SourceExpr::Tag::IntLit:
    case SourceExpr::Tag::RealLit:
    case SourceExpr::Tag::StrLit:
    case SourceExpr::Tag::Nil:
      return e;
    case SourceExpr::Tag::Lam:
    case SourceExpr::Tag::Fix: {
      auto fv = free_vars(v);
      std::string nb;
      ExprPtr body = detail::subst_under_binder(e->a, e->name, nb, x, v, fv);
      if (body == e->a && nb == e->name) return e;
      return e->tag == SourceExpr::Tag::Lam ? e_lam(nb, body) : e_fix(nb, body);
    }
    case SourceExpr::Tag::Let: {
      auto fv = free_vars(v);
      ExprPtr bound = subst(e->a, x, v);
      std::string nb;
      ExprPtr body = detail::subst_under_binder(e->b, e->name, nb, x, v, fv);
      return e_let(nb, bound, body);
    }
    case SourceExpr::Tag::App: return e_app(subst(e->a, x, v), subst(e->b, x, v));
    case SourceExpr::Tag::Merge: return e_merge(subst(e->a, x, v), subst(e->b, x, v));
    case SourceExpr::Tag::Cons: return e_cons(subst(e->a, x, v), subst(e->b, x, v));
    case SourceExpr::Tag::Record: return e_record(e->name, subst(e->a, x, v));
    case SourceExpr::Tag::FieldProj: return e_proj(subst(e->a, x, v), e->name);
    case SourceExpr::Tag::Anno: return e_anno(subst(e->a, x, v), e->type);
    case SourceExpr::Tag::ListCase: {
      auto fv = free_vars(v);
      ExprPtr subj = subst(e->a, x, v);
      ExprPtr nil_arm = subst(e->b, x, v);
      // two binders in the cons arm
      std::string hb = e->name, tb = e->name2;
      ExprPtr cons_arm = e->c;
      if (hb != x && tb != x) {
        if (fv.count(hb) || fv.count(tb)) {
          std::set<std::string> avoid = fv;
          auto bfv = free_vars(cons_arm);
          avoid.insert(bfv.begin(), bfv.end());
          avoid.insert(x);
          if (fv.count(hb)) {
            std::string nh = fresh_name(hb, avoid);
            avoid.insert(nh);
            cons_arm = subst(cons_arm, hb, e_var(nh));
            hb = nh;
          }
          if (fv.count(tb)) {
            std::string nt = fresh_name(tb, avoid);
            cons_arm = subst(cons_arm, tb, e_var(nt));
            tb = nt;
          }
        }
        cons_arm = subst(cons_arm, x, v);
      }
      return e_lcase(subj, nil_arm, hb, tb, cons_arm);
    }
    case SourceExpr::Tag::PrimApp: {
      std::vector<ExprPtr> args;
      args.reserve(e->args.size());
      for (auto& g : e->args) args.push_back(subst(g, x, v));
      return e_prim(e->name, std::move(args));
    }
  }
  return e;
}

TermPtr subst(const TermPtr& m, const std::string& x, const TermPtr& w);

namespace detail {

inline TermPtr subst_under_binder(const TermPtr& body, const std::string& binder,
                                  std::string& binder_out, const std::string& x,
                                  const TermPtr& w, const std::set<std::string>& fv_w) {
  if (binder == x) {
    binder_out = binder;
    return body;
  }
  if (fv_w.count(binder)) {
    std::set<std::string> avoid = fv_w;
    auto bfv = free_vars(body);
    avoid.insert(bfv.begin(), bfv.end());
    avoid.insert(x);
    std::string nb = fresh_name(binder, avoid);
    binder_out = nb;
    return subst(subst(body, binder, t_var(nb)), x, w);
  }
  binder_out = binder;
  return subst(body, x, w);
}

}  // namespace detail

inline TermPtr subst(const TermPtr& m, const std::string& x, const TermPtr& w) {
  switch (m->tag) {
    case TargetTerm::Tag::Var: return m->name == x ? w : m;
    case TargetTerm::Tag::Unit:
    case TargetTerm::Tag::IntLit:
    case TargetTerm::Tag::RealLit:
    case TargetTerm::Tag::StrLit:
    case TargetTerm::Tag::Nil:
      return m;
    case TargetTerm::Tag::Lam:
    case TargetTerm::Tag::Fix: {
      auto fv = free_vars(w);
      std::string nb;
      TermPtr body = detail::subst_under_binder(m->a, m->name, nb, x, w, fv);
      if (body == m->a && nb == m->name) return m;
      return m->tag == TargetTerm::Tag::Lam ? t_lam(nb, body) : t_fix(nb, body);
    }
    case TargetTerm::Tag::Let: {
      auto fv = free_vars(w);
      TermPtr bound = subst(m->a, x, w);
      std::string nb;
      TermPtr body = detail::subst_under_binder(m->b, m->name, nb, x, w, fv);
      return t_let(nb, m->let_ty, bound, body);
    }
    case TargetTerm::Tag::App: return t_app(subst(m->a, x, w), subst(m->b, x, w));
    case TargetTerm::Tag::Pair: return t_pair(subst(m->a, x, w), subst(m->b, x, w));
    case TargetTerm::Tag::Cons: return t_cons(subst(m->a, x, w), subst(m->b, x, w));
    case TargetTerm::Tag::Proj: return t_proj(m->idx, subst(m->a, x, w));
    case TargetTerm::Tag::Inj: return t_inj(m->idx, subst(m->a, x, w));
    case TargetTerm::Tag::Record: return t_record(m->name, subst(m->a, x, w));
    case TargetTerm::Tag::FieldProj: return t_proj_field(subst(m->a, x, w), m->name);
    case TargetTerm::Tag::Case: {
      auto fv = free_vars(w);
      TermPtr scrut = subst(m->a, x, w);
      std::string b1, b2;
      TermPtr arm1 = detail::subst_under_binder(m->b, m->name, b1, x, w, fv);
      TermPtr arm2 = detail::subst_under_binder(m->c, m->name2, b2, x, w, fv);
      return t_case(scrut, b1, arm1, b2, arm2);
    }
    case TargetTerm::Tag::ListCase: {
      auto fv = free_vars(w);
      TermPtr subj = subst(m->a, x, w);
      TermPtr nil_arm = subst(m->b, x, w);
      std::string hb = m->name, tb = m->name2;
      TermPtr cons_arm = m->c;
      if (hb != x && tb != x) {
        if (fv.count(hb) || fv.count(tb)) {
          std::set<std::string> avoid = fv;
          auto bfv = free_vars(cons_arm);
          avoid.insert(bfv.begin(), bfv.end());
          avoid.insert(x);
          if (fv.count(hb)) {
            std::string nh = fresh_name(hb, avoid);
            avoid.insert(nh);
            cons_arm = subst(cons_arm, hb, t_var(nh));
            hb = nh;
          }
          if (fv.count(tb)) {
            std::string nt = fresh_name(tb, avoid);
            cons_arm = subst(cons_arm, tb, t_var(nt));
            tb = nt;
          }
        }
        cons_arm = subst(cons_arm, x, w);
      }
      return t_lcase(subj, nil_arm, hb, tb, cons_arm);
    }
    case TargetTerm::Tag::PrimApp: {
      std::vector<TermPtr> args;
      args.reserve(m->args.size());
      for (auto& g : m->args) args.push_back(subst(g, x, w));
      return t_prim(m->name, std::move(args));
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Typing contexts
// ---------------------------------------------------------------------------

// Ordered, append-only, rightmost binding wins.
struct TypingContext {
  std::vector<std::pair<std::string, TypePtr>> items;

  const TypePtr* lookup(const std::string& name) const {
    for (auto it = items.rbegin(); it != items.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }
  TypingContext extended(const std::string& name, TypePtr ty) const {
    TypingContext out = *this;
    out.items.emplace_back(name, std::move(ty));
    return out;
  }
  bool empty() const { return items.empty(); }
  size_t size() const { return items.size(); }
};

inline bool ctx_eq(const TypingContext& a, const TypingContext& b) {
  if (a.items.size() != b.items.size()) return false;
  for (size_t i = 0; i < a.items.size(); i++) {
    if (a.items[i].first != b.items[i].first) return false;
    if (!type_eq(a.items[i].second, b.items[i].second)) return false;
  }
  return true;
}

struct TargetContext {
  std::vector<std::pair<std::string, TTypePtr>> items;

  const TTypePtr* lookup(const std::string& name) const {
    for (auto it = items.rbegin(); it != items.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }
  TargetContext extended(const std::string& name, TTypePtr ty) const {
    TargetContext out = *this;
    out.items.emplace_back(name, std::move(ty));
    return out;
  }
};

inline TargetContext ctx_translate(const TypingContext& ctx) {
  TargetContext out;
  out.items.reserve(ctx.items.size());
  for (auto& [n, t] : ctx.items) out.items.emplace_back(n, type_translate(t));
  return out;
}

// ---------------------------------------------------------------------------
// Sizes (node counts)
// ---------------------------------------------------------------------------

inline int term_size(const ExprPtr& e) {
  int n = 1;
  switch (e->tag) {
    case SourceExpr::Tag::PrimApp:
      for (auto& g : e->args) n += term_size(g);
      return n;
    default:
      if (e->a) n += term_size(e->a);
      if (e->b) n += term_size(e->b);
      if (e->c) n += term_size(e->c);
      return n;
  }
}

inline int term_size(const TermPtr& m) {
  int n = 1;
  switch (m->tag) {
    case TargetTerm::Tag::PrimApp:
      for (auto& g : m->args) n += term_size(g);
      return n;
    default:
      if (m->a) n += term_size(m->a);
      if (m->b) n += term_size(m->b);
      if (m->c) n += term_size(m->c);
      return n;
  }
}

// Thrown when a metatheory operation receives input that its theorem
// guarantees cannot occur; indicates a bug somewhere upstream.
struct InvariantViolation : std::runtime_error {
  explicit InvariantViolation(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace icc
