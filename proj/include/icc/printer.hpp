#pragma once

// Canonical printers.  Output re-parses to an alpha-equivalent term; the
// target grammar is the golden-test surface, so its spelling is fixed:
// <M, N>, proj1 M, inj2 M, case M of inj1 x1 => N1 | inj2 x2 => N2,
// fn x => M, fix x => M, application by juxtaposition, () unit.

#include <charconv>
#include <sstream>
#include <string>

#include "icc/ast.hpp"

namespace icc {

// Shortest decimal text that round-trips, with a decimal point forced so
// real values stay visibly real (150.0, not 150).
inline std::string real_to_text(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, res.ptr);
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos) {
    s += ".0";
  }
  return s;
}

inline std::string real_text_of(const std::string& text, double v) {
  return text.empty() ? real_to_text(v) : text;
}

inline std::string escape_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      default: out += c;
    }
  }
  out += "\"";
  return out;
}

// --- types -----------------------------------------------------------------

// precedence: 0 arrow (right assoc) < 1 union < 2 intersect < 3 atom
namespace detail {

inline void print_ty(const TypePtr& t, int prec, std::string& out);

inline void ty_paren(const TypePtr& t, int prec, int my, std::string& out) {
  if (prec > my) out += "(";
  print_ty(t, my, out);
  if (prec > my) out += ")";
}

inline void print_ty(const TypePtr& t, int prec, std::string& out) {
  switch (t->tag) {
    case SourceType::Tag::Top: out += "top"; return;
    case SourceType::Tag::Base: out += base_ty_name(t->base); return;
    case SourceType::Tag::Arrow: {
      if (prec > 0) out += "(";
      print_ty(t->a, 1, out);
      out += " -> ";
      print_ty(t->b, 0, out);
      if (prec > 0) out += ")";
      return;
    }
    case SourceType::Tag::Union: {
      if (prec > 1) out += "(";
      print_ty(t->a, 1, out);
      out += " \\/ ";
      print_ty(t->b, 2, out);
      if (prec > 1) out += ")";
      return;
    }
    case SourceType::Tag::Intersect: {
      if (prec > 2) out += "(";
      print_ty(t->a, 2, out);
      out += " & ";
      print_ty(t->b, 3, out);
      if (prec > 2) out += ")";
      return;
    }
    case SourceType::Tag::Record:
      out += "{";
      out += t->label;
      out += ":";
      print_ty(t->a, 0, out);
      out += "}";
      return;
    case SourceType::Tag::List: {
      if (prec > 3) out += "(";
      out += "list ";
      print_ty(t->a, 4, out);
      if (prec > 3) out += ")";
      return;
    }
  }
}

}  // namespace detail

inline std::string print_type(const TypePtr& t) {
  std::string out;
  detail::print_ty(t, 0, out);
  return out;
}

inline std::string print_target_type(const TTypePtr& t) {
  // target types never appear in the canonical term grammar except on let
  // binders; arrow/sum/product reuse the source spellings
  switch (t->tag) {
    case TargetType::Tag::Unit: return "unit";
    case TargetType::Tag::Base: return tbase_name(t->base);
    case TargetType::Tag::Arrow: {
      std::string a = print_target_type(t->a);
      if (t->a->tag == TargetType::Tag::Arrow) a = "(" + a + ")";
      return a + " -> " + print_target_type(t->b);
    }
    case TargetType::Tag::Product: {
      auto wrap = [](const TTypePtr& x) {
        std::string s = print_target_type(x);
        if (x->tag == TargetType::Tag::Arrow || x->tag == TargetType::Tag::Sum ||
            x->tag == TargetType::Tag::Product)
          s = "(" + s + ")";
        return s;
      };
      return wrap(t->a) + " * " + wrap(t->b);
    }
    case TargetType::Tag::Sum: {
      auto wrap = [](const TTypePtr& x) {
        std::string s = print_target_type(x);
        if (x->tag == TargetType::Tag::Arrow || x->tag == TargetType::Tag::Sum)
          s = "(" + s + ")";
        return s;
      };
      return wrap(t->a) + " + " + wrap(t->b);
    }
    case TargetType::Tag::Record:
      return "{" + t->label + ":" + print_target_type(t->a) + "}";
    case TargetType::Tag::List: {
      std::string a = print_target_type(t->a);
      if (t->a->tag != TargetType::Tag::Unit && t->a->tag != TargetType::Tag::Base)
        a = "(" + a + ")";
      return "list " + a;
    }
  }
  return "?";
}

// --- source expressions ------------------------------------------------------

// precedence: 0 open forms (fn/fix/let/lcase bodies, merges allowed)
//             1 merge chain, 2 application, 3 atom
namespace detail {

inline void print_src(const ExprPtr& e, int prec, std::string& out);

// open-ended forms swallow everything to the right
inline bool src_open_form(const ExprPtr& e) {
  switch (e->tag) {
    case SourceExpr::Tag::Lam:
    case SourceExpr::Tag::Fix:
    case SourceExpr::Tag::ListCase:
      return true;
    default: return false;
  }
}

inline void print_src(const ExprPtr& e, int prec, std::string& out) {
  switch (e->tag) {
    case SourceExpr::Tag::Var: out += e->name; return;
    case SourceExpr::Tag::Unit: out += "()"; return;
    case SourceExpr::Tag::IntLit: out += e->int_val.str(); return;
    case SourceExpr::Tag::RealLit: out += real_text_of(e->real_text, e->real_val); return;
    case SourceExpr::Tag::StrLit: out += escape_string(e->str_val); return;
    case SourceExpr::Tag::Nil: out += "nil"; return;
    case SourceExpr::Tag::Lam:
    case SourceExpr::Tag::Fix: {
      if (prec > 0) out += "(";
      out += e->tag == SourceExpr::Tag::Lam ? "fn " : "fix ";
      out += e->name;
      out += " => ";
      print_src(e->a, 0, out);
      if (prec > 0) out += ")";
      return;
    }
    case SourceExpr::Tag::Merge: {
      if (prec > 1) out += "(";
      print_src(e->a, 1, out);
      out += " ,, ";
      print_src(e->b, 2, out);
      if (prec > 1) out += ")";
      return;
    }
    case SourceExpr::Tag::App: {
      if (prec > 2) out += "(";
      print_src(e->a, 2, out);
      out += " ";
      print_src(e->b, 3, out);
      if (prec > 2) out += ")";
      return;
    }
    case SourceExpr::Tag::Cons: {
      if (prec > 2) out += "(";
      out += "cons ";
      print_src(e->a, 3, out);
      out += " ";
      print_src(e->b, 3, out);
      if (prec > 2) out += ")";
      return;
    }
    case SourceExpr::Tag::FieldProj: {
      print_src(e->a, 3, out);
      out += ".";
      out += e->name;
      return;
    }
    case SourceExpr::Tag::Record: {
      out += "{";
      out += e->name;
      out += " = ";
      print_src(e->a, 0, out);
      out += "}";
      return;
    }
    case SourceExpr::Tag::Let: {
      out += "let ";
      out += e->name;
      out += " = ";
      print_src(e->a, 0, out);
      out += " in ";
      print_src(e->b, 0, out);
      out += " end";
      return;
    }
    case SourceExpr::Tag::Anno: {
      out += "(";
      print_src(e->a, 0, out);
      out += " : ";
      print_ty(e->type, 0, out);
      out += ")";
      return;
    }
    case SourceExpr::Tag::ListCase: {
      if (prec > 0) out += "(";
      out += "lcase ";
      print_src(e->a, 2, out);
      out += " of nil => ";
      // the nil arm must not swallow the `|`
      if (src_open_form(e->b)) {
        out += "(";
        print_src(e->b, 0, out);
        out += ")";
      } else {
        print_src(e->b, 0, out);
      }
      out += " | cons ";
      out += e->name;
      out += " ";
      out += e->name2;
      out += " => ";
      print_src(e->c, 0, out);
      if (prec > 0) out += ")";
      return;
    }
    case SourceExpr::Tag::PrimApp: {
      out += "$";
      out += e->name;
      out += "(";
      for (size_t i = 0; i < e->args.size(); i++) {
        if (i) out += ", ";
        print_src(e->args[i], 0, out);
      }
      out += ")";
      return;
    }
  }
}

}  // namespace detail

inline std::string print_source(const ExprPtr& e) {
  std::string out;
  detail::print_src(e, 0, out);
  return out;
}

// --- target terms ------------------------------------------------------------

namespace detail {

inline void print_tgt(const TermPtr& m, int prec, std::string& out);

inline bool tgt_open_form(const TermPtr& m) {
  switch (m->tag) {
    case TargetTerm::Tag::Lam:
    case TargetTerm::Tag::Fix:
    case TargetTerm::Tag::Case:
    case TargetTerm::Tag::ListCase:
      return true;
    default: return false;
  }
}

inline void print_tgt(const TermPtr& m, int prec, std::string& out) {
  switch (m->tag) {
    case TargetTerm::Tag::Var: out += m->name; return;
    case TargetTerm::Tag::Unit: out += "()"; return;
    case TargetTerm::Tag::IntLit: out += m->int_val.str(); return;
    case TargetTerm::Tag::RealLit: out += real_text_of(m->real_text, m->real_val); return;
    case TargetTerm::Tag::StrLit: out += escape_string(m->str_val); return;
    case TargetTerm::Tag::Nil: out += "nil"; return;
    case TargetTerm::Tag::Lam:
    case TargetTerm::Tag::Fix: {
      if (prec > 0) out += "(";
      out += m->tag == TargetTerm::Tag::Lam ? "fn " : "fix ";
      out += m->name;
      out += " => ";
      print_tgt(m->a, 0, out);
      if (prec > 0) out += ")";
      return;
    }
    case TargetTerm::Tag::App: {
      if (prec > 2) out += "(";
      print_tgt(m->a, 2, out);
      out += " ";
      print_tgt(m->b, 3, out);
      if (prec > 2) out += ")";
      return;
    }
    case TargetTerm::Tag::Pair: {
      out += "<";
      print_tgt(m->a, 0, out);
      out += ", ";
      print_tgt(m->b, 0, out);
      out += ">";
      return;
    }
    case TargetTerm::Tag::Proj:
    case TargetTerm::Tag::Inj: {
      if (prec > 2) out += "(";
      out += m->tag == TargetTerm::Tag::Proj ? "proj" : "inj";
      out += m->idx == 1 ? "1 " : "2 ";
      print_tgt(m->a, 3, out);
      if (prec > 2) out += ")";
      return;
    }
    case TargetTerm::Tag::Case: {
      if (prec > 0) out += "(";
      out += "case ";
      print_tgt(m->a, 2, out);
      out += " of inj1 ";
      out += m->name;
      out += " => ";
      if (tgt_open_form(m->b)) {
        out += "(";
        print_tgt(m->b, 0, out);
        out += ")";
      } else {
        print_tgt(m->b, 0, out);
      }
      out += " | inj2 ";
      out += m->name2;
      out += " => ";
      print_tgt(m->c, 0, out);
      if (prec > 0) out += ")";
      return;
    }
    case TargetTerm::Tag::Cons: {
      if (prec > 2) out += "(";
      out += "cons ";
      print_tgt(m->a, 3, out);
      out += " ";
      print_tgt(m->b, 3, out);
      if (prec > 2) out += ")";
      return;
    }
    case TargetTerm::Tag::Record: {
      out += "{";
      out += m->name;
      out += " = ";
      print_tgt(m->a, 0, out);
      out += "}";
      return;
    }
    case TargetTerm::Tag::FieldProj: {
      print_tgt(m->a, 3, out);
      out += ".";
      out += m->name;
      return;
    }
    case TargetTerm::Tag::Let: {
      out += "let ";
      out += m->name;
      if (m->let_ty) {
        out += " : ";
        out += print_target_type(m->let_ty);
      }
      out += " = ";
      print_tgt(m->a, 0, out);
      out += " in ";
      print_tgt(m->b, 0, out);
      out += " end";
      return;
    }
    case TargetTerm::Tag::ListCase: {
      if (prec > 0) out += "(";
      out += "lcase ";
      print_tgt(m->a, 2, out);
      out += " of nil => ";
      if (tgt_open_form(m->b)) {
        out += "(";
        print_tgt(m->b, 0, out);
        out += ")";
      } else {
        print_tgt(m->b, 0, out);
      }
      out += " | cons ";
      out += m->name;
      out += " ";
      out += m->name2;
      out += " => ";
      print_tgt(m->c, 0, out);
      if (prec > 0) out += ")";
      return;
    }
    case TargetTerm::Tag::PrimApp: {
      out += "$";
      out += m->name;
      out += "(";
      for (size_t i = 0; i < m->args.size(); i++) {
        if (i) out += ", ";
        print_tgt(m->args[i], 0, out);
      }
      out += ")";
      return;
    }
  }
}

}  // namespace detail

inline std::string print_target(const TermPtr& m) {
  std::string out;
  detail::print_tgt(m, 0, out);
  return out;
}

// How `icc run` renders final values: strings verbatim, ints decimal,
// reals shortest round-trip, everything else in canonical target text.
inline std::string format_value(const TermPtr& w) {
  switch (w->tag) {
    case TargetTerm::Tag::StrLit: return w->str_val;
    case TargetTerm::Tag::IntLit: return w->int_val.str();
    case TargetTerm::Tag::RealLit: return real_text_of(w->real_text, w->real_val);
    case TargetTerm::Tag::Record:
      return "{" + w->name + " = " + format_value(w->a) + "}";
    default: return print_target(w);
  }
}

}  // namespace icc
