#include "tagmap/spec_expr.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace tagmap {

SpecExpr SpecExpr::atom(std::string feature, AtomOp op, std::string value, bool quoted) {
  SpecExpr e;
  e.kind = Kind::atom;
  e.feature = std::move(feature);
  e.op = op;
  e.value = std::move(value);
  e.value_quoted = quoted;
  return e;
}

SpecExpr SpecExpr::bare(std::string name) {
  SpecExpr e;
  e.kind = Kind::bare;
  e.feature = std::move(name);
  return e;
}

namespace {

SpecExpr binary(SpecExpr::Kind kind, SpecExpr lhs, SpecExpr rhs) {
  SpecExpr e;
  e.kind = kind;
  e.span = {lhs.span.begin, rhs.span.end};
  e.children.push_back(std::move(lhs));
  e.children.push_back(std::move(rhs));
  return e;
}

}  // namespace

SpecExpr SpecExpr::conj(SpecExpr lhs, SpecExpr rhs) { return binary(Kind::conj, std::move(lhs), std::move(rhs)); }
SpecExpr SpecExpr::disj(SpecExpr lhs, SpecExpr rhs) { return binary(Kind::disj, std::move(lhs), std::move(rhs)); }

SpecExpr SpecExpr::negation(SpecExpr child) {
  SpecExpr e;
  e.kind = Kind::neg;
  e.span = child.span;
  e.children.push_back(std::move(child));
  return e;
}

bool structurally_equal(const SpecExpr& a, const SpecExpr& b) {
  if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
  switch (a.kind) {
    case SpecExpr::Kind::atom:
      if (a.op != b.op || a.value != b.value || a.value_quoted != b.value_quoted) return false;
      [[fallthrough]];
    case SpecExpr::Kind::bare:
      if (a.feature != b.feature) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!structurally_equal(a.children[i], b.children[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(SpecExpr::Kind k) {
  switch (k) {
    case SpecExpr::Kind::disj: return 1;
    case SpecExpr::Kind::conj: return 2;
    case SpecExpr::Kind::neg: return 3;
    default: return 4;
  }
}

void print(const SpecExpr& e, std::string& out);

void print_child(const SpecExpr& child, int min_prec, std::string& out) {
  if (precedence(child.kind) < min_prec) {
    out += "(";
    print(child, out);
    out += ")";
  } else {
    print(child, out);
  }
}

void print(const SpecExpr& e, std::string& out) {
  switch (e.kind) {
    case SpecExpr::Kind::atom:
      out += e.feature;
      out += e.op == AtomOp::eq ? "=" : "!=";
      if (e.value_quoted) {
        out += "'" + e.value + "'";
      } else {
        out += e.value;
      }
      return;
    case SpecExpr::Kind::bare:
      out += e.feature;
      return;
    case SpecExpr::Kind::neg:
      out += "!";
      print_child(e.children[0], 3, out);
      return;
    case SpecExpr::Kind::conj:
    case SpecExpr::Kind::disj: {
      // Left-associative: the right operand needs parentheses at equal precedence.
      int p = precedence(e.kind);
      print_child(e.children[0], p, out);
      out += e.kind == SpecExpr::Kind::conj ? " & " : " | ";
      print_child(e.children[1], p + 1, out);
      return;
    }
  }
}

}  // namespace

std::string to_string(const SpecExpr& e) {
  std::string out;
  print(e, out);
  return out;
}

std::string to_bracketed(const SpecExpr& e) { return "[" + to_string(e) + "]"; }

// ---------------------------------------------------------------------------
// Parsing

namespace {

class SpecParser {
 public:
  explicit SpecParser(TokenStream& ts) : ts_(ts) {}

  Result<SpecExpr> spec() {
    if (ts_.at(TokenKind::lbracket)) {
      const LexToken& open = ts_.next();
      if (ts_.at(TokenKind::rbracket)) return fail(open.span, "empty specification");
      auto e = expr();
      if (!e) return e;
      if (!ts_.at(TokenKind::rbracket)) return fail(ts_.peek().span, "expected ']', found " + describe(ts_.peek()));
      SourcePos end = ts_.next().span.end;
      SpecExpr out = std::move(e).value();
      out.span = {open.span.begin, end};
      return out;
    }
    return expr();
  }

 private:
  static std::string describe(const LexToken& t) {
    if (t.kind == TokenKind::name) return "'" + t.text + "'";
    if (t.kind == TokenKind::invalid) return "invalid character '" + t.text + "'";
    return std::string(token_kind_name(t.kind));
  }

  static Result<SpecExpr> fail(SourceSpan span, std::string msg) {
    return Diagnostic::error(span, "syntax error: " + std::move(msg));
  }

  Result<SpecExpr> expr() {
    auto lhs = term();
    if (!lhs) return lhs;
    SpecExpr acc = std::move(lhs).value();
    while (ts_.accept(TokenKind::bar)) {
      auto rhs = term();
      if (!rhs) return rhs;
      acc = SpecExpr::disj(std::move(acc), std::move(rhs).value());
    }
    return acc;
  }

  Result<SpecExpr> term() {
    auto lhs = factor();
    if (!lhs) return lhs;
    SpecExpr acc = std::move(lhs).value();
    while (ts_.accept(TokenKind::amp)) {
      auto rhs = factor();
      if (!rhs) return rhs;
      acc = SpecExpr::conj(std::move(acc), std::move(rhs).value());
    }
    return acc;
  }

  Result<SpecExpr> factor() {
    if (ts_.at(TokenKind::bang)) {
      SourcePos begin = ts_.next().span.begin;
      auto child = factor();
      if (!child) return child;
      SpecExpr e = SpecExpr::negation(std::move(child).value());
      e.span.begin = begin;
      return e;
    }
    if (ts_.at(TokenKind::lparen)) {
      ts_.next();
      auto inner = expr();
      if (!inner) return inner;
      if (!ts_.accept(TokenKind::rparen))
        return fail(ts_.peek().span, "expected ')', found " + describe(ts_.peek()));
      return inner;
    }
    return atom();
  }

  Result<SpecExpr> atom() {
    if (!ts_.at(TokenKind::name)) {
      return fail(ts_.peek().span, "expected a feature, value or '(', found " + describe(ts_.peek()));
    }
    const LexToken& name = ts_.next();
    if (ts_.at(TokenKind::eq) || ts_.at(TokenKind::neq)) {
      const LexToken& op = ts_.next();
      if (!ts_.at(TokenKind::name) && !ts_.at(TokenKind::quoted)) {
        return fail(op.span, "dangling '" + op.text + "': expected a value after it, found " + describe(ts_.peek()));
      }
      const LexToken& value = ts_.next();
      SpecExpr e = SpecExpr::atom(name.text, op.kind == TokenKind::eq ? AtomOp::eq : AtomOp::ne, value.text,
                                  value.kind == TokenKind::quoted);
      e.span = {name.span.begin, value.span.end};
      return e;
    }
    SpecExpr e = SpecExpr::bare(name.text);
    e.span = name.span;
    return e;
  }

  TokenStream& ts_;
};

}  // namespace

Result<SpecExpr> parse_spec(TokenStream& ts) { return SpecParser(ts).spec(); }

Result<SpecExpr> parse_spec(std::string_view source) {
  TokenStream ts(tokenize(source));
  if (ts.at_end()) return Diagnostic::error(ts.peek().span, "syntax error: empty specification");
  auto r = parse_spec(ts);
  if (!r) return r;
  ts.accept(TokenKind::dot);
  if (!ts.at_end()) {
    const LexToken& t = ts.peek();
    std::string what = t.kind == TokenKind::name ? "'" + t.text + "'" : std::string(token_kind_name(t.kind));
    return Diagnostic::error(t.span, "syntax error: unexpected " + what + " after specification");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Literals

ClassSet denote(const Literal& lit, const TypeGraph& g) {
  switch (lit.kind) {
    case Literal::Kind::pos_eq: return g.classes_under(lit.subject);
    case Literal::Kind::pos_ne: return g.classes_under(lit.subject).complement();
    case Literal::Kind::feat_eq: return g.classes_with(lit.subject, lit.value);
    case Literal::Kind::feat_ne: return g.classes_with(lit.subject) - g.classes_with(lit.subject, lit.value);
    case Literal::Kind::feat_any: return g.classes_with(lit.subject);
  }
  return g.empty_set();
}

ClassSet denote(const Conjunct& c, const TypeGraph& g) {
  ClassSet out = g.all_classes();
  for (const Literal& lit : c) out &= denote(lit, g);
  return out;
}

ClassSet denote(const Dnf& dnf, const TypeGraph& g) {
  ClassSet out = g.empty_set();
  for (const Conjunct& c : dnf.disjuncts) out |= denote(c, g);
  return out;
}

std::string to_string(const Literal& lit, const TypeGraph& g) {
  switch (lit.kind) {
    case Literal::Kind::pos_eq: return "pos=" + g.node(lit.subject).name;
    case Literal::Kind::pos_ne: return "pos!=" + g.node(lit.subject).name;
    case Literal::Kind::feat_eq: return g.feature(lit.subject).name + "=" + g.feature(lit.subject).values[lit.value];
    case Literal::Kind::feat_ne:
      return g.feature(lit.subject).name + "!=" + g.feature(lit.subject).values[lit.value];
    case Literal::Kind::feat_any: {
      const FeatureDecl& f = g.feature(lit.subject);
      std::string out = "(";
      for (std::size_t v = 0; v < f.values.size(); ++v) {
        if (v != 0) out += " | ";
        out += f.name + "=" + f.values[v];
      }
      return out + ")";
    }
  }
  return {};
}

std::string to_string(const Conjunct& c, const TypeGraph& g) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i != 0) out += " & ";
    out += to_string(c[i], g);
  }
  return out;
}

std::string to_string(const Dnf& dnf, const TypeGraph& g) {
  std::string out;
  for (std::size_t i = 0; i < dnf.disjuncts.size(); ++i) {
    if (i != 0) out += " | ";
    out += to_string(dnf.disjuncts[i], g);
  }
  return out;
}

Diagnostic TypeError::to_diagnostic() const {
  SourceSpan span = spans.empty() ? SourceSpan{} : spans.front();
  return Diagnostic::error(span, message);
}

// ---------------------------------------------------------------------------
// Resolution, DNF and denotation

namespace {

TypeError make_error(TypeError::Kind kind, const SpecExpr& at, std::string msg) {
  TypeError err;
  err.kind = kind;
  err.message = std::move(msg);
  err.spans.push_back(at.span);
  return err;
}

Result<Literal, TypeError> resolve_atom(const SpecExpr& e, const TypeGraph& g) {
  Literal lit;
  lit.span = e.span;
  if (e.kind == SpecExpr::Kind::bare) {
    if (auto node = g.find_node(e.feature)) {
      lit.kind = Literal::Kind::pos_eq;
      lit.subject = *node;
      return lit;
    }
    if (auto ref = g.value_owner(e.feature)) {
      lit.kind = Literal::Kind::feat_eq;
      lit.subject = ref->feature;
      lit.value = ref->value;
      return lit;
    }
    if (e.feature == kPosFeature || g.find_feature(e.feature)) {
      return make_error(TypeError::Kind::malformed_atom, e, "feature '" + e.feature + "' used without a value");
    }
    return make_error(TypeError::Kind::unknown_name, e, "unknown name '" + e.feature + "'");
  }

  const bool eq = e.op == AtomOp::eq;
  if (e.value_quoted) {
    return make_error(TypeError::Kind::malformed_atom, e,
                      "quoted value '" + e.value + "' denotes a physical tag and cannot appear in a specification");
  }
  if (e.feature == kPosFeature) {
    auto node = g.find_node(e.value);
    if (!node) return make_error(TypeError::Kind::unknown_name, e, "unknown part of speech '" + e.value + "'");
    lit.kind = eq ? Literal::Kind::pos_eq : Literal::Kind::pos_ne;
    lit.subject = *node;
    return lit;
  }
  auto f = g.find_feature(e.feature);
  if (!f) return make_error(TypeError::Kind::unknown_name, e, "unknown feature '" + e.feature + "'");
  auto v = g.find_value(*f, e.value);
  if (!v) {
    return make_error(TypeError::Kind::malformed_atom, e,
                      "wrong value '" + e.value + "' for feature '" + e.feature + "'");
  }
  lit.kind = eq ? Literal::Kind::feat_eq : Literal::Kind::feat_ne;
  lit.subject = *f;
  lit.value = *v;
  return lit;
}

void collect_features(const SpecExpr& e, const TypeGraph& g, std::set<FeatureId>& out) {
  if (e.kind == SpecExpr::Kind::atom || e.kind == SpecExpr::Kind::bare) {
    if (auto lit = resolve_atom(e, g); lit.ok() && lit->kind != Literal::Kind::pos_eq &&
                                       lit->kind != Literal::Kind::pos_ne) {
      out.insert(lit->subject);
    }
    return;
  }
  for (const SpecExpr& c : e.children) collect_features(c, g, out);
}

Conjunct simplify(Conjunct c) {
  Conjunct out;
  for (const Literal& lit : c) {
    if (std::find(out.begin(), out.end(), lit) != out.end()) continue;
    out.push_back(lit);
  }
  // An appropriateness guard is implied by any other literal on the feature.
  std::erase_if(out, [&](const Literal& lit) {
    if (lit.kind != Literal::Kind::feat_any) return false;
    return std::any_of(out.begin(), out.end(), [&](const Literal& other) {
      return (other.kind == Literal::Kind::feat_eq || other.kind == Literal::Kind::feat_ne) &&
             other.subject == lit.subject;
    });
  });
  return out;
}

class DnfBuilder {
 public:
  explicit DnfBuilder(const TypeGraph& g) : g_(g) {}

  std::optional<TypeError> error;

  std::vector<Conjunct> build(const SpecExpr& e, bool negate) {
    if (error) return {};
    switch (e.kind) {
      case SpecExpr::Kind::atom:
      case SpecExpr::Kind::bare: {
        auto lit = resolve_atom(e, g_);
        if (!lit) {
          error = lit.error();
          return {};
        }
        Literal l = lit.value();
        if (!negate) return {{l}};
        switch (l.kind) {
          case Literal::Kind::pos_eq: l.kind = Literal::Kind::pos_ne; break;
          case Literal::Kind::pos_ne: l.kind = Literal::Kind::pos_eq; break;
          case Literal::Kind::feat_eq: l.kind = Literal::Kind::feat_ne; break;
          case Literal::Kind::feat_ne: l.kind = Literal::Kind::feat_eq; break;
          case Literal::Kind::feat_any: return {};
        }
        return {{l}};
      }
      case SpecExpr::Kind::neg:
        if (!negate) return build(e.children[0], true);
        // !!a == guard(a) & a
        return product({guard(e.children[0])}, build(e.children[0], false));
      case SpecExpr::Kind::conj:
        if (!negate) return product(build(e.children[0], false), build(e.children[1], false));
        // !(a & b) == guard(a & b) & (!a | !b)
        return product({guard(e)}, concat(build(e.children[0], true), build(e.children[1], true)));
      case SpecExpr::Kind::disj:
        if (!negate) return concat(build(e.children[0], false), build(e.children[1], false));
        // !(a | b) == !a & !b (each side already carries its own guard)
        return product(build(e.children[0], true), build(e.children[1], true));
    }
    return {};
  }

 private:
  Conjunct guard(const SpecExpr& e) {
    std::set<FeatureId> feats;
    collect_features(e, g_, feats);
    Conjunct out;
    for (FeatureId f : feats) out.push_back({Literal::Kind::feat_any, f, 0, e.span});
    return out;
  }

  std::vector<Conjunct> concat(std::vector<Conjunct> a, std::vector<Conjunct> b) {
    a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
    check_size(a.size());
    return a;
  }

  std::vector<Conjunct> product(const std::vector<Conjunct>& a, const std::vector<Conjunct>& b) {
    if (error) return {};
    check_size(a.size() * b.size());
    if (error) return {};
    std::vector<Conjunct> out;
    out.reserve(a.size() * b.size());
    for (const Conjunct& x : a) {
      for (const Conjunct& y : b) {
        Conjunct c = x;
        c.insert(c.end(), y.begin(), y.end());
        out.push_back(simplify(std::move(c)));
      }
    }
    return out;
  }

  void check_size(std::size_t n) {
    if (n > kMaxDisjuncts && !error) {
      TypeError err;
      err.kind = TypeError::Kind::too_complex;
      err.message = "specification too complex: disjunctive normal form exceeds " +
                    std::to_string(kMaxDisjuncts) + " disjuncts";
      error = err;
    }
  }

  const TypeGraph& g_;
};

}  // namespace

Result<Dnf, TypeError> to_dnf(const SpecExpr& e, const TypeGraph& g) {
  DnfBuilder b(g);
  std::vector<Conjunct> disjuncts = b.build(e, false);
  if (b.error) return *b.error;
  for (Conjunct& c : disjuncts) c = simplify(std::move(c));
  return Dnf{std::move(disjuncts)};
}

Result<ClassSet, TypeError> denote(const SpecExpr& e, const TypeGraph& g) {
  switch (e.kind) {
    case SpecExpr::Kind::atom:
    case SpecExpr::Kind::bare: {
      auto lit = resolve_atom(e, g);
      if (!lit) return lit.error();
      return denote(lit.value(), g);
    }
    case SpecExpr::Kind::neg: {
      auto inner = denote(e.children[0], g);
      if (!inner) return inner;
      std::set<FeatureId> feats;
      collect_features(e.children[0], g, feats);
      ClassSet scope = g.all_classes();
      for (FeatureId f : feats) scope &= g.classes_with(f);
      return scope - inner.value();
    }
    case SpecExpr::Kind::conj:
    case SpecExpr::Kind::disj: {
      auto lhs = denote(e.children[0], g);
      if (!lhs) return lhs;
      auto rhs = denote(e.children[1], g);
      if (!rhs) return rhs;
      return e.kind == SpecExpr::Kind::conj ? (lhs.value() & rhs.value()) : (lhs.value() | rhs.value());
    }
  }
  return g.empty_set();
}

namespace {

// Deletion-based minimal unsatisfiable subset of an unsatisfiable conjunct.
Conjunct unsat_core(const Conjunct& c, const TypeGraph& g) {
  Conjunct core = c;
  for (std::size_t i = 0; i < core.size();) {
    Conjunct trial = core;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (!trial.empty() && denote(trial, g).empty()) {
      core = std::move(trial);
    } else {
      ++i;
    }
  }
  return core;
}

std::string join_names(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i != 0) out += i + 1 == items.size() ? " and " : ", ";
    out += items[i];
  }
  return out;
}

}  // namespace

Result<TypedSpec, TypeError> typecheck(const SpecExpr& e, const TypeGraph& g) {
  auto dnf = to_dnf(e, g);
  if (!dnf) return dnf.error();

  ClassSet denotation = g.empty_set();
  for (const Conjunct& c : dnf->disjuncts) {
    ClassSet d = denote(c, g);
    if (!d.empty()) {
      denotation |= d;
      continue;
    }
    TypeError err;
    err.kind = TypeError::Kind::ill_typed;
    err.disjunct = "[" + to_string(c, g) + "]";
    for (const Literal& lit : unsat_core(c, g)) {
      err.conflicting.push_back(to_string(lit, g));
      err.spans.push_back(lit.span);
    }
    if (err.conflicting.size() == 1) {
      err.message = "ill-typed specification: disjunct " + err.disjunct + " is unsatisfiable: " +
                    err.conflicting.front() + " denotes no terminal class";
    } else {
      err.message = "ill-typed specification: disjunct " + err.disjunct + " is unsatisfiable: " +
                    join_names(err.conflicting) + " are not type compatible";
    }
    return err;
  }

  TypedSpec out;
  out.expr = e;
  out.denotation = std::move(denotation);
  for (NodeId leaf : g.leaves())
    if (out.denotation.intersects(g.classes_under(leaf))) out.compatible_leaves.push_back(leaf);
  return out;
}

}  // namespace tagmap
