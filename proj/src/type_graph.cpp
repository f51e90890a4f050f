#include "tagmap/type_graph.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <utility>

#include "tagmap/lexer.hpp"

namespace tagmap {

namespace {

bool is_lower_identifier(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

struct RawCondition {
  LexToken feature;
  LexToken value;
};

struct RawFeature {
  LexToken name;
  LexToken home;
  std::vector<RawCondition> conditions;
  std::vector<LexToken> values;
};

struct RawNode {
  LexToken name;
  std::optional<std::size_t> parent;
};

class TagsetParser {
 public:
  explicit TagsetParser(std::string_view src) : ts_(tokenize(src)) {}

  void run() {
    while (!ts_.at_end()) {
      const LexToken& t = ts_.peek();
      if (t.kind == TokenKind::invalid) {
        error(t.span, "unexpected character '" + t.text + "'");
        ts_.next();
        continue;
      }
      if (t.kind == TokenKind::name && t.text == "tagset") {
        ts_.next();
        parse_tagset_header(t);
      } else if (t.kind == TokenKind::name && t.text == "hierarchy") {
        ts_.next();
        parse_hierarchy(t);
      } else if (t.kind == TokenKind::name && t.text == "feature") {
        ts_.next();
        parse_feature();
      } else {
        error(t.span, "expected 'tagset', 'hierarchy' or 'feature', found " + describe(t));
        recover_to_statement();
      }
    }
  }

  std::optional<LexToken> name;
  std::vector<RawNode> nodes;
  bool saw_hierarchy = false;
  std::vector<RawFeature> features;
  Diagnostics diags;

 private:
  static std::string describe(const LexToken& t) {
    if (t.kind == TokenKind::name) return "'" + t.text + "'";
    return std::string(token_kind_name(t.kind));
  }

  void error(SourceSpan span, std::string msg) { diags.push_back(Diagnostic::error(span, std::move(msg))); }

  void recover_to_statement() {
    ts_.next();
    while (!ts_.at_end()) {
      const LexToken& t = ts_.peek();
      if (t.kind == TokenKind::name && (t.text == "tagset" || t.text == "hierarchy" || t.text == "feature"))
        return;
      ts_.next();
    }
  }

  std::optional<LexToken> expect_name(std::string_view what) {
    if (ts_.at(TokenKind::name)) return ts_.next();
    error(ts_.peek().span, "expected " + std::string(what) + ", found " + describe(ts_.peek()));
    return std::nullopt;
  }

  bool expect(TokenKind kind) {
    if (ts_.accept(kind)) return true;
    error(ts_.peek().span, "expected " + std::string(token_kind_name(kind)) + ", found " + describe(ts_.peek()));
    return false;
  }

  void parse_tagset_header(const LexToken& kw) {
    auto n = expect_name("tagset name");
    if (!n) return recover_to_statement();
    if (name) {
      error(kw.span, "duplicate 'tagset' declaration");
      return;
    }
    name = *n;
  }

  void parse_hierarchy(const LexToken& kw) {
    if (saw_hierarchy) {
      error(kw.span, "duplicate 'hierarchy' block");
    }
    if (!expect(TokenKind::lbrace)) return recover_to_statement();
    std::size_t top_level = 0;
    bool ok = true;
    while (ok && !ts_.at(TokenKind::rbrace) && !ts_.at_end()) {
      if (top_level == 1) {
        error(ts_.peek().span, "hierarchy must have a single root node");
        ok = false;
        break;
      }
      ok = parse_node(std::nullopt, saw_hierarchy);
      ++top_level;
    }
    if (!ok) return recover_to_statement();
    if (!expect(TokenKind::rbrace)) return recover_to_statement();
    if (top_level == 0) error(kw.span, "hierarchy is empty; a root node is required");
    saw_hierarchy = true;
  }

  // `discard` parses a duplicate hierarchy block without recording nodes.
  bool parse_node(std::optional<std::size_t> parent, bool discard) {
    auto n = expect_name("hierarchy node name");
    if (!n) return false;
    std::optional<std::size_t> self;
    if (!discard) {
      nodes.push_back({*n, parent});
      self = nodes.size() - 1;
    }
    if (ts_.accept(TokenKind::lbrace)) {
      while (!ts_.at(TokenKind::rbrace)) {
        if (ts_.at_end() || !ts_.at(TokenKind::name)) {
          error(ts_.peek().span, "expected child node name or '}', found " + describe(ts_.peek()));
          return false;
        }
        if (!parse_node(self, discard)) return false;
      }
      ts_.next();
    }
    return true;
  }

  void parse_feature() {
    RawFeature f;
    auto n = expect_name("feature name");
    if (!n) return recover_to_statement();
    f.name = *n;
    if (!(ts_.at(TokenKind::name) && ts_.peek().text == "for")) {
      error(ts_.peek().span, "expected 'for' after feature name, found " + describe(ts_.peek()));
      return recover_to_statement();
    }
    ts_.next();
    auto home = expect_name("home node name");
    if (!home) return recover_to_statement();
    f.home = *home;
    if (ts_.at(TokenKind::name) && ts_.peek().text == "when") {
      ts_.next();
      do {
        auto cf = expect_name("condition feature");
        if (!cf) return recover_to_statement();
        if (!expect(TokenKind::eq)) return recover_to_statement();
        auto cv = expect_name("condition value");
        if (!cv) return recover_to_statement();
        f.conditions.push_back({*cf, *cv});
      } while (ts_.at(TokenKind::name) && ts_.peek().text == "or" && (ts_.next(), true));
    }
    if (!expect(TokenKind::lbrace)) return recover_to_statement();
    if (!ts_.at(TokenKind::rbrace)) {
      do {
        auto v = expect_name("value name");
        if (!v) return recover_to_statement();
        f.values.push_back(*v);
      } while (ts_.accept(TokenKind::comma));
    }
    if (!expect(TokenKind::rbrace)) return recover_to_statement();
    if (f.values.empty()) error(f.name.span, "feature '" + f.name.text + "' declares no values");
    features.push_back(std::move(f));
  }

  TokenStream ts_;
};

}  // namespace

Result<TypeGraph> parse_tagset_definition(std::string_view source) {
  TagsetParser p(source);
  p.run();
  Diagnostics diags = std::move(p.diags);
  auto error = [&](SourceSpan span, std::string msg) { diags.push_back(Diagnostic::error(span, std::move(msg))); };

  TypeGraph g;
  if (!p.name) {
    error({}, "missing 'tagset <name>' declaration");
  } else {
    g.name_ = p.name->text;
  }
  if (!p.saw_hierarchy) error({}, "missing 'hierarchy' block");

  // Hierarchy nodes arrive in pre-order, which is document order.
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    const RawNode& rn = p.nodes[i];
    if (!is_lower_identifier(rn.name.text)) {
      error(rn.name.span, "node name '" + rn.name.text + "' must be a lowercase identifier");
    }
    if (rn.name.text == kPosFeature) {
      error(rn.name.span, "'pos' is reserved and cannot name a hierarchy node");
    }
    if (g.node_index_.count(rn.name.text) != 0) {
      error(rn.name.span, "duplicate node '" + rn.name.text + "'");
    } else {
      g.node_index_.emplace(rn.name.text, i);
    }
    HierarchyNode node;
    node.name = rn.name.text;
    node.parent = rn.parent;
    node.span = rn.name.span;
    if (rn.parent) {
      node.depth = g.nodes_[*rn.parent].depth + 1;
      g.nodes_[*rn.parent].children.push_back(i);
    }
    g.nodes_.push_back(std::move(node));
  }

  // Features.
  for (std::size_t i = 0; i < p.features.size(); ++i) {
    const RawFeature& rf = p.features[i];
    FeatureDecl decl;
    decl.name = rf.name.text;
    decl.span = rf.name.span;
    if (!is_lower_identifier(decl.name)) {
      error(rf.name.span, "feature name '" + decl.name + "' must be a lowercase identifier");
    }
    if (decl.name == kPosFeature) {
      error(rf.name.span, "'pos' is reserved for the hierarchy and cannot be declared as a feature");
    } else if (g.feature_index_.count(decl.name) != 0) {
      error(rf.name.span, "duplicate feature '" + decl.name + "'");
    } else {
      g.feature_index_.emplace(decl.name, i);
    }
    if (g.node_index_.count(decl.name) != 0) {
      error(rf.name.span, "feature '" + decl.name + "' has the same name as a hierarchy node");
    }
    if (auto home = g.find_node(rf.home.text)) {
      decl.home = *home;
    } else {
      error(rf.home.span, "feature '" + decl.name + "' has unknown home node '" + rf.home.text + "'");
    }
    std::set<std::string> seen;
    for (const LexToken& v : rf.values) {
      if (!is_lower_identifier(v.text)) {
        error(v.span, "value '" + v.text + "' must be a lowercase identifier");
      }
      if (!seen.insert(v.text).second) {
        error(v.span, "duplicate value '" + v.text + "' in feature '" + decl.name + "'");
        continue;
      }
      decl.values.push_back(v.text);
    }
    g.features_.push_back(std::move(decl));
  }

  // Value index; values must be globally unique and distinct from node and
  // feature names so that bare atoms resolve unambiguously.
  for (FeatureId f = 0; f < g.features_.size(); ++f) {
    const RawFeature& rf = p.features[f];
    for (const LexToken& v : rf.values) {
      auto decl_it = std::find(g.features_[f].values.begin(), g.features_[f].values.end(), v.text);
      if (decl_it == g.features_[f].values.end()) continue;
      auto vid = static_cast<ValueId>(decl_it - g.features_[f].values.begin());
      if (g.node_index_.count(v.text) != 0) {
        error(v.span, "value '" + v.text + "' has the same name as a hierarchy node");
      }
      if (g.feature_index_.count(v.text) != 0 || v.text == kPosFeature) {
        error(v.span, "value '" + v.text + "' has the same name as a feature");
      }
      auto [it, inserted] = g.value_index_.emplace(v.text, ValueRef{f, vid});
      if (!inserted && it->second.feature != f) {
        error(v.span, "ambiguous value '" + v.text + "' declared for features '" +
                          g.features_[it->second.feature].name + "' and '" + g.features_[f].name + "'");
      }
    }
  }

  // Conditions.
  for (FeatureId f = 0; f < g.features_.size(); ++f) {
    for (const RawCondition& rc : p.features[f].conditions) {
      auto cf = g.find_feature(rc.feature.text);
      if (!cf) {
        error(rc.feature.span, "condition of feature '" + g.features_[f].name + "' references unknown feature '" +
                                   rc.feature.text + "'");
        continue;
      }
      auto cv = g.find_value(*cf, rc.value.text);
      if (!cv) {
        error(rc.value.span, "condition of feature '" + g.features_[f].name + "' references unknown value '" +
                                 rc.value.text + "' of feature '" + rc.feature.text + "'");
        continue;
      }
      g.features_[f].conditions.push_back({*cf, *cv});
    }
  }

  if (has_errors(diags)) return diags;

  // Topological order of features along condition dependencies.
  std::vector<int> state(g.features_.size(), 0);  // 0 new, 1 visiting, 2 done
  bool cyclic = false;
  std::function<void(FeatureId)> visit = [&](FeatureId f) {
    if (state[f] == 2 || cyclic) return;
    if (state[f] == 1) {
      cyclic = true;
      error(g.features_[f].span, "cyclic appropriateness involving feature '" + g.features_[f].name + "'");
      return;
    }
    state[f] = 1;
    for (const Condition& c : g.features_[f].conditions) visit(c.feature);
    state[f] = 2;
    if (!cyclic) g.topo_order_.push_back(f);
  };
  for (FeatureId f = 0; f < g.features_.size() && !cyclic; ++f) visit(f);
  if (cyclic) return diags;

  g.finalize();
  return g;
}

void TypeGraph::finalize() {
  for (NodeId n = 0; n < nodes_.size(); ++n)
    if (nodes_[n].is_leaf()) leaves_.push_back(n);

  const std::size_t nf = features_.size();
  for (NodeId leaf : leaves_) {
    std::vector<FeatureId> order;
    for (FeatureId f : topo_order_)
      if (is_ancestor_or_self(features_[f].home, leaf)) order.push_back(f);

    std::vector<TerminalClass> local;
    TerminalClass current{leaf, std::vector<int>(nf, kAbsent)};
    std::function<void(std::size_t)> expand = [&](std::size_t k) {
      if (k == order.size()) {
        local.push_back(current);
        return;
      }
      const FeatureDecl& fd = features_[order[k]];
      bool appropriate = fd.conditions.empty() ||
                         std::any_of(fd.conditions.begin(), fd.conditions.end(), [&](const Condition& c) {
                           return current.values[c.feature] == static_cast<int>(c.value);
                         });
      if (!appropriate) {
        expand(k + 1);
        return;
      }
      for (ValueId v = 0; v < fd.values.size(); ++v) {
        current.values[order[k]] = static_cast<int>(v);
        expand(k + 1);
      }
      current.values[order[k]] = kAbsent;
    };
    expand(0);
    // Value order follows feature declaration order; absent sorts first.
    std::sort(local.begin(), local.end(), [](const TerminalClass& a, const TerminalClass& b) {
      return a.values < b.values;
    });
    universe_.insert(universe_.end(), local.begin(), local.end());
  }

  const std::size_t n = universe_.size();
  for (ClassId id = 0; id < n; ++id) class_index_.emplace(universe_[id], id);

  under_.assign(nodes_.size(), ClassSet(n));
  with_feature_.assign(nf, ClassSet(n));
  with_value_.resize(nf);
  for (FeatureId f = 0; f < nf; ++f) with_value_[f].assign(features_[f].values.size(), ClassSet(n));

  for (ClassId id = 0; id < n; ++id) {
    const TerminalClass& tc = universe_[id];
    for (std::optional<NodeId> a = tc.leaf; a; a = nodes_[*a].parent) under_[*a].insert(id);
    for (FeatureId f = 0; f < nf; ++f) {
      if (!tc.has(f)) continue;
      with_feature_[f].insert(id);
      with_value_[f][static_cast<std::size_t>(tc.values[f])].insert(id);
    }
  }
}

std::optional<NodeId> TypeGraph::find_node(std::string_view name) const {
  auto it = node_index_.find(name);
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

bool TypeGraph::is_ancestor_or_self(NodeId ancestor, NodeId node) const {
  for (std::optional<NodeId> n = node; n; n = nodes_[*n].parent)
    if (*n == ancestor) return true;
  return false;
}

NodeId TypeGraph::common_ancestor(NodeId a, NodeId b) const {
  while (nodes_[a].depth > nodes_[b].depth) a = *nodes_[a].parent;
  while (nodes_[b].depth > nodes_[a].depth) b = *nodes_[b].parent;
  while (a != b) {
    a = *nodes_[a].parent;
    b = *nodes_[b].parent;
  }
  return a;
}

std::optional<FeatureId> TypeGraph::find_feature(std::string_view name) const {
  auto it = feature_index_.find(name);
  if (it == feature_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ValueId> TypeGraph::find_value(FeatureId feature, std::string_view value) const {
  const auto& vals = features_[feature].values;
  auto it = std::find(vals.begin(), vals.end(), value);
  if (it == vals.end()) return std::nullopt;
  return static_cast<ValueId>(it - vals.begin());
}

std::optional<ValueRef> TypeGraph::value_owner(std::string_view value) const {
  auto it = value_index_.find(value);
  if (it == value_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<FeatureId> TypeGraph::appropriate_features(NodeId node) const {
  std::vector<FeatureId> out;
  for (FeatureId f = 0; f < features_.size(); ++f)
    if (is_ancestor_or_self(features_[f].home, node)) out.push_back(f);
  return out;
}

std::optional<ClassId> TypeGraph::class_id(const TerminalClass& tc) const {
  auto it = class_index_.find(tc);
  if (it == class_index_.end()) return std::nullopt;
  return it->second;
}

std::string TypeGraph::render_class(ClassId id) const { return render_class(universe_[id]); }

std::string TypeGraph::render_class(const TerminalClass& tc) const {
  std::string out = "[pos=" + nodes_[tc.leaf].name;
  for (FeatureId f = 0; f < features_.size(); ++f) {
    if (!tc.has(f)) continue;
    out += " & " + features_[f].name + "=" + features_[f].values[static_cast<std::size_t>(tc.values[f])];
  }
  out += "]";
  return out;
}

Result<TerminalClass> TypeGraph::parse_class(std::string_view text) const {
  TokenStream ts(tokenize(text));
  auto fail = [&](const std::string& msg) -> Result<TerminalClass> {
    return Diagnostic::error(ts.peek().span, msg);
  };
  bool bracketed = ts.accept(TokenKind::lbracket);
  TerminalClass tc{0, std::vector<int>(features_.size(), kAbsent)};
  bool have_leaf = false;
  do {
    if (!ts.at(TokenKind::name)) return fail("expected feature name");
    std::string feat = ts.next().text;
    if (!ts.accept(TokenKind::eq)) return fail("expected '='");
    if (!ts.at(TokenKind::name)) return fail("expected value");
    std::string val = ts.next().text;
    if (feat == kPosFeature) {
      auto leaf = find_node(val);
      if (!leaf || !nodes_[*leaf].is_leaf() || have_leaf) return fail("invalid pos '" + val + "'");
      tc.leaf = *leaf;
      have_leaf = true;
      continue;
    }
    auto f = find_feature(feat);
    if (!f) return fail("unknown feature '" + feat + "'");
    auto v = find_value(*f, val);
    if (!v) return fail("unknown value '" + val + "' for feature '" + feat + "'");
    if (tc.has(*f)) return fail("feature '" + feat + "' assigned twice");
    tc.values[*f] = static_cast<int>(*v);
  } while (ts.accept(TokenKind::amp));
  if (bracketed && !ts.accept(TokenKind::rbracket)) return fail("expected ']'");
  if (!ts.at_end()) return fail("unexpected trailing input");
  if (!have_leaf) return fail("missing pos");
  if (!class_id(tc)) return fail("description is not a terminal class of tagset '" + name_ + "'");
  return tc;
}

std::vector<TerminalClass> enumerate_terminal_classes(const TypeGraph& graph) { return graph.universe(); }

Result<std::vector<FeatureId>> appropriate_features(const TypeGraph& graph, std::string_view node) {
  auto id = graph.find_node(node);
  if (!id) return Diagnostic::error({}, "unknown hierarchy node '" + std::string(node) + "'");
  return graph.appropriate_features(*id);
}

}  // namespace tagmap
