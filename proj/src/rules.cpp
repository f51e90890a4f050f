#include "tagmap/rules.hpp"

#include <algorithm>
#include <set>

#include "tagmap/lexer.hpp"

namespace tagmap {

bool RuleSet::in_inventory(std::string_view tag) const {
  return std::find(inventory_.begin(), inventory_.end(), tag) != inventory_.end();
}

const CoverageRule* RuleSet::coverage_for(std::string_view tag) const {
  auto it = coverage_.find(tag);
  return it == coverage_.end() ? nullptr : &it->second;
}

std::vector<const ExceptionEntry*> RuleSet::exceptions_for(std::string_view tag) const {
  std::vector<const ExceptionEntry*> out;
  for (const ExceptionEntry& e : exceptions_)
    if (e.out_of == tag) out.push_back(&e);
  return out;
}

const ExceptionEntry* RuleSet::exception_for(std::string_view word, std::string_view tag) const {
  auto it = word_index_.find({std::string(word), std::string(tag)});
  return it == word_index_.end() ? nullptr : &exceptions_[it->second];
}

void RuleSet::rebuild_word_index() {
  word_index_.clear();
  for (std::size_t i = 0; i < exceptions_.size(); ++i)
    for (const std::string& w : exceptions_[i].words) word_index_.emplace(std::make_pair(w, exceptions_[i].out_of), i);
}

RuleSet RuleSet::without_coverage(std::string_view tag) const {
  RuleSet out = *this;
  if (auto it = out.coverage_.find(tag); it != out.coverage_.end()) out.coverage_.erase(it);
  return out;
}

RuleSet RuleSet::without_exception(std::size_t index) const {
  RuleSet out = *this;
  if (index < out.exceptions_.size()) {
    out.exceptions_.erase(out.exceptions_.begin() + static_cast<std::ptrdiff_t>(index));
    out.rebuild_word_index();
  }
  return out;
}

namespace {

struct TagRef {
  std::string tag;
  SourceSpan span;
};

class RuleParser {
 public:
  RuleParser(std::string_view src, const TypeGraph& g) : ts_(tokenize(src)), g_(g) {}

  Diagnostics diags;
  std::string name;
  std::string tagset_name;
  std::vector<TagRef> header_tags;
  bool saw_tags = false;

  struct RawCoverage {
    TagRef tag;
    SpecExpr target;
    SourceSpan span;
  };
  struct RawException {
    std::vector<std::pair<std::string, SourceSpan>> words;
    TagRef tag;
    SpecExpr into;
    SourceSpan span;
  };
  std::vector<RawCoverage> coverage;
  std::vector<RawException> exceptions;

  void run() {
    parse_header();
    while (!ts_.at_end()) {
      std::size_t before = ts_.position();
      if (!parse_rule()) recover();
      if (ts_.position() == before) ts_.next();
    }
  }

 private:
  static std::string describe(const LexToken& t) {
    if (t.kind == TokenKind::name) return "'" + t.text + "'";
    if (t.kind == TokenKind::quoted) return "'" + t.text + "' (quoted)";
    if (t.kind == TokenKind::invalid) return "invalid character '" + t.text + "'";
    return std::string(token_kind_name(t.kind));
  }

  void error(SourceSpan span, std::string msg) { diags.push_back(Diagnostic::error(span, std::move(msg))); }

  bool keyword(std::string_view kw) {
    if (ts_.at(TokenKind::name) && ts_.peek().text == kw) {
      ts_.next();
      return true;
    }
    return false;
  }

  bool expect_keyword(std::string_view kw) {
    if (keyword(kw)) return true;
    error(ts_.peek().span, "syntax error: expected '" + std::string(kw) + "', found " + describe(ts_.peek()));
    return false;
  }

  bool expect(TokenKind kind) {
    if (ts_.accept(kind)) return true;
    error(ts_.peek().span,
          "syntax error: expected " + std::string(token_kind_name(kind)) + ", found " + describe(ts_.peek()));
    return false;
  }

  void recover() {
    while (!ts_.at_end() && !ts_.at(TokenKind::dot)) ts_.next();
    ts_.accept(TokenKind::dot);
  }

  void parse_header() {
    if (!expect_keyword("mapping")) return skip_header();
    if (!ts_.at(TokenKind::name)) {
      error(ts_.peek().span, "syntax error: expected mapping name, found " + describe(ts_.peek()));
      return skip_header();
    }
    name = ts_.next().text;
    if (!expect_keyword("for") || !expect_keyword("tagset")) return skip_header();
    if (!ts_.at(TokenKind::name)) {
      error(ts_.peek().span, "syntax error: expected tagset name, found " + describe(ts_.peek()));
      return skip_header();
    }
    const LexToken& ts_name = ts_.next();
    tagset_name = ts_name.text;
    if (tagset_name != g_.name()) {
      error(ts_name.span, "rules are written for tagset '" + tagset_name + "' but the loaded tagset is '" +
                              g_.name() + "'");
    }
    if (keyword("tags")) {
      saw_tags = true;
      do {
        if (!ts_.at(TokenKind::name) && !ts_.at(TokenKind::quoted)) {
          error(ts_.peek().span, "syntax error: expected a tag name, found " + describe(ts_.peek()));
          return skip_header();
        }
        const LexToken& t = ts_.next();
        header_tags.push_back({t.text, t.span});
      } while (ts_.accept(TokenKind::comma));
    }
  }

  void skip_header() {
    while (!ts_.at_end() && !ts_.at(TokenKind::lbracket)) ts_.next();
  }

  // `[pos = 'TAG']`
  std::optional<TagRef> tag_selector() {
    if (!expect(TokenKind::lbracket)) return std::nullopt;
    if (!expect_keyword("pos") || !expect(TokenKind::eq)) return std::nullopt;
    if (!ts_.at(TokenKind::quoted)) {
      error(ts_.peek().span, "syntax error: expected a quoted physical tag, found " + describe(ts_.peek()));
      return std::nullopt;
    }
    const LexToken& t = ts_.next();
    if (!expect(TokenKind::rbracket)) return std::nullopt;
    return TagRef{t.text, t.span};
  }

  std::optional<SpecExpr> spec() {
    auto r = parse_spec(ts_);
    if (!r) {
      diags.insert(diags.end(), r.diagnostics().begin(), r.diagnostics().end());
      return std::nullopt;
    }
    return std::move(r).value();
  }

  bool parse_rule() {
    if (!ts_.at(TokenKind::lbracket)) {
      error(ts_.peek().span, "syntax error: expected '[' to start a rule, found " + describe(ts_.peek()));
      return false;
    }
    SourcePos begin = ts_.peek().span.begin;
    bool is_coverage = ts_.peek(1).kind == TokenKind::name && ts_.peek(1).text == "pos" &&
                       ts_.peek(2).kind == TokenKind::eq;
    if (is_coverage) {
      auto tag = tag_selector();
      if (!tag || !expect(TokenKind::arrow)) return false;
      auto target = spec();
      if (!target) return false;
      if (!ts_.at(TokenKind::dot)) {
        error(ts_.peek().span, "syntax error: expected '.' to end the rule, found " + describe(ts_.peek()));
        return false;
      }
      SourcePos end = ts_.next().span.end;
      coverage.push_back({*tag, std::move(*target), {begin, end}});
      return true;
    }

    ts_.next();
    RawException ex;
    do {
      if (!ts_.at(TokenKind::name) && !ts_.at(TokenKind::quoted)) {
        error(ts_.peek().span, "syntax error: expected a word form, found " + describe(ts_.peek()));
        return false;
      }
      const LexToken& w = ts_.next();
      ex.words.emplace_back(w.text, w.span);
    } while (ts_.accept(TokenKind::comma));
    if (!expect(TokenKind::rbracket) || !expect(TokenKind::out_of)) return false;
    auto tag = tag_selector();
    if (!tag || !expect(TokenKind::into)) return false;
    auto into = spec();
    if (!into) return false;
    if (!ts_.at(TokenKind::dot)) {
      error(ts_.peek().span, "syntax error: expected '.' to end the rule, found " + describe(ts_.peek()));
      return false;
    }
    SourcePos end = ts_.next().span.end;
    ex.tag = *tag;
    ex.into = std::move(*into);
    ex.span = {begin, end};
    exceptions.push_back(std::move(ex));
    return true;
  }

  TokenStream ts_;
  const TypeGraph& g_;
};

std::string type_error_text(const TypeError& err) { return err.message; }

}  // namespace

Result<RuleSet> parse_rules(std::string_view source, const TypeGraph& g, const std::vector<std::string>* inventory) {
  RuleParser p(source, g);
  p.run();
  Diagnostics diags = std::move(p.diags);
  auto error = [&](SourceSpan span, std::string msg) { diags.push_back(Diagnostic::error(span, std::move(msg))); };

  RuleSet rs;
  rs.name_ = p.name;
  rs.tagset_name_ = p.tagset_name;

  if (inventory != nullptr) {
    std::set<std::string> seen;
    for (const std::string& t : *inventory) {
      if (!seen.insert(t).second) error({}, "duplicate tag '" + t + "' in inventory");
      else rs.inventory_.push_back(t);
    }
  } else {
    if (!p.saw_tags) error({}, "missing 'tags' inventory in rule file header");
    std::set<std::string> seen;
    for (const TagRef& t : p.header_tags) {
      if (!seen.insert(t.tag).second) error(t.span, "duplicate tag '" + t.tag + "' in inventory");
      else rs.inventory_.push_back(t.tag);
    }
  }

  for (auto& raw : p.coverage) {
    if (!rs.in_inventory(raw.tag.tag)) {
      error(raw.tag.span, "unknown physical tag '" + raw.tag.tag + "' (not in the tags inventory)");
      continue;
    }
    if (const CoverageRule* prior = rs.coverage_for(raw.tag.tag)) {
      error(raw.tag.span, "duplicate coverage rule for tag '" + raw.tag.tag + "' (first defined at line " +
                              std::to_string(prior->span.begin.line) + ")");
      continue;
    }
    auto typed = typecheck(raw.target, g);
    if (!typed) {
      Diagnostic d = typed.error().to_diagnostic();
      d.message = "in coverage rule for '" + raw.tag.tag + "': " + type_error_text(typed.error());
      diags.push_back(std::move(d));
      continue;
    }
    rs.coverage_.emplace(raw.tag.tag, CoverageRule{raw.tag.tag, std::move(typed).value(), raw.span});
  }

  for (auto& raw : p.exceptions) {
    if (!rs.in_inventory(raw.tag.tag)) {
      error(raw.tag.span, "unknown physical tag '" + raw.tag.tag + "' (not in the tags inventory)");
      continue;
    }
    const CoverageRule* cov = rs.coverage_for(raw.tag.tag);
    bool coverage_failed = std::any_of(p.coverage.begin(), p.coverage.end(),
                                       [&](const auto& c) { return c.tag.tag == raw.tag.tag; });
    if (cov == nullptr && !coverage_failed) {
      error(raw.tag.span, "exception for tag '" + raw.tag.tag + "' which has no coverage rule");
    }
    auto typed = typecheck(raw.into, g);
    if (!typed) {
      Diagnostic d = typed.error().to_diagnostic();
      d.message = "in exception entry for '" + raw.tag.tag + "': " + type_error_text(typed.error());
      diags.push_back(std::move(d));
      continue;
    }
    ExceptionEntry entry;
    entry.out_of = raw.tag.tag;
    entry.span = raw.span;
    bool ok = true;
    for (auto& [word, span] : raw.words) {
      if (std::find(entry.words.begin(), entry.words.end(), word) != entry.words.end()) {
        error(span, "word '" + word + "' listed twice in exception entry");
        ok = false;
        continue;
      }
      if (const ExceptionEntry* prior = rs.exception_for(word, raw.tag.tag)) {
        error(span, "word '" + word + "' is already an exception for tag '" + raw.tag.tag + "' (line " +
                        std::to_string(prior->span.begin.line) + ")");
        ok = false;
        continue;
      }
      entry.words.push_back(word);
    }
    if (!ok || cov == nullptr) continue;
    if (typed->denotation == cov->target.denotation) {
      rs.warnings_.push_back(Diagnostic::warning(
          raw.span, "exception entry for '" + raw.tag.tag + "' has the same denotation as its coverage rule"));
    }
    entry.into = std::move(typed).value();
    rs.exceptions_.push_back(std::move(entry));
    for (const std::string& w : rs.exceptions_.back().words)
      rs.word_index_.emplace(std::make_pair(w, raw.tag.tag), rs.exceptions_.size() - 1);
  }

  if (has_errors(diags)) return diags;
  return rs;
}

Result<Reading, DefinitionHoleError> standard_reading(const RuleSet& rs, std::string_view word, std::string_view tag) {
  const CoverageRule* cov = rs.coverage_for(tag);
  if (cov == nullptr) return DefinitionHoleError{std::string(tag)};
  if (const ExceptionEntry* e = rs.exception_for(word, tag)) return Reading{&e->into, Provenance::exception, e};
  return Reading{&cov->target, Provenance::coverage, nullptr};
}

}  // namespace tagmap
