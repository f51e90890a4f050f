#include "fixtures.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace tagmap::fixtures {

namespace {

[[noreturn]] void fail(const std::string& what, const Diagnostics& diags) {
  std::cerr << "fixture error: " << what << "\n";
  for (const Diagnostic& d : diags) std::cerr << "  " << format_diagnostic(d, what) << "\n";
  std::abort();
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read " + path, {});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data_path(std::string_view name) { return std::string(TAGMAP_DATA_DIR) + "/" + std::string(name); }
std::string test_data_path(std::string_view name) {
  return std::string(TAGMAP_TEST_DATA_DIR) + "/" + std::string(name);
}

std::string tagset_source() { return read_file(data_path("eagles-en.tagset")); }
std::string rules_source() { return read_file(data_path("upenn.rules")); }

TypeGraph graph_from(std::string_view source) {
  auto r = parse_tagset_definition(source);
  if (!r.ok()) fail("tagset", r.error());
  return std::move(r).value();
}

const TypeGraph& fixture_graph() {
  static const TypeGraph g = graph_from(tagset_source());
  return g;
}

const TypeGraph& verbs14_graph() {
  static const TypeGraph g = graph_from(read_file(test_data_path("verbs14.tagset")));
  return g;
}

RuleSet rules_from(std::string_view source, const TypeGraph& g) {
  auto r = parse_rules(source, g);
  if (!r.ok()) fail("rules", r.error());
  return std::move(r).value();
}

const RuleSet& fixture_rules() {
  static const RuleSet rs = rules_from(rules_source(), fixture_graph());
  return rs;
}

std::shared_ptr<const Mapping> fixture_mapping() {
  static const std::shared_ptr<const Mapping> m = [] {
    CompileOutcome out = compile_mapping(tagset_source(), rules_source());
    if (!out.mapping) fail("mapping", out.rules_diagnostics);
    return out.mapping;
  }();
  return m;
}

TypedSpec typed(std::string_view spec, const TypeGraph& g) {
  auto e = parse_spec(spec);
  if (!e.ok()) fail("spec " + std::string(spec), e.error());
  auto t = typecheck(e.value(), g);
  if (!t.ok()) fail("spec " + std::string(spec) + ": " + t.error().message, {});
  return std::move(t).value();
}

std::string replace_once(std::string text, std::string_view from, std::string_view to) {
  auto pos = text.find(from);
  if (pos == std::string::npos) fail("missing text: " + std::string(from), {});
  text.replace(pos, from.size(), to);
  return text;
}

std::string drop_lines(const std::string& text, std::string_view needle) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.find(needle) == std::string::npos) out += line + "\n";
  return out;
}

std::string normalize_ws(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string word, out;
  while (in >> word) out += (out.empty() ? "" : " ") + word;
  return out;
}

std::string cli_path() { return TAGMAP_CLI_PATH; }

}  // namespace tagmap::fixtures
