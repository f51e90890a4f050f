#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "tagmap/mapping.hpp"

namespace tagmap::fixtures {

std::string read_file(const std::string& path);
std::string data_path(std::string_view name);       // shipped data/
std::string test_data_path(std::string_view name);  // tests/data/

std::string tagset_source();  // eagles-en.tagset
std::string rules_source();   // upenn.rules

TypeGraph graph_from(std::string_view source);  // aborts the test run on error
const TypeGraph& fixture_graph();
const TypeGraph& verbs14_graph();
RuleSet rules_from(std::string_view source, const TypeGraph& g);
const RuleSet& fixture_rules();
std::shared_ptr<const Mapping> fixture_mapping();

TypedSpec typed(std::string_view spec, const TypeGraph& g);

/// Replaces the first occurrence of `from`; aborts if it is absent.
std::string replace_once(std::string text, std::string_view from, std::string_view to);
/// Drops every line that contains `needle`.
std::string drop_lines(const std::string& text, std::string_view needle);

/// Collapses runs of whitespace to a single space and trims.
std::string normalize_ws(std::string_view text);

std::string cli_path();

}  // namespace tagmap::fixtures
