#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tagmap/diagnostic.hpp"
#include "tagmap/rules.hpp"

namespace tagmap {

enum class CorpusFormat { slash, tsv };

struct Token {
  std::string word;
  std::string tag;
  SourcePos position;
};

struct RetagRecord {
  Token token;
  std::string reading;                    // canonical spec text; empty for holes
  std::optional<Provenance> provenance;  // empty for holes
  bool underspecified = false;            // reading denotes more than one class
  bool hole = false;                      // tag has no coverage rule
};

struct RetagSummary {
  std::size_t tokens = 0;
  std::size_t exceptions = 0;
  std::size_t underspecified = 0;
  std::size_t malformed_lines = 0;
  std::map<std::string, std::size_t> holes_by_tag;
  bool saw_possessive = false;

  std::size_t holes() const;
  /// Associative, so per-worker summaries can be combined in any grouping.
  RetagSummary& merge(const RetagSummary& other);
};

/// Slash format splits whitespace-separated items at the last `/`; tsv
/// expects exactly `word<TAB>tag`. Empty or blank lines yield no tokens.
Result<std::vector<Token>> parse_corpus_line(std::string_view line, CorpusFormat format, std::size_t line_no = 1);

RetagRecord retag_token(const Token& token, const RuleSet& rs);

/// `word<TAB>tag<TAB>reading<TAB>provenance<TAB>flags`
std::string format_record(const RetagRecord& rec);
/// Trailing `#`-prefixed summary block.
std::string format_summary(const RetagSummary& s);

/// Streams `in` to `out` one record per token in input order, then appends the
/// summary block (omitted for empty input). Malformed lines are skipped and reported through `diags`.
RetagSummary retag_stream(std::istream& in, std::ostream& out, const RuleSet& rs, CorpusFormat format,
                          Diagnostics* diags = nullptr);

}  // namespace tagmap
