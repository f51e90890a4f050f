#include "tagmap/retagger.hpp"

#include <istream>
#include <ostream>

namespace tagmap {

std::size_t RetagSummary::holes() const {
  std::size_t n = 0;
  for (const auto& [tag, count] : holes_by_tag) n += count;
  return n;
}

RetagSummary& RetagSummary::merge(const RetagSummary& other) {
  tokens += other.tokens;
  exceptions += other.exceptions;
  underspecified += other.underspecified;
  malformed_lines += other.malformed_lines;
  for (const auto& [tag, count] : other.holes_by_tag) holes_by_tag[tag] += count;
  saw_possessive = saw_possessive || other.saw_possessive;
  return *this;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

Diagnostic at(std::size_t line, std::size_t col, std::string msg) {
  SourcePos p{line, col, 0};
  return Diagnostic::error({p, p}, std::move(msg));
}

}  // namespace

Result<std::vector<Token>> parse_corpus_line(std::string_view line, CorpusFormat format, std::size_t line_no) {
  std::vector<Token> out;
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

  if (format == CorpusFormat::tsv) {
    bool blank = true;
    for (char c : line) blank = blank && is_space(c);
    if (blank) return out;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos) {
      return at(line_no, 1, "expected exactly two tab-separated fields (word, tag)");
    }
    std::string_view word = line.substr(0, tab);
    std::string_view tag = line.substr(tab + 1);
    if (word.empty() || tag.empty()) return at(line_no, word.empty() ? 1 : tab + 2, "empty word or tag field");
    out.push_back({std::string(word), std::string(tag), {line_no, 1, 0}});
    return out;
  }

  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    std::string_view item = line.substr(start, i - start);
    auto slash = item.rfind('/');
    if (slash == std::string_view::npos) {
      return at(line_no, start + 1, "item '" + std::string(item) + "' has no '/' separating word and tag");
    }
    if (slash == 0 || slash + 1 == item.size()) {
      return at(line_no, start + 1, "item '" + std::string(item) + "' has an empty word or tag");
    }
    out.push_back({std::string(item.substr(0, slash)), std::string(item.substr(slash + 1)), {line_no, start + 1, 0}});
  }
  return out;
}

RetagRecord retag_token(const Token& token, const RuleSet& rs) {
  RetagRecord rec;
  rec.token = token;
  auto reading = standard_reading(rs, token.word, token.tag);
  if (!reading) {
    rec.hole = true;
    return rec;
  }
  rec.reading = reading->spec->text();
  rec.provenance = reading->provenance;
  rec.underspecified = reading->spec->denotation.count() > 1;
  return rec;
}

std::string format_record(const RetagRecord& rec) {
  std::string flags;
  if (rec.underspecified) flags = "underspecified";
  if (rec.hole) flags += flags.empty() ? "hole" : ",hole";
  if (flags.empty()) flags = "-";
  std::string prov = "-";
  if (rec.provenance) prov = *rec.provenance == Provenance::exception ? "exception" : "coverage";
  return rec.token.word + "\t" + rec.token.tag + "\t" + rec.reading + "\t" + prov + "\t" + flags;
}

std::string format_summary(const RetagSummary& s) {
  std::string out;
  out += "# tokens: " + std::to_string(s.tokens) + "\n";
  out += "# exceptions: " + std::to_string(s.exceptions) + "\n";
  out += "# underspecified: " + std::to_string(s.underspecified) + "\n";
  out += "# holes: " + std::to_string(s.holes()) + "\n";
  for (const auto& [tag, count] : s.holes_by_tag) out += "# hole " + tag + ": " + std::to_string(count) + "\n";
  out += "# malformed lines: " + std::to_string(s.malformed_lines) + "\n";
  if (s.saw_possessive) {
    out += "# note: POS-tagged clitics are kept as separate tokens; word bundling is not performed\n";
  }
  return out;
}

RetagSummary retag_stream(std::istream& in, std::ostream& out, const RuleSet& rs, CorpusFormat format,
                          Diagnostics* diags) {
  RetagSummary summary;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = parse_corpus_line(line, format, line_no);
    if (!tokens) {
      ++summary.malformed_lines;
      if (diags != nullptr) diags->insert(diags->end(), tokens.diagnostics().begin(), tokens.diagnostics().end());
      continue;
    }
    for (const Token& t : tokens.value()) {
      RetagRecord rec = retag_token(t, rs);
      ++summary.tokens;
      if (rec.provenance == Provenance::exception) ++summary.exceptions;
      if (rec.underspecified) ++summary.underspecified;
      if (rec.hole) ++summary.holes_by_tag[t.tag];
      if (t.tag == "POS") summary.saw_possessive = true;
      out << format_record(rec) << '\n';
    }
  }
  if (line_no > 0) out << format_summary(summary);
  return summary;
}

}  // namespace tagmap
