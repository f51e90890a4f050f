#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"

using namespace tagmap;
using tagmap::fixtures::fixture_rules;

TEST_CASE("slash format") {
  auto r = parse_corpus_line("Peter/NP 's/POS house/NN", CorpusFormat::slash);
  REQUIRE(r.ok());
  REQUIRE(r.value().size() == 3);
  CHECK(r.value()[0].word == "Peter");
  CHECK(r.value()[1].word == "'s");
  CHECK(r.value()[1].tag == "POS");
  CHECK(r.value()[2].tag == "NN");
  CHECK(r.value()[2].position.column == 17);
}

TEST_CASE("last slash separates word and tag") {
  auto r = parse_corpus_line("1/2/CD", CorpusFormat::slash);
  REQUIRE(r.ok());
  REQUIRE(r.value().size() == 1);
  CHECK(r.value()[0].word == "1/2");
  CHECK(r.value()[0].tag == "CD");
}

TEST_CASE("malformed lines") {
  auto r = parse_corpus_line("word", CorpusFormat::slash, 7);
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().front().span.begin.line == 7);
  CHECK_FALSE(parse_corpus_line("a/ b/NN", CorpusFormat::slash).ok());
  CHECK_FALSE(parse_corpus_line("/NN", CorpusFormat::slash).ok());
  CHECK_FALSE(parse_corpus_line("a\tb\tc", CorpusFormat::tsv).ok());
  CHECK_FALSE(parse_corpus_line("a b", CorpusFormat::tsv).ok());
  CHECK(parse_corpus_line("   ", CorpusFormat::slash).value().empty());
}

TEST_CASE("tsv format") {
  auto r = parse_corpus_line("New York\tNNP", CorpusFormat::tsv);
  REQUIRE(r.ok());
  REQUIRE(r.value().size() == 1);
  CHECK(r.value()[0].word == "New York");
  CHECK(r.value()[0].tag == "NNP");
  CHECK(parse_corpus_line("", CorpusFormat::tsv).value().empty());
}

TEST_CASE("retag_token readings") {
  const RuleSet& rs = fixture_rules();
  RetagRecord a = retag_token({"anybody", "NN", {}}, rs);
  CHECK(a.reading == "[pos=pron & antec=prs & type=indef]");
  CHECK(a.provenance == Provenance::exception);

  RetagRecord h = retag_token({"house", "NN", {}}, rs);
  CHECK(h.reading == "[n & (common & sg | mass)]");
  CHECK(h.provenance == Provenance::coverage);
  CHECK(h.underspecified);

  RetagRecord z = retag_token({"xyz", "ZZZ", {}}, rs);
  CHECK(z.hole);
  CHECK_FALSE(z.provenance.has_value());
  CHECK(z.reading.empty());
  CHECK(format_record(z) == "xyz\tZZZ\t\t-\thole");
}

TEST_CASE("retag_stream keeps input order") {
  std::istringstream in("he/PP 's/VBZ not/RB\n");
  std::ostringstream out;
  RetagSummary s = retag_stream(in, out, fixture_rules(), CorpusFormat::slash);
  CHECK(s.tokens == 3);
  CHECK(s.holes() == 1);
  CHECK(s.holes_by_tag.at("PP") == 1);
  std::istringstream lines(out.str());
  std::string l1, l2, l3;
  std::getline(lines, l1);
  std::getline(lines, l2);
  std::getline(lines, l3);
  CHECK(l1.rfind("he\tPP\t", 0) == 0);
  CHECK(l2.rfind("'s\tVBZ\t", 0) == 0);
  CHECK(l3.rfind("not\tRB\t", 0) == 0);
}

TEST_CASE("empty input gives empty output") {
  std::istringstream in("");
  std::ostringstream out;
  RetagSummary s = retag_stream(in, out, fixture_rules(), CorpusFormat::slash);
  CHECK(out.str().empty());
  CHECK(s.tokens == 0);
  CHECK(s.exceptions == 0);
  CHECK(s.holes() == 0);
}

TEST_CASE("malformed lines are skipped and counted") {
  std::istringstream in("a/DT\nbroken\nhouse/NN\n");
  std::ostringstream out;
  Diagnostics diags;
  RetagSummary s = retag_stream(in, out, fixture_rules(), CorpusFormat::slash, &diags);
  CHECK(s.tokens == 2);
  CHECK(s.malformed_lines == 1);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].span.begin.line == 2);
}

TEST_CASE("synthetic corpus with 40 exception hits") {
  const RuleSet& rs = fixture_rules();
  // Independent lexicon of (word, tag) exception keys taken from the entries.
  std::set<std::pair<std::string, std::string>> lexicon;
  std::vector<std::pair<std::string, std::string>> keys;
  for (const ExceptionEntry& e : rs.exceptions())
    for (const std::string& w : e.words)
      if (lexicon.emplace(w, e.out_of).second) keys.emplace_back(w, e.out_of);

  const std::vector<std::pair<std::string, std::string>> plain = {
      {"house", "NN"}, {"the", "DT"}, {"walk", "VB"}, {"walked", "VBD"}, {"anybody", "VB"}, {"be", "NN"},
      {"quickly", "RB"}, {"and", "CC"}};
  std::mt19937 rng(5);
  std::vector<std::pair<std::string, std::string>> corpus(1000);
  for (auto& tok : corpus) tok = plain[rng() % plain.size()];
  for (int i = 0; i < 40; ++i) corpus[static_cast<std::size_t>(i) * 25 + 3] = keys[rng() % keys.size()];

  std::string text;
  std::size_t expected = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    text += corpus[i].first + "/" + corpus[i].second + ((i % 20 == 19) ? "\n" : " ");
    expected += lexicon.count(corpus[i]);
  }
  REQUIRE(expected == 40);

  std::istringstream in(text);
  std::ostringstream out;
  RetagSummary s = retag_stream(in, out, rs, CorpusFormat::slash);
  CHECK(s.tokens == 1000);
  CHECK(s.exceptions == 40);
  CHECK(out.str().find("# exceptions: 40\n") != std::string::npos);

  std::istringstream again(text);
  std::ostringstream out2;
  retag_stream(again, out2, rs, CorpusFormat::slash);
  CHECK(out.str() == out2.str());
}

TEST_CASE("summaries merge associatively") {
  RetagSummary a, b, c;
  a.tokens = 1;
  a.holes_by_tag["X"] = 1;
  b.tokens = 2;
  b.exceptions = 1;
  b.holes_by_tag["X"] = 2;
  c.tokens = 3;
  c.saw_possessive = true;
  RetagSummary left = a;
  left.merge(b).merge(c);
  RetagSummary bc = b;
  bc.merge(c);
  RetagSummary right = a;
  right.merge(bc);
  CHECK(format_summary(left) == format_summary(right));
  CHECK(left.tokens == 6);
  CHECK(left.holes() == 3);
}
