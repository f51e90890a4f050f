// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "tagmap/cli.hpp"

using namespace tagmap;
using Clock = std::chrono::steady_clock;

namespace {

const char* kQuery7 = "[(vtype=con & vform=inf) | (vtype=prim & tense=past)]";
const char* kExpected7 =
    "[((pos = \"VB\" & word != \"be|do|have\")|(pos = \"VBD\" & word = \"was|were|had|did\")|(pos = \"VBN\" & word "
    "= \"been|had|done\"))]";

struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::size_t count_kind(const std::vector<Inconsistency>& v, Inconsistency::Kind k) {
  std::size_t n = 0;
  for (const Inconsistency& i : v) n += i.kind == k ? 1 : 0;
  return n;
}

std::string add_tag(std::string src, const std::string& tag, const std::string& rule) {
  return fixtures::replace_once(std::move(src), "tags CC,", "tags " + tag + ", CC,") + "\n" + rule + "\n";
}

void criterion1(Check& c) {
  auto t0 = Clock::now();
  CompileOutcome out = compile_mapping(fixtures::tagset_source(), fixtures::rules_source());
  c.expect(out.mapping != nullptr, "fixture compiles");
  if (!out.mapping) return;
  auto r = out.mapping->query(kQuery7);
  c.expect(r.ok(), "query typechecks");
  if (!r.ok()) return;
  c.expect(fixtures::normalize_ws(render_patterns(r.value())) == fixtures::normalize_ws(kExpected7),
           "pattern string: " + render_patterns(r.value()));
  const TypeGraph& g = out.mapping->graph();
  ClassSet expected_noise = fixtures::typed("[v & vtype = con & vform = fin & (mood = subj | mood = imp)]", g).denotation;
  bool noise_ok = r.value().noise.entries.size() == 1 && r.value().noise.entries[0].tag == "VB" &&
                  denote(r.value().noise.entries[0].cover, g) == expected_noise;
  c.expect(noise_ok, "noise warning on VB re-denotes to finite subjunctive/imperative content verbs");
  c.expect(render_query(r.value()).find("WARN noise VB: ") != std::string::npos, "noise WARN line rendered");
  c.expect(seconds_since(t0) < 1.0, "runtime under 1 s");
}

void criterion2(Check& c) {
  const TypeGraph& g = fixtures::fixture_graph();
  auto bad = typecheck(parse_spec("[pos = v & (vform = fin | case != gen)]").value(), g);
  c.expect(!bad.ok(), "ill-typed spec rejected");
  if (!bad.ok()) {
    const std::string& m = bad.error().message;
    c.expect(m.find("pos=v") != std::string::npos && m.find("case!=gen") != std::string::npos &&
                 m.find("not type compatible") != std::string::npos,
             "error names the v/case disjunct: " + m);
  }
  c.expect(typecheck(parse_spec("[pos = v & vtype = aux & pers = 3]").value(), g).ok(), "auxiliary spec accepted");
}

void criterion3(Check& c) {
  const TypeGraph& g = fixtures::fixture_graph();
  const RuleSet& full = fixtures::fixture_rules();

  auto a = check_definition_holes(full.without_coverage("SYM"), g);
  c.expect(count_kind(a, Inconsistency::Kind::definition_hole_source) == 1, "(a) exactly one source hole");

  std::string src = fixtures::rules_source();
  for (const char* needle : {"'PRP'", "'PRP$'", "'WP'", "'WP$'", "'EX'", "<< [pos = 'NN']", "<< [pos = 'DT']"})
    src = fixtures::drop_lines(src, needle);
  RuleSet no_pron = fixtures::rules_from(src, g);
  bool b_ok = false;
  for (const Inconsistency& i : check_definition_holes(no_pron, g))
    if (i.kind == Inconsistency::Kind::definition_hole_target)
      b_ok = denote(i.cover, g) == g.classes_under(*g.find_node("pron"));
  c.expect(b_ok, "(b) target hole re-denotes to the pronoun classes");

  RuleSet vpp = fixtures::rules_from(
      add_tag(fixtures::rules_source(), "VPP", "[pos = 'VPP'] => [vtype = con & vform = part]."), g);
  MTree mt = build_mtree(vpp, g);
  c.expect(count_kind(mt.diagnostics, Inconsistency::Kind::hierarchical) == 1, "(c) exactly one hierarchical");

  RuleSet nnx = fixtures::rules_from(add_tag(fixtures::rules_source(), "NNX", "[pos = 'NNX'] => [n & mass]."), g);
  auto d = check_nondisjointness(nnx, g);
  c.expect(d.size() == 1 && render_cover(d[0].cover, g) == "ntype=mass", "(d) exactly one nondisjunctive on ntype=mass");
}

void criterion4(Check& c) {
  std::istringstream in("anybody/NN house/NN\n");
  std::ostringstream out;
  retag_stream(in, out, fixtures::fixture_rules(), CorpusFormat::slash);
  std::istringstream lines(out.str());
  std::string first, second;
  std::getline(lines, first);
  std::getline(lines, second);
  c.expect(first == "anybody\tNN\t[pos=pron & antec=prs & type=indef]\texception\tunderspecified",
           "anybody reading: " + first);
  c.expect(second == "house\tNN\t[n & (common & sg | mass)]\tcoverage\tunderspecified", "house reading: " + second);
}

void criterion5(Check& c) {
  auto t0 = Clock::now();
  const TypeGraph& g = fixtures::fixture_graph();
  const RuleSet& rs = fixtures::fixture_rules();
  MTree mt = build_mtree(rs, g);
  oracle::SpecGenerator gen(g, 2024);
  int accepted = 0;
  while (accepted < 1000) {
    SpecExpr e = gen.next(3);
    auto t = typecheck(e, g);
    if (!t.ok()) continue;
    ++accepted;
    std::set<ClassId> brute = oracle::filter_universe(e, g);
    if (oracle::to_ids(t.value().denotation) != brute) {
      c.expect(false, "denotation differs for " + to_bracketed(e));
      continue;
    }
    auto dnf = to_dnf(e, g);
    c.expect(dnf.ok() && oracle::to_ids(denote(dnf.value(), g)) == brute, "DNF denotation differs for " + to_bracketed(e));
    ResolvedQuery r = resolve(t.value(), mt, rs);
    auto expected = oracle::brute_force_resolve(brute, rs, g);
    bool same = r.patterns.size() == expected.size();
    for (std::size_t i = 0; same && i < expected.size(); ++i) {
      std::set<ClassId> noise;
      for (const TagNoise& tn : r.noise.entries)
        if (tn.tag == expected[i].tag) noise = oracle::to_ids(tn.classes);
      same = r.patterns[i].tag == expected[i].tag && oracle::to_ids(r.patterns[i].retrieved) == expected[i].retrieved &&
             noise == expected[i].noise;
    }
    c.expect(same, "resolution differs for " + to_bracketed(e));
    if (c.failures.size() > 5) return;
  }
  c.expect(seconds_since(t0) < 30.0, "runtime under 30 s");
}

void criterion6(Check& c) {
  const TypeGraph& g = fixtures::fixture_graph();
  for (FeatureId f = 0; f < g.features().size(); ++f) {
    const FeatureDecl& decl = g.feature(f);
    std::set<ClassId> domain;
    for (ClassId id = 0; id < g.universe_size(); ++id)
      if (g.terminal(id).has(f)) domain.insert(id);
    for (const std::string& v : decl.values) {
      auto eq = oracle::to_ids(denote(SpecExpr::atom(decl.name, AtomOp::eq, v), g).value());
      auto ne = oracle::to_ids(denote(SpecExpr::atom(decl.name, AtomOp::ne, v), g).value());
      bool disjoint = true;
      for (ClassId id : eq) disjoint = disjoint && ne.count(id) == 0;
      std::set<ClassId> both = eq;
      both.insert(ne.begin(), ne.end());
      c.expect(disjoint && both == domain, decl.name + "=" + v);
    }
  }
}

std::string run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"tagmap"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::istringstream in;
  std::ostringstream out, err;
  int status = cli::run(static_cast<int>(argv.size()), argv.data(), {in, out, err});
  return std::to_string(status) + "\n" + out.str() + "\x1f" + err.str();
}

void criterion7(Check& c) {
  const std::string ts = fixtures::data_path("eagles-en.tagset");
  const std::string rules = fixtures::data_path("upenn.rules");
  auto session = [&] {
    return run_cli({"compile", "--tagset", ts, "--rules", rules}) +
           run_cli({"explain", "--tagset", ts, "--rules", rules}) +
           run_cli({"query", "--tagset", ts, "--rules", rules, kQuery7});
  };
  std::string first = session();
  std::string second = session();
  c.expect(first == second, "outputs differ between runs");
  c.expect(first.find(kExpected7) != std::string::npos, "query output present");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"1 query translation with noise", criterion1},
      {"2 type error and accepted spec", criterion2},
      {"3 consistency diagnostics", criterion3},
      {"4 retagging with exceptions", criterion4},
      {"5 oracle equivalence on 1000 random specs", criterion5},
      {"6 closed-world laws", criterion6},
      {"7 deterministic outputs", criterion7},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    Check c;
    auto t0 = Clock::now();
    cr.run(c);
    double secs = seconds_since(t0);
    std::cout << (c.failures.empty() ? "PASS" : "FAIL") << " criterion " << cr.name << " (" << secs << " s)\n";
    for (const std::string& f : c.failures) std::cout << "    " << f << "\n";
    failed += c.failures.empty() ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
