#pragma once

// Brute-force reference implementations used only by tests. Nothing here
// touches the bitset denotation, DNF or enumeration code under test; each
// oracle works class by class from the parsed declarations.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "tagmap/mapping.hpp"

namespace tagmap::oracle {

/// Terminal classes by filtering the full product of (values + absent) per
/// feature, rather than by constructive expansion.
std::vector<TerminalClass> brute_force_universe(const TypeGraph& g);

/// Evaluates a specification on one class under the closed-world reading.
bool holds(const SpecExpr& e, const TerminalClass& tc, const TypeGraph& g);

/// Ids of universe classes satisfying `e`.
std::set<ClassId> filter_universe(const SpecExpr& e, const TypeGraph& g);

std::set<ClassId> to_ids(const ClassSet& s);

/// Independent DNF: list of disjuncts, each a list of specification atoms or
/// appropriateness guards, evaluated by `holds`.
struct OracleLiteral {
  SpecExpr atom;          // used when guard_feature is empty
  bool negated = false;
  std::string guard_feature;  // "feature is appropriate"
};
using OracleDisjunct = std::vector<OracleLiteral>;
std::vector<OracleDisjunct> oracle_dnf(const SpecExpr& e, const TypeGraph& g);
bool disjunct_satisfiable(const OracleDisjunct& d, const TypeGraph& g);

/// Expected resolution, computed per class and per exception entry.
struct ExpectedPattern {
  std::string tag;
  std::set<ClassId> retrieved;
  std::set<ClassId> noise;
};
std::vector<ExpectedPattern> brute_force_resolve(const std::set<ClassId>& query, const RuleSet& rs,
                                                 const TypeGraph& g);

/// Random expressions over a graph; atoms are drawn from the features
/// appropriate at one randomly chosen leaf so that most results typecheck.
class SpecGenerator {
 public:
  SpecGenerator(const TypeGraph& g, unsigned seed) : g_(g), rng_(seed) {}
  SpecExpr next(int max_depth = 3);
  SpecExpr atom_for_leaf(NodeId leaf);

 private:
  SpecExpr build(NodeId leaf, int depth);
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  const TypeGraph& g_;
  std::mt19937 rng_;
};

}  // namespace tagmap::oracle
