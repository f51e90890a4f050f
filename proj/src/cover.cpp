#include "tagmap/cover.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <unordered_set>

namespace tagmap {

ClassSet denote(const Cube& cube, const TypeGraph& g) {
  ClassSet out = g.classes_under(cube.node);
  for (auto [f, v] : cube.constraints) out &= g.classes_with(f, v);
  return out;
}

ClassSet denote(const Cover& cover, const TypeGraph& g) {
  ClassSet out = g.empty_set();
  for (const Cube& c : cover.cubes) out |= denote(c, g);
  return out;
}

namespace {

// Lowest common node plus every feature whose value is constant on `set`.
Cube maximal_description(const ClassSet& set, const TypeGraph& g) {
  Cube cube;
  std::optional<NodeId> node;
  std::vector<int> shared;
  bool first = true;
  set.for_each([&](std::size_t id) {
    const TerminalClass& tc = g.terminal(id);
    node = node ? g.common_ancestor(*node, tc.leaf) : tc.leaf;
    if (first) {
      shared = tc.values;
      first = false;
      return;
    }
    for (std::size_t f = 0; f < shared.size(); ++f)
      if (shared[f] != tc.values[f]) shared[f] = kAbsent;
  });
  cube.node = node.value_or(g.root());
  for (FeatureId f = 0; f < shared.size(); ++f)
    if (shared[f] != kAbsent) cube.constraints.emplace_back(f, static_cast<ValueId>(shared[f]));
  return cube;
}

struct Prime {
  ClassSet set;
  Cube cube;
};

// All maximal cubes contained in `target`, grown from each member class by
// dropping constraints and lifting the node.
std::vector<Prime> prime_cubes(const ClassSet& target, const TypeGraph& g) {
  std::map<std::vector<std::size_t>, ClassSet> found;
  target.for_each([&](std::size_t id) {
    const TerminalClass& tc = g.terminal(id);
    std::vector<std::pair<FeatureId, ValueId>> atoms;
    for (FeatureId f = 0; f < tc.values.size(); ++f)
      if (tc.has(f)) atoms.emplace_back(f, static_cast<ValueId>(tc.values[f]));
    for (std::optional<NodeId> n = tc.leaf; n; n = g.node(*n).parent) {
      const ClassSet& base = g.classes_under(*n);
      // Enumerate subsets of atoms to keep; larger sets are subsets of smaller
      // ones' denotations, so prune once a kept set escapes the target.
      const std::size_t k = atoms.size();
      std::unordered_set<std::size_t> visited;
      std::vector<std::size_t> todo{(std::size_t{1} << k) - 1};
      while (!todo.empty()) {
        std::size_t mask = todo.back();
        todo.pop_back();
        if (!visited.insert(mask).second) continue;
        ClassSet s = base;
        for (std::size_t i = 0; i < k; ++i)
          if ((mask >> i) & 1U) s &= g.classes_with(atoms[i].first, atoms[i].second);
        if (!s.is_subset_of(target)) continue;
        found.emplace(s.ids(), s);
        for (std::size_t i = 0; i < k; ++i)
          if ((mask >> i) & 1U) todo.push_back(mask & ~(std::size_t{1} << i));
      }
    }
  });

  std::vector<Prime> primes;
  for (auto& [ids, set] : found) {
    bool dominated = false;
    for (auto& [ids2, other] : found) {
      if (ids2 != ids && set.is_subset_of(other)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) primes.push_back({set, maximal_description(set, g)});
  }
  std::sort(primes.begin(), primes.end(), [](const Prime& a, const Prime& b) { return a.cube < b.cube; });
  return primes;
}

class CoverSearch {
 public:
  CoverSearch(const std::vector<Prime>& primes, const ClassSet& target) : primes_(primes), target_(target) {
    covering_.resize(target.universe_size());
    for (std::size_t p = 0; p < primes_.size(); ++p)
      primes_[p].set.for_each([&](std::size_t id) { covering_[id].push_back(p); });
    for (const Prime& p : primes_) max_size_ = std::max(max_size_, p.set.count());
  }

  std::vector<std::size_t> run() {
    best_ = greedy();
    std::vector<std::size_t> chosen;
    search(target_, chosen);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  static constexpr std::size_t kBudget = 200000;

  std::vector<std::size_t> greedy() const {
    ClassSet left = target_;
    std::vector<std::size_t> out;
    while (!left.empty()) {
      std::size_t best = 0, gain = 0;
      for (std::size_t p = 0; p < primes_.size(); ++p) {
        std::size_t n = (primes_[p].set & left).count();
        if (n > gain) {
          gain = n;
          best = p;
        }
      }
      out.push_back(best);
      left -= primes_[best].set;
    }
    return out;
  }

  void search(const ClassSet& left, std::vector<std::size_t>& chosen) {
    if (++steps_ > kBudget) return;
    if (left.empty()) {
      if (chosen.size() < best_.size() || (chosen.size() == best_.size() && sorted(chosen) < sorted(best_)))
        best_ = chosen;
      return;
    }
    std::size_t bound = chosen.size() + (left.count() + max_size_ - 1) / max_size_;
    if (bound > best_.size()) return;
    // Branch on the uncovered class with the fewest covering primes.
    std::size_t pivot = 0, fewest = ~std::size_t{0};
    left.for_each([&](std::size_t id) {
      if (covering_[id].size() < fewest) {
        fewest = covering_[id].size();
        pivot = id;
      }
    });
    for (std::size_t p : covering_[pivot]) {
      chosen.push_back(p);
      search(left - primes_[p].set, chosen);
      chosen.pop_back();
    }
  }

  static std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return v;
  }

  const std::vector<Prime>& primes_;
  const ClassSet& target_;
  std::vector<std::vector<std::size_t>> covering_;
  std::size_t max_size_ = 1;
  std::vector<std::size_t> best_;
  std::size_t steps_ = 0;
};

struct RenderAtom {
  std::size_t key;  // 0 for pos, 1 + feature id otherwise
  std::size_t value;
  std::string text;

  friend bool operator==(const RenderAtom& a, const RenderAtom& b) { return a.key == b.key && a.value == b.value; }
};

std::vector<RenderAtom> render_atoms(const Cube& cube, const TypeGraph& g) {
  std::vector<RenderAtom> atoms;
  ClassSet without_pos = g.all_classes();
  for (auto [f, v] : cube.constraints) without_pos &= g.classes_with(f, v);
  if (cube.constraints.empty() || without_pos != denote(cube, g)) {
    atoms.push_back({0, cube.node, "pos=" + g.node(cube.node).name});
  }
  for (auto [f, v] : cube.constraints)
    atoms.push_back({1 + f, v, g.feature(f).name + "=" + g.feature(f).values[v]});
  return atoms;
}

std::string join_conj(const std::vector<RenderAtom>& atoms) {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i != 0) out += " & ";
    out += atoms[i].text;
  }
  return out;
}

std::string render_factored(const std::vector<std::vector<RenderAtom>>& cubes) {
  if (cubes.size() == 1) return join_conj(cubes.front());

  std::vector<RenderAtom> common;
  for (const RenderAtom& a : cubes.front()) {
    bool everywhere = std::all_of(cubes.begin(), cubes.end(), [&](const auto& c) {
      return std::find(c.begin(), c.end(), a) != c.end();
    });
    if (everywhere) common.push_back(a);
  }
  std::vector<std::vector<RenderAtom>> rest;
  for (const auto& c : cubes) {
    std::vector<RenderAtom> r;
    for (const RenderAtom& a : c)
      if (std::find(common.begin(), common.end(), a) == common.end()) r.push_back(a);
    if (r.empty()) return join_conj(common);
    rest.push_back(std::move(r));
  }

  // Group the remainders by their leading atom, keeping first-seen order.
  std::vector<std::vector<std::vector<RenderAtom>>> groups;
  for (auto& r : rest) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& grp) { return grp.front().front() == r.front(); });
    if (it == groups.end()) {
      groups.push_back({r});
    } else {
      it->push_back(r);
    }
  }
  std::string disj;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (i != 0) disj += " | ";
    disj += render_factored(groups[i]);
  }
  if (common.empty()) return disj;
  std::string head = join_conj(common);
  return groups.size() > 1 ? head + " & (" + disj + ")" : head + " & " + disj;
}

}  // namespace

Cover minimal_cover(const ClassSet& classes, const TypeGraph& g) {
  Cover cover;
  if (classes.empty()) return cover;
  std::vector<Prime> primes = prime_cubes(classes, g);
  CoverSearch search(primes, classes);
  for (std::size_t p : search.run()) cover.cubes.push_back(primes[p].cube);
  std::sort(cover.cubes.begin(), cover.cubes.end());
  return cover;
}

std::string render_cube(const Cube& cube, const TypeGraph& g) { return join_conj(render_atoms(cube, g)); }

std::string render_cover(const Cover& cover, const TypeGraph& g) {
  if (cover.empty()) return {};
  std::vector<std::vector<RenderAtom>> cubes;
  for (const Cube& c : cover.cubes) cubes.push_back(render_atoms(c, g));
  return render_factored(cubes);
}

}  // namespace tagmap
