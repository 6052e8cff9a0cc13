#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "mpps/degradation.hpp"

using namespace mpps;

namespace {

MapKind map_from_name(const char* name) {
  return std::string(name) == "cls" ? MapKind::CLS : MapKind::CLT;
}

QuantMode mode_from_name(const char* name) {
  const std::string m(name);
  if (m == "floor") return QuantMode::Floor;
  if (m == "round") return QuantMode::Round;
  return QuantMode::Ceil;
}

// Independent brute-force reference for summarize(): walks every node to a
// cycle, unions components, and counts indegrees directly.
GraphSummary brute_force_summary(const std::vector<std::uint32_t>& succ) {
  const std::size_t n = succ.size();

  // Find all cycle nodes: iterate n steps from each node; the landing node
  // is always on a cycle.
  std::set<std::size_t> cycle_nodes;
  for (std::size_t start = 0; start < n; ++start) {
    std::size_t x = start;
    for (std::size_t step = 0; step < n; ++step) x = succ[x];
    cycle_nodes.insert(x);
  }

  // Union-find over edges for component count.
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = find(i), b = find(succ[i]);
    if (a != b) parent[a] = b;
  }
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < n; ++i) roots.insert(find(i));

  // Cycle length per component: walk the cycle from any cycle node.
  std::map<std::size_t, std::size_t> cycle_len_by_root;
  for (std::size_t node : cycle_nodes) {
    const std::size_t root = find(node);
    if (cycle_len_by_root.count(root)) continue;
    std::size_t len = 1;
    for (std::size_t x = succ[node]; x != node; x = succ[x]) ++len;
    cycle_len_by_root[root] = len;
  }

  // Max tail: steps until the walk first lands on a cycle node.
  std::size_t max_tail = 0;
  for (std::size_t start = 0; start < n; ++start) {
    std::size_t x = start, steps = 0;
    while (!cycle_nodes.count(x)) {
      x = succ[x];
      ++steps;
    }
    max_tail = std::max(max_tail, steps);
  }

  GraphSummary s;
  s.component_count = roots.size();
  for (const auto& [root, len] : cycle_len_by_root) {
    s.cycle_lengths.push_back(len);
  }
  s.max_tail = max_tail;
  std::vector<std::size_t> indeg(n, 0);
  for (std::size_t i = 0; i < n; ++i) ++indeg[succ[i]];
  for (std::size_t i = 0; i < n; ++i) ++s.indegree_histogram[indeg[i]];
  return s;
}

}  // namespace

TEST_CASE("dyadic parameters parse from fractions and decimals") {
  const DyadicMu a = DyadicMu::parse("121/32");
  CHECK(a.numerator == 121);
  CHECK(a.log2_denom == 5);
  CHECK(a.value() == 3.78125);
  CHECK(a.label() == "121/32");

  const DyadicMu b = DyadicMu::parse("3.78125");
  CHECK(b.numerator == 121);
  CHECK(b.log2_denom == 5);
  CHECK(b.value() == a.value());

  const DyadicMu c = DyadicMu::parse("4");
  CHECK(c.value() == 4.0);
  const DyadicMu d = DyadicMu::parse("63/16");
  CHECK(d.value() == 3.9375);

  CHECK_THROWS(DyadicMu::parse("121/31"));   // denominator not a power of two
  CHECK_THROWS(DyadicMu::parse("1/3"));
  CHECK_THROWS(DyadicMu::parse("4.5"));      // outside [0, 4]
  CHECK_THROWS(DyadicMu::parse("-1/2"));
  CHECK_THROWS(DyadicMu::parse("abc"));
  CHECK_THROWS(DyadicMu::parse(""));
}

TEST_CASE("graph construction validates the precision range") {
  const DyadicMu mu = DyadicMu::parse("121/32");
  CHECK_THROWS_AS(build_graph(MapKind::CLS, mu, 1, QuantMode::Round),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_graph(MapKind::CLS, mu, 25, QuantMode::Round),
                  std::invalid_argument);
  const FunctionalGraph g = build_graph(MapKind::CLS, mu, 2, QuantMode::Round);
  CHECK(g.successor.size() == 4);
}

TEST_CASE("zero is a fixed point of every digitized map") {
  const DyadicMu mu = DyadicMu::parse("121/32");
  for (MapKind map : {MapKind::CLS, MapKind::CLT}) {
    for (QuantMode mode : {QuantMode::Floor, QuantMode::Round,
                           QuantMode::Ceil}) {
      const FunctionalGraph g = build_graph(map, mu, 6, mode);
      CHECK(g.successor[0] == 0);
      for (const std::uint32_t s : g.successor) CHECK(s < 64);
    }
  }
}

TEST_CASE("digitized graph structure matches the pinned expectations") {
  for (const auto& exp : fixtures::kGraphExpectations) {
    CAPTURE(exp.map);
    CAPTURE(exp.n);
    CAPTURE(exp.mode);
    DyadicMu mu;
    mu.numerator = exp.mu_num;
    mu.log2_denom = exp.mu_log2_denom;
    const FunctionalGraph g =
        build_graph(map_from_name(exp.map), mu, exp.n,
                    mode_from_name(exp.mode));
    CHECK(g.successor.size() == (std::size_t{1} << exp.n));
    const GraphSummary s = summarize(g);
    CHECK(s.component_count == exp.components);
    std::vector<std::size_t> cycles = s.cycle_lengths;
    std::sort(cycles.begin(), cycles.end());
    CHECK(cycles == exp.sorted_cycles);
    CHECK(s.max_tail == exp.max_tail);
    CHECK(s.cycle_lengths.size() == s.component_count);

    // The indegree histogram accounts for every node and every edge.
    std::size_t nodes = 0, edges = 0;
    for (const auto& [deg, count] : s.indegree_histogram) {
      nodes += count;
      edges += deg * count;
    }
    CHECK(nodes == g.successor.size());
    CHECK(edges == g.successor.size());
  }
}

TEST_CASE("the three quantization modes give distinct dynamics") {
  const DyadicMu mu = DyadicMu::parse("121/32");
  const auto floor_g = build_graph(MapKind::CLS, mu, 9, QuantMode::Floor);
  const auto round_g = build_graph(MapKind::CLS, mu, 9, QuantMode::Round);
  const auto ceil_g = build_graph(MapKind::CLS, mu, 9, QuantMode::Ceil);
  CHECK(floor_g.successor != round_g.successor);
  CHECK(round_g.successor != ceil_g.successor);
  CHECK(floor_g.successor != ceil_g.successor);
}

TEST_CASE("summaries agree with an independent brute-force analysis") {
  std::mt19937_64 rng(271828);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + (rng() % 256);
    FunctionalGraph g;
    g.n = 8;
    g.successor.resize(n);
    for (auto& s : g.successor) {
      s = static_cast<std::uint32_t>(rng() % n);
    }
    const GraphSummary got = summarize(g);
    const GraphSummary want = brute_force_summary(g.successor);
    CHECK(got.component_count == want.component_count);
    std::vector<std::size_t> a = got.cycle_lengths, b = want.cycle_lengths;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
    CHECK(got.max_tail == want.max_tail);
    CHECK(got.indegree_histogram == want.indegree_histogram);
  }

  // Also cross-check one real digitized map per kind.
  const DyadicMu mu = DyadicMu::parse("121/32");
  for (MapKind map : {MapKind::CLS, MapKind::CLT}) {
    const FunctionalGraph g = build_graph(map, mu, 8, QuantMode::Round);
    const GraphSummary got = summarize(g);
    const GraphSummary want = brute_force_summary(g.successor);
    CHECK(got.component_count == want.component_count);
    CHECK(got.max_tail == want.max_tail);
    CHECK(got.indegree_histogram == want.indegree_histogram);
  }
}

TEST_CASE("dot export is deterministic and well-formed") {
  const DyadicMu mu = DyadicMu::parse("121/32");
  const FunctionalGraph g = build_graph(MapKind::CLS, mu, 5, QuantMode::Round);
  const std::string first = export_dot(g);
  const std::string second = export_dot(
      build_graph(MapKind::CLS, mu, 5, QuantMode::Round));
  CHECK(first == second);
  CHECK(first.rfind("digraph", 0) == 0);
  CHECK(first.find("->") != std::string::npos);
  // One edge line per node.
  std::size_t edges = 0;
  for (std::size_t pos = first.find("->"); pos != std::string::npos;
       pos = first.find("->", pos + 2)) {
    ++edges;
  }
  CHECK(edges == g.successor.size());
}

TEST_CASE("both maps are symmetric about the midpoint of the unit interval") {
  CHECK(check_symmetry(MapKind::CLS, 3.91, 100000) <= 1e-9);
  CHECK(check_symmetry(MapKind::CLT, 3.93, 100000) <= 1e-9);
  CHECK_THROWS(check_symmetry(MapKind::CLS, 3.91, 1));
}

TEST_CASE("weak-key census finds the no-op rule pairs and fixed points") {
  const WeakKeyReport report = find_weak_keys(3.91);
  CHECK(report.per_channel_noop_pairs == 8);
  CHECK(report.joint_noop_combinations == 512);
  CHECK(report.cited_joint_count == 64);
  CHECK(report.noop_pairs_are_identity);

  REQUIRE(report.fixed_points.size() == 6);
  std::map<std::pair<MapKind, double>, const FixedPointCase*> by_case;
  for (const auto& fp : report.fixed_points) {
    CHECK(fp.first_states.size() == 8);
    by_case[{fp.map, fp.y0}] = &fp;
    // The collapse flag means the whole observed orbit is exactly zero.
    bool all_zero = true;
    for (const double s : fp.first_states) all_zero = all_zero && s == 0.0;
    CHECK(fp.collapses_to_zero == all_zero);
  }
  REQUIRE(by_case.size() == 6);
  CHECK(by_case.at({MapKind::CLS, 0.0})->collapses_to_zero);
  CHECK(by_case.at({MapKind::CLS, 0.5})->collapses_to_zero);
  CHECK_FALSE(by_case.at({MapKind::CLS, 1.0})->collapses_to_zero);
  CHECK(by_case.at({MapKind::CLT, 0.0})->collapses_to_zero);
  CHECK(by_case.at({MapKind::CLT, 0.5})->collapses_to_zero);
  CHECK(by_case.at({MapKind::CLT, 1.0})->collapses_to_zero);
  // The non-collapsing start still decays to negligible magnitude.
  for (const double s : by_case.at({MapKind::CLS, 1.0})->first_states) {
    CHECK(s >= 0.0);
    CHECK(s < 1e-12);
  }
}

TEST_CASE("report serializers emit parseable JSON") {
  const WeakKeyReport report = find_weak_keys();
  const std::string wj = weak_key_report_json(report);
  CHECK(wj.find("512") != std::string::npos);

  const DyadicMu mu = DyadicMu::parse("121/32");
  const FunctionalGraph g = build_graph(MapKind::CLS, mu, 9, QuantMode::Round);
  const std::string gj = graph_summary_json(g, summarize(g));
  CHECK(gj.find("121/32") != std::string::npos);
  CHECK(gj.find("\"precision_bits\"") != std::string::npos);
}
