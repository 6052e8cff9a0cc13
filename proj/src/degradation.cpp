#include "mpps/degradation.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mpps/dna.hpp"
#include "json.hpp"

namespace mpps {

using nlohmann::json;

double DyadicMu::value() const {
  return std::ldexp(static_cast<double>(numerator), -log2_denom);
}

std::string DyadicMu::label() const {
  std::ostringstream ss;
  ss << numerator << "/" << (1ull << log2_denom);
  return ss.str();
}

DyadicMu DyadicMu::parse(const std::string& text) {
  DyadicMu mu;
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::size_t pos = 0;
    mu.numerator = std::stoull(text.substr(0, slash), &pos);
    if (pos != slash) throw std::invalid_argument("bad dyadic numerator");
    const std::string den_text = text.substr(slash + 1);
    const std::uint64_t den = std::stoull(den_text, &pos);
    if (pos != den_text.size() || den == 0 || (den & (den - 1)) != 0) {
      throw std::invalid_argument(
          "dyadic denominator must be a positive power of two");
    }
    mu.log2_denom = 0;
    for (std::uint64_t d = den; d > 1; d >>= 1) ++mu.log2_denom;
  } else {
    std::size_t pos = 0;
    double v = std::stod(text, &pos);
    if (pos != text.size() || !(v >= 0.0)) {
      throw std::invalid_argument("bad decimal mu: " + text);
    }
    mu.log2_denom = 0;
    while (v != std::floor(v)) {
      if (mu.log2_denom >= 62) {
        throw std::invalid_argument("decimal mu is not exactly dyadic: " +
                                    text);
      }
      v *= 2.0;
      ++mu.log2_denom;
    }
    mu.numerator = static_cast<std::uint64_t>(v);
  }
  if (!(mu.value() >= 0.0 && mu.value() <= 4.0)) {
    throw std::invalid_argument("mu outside [0,4]: " + text);
  }
  return mu;
}

FunctionalGraph build_graph(MapKind map, DyadicMu mu, int n, QuantMode mode) {
  if (n < 2 || n > 24) {
    throw std::invalid_argument("precision bits must lie in [2,24]");
  }
  const double mu_value = mu.value();
  const std::size_t size = std::size_t(1) << n;
  FunctionalGraph g;
  g.map = map;
  g.mu = mu;
  g.n = n;
  g.successor.resize(size);
  for (std::size_t i = 0; i < size; ++i) {
    const double x = std::ldexp(static_cast<double>(i), -n);
    const double y = std::ldexp(iterate(map, x, mu_value), n);
    std::uint64_t q = 0;
    switch (mode) {
      case QuantMode::Floor:
        q = static_cast<std::uint64_t>(std::floor(y));
        break;
      case QuantMode::Round:
        q = static_cast<std::uint64_t>(std::llround(y));  // half away from 0
        break;
      case QuantMode::Ceil:
        q = static_cast<std::uint64_t>(std::ceil(y));
        break;
    }
    g.successor[i] = static_cast<std::uint32_t>(q % size);  // ceil/round wrap
  }
  return g;
}

GraphSummary summarize(const FunctionalGraph& g) {
  const std::size_t size = g.successor.size();
  GraphSummary s;
  // state: 0 = unvisited, 1 = on the current path, 2 = finished.
  std::vector<std::uint8_t> state(size, 0);
  std::vector<std::uint32_t> component(size, 0);
  std::vector<std::size_t> dist(size, 0);  // distance to the cycle
  std::vector<std::size_t> path;
  std::uint32_t components = 0;
  for (std::size_t start = 0; start < size; ++start) {
    if (state[start]) continue;
    path.clear();
    std::size_t x = start;
    while (state[x] == 0) {
      state[x] = 1;
      path.push_back(x);
      x = g.successor[x];
    }
    if (state[x] == 1) {
      // The walk closed on itself: a brand-new cycle inside `path`.
      std::size_t idx = 0;
      while (path[idx] != x) ++idx;
      s.cycle_lengths.push_back(path.size() - idx);
      const std::uint32_t cid = components++;
      for (std::size_t i = idx; i < path.size(); ++i) {
        component[path[i]] = cid;
        dist[path[i]] = 0;
        state[path[i]] = 2;
      }
      for (std::size_t i = idx; i-- > 0;) {
        component[path[i]] = cid;
        dist[path[i]] = dist[g.successor[path[i]]] + 1;
        state[path[i]] = 2;
      }
    } else {
      // The walk ran into territory already assigned to a component.
      const std::uint32_t cid = component[x];
      for (std::size_t i = path.size(); i-- > 0;) {
        component[path[i]] = cid;
        dist[path[i]] = dist[g.successor[path[i]]] + 1;
        state[path[i]] = 2;
      }
    }
  }
  s.component_count = components;
  for (std::size_t i = 0; i < size; ++i) s.max_tail = std::max(s.max_tail, dist[i]);
  std::vector<std::size_t> indeg(size, 0);
  for (std::size_t i = 0; i < size; ++i) ++indeg[g.successor[i]];
  for (std::size_t i = 0; i < size; ++i) ++s.indegree_histogram[indeg[i]];
  return s;
}

std::string export_dot(const FunctionalGraph& g) {
  std::ostringstream ss;
  ss << "digraph \"" << (g.map == MapKind::CLS ? "cls" : "clt") << " mu="
     << g.mu.label() << " n=" << g.n << "\" {\n";
  for (std::size_t i = 0; i < g.successor.size(); ++i) {
    ss << "  " << i << " -> " << g.successor[i] << ";\n";
  }
  ss << "}\n";
  return ss.str();
}

double check_symmetry(MapKind map, double mu, std::size_t samples) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  double worst = 0.0;
  for (std::size_t j = 0; j < samples; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(samples - 1);
    const double diff = std::fabs(iterate(map, x, mu) - iterate(map, 1.0 - x, mu));
    worst = std::max(worst, diff);
  }
  return worst;
}

WeakKeyReport find_weak_keys(double mu) {
  WeakKeyReport report;

  // A channel whose encode and decode rules coincide makes the DNA stage a
  // pure relabeling: decode(rule, encode(rule, q)) == q for every rule/quad.
  report.noop_pairs_are_identity = true;
  std::size_t pairs = 0;
  for (int rule = 0; rule < 8; ++rule) {
    bool identity = true;
    for (Quad q = 0; q < 4; ++q) {
      if (composite_f(static_cast<RuleIndex>(rule),
                      static_cast<RuleIndex>(rule), q) != q) {
        identity = false;
      }
    }
    if (identity) ++pairs;
    report.noop_pairs_are_identity = report.noop_pairs_are_identity && identity;
  }
  report.per_channel_noop_pairs = pairs;
  report.joint_noop_combinations = pairs * pairs * pairs;
  report.cited_joint_count = 64;

  // Orbit collapse at the interval endpoints and midpoint.
  for (MapKind map : {MapKind::CLS, MapKind::CLT}) {
    for (double y0 : {0.0, 0.5, 1.0}) {
      FixedPointCase fp;
      fp.map = map;
      fp.y0 = y0;
      double x = y0;
      fp.collapses_to_zero = true;
      for (int i = 0; i < 8; ++i) {
        x = iterate(map, x, mu);
        fp.first_states.push_back(x);
        if (x != 0.0) fp.collapses_to_zero = false;
      }
      report.fixed_points.push_back(fp);
    }
  }
  return report;
}

std::string weak_key_report_json(const WeakKeyReport& report) {
  json j;
  j["per_channel_noop_pairs"] = report.per_channel_noop_pairs;
  j["joint_noop_combinations"] = report.joint_noop_combinations;
  j["cited_joint_count"] = report.cited_joint_count;
  j["noop_pairs_are_identity"] = report.noop_pairs_are_identity;
  j["fixed_points"] = json::array();
  for (const auto& fp : report.fixed_points) {
    json e;
    e["map"] = fp.map == MapKind::CLS ? "cls" : "clt";
    e["y0"] = fp.y0;
    e["collapses_to_zero"] = fp.collapses_to_zero;
    e["first_states"] = fp.first_states;
    j["fixed_points"].push_back(e);
  }
  return j.dump(2) + "\n";
}

std::string graph_summary_json(const FunctionalGraph& g,
                               const GraphSummary& s) {
  json j;
  j["map"] = g.map == MapKind::CLS ? "cls" : "clt";
  j["mu"] = g.mu.label();
  j["mu_value"] = g.mu.value();
  j["precision_bits"] = g.n;
  j["node_count"] = g.successor.size();
  j["component_count"] = s.component_count;
  j["cycle_lengths"] = s.cycle_lengths;
  j["max_tail"] = s.max_tail;
  json hist = json::object();
  for (const auto& [indegree, nodes] : s.indegree_histogram) {
    hist[std::to_string(indegree)] = nodes;
  }
  j["indegree_histogram"] = hist;
  return j.dump(2) + "\n";
}

}  // namespace mpps
