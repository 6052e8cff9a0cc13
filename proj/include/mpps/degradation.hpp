#pragma once
// Fixed-point dynamics degradation analysis: functional graphs of the
// digitized chaotic maps under n-bit precision with floor/round/ceil
// quantization, plus the key-space defect detectors (initial-value symmetry,
// fixed points, no-op rule pairs).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mpps/chaos.hpp"

namespace mpps {

enum class QuantMode { Floor, Round, Ceil };

// Exact dyadic rational mu = numerator / 2^log2_denom.
struct DyadicMu {
  std::uint64_t numerator = 0;
  int log2_denom = 0;

  double value() const;
  std::string label() const;  // "numerator/2^log2_denom"
  static DyadicMu parse(const std::string& text);  // "121/32" or decimal
};

struct FunctionalGraph {
  MapKind map = MapKind::CLS;
  DyadicMu mu{};
  int n = 0;                            // precision bits, 2..24
  std::vector<std::uint32_t> successor; // 2^n entries, out-degree one
};

// successor[i] = quantize(iterate(i / 2^n, mu) * 2^n) mod 2^n, evaluated in
// double precision. Round halves away from zero; Ceil wraps mod 2^n.
FunctionalGraph build_graph(MapKind map, DyadicMu mu, int n, QuantMode mode);

struct GraphSummary {
  std::size_t component_count = 0;
  std::vector<std::size_t> cycle_lengths;  // one per component, discovery order
  std::size_t max_tail = 0;                // longest distance to a cycle
  std::map<std::size_t, std::size_t> indegree_histogram;  // indegree -> nodes
};

GraphSummary summarize(const FunctionalGraph& g);

// Deterministic text export, one edge per node; re-export is byte-identical.
std::string export_dot(const FunctionalGraph& g);

// max |f(x) - f(1-x)| over a uniform grid of `samples` points in [0,1].
double check_symmetry(MapKind map, double mu, std::size_t samples);

struct FixedPointCase {
  MapKind map = MapKind::CLS;
  double y0 = 0.0;
  bool collapses_to_zero = false;   // whole observed orbit exactly 0
  std::vector<double> first_states; // leading orbit states for the report
};

struct WeakKeyReport {
  std::size_t per_channel_noop_pairs = 0;   // same-rule encode/decode pairs
  std::size_t joint_noop_combinations = 0;  // per-channel count cubed
  std::size_t cited_joint_count = 0;        // the figure quoted alongside, 64
  bool noop_pairs_are_identity = false;     // verified for all 8 rules
  std::vector<FixedPointCase> fixed_points; // y0 in {0, 0.5, 1}, both maps
};

WeakKeyReport find_weak_keys(double mu = 3.91);

std::string weak_key_report_json(const WeakKeyReport& report);
std::string graph_summary_json(const FunctionalGraph& g,
                               const GraphSummary& s);

}  // namespace mpps
