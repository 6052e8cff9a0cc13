#pragma once
// The eight DNA coding rules, complement map, symbol addition/subtraction,
// and the composite encode-then-decode maps (the cipher's effective 2-bit
// S-boxes) together with their equivalence-class structure.

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace mpps {

enum class DnaSymbol : std::uint8_t { A = 0, G = 1, C = 2, T = 3 };

using RuleIndex = std::uint8_t;  // 0..7
using Quad = std::uint8_t;       // 0..3, one 2-bit pixel fragment

DnaSymbol encode(RuleIndex rule, Quad q);
Quad decode(RuleIndex rule, DnaSymbol d);

// The 4-cycle A -> T -> C -> G -> A.
DnaSymbol complement(DnaSymbol d);
DnaSymbol complement_inverse(DnaSymbol d);

DnaSymbol dna_add(DnaSymbol a, DnaSymbol b);
DnaSymbol dna_sub(DnaSymbol a, DnaSymbol b);

// decode(t, encode(s, q)) — rule substitution without complement.
Quad composite_f(RuleIndex s, RuleIndex t, Quad q);
// decode(t, complement(encode(s, q))) — rule substitution with complement.
Quad composite_g(RuleIndex s, RuleIndex t, Quad q);

// Equivalence classes of the 64 composite maps, represented by their
// 4-entry value tables.
struct MapClass {
  std::array<Quad, 4> table{};
  std::vector<std::pair<RuleIndex, RuleIndex>> members;  // (s, t) pairs
};

struct MapPartition {
  std::vector<MapClass> f_classes;  // expected: 8 distinct maps
  std::vector<MapClass> g_classes;  // expected: 16 distinct maps
};

MapPartition enumerate_distinct_maps();

// All (s2, t2) whose composite map equals the (s1, t1) map XOR a fixed
// nonzero constant lambda (the same lambda at every input).
struct XorPartner {
  RuleIndex s = 0;
  RuleIndex t = 0;
  std::uint8_t lambda = 0;  // 1..3
};

enum class MapFamily { F, G };

std::vector<XorPartner> xor_constant_partners(RuleIndex s1, RuleIndex t1,
                                              MapFamily family);

}  // namespace mpps
