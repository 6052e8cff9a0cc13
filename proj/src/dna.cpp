#include "mpps/dna.hpp"

#include <map>
#include <stdexcept>

namespace mpps {

namespace {

// The eight coding rules as literal tables: row = rule, column = quad value,
// entry = symbol (A=0, G=1, C=2, T=3). Each row is a bijection.
constexpr std::uint8_t kEncode[8][4] = {
    {0, 2, 1, 3},  // A C G T
    {0, 1, 2, 3},  // A G C T
    {3, 1, 2, 0},  // T G C A
    {3, 2, 1, 0},  // T C G A
    {2, 0, 3, 1},  // C A T G
    {2, 3, 0, 1},  // C T A G
    {1, 0, 3, 2},  // G A T C
    {1, 3, 0, 2},  // G T A C
};

constexpr std::uint8_t inverse_entry(int rule, int symbol) {
  for (int q = 0; q < 4; ++q) {
    if (kEncode[rule][q] == symbol) return static_cast<std::uint8_t>(q);
  }
  return 0;  // unreachable: rows are bijections
}

constexpr auto make_decode() {
  std::array<std::array<std::uint8_t, 4>, 8> t{};
  for (int r = 0; r < 8; ++r) {
    for (int s = 0; s < 4; ++s) t[r][s] = inverse_entry(r, s);
  }
  return t;
}

constexpr auto kDecode = make_decode();

void check_rule(RuleIndex rule) {
  if (rule > 7) throw std::invalid_argument("rule index out of range 0..7");
}

}  // namespace

DnaSymbol encode(RuleIndex rule, Quad q) {
  check_rule(rule);
  if (q > 3) throw std::invalid_argument("quad out of range 0..3");
  return static_cast<DnaSymbol>(kEncode[rule][q]);
}

Quad decode(RuleIndex rule, DnaSymbol d) {
  check_rule(rule);
  return kDecode[rule][static_cast<std::uint8_t>(d)];
}

DnaSymbol complement(DnaSymbol d) {
  return static_cast<DnaSymbol>((static_cast<std::uint8_t>(d) + 3) & 3);
}

DnaSymbol complement_inverse(DnaSymbol d) {
  return static_cast<DnaSymbol>((static_cast<std::uint8_t>(d) + 1) & 3);
}

DnaSymbol dna_add(DnaSymbol a, DnaSymbol b) {
  return static_cast<DnaSymbol>(
      (static_cast<std::uint8_t>(a) + static_cast<std::uint8_t>(b)) & 3);
}

DnaSymbol dna_sub(DnaSymbol a, DnaSymbol b) {
  return static_cast<DnaSymbol>(
      (static_cast<std::uint8_t>(a) - static_cast<std::uint8_t>(b)) & 3);
}

Quad composite_f(RuleIndex s, RuleIndex t, Quad q) {
  return decode(t, encode(s, q));
}

Quad composite_g(RuleIndex s, RuleIndex t, Quad q) {
  return decode(t, complement(encode(s, q)));
}

namespace {

std::array<Quad, 4> map_table(RuleIndex s, RuleIndex t, MapFamily family) {
  std::array<Quad, 4> out{};
  for (Quad q = 0; q < 4; ++q) {
    out[q] = family == MapFamily::F ? composite_f(s, t, q)
                                    : composite_g(s, t, q);
  }
  return out;
}

std::vector<MapClass> partition_family(MapFamily family) {
  std::map<std::array<Quad, 4>, std::vector<std::pair<RuleIndex, RuleIndex>>>
      groups;
  for (int s = 0; s < 8; ++s) {
    for (int t = 0; t < 8; ++t) {
      const auto table = map_table(static_cast<RuleIndex>(s),
                                   static_cast<RuleIndex>(t), family);
      groups[table].emplace_back(static_cast<RuleIndex>(s),
                                 static_cast<RuleIndex>(t));
    }
  }
  std::vector<MapClass> out;
  out.reserve(groups.size());
  for (const auto& [table, members] : groups) {
    out.push_back(MapClass{table, members});
  }
  return out;
}

}  // namespace

MapPartition enumerate_distinct_maps() {
  return MapPartition{partition_family(MapFamily::F),
                      partition_family(MapFamily::G)};
}

std::vector<XorPartner> xor_constant_partners(RuleIndex s1, RuleIndex t1,
                                              MapFamily family) {
  const auto base = map_table(s1, t1, family);
  std::vector<XorPartner> out;
  for (int s = 0; s < 8; ++s) {
    for (int t = 0; t < 8; ++t) {
      const auto cand = map_table(static_cast<RuleIndex>(s),
                                  static_cast<RuleIndex>(t), family);
      const std::uint8_t lambda = cand[0] ^ base[0];
      if (lambda == 0) continue;
      bool constant = true;
      for (Quad q = 1; q < 4; ++q) {
        if ((cand[q] ^ base[q]) != lambda) {
          constant = false;
          break;
        }
      }
      if (constant) {
        out.push_back(XorPartner{static_cast<RuleIndex>(s),
                                 static_cast<RuleIndex>(t), lambda});
      }
    }
  }
  return out;
}

}  // namespace mpps
