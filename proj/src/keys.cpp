#include "mpps/keys.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mpps {

using nlohmann::json;

EquivalentKey to_native_form(const EquivalentKey& key) {
  if (key.form == KeystreamForm::Native) return key;
  EquivalentKey out = key;
  out.form = KeystreamForm::Native;
  const std::size_t n = key.pixels();
  // hat4 = s4, hat5 = s5^s4^s6, hat6 = s6^s4  =>
  // s4 = hat4, s6 = hat6^hat4, s5 = hat5^hat4^s6 = hat5^hat6.
  for (std::size_t i = 0; i < n; ++i) {
    out.ks[0][i] = key.ks[0][i];
    out.ks[2][i] = static_cast<std::uint8_t>(key.ks[2][i] ^ key.ks[0][i]);
    out.ks[1][i] = static_cast<std::uint8_t>(key.ks[1][i] ^ key.ks[2][i]);
  }
  return out;
}

EquivalentKey to_attack_form(const EquivalentKey& key) {
  if (key.form == KeystreamForm::Attack) return key;
  EquivalentKey out = key;
  out.form = KeystreamForm::Attack;
  const std::size_t n = key.pixels();
  for (std::size_t i = 0; i < n; ++i) {
    out.ks[0][i] = key.ks[0][i];
    out.ks[1][i] = static_cast<std::uint8_t>(key.ks[1][i] ^ key.ks[0][i] ^
                                             key.ks[2][i]);
    out.ks[2][i] = static_cast<std::uint8_t>(key.ks[2][i] ^ key.ks[0][i]);
  }
  return out;
}

std::string secret_key_to_json(const SecretKey& key,
                               std::optional<std::uint64_t> seed) {
  json j;
  j["keys"] = json::array();
  for (const SubKey& k : key.k) {
    j["keys"].push_back(
        {{"y0", k.y0}, {"mu", k.mu}, {"transient", k.transient}});
  }
  if (seed) j["seed"] = *seed;
  return j.dump(2) + "\n";
}

SecretKey secret_key_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (!j.contains("keys") || !j["keys"].is_array() || j["keys"].size() != 6) {
    throw std::runtime_error("secret key json must contain 6 \"keys\" entries");
  }
  SecretKey key;
  for (int i = 0; i < 6; ++i) {
    const json& e = j["keys"][i];
    key.k[i].y0 = e.at("y0").get<double>();
    key.k[i].mu = e.at("mu").get<double>();
    key.k[i].transient = e.value("transient", 500);
  }
  return key;
}

namespace {

json bytes_to_json(const std::vector<std::uint8_t>& v) {
  json a = json::array();
  for (std::uint8_t b : v) a.push_back(b);
  return a;
}

std::vector<std::uint8_t> bytes_from_json(const json& a, std::size_t expect,
                                          const char* what) {
  if (!a.is_array() || a.size() != expect) {
    throw std::runtime_error(std::string("equivalent key json: field ") +
                             what + " has wrong length");
  }
  std::vector<std::uint8_t> v(expect);
  for (std::size_t i = 0; i < expect; ++i) {
    const int x = a[i].get<int>();
    if (x < 0 || x > 255) {
      throw std::runtime_error(std::string("equivalent key json: field ") +
                               what + " byte out of range");
    }
    v[i] = static_cast<std::uint8_t>(x);
  }
  return v;
}

}  // namespace

std::string equivalent_key_to_json(const EquivalentKey& key) {
  json j;
  j["width"] = key.width;
  j["height"] = key.height;
  j["flag"] = key.form == KeystreamForm::Native ? "native" : "attack";
  j["s1"] = key.s1;
  json s3 = json::array();
  for (std::uint8_t b : key.s3) s3.push_back(b);
  j["s3"] = s3;
  j["e"] = {key.e[0], key.e[1], key.e[2]};
  j["d"] = {key.d[0], key.d[1], key.d[2]};
  j["ks4"] = bytes_to_json(key.ks[0]);
  j["ks5"] = bytes_to_json(key.ks[1]);
  j["ks6"] = bytes_to_json(key.ks[2]);
  return j.dump(2) + "\n";
}

EquivalentKey equivalent_key_from_json(const std::string& text) {
  const json j = json::parse(text);
  EquivalentKey key;
  key.width = j.at("width").get<std::uint32_t>();
  key.height = j.at("height").get<std::uint32_t>();
  if (key.width == 0 || key.height == 0) {
    throw std::runtime_error("equivalent key json: zero dimension");
  }
  const std::string flag = j.at("flag").get<std::string>();
  if (flag == "native") {
    key.form = KeystreamForm::Native;
  } else if (flag == "attack") {
    key.form = KeystreamForm::Attack;
  } else {
    throw std::runtime_error("equivalent key json: flag must be native|attack");
  }
  const std::size_t n = key.pixels();
  const json& s1 = j.at("s1");
  if (!s1.is_array() || s1.size() != 3 * n) {
    throw std::runtime_error("equivalent key json: s1 must have 3*M*N entries");
  }
  key.s1.resize(3 * n);
  std::vector<bool> seen(3 * n, false);
  for (std::size_t i = 0; i < 3 * n; ++i) {
    const std::uint64_t v = s1[i].get<std::uint64_t>();
    if (v < 1 || v > 3 * n || seen[v - 1]) {
      throw std::runtime_error(
          "equivalent key json: s1 is not a 1-based permutation");
    }
    seen[v - 1] = true;
    key.s1[i] = static_cast<std::uint32_t>(v);
  }
  const json& s3 = j.at("s3");
  if (!s3.is_array() || s3.size() != 4 * n) {
    throw std::runtime_error("equivalent key json: s3 must have 4*M*N entries");
  }
  key.s3.resize(4 * n);
  for (std::size_t i = 0; i < 4 * n; ++i) {
    const int v = s3[i].get<int>();
    if (v != 0 && v != 1) {
      throw std::runtime_error("equivalent key json: s3 entries must be 0/1");
    }
    key.s3[i] = static_cast<std::uint8_t>(v);
  }
  for (int c = 0; c < 3; ++c) {
    const int e = j.at("e")[c].get<int>();
    const int d = j.at("d")[c].get<int>();
    if (e < 0 || e > 7 || d < 0 || d > 7) {
      throw std::runtime_error("equivalent key json: rule index out of 0..7");
    }
    key.e[c] = static_cast<RuleIndex>(e);
    key.d[c] = static_cast<RuleIndex>(d);
  }
  key.ks[0] = bytes_from_json(j.at("ks4"), n, "ks4");
  key.ks[1] = bytes_from_json(j.at("ks5"), n, "ks5");
  key.ks[2] = bytes_from_json(j.at("ks6"), n, "ks6");
  return key;
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string load_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace mpps
