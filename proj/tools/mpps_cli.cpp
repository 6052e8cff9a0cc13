// Command-line workbench: key generation, encryption/decryption, the
// chosen-plaintext attack, a self-test, DNA table dumps, and digitized-map
// graph analysis.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "mpps/attack.hpp"
#include "mpps/cipher.hpp"
#include "mpps/degradation.hpp"
#include "mpps/image.hpp"
#include "mpps/keys.hpp"
#include "mpps/oracle.hpp"

namespace {

using namespace mpps;

// A post-parse problem with flag values (bad MxN, conflicting modes):
// reported as a usage error (exit 1), unlike data errors (exit 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Dims {
  std::uint32_t rows = 0;  // M
  std::uint32_t cols = 0;  // N
};

Dims parse_dims(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw UsageError("expected MxN, got: " + text);
  try {
    std::size_t p1 = 0, p2 = 0;
    const unsigned long m = std::stoul(text.substr(0, x), &p1);
    const std::string rest = text.substr(x + 1);
    const unsigned long n = std::stoul(rest, &p2);
    if (p1 != x || p2 != rest.size() || m == 0 || n == 0) {
      throw UsageError("expected positive MxN, got: " + text);
    }
    return Dims{static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n)};
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("expected MxN, got: " + text);
  }
}

SecretKey random_secret_key(std::mt19937_64& rng, int transient) {
  std::uniform_real_distribution<double> y0_dist(0.02, 0.98);
  std::uniform_real_distribution<double> mu_dist(3.7, 3.99);
  SecretKey key;
  for (auto& k : key.k) {
    k.y0 = y0_dist(rng);
    k.mu = mu_dist(rng);
    k.transient = transient;
  }
  return key;
}

RgbImage random_image(std::mt19937_64& rng, std::uint32_t rows,
                      std::uint32_t cols) {
  RgbImage img = make_image(cols, rows);
  for (std::size_t i = 0; i < img.pixels(); ++i) {
    img.r[i] = static_cast<std::uint8_t>(rng() & 0xFF);
    img.g[i] = static_cast<std::uint8_t>(rng() & 0xFF);
    img.b[i] = static_cast<std::uint8_t>(rng() & 0xFF);
  }
  return img;
}

// A key file holds either a secret key ({"keys": [...]}) or an equivalent
// key; the schema is detected from the document itself.
struct LoadedKey {
  std::optional<SecretKey> secret;
  std::optional<EquivalentKey> equivalent;
};

LoadedKey load_key_file(const std::string& path) {
  const std::string text = load_text(path);
  const auto j = nlohmann::json::parse(text);
  LoadedKey out;
  if (j.contains("keys")) {
    out.secret = secret_key_from_json(text);
  } else {
    out.equivalent = equivalent_key_from_json(text);
  }
  return out;
}

int run_keygen(const std::string& out_path, std::optional<std::uint64_t> seed,
               int transient) {
  if (!seed) {
    std::random_device rd;
    seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  std::mt19937_64 rng(*seed);
  const SecretKey key = random_secret_key(rng, transient);
  save_text(out_path, secret_key_to_json(key, seed));
  std::cout << "wrote secret key to " << out_path << " (seed " << *seed
            << ")\n";
  return 0;
}

int run_crypt(bool encrypting, const std::string& key_path,
              const std::string& in_path, const std::string& out_path,
              const std::string& raw_dims) {
  const LoadedKey key = load_key_file(key_path);
  RgbImage input;
  const bool raw = !raw_dims.empty();
  if (raw) {
    const Dims d = parse_dims(raw_dims);
    input = read_raw(in_path, d.cols, d.rows);
  } else {
    input = read_ppm(in_path);
  }
  RgbImage output;
  if (key.secret) {
    output = encrypting ? encrypt(input, *key.secret)
                        : decrypt(input, *key.secret);
  } else {
    output = encrypting ? encrypt(input, *key.equivalent)
                        : decrypt(input, *key.equivalent);
  }
  if (raw) {
    write_raw(out_path, output);
  } else {
    write_ppm(out_path, output);
  }
  return 0;
}

int run_attack(std::uint32_t width, std::uint32_t height,
               const std::string& oracle_key_path,
               const std::string& transcript_dir, const std::string& out_path,
               std::size_t verify_samples, const std::string& record_dir) {
  if (oracle_key_path.empty() == transcript_dir.empty()) {
    throw UsageError(
        "exactly one of --oracle-key and --transcript must be given");
  }
  if (!record_dir.empty() && !transcript_dir.empty()) {
    throw UsageError("--record cannot be combined with --transcript");
  }

  std::unique_ptr<ChosenPlaintextOracle> base;
  if (!oracle_key_path.empty()) {
    const LoadedKey key = load_key_file(oracle_key_path);
    if (key.secret) {
      base = std::make_unique<InProcessOracle>(*key.secret);
    } else {
      base = std::make_unique<InProcessOracle>(*key.equivalent);
    }
  } else {
    base = std::make_unique<TranscriptReplayOracle>(transcript_dir);
  }
  std::unique_ptr<RecordingOracle> recorder;
  ChosenPlaintextOracle* oracle = base.get();
  if (!record_dir.empty()) {
    recorder = std::make_unique<RecordingOracle>(*base, record_dir);
    oracle = recorder.get();
  }

  AttackDiagnostics diag;
  const EquivalentKey recovered = full_attack(*oracle, height, width, &diag);
  std::cout << "oracle queries: " << oracle->query_count() << "\n";
  std::cout << "candidates: red " << diag.red_pruned << "/"
            << diag.red_candidates << ", green " << diag.green_pruned << "/"
            << diag.green_candidates << ", blue " << diag.blue_pruned << "/"
            << diag.blue_candidates << ", joint " << diag.joint_candidates
            << ", verified " << diag.verified_candidates << "\n";
  if (diag.ambiguous) {
    std::cout << "warning: " << diag.behavior_classes
              << " response-indistinguishable key classes at this image size;"
              << " returned the first verified candidate\n";
  }
  save_text(out_path, equivalent_key_to_json(recovered));
  std::cout << "wrote equivalent key to " << out_path << "\n";

  if (verify_samples > 0) {
    std::size_t good = 0;
    if (!oracle_key_path.empty()) {
      std::mt19937_64 rng(std::random_device{}());
      for (std::size_t i = 0; i < verify_samples; ++i) {
        const RgbImage img = random_image(rng, height, width);
        const RgbImage cipher = oracle->submit(img);
        if (decrypt(cipher, recovered) == img) ++good;
      }
      std::cout << "verify: " << good << "/" << verify_samples
                << " fresh samples decrypted correctly\n";
    } else {
      const auto& pairs =
          static_cast<TranscriptReplayOracle*>(base.get())->pairs();
      const std::size_t n = std::min(verify_samples, pairs.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (decrypt(pairs[i].second, recovered) == pairs[i].first) ++good;
      }
      std::cout << "verify: " << good << "/" << n
                << " transcript pairs decrypted correctly\n";
    }
    if (good < verify_samples) {
      throw std::runtime_error("verification failed for some samples");
    }
  }
  return 0;
}

int run_verify(std::size_t trials, const std::string& size_text) {
  const Dims d = parse_dims(size_text);
  std::mt19937_64 rng(12345);
  bool all_ok = true;

  std::size_t rt_ok = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const SecretKey key = random_secret_key(rng, 500);
    const RgbImage img = random_image(rng, d.rows, d.cols);
    if (decrypt(encrypt(img, key), key) == img) ++rt_ok;
  }
  std::cout << (rt_ok == trials ? "PASS" : "FAIL") << " round-trip: " << rt_ok
            << "/" << trials << " at " << d.rows << "x" << d.cols << "\n";
  all_ok = all_ok && rt_ok == trials;

  const std::size_t attack_trials = std::min<std::size_t>(trials, 3);
  std::size_t at_ok = 0;
  for (std::size_t t = 0; t < attack_trials; ++t) {
    const SecretKey hidden = random_secret_key(rng, 500);
    InProcessOracle oracle(hidden);
    const EquivalentKey recovered = full_attack(oracle, d.rows, d.cols);
    const std::size_t expected =
        4 + digit_image_count(3ull * d.rows * d.cols);
    bool ok = oracle.query_count() == expected;
    for (int i = 0; ok && i < 5; ++i) {
      const RgbImage img = random_image(rng, d.rows, d.cols);
      ok = decrypt(oracle.submit(img), recovered) == img;
    }
    if (ok) ++at_ok;
  }
  std::cout << (at_ok == attack_trials ? "PASS" : "FAIL")
            << " attack self-test: " << at_ok << "/" << attack_trials << "\n";
  all_ok = all_ok && at_ok == attack_trials;

  const WeakKeyReport report = find_weak_keys();
  const bool weak_ok = report.per_channel_noop_pairs == 8 &&
                       report.joint_noop_combinations == 512 &&
                       report.noop_pairs_are_identity;
  std::cout << (weak_ok ? "PASS" : "FAIL")
            << " weak keys: " << report.per_channel_noop_pairs
            << " per-channel no-op rule pairs, "
            << report.joint_noop_combinations << " joint combinations ("
            << report.cited_joint_count << " commonly cited)\n";
  all_ok = all_ok && weak_ok;

  if (!all_ok) throw std::runtime_error("self-test failed");
  std::cout << "verify: PASS\n";
  return 0;
}

nlohmann::json rule_tables_json() {
  static constexpr char kLetters[4] = {'A', 'G', 'C', 'T'};
  nlohmann::json j;
  j["symbols"] = {"A=0", "G=1", "C=2", "T=3"};
  j["coding_rules"] = nlohmann::json::array();
  for (int rule = 0; rule < 8; ++rule) {
    std::string row;
    for (Quad q = 0; q < 4; ++q) {
      row.push_back(kLetters[static_cast<int>(
          encode(static_cast<RuleIndex>(rule), q))]);
    }
    j["coding_rules"].push_back(row);
  }
  auto table4x4 = [&](auto op) {
    nlohmann::json t = nlohmann::json::array();
    for (int a = 0; a < 4; ++a) {
      std::string row;
      for (int b = 0; b < 4; ++b) {
        row.push_back(kLetters[static_cast<int>(op(
            static_cast<DnaSymbol>(a), static_cast<DnaSymbol>(b)))]);
      }
      t.push_back(row);
    }
    return t;
  };
  j["addition"] = table4x4([](DnaSymbol a, DnaSymbol b) { return dna_add(a, b); });
  j["subtraction"] =
      table4x4([](DnaSymbol a, DnaSymbol b) { return dna_sub(a, b); });
  std::string comp;
  for (int a = 0; a < 4; ++a) {
    comp.push_back(kLetters[static_cast<int>(
        complement(static_cast<DnaSymbol>(a)))]);
  }
  j["complement"] = comp;

  const MapPartition part = enumerate_distinct_maps();
  auto classes_json = [](const std::vector<MapClass>& classes) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : classes) {
      nlohmann::json e;
      e["table"] = {c.table[0], c.table[1], c.table[2], c.table[3]};
      nlohmann::json members = nlohmann::json::array();
      for (const auto& [s, t] : c.members) members.push_back({s, t});
      e["members"] = members;
      out.push_back(e);
    }
    return out;
  };
  j["composite_encode_decode_classes"] = classes_json(part.f_classes);
  j["composite_with_complement_classes"] = classes_json(part.g_classes);
  j["distinct_f_maps"] = part.f_classes.size();
  j["distinct_g_maps"] = part.g_classes.size();
  return j;
}

int run_tables(const std::string& out_path) {
  const std::string text = rule_tables_json().dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    save_text(out_path, text);
    std::cout << "wrote tables to " << out_path << "\n";
  }
  return 0;
}

int run_graph(const std::string& map_text, const std::string& mu_text,
              int precision, const std::string& mode_text,
              const std::string& dot_path, const std::string& summary_path) {
  MapKind map;
  if (map_text == "cls") {
    map = MapKind::CLS;
  } else if (map_text == "clt") {
    map = MapKind::CLT;
  } else {
    throw UsageError("--map must be cls or clt");
  }
  QuantMode mode;
  if (mode_text == "floor") {
    mode = QuantMode::Floor;
  } else if (mode_text == "round") {
    mode = QuantMode::Round;
  } else if (mode_text == "ceil") {
    mode = QuantMode::Ceil;
  } else {
    throw UsageError("--mode must be floor, round, or ceil");
  }
  DyadicMu mu;
  try {
    mu = DyadicMu::parse(mu_text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--mu: ") + e.what());
  }

  const FunctionalGraph g = build_graph(map, mu, precision, mode);
  const GraphSummary s = summarize(g);
  if (!dot_path.empty()) save_text(dot_path, export_dot(g));
  if (!summary_path.empty()) save_text(summary_path, graph_summary_json(g, s));

  std::cout << map_text << " mu=" << mu.label() << " n=" << precision << " "
            << mode_text << ": components=" << s.component_count
            << " cycles=[";
  for (std::size_t i = 0; i < s.cycle_lengths.size(); ++i) {
    std::cout << (i ? "," : "") << s.cycle_lengths[i];
  }
  std::cout << "] max_tail=" << s.max_tail << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chaotic color-image cipher workbench"};
  app.require_subcommand(1);

  auto* keygen = app.add_subcommand("keygen", "Generate a random secret key");
  std::string kg_out = "secret_key.json";
  std::optional<std::uint64_t> kg_seed;
  int kg_transient = 500;
  keygen->add_option("--out", kg_out, "Output key JSON path");
  keygen->add_option("--seed", kg_seed, "Generator seed (recorded in output)");
  keygen->add_option("--transient", kg_transient,
                     "Transient length for each sub-key")
      ->check(CLI::NonNegativeNumber);

  std::string cr_key, cr_in, cr_out, cr_raw;
  auto add_crypt_flags = [&](CLI::App* sub) {
    sub->add_option("--key", cr_key, "Key JSON (secret or equivalent)")
        ->required();
    sub->add_option("--in", cr_in, "Input image path")->required();
    sub->add_option("--out", cr_out, "Output image path")->required();
    sub->add_option("--raw", cr_raw,
                    "Treat images as raw interleaved RGB of size MxN");
  };
  auto* enc = app.add_subcommand("encrypt", "Encrypt an image");
  add_crypt_flags(enc);
  auto* dec = app.add_subcommand("decrypt", "Decrypt an image");
  add_crypt_flags(dec);

  auto* attack = app.add_subcommand(
      "attack", "Recover an equivalent key from chosen plaintexts");
  std::uint32_t at_width = 0, at_height = 0;
  std::string at_oracle_key, at_transcript, at_out = "equivalent_key.json";
  std::string at_record;
  std::size_t at_verify = 0;
  attack->add_option("--width", at_width, "Image width (columns)")->required();
  attack->add_option("--height", at_height, "Image height (rows)")->required();
  attack->add_option("--oracle-key", at_oracle_key,
                     "Encrypt in-process under this hidden key file");
  attack->add_option("--transcript", at_transcript,
                     "Replay recorded query_*_plain/cipher.ppm pairs");
  attack->add_option("--out", at_out, "Recovered equivalent key JSON path");
  attack->add_option("--verify", at_verify,
                     "Decrypt this many samples with the recovered key");
  attack->add_option("--record", at_record,
                     "Record oracle exchanges into this directory");

  auto* verify =
      app.add_subcommand("verify", "Round-trip and attack self-test");
  std::size_t vf_trials = 25;
  std::string vf_size = "8x8";
  verify->add_option("--trials", vf_trials, "Number of round-trip trials");
  verify->add_option("--size", vf_size, "Image size MxN");

  auto* tables =
      app.add_subcommand("tables", "Dump DNA tables and composite-map classes");
  std::string tb_out;
  tables->add_option("--out", tb_out, "Output JSON path (default stdout)");

  auto* graph = app.add_subcommand(
      "graph", "Functional graph of a digitized map at n-bit precision");
  std::string gr_map = "cls", gr_mu = "121/32", gr_mode = "round";
  int gr_precision = 8;
  std::string gr_dot, gr_summary;
  graph->add_option("--map", gr_map, "cls | clt");
  graph->add_option("--mu", gr_mu, "Control parameter, p/q or decimal");
  graph->add_option("--precision", gr_precision, "Precision bits (2..24)")
      ->check(CLI::Range(2, 24));
  graph->add_option("--mode", gr_mode, "floor | round | ceil");
  graph->add_option("--dot", gr_dot, "DOT output path");
  graph->add_option("--summary", gr_summary, "Summary JSON output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message
    return 1;
  }

  try {
    if (*keygen) return run_keygen(kg_out, kg_seed, kg_transient);
    if (*enc) return run_crypt(true, cr_key, cr_in, cr_out, cr_raw);
    if (*dec) return run_crypt(false, cr_key, cr_in, cr_out, cr_raw);
    if (*attack) {
      return run_attack(at_width, at_height, at_oracle_key, at_transcript,
                        at_out, at_verify, at_record);
    }
    if (*verify) return run_verify(vf_trials, vf_size);
    if (*tables) return run_tables(tb_out);
    if (*graph) {
      return run_graph(gr_map, gr_mu, gr_precision, gr_mode, gr_dot,
                       gr_summary);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
