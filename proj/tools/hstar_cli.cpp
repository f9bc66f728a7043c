// Command-line front end: Carleson sets, the weighted Cauchy-kernel space,
// the truncated backward shift with its unitary-plus-rank-one split, and
// Clark measures of finite Blaschke products.
//
// Exit codes: 0 success, 2 usage/range, 3 stage failure, 4 ill-conditioned Gram.

#include <CLI11.hpp>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "hstar/pipeline.hpp"
#include "hstar/version.hpp"

namespace {

namespace fs = std::filesystem;
using hstar::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitStage = 3;
constexpr int kExitConditioning = 4;

void write_json_file(const std::string& dir, const std::string& name, const json& j) {
  fs::create_directories(dir);
  std::ofstream out(fs::path(dir) / name, std::ios::binary);
  out << j.dump(2) << "\n";
}

// "0.5", "-0.3i", "0.2+0.1i", "i", "-i"
std::complex<double> parse_complex(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  if (s == "i") return {0, 1};
  if (s == "-i") return {0, -1};
  if (s == "+i") return {0, 1};
  // split at the last +/- that is not an exponent sign or the leading sign
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const bool imag_tail = s.back() == 'i';
  if (!imag_tail) {
    if (split != std::string::npos) throw std::invalid_argument("bad complex literal: " + s);
    return {std::stod(s), 0};
  }
  s.pop_back();  // drop 'i'
  if (split == std::string::npos) return {0, s.empty() ? 1.0 : std::stod(s)};
  std::string re = s.substr(0, split);
  std::string im = s.substr(split);
  if (im == "+") im = "1";
  if (im == "-") im = "-1";
  return {std::stod(re), std::stod(im)};
}

std::vector<std::complex<double>> parse_complex_list(const std::string& csv) {
  std::vector<std::complex<double>> out;
  std::string cur;
  int depth_guard = 0;
  (void)depth_guard;
  for (char c : csv + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(parse_complex(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  return out;
}

json report_header() { return json{{"version", hstar::kVersion}}; }

int cmd_gen_set(double ratio, int depth, const std::string& out_dir, const std::string& tag) {
  std::vector<hstar::CarlesonSet> by_depth;
  for (int d = 0; d <= depth; ++d) by_depth.push_back(hstar::cantor_like_set(d, ratio));
  hstar::CarlesonSet set = by_depth.back();
  if (!tag.empty()) set.tag = tag;
  const hstar::EntropyResult ent = hstar::entropy(set);

  json out = report_header();
  out["set"] = hstar::to_json(set);
  out["entropy"] = hstar::to_json(ent);
  if (depth >= 2) out["margin"] = hstar::to_json(hstar::carleson_margin(by_depth));
  write_json_file(out_dir, "set.json", out);

  std::cout << "entropy = " << ent.value;
  if (ent.full_measure_warning)
    std::cout << "  (warning: no complementary arcs, E has full measure at this depth)";
  std::cout << "\n";
  if (depth >= 2) {
    const auto margin = hstar::carleson_margin(by_depth);
    std::cout << "entropy increments fitted ratio = " << margin.fitted_ratio
              << (margin.carleson_consistent ? "  [Carleson-consistent]" : "  [inconsistent]")
              << "\n";
  }
  std::cout << "wrote " << (fs::path(out_dir) / "set.json").string() << "\n";
  return kExitOk;
}

int cmd_clark(const std::string& zeros_csv, const std::string& alphas_csv,
              const std::string& out_dir, std::uint64_t seed) {
  const auto zeros = parse_complex_list(zeros_csv);
  auto alphas = parse_complex_list(alphas_csv);
  if (alphas.empty()) alphas.push_back({1.0, 0.0});
  for (auto& a : alphas) {
    if (std::abs(std::abs(a) - 1.0) > 1e-8)
      throw std::range_error("alpha must be unimodular");
    a /= std::abs(a);
  }
  const hstar::InnerFunction inner = hstar::make_inner(zeros);

  hstar::Rng rng(seed);
  std::vector<std::complex<double>> samples;
  for (int k = 0; k < 50; ++k)
    samples.push_back(std::polar(0.92 * rng.uniform(), rng.uniform(0.0, hstar::kTwoPi)));

  json out = report_header();
  out["measures"] = json::array();
  const hstar::ClarkFamilyReport family = hstar::clark_family_spectra(inner, alphas);
  bool all_pass = true;
  for (const auto& mu : family.measures) {
    const hstar::HerglotzReport rep = hstar::verify_herglotz(inner, mu, samples);
    json entry = hstar::to_json(mu);
    entry["herglotz"] = hstar::to_json(rep);
    out["measures"].push_back(entry);
    all_pass = all_pass && rep.passed;
    std::cout << "alpha = (" << mu.alpha.real() << ", " << mu.alpha.imag() << "): "
              << mu.atoms.size() << " atoms, total mass = " << mu.total_mass
              << ", herglotz max rel err = " << rep.max_rel_error << "\n";
  }
  out["interlacing"] = family.interlacing;
  write_json_file(out_dir, "clark.json", out);
  std::cout << "wrote " << (fs::path(out_dir) / "clark.json").string() << "\n";
  return all_pass ? kExitOk : kExitStage;
}

int cmd_continuity(const hstar::PipelineConfig& cfg, const std::string& out_dir) {
  const hstar::CarlesonSet set = hstar::cantor_like_set(cfg.depth, cfg.ratio);
  const hstar::WeightGrid w = hstar::boundary_weight(set, cfg.exponent, cfg.grid_size);
  const hstar::OuterFunction outer = hstar::outer_function(w);
  const hstar::NodeFamily nodes = hstar::sample_nodes(set, cfg.generation, cfg.count_cap);
  const hstar::GramMatrix gram = hstar::gram_matrix(nodes, outer);
  const hstar::ContinuityTable table = hstar::continuity_table(nodes, gram);

  fs::create_directories(out_dir);
  std::ofstream csv(fs::path(out_dir) / "continuity.csv", std::ios::binary);
  csv << hstar::continuity_csv(table);
  json out = report_header();
  out["config"] = hstar::to_json(cfg);
  out["table"] = hstar::to_json(table);
  write_json_file(out_dir, "continuity.json", out);
  std::cout << "modulus fit: kernel_gap ~ " << table.modulus_scale << " * chordal_gap^"
            << table.modulus_exponent << "\n";
  std::cout << "wrote continuity.csv, continuity.json under " << out_dir << "\n";
  return kExitOk;
}

int cmd_spectrum(const hstar::PipelineConfig& cfg, int gen_lo, int gen_hi,
                 const std::string& out_dir) {
  const hstar::CarlesonSet set = hstar::cantor_like_set(cfg.depth, cfg.ratio);
  const hstar::WeightGrid w = hstar::boundary_weight(set, cfg.exponent, cfg.grid_size);
  const hstar::OuterFunction outer = hstar::outer_function(w);
  json out = report_header();
  out["config"] = hstar::to_json(cfg);
  out["reports"] = json::array();
  for (int g = gen_lo; g <= gen_hi; ++g) {
    const hstar::NodeFamily nodes = hstar::sample_nodes(set, g, cfg.count_cap);
    const hstar::GramMatrix gram = hstar::gram_matrix(nodes, outer);
    const hstar::TruncatedOperator op = hstar::build_truncation(nodes, gram);
    const hstar::SpectrumReport rep = hstar::spectrum_report(op, set);
    out["reports"].push_back(hstar::to_json(rep));
    std::cout << "generation " << g << ": " << rep.eigenvalues.size()
              << " eigenvalues, covering distance " << rep.hausdorff_from_E << "\n";
  }
  write_json_file(out_dir, "spectrum.json", out);
  std::cout << "wrote " << (fs::path(out_dir) / "spectrum.json").string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for rank-one perturbations of unitaries on "
               "weighted Cauchy-kernel spaces"};
  app.set_version_flag("--version", hstar::kVersion);
  app.require_subcommand(1);

  std::string out_dir = "out";
  std::uint64_t seed = 1;
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--seed", seed, "random seed fixing every randomized check")
      ->capture_default_str();

  // gen-set
  auto* gen = app.add_subcommand("gen-set", "generate a Cantor-type Carleson set");
  double ratio = 1.0 / 3.0;
  int depth = 8;
  std::string tag;
  gen->add_option("--ratio", ratio, "middle removal fraction, in (0,1)")->capture_default_str();
  gen->add_option("--depth", depth, "construction depth")->capture_default_str();
  gen->add_option("--tag", tag, "label stored with the set");

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "run the full verification pipeline");
  std::string config_path;
  hstar::PipelineConfig cfg;
  double alpha_arg = 0.0;
  pipe->add_option("--config", config_path, "JSON config file (flags override)");
  pipe->add_option("--ratio", cfg.ratio, "middle removal fraction")->capture_default_str();
  pipe->add_option("--depth", cfg.depth, "set depth")->capture_default_str();
  pipe->add_option("--p", cfg.exponent, "weight exponent")->capture_default_str();
  pipe->add_option("--grid", cfg.grid_size, "boundary grid size N")->capture_default_str();
  pipe->add_option("--generation", cfg.generation, "node generation")->capture_default_str();
  pipe->add_option("--cap", cfg.count_cap, "node count cap")->capture_default_str();
  pipe->add_option("--alpha-arg", alpha_arg, "argument of the free unitary phase")
      ->capture_default_str();
  pipe->add_option("--eps", cfg.epsilons, "epsilon list for the continuity certificate");
  pipe->add_option("--orbit-steps", cfg.orbit_steps, "orbit diagnostic steps")
      ->capture_default_str();

  // clark
  auto* clark = app.add_subcommand("clark", "Clark measures of a finite Blaschke product");
  std::string zeros_csv, alphas_csv = "1";
  clark->add_option("--zeros", zeros_csv, "comma-separated Blaschke zeros, e.g. 0,0.5,-0.3i")
      ->required();
  clark->add_option("--alpha", alphas_csv, "comma-separated unimodular parameters")
      ->capture_default_str();

  // continuity
  auto* cont = app.add_subcommand("continuity", "standalone nearest-partner kernel-gap table");
  hstar::PipelineConfig ccfg;
  cont->add_option("--ratio", ccfg.ratio)->capture_default_str();
  cont->add_option("--depth", ccfg.depth)->capture_default_str();
  cont->add_option("--p", ccfg.exponent)->capture_default_str();
  cont->add_option("--grid", ccfg.grid_size)->capture_default_str();
  cont->add_option("--generation", ccfg.generation)->capture_default_str();
  cont->add_option("--cap", ccfg.count_cap)->capture_default_str();

  // spectrum
  auto* spec = app.add_subcommand("spectrum", "per-generation spectrum reports");
  hstar::PipelineConfig scfg;
  int gen_lo = 2, gen_hi = 6;
  spec->add_option("--ratio", scfg.ratio)->capture_default_str();
  spec->add_option("--depth", scfg.depth)->capture_default_str();
  spec->add_option("--p", scfg.exponent)->capture_default_str();
  spec->add_option("--grid", scfg.grid_size)->capture_default_str();
  spec->add_option("--cap", scfg.count_cap)->capture_default_str();
  spec->add_option("--gen-lo", gen_lo)->capture_default_str();
  spec->add_option("--gen-hi", gen_hi)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen_set(ratio, depth, out_dir, tag);
    if (pipe->parsed()) {
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw std::range_error("cannot open config file: " + config_path);
        json j;
        in >> j;
        // flags given on the command line win over the file
        hstar::PipelineConfig merged = hstar::pipeline_config_from_json(j);
        if (pipe->count("--ratio")) merged.ratio = cfg.ratio;
        if (pipe->count("--depth")) merged.depth = cfg.depth;
        if (pipe->count("--p")) merged.exponent = cfg.exponent;
        if (pipe->count("--grid")) merged.grid_size = cfg.grid_size;
        if (pipe->count("--generation")) merged.generation = cfg.generation;
        if (pipe->count("--cap")) merged.count_cap = cfg.count_cap;
        if (pipe->count("--alpha-arg")) merged.alpha_arg = alpha_arg;
        if (pipe->count("--eps")) merged.epsilons = cfg.epsilons;
        if (pipe->count("--orbit-steps")) merged.orbit_steps = cfg.orbit_steps;
        cfg = merged;
      } else {
        cfg.alpha_arg = alpha_arg;
      }
      cfg.seed = seed;
      const hstar::PipelineResult res = hstar::run_pipeline(cfg, out_dir);
      for (const auto& s : res.stages)
        std::cout << (s.passed ? "pass " : "FAIL ") << s.name
                  << (s.heuristic ? "  [heuristic]" : "") << "\n";
      std::cout << (res.all_passed ? "all checks passed" : "failed at stage: " + res.failed_stage)
                << "\n";
      return res.all_passed ? kExitOk : res.suggested_exit;
    }
    if (clark->parsed()) return cmd_clark(zeros_csv, alphas_csv, out_dir, seed);
    if (cont->parsed()) return cmd_continuity(ccfg, out_dir);
    if (spec->parsed()) return cmd_spectrum(scfg, gen_lo, gen_hi, out_dir);
  } catch (const hstar::IllConditionedGram& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConditioning;
  } catch (const std::range_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitStage;
  }
  return kExitUsage;
}
