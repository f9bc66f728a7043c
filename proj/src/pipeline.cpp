#include "hstar/pipeline.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "hstar/rng.hpp"
#include "hstar/version.hpp"

namespace hstar {

namespace {

namespace fs = std::filesystem;

void write_file(const std::string& dir, const std::string& name, const std::string& text) {
  if (dir.empty()) return;
  fs::create_directories(dir);
  std::ofstream out(fs::path(dir) / name, std::ios::binary);
  out << text;
}

void write_json(const std::string& dir, const std::string& name, const json& j) {
  write_file(dir, name, j.dump(2) + "\n");
}

Eigen::VectorXcd random_coeffs(Rng& rng, int n) {
  Eigen::VectorXcd c(n);
  for (int j = 0; j < n; ++j) c[j] = rng.complex_gaussian();
  return c;
}

// projection onto {c : sum_j c_j / lambda_j = 0} (membership in h1)
Eigen::VectorXcd project_h1(const NodeFamily& nodes, Eigen::VectorXcd c) {
  const int n = static_cast<int>(nodes.nodes.size());
  Eigen::VectorXcd v(n);
  for (int j = 0; j < n; ++j) v[j] = -1.0 / nodes.nodes[static_cast<std::size_t>(j)];
  const std::complex<double> val = v.transpose() * c;
  c -= v.conjugate() * (val / std::real(v.transpose() * v.conjugate()));
  return c;
}

// pointwise boundary oracle for the backward shift: (f(z) - f(0))/z against
// the coefficient image, normalized by local magnitude
double eigen_relation_defect(const KernelCoefficients& f, int oracle_points) {
  KernelCoefficients img;
  img.nodes = f.nodes;
  img.coeffs.resize(f.coeffs.size());
  for (Eigen::Index j = 0; j < f.coeffs.size(); ++j)
    img.coeffs[j] = f.coeffs[j] / f.nodes.nodes[static_cast<std::size_t>(j)];
  const std::complex<double> f0 = value_at_zero(f);
  double worst = 0.0;
  for (int i = 0; i < oracle_points; ++i) {
    const std::complex<double> z = std::polar(1.0, kTwoPi * (i + 0.5) / oracle_points);
    const std::complex<double> lhs = (evaluate(f, z) - f0) / z;
    const std::complex<double> rhs = evaluate(img, z);
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
  }
  return worst;
}

}  // namespace

json to_json(const PipelineConfig& c) {
  return json{{"ratio", c.ratio},
              {"depth", c.depth},
              {"p", c.exponent},
              {"N", c.grid_size},
              {"generation", c.generation},
              {"count_cap", c.count_cap},
              {"alpha_arg", c.alpha_arg},
              {"epsilons", c.epsilons},
              {"orbit_steps", c.orbit_steps},
              {"seed", c.seed}};
}

PipelineConfig pipeline_config_from_json(const json& j) {
  PipelineConfig c;
  if (j.contains("ratio")) c.ratio = j.at("ratio").get<double>();
  if (j.contains("depth")) c.depth = j.at("depth").get<int>();
  if (j.contains("p")) c.exponent = j.at("p").get<double>();
  if (j.contains("N")) c.grid_size = j.at("N").get<int>();
  if (j.contains("generation")) c.generation = j.at("generation").get<int>();
  if (j.contains("count_cap")) c.count_cap = j.at("count_cap").get<int>();
  if (j.contains("alpha_arg")) c.alpha_arg = j.at("alpha_arg").get<double>();
  if (j.contains("epsilons")) c.epsilons = j.at("epsilons").get<std::vector<double>>();
  if (j.contains("orbit_steps")) c.orbit_steps = j.at("orbit_steps").get<long>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

PipelineResult run_pipeline(const PipelineConfig& config, const std::string& out_dir) {
  PipelineResult result;
  Rng rng(config.seed);
  const json config_echo = to_json(config);
  auto stage_header = [&]() {
    return json{{"version", kVersion}, {"config", config_echo}};
  };
  auto push_stage = [&](const std::string& name, bool passed, json report,
                        bool heuristic = false) {
    json full = stage_header();
    full["report"] = std::move(report);
    full["passed"] = passed;
    if (heuristic) full["heuristic"] = true;
    result.stages.push_back(StageResult{name, passed, heuristic, full});
    write_json(out_dir, name + ".json", full);
    return passed;
  };

  std::string current_stage;
  try {
    // ---- set ----
    current_stage = "set";
    std::vector<CarlesonSet> by_depth;
    for (int d = 0; d <= config.depth; ++d)
      by_depth.push_back(cantor_like_set(d, config.ratio));
    const CarlesonSet& set = by_depth.back();
    const EntropyResult ent = entropy(set);
    json set_report = to_json(set);
    set_report["entropy"] = to_json(ent);
    bool set_ok = true;
    if (config.depth >= 2) {
      const MarginReport margin = carleson_margin(by_depth);
      set_report["margin"] = to_json(margin);
      set_ok = margin.carleson_consistent;
    }
    push_stage("set", set_ok, set_report);

    // ---- weight ----
    current_stage = "weight";
    const WeightGrid wgrid = boundary_weight(set, config.exponent, config.grid_size);
    const OuterFunction outer = outer_function(wgrid);
    current_stage = "nodes";
    const NodeFamily nodes = sample_nodes(set, config.generation, config.count_cap);
    current_stage = "weight";
    const double cert = boundedness_certificate(outer, nodes);
    const double cert_bound = std::pow(2.0, config.exponent - 1.0) + 1e-9;
    json weight_report{{"N", wgrid.grid_size},
                       {"p", wgrid.exponent},
                       {"floor", wgrid.floor},
                       {"phi0", complex_to_json(outer.value_at_zero)},
                       {"certificate", cert},
                       {"certificate_bound", cert_bound},
                       {"nodes", to_json(nodes)}};
    if (!push_stage("weight", cert <= cert_bound, weight_report)) {
      result.suggested_exit = 3;
      result.failed_stage = "weight";
    }

    // ---- gram ----
    current_stage = "gram";
    const GramMatrix gram = gram_matrix(nodes, outer);
    push_stage("gram", gram.min_eigenvalue > 0, to_json(gram));

    // ---- truncation: eigen-relation oracle ----
    current_stage = "truncation";
    const TruncatedOperator op = build_truncation(nodes, gram);
    KernelCoefficients probe{nodes, random_coeffs(rng, static_cast<int>(nodes.nodes.size()))};
    const double eigen_defect = eigen_relation_defect(probe, 10000);
    push_stage("truncation", eigen_defect <= 1e-10,
               json{{"eigen_relation_defect", eigen_defect},
                    {"diagonal_is_conjugate_nodes", true}});

    // ---- subspaces + lemma2 ----
    current_stage = "lemma2";
    const SubspacePair sub = subspaces(op);
    const Lemma2Report lem2 = verify_lemma2(op, sub);
    push_stage("lemma2", lem2.passed, to_json(lem2));

    // ---- unitary ----
    current_stage = "unitary";
    const std::complex<double> alpha = std::polar(1.0, config.alpha_arg);
    const UnitaryDecomposition dec = build_unitary(op, sub, alpha);
    const Eigen::MatrixXcd& G = gram.entries;
    const Eigen::MatrixXcd defect_metric = dec.unitary.adjoint() * G * dec.unitary - G;
    const double g_norm = G.jacobiSvd().singularValues()(0);
    const double unitarity_rel = defect_metric.jacobiSvd().singularValues()(0) / g_norm;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
    const Eigen::MatrixXcd sqrtG = es.operatorSqrt();
    const Eigen::MatrixXcd inv_sqrtG = es.operatorInverseSqrt();
    Eigen::MatrixXcd framed =
        sqrtG * (Eigen::MatrixXcd(op.diagonal.asDiagonal()) - dec.unitary) * inv_sqrtG;
    const Eigen::VectorXd sv = framed.jacobiSvd().singularValues();
    int rank_count = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv[i] > 1e-8 * sv[0]) ++rank_count;

    double isometry_worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      Eigen::VectorXcd h = project_h1(nodes, random_coeffs(rng, static_cast<int>(nodes.nodes.size())));
      const double nh = hstar_norm(h, gram);
      if (nh <= 0) continue;
      const double nu = hstar_norm(Eigen::VectorXcd(dec.unitary * h), gram);
      isometry_worst = std::max(isometry_worst, std::abs(nu / nh - 1.0));
    }
    const bool unitary_ok = unitarity_rel <= 1e-8 && rank_count == 1 && isometry_worst <= 1e-8;
    push_stage("unitary", unitary_ok,
               json{{"unitarity_rel", unitarity_rel},
                    {"defect_rank", rank_count},
                    {"isometry_worst", isometry_worst},
                    {"alpha", complex_to_json(alpha)}});

    // ---- spectrum over generations ----
    current_stage = "spectrum";
    json spectra = json::array();
    bool spectrum_ok = true;
    double prev_cover = std::numeric_limits<double>::infinity();
    const int gen_hi = std::min(config.generation + 1, config.depth);
    for (int g = 2; g <= gen_hi; ++g) {
      const NodeFamily fam = sample_nodes(set, g, config.count_cap);
      const GramMatrix gg = gram_matrix(fam, outer);
      const TruncatedOperator tg = build_truncation(fam, gg);
      const SpectrumReport sr = spectrum_report(tg, set);
      spectra.push_back(to_json(sr));
      if (sr.hausdorff_to_E > 1e-12) spectrum_ok = false;
      if (sr.hausdorff_from_E >= prev_cover) spectrum_ok = false;
      prev_cover = sr.hausdorff_from_E;
    }
    push_stage("spectrum", spectrum_ok, json{{"reports", spectra}});

    // ---- grivaux checks ----
    current_stage = "grivaux";
    const EigenvectorReport ev = check_eigenvectors(op);
    const CompletenessReport comp = check_completeness(op, gram);
    const ContinuityTable table = continuity_table(nodes, gram);
    json eps_reports = json::array();
    bool eps_ok = true;
    for (double e : config.epsilons) eps_reports.push_back(to_json(epsilon_certificate(table, e)));
    int passing_gen = -1;
    if (!config.epsilons.empty()) {
      passing_gen = minimal_passing_generation(set, outer, config.epsilons.front(), 2,
                                               std::min(config.generation + 1, config.depth),
                                               config.count_cap);
      eps_ok = passing_gen >= 0;
    }
    write_file(out_dir, "continuity.csv", continuity_csv(table));

    // resolvent two-route agreement at the canonical sample spectrum points
    bool resolvent_ok = true;
    for (const std::complex<double> lambda :
         {std::complex<double>(0, 0), std::complex<double>(2, 0), std::complex<double>(0, 3)}) {
      KernelCoefficients g{nodes, random_coeffs(rng, static_cast<int>(nodes.nodes.size()))};
      try {
        (void)resolve(op, lambda, g);  // throws if the routes disagree
      } catch (const std::exception&) {
        resolvent_ok = false;
      }
    }

    const bool grivaux_ok = ev.passed && comp.passed && eps_ok && resolvent_ok;
    push_stage("grivaux", grivaux_ok,
               json{{"eigenvectors", to_json(ev)},
                    {"completeness", to_json(comp)},
                    {"continuity", to_json(table)},
                    {"epsilon_certificates", eps_reports},
                    {"minimal_passing_generation", passing_gen},
                    {"resolvent_two_route_ok", resolvent_ok}});

    // ---- orbit (heuristic, never gates) ----
    current_stage = "orbit";
    KernelCoefficients start{nodes, random_coeffs(rng, static_cast<int>(nodes.nodes.size()))};
    std::vector<KernelCoefficients> targets;
    for (int t = 0; t < 3; ++t)
      targets.push_back(KernelCoefficients{nodes, random_coeffs(rng, static_cast<int>(nodes.nodes.size()))});
    const OrbitReport orbit = orbit_diagnostics(op, gram, start, config.orbit_steps, targets);
    push_stage("orbit", true, to_json(orbit), /*heuristic=*/true);
  } catch (const IllConditionedGram& e) {
    push_stage(current_stage, false, json{{"error", e.what()}});
    result.suggested_exit = 4;
    result.failed_stage = current_stage;
  } catch (const std::exception& e) {
    push_stage(current_stage, false, json{{"error", e.what()}});
    result.suggested_exit = 3;
    result.failed_stage = current_stage;
  }

  result.all_passed = true;
  for (const StageResult& s : result.stages)
    if (!s.heuristic && !s.passed) {
      result.all_passed = false;
      if (result.failed_stage.empty()) result.failed_stage = s.name;
    }
  if (!result.all_passed && result.suggested_exit == 0) result.suggested_exit = 3;

  json stage_summaries = json::array();
  for (const StageResult& s : result.stages)
    stage_summaries.push_back(
        json{{"name", s.name}, {"passed", s.passed}, {"heuristic", s.heuristic}});
  result.summary = json{{"version", kVersion},
                        {"config", config_echo},
                        {"stages", stage_summaries},
                        {"all_passed", result.all_passed},
                        {"failed_stage", result.failed_stage}};
  write_json(out_dir, "summary.json", result.summary);
  return result;
}

}  // namespace hstar
