#include "hstar/json_io.hpp"

#include <sstream>

namespace hstar {

json complex_to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::complex<double> complex_from_json(const json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json to_json(const CarlesonSet& set) {
  json arcs = json::array();
  for (const Arc& a : set.arcs) arcs.push_back({{"start", a.start}, {"length", a.length}});
  return json{{"arcs", arcs},
              {"depth", set.depth},
              {"tag", set.tag},
              {"generations", set.generations}};
}

CarlesonSet carleson_set_from_json(const json& j) {
  std::vector<Arc> arcs;
  for (const auto& a : j.at("arcs"))
    arcs.push_back(Arc{a.at("start").get<double>(), a.at("length").get<double>()});
  std::vector<int> gens;
  if (j.contains("generations"))
    gens = j.at("generations").get<std::vector<int>>();
  else
    gens.assign(arcs.size(), 0);
  return make_carleson_set(std::move(arcs), std::move(gens), j.at("depth").get<int>(),
                           j.at("tag").get<std::string>());
}

json to_json(const EntropyResult& r) {
  return json{{"value", r.value}, {"full_measure_warning", r.full_measure_warning}};
}

json to_json(const MarginReport& r) {
  return json{{"partial_sums", r.partial_sums},
              {"increments", r.increments},
              {"increment_ratios", r.increment_ratios},
              {"fitted_ratio", r.fitted_ratio},
              {"carleson_consistent", r.carleson_consistent}};
}

json to_json(const NodeFamily& f) {
  return json{{"angles", f.angles},
              {"generation", f.generation},
              {"spacing", f.spacing}};
}

json to_json(const OuterFunction& f) {
  return json{{"N", f.weight.grid_size},
              {"p", f.weight.exponent},
              {"floor", f.weight.floor},
              {"modulus", f.weight.modulus},
              {"phase", f.phase},
              {"phi0", complex_to_json(f.value_at_zero)}};
}

OuterFunction outer_from_json(const json& j) {
  OuterFunction f;
  f.weight.grid_size = j.at("N").get<int>();
  f.weight.exponent = j.at("p").get<double>();
  f.weight.floor = j.at("floor").get<double>();
  f.weight.modulus = j.at("modulus").get<std::vector<double>>();
  f.phase = j.at("phase").get<std::vector<double>>();
  f.value_at_zero = complex_from_json(j.at("phi0"));
  return f;
}

json to_json(const KernelCoefficients& f) {
  json coeffs = json::array();
  for (Eigen::Index i = 0; i < f.coeffs.size(); ++i)
    coeffs.push_back(complex_to_json(f.coeffs[i]));
  return json{{"nodes", f.nodes.angles}, {"coeffs", coeffs}};
}

json to_json(const GramMatrix& g) {
  json entries = json::array();
  for (Eigen::Index r = 0; r < g.entries.rows(); ++r)
    for (Eigen::Index c = 0; c < g.entries.cols(); ++c)
      entries.push_back(complex_to_json(g.entries(r, c)));
  return json{{"n", g.entries.rows()},
              {"entries", entries},
              {"min_eigenvalue", g.min_eigenvalue},
              {"max_eigenvalue", g.max_eigenvalue},
              {"nodes", g.nodes.angles}};
}

json to_json(const EvalBoundReport& r) {
  return json{{"lhs", r.lhs},
              {"rhs", r.rhs},
              {"epsilon", r.epsilon},
              {"delta", r.delta},
              {"delta_boundary", r.delta_boundary},
              {"passed", r.passed},
              {"inconclusive", r.inconclusive}};
}

json to_json(const Lemma2Report& r) {
  return json{{"max_image_infinity_value", r.max_image_infinity_value},
              {"image_rank", r.image_rank},
              {"h1tilde_rank", r.h1tilde_rank},
              {"max_preimage_residual", r.max_preimage_residual},
              {"passed", r.passed}};
}

json to_json(const SpectrumReport& r) {
  json eigs = json::array();
  for (const auto& ev : r.eigenvalues) eigs.push_back(complex_to_json(ev));
  return json{{"generation", r.generation},
              {"hausdorff_to_E", r.hausdorff_to_E},
              {"hausdorff_from_E", r.hausdorff_from_E},
              {"eigenvalues", eigs}};
}

json to_json(const ContinuityTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"n", r.n},
                    {"m", r.m},
                    {"chordal_gap", r.chordal_gap},
                    {"kernel_gap", r.kernel_gap}});
  return json{{"rows", rows},
              {"modulus_exponent", t.modulus_exponent},
              {"modulus_scale", t.modulus_scale}};
}

std::string continuity_csv(const ContinuityTable& t) {
  std::ostringstream os;
  os << "n,m,chordal_gap,kernel_gap\n";
  os.precision(17);
  for (const auto& r : t.rows)
    os << r.n << ',' << r.m << ',' << r.chordal_gap << ',' << r.kernel_gap << '\n';
  return os.str();
}

json to_json(const EigenvectorReport& r) {
  json out{{"passed", r.passed},
           {"max_unimodularity_defect", r.max_unimodularity_defect},
           {"min_eigenvalue_gap", r.min_eigenvalue_gap}};
  if (r.duplicate_a >= 0) out["duplicate_pair"] = json::array({r.duplicate_a, r.duplicate_b});
  return out;
}

json to_json(const CompletenessReport& r) {
  return json{{"min_eigenvalue", r.min_eigenvalue},
              {"max_eigenvalue", r.max_eigenvalue},
              {"condition_number", r.condition_number},
              {"alarm", r.alarm},
              {"passed", r.passed}};
}

json to_json(const EpsilonReport& r) {
  return json{{"epsilon", r.epsilon},
              {"passing", r.passing},
              {"failing", r.failing},
              {"all_pass", r.all_pass}};
}

json to_json(const OrbitReport& r) {
  return json{{"heuristic", true},
              {"steps", r.steps},
              {"min_distance", r.min_distance},
              {"argmin_step", r.argmin_step},
              {"start_return_best", r.start_return_best},
              {"start_return_step", r.start_return_step}};
}

json to_json(const ClarkMeasure& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms)
    atoms.push_back({{"tau", complex_to_json(a.tau)}, {"mass", a.mass}});
  return json{{"alpha", complex_to_json(m.alpha)},
              {"atoms", atoms},
              {"total_mass", m.total_mass},
              {"normalization", "paper-1-over-pi"}};
}

json to_json(const HerglotzReport& r) {
  return json{{"max_rel_error", r.max_rel_error},
              {"samples_used", r.samples_used},
              {"samples_skipped", r.samples_skipped},
              {"passed", r.passed}};
}

json to_json(const ClarkFamilyReport& r) {
  json measures = json::array();
  for (const auto& m : r.measures) measures.push_back(to_json(m));
  return json{{"measures", measures},
              {"degree", r.degree},
              {"interlacing", r.interlacing},
              {"alphas_deduplicated", r.alphas_deduplicated}};
}

}  // namespace hstar
