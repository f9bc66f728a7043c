#include "hstar/grivaux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hstar {

ContinuityTable continuity_table(const NodeFamily& nodes, const GramMatrix& gram) {
  const int n = static_cast<int>(nodes.nodes.size());
  if (n < 2) throw std::invalid_argument("continuity_table: need at least 2 nodes");
  const Eigen::MatrixXcd& G = gram.entries;
  ContinuityTable table;
  table.rows.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    int best = -1;
    double bestd = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = std::abs(nodes.nodes[static_cast<std::size_t>(i)] -
                                nodes.nodes[static_cast<std::size_t>(j)]);
      if (d < bestd) {
        bestd = d;
        best = j;
      }
    }
    const double gap2 =
        std::real(G(i, i)) - 2.0 * std::real(G(i, best)) + std::real(G(best, best));
    table.rows.push_back(ContinuityRow{i, best, bestd, std::sqrt(std::max(gap2, 0.0))});
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const ContinuityRow& a, const ContinuityRow& b) {
              return a.chordal_gap > b.chordal_gap;
            });
  // log-log least squares for the modulus fit
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (const auto& r : table.rows) {
    if (r.chordal_gap <= 0 || r.kernel_gap <= 0) continue;
    const double x = std::log(r.chordal_gap), y = std::log(r.kernel_gap);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count >= 2 && count * sxx - sx * sx > 0) {
    table.modulus_exponent = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    table.modulus_scale = std::exp((sy - table.modulus_exponent * sx) / count);
  }
  return table;
}

EigenvectorReport check_eigenvectors(const TruncatedOperator& op) {
  EigenvectorReport rep;
  const int n = static_cast<int>(op.diagonal.size());
  for (int j = 0; j < n; ++j)
    rep.max_unimodularity_defect =
        std::max(rep.max_unimodularity_defect, std::abs(std::abs(op.diagonal[j]) - 1.0));
  rep.min_eigenvalue_gap = std::numeric_limits<double>::infinity();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const double d = std::abs(op.diagonal[a] - op.diagonal[b]);
      if (d < rep.min_eigenvalue_gap) {
        rep.min_eigenvalue_gap = d;
        if (d < 1e-12) {
          rep.duplicate_a = a;
          rep.duplicate_b = b;
        }
      }
    }
  if (n == 1) rep.min_eigenvalue_gap = 2.0;
  rep.passed = rep.max_unimodularity_defect <= 1e-12 && rep.duplicate_a < 0;
  return rep;
}

CompletenessReport check_completeness(const TruncatedOperator& op, const GramMatrix& gram) {
  (void)op;
  CompletenessReport rep;
  rep.min_eigenvalue = gram.min_eigenvalue;
  rep.max_eigenvalue = gram.max_eigenvalue;
  rep.condition_number =
      gram.min_eigenvalue > 0 ? gram.max_eigenvalue / gram.min_eigenvalue
                              : std::numeric_limits<double>::infinity();
  rep.alarm = !(rep.condition_number < 1e12);
  rep.passed = gram.min_eigenvalue > 0;
  return rep;
}

EpsilonReport epsilon_certificate(const ContinuityTable& table, double epsilon) {
  if (table.rows.empty()) throw std::invalid_argument("epsilon_certificate: empty table");
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon_certificate: epsilon must be positive");
  EpsilonReport rep;
  rep.epsilon = epsilon;
  for (const auto& r : table.rows)
    (r.kernel_gap < epsilon ? rep.passing : rep.failing).push_back(r.n);
  std::sort(rep.passing.begin(), rep.passing.end());
  std::sort(rep.failing.begin(), rep.failing.end());
  rep.all_pass = rep.failing.empty();
  return rep;
}

int minimal_passing_generation(const CarlesonSet& set, const OuterFunction& weight,
                               double epsilon, int gen_lo, int gen_hi, int count_cap) {
  for (int g = gen_lo; g <= gen_hi; ++g) {
    const NodeFamily fam = sample_nodes(set, g, count_cap);
    const GramMatrix gram = gram_matrix(fam, weight);
    const ContinuityTable table = continuity_table(fam, gram);
    if (epsilon_certificate(table, epsilon).all_pass) return g;
  }
  return -1;
}

OrbitReport orbit_diagnostics(const TruncatedOperator& op, const GramMatrix& gram,
                              const KernelCoefficients& start, long steps,
                              const std::vector<KernelCoefficients>& targets) {
  if (steps < 0 || steps > 1000000)
    throw std::invalid_argument("orbit_diagnostics: steps must lie in [0, 1e6]");
  OrbitReport rep;
  rep.steps = steps;
  rep.min_distance.assign(targets.size(), std::numeric_limits<double>::infinity());
  rep.argmin_step.assign(targets.size(), -1);
  rep.start_return_best = std::numeric_limits<double>::infinity();
  rep.start_return_step = -1;

  const Eigen::MatrixXcd& G = gram.entries;
  const double start_norm = hstar_norm(start, gram);
  Eigen::VectorXcd c = start.coeffs;
  for (long n = 0; n <= steps; ++n) {
    for (std::size_t t = 0; t < targets.size(); ++t) {
      const Eigen::VectorXcd diff = c - targets[t].coeffs;
      const double d = std::sqrt(std::max(std::real(diff.dot(G * diff)), 0.0));
      if (d < rep.min_distance[t]) {
        rep.min_distance[t] = d;
        rep.argmin_step[t] = n;
      }
    }
    if (n >= 1 && start_norm > 0) {
      const Eigen::VectorXcd diff = c - start.coeffs;
      const double d = std::sqrt(std::max(std::real(diff.dot(G * diff)), 0.0)) / start_norm;
      if (d < rep.start_return_best) {
        rep.start_return_best = d;
        rep.start_return_step = n;
      }
    }
    c = op.diagonal.cwiseProduct(c);
  }
  return rep;
}

}  // namespace hstar
