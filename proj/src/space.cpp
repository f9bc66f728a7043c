#include "hstar/space.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hstar {

IllConditionedGram::IllConditionedGram(int a, int b, double dist, double mn, double mx)
    : std::runtime_error("gram_matrix: ill-conditioned kernel family, closest nodes " +
                         std::to_string(a) + " and " + std::to_string(b) +
                         " at chordal distance " + std::to_string(dist)),
      node_a(a),
      node_b(b),
      pair_distance(dist),
      min_eig(mn),
      max_eig(mx) {}

GramMatrix gram_matrix(const NodeFamily& nodes, const OuterFunction& weight) {
  const int n = static_cast<int>(nodes.nodes.size());
  if (n == 0) throw std::invalid_argument("gram_matrix: empty node family");
  const int N = weight.weight.grid_size;

  // G = V^H V / N with V[m,j] = w(theta_m) / (e^{i theta_m} - lambda_j),
  // accumulated in row chunks. Terms where a grid point coincides with a
  // node are set to their continuous limit 0 (w^2 ~ d^{2p} dominates the
  // pole for p >= 2).
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(n, n);
  const int chunk = std::min(N, 8192);
  Eigen::MatrixXcd V(chunk, n);
  for (int m0 = 0; m0 < N; m0 += chunk) {
    const int rows = std::min(chunk, N - m0);
    for (int r = 0; r < rows; ++r) {
      const int m = m0 + r;
      const std::complex<double> e = std::polar(1.0, kTwoPi * m / N);
      const double w = weight.weight.modulus[static_cast<std::size_t>(m)];
      for (int j = 0; j < n; ++j) {
        const std::complex<double> dz = e - nodes.nodes[static_cast<std::size_t>(j)];
        V(r, j) = (std::abs(dz) < 1e-13) ? 0.0 : w / dz;
      }
    }
    G.noalias() += V.topRows(rows).adjoint() * V.topRows(rows);
  }
  G /= static_cast<double>(N);
  G = ((G + G.adjoint()) / 2.0).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
  GramMatrix out;
  out.nodes = nodes;
  out.entries = std::move(G);
  out.min_eigenvalue = es.eigenvalues().minCoeff();
  out.max_eigenvalue = es.eigenvalues().maxCoeff();
  const double eps = std::numeric_limits<double>::epsilon();
  if (out.min_eigenvalue <= 10.0 * eps * out.max_eigenvalue) {
    int ia = 0, ib = 1;
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        const double d = std::abs(nodes.nodes[a] - nodes.nodes[b]);
        if (d < best) {
          best = d;
          ia = a;
          ib = b;
        }
      }
    throw IllConditionedGram(ia, ib, best, out.min_eigenvalue, out.max_eigenvalue);
  }
  return out;
}

double hstar_norm(const Eigen::VectorXcd& coeffs, const GramMatrix& gram) {
  if (coeffs.size() != gram.entries.rows())
    throw std::invalid_argument("hstar_norm: coefficient/Gram size mismatch");
  const double q = std::real(coeffs.dot(gram.entries * coeffs));
  if (q < -1e-10) throw std::runtime_error("hstar_norm: negative quadratic form (metric corruption)");
  return std::sqrt(std::max(q, 0.0));
}

double hstar_norm(const KernelCoefficients& f, const GramMatrix& gram) {
  if (f.coeffs.size() != static_cast<Eigen::Index>(f.nodes.nodes.size()))
    throw std::invalid_argument("hstar_norm: coefficient/node size mismatch");
  return hstar_norm(f.coeffs, gram);
}

std::complex<double> value_at_zero(const KernelCoefficients& f) {
  std::complex<double> s = 0.0;
  for (Eigen::Index j = 0; j < f.coeffs.size(); ++j)
    s -= f.coeffs[j] / f.nodes.nodes[static_cast<std::size_t>(j)];
  return s;
}

std::complex<double> value_at_infinity(const KernelCoefficients& f) {
  return f.coeffs.sum();
}

std::complex<double> evaluate(const KernelCoefficients& f, std::complex<double> z) {
  std::complex<double> s = 0.0;
  for (Eigen::Index j = 0; j < f.coeffs.size(); ++j) {
    const std::complex<double> dz = z - f.nodes.nodes[static_cast<std::size_t>(j)];
    if (std::abs(dz) <= 1e-10)
      throw std::domain_error("evaluate: z collides with a kernel pole");
    s += f.coeffs[j] / dz;
  }
  return s;
}

EvalBoundReport evaluation_bound_check(const KernelCoefficients& f,
                                       std::complex<double> mu, const GramMatrix& gram,
                                       const OuterFunction& weight,
                                       const CarlesonSet& set) {
  const double dist = distance_to_set(mu, set);
  if (!(dist > 0.0))
    throw std::invalid_argument("evaluation_bound_check: mu must lie off E");
  EvalBoundReport rep;
  rep.epsilon = dist / 2.0;

  // boundary part: grid samples of w within chordal eps of mu
  const int N = weight.weight.grid_size;
  const double clamp_edge = weight.weight.floor * (1.0 + 1e-12);
  double dT = std::numeric_limits<double>::infinity();
  bool clamped_in_nbhd = false;
  for (int k = 0; k < N; ++k) {
    const std::complex<double> e = std::polar(1.0, kTwoPi * k / N);
    if (std::abs(e - mu) <= rep.epsilon) {
      const double w = weight.weight.modulus[static_cast<std::size_t>(k)];
      dT = std::min(dT, w);
      if (w <= clamp_edge) clamped_in_nbhd = true;
    }
  }
  rep.delta_boundary = dT;

  // inner part: |phi| on the circle |z - mu| = eps inside the disk
  std::vector<std::complex<double>> ring;
  for (int k = 0; k < 128; ++k) {
    const std::complex<double> z = mu + rep.epsilon * std::polar(1.0, kTwoPi * k / 128);
    if (std::abs(z) <= 0.99) ring.push_back(z);
  }
  double dI = std::numeric_limits<double>::infinity();
  if (!ring.empty())
    for (const auto& v : evaluate_inside_many(weight, ring)) dI = std::min(dI, std::abs(v));

  rep.delta = std::min(dT, dI);
  rep.inconclusive = clamped_in_nbhd || !std::isfinite(rep.delta);
  rep.lhs = std::abs(evaluate(f, mu));
  const double slack = 0.05;
  rep.rhs = (1.0 / (std::sqrt(kTwoPi / 2.0) * rep.epsilon * rep.delta)) *
            hstar_norm(f, gram) * (1.0 + slack);
  rep.passed = rep.inconclusive || rep.lhs <= rep.rhs;
  return rep;
}

}  // namespace hstar
