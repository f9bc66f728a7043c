#pragma once

#include <Eigen/Core>
#include <complex>
#include <stdexcept>
#include <vector>

#include "hstar/carleson.hpp"
#include "hstar/outer.hpp"

namespace hstar {

/// Element f = sum_j c_j / (z - lambda_j) of the kernel span.
struct KernelCoefficients {
  NodeFamily nodes;
  Eigen::VectorXcd coeffs;
};

/// Hermitian positive-definite matrix of weighted Cauchy-kernel inner
/// products, G[j,k] = <k_{lambda_k}, k_{lambda_j}> under the norm
/// ||f phi||_{H^2}, assembled by uniform-grid quadrature.
struct GramMatrix {
  NodeFamily nodes;
  Eigen::MatrixXcd entries;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

/// Raised when the kernel family is numerically degenerate; names the
/// closest node pair.
class IllConditionedGram : public std::runtime_error {
 public:
  IllConditionedGram(int a, int b, double dist, double min_eig, double max_eig);
  int node_a = 0, node_b = 0;
  double pair_distance = 0.0;
  double min_eig = 0.0, max_eig = 0.0;
};

GramMatrix gram_matrix(const NodeFamily& nodes, const OuterFunction& weight);

/// sqrt(c^H G c); rejects quadratic forms below -1e-10 as metric corruption.
double hstar_norm(const KernelCoefficients& f, const GramMatrix& gram);
double hstar_norm(const Eigen::VectorXcd& coeffs, const GramMatrix& gram);

/// f(0) = -sum_j c_j / lambda_j.
std::complex<double> value_at_zero(const KernelCoefficients& f);

/// (zf)_inf = lim_{z->inf} z f(z) = sum_j c_j.
std::complex<double> value_at_infinity(const KernelCoefficients& f);

/// Direct rational evaluation; z must keep chordal distance > 1e-10 from
/// every node.
std::complex<double> evaluate(const KernelCoefficients& f, std::complex<double> z);

struct EvalBoundReport {
  double lhs = 0.0;           // |f(mu)|
  double rhs = 0.0;           // (1/(sqrt(pi) eps delta)) ||f|| (1 + slack)
  double epsilon = 0.0;       // dist(mu, E)/2
  double delta = 0.0;         // min |phi| over the closed region D cap disk(mu, eps)
  double delta_boundary = 0.0;  // grid min of w within chordal eps of mu
  bool passed = false;
  bool inconclusive = false;  // clamped grid points met the neighborhood
};

/// Checks the evaluation-functional bound |f(mu)| <= ||f|| / (sqrt(pi) eps delta)
/// with 5% slack. delta is the minimum of |phi| over D cap disk(mu, eps):
/// log|phi| is harmonic, so the minimum is attained on the boundary arc
/// (grid samples of w) or on the inner circle |z - mu| = eps (Herglotz
/// samples clipped to |z| <= 0.99).
EvalBoundReport evaluation_bound_check(const KernelCoefficients& f,
                                       std::complex<double> mu, const GramMatrix& gram,
                                       const OuterFunction& weight,
                                       const CarlesonSet& set);

}  // namespace hstar
