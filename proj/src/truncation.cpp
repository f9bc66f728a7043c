#include "hstar/truncation.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace hstar {

namespace {

// Orthonormal basis of {c : v^T c = 0} via a Householder frame whose first
// column is parallel to conj(v).
Eigen::MatrixXcd functional_null_space(const Eigen::VectorXcd& v) {
  const Eigen::Index n = v.size();
  Eigen::MatrixXcd u = v.conjugate();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(u);
  Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  return Q.rightCols(n - 1);
}

int numerical_rank(const Eigen::MatrixXcd& m, double tol_rel) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > tol_rel * sv[0]) ++r;
  return r;
}

}  // namespace

TruncatedOperator build_truncation(const NodeFamily& nodes, GramMatrix gram) {
  const Eigen::Index n = static_cast<Eigen::Index>(nodes.nodes.size());
  if (gram.entries.rows() != n || gram.nodes.nodes.size() != nodes.nodes.size())
    throw std::invalid_argument("build_truncation: node/Gram mismatch");
  for (Eigen::Index j = 0; j < n; ++j)
    if (std::abs(gram.nodes.nodes[static_cast<std::size_t>(j)] -
                 nodes.nodes[static_cast<std::size_t>(j)]) > 1e-12)
      throw std::invalid_argument("build_truncation: Gram built over different nodes");
  TruncatedOperator op;
  op.nodes = nodes;
  op.gram = std::move(gram);
  op.diagonal.resize(n);
  for (Eigen::Index j = 0; j < n; ++j)
    op.diagonal[j] = 1.0 / nodes.nodes[static_cast<std::size_t>(j)];
  return op;
}

Eigen::VectorXcd apply(const TruncatedOperator& op, const Eigen::VectorXcd& coeffs) {
  if (coeffs.size() != op.diagonal.size())
    throw std::invalid_argument("apply: coefficient size mismatch");
  return op.diagonal.cwiseProduct(coeffs);
}

SubspacePair subspaces(const TruncatedOperator& op) {
  const Eigen::Index n = op.diagonal.size();
  if (n < 2) throw std::invalid_argument("subspaces: need at least 2 nodes");
  Eigen::VectorXcd v_zero(n);  // f(0) = sum_j (-1/lambda_j) c_j
  for (Eigen::Index j = 0; j < n; ++j)
    v_zero[j] = -1.0 / op.nodes.nodes[static_cast<std::size_t>(j)];
  SubspacePair sub;
  sub.h1_basis = functional_null_space(v_zero);
  sub.h1tilde_basis = functional_null_space(Eigen::VectorXcd::Ones(n));
  return sub;
}

Lemma2Report verify_lemma2(const TruncatedOperator& op, const SubspacePair& sub) {
  Lemma2Report rep;
  const Eigen::Index n = op.diagonal.size();
  Eigen::MatrixXcd image = op.diagonal.asDiagonal() * sub.h1_basis;
  rep.max_image_infinity_value = image.colwise().sum().cwiseAbs().maxCoeff();
  rep.image_rank = numerical_rank(image, 1e-10);
  rep.h1tilde_rank = numerical_rank(sub.h1tilde_basis, 1e-10);

  // inverse direction: for f in h1tilde with coefficients c, the vector
  // g = (lambda_j c_j) lies in h1 and T g = f.
  double worst = 0.0;
  for (Eigen::Index k = 0; k < sub.h1tilde_basis.cols(); ++k) {
    Eigen::VectorXcd f = sub.h1tilde_basis.col(k);
    Eigen::VectorXcd g(n);
    for (Eigen::Index j = 0; j < n; ++j)
      g[j] = op.nodes.nodes[static_cast<std::size_t>(j)] * f[j];
    std::complex<double> g0 = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
      g0 -= g[j] / op.nodes.nodes[static_cast<std::size_t>(j)];
    worst = std::max(worst, std::abs(g0));  // g(0) = 0
    worst = std::max(worst, (apply(op, g) - f).cwiseAbs().maxCoeff());
  }
  rep.max_preimage_residual = worst;

  rep.passed = rep.max_image_infinity_value <= 1e-10 &&
               rep.image_rank == static_cast<int>(n) - 1 &&
               rep.h1tilde_rank == static_cast<int>(n) - 1 &&
               rep.max_preimage_residual <= 1e-10;
  return rep;
}

UnitaryDecomposition build_unitary(const TruncatedOperator& op, const SubspacePair& sub,
                                   std::complex<double> alpha) {
  if (std::abs(std::abs(alpha) - 1.0) > 1e-12)
    throw std::invalid_argument("build_unitary: alpha must be unimodular");
  const Eigen::Index n = op.diagonal.size();
  const Eigen::MatrixXcd& G = op.gram.entries;

  // generator g = -lambda_1 e_1, so g(0) = 1
  Eigen::VectorXcd gen = Eigen::VectorXcd::Zero(n);
  gen[0] = -op.nodes.nodes[0];

  // G-orthogonal complement of h1 = null(v^T): direction x = G^{-1} conj(v)
  Eigen::VectorXcd v_zero(n);
  for (Eigen::Index j = 0; j < n; ++j)
    v_zero[j] = -1.0 / op.nodes.nodes[static_cast<std::size_t>(j)];
  Eigen::LDLT<Eigen::MatrixXcd> solver(G);
  Eigen::VectorXcd x = solver.solve(v_zero.conjugate());

  // G-projection of the generator onto span{x}
  const std::complex<double> coef = x.dot(G * gen) / x.dot(G * x);
  Eigen::VectorXcd gprime = coef * x;
  const double gprime_norm = std::sqrt(std::real(gprime.dot(G * gprime)));

  // G-orthogonal complement of h1tilde = T(h1): direction w = G^{-1} ones
  Eigen::VectorXcd w = solver.solve(Eigen::VectorXcd::Ones(n));
  const double w_norm = std::sqrt(std::real(w.dot(G * w)));
  if (!(gprime_norm > 0.0) || !(w_norm > 0.0) || !std::isfinite(gprime_norm) ||
      !std::isfinite(w_norm))
    throw std::runtime_error("build_unitary: one-dimensional complement numerically degenerate");

  // U on [h1 | g']: columns map to [T h1 | alpha (||g'||/||w||) w]
  Eigen::MatrixXcd M(n, n), P(n, n);
  M.leftCols(n - 1) = sub.h1_basis;
  M.col(n - 1) = gprime;
  P.leftCols(n - 1) = op.diagonal.asDiagonal() * sub.h1_basis;
  P.col(n - 1) = alpha * (gprime_norm / w_norm) * w;

  UnitaryDecomposition dec;
  dec.unitary = M.transpose().fullPivLu().solve(P.transpose()).transpose();
  dec.phase = alpha;
  dec.generator = gen;
  // R = T - U annihilates h1, so R c = u <c, v>_G with v = g'/||g'||_G^2
  dec.rank_one_v = gprime / (gprime_norm * gprime_norm);
  dec.rank_one_u = apply(op, gprime) - dec.unitary * gprime;
  return dec;
}

KernelCoefficients resolve(const TruncatedOperator& op, std::complex<double> lambda,
                           const KernelCoefficients& g) {
  const Eigen::Index n = op.diagonal.size();
  if (g.coeffs.size() != n) throw std::invalid_argument("resolve: size mismatch");
  for (Eigen::Index j = 0; j < n; ++j)
    if (std::abs(op.diagonal[j] - lambda) <= 1e-8)
      throw std::runtime_error("resolve: lambda within margin of the point spectrum");

  KernelCoefficients f;
  f.nodes = op.nodes;
  f.coeffs.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) f.coeffs[j] = g.coeffs[j] / (op.diagonal[j] - lambda);

  // function-space route: f = (zg - c)/(1 - lambda z) with c = mu g(mu),
  // mu = 1/lambda; for lambda = 0 the constant is (zg)_inf.
  std::complex<double> c;
  if (std::abs(lambda) < 1e-14) {
    c = value_at_infinity(g);
  } else {
    const std::complex<double> mu = 1.0 / lambda;
    c = mu * evaluate(g, mu);
  }
  int checked = 0;
  for (int k = 0; checked < 100 && k < 400; ++k) {
    const double radius = (k % 2 == 0) ? 0.61 : 0.37;
    const std::complex<double> z = std::polar(radius, kTwoPi * k / 173.0);
    const std::complex<double> denom = 1.0 - lambda * z;
    if (std::abs(denom) < 1e-3) continue;
    bool near_pole = false;
    for (const auto& lam : op.nodes.nodes)
      if (std::abs(z - lam) < 1e-3) near_pole = true;
    if (near_pole) continue;
    const std::complex<double> route_fn = (z * evaluate(g, z) - c) / denom;
    const std::complex<double> route_coeff = evaluate(f, z);
    if (std::abs(route_fn - route_coeff) > 1e-8 * (1.0 + std::abs(route_coeff)))
      throw std::runtime_error("resolve: coefficient and function-space routes disagree");
    ++checked;
  }
  return f;
}

SpectrumReport spectrum_report(const TruncatedOperator& op, const CarlesonSet& set) {
  SpectrumReport rep;
  rep.generation = op.nodes.generation;
  rep.eigenvalues.reserve(static_cast<std::size_t>(op.diagonal.size()));
  std::vector<std::complex<double>> conj_eigs;
  for (Eigen::Index j = 0; j < op.diagonal.size(); ++j) {
    rep.eigenvalues.push_back(op.diagonal[j]);
    conj_eigs.push_back(std::conj(op.diagonal[j]));
  }
  double to_e = 0.0;
  for (const auto& ev : rep.eigenvalues)
    to_e = std::max(to_e, distance_to_set(std::conj(ev), set));
  rep.hausdorff_to_E = to_e;
  rep.hausdorff_from_E = covering_distance(set, conj_eigs);
  return rep;
}

}  // namespace hstar
