#pragma once

#include <Eigen/Core>
#include <complex>

#include "hstar/space.hpp"

namespace hstar {

/// Backward shift restricted to the kernel span. In kernel coordinates the
/// action is diagonal: c_j -> c_j / lambda_j.
struct TruncatedOperator {
  NodeFamily nodes;
  GramMatrix gram;
  Eigen::VectorXcd diagonal;  // 1/lambda_j = conj(lambda_j)
};

TruncatedOperator build_truncation(const NodeFamily& nodes, GramMatrix gram);

/// Coefficientwise diagonal action.
Eigen::VectorXcd apply(const TruncatedOperator& op, const Eigen::VectorXcd& coeffs);

/// Orthonormal bases (standard inner product) of the two codimension-one
/// subspaces: h1 = {f(0) = 0}, h1tilde = {(zf)_inf = 0}.
struct SubspacePair {
  Eigen::MatrixXcd h1_basis;       // n x (n-1)
  Eigen::MatrixXcd h1tilde_basis;  // n x (n-1)
};

SubspacePair subspaces(const TruncatedOperator& op);

struct Lemma2Report {
  double max_image_infinity_value = 0.0;  // max |(z T h)_inf| over h1 basis
  int image_rank = 0;
  int h1tilde_rank = 0;
  double max_preimage_residual = 0.0;  // inverse direction: T g = f check
  bool passed = false;
};

/// Finitary form of the subspace identity T(h1) = h1tilde: inclusion via
/// the vanishing functional plus rank equality.
Lemma2Report verify_lemma2(const TruncatedOperator& op, const SubspacePair& sub);

/// S* = U + R on the truncation: U is G-unitary, agrees with the diagonal
/// action on h1, and maps the generator's G-orthogonal direction onto the
/// G-orthogonal complement of T(h1) with free unimodular phase alpha.
/// R c = u <c, v>_G is the rank-one defect.
struct UnitaryDecomposition {
  Eigen::MatrixXcd unitary;
  Eigen::VectorXcd rank_one_u;
  Eigen::VectorXcd rank_one_v;
  std::complex<double> phase{1.0, 0.0};
  Eigen::VectorXcd generator;  // g with g(0) = 1 spanning h2
};

UnitaryDecomposition build_unitary(const TruncatedOperator& op, const SubspacePair& sub,
                                   std::complex<double> alpha);

/// Solves (T - lambda) f = g coefficientwise, then cross-checks the
/// function-space route f = (zg - c)/(1 - lambda z), c = mu g(mu) with
/// mu = 1/lambda, on sample points (relative 1e-8).
KernelCoefficients resolve(const TruncatedOperator& op, std::complex<double> lambda,
                           const KernelCoefficients& g);

struct SpectrumReport {
  int generation = 0;
  std::vector<std::complex<double>> eigenvalues;  // conj(lambda_j)
  double hausdorff_to_E = 0.0;    // max over eigenvalues of dist to conj(E)
  double hausdorff_from_E = 0.0;  // sup over conj(E) of dist to eigenvalues
};

SpectrumReport spectrum_report(const TruncatedOperator& op, const CarlesonSet& set);

}  // namespace hstar
