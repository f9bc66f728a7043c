#pragma once

#include <vector>

#include "hstar/truncation.hpp"

namespace hstar {

struct ContinuityRow {
  int n = 0;                // node index
  int m = 0;                // chordally nearest distinct node
  double chordal_gap = 0.0; // |lambda_n - lambda_m|
  double kernel_gap = 0.0;  // ||k_{lambda_n} - k_{lambda_m}||
};

/// Nearest-partner kernel gaps with a fitted power-law modulus
/// kernel_gap ~ scale * chordal_gap^exponent (log-log least squares).
struct ContinuityTable {
  std::vector<ContinuityRow> rows;  // sorted by chordal_gap descending
  double modulus_exponent = 0.0;
  double modulus_scale = 0.0;
};

ContinuityTable continuity_table(const NodeFamily& nodes, const GramMatrix& gram);

struct EigenvectorReport {
  bool passed = false;
  double max_unimodularity_defect = 0.0;
  double min_eigenvalue_gap = 0.0;  // minimal pairwise chordal gap
  int duplicate_a = -1, duplicate_b = -1;
};

/// Eigenvalues 1/lambda_j must be unimodular (1e-12) and pairwise distinct;
/// the kernel coordinate vectors are eigenvectors by construction.
EigenvectorReport check_eigenvectors(const TruncatedOperator& op);

struct CompletenessReport {
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double condition_number = 0.0;
  bool alarm = false;  // condition number past 1e12
  bool passed = false;
};

/// At finite truncation completeness is nondegeneracy of the kernel family.
CompletenessReport check_completeness(const TruncatedOperator& op, const GramMatrix& gram);

struct EpsilonReport {
  double epsilon = 0.0;
  std::vector<int> passing;
  std::vector<int> failing;
  bool all_pass = false;
};

EpsilonReport epsilon_certificate(const ContinuityTable& table, double epsilon);

/// Smallest generation in [gen_lo, gen_hi] whose full node family passes
/// the epsilon certificate; -1 if none does.
int minimal_passing_generation(const CarlesonSet& set, const OuterFunction& weight,
                               double epsilon, int gen_lo, int gen_hi, int count_cap);

/// Finite-rank orbit statistics. Labeled heuristic: no finite-dimensional
/// operator is hypercyclic, so these numbers are descriptive only and must
/// never gate anything.
struct OrbitReport {
  bool heuristic = true;
  long steps = 0;
  std::vector<double> min_distance;  // per target, min over n <= steps
  std::vector<long> argmin_step;
  double start_return_best = 0.0;  // min over n >= 1 of ||T^n c - c||_G/||c||_G
  long start_return_step = 0;
};

OrbitReport orbit_diagnostics(const TruncatedOperator& op, const GramMatrix& gram,
                              const KernelCoefficients& start, long steps,
                              const std::vector<KernelCoefficients>& targets);

}  // namespace hstar
