#pragma once

#include <complex>
#include <vector>

namespace hstar {

/// Inner function: finite Blaschke product times a unimodular constant,
/// optionally times elementary singular factors exp(-m (tau+z)/(tau-z)).
struct InnerFunction {
  std::vector<std::complex<double>> blaschke_zeros;  // |a| < 1 - 1e-12
  std::complex<double> front{1.0, 0.0};              // |front| = 1
  std::vector<std::pair<std::complex<double>, double>> singular_atoms;  // (tau on T, mass >= 0)
};

InnerFunction make_inner(std::vector<std::complex<double>> zeros,
                         std::complex<double> front = {1.0, 0.0},
                         std::vector<std::pair<std::complex<double>, double>> singular = {});

/// Blaschke/singular evaluation; valid for |z| < 1 and on T away from
/// singular points.
std::complex<double> evaluate_inner(const InnerFunction& inner, std::complex<double> z);

/// Boundary phase speed d/dt arg Theta(e^{it}) = sum_j (1-|a_j|^2)/|e^{it}-a_j|^2,
/// strictly positive; equals |Theta'| on T for Blaschke products.
double boundary_phase_speed(const InnerFunction& inner, double theta);

struct ClarkAtom {
  std::complex<double> tau;  // boundary solution of Theta = alpha
  double mass = 0.0;         // pi / |Theta'(tau)|  (1/pi normalization)
};

struct ClarkMeasure {
  std::complex<double> alpha{1.0, 0.0};
  std::vector<ClarkAtom> atoms;  // sorted by argument
  double total_mass = 0.0;
};

/// Atomic Clark measure of a finite Blaschke product: the d solutions of
/// Theta(e^{it}) = alpha found by monotone phase tracking + bisection.
/// Refuses singular factors (their Clark measures need not be atomic).
ClarkMeasure clark_measure(const InnerFunction& inner, std::complex<double> alpha);

struct HerglotzReport {
  double max_rel_error = 0.0;
  int samples_used = 0;
  int samples_skipped = 0;  // alpha - Theta(z) vanished
  bool passed = false;      // max_rel_error <= 1e-8
};

/// Compares Re((alpha+Theta(z))/(alpha-Theta(z))) with the Poisson sum
/// (1/pi) sum_k w_k (1-|z|^2)/|tau_k - z|^2 at the given samples (|z| <= 0.95).
HerglotzReport verify_herglotz(const InnerFunction& inner, const ClarkMeasure& measure,
                               const std::vector<std::complex<double>>& samples);

struct ClarkFamilyReport {
  std::vector<ClarkMeasure> measures;  // one per distinct alpha
  int degree = 0;
  bool interlacing = false;  // atoms of distinct alphas strictly interlace
  bool alphas_deduplicated = false;
};

ClarkFamilyReport clark_family_spectra(const InnerFunction& inner,
                                       std::vector<std::complex<double>> alphas);

}  // namespace hstar
