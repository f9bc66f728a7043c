#pragma once

#include <complex>
#include <vector>

#include "hstar/carleson.hpp"

namespace hstar {

/// Boundary modulus samples w(theta_k) = max(d(theta_k)^p, floor) on the
/// uniform grid theta_k = 2 pi k / N, d = chordal distance to E.
struct WeightGrid {
  int grid_size = 0;            // N, a power of two
  std::vector<double> modulus;  // w > 0 after clamping
  double exponent = 2.0;        // p
  double floor = 0.0;           // (2 pi / N)^p
};

/// Requires N a power of two in [256, 2^22] and a grid fine enough to
/// resolve the smallest complementary arc (length >= 4/N); otherwise a
/// range error names the necessary N.
WeightGrid boundary_weight(const CarlesonSet& set, double exponent, int grid_size);

/// Outer function with |phi| = w on the boundary:
///   phi(z) = exp( (1/2pi) int (e^{it}+z)/(e^{it}-z) log w(t) dt ).
/// phase is the conjugate function (circular Hilbert transform) of log w,
/// value_at_zero = exp(mean log w) > 0.
struct OuterFunction {
  WeightGrid weight;
  std::vector<double> phase;
  std::complex<double> value_at_zero;
};

OuterFunction outer_function(const WeightGrid& weight);

/// Boundary sample phi(theta_k) = w_k exp(i phase_k).
std::complex<double> boundary_value(const OuterFunction& outer, int k);

/// Herglotz-integral evaluation by trapezoidal quadrature. Relative
/// accuracy degrades like O(1/((1-|z|) N)); requires |z| <= 0.999.
std::complex<double> evaluate_inside(const OuterFunction& outer, std::complex<double> z);

/// Batched variant sharing the grid setup across points.
std::vector<std::complex<double>> evaluate_inside_many(
    const OuterFunction& outer, const std::vector<std::complex<double>>& zs);

/// max over grid points and nodes of w(theta_k)/|e^{i theta_k} - lambda_j|,
/// clamp-floor points excluded (unless everything is clamped). For w = d^p
/// with p >= 2 this is bounded by 2^{p-1}; refuses p < 2.
double boundedness_certificate(const OuterFunction& outer, const NodeFamily& nodes);

/// Spectral conjugate: DFT coefficient n multiplied by -i sign(n)
/// (mean and Nyquist bins zeroed). Applied twice to a zero-mean
/// band-limited sequence it negates it.
std::vector<double> conjugate_function(const std::vector<double>& samples);

}  // namespace hstar
