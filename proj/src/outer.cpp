#include "hstar/outer.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hstar {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

int next_pow2_at_least(double x) {
  int n = 256;
  while (n < x && n < (1 << 30)) n <<= 1;
  return n;
}

}  // namespace

WeightGrid boundary_weight(const CarlesonSet& set, double exponent, int grid_size) {
  if (exponent < 1.0)
    throw std::invalid_argument("boundary_weight: exponent must be >= 1");
  if (!is_pow2(grid_size) || grid_size < 256 || grid_size > (1 << 22))
    throw std::invalid_argument("boundary_weight: grid size must be a power of two in [256, 2^22]");
  double min_len = 1.0;
  for (const Arc& a : set.arcs) min_len = std::min(min_len, a.length);
  if (!set.arcs.empty() && min_len < 4.0 / grid_size) {
    throw std::range_error(
        "boundary_weight: grid too coarse for the smallest complementary arc; need N >= " +
        std::to_string(next_pow2_at_least(4.0 / min_len)));
  }
  WeightGrid w;
  w.grid_size = grid_size;
  w.exponent = exponent;
  w.floor = std::pow(kTwoPi / grid_size, exponent);
  w.modulus = distance_grid(set, grid_size);
  for (double& v : w.modulus) v = std::max(std::pow(v, exponent), w.floor);
  return w;
}

std::vector<double> conjugate_function(const std::vector<double>& samples) {
  const int n = static_cast<int>(samples.size());
  if (n < 2) throw std::invalid_argument("conjugate_function: need at least 2 samples");
  std::vector<std::complex<double>> spec(static_cast<std::size_t>(n) / 2 + 1);
  std::vector<double> in(samples), out(samples.size());
  fftw_plan fwd = fftw_plan_dft_r2c_1d(n, in.data(),
                                       reinterpret_cast<fftw_complex*>(spec.data()),
                                       FFTW_ESTIMATE);
  fftw_execute(fwd);
  fftw_destroy_plan(fwd);
  spec[0] = 0.0;
  for (std::size_t k = 1; k < spec.size(); ++k)
    spec[k] *= std::complex<double>(0.0, -1.0);
  if (n % 2 == 0) spec.back() = 0.0;  // Nyquist
  fftw_plan bwd = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(spec.data()),
                                       out.data(), FFTW_ESTIMATE);
  fftw_execute(bwd);
  fftw_destroy_plan(bwd);
  for (double& v : out) v /= n;
  return out;
}

OuterFunction outer_function(const WeightGrid& weight) {
  const int n = weight.grid_size;
  if (n <= 0 || weight.modulus.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("outer_function: malformed weight grid");
  std::vector<double> logw(weight.modulus.size());
  double mean = 0.0;
  for (std::size_t k = 0; k < logw.size(); ++k) {
    if (!(weight.modulus[k] > 0.0) || !std::isfinite(weight.modulus[k]))
      throw std::runtime_error("outer_function: non-positive weight sample");
    logw[k] = std::log(weight.modulus[k]);
    if (!std::isfinite(logw[k]))
      throw std::runtime_error("outer_function: non-finite log weight sample");
    mean += logw[k];
  }
  mean /= n;
  OuterFunction f;
  f.weight = weight;
  f.phase = conjugate_function(logw);
  f.value_at_zero = std::exp(mean);
  return f;
}

std::complex<double> boundary_value(const OuterFunction& outer, int k) {
  return std::polar(outer.weight.modulus[static_cast<std::size_t>(k)],
                    outer.phase[static_cast<std::size_t>(k)]);
}

std::vector<std::complex<double>> evaluate_inside_many(
    const OuterFunction& outer, const std::vector<std::complex<double>>& zs) {
  for (const auto& z : zs)
    if (std::abs(z) > 0.999)
      throw std::domain_error("evaluate_inside: |z| must be <= 0.999");
  const int n = outer.weight.grid_size;
  std::vector<std::complex<double>> e(static_cast<std::size_t>(n));
  std::vector<double> logw(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    e[static_cast<std::size_t>(k)] = std::polar(1.0, kTwoPi * k / n);
    logw[static_cast<std::size_t>(k)] =
        std::log(outer.weight.modulus[static_cast<std::size_t>(k)]);
  }
  std::vector<std::complex<double>> out;
  out.reserve(zs.size());
  for (const auto& z : zs) {
    std::complex<double> acc = 0.0;
    for (int k = 0; k < n; ++k) {
      const std::size_t i = static_cast<std::size_t>(k);
      acc += (e[i] + z) / (e[i] - z) * logw[i];
    }
    out.push_back(std::exp(acc / static_cast<double>(n)));
  }
  return out;
}

std::complex<double> evaluate_inside(const OuterFunction& outer, std::complex<double> z) {
  return evaluate_inside_many(outer, {z}).front();
}

double boundedness_certificate(const OuterFunction& outer, const NodeFamily& nodes) {
  if (outer.weight.exponent < 2.0)
    throw std::invalid_argument(
        "boundedness_certificate: refused for exponent < 2 (bound not guaranteed)");
  const int n = outer.weight.grid_size;
  const double clamp_edge = outer.weight.floor * (1.0 + 1e-12);
  double sup = 0.0;
  double sup_all = 0.0;  // fallback including clamped points
  bool any_unclamped = false;
  for (int k = 0; k < n; ++k) {
    const double w = outer.weight.modulus[static_cast<std::size_t>(k)];
    const std::complex<double> e = std::polar(1.0, kTwoPi * k / n);
    double min_dist = 2.0;
    for (const auto& lam : nodes.nodes) min_dist = std::min(min_dist, std::abs(e - lam));
    if (min_dist < 1e-13) continue;  // grid point coincides with a node
    const double q = w / min_dist;
    sup_all = std::max(sup_all, q);
    if (w > clamp_edge) {
      any_unclamped = true;
      sup = std::max(sup, q);
    }
  }
  return any_unclamped ? sup : sup_all;
}

}  // namespace hstar
