#include "hstar/clark.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hstar/carleson.hpp"  // kTwoPi, chord

namespace hstar {

namespace {

std::complex<double> blaschke_factor(std::complex<double> a, std::complex<double> z) {
  if (std::abs(a) < 1e-300) return z;
  return (std::conj(a) / std::abs(a)) * (a - z) / (1.0 - std::conj(a) * z);
}

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

}  // namespace

InnerFunction make_inner(std::vector<std::complex<double>> zeros, std::complex<double> front,
                         std::vector<std::pair<std::complex<double>, double>> singular) {
  for (const auto& a : zeros)
    if (!(std::abs(a) < 1.0 - 1e-12))
      throw std::invalid_argument("make_inner: Blaschke zero not strictly inside the disk");
  if (std::abs(std::abs(front) - 1.0) > 1e-12)
    throw std::invalid_argument("make_inner: front constant must be unimodular");
  for (auto& [tau, mass] : singular) {
    if (std::abs(std::abs(tau) - 1.0) > 1e-12)
      throw std::invalid_argument("make_inner: singular point must lie on the circle");
    if (mass < 0) throw std::invalid_argument("make_inner: singular mass must be >= 0");
    tau /= std::abs(tau);
  }
  InnerFunction f;
  f.blaschke_zeros = std::move(zeros);
  f.front = front / std::abs(front);
  f.singular_atoms = std::move(singular);
  return f;
}

std::complex<double> evaluate_inner(const InnerFunction& inner, std::complex<double> z) {
  for (const auto& [tau, mass] : inner.singular_atoms)
    if (mass > 0 && std::abs(z - tau) < 1e-8)
      throw std::domain_error("evaluate_inner: z at a singular point");
  std::complex<double> v = inner.front;
  for (const auto& a : inner.blaschke_zeros) v *= blaschke_factor(a, z);
  for (const auto& [tau, mass] : inner.singular_atoms)
    if (mass > 0) v *= std::exp(-mass * (tau + z) / (tau - z));
  return v;
}

double boundary_phase_speed(const InnerFunction& inner, double theta) {
  const std::complex<double> z = std::polar(1.0, theta);
  double s = 0.0;
  for (const auto& a : inner.blaschke_zeros)
    s += (1.0 - std::norm(a)) / std::norm(z - a);
  return s;
}

ClarkMeasure clark_measure(const InnerFunction& inner, std::complex<double> alpha) {
  if (!inner.singular_atoms.empty()) {
    for (const auto& [tau, mass] : inner.singular_atoms)
      if (mass > 0)
        throw std::invalid_argument(
            "clark_measure: singular inner factors unsupported (measure need not be atomic)");
  }
  const int degree = static_cast<int>(inner.blaschke_zeros.size());
  if (degree < 1) throw std::invalid_argument("clark_measure: need a Blaschke product of degree >= 1");
  if (std::abs(std::abs(alpha) - 1.0) > 1e-12)
    throw std::invalid_argument("clark_measure: alpha must be unimodular");
  alpha /= std::abs(alpha);

  // Grid fine enough that each cell's phase increment stays below pi/4;
  // the boundary phase is strictly increasing with total increment 2 pi d.
  double max_speed = 0.0;
  for (const auto& a : inner.blaschke_zeros)
    max_speed += (1.0 + std::abs(a)) / (1.0 - std::abs(a));
  int grid = 1024;
  while (grid < 8.0 * max_speed && grid < (1 << 26)) grid <<= 1;

  const std::complex<double> alpha_conj = std::conj(alpha);
  auto rel = [&](double t) { return evaluate_inner(inner, std::polar(1.0, t)) * alpha_conj; };

  const double h = kTwoPi / grid;
  std::vector<double> cum(static_cast<std::size_t>(grid) + 1, 0.0);
  std::complex<double> prev = rel(0.0);
  const double phi0 = std::arg(prev);
  for (int i = 1; i <= grid; ++i) {
    const std::complex<double> cur = rel(i * h);
    const double inc = std::arg(cur / prev);  // principal value = true increment
    if (!(inc > -1e-9))
      throw std::runtime_error("clark_measure: boundary phase not increasing (root tracking failed)");
    cum[static_cast<std::size_t>(i)] = cum[static_cast<std::size_t>(i - 1)] + std::max(inc, 0.0);
    prev = cur;
  }
  const double total = cum.back();
  if (std::abs(total - kTwoPi * degree) > 1e-6)
    throw std::runtime_error("clark_measure: phase increment does not match the degree");

  // crossing levels: phi0 + Psi = 0 (mod 2 pi), Psi in [0, 2 pi d)
  std::vector<double> roots;
  for (int m = 0; m <= degree; ++m) {
    const double level = -phi0 + kTwoPi * m;
    if (level < -1e-12 || level >= total - 1e-12) continue;
    if (level <= 1e-12) {
      roots.push_back(0.0);  // root exactly at t = 0
      continue;
    }
    auto it = std::upper_bound(cum.begin(), cum.end(), level);
    std::size_t cell = static_cast<std::size_t>(it - cum.begin()) - 1;
    double lo = cell * h, hi = (cell + 1) * h;
    const std::complex<double> base = rel(lo);
    const double base_cum = cum[cell];
    for (int iter = 0; iter < 80 && hi - lo > 1e-15; ++iter) {
      const double mid = 0.5 * (lo + hi);
      const double val = base_cum + std::arg(rel(mid) / base);
      (val < level ? lo : hi) = mid;
    }
    roots.push_back(0.5 * (lo + hi));
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) { return chord(b - a) < 1e-12; }),
              roots.end());
  if (roots.size() >= 2 && chord(roots.front() + kTwoPi - roots.back()) < 1e-12)
    roots.pop_back();
  if (static_cast<int>(roots.size()) != degree)
    throw std::runtime_error("clark_measure: crossing count does not match the degree");

  ClarkMeasure mu;
  mu.alpha = alpha;
  for (double t : roots) {
    ClarkAtom atom;
    atom.tau = std::polar(1.0, t);
    const double speed = boundary_phase_speed(inner, t);
    if (!(speed > 0)) throw std::runtime_error("clark_measure: vanishing boundary derivative");
    atom.mass = (kTwoPi / 2.0) / speed;  // pi / |Theta'(tau)|
    mu.atoms.push_back(atom);
    mu.total_mass += atom.mass;
  }
  return mu;
}

HerglotzReport verify_herglotz(const InnerFunction& inner, const ClarkMeasure& measure,
                               const std::vector<std::complex<double>>& samples) {
  HerglotzReport rep;
  const double pi = kTwoPi / 2.0;
  for (const auto& z : samples) {
    if (std::abs(z) > 0.95)
      throw std::invalid_argument("verify_herglotz: samples must satisfy |z| <= 0.95");
    const std::complex<double> th = evaluate_inner(inner, z);
    if (std::abs(measure.alpha - th) < 1e-12) {
      ++rep.samples_skipped;
      continue;
    }
    const double lhs = std::real((measure.alpha + th) / (measure.alpha - th));
    double rhs = 0.0;
    for (const auto& atom : measure.atoms)
      rhs += atom.mass * (1.0 - std::norm(z)) / std::norm(atom.tau - z);
    rhs /= pi;
    rep.max_rel_error = std::max(rep.max_rel_error, std::abs(lhs - rhs) / std::abs(lhs));
    ++rep.samples_used;
  }
  rep.passed = rep.samples_used > 0 && rep.max_rel_error <= 1e-8;
  return rep;
}

ClarkFamilyReport clark_family_spectra(const InnerFunction& inner,
                                       std::vector<std::complex<double>> alphas) {
  ClarkFamilyReport rep;
  std::vector<std::complex<double>> kept;
  for (const auto& a : alphas) {
    bool dup = false;
    for (const auto& b : kept)
      if (std::abs(a - b) < 1e-12) dup = true;
    if (dup)
      rep.alphas_deduplicated = true;
    else
      kept.push_back(a);
  }
  rep.degree = static_cast<int>(inner.blaschke_zeros.size());
  for (const auto& a : kept) rep.measures.push_back(clark_measure(inner, a));

  // strict interlacing: each angular gap between consecutive atoms of one
  // measure contains exactly one atom of each other measure
  rep.interlacing = true;
  for (std::size_t i = 0; i < rep.measures.size() && rep.interlacing; ++i) {
    std::vector<double> u;
    for (const auto& atom : rep.measures[i].atoms) u.push_back(wrap_angle(std::arg(atom.tau)));
    std::sort(u.begin(), u.end());
    if (u.size() < 2) continue;  // degree 1: trivially interlaced
    for (std::size_t j = 0; j < rep.measures.size() && rep.interlacing; ++j) {
      if (i == j) continue;
      for (std::size_t k = 0; k < u.size(); ++k) {
        const double lo = u[k];
        const double hi = (k + 1 < u.size()) ? u[k + 1] : u[0] + kTwoPi;
        int inside = 0;
        for (const auto& atom : rep.measures[j].atoms) {
          double t = wrap_angle(std::arg(atom.tau));
          if (t <= lo) t += kTwoPi;
          if (t > lo && t < hi) ++inside;
        }
        if (inside != 1) {
          rep.interlacing = false;
          break;
        }
      }
    }
  }
  return rep;
}

}  // namespace hstar
