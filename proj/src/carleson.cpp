#include "hstar/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hstar {

namespace {

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

// Practical cap on materialized complementary arcs (~84 MB at the limit).
constexpr std::size_t kMaxArcs = std::size_t{1} << 22;
constexpr double kMinArcLength = 1e-15;  // normalized

}  // namespace

double chord(double angle) { return 2.0 * std::abs(std::sin(0.5 * angle)); }

double angular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return d > kTwoPi / 2 ? kTwoPi - d : d;
}

double CarlesonSet::complement_measure() const {
  double s = 0.0;
  for (const Arc& a : arcs) s += a.length;
  return s;
}

CarlesonSet make_carleson_set(std::vector<Arc> arcs, std::vector<int> generations,
                              int depth, std::string tag) {
  if (generations.size() != arcs.size())
    throw std::invalid_argument("make_carleson_set: generations/arcs size mismatch");
  for (const Arc& a : arcs) {
    if (!(a.length > 0.0) || a.length > 1.0 + 1e-12)
      throw std::invalid_argument("make_carleson_set: arc length outside (0, 1]");
    if (!std::isfinite(a.start)) throw std::invalid_argument("make_carleson_set: bad start");
  }
  std::vector<std::size_t> order(arcs.size());
  std::iota(order.begin(), order.end(), 0);
  for (auto& a : arcs) a.start = wrap_angle(a.start);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return arcs[i].start < arcs[j].start; });
  std::vector<Arc> sorted;
  std::vector<int> gens;
  sorted.reserve(arcs.size());
  gens.reserve(arcs.size());
  for (std::size_t i : order) {
    sorted.push_back(arcs[i]);
    gens.push_back(generations[i]);
  }
  double total = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    total += sorted[i].length;
    if (sorted.size() > 1) {
      const Arc& cur = sorted[i];
      const Arc& nxt = sorted[(i + 1) % sorted.size()];
      double end = cur.start + cur.length * kTwoPi;
      double gap = (i + 1 < sorted.size()) ? nxt.start - end : nxt.start + kTwoPi - end;
      if (gap < -1e-13)
        throw std::invalid_argument("make_carleson_set: complementary arcs overlap");
    }
  }
  if (total > 1.0 + 1e-12)
    throw std::invalid_argument("make_carleson_set: arc lengths sum past full measure");
  CarlesonSet s;
  s.arcs = std::move(sorted);
  s.generations = std::move(gens);
  s.depth = depth;
  s.tag = std::move(tag);
  return s;
}

CarlesonSet cantor_like_set(int depth, double ratio, Arc base) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw std::range_error("cantor_like_set: removal ratio must lie in (0, 1)");
  if (depth < 0 || depth > 30)
    throw std::range_error("cantor_like_set: depth must lie in [0, 30]");
  if (!(base.length > 0.0) || base.length > 1.0)
    throw std::range_error("cantor_like_set: base length must lie in (0, 1]");
  if (depth >= 1) {
    const double shrink = (1.0 - ratio) / 2.0;
    const double smallest_surviving = base.length * std::pow(shrink, depth);
    const double smallest_removed = base.length * ratio * std::pow(shrink, depth - 1);
    if (smallest_surviving < kMinArcLength || smallest_removed < kMinArcLength)
      throw std::range_error(
          "cantor_like_set: depth too large, arc lengths fall below 1e-15");
    if ((std::size_t{1} << depth) > kMaxArcs)
      throw std::range_error("cantor_like_set: depth too large to materialize arcs (cap 2^22)");
  }

  // Work in normalized units; surviving arcs as (start, length) pairs.
  std::vector<Arc> removed;
  std::vector<int> gens;
  const double base_start = base.start / kTwoPi;
  if (base.length < 1.0 - 1e-15) {
    removed.push_back(Arc{base_start + base.length, 1.0 - base.length});
    gens.push_back(0);
  }
  std::vector<std::pair<double, double>> surviving{{base_start, base.length}};
  for (int g = 0; g < depth; ++g) {
    std::vector<std::pair<double, double>> next;
    next.reserve(2 * surviving.size());
    for (const auto& [s, len] : surviving) {
      const double keep = (1.0 - ratio) / 2.0 * len;
      removed.push_back(Arc{s + keep, ratio * len});
      gens.push_back(g);
      next.emplace_back(s, keep);
      next.emplace_back(s + keep + ratio * len, keep);
    }
    surviving = std::move(next);
  }
  for (Arc& a : removed) a.start = wrap_angle(a.start * kTwoPi);
  std::string tag = "cantor(ratio=" + std::to_string(ratio) +
                    ",depth=" + std::to_string(depth) + ")";
  return make_carleson_set(std::move(removed), std::move(gens), depth, std::move(tag));
}

EntropyResult entropy(const CarlesonSet& set) {
  if (set.arcs.empty()) return EntropyResult{0.0, true};
  double sum = 0.0;
  for (const Arc& a : set.arcs) sum += a.length * std::log(1.0 / a.length);
  return EntropyResult{sum, false};
}

MarginReport carleson_margin(const std::vector<CarlesonSet>& sets_by_depth) {
  if (sets_by_depth.size() < 3)
    throw std::invalid_argument("carleson_margin: need at least 3 depths");
  MarginReport rep;
  for (const CarlesonSet& s : sets_by_depth) rep.partial_sums.push_back(entropy(s).value);
  for (std::size_t j = 0; j + 1 < rep.partial_sums.size(); ++j)
    rep.increments.push_back(rep.partial_sums[j + 1] - rep.partial_sums[j]);
  for (std::size_t j = 0; j + 1 < rep.increments.size(); ++j) {
    if (rep.increments[j] > 1e-300)
      rep.increment_ratios.push_back(rep.increments[j + 1] / rep.increments[j]);
  }
  // LS slope of log-increments over the tail half of the depth range.
  std::vector<std::pair<double, double>> pts;
  for (std::size_t j = rep.increments.size() / 2; j < rep.increments.size(); ++j)
    if (rep.increments[j] > 1e-300)
      pts.emplace_back(static_cast<double>(j), std::log(rep.increments[j]));
  bool all_nonneg = std::all_of(rep.increments.begin(), rep.increments.end(),
                                [](double x) { return x >= -1e-15; });
  if (pts.size() < 2) {
    rep.fitted_ratio = 0.0;  // constant entropy: nothing left to decay
    rep.carleson_consistent = all_nonneg;
    return rep;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pts.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  rep.fitted_ratio = std::exp(slope);
  rep.carleson_consistent = all_nonneg && rep.fitted_ratio <= 0.9;
  return rep;
}

double distance_to_set_angle(double theta, const CarlesonSet& set) {
  if (set.arcs.empty()) return 0.0;
  const double t = wrap_angle(theta);
  auto distance_if_inside = [&](const Arc& a) -> double {
    double rel = t - a.start;
    if (rel < 0) rel += kTwoPi;
    const double extent = a.length * kTwoPi;
    if (rel > 0.0 && rel < extent) return std::min(chord(rel), chord(extent - rel));
    return -1.0;
  };
  // Arcs are sorted by start and pairwise disjoint, so only the
  // predecessor arc or the wrapping last arc can contain t.
  auto it = std::upper_bound(set.arcs.begin(), set.arcs.end(), t,
                             [](double v, const Arc& a) { return v < a.start; });
  if (it != set.arcs.begin()) {
    double d = distance_if_inside(*(it - 1));
    if (d >= 0) return d;
  }
  double d = distance_if_inside(set.arcs.back());
  return d >= 0 ? d : 0.0;
}

double distance_to_set(std::complex<double> z, const CarlesonSet& set) {
  if (std::abs(std::abs(z) - 1.0) > 1e-12)
    throw std::invalid_argument("distance_to_set: point not on the unit circle");
  return distance_to_set_angle(std::arg(z), set);
}

std::vector<double> distance_grid(const CarlesonSet& set, int grid_size) {
  if (grid_size <= 0) throw std::invalid_argument("distance_grid: grid_size must be positive");
  std::vector<double> d(static_cast<std::size_t>(grid_size), 0.0);
  const double h = kTwoPi / grid_size;
  for (const Arc& a : set.arcs) {
    const double extent = a.length * kTwoPi;
    // strictly interior grid points; arc may wrap past 2 pi
    long k0 = static_cast<long>(std::floor(a.start / h)) + 1;
    long k1 = static_cast<long>(std::ceil((a.start + extent) / h)) - 1;
    for (long k = k0; k <= k1; ++k) {
      const double theta = k * h;
      const double rel = theta - a.start;
      if (rel <= 0.0 || rel >= extent) continue;
      std::size_t idx = static_cast<std::size_t>(((k % grid_size) + grid_size) % grid_size);
      d[idx] = std::min(chord(rel), chord(extent - rel));
    }
  }
  return d;
}

std::vector<std::pair<double, double>> set_intervals(const CarlesonSet& set) {
  std::vector<std::pair<double, double>> out;
  if (set.arcs.empty()) {
    out.emplace_back(0.0, kTwoPi);
    return out;
  }
  const std::size_t n = set.arcs.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Arc& cur = set.arcs[i];
    const Arc& nxt = set.arcs[(i + 1) % n];
    const double end = cur.start + cur.length * kTwoPi;
    double gap = (i + 1 < n) ? nxt.start - end : nxt.start + kTwoPi - end;
    if (gap < 0) gap = 0;  // shared endpoint: isolated point of E
    out.emplace_back(wrap_angle(end), gap);
  }
  return out;
}

NodeFamily sample_nodes(const CarlesonSet& set, int generation, int count_cap) {
  if (count_cap < 2) throw std::invalid_argument("sample_nodes: count_cap must be >= 2");
  if (generation > set.depth)
    throw std::invalid_argument("sample_nodes: generation exceeds set depth");
  if (set.generations.size() != set.arcs.size())
    throw std::invalid_argument("sample_nodes: set carries no generation data");

  // endpoints per generation, deduplicated
  int max_gen = 0;
  for (int g : set.generations) max_gen = std::max(max_gen, g);
  std::vector<std::vector<double>> per_gen(static_cast<std::size_t>(max_gen) + 1);
  for (std::size_t i = 0; i < set.arcs.size(); ++i) {
    if (set.generations[i] >= generation) continue;
    const Arc& a = set.arcs[i];
    per_gen[set.generations[i]].push_back(wrap_angle(a.start));
    per_gen[set.generations[i]].push_back(wrap_angle(a.start + a.length * kTwoPi));
  }
  std::vector<double> angles;
  for (const auto& g : per_gen) {
    if (angles.size() + g.size() > static_cast<std::size_t>(count_cap)) break;
    angles.insert(angles.end(), g.begin(), g.end());
  }
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end(),
                           [](double a, double b) { return chord(b - a) < 1e-12; }),
               angles.end());
  if (angles.size() >= 2 && chord(angles.front() + kTwoPi - angles.back()) < 1e-12)
    angles.pop_back();
  if (angles.size() < 2)
    throw std::invalid_argument("sample_nodes: fewer than 2 nodes at this generation");

  NodeFamily fam;
  fam.generation = generation;
  fam.angles = std::move(angles);
  fam.nodes.reserve(fam.angles.size());
  for (double t : fam.angles) fam.nodes.push_back(std::polar(1.0, t));
  for (std::size_t j = 0; j < fam.nodes.size(); ++j) {
    if (distance_to_set(fam.nodes[j], set) > 1e-12)
      throw std::runtime_error("sample_nodes: endpoint not in E (non-nested generator)");
  }
  double sp = 2.0;
  for (std::size_t j = 0; j < fam.angles.size(); ++j) {
    const double a = fam.angles[j];
    const double b = (j + 1 < fam.angles.size()) ? fam.angles[j + 1] : fam.angles[0] + kTwoPi;
    sp = std::min(sp, chord(b - a));
  }
  fam.spacing = sp;
  return fam;
}

double covering_distance(const CarlesonSet& set,
                         const std::vector<std::complex<double>>& points) {
  if (points.empty()) throw std::invalid_argument("covering_distance: no points");
  std::vector<double> pa;
  pa.reserve(points.size());
  for (auto z : points) pa.push_back(wrap_angle(std::arg(z)));
  std::sort(pa.begin(), pa.end());

  auto nearest_angular = [&](double t) {
    auto it = std::lower_bound(pa.begin(), pa.end(), t);
    double best = kTwoPi;
    auto consider = [&](double q) { best = std::min(best, angular_distance(t, q)); };
    if (it != pa.end()) consider(*it);
    if (it != pa.begin()) consider(*(it - 1));
    consider(pa.front());
    consider(pa.back());
    return best;
  };

  double sup = 0.0;
  for (const auto& [start, extent] : set_intervals(set)) {
    // candidates: interval endpoints and midpoints of point-gaps inside
    sup = std::max(sup, nearest_angular(start));
    sup = std::max(sup, nearest_angular(start + extent));
    for (std::size_t j = 0; j < pa.size(); ++j) {
      const double q1 = pa[j];
      const double q2 = (j + 1 < pa.size()) ? pa[j + 1] : pa[0] + kTwoPi;
      const double mid = wrap_angle(0.5 * (q1 + q2));
      double rel = mid - start;
      if (rel < 0) rel += kTwoPi;
      if (rel <= extent) sup = std::max(sup, nearest_angular(mid));
    }
  }
  return chord(std::min(sup, kTwoPi / 2));
}

}  // namespace hstar
