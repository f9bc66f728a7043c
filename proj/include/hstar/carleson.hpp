#pragma once

#include <complex>
#include <string>
#include <vector>

namespace hstar {

inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;

/// Chord length between two points of the unit circle whose angles differ
/// by `angle` radians.
double chord(double angle);

/// Circular (angular) distance between two angles, in [0, pi].
double angular_distance(double a, double b);

/// Open arc of the unit circle. `start` is in radians, `length` is the
/// normalized Lebesgue measure (fraction of the full circle).
struct Arc {
  double start = 0.0;
  double length = 0.0;
};

/// Closed set E on the circle, stored through the open arcs of its
/// complement. `generations[i]` is the construction generation at which
/// `arcs[i]` was removed; arcs are kept sorted by start angle.
struct CarlesonSet {
  std::vector<Arc> arcs;
  std::vector<int> generations;
  int depth = 0;
  std::string tag;

  double complement_measure() const;
};

/// Validates disjointness and total measure, sorts arcs by start angle.
/// Throws std::invalid_argument on overlap or bad arc data.
CarlesonSet make_carleson_set(std::vector<Arc> arcs, std::vector<int> generations,
                              int depth, std::string tag);

/// Middle-removal generator: at each generation strip the open middle
/// `ratio` fraction from every surviving arc of `base`. depth <= 30 and
/// the resulting arc lengths must stay representable (>= 1e-15).
CarlesonSet cantor_like_set(int depth, double ratio, Arc base = Arc{0.0, 1.0});

struct EntropyResult {
  double value = 0.0;                // sum of |I| log(1/|I|), natural log
  bool full_measure_warning = false; // set has no complementary arcs
};

EntropyResult entropy(const CarlesonSet& set);

struct MarginReport {
  std::vector<double> partial_sums;     // entropy per depth
  std::vector<double> increments;       // consecutive differences
  std::vector<double> increment_ratios; // increments[j+1]/increments[j]
  double fitted_ratio = 0.0;            // exp of LS slope of log-increments (tail half)
  bool carleson_consistent = false;
};

/// Requires at least 3 sets produced by one generator at increasing depth.
MarginReport carleson_margin(const std::vector<CarlesonSet>& sets_by_depth);

/// Chordal distance from z (|z| = 1 up to 1e-12) to E. The nearest point
/// of E is always an arc endpoint or z itself.
double distance_to_set(std::complex<double> z, const CarlesonSet& set);
double distance_to_set_angle(double theta, const CarlesonSet& set);

/// d(theta_k) for the uniform grid theta_k = 2 pi k / N.
std::vector<double> distance_grid(const CarlesonSet& set, int grid_size);

/// Closed intervals making up E, as (start radians, extent radians),
/// merged cyclically across the wrap point. A full-measure E yields one
/// interval of extent 2 pi.
std::vector<std::pair<double, double>> set_intervals(const CarlesonSet& set);

struct NodeFamily {
  std::vector<double> angles;               // sorted, in [0, 2 pi)
  std::vector<std::complex<double>> nodes;  // exp(i * angle)
  double spacing = 0.0;                     // minimal pairwise chordal distance
  int generation = 0;
};

/// Endpoints of the arcs removed before `generation`, all of which lie in E.
/// When the full family exceeds count_cap, whole generations are kept
/// (earliest first) so removed-arc endpoint pairs stay together.
NodeFamily sample_nodes(const CarlesonSet& set, int generation, int count_cap);

/// sup over x in E of the chordal distance from x to the nearest of
/// `points`; exact (maximization over the interval structure of E).
double covering_distance(const CarlesonSet& set,
                         const std::vector<std::complex<double>>& points);

}  // namespace hstar
