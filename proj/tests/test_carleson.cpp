#include <doctest.h>

#include <cmath>
#include <set>

#include "helpers.hpp"
#include "hstar/json_io.hpp"

using namespace hstar;

namespace {

double thirds_entropy_closed_form(int depth) {
  // sum over generations j < depth of 2^j * 3^{-(j+1)} * (j+1) log 3
  double s = 0.0;
  for (int j = 0; j < depth; ++j)
    s += std::pow(2.0, j) * std::pow(3.0, -(j + 1)) * (j + 1) * std::log(3.0);
  return s;
}

}  // namespace

TEST_CASE("cantor generator: counts and lengths per generation") {
  CHECK(cantor_like_set(0, 1.0 / 3.0).arcs.empty());

  const CarlesonSet d1 = cantor_like_set(1, 1.0 / 3.0);
  REQUIRE(d1.arcs.size() == 1);
  CHECK(d1.arcs[0].length == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(d1.arcs[0].start == doctest::Approx(kTwoPi / 3.0).epsilon(1e-14));

  const CarlesonSet d5 = cantor_like_set(5, 1.0 / 3.0);
  REQUIRE(d5.arcs.size() == 31);
  for (int j = 0; j < 5; ++j) {
    int count = 0;
    for (std::size_t i = 0; i < d5.arcs.size(); ++i) {
      if (d5.generations[i] != j) continue;
      ++count;
      CHECK(d5.arcs[i].length == doctest::Approx(std::pow(3.0, -(j + 1))).epsilon(1e-13));
    }
    CHECK(count == (1 << j));
  }
}

TEST_CASE("cantor generator: arcs pairwise disjoint at every depth") {
  for (double ratio : {0.2, 1.0 / 3.0, 0.5}) {
    for (int depth : {1, 3, 6, 9, 12}) {
      const CarlesonSet s = cantor_like_set(depth, ratio);
      double prev_end = -1.0;
      for (std::size_t i = 0; i < s.arcs.size(); ++i) {
        CHECK(s.arcs[i].start >= prev_end);
        prev_end = s.arcs[i].start + s.arcs[i].length * kTwoPi;
      }
      CHECK(prev_end <= kTwoPi * (1.0 + 1e-14));
    }
  }
}

TEST_CASE("cantor generator: range errors") {
  CHECK_THROWS_AS(cantor_like_set(3, 1.5), std::range_error);
  CHECK_THROWS_AS(cantor_like_set(3, 0.0), std::range_error);
  CHECK_THROWS_AS(cantor_like_set(-1, 0.3), std::range_error);
  CHECK_THROWS_AS(cantor_like_set(31, 1.0 / 3.0), std::range_error);
  // depth 30 at ratio 1/3 would need 2^30 arcs
  CHECK_THROWS_AS(cantor_like_set(30, 1.0 / 3.0), std::range_error);
}

TEST_CASE("entropy: closed forms and flags") {
  const EntropyResult point = entropy(testing::singleton_set());
  CHECK(point.value == doctest::Approx(0.0));
  CHECK_FALSE(point.full_measure_warning);

  // two arcs of length 1/2 leave E = {1, -1}
  const CarlesonSet two = make_carleson_set(
      {Arc{0.0, 0.5}, Arc{kTwoPi / 2.0, 0.5}}, {0, 0}, 0, "two-points");
  CHECK(entropy(two).value == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  const EntropyResult empty = entropy(cantor_like_set(0, 0.3));
  CHECK(empty.value == 0.0);
  CHECK(empty.full_measure_warning);

  for (int k : {1, 4, 8, 12}) {
    CHECK(entropy(cantor_like_set(k, 1.0 / 3.0)).value ==
          doctest::Approx(thirds_entropy_closed_form(k)).epsilon(1e-12));
  }
  // partial sums increase toward 3 log 3
  CHECK(thirds_entropy_closed_form(40) < 3.0 * std::log(3.0));
  CHECK(thirds_entropy_closed_form(40) == doctest::Approx(3.0 * std::log(3.0)).epsilon(1e-4));
}

TEST_CASE("carleson_margin: middle thirds is consistent with ratio near 2/3") {
  std::vector<CarlesonSet> seq;
  for (int d = 0; d <= 12; ++d) seq.push_back(cantor_like_set(d, 1.0 / 3.0));
  const MarginReport rep = carleson_margin(seq);
  CHECK(rep.carleson_consistent);
  CHECK(rep.fitted_ratio > 0.6);
  CHECK(rep.fitted_ratio < 0.8);
  // increment ratio at step j is (2/3)(j+2)/(j+1)
  for (std::size_t j = 0; j < rep.increment_ratios.size(); ++j) {
    const double expect = (2.0 / 3.0) * (j + 2.0) / (j + 1.0);
    CHECK(rep.increment_ratios[j] == doctest::Approx(expect).epsilon(1e-10));
  }
  CHECK_THROWS_AS(carleson_margin({seq[0], seq[1]}), std::invalid_argument);
}

TEST_CASE("carleson_margin: constant-entropy and divergent generators") {
  std::vector<CarlesonSet> points(5, testing::singleton_set());
  const MarginReport flat = carleson_margin(points);
  CHECK(flat.carleson_consistent);

  // removal lengths ~ 1/(j log^2 j): the entropy series diverges and the
  // increment ratios crawl toward 1
  auto divergent_at_depth = [](int depth) {
    std::vector<Arc> arcs;
    std::vector<int> gens;
    double pos = 0.0;
    for (int j = 2; j < 2 + depth; ++j) {
      const double len = 0.4 / (j * std::log((double)j) * std::log((double)j));
      arcs.push_back(Arc{pos * kTwoPi, len});
      gens.push_back(j - 2);
      pos += len + 1e-4;
    }
    return make_carleson_set(std::move(arcs), std::move(gens), depth, "divergent");
  };
  std::vector<CarlesonSet> seq;
  for (int d = 1; d <= 40; ++d) seq.push_back(divergent_at_depth(d));
  const MarginReport rep = carleson_margin(seq);
  for (std::size_t j = 0; j + 1 < rep.partial_sums.size(); ++j)
    CHECK(rep.partial_sums[j] < rep.partial_sums[j + 1]);  // sums keep growing
  CHECK_FALSE(rep.carleson_consistent);
  CHECK(rep.fitted_ratio > 0.9);
}

TEST_CASE("distance_to_set: singleton and membership") {
  const CarlesonSet point = testing::singleton_set();
  CHECK(distance_to_set({-1.0, 0.0}, point) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(distance_to_set({0.0, 1.0}, point) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(distance_to_set({1.0, 0.0}, point) == 0.0);
  CHECK_THROWS_AS(distance_to_set({0.5, 0.0}, point), std::invalid_argument);
}

TEST_CASE("distance_to_set: zero iff outside all open arcs, nearest is an endpoint") {
  const CarlesonSet s = cantor_like_set(5, 1.0 / 3.0);
  Rng rng(7);
  for (int t = 0; t < 500; ++t) {
    const double theta = rng.uniform(0.0, kTwoPi);
    const double d = distance_to_set_angle(theta, s);
    // brute force: min over arc endpoints, or zero if not in any open arc
    bool inside = false;
    double brute = 4.0;
    for (const Arc& a : s.arcs) {
      double rel = std::fmod(theta - a.start + kTwoPi, kTwoPi);
      if (rel > 0 && rel < a.length * kTwoPi) inside = true;
      brute = std::min(brute, chord(theta - a.start));
      brute = std::min(brute, chord(theta - (a.start + a.length * kTwoPi)));
    }
    if (!inside) {
      CHECK(d == 0.0);
    } else {
      CHECK(d == doctest::Approx(brute).epsilon(1e-12));
    }
  }
}

TEST_CASE("sample_nodes: endpoint families") {
  const CarlesonSet s = cantor_like_set(8, 1.0 / 3.0);

  const NodeFamily g1 = sample_nodes(s, 1, 1024);
  REQUIRE(g1.angles.size() == 2);
  CHECK(g1.angles[0] == doctest::Approx(kTwoPi / 3.0).epsilon(1e-14));
  CHECK(g1.angles[1] == doctest::Approx(2.0 * kTwoPi / 3.0).epsilon(1e-14));

  for (int g : {2, 3, 4, 5, 6}) {
    const NodeFamily fam = sample_nodes(s, g, 1024);
    CHECK(fam.angles.size() == static_cast<std::size_t>((1 << (g + 1)) - 2));
    for (const auto& z : fam.nodes) CHECK(distance_to_set(z, s) <= 1e-12);
    CHECK(std::abs(std::abs(fam.nodes[0]) - 1.0) == 0.0);
    // minimal spacing equals the smallest surviving arc length of the generation
    const double expected = chord(kTwoPi * std::pow(3.0, -g));
    CHECK(fam.spacing == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("sample_nodes: spacing matches brute-force pairwise minimum") {
  const CarlesonSet s = cantor_like_set(6, 1.0 / 3.0);
  const NodeFamily fam = sample_nodes(s, 4, 1024);
  double brute = 4.0;
  for (std::size_t a = 0; a < fam.nodes.size(); ++a)
    for (std::size_t b = a + 1; b < fam.nodes.size(); ++b)
      brute = std::min(brute, std::abs(fam.nodes[a] - fam.nodes[b]));
  CHECK(fam.spacing == doctest::Approx(brute).epsilon(1e-14));
}

TEST_CASE("sample_nodes: nesting and the close-partner property") {
  const CarlesonSet s = cantor_like_set(8, 1.0 / 3.0);
  for (int g : {2, 3, 4, 5}) {
    const NodeFamily fam = sample_nodes(s, g, 1024);
    const NodeFamily finer = sample_nodes(s, g + 1, 1024);
    // nested: every node of generation g appears in generation g+1
    for (double a : fam.angles) {
      bool found = false;
      for (double b : finer.angles)
        if (chord(a - b) < 1e-13) found = true;
      CHECK(found);
    }
    // each node has a distinct partner within the generation's arc scale
    const double scale = kTwoPi * std::pow(3.0, -g);
    for (std::size_t i = 0; i < fam.nodes.size(); ++i) {
      double nearest = 4.0;
      for (std::size_t j = 0; j < fam.nodes.size(); ++j)
        if (i != j) nearest = std::min(nearest, std::abs(fam.nodes[i] - fam.nodes[j]));
      CHECK(nearest <= scale * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("sample_nodes: cap keeps whole generations, errors") {
  const CarlesonSet s = cantor_like_set(6, 1.0 / 3.0);
  const NodeFamily capped = sample_nodes(s, 3, 7);  // gens 0,1 fit (2+4), gen 2 does not
  CHECK(capped.angles.size() == 6);
  CHECK_THROWS_AS(sample_nodes(s, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_nodes(s, 7, 1024), std::invalid_argument);
}

TEST_CASE("covering_distance: generation families against the seam formula") {
  const CarlesonSet s = cantor_like_set(8, 1.0 / 3.0);
  for (int g : {2, 3, 4, 5, 6}) {
    const NodeFamily fam = sample_nodes(s, g, 1024);
    const double expected = 2.0 * std::sin(kTwoPi / 2.0 * std::pow(3.0, -g));
    CHECK(covering_distance(s, fam.nodes) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("carleson set json round trip") {
  const CarlesonSet s = cantor_like_set(4, 0.4);
  const json j = to_json(s);
  const CarlesonSet back = carleson_set_from_json(json::parse(j.dump()));
  REQUIRE(back.arcs.size() == s.arcs.size());
  for (std::size_t i = 0; i < s.arcs.size(); ++i) {
    CHECK(back.arcs[i].start == s.arcs[i].start);
    CHECK(back.arcs[i].length == s.arcs[i].length);
    CHECK(back.generations[i] == s.generations[i]);
  }
  CHECK(back.depth == s.depth);
  CHECK(back.tag == s.tag);
}

TEST_CASE("make_carleson_set rejects overlaps") {
  CHECK_THROWS_AS(make_carleson_set({Arc{0.0, 0.5}, Arc{1.0, 0.5}}, {0, 0}, 0, "bad"),
                  std::invalid_argument);
}
