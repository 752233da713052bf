#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pf/henon.hpp"
#include "pf/kneading.hpp"

using namespace pf;

namespace {

const HenonParams kP{1.9, 0.025};

}  // namespace

TEST_CASE("henon map and jacobian") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int i = 0; i < 100; ++i) {
    const Point q{U(rng), U(rng)};
    const Point img{1 + q.y - kP.a * q.x * q.x, kP.b * q.x};
    const Point got = henon_apply(kP, q);
    CHECK(got.x == doctest::Approx(img.x).epsilon(1e-14));
    CHECK(got.y == doctest::Approx(img.y).epsilon(1e-14));

    // Jacobian against central differences.
    const double h = 1e-6;
    const Mat2 J = henon_jacobian(kP, q);
    const Point dx = (1.0 / (2 * h)) * (henon_apply(kP, {q.x + h, q.y}) -
                                        henon_apply(kP, {q.x - h, q.y}));
    const Point dy = (1.0 / (2 * h)) * (henon_apply(kP, {q.x, q.y + h}) -
                                        henon_apply(kP, {q.x, q.y - h}));
    CHECK(J.a11 == doctest::Approx(dx.x).epsilon(1e-6));
    CHECK(J.a21 == doctest::Approx(dx.y).epsilon(1e-6));
    CHECK(J.a12 == doctest::Approx(dy.x).epsilon(1e-6));
    CHECK(J.a22 == doctest::Approx(dy.y).epsilon(1e-6));
    CHECK(J.det() == doctest::Approx(-kP.b).epsilon(1e-10));
  }
}

TEST_CASE("manifold parametrization conjugates the map") {
  HenonEngine eng(kP);
  const ManifoldMap& mm = eng.map();
  CHECK(dist(phi(mm, 0), mm.fixed) < 1e-12);
  CHECK(std::abs(mm.mu) > 1);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int i = 0; i < 100; ++i) {
    const double t = U(rng);
    const Point a = henon_apply(kP, phi(mm, t));
    const Point b = phi(mm, mm.mu * t);
    CHECK(dist(a, b) < 1e-8 * (1 + norm(a)));
  }
}

TEST_CASE("detected turning points score below the contraction threshold") {
  HenonEngine eng(kP);
  (void)eng.window(4);
  const double threshold = std::log(kP.b) / 2;
  REQUIRE(!eng.candidates().empty());
  for (const CriticalPoint& c : eng.candidates()) {
    CHECK(c.score < threshold);
    // The interpolated switching locus passes through every candidate.
    CHECK(eng.side(c.p) == Symbol::PlusMinus);
    CHECK(dist(phi(eng.map(), c.t), c.p) < 1e-9);
  }
  // Candidates are sorted and separated in parameter.
  for (std::size_t i = 1; i < eng.candidates().size(); ++i) {
    const double a = eng.candidates()[i - 1].t;
    const double b = eng.candidates()[i].t;
    CHECK(b - a > 1e-6);
  }
}

TEST_CASE("detection is stable under deeper scoring") {
  HenonEngine eng(kP);
  const std::vector<CriticalPoint> shallow = eng.detect_critical_points(10, 1e-3);
  const std::vector<CriticalPoint> deep = eng.detect_critical_points(15, 1e-3);
  REQUIRE(shallow.size() == deep.size());
  for (std::size_t i = 0; i < shallow.size(); ++i)
    CHECK(dist(shallow[i].p, deep[i].p) < 1e-3);
}

TEST_CASE("windows validate through the supported generations") {
  HenonEngine eng(kP);
  for (int g = 1; g <= 5; ++g) {
    const ObservedWindow ow = eng.window(g);
    CHECK(ow.fp == eng.folding(g));
    CHECK(ow.fp.generations == g);
    CHECK_NOTHROW(annotate(ow.fp));
  }
  // The union of window marks stays labeled consistently: the turning point
  // of the first left mark is z_0.
  const ObservedWindow ow = eng.window(3);
  CHECK(ow.at(-1).i == 0);
  CHECK(ow.at(-1).j == 0);
  CHECK(ow.at(1).i == 0);
  CHECK(ow.at(1).j == 1);
}

TEST_CASE("window generations beyond the resolution horizon raise an error") {
  HenonEngine eng(kP);
  for (int g : {7, 12}) {
    try {
      eng.window(g);
      FAIL("window(" << g << ") should have thrown");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::WindowTooDeep);
    }
  }
}

TEST_CASE("kneading sets are flagged heuristic and self-consistent") {
  HenonEngine eng(kP);
  const KneadingSet K = eng.kneading_set(12, 10);
  CHECK(K.heuristic);
  CHECK_NOTHROW(validate(K));
  REQUIRE(K.find(0) != nullptr);
  CHECK(K.find(0)->seq.arc_code.empty());

  // Tails by bare iteration of each turning point's first image.
  for (const KneadingEntry& e : K.entries) {
    Point q = phi(eng.map(), eng.map().mu * eng.turning_param(e.index));
    for (const Symbol want : e.seq.tail) {
      CHECK(eng.side(q) == want);
      q = henon_apply(kP, q);
    }
  }
}

TEST_CASE("sampled itineraries pass self-admissibility") {
  HenonEngine eng(kP);
  const KneadingSet K = eng.kneading_set(12, 10);
  const ObservedWindow ow = eng.window(5);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> U(ow.lo, ow.hi);
  int checked = 0;
  while (checked < 50) {
    Window w;
    try {
      w = eng.itinerary(U(rng), 5, 10);
    } catch (const Error&) {
      continue;
    }
    ++checked;
    Word p = w.left;
    p.insert(p.end(), w.right.begin(), w.right.end());
    std::size_t s = 0;
    while (s < p.size() && p[s] == Symbol::Plus) ++s;
    if (s == p.size()) continue;
    CHECK(is_wu_admissible(WordView(p).subspan(s), K, 10).admissible());
  }
}

TEST_CASE("grow_wu is marked heuristic and respects the budget") {
  HenonEngine eng(kP);
  const WuPolyline poly = eng.grow_wu(5, 1e-2);
  CHECK(poly.heuristic);
  CHECK(poly.total_arclength() >= 5);
  REQUIRE(!poly.markers.empty());
  for (const WuPolyline::MarkerRef& m : poly.markers)
    CHECK(poly.params[m.vertex] == m.t);
  try {
    eng.grow_wu(20, 1e-3, 100);
    FAIL("tiny vertex budget should have thrown");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BudgetExceeded);
  }
}
