// Rank-2 scattering diagrams D(s): two initial lines with functions 1+t*x^s
// and 1+t*y^s, wall-crossing automorphisms, path-ordered products around the
// origin, and order-by-order consistency completion. Also the discrete ray
// recursion v_{j-1} + v_{j+1} = s*v_j and the slope cone ("badlands") bounded
// by the roots of m^2 - s*m + 1.

#ifndef POLYMUT_SCATTERING_HPP
#define POLYMUT_SCATTERING_HPP

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "polymut/laurent.hpp"
#include "polymut/series.hpp"

namespace polymut {

struct UnsupportedS : std::domain_error {
  UnsupportedS() : std::domain_error("operation requires s >= 3") {}
};

struct LoopThroughBase : std::domain_error {
  LoopThroughBase() : std::domain_error("loop passes through a wall base") {}
};

// A wall through the origin. Lines span both directions of dir; rays only
// the nonnegative span. Wall functions live in the single monomial z^{s*dir}.
struct Wall {
  Vec dir;  // primitive; for lines the first-quadrant representative
  bool line;
  TruncatedSeries f;

  bool operator==(const Wall&) const = default;
};

struct ScatteringDiagram {
  long s;
  int order;
  std::vector<Wall> walls;  // sorted by counterclockwise angle of dir
};

inline ScatteringDiagram initial_diagram(long s, int order) {
  if (s < 1) throw std::invalid_argument("s must be positive");
  TruncatedSeries fx = TruncatedSeries::one(order);
  fx.add_term(1, {s, 0}, 1);
  TruncatedSeries fy = TruncatedSeries::one(order);
  fy.add_term(1, {0, s}, 1);
  return {s, order, {{{1, 0}, true, fx}, {{0, 1}, true, fy}}};
}

// Counterclockwise angle order with (1,0) first.
inline int angle_octant(const Vec& v) {
  if (v.y == 0) return v.x > 0 ? 0 : 4;
  if (v.y > 0) {
    if (v.x > 0) return 1;
    return v.x == 0 ? 2 : 3;
  }
  if (v.x < 0) return 5;
  return v.x == 0 ? 6 : 7;
}

inline bool angle_less(const Vec& a, const Vec& b) {
  int oa = angle_octant(a), ob = angle_octant(b);
  if (oa != ob) return oa < ob;
  return wedge(a, b) > 0;
}

// Image of a single monomial c*t^k*z^m under the crossing of w with
// normal n: c*t^k*z^m*f^{<n,m>}.
inline TruncatedSeries cross_wall(const Wall& w, const Vec& n, int k,
                                  const Vec& m, const Rat& c) {
  TruncatedSeries r = w.f.pow(dot(n, m));
  TruncatedSeries mono = TruncatedSeries::monomial(w.f.order(), k, m, c);
  return mono * r;
}

// Termwise extension to a series; exponent powers are cached per pairing
// value since <n,m> usually repeats.
inline TruncatedSeries cross_wall(const Wall& w, const Vec& n,
                                  const TruncatedSeries& g) {
  TruncatedSeries r(g.order());
  std::map<Int, TruncatedSeries> powers;
  for (const auto& [key, c] : g.terms()) {
    Int e = dot(n, key.m);
    auto it = powers.find(e);
    if (it == powers.end()) it = powers.emplace(e, w.f.pow(e)).first;
    TruncatedSeries mono = TruncatedSeries::monomial(g.order(), key.k, key.m, c);
    r = r + mono * it->second;
  }
  return r;
}

// One crossing event on the circuit: the half-wall direction actually met.
struct Crossing {
  Vec half_dir;
  const Wall* wall;
};

// Crossings of a full counterclockwise circuit around the origin, starting
// just below the positive x-axis. Lines are met twice, rays once.
inline std::vector<Crossing> circuit_crossings(const ScatteringDiagram& d) {
  std::vector<Crossing> ev;
  for (const Wall& w : d.walls) {
    ev.push_back({w.dir, &w});
    if (w.line) ev.push_back({-w.dir, &w});
  }
  std::sort(ev.begin(), ev.end(), [](const Crossing& a, const Crossing& b) {
    return angle_less(a.half_dir, b.half_dir);
  });
  return ev;
}

// Covector used when the counterclockwise circuit meets the half-wall d.
// The primitive normal is scaled by s: exponents pair through the index-s
// sublattice spanned by the wall monomials, which normalizes the first
// correction for D(s) to coefficient s^2 (9 for the Markov case s = 3).
inline Vec crossing_normal(long s, const Vec& half_dir) {
  return {-s * half_dir.y, s * half_dir.x};
}

struct PathProduct {
  TruncatedSeries x, y;
};

inline PathProduct path_ordered_product(const ScatteringDiagram& d) {
  TruncatedSeries x = TruncatedSeries::monomial(d.order, 0, {1, 0});
  TruncatedSeries y = TruncatedSeries::monomial(d.order, 0, {0, 1});
  for (const Crossing& c : circuit_crossings(d)) {
    Vec n = crossing_normal(d.s, c.half_dir);
    x = cross_wall(*c.wall, n, x);
    y = cross_wall(*c.wall, n, y);
  }
  return {x, y};
}

// Defect of the product: P(x)/x - 1 and P(y)/y - 1.
inline std::pair<TruncatedSeries, TruncatedSeries> consistency_defect(
    const ScatteringDiagram& d) {
  PathProduct p = path_ordered_product(d);
  TruncatedSeries one = TruncatedSeries::one(d.order);
  return {p.x.shifted({1, 0}) - one, p.y.shifted({0, 1}) - one};
}

// Kontsevich-Soibelman completion: for each order k the defect is a
// derivation sum c*t^k*z^m; a ray in direction primitive(m) with coefficient
// a cancels it when a*<n,e1> = -c^x_m (and the y-component agrees).
inline ScatteringDiagram complete_to_order(const ScatteringDiagram& d0,
                                           int order) {
  if (order < 1) throw std::invalid_argument("order must be positive");
  ScatteringDiagram d{d0.s, order, {}};
  for (const Wall& w : d0.walls) {
    TruncatedSeries f(order);
    for (const auto& [key, c] : w.f.terms()) f.add_term(key.k, key.m, c);
    d.walls.push_back({w.dir, w.line, f});
  }
  for (int k = 2; k <= order; ++k) {
    auto [dx, dy] = consistency_defect(d);
    std::map<Vec, std::pair<Rat, Rat>, VecLess> defect;
    for (const auto* def : {&dx, &dy}) {
      for (const auto& [key, c] : def->terms()) {
        if (key.k > k) continue;
        if (key.k < k)
          throw std::logic_error("defect below current order");
        auto& e = defect[key.m];
        (def == &dx ? e.first : e.second) += c;
      }
    }
    for (const auto& [m, c] : defect) {
      Vec dir = primitive(m);
      if (dir.x < 0 || dir.y < 0)
        throw std::logic_error("defect outside the first quadrant");
      Vec n = crossing_normal(d.s, dir);
      Rat a = n.x != 0 ? Rat(-c.first / n.x) : Rat(-c.second / n.y);
      if (n.x != 0 && a * n.x != -c.first)
        throw std::logic_error("inconsistent defect solve");
      if (n.y != 0 && a * n.y != -c.second)
        throw std::logic_error("inconsistent defect solve");
      if (a == 0) continue;
      Wall* target = nullptr;
      for (Wall& w : d.walls)
        if (!w.line && w.dir == dir) target = &w;
      if (!target) {
        Wall w{dir, false, TruncatedSeries::one(order)};
        auto pos = std::upper_bound(
            d.walls.begin(), d.walls.end(), w,
            [](const Wall& u, const Wall& v) { return angle_less(u.dir, v.dir); });
        target = &*d.walls.insert(pos, std::move(w));
      }
      target->f.add_term(k, m, a);
    }
  }
  return d;
}

inline std::vector<Vec> discrete_rays(long s, int jmax) {
  if (s < 3) throw UnsupportedS{};
  std::vector<Vec> out;
  for (Vec prev : {Vec{-1, 0}, Vec{0, -1}}) {
    Vec cur = prev == Vec{-1, 0} ? Vec{0, 1} : Vec{1, 0};
    out.push_back(prev);
    for (int j = 1; j <= jmax; ++j) {
      out.push_back(cur);
      Vec next = Int(s) * cur - prev;
      prev = cur;
      cur = next;
    }
  }
  return out;
}

enum class BadlandsPosition { Below, Inside, Above };

// Classifies the slope q = y/x of a first-quadrant direction against the
// roots of q^2 - s*q + 1 = 0 by exact sign tests.
inline BadlandsPosition badlands_test(long s, const Vec& dir) {
  if (s < 3) throw UnsupportedS{};
  if (dir.x < 0 || dir.y < 0 || dir.is_zero())
    throw std::invalid_argument("direction must be in the first quadrant");
  if (dir.x == 0) return BadlandsPosition::Above;
  Int quad = dir.y * dir.y - s * dir.x * dir.y + dir.x * dir.x;
  if (quad < 0) return BadlandsPosition::Inside;
  return 2 * dir.y < s * dir.x ? BadlandsPosition::Below
                               : BadlandsPosition::Above;
}

struct RecursionReport {
  std::vector<Vec> outside_rays;    // diagram directions outside the cone
  std::vector<Vec> expected;        // discrete rays entering by this order
  bool match;
  int inside_count;                 // sampled cone density, not asserted
};

inline RecursionReport compare_with_recursion(const ScatteringDiagram& d) {
  if (d.s < 3) throw UnsupportedS{};
  RecursionReport rep;
  rep.inside_count = 0;
  for (const Wall& w : d.walls) {
    if (badlands_test(d.s, w.dir) == BadlandsPosition::Inside)
      ++rep.inside_count;
    else
      rep.outside_rays.push_back(w.dir);
  }
  for (const Vec& v : discrete_rays(d.s, d.order)) {
    if (v.x < 0 || v.y < 0) continue;  // j = 0 seeds
    if (v.x + v.y <= d.order) rep.expected.push_back(v);
  }
  auto lt = [](const Vec& a, const Vec& b) { return lex_less(a, b); };
  std::sort(rep.outside_rays.begin(), rep.outside_rays.end(), lt);
  std::sort(rep.expected.begin(), rep.expected.end(), lt);
  rep.match = rep.outside_rays == rep.expected;
  return rep;
}

}  // namespace polymut

#endif  // POLYMUT_SCATTERING_HPP
