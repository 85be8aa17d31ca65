#include <catch2/catch_amalgamated.hpp>

#include "polymut/chambers.hpp"

using namespace polymut;

namespace {

QVec qv(long xn, long xd, long yn, long yd) {
  return {rat(xn, xd), rat(yn, yd)};
}

std::array<QVec, 3> sorted_tri(std::array<QVec, 3> t) {
  std::sort(t.begin(), t.end(), qvec_less);
  return t;
}

bool has_vertex(const std::array<QVec, 3>& t, const QVec& p) {
  return t[0] == p || t[1] == p || t[2] == p;
}

bool is_prefix(const TreePath& a, const TreePath& b) {
  if (a.size() > b.size()) return false;
  return std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

TEST_CASE("glue maps") {
  MarkovTriangle T;
  AffineMap g = glue_map(T, 0, 1);
  CHECK(g.scale() == rat(1, 2));
  // the mutated edge lands back on E1: (1,0) -> (-1,-1), (3,4) -> (0,1)
  CHECK(g.apply(qv(1, 1, 0, 1)) == qv(-1, 1, -1, 1));
  CHECK(g.apply(qv(3, 1, 4, 1)) == qv(0, 1, 1, 1));
  CHECK(g.inverse().apply(g.apply(qv(7, 3, -2, 5))) == qv(7, 3, -2, 5));

  // scale follows a_i / (3 a_j a_k - a_i) over the tree, never above 1/2
  for (const auto& n : enumerate_markov(5)) {
    MarkovTriangle M = triangle_from_triple(n.triple);
    for (int i : {0, 1}) {
      AffineMap s = glue_map(M, i, 1 - i);
      CHECK(s.scale() == rat(M.a(i), 3 * M.a(1 - i) * M.a(2) - M.a(i)));
      CHECK(s.scale() * 2 <= 1);
    }
  }
}

TEST_CASE("fan around the chosen vertex") {
  auto d1 = build_diag(1);
  REQUIRE(d1.size() == 3);
  CHECK(sorted_tri(d1[0].triangle) ==
        std::array<QVec, 3>{qv(-1, 1, -1, 1), qv(0, 1, 1, 1), qv(1, 1, 0, 1)});
  CHECK(sorted_tri(d1[1].triangle) ==
        std::array<QVec, 3>{qv(-2, 1, -3, 2), qv(-1, 1, -1, 1), qv(0, 1, 1, 1)});
  CHECK(sorted_tri(d1[2].triangle) ==
        std::array<QVec, 3>{qv(-3, 2, -2, 1), qv(-1, 1, -1, 1), qv(1, 1, 0, 1)});

  auto d3 = build_diag(3);
  REQUIRE(d3.size() == 7);
  QVec v = qv(-1, 1, -1, 1);
  for (const Chamber& c : d3) CHECK(has_vertex(c.triangle, v));
  // second chain element of branch 1, scale drops by 1/5 from there on
  CHECK(sorted_tri(d3[2].triangle) ==
        std::array<QVec, 3>{qv(-12, 5, -2, 1), qv(-2, 1, -3, 2),
                            qv(-1, 1, -1, 1)});
  CHECK(d3[2].S.scale() / d3[1].S.scale() == rat(1, 5));
  CHECK(d3[5].S.scale() / d3[4].S.scale() == rat(1, 5));

  // the two chains mirror each other across x = y
  for (int j = 1; j <= 3; ++j) {
    std::array<QVec, 3> mirror;
    for (int m = 0; m < 3; ++m)
      mirror[m] = QVec{d3[j].triangle[m].y, d3[j].triangle[m].x};
    CHECK(sorted_tri(mirror) == sorted_tri(d3[j + 3].triangle));
  }

  // the fan is a polyhedral complex: every pair shares a vertex or an edge
  for (std::size_t i = 0; i < d3.size(); ++i)
    for (std::size_t j = i + 1; j < d3.size(); ++j) {
      FaceMeet m = classify_meet(d3[i].triangle, d3[j].triangle);
      CHECK((m == FaceMeet::Vertex || m == FaceMeet::Edge));
    }

  CHECK_THROWS_AS(build_diag(20), DepthExceeded);
}

TEST_CASE("chamber region follows the Markov tree") {
  auto reg = build_region(3);
  REQUIRE(reg.size() == 15);
  int count[4] = {0, 0, 0, 0};
  for (const Chamber& c : reg) {
    REQUIRE((c.depth >= 0 && c.depth <= 3));
    ++count[c.depth];
    CHECK(c.model.triple() == apply_path(c.path));
    // scale is a product of glue factors, each at most 1/2
    Rat bound = 1;
    for (int d = 0; d < c.depth; ++d) bound = bound / 2;
    CHECK(c.S.scale() <= bound);
  }
  CHECK(count[0] == 1);
  CHECK(count[1] == 2);
  CHECK(count[2] == 4);
  CHECK(count[3] == 8);

  for (const Chamber& c : reg) {
    if (c.depth == 2) CHECK(c.model.triple() == MarkovTriple{1, 2, 5});
    if (c.depth == 1) CHECK(c.model.triple() == MarkovTriple{1, 1, 2});
  }

  // the depth-1 chambers are the two fan triangles
  auto d1 = build_diag(1);
  CHECK(sorted_tri(reg[1].triangle) == sorted_tri(d1[1].triangle));
  CHECK(sorted_tri(reg[2].triangle) == sorted_tri(d1[2].triangle));

  CHECK_THROWS_AS(build_region(17), DepthExceeded);
}

TEST_CASE("chambers intersect along faces") {
  auto reg = build_region(4);
  REQUIRE(reg.size() == 31);
  for (std::size_t i = 0; i < reg.size(); ++i)
    for (std::size_t j = i + 1; j < reg.size(); ++j)
      CHECK(classify_meet(reg[i].triangle, reg[j].triangle) !=
            FaceMeet::Improper);

  // parent and child always share a full edge
  for (const Chamber& c : reg) {
    if (c.depth >= 4) continue;
    for (Branch br : {Branch::ReplaceA1, Branch::ReplaceA2})
      CHECK(classify_meet(c.triangle, successor(c, br).triangle) ==
            FaceMeet::Edge);
  }
}

TEST_CASE("bounding regions") {
  auto reg = build_region(4);
  auto R0 = bounding_region(reg[0]);
  CHECK(R0[0] == qv(1, 1, 0, 1));
  CHECK(R0[1] == qv(0, 1, 1, 1));
  CHECK(R0[2] == qv(-6, 1, -6, 1));

  // every descendant chamber sits inside each ancestor's bounding triangle
  for (const Chamber& anc : reg) {
    auto R = bounding_region(anc);
    for (const Chamber& desc : reg) {
      if (!is_prefix(anc.path, desc.path)) continue;
      for (const QVec& p : desc.triangle) CHECK(contains_point(R, p, false));
    }
  }

  // the two depth-1 bounding triangles meet exactly at v3
  auto R1 = bounding_region(reg[1]);
  auto R2 = bounding_region(reg[2]);
  CHECK(R1[2] == qv(-3, 1, -5, 2));
  QPoly meet = triangle_intersection(R1, R2);
  REQUIRE(meet.size() == 1);
  CHECK(meet[0] == qv(-1, 1, -1, 1));
  CHECK(classify_meet(R1, R2) == FaceMeet::Vertex);

  // diameters shrink along every edge of the tree
  for (const Chamber& c : reg) {
    if (c.depth >= 4) continue;
    Rat parent = squared_diameter(bounding_region(c));
    for (Branch br : {Branch::ReplaceA1, Branch::ReplaceA2})
      CHECK(squared_diameter(bounding_region(successor(c, br))) <= parent);
  }
}

TEST_CASE("asymptotic cones") {
  auto reg = build_region(3);
  auto cones = cones_and_W(reg);
  REQUIRE(cones.size() == reg.size());

  // root cone at v3: strictly between the roots of q^2 - 3q + 1
  const ConeRegion& c0 = cones[0];
  CHECK(c0.apex == qv(-1, 1, -1, 1));
  CHECK(c0.s == 3);
  CHECK(in_cone(c0, qv(-2, 1, -2, 1)));            // frame slope 1
  CHECK(in_cone(c0, qv(-11, 3, -10, 3)));          // frame (-3,-2)
  CHECK_FALSE(in_cone(c0, qv(-10, 3, -8, 3)));     // frame (-3,-1), below
  CHECK_FALSE(in_cone(c0, qv(-8, 3, -10, 3)));     // frame (-1,-3), above
  CHECK_FALSE(in_cone(c0, qv(0, 1, 0, 1)));      // wrong quadrant
  CHECK(in_cone(c0, qv(-1, 1, -1, 1), false));   // apex, closed test only

  // no cone meets any chamber
  for (const ConeRegion& c : cones)
    for (const Chamber& fu : reg)
      CHECK_FALSE(triangle_meets_cone(c, fu.triangle));

  // chamber centroids avoid every cone
  for (const Chamber& fu : reg) {
    QVec g = (fu.triangle[0] + fu.triangle[1] + fu.triangle[2]) * rat(1, 3);
    for (const ConeRegion& c : cones) CHECK_FALSE(in_cone(c, g, false));
  }

  // sampled interior points: each cone has its own, shared by no other.
  // Cone apexes are fresh chamber vertices, so the cones are pairwise
  // disjoint even along tree paths.
  for (std::size_t i = 0; i < reg.size(); ++i) {
    QVec probe = cones[i].frame.inverse().apply(qv(-1, 1, -1, 1));
    CHECK(in_cone(cones[i], probe));
    for (std::size_t j = 0; j < reg.size(); ++j)
      if (i != j) CHECK_FALSE(in_cone(cones[j], probe));
  }
}

TEST_CASE("chart atlas") {
  ChartAtlas a = build_atlas();
  CHECK(a.charts.size() == 6);
  CHECK(a.singular[0] == qv(0, 1, -1, 2));
  CHECK(a.singular[1] == qv(1, 2, 1, 2));
  CHECK(a.singular[2] == qv(-1, 2, 0, 1));
  // cuts: never through (1,0), through (0,1) exactly once
  CHECK(a.cut_dir[0] == Vec{-2, -1});
  CHECK(a.cut_dir[1] == Vec{-1, 1});
  CHECK(a.cut_dir[2] == Vec{-1, -2});

  // the shear across edge 2, developed from the (-1,-1) side
  AffineMap t = edge_transition(a, 2, {-1, -1});
  CHECK(t.apply(qv(-2, 1, -3, 2)) == qv(-1, 2, 3, 2));
  // unipotent: trace 2, det 1, fixes the edge line pointwise
  CHECK(t.apply(a.singular[2]) == a.singular[2]);
  CHECK(t.apply(qv(0, 1, 1, 1)) == qv(0, 1, 1, 1));
  CHECK(t.apply(qv(-1, 1, -1, 1)) == qv(-1, 1, -1, 1));
  CHECK(t.apply_linear(qv(1, 1, 2, 1)) == qv(1, 1, 2, 1));

  // the opposite development is the exact inverse
  AffineMap back = edge_transition(a, 2, {0, 1});
  CHECK(back.apply(t.apply(qv(5, 7, -11, 3))) == qv(5, 7, -11, 3));

  // radial legs map onto each other under the shear
  for (int i = 0; i < 3; ++i) {
    auto [p, q] = a.edge[i];
    AffineMap s = edge_transition(a, i, p);
    CHECK(s.apply_linear(QVec(p)) == QVec(q));
  }
}

TEST_CASE("identified complex") {
  TComplex t1 = build_T(1);
  int d0 = 0, d1 = 0;
  for (const TElement& e : t1.elements) {
    if (e.depth == 0) {
      ++d0;
      CHECK(e.reps.size() == 3);  // one central triangle, all three roots
    }
    if (e.depth == 1) {
      ++d1;
      CHECK(e.reps.size() == 2);  // shared across the two incident vertices
    }
  }
  CHECK(d0 == 1);
  CHECK(d1 == 3);
  CHECK(t1.elements.size() == 4);

  TComplex t2 = build_T(2);
  CHECK(t2.elements.size() == 10);  // 1 + 3 + 6

  // identification coherence: representatives develop to identical triangles
  for (const TElement& e : t2.elements)
    for (const auto& [r, idx] : e.reps)
      CHECK(canonical_triangle(t2.atlas, t2.roots[r], t2.regions[r][idx]) ==
            e.canonical);
}

TEST_CASE("structure rays") {
  auto reg = build_region(3);
  auto rays = structure_rays(reg);

  // every chamber edge lies on exactly one maximal ray
  std::map<std::pair<std::size_t, int>, int> hits;
  for (const StructureRay& r : rays)
    for (const auto& e : r.edges) ++hits[e];
  CHECK(hits.size() == reg.size() * 3);
  for (const auto& [e, n] : hits) CHECK(n == 1);

  // edges of P0 extend through later generations: the (2,1)-line ray
  bool found = false;
  for (const StructureRay& r : rays) {
    if (r.base == qv(1, 1, 0, 1) && r.direction == Vec{-2, -1}) {
      found = true;
      CHECK(ray_contains(r, qv(-1, 1, -1, 1)));
      CHECK(ray_contains(r, qv(-2, 1, -3, 2)));
      CHECK(ray_contains(r, qv(-11, 5, -8, 5)));
      CHECK_FALSE(ray_contains(r, qv(3, 1, 1, 1)));
    }
  }
  CHECK(found);

  // directions at v3 match the discrete recursion in the frame of P0
  auto model = discrete_rays(3, 8);
  NormalForm nf = normal_form(MarkovTriangle{});
  QVec v3 = qv(-1, 1, -1, 1);
  for (const StructureRay& r : rays) {
    if (!ray_contains(r, v3)) continue;
    for (const QVec& end : {r.base, r.tip}) {
      if (end == v3) continue;
      QVec d = end - v3;
      Vec img = primitive(QVec{Rat(nf.rho[0].x) * d.x + Rat(nf.rho[0].y) * d.y,
                               Rat(nf.rho[1].x) * d.x + Rat(nf.rho[1].y) * d.y});
      bool known = false;
      for (const Vec& m : model) known = known || img == m || img == -m;
      CHECK(known);
    }
  }

  // each sufficiently deep fresh vertex meets exactly two incoming rays
  for (const Chamber& c : reg) {
    if (c.depth < 1 || c.depth > 1) continue;
    int incoming = 0;
    for (const StructureRay& r : rays)
      if (ray_contains(r, c.apex()) && !(r.base == c.apex())) ++incoming;
    CHECK(incoming == 2);
  }
}

TEST_CASE("slope sandwich for fan edges") {
  // far edges of the fans, measured in the base frame, point strictly
  // between the roots of q^2 - 3q + 1 = 0
  NormalForm nf = normal_form(MarkovTriangle{});
  auto d4 = build_diag(4);
  QVec v3 = qv(-1, 1, -1, 1);
  for (const Chamber& c : d4) {
    if (c.depth == 0) continue;
    // the far edge is the apex edge avoiding the fan vertex
    int m = c.triangle[0] == v3 ? 1 : 0;
    QVec d = c.triangle[m] - c.triangle[2];
    Vec img = primitive(QVec{Rat(nf.rho[0].x) * d.x + Rat(nf.rho[0].y) * d.y,
                             Rat(nf.rho[1].x) * d.x + Rat(nf.rho[1].y) * d.y});
    if (img.x < 0) img = -img;
    CHECK(badlands_test(3, img) == BadlandsPosition::Inside);
  }
}

TEST_CASE("shrinking descent") {
  CHECK_THROWS_AS(shrinking_witness(qv(0, 1, 0, 1), 5), PointInsideV);
  CHECK_THROWS_AS(shrinking_witness(qv(5, 1, 5, 1), 5), std::invalid_argument);

  // a point on the central diagonal sits in the base cone straight away
  CHECK(shrinking_witness(qv(-2, 1, -2, 1), 5).empty());

  // long descents need points near a limit of fan joints. The joints of
  // the first fan lie on the line (0,1) + t(-4,-5) at parameters given by
  // ratios of consecutive Fibonacci numbers, accumulating at t = 1/phi.
  // A good rational approximation of the limit, nudged off the line away
  // from the chambers, rides the fan for many steps before hitting a cone.
  Rat t = rat(6765, 10946);
  QVec x{Rat(-4 * t - rat(5, 100000000)), Rat(1 - 5 * t + rat(4, 100000000))};
  auto w = shrinking_witness(x, 40);
  REQUIRE(w.size() >= 6);
  CHECK(w[0].triple == MarkovTriple{1, 1, 2});
  CHECK(w[1].triple == MarkovTriple{1, 2, 5});
  CHECK(w[2].triple == MarkovTriple{1, 5, 13});
  // every step at least halves the edge length (quarters its square)
  for (std::size_t i = 1; i < w.size(); ++i)
    CHECK(4 * w[i].f2 <= w[i - 1].f2);
  // and the total decay beats three orders of magnitude in length
  CHECK(1000000 * w.back().f2 < w.front().f2);
}
