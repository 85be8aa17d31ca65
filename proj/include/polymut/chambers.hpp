// Glued chamber complexes: fans of mutated triangles around a chosen vertex,
// the recursive chamber region with its Markov-tree structure, rational
// bounding triangles, the chart atlas with three focus-focus singularities,
// structure rays, asymptotic cones and the shrinking descent for points
// outside the chamber union.

#ifndef POLYMUT_CHAMBERS_HPP
#define POLYMUT_CHAMBERS_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "polymut/fano.hpp"
#include "polymut/scattering.hpp"

namespace polymut {

struct DepthExceeded : std::domain_error {
  DepthExceeded() : std::domain_error("requested depth exceeds the bound") {}
};
struct NonParallelEdges : std::logic_error {
  NonParallelEdges()
      : std::logic_error("glue_map: mutated edge not parallel to target") {}
};
struct PointInsideV : std::domain_error {
  PointInsideV() : std::domain_error("point lies inside the chamber union") {}
};

// ---------------------------------------------------------------------------
// Exact plane geometry over the rationals.

inline Rat orient(const QVec& a, const QVec& b, const QVec& c) {
  return wedge(b - a, c - a);
}

inline bool qvec_less(const QVec& a, const QVec& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

using QPoly = std::vector<QVec>;

// Keep the part of a convex polygon with side*orient(a,b,p) >= 0.
inline QPoly clip_halfplane(const QPoly& poly, const QVec& a, const QVec& b,
                            int side) {
  QPoly out;
  std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const QVec& p = poly[i];
    const QVec& q = poly[(i + 1) % n];
    Rat hp = Rat(side) * orient(a, b, p);
    Rat hq = Rat(side) * orient(a, b, q);
    if (hp >= 0) out.push_back(p);
    if ((hp > 0 && hq < 0) || (hp < 0 && hq > 0)) {
      Rat t = hp / (hp - hq);
      out.push_back(p + t * (q - p));
    }
  }
  return out;
}

inline QPoly dedup_cycle(QPoly poly) {
  QPoly out;
  for (const QVec& p : poly)
    if (out.empty() || !(out.back() == p)) out.push_back(p);
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

inline QPoly triangle_intersection(const std::array<QVec, 3>& A,
                                   const std::array<QVec, 3>& B) {
  int side = sign(orient(B[0], B[1], B[2]).get_num());
  QPoly poly(A.begin(), A.end());
  for (int e = 0; e < 3 && !poly.empty(); ++e)
    poly = clip_halfplane(poly, B[e], B[(e + 1) % 3], side);
  return dedup_cycle(std::move(poly));
}

enum class FaceMeet { Empty, Vertex, Edge, Improper };

// Intersection of two chamber triangles, classified against the requirement
// that chambers meet along shared faces: nothing, a common vertex, or a
// common full edge.
inline FaceMeet classify_meet(const std::array<QVec, 3>& A,
                              const std::array<QVec, 3>& B) {
  QPoly k = triangle_intersection(A, B);
  if (k.empty()) return FaceMeet::Empty;
  auto is_vertex_of = [](const std::array<QVec, 3>& t, const QVec& p) {
    return p == t[0] || p == t[1] || p == t[2];
  };
  bool flat = true;
  for (std::size_t i = 2; i < k.size(); ++i)
    if (orient(k[0], k[1], k[i]) != 0) flat = false;
  if (!flat) return FaceMeet::Improper;
  QVec lo = k[0], hi = k[0];
  for (const QVec& p : k) {
    if (qvec_less(p, lo)) lo = p;
    if (qvec_less(hi, p)) hi = p;
  }
  if (lo == hi)
    return (is_vertex_of(A, lo) && is_vertex_of(B, lo)) ? FaceMeet::Vertex
                                                        : FaceMeet::Improper;
  auto is_edge_of = [&](const std::array<QVec, 3>& t) {
    for (int e = 0; e < 3; ++e) {
      const QVec& p = t[e];
      const QVec& q = t[(e + 1) % 3];
      if ((p == lo && q == hi) || (p == hi && q == lo)) return true;
    }
    return false;
  };
  return (is_edge_of(A) && is_edge_of(B)) ? FaceMeet::Edge : FaceMeet::Improper;
}

inline bool contains_point(const std::array<QVec, 3>& tri, const QVec& p,
                           bool strict) {
  int side = sign(orient(tri[0], tri[1], tri[2]).get_num());
  for (int e = 0; e < 3; ++e) {
    Rat h = Rat(side) * orient(tri[e], tri[(e + 1) % 3], p);
    if (strict ? h <= 0 : h < 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Chambers.

// A chamber of the glued complex: a scaled-and-translated copy of its model
// Markov triangle. triangle[m] = S(model.vertex(m)); for depth >= 1 the
// vertex at slot 2 is the fresh vertex v_u of the chamber.
struct Chamber {
  MarkovTriangle model;
  AffineMap S;
  TreePath path;
  int depth = 0;
  std::array<QVec, 3> triangle;

  const QVec& apex() const { return triangle[2]; }
};

inline Chamber root_chamber(MarkovTriangle base = MarkovTriangle{}) {
  Chamber c;
  c.model = base;
  for (int m = 0; m < 3; ++m) c.triangle[m] = QVec(base.vertex(m));
  return c;
}

// The unique map x -> lambda*x + u, lambda > 0, sending the mutated image of
// E_i back onto E_i. The source edge is the edge of the mutated triangle
// avoiding the pivot vertex; lambda = a_i / (3*a_j*a_k - a_i).
inline AffineMap glue_map(const MarkovTriangle& Q, int i, int j) {
  MutationStep step = Q.mutate(i, j);
  const Vec& pivot = Q.vertex(3 - i - j);
  QVec sp, sq;
  bool found = false;
  for (int e = 0; e < 3; ++e) {
    auto [p, q] = step.result.edge(e);
    if (!(p == pivot) && !(q == pivot)) {
      sp = QVec(p);
      sq = QVec(q);
      found = true;
    }
  }
  if (!found) throw NonParallelEdges{};
  auto [ta, tb] = Q.edge(i);
  QVec dsrc = sq - sp, dtgt = QVec(tb) - QVec(ta);
  if (wedge(dsrc, dtgt) != 0) throw NonParallelEdges{};
  // lattice lengths of the two parallel integer edges
  Int len_src = primitive_factor(Vec{sq.x.get_num() - sp.x.get_num(),
                                     sq.y.get_num() - sp.y.get_num()}).first;
  Int len_tgt = primitive_factor(tb - ta).first;
  Rat lambda = rat(len_tgt, len_src);
  // direction-preserving pairing: sp maps to the endpoint of E_i from which
  // the edge runs the same way as (sq - sp)
  QVec a0 = QVec(ta), b0 = QVec(tb);
  if (dot(b0 - a0, dsrc) < 0) std::swap(a0, b0);
  AffineMap S = AffineMap::scale_translate(lambda, a0 - lambda * sp);
  if (!(S.apply(sq) == b0)) throw NonParallelEdges{};
  return S;
}

inline Chamber successor(const Chamber& fu, Branch br) {
  int i = br == Branch::ReplaceA1 ? 0 : 1;
  MutationStep step = fu.model.mutate(i, 1 - i);
  AffineMap g = glue_map(fu.model, i, 1 - i);
  if (!(g.scale() > 0 && g.scale() * 2 <= 1))
    throw std::logic_error("successor: scale outside (0, 1/2]");
  Chamber out;
  out.model = step.result;
  out.S = fu.S.compose(g);
  out.path = fu.path;
  out.path.push_back(br);
  out.depth = fu.depth + 1;
  for (int m = 0; m < 3; ++m)
    out.triangle[m] = out.S.apply(QVec(out.model.vertex(m)));
  return out;
}

// Region(P, v): all chambers of depth <= depth, breadth first. The chosen
// vertex v is the slot-2 vertex of the base triangle.
inline std::vector<Chamber> build_region(int depth,
                                         MarkovTriangle base = MarkovTriangle{},
                                         int depth_bound = 16) {
  if (depth < 0 || depth > depth_bound) throw DepthExceeded{};
  std::vector<Chamber> out;
  out.push_back(root_chamber(base));
  std::size_t level_begin = 0;
  for (int d = 0; d < depth; ++d) {
    std::size_t level_end = out.size();
    for (std::size_t idx = level_begin; idx < level_end; ++idx)
      for (Branch br : {Branch::ReplaceA1, Branch::ReplaceA2})
        out.push_back(successor(out[idx], br));
    level_begin = level_end;
  }
  return out;
}

// Diag_k(P, v): the 2k+1 triangles of the fan around v. Each chain step is
// the unique successor still incident to v.
inline std::vector<Chamber> build_diag(int k,
                                       MarkovTriangle base = MarkovTriangle{},
                                       int depth_bound = 16) {
  if (k < 0 || k > depth_bound) throw DepthExceeded{};
  std::vector<Chamber> out;
  Chamber root = root_chamber(base);
  QVec v = QVec(base.vertex(2));
  out.push_back(root);
  for (Branch first : {Branch::ReplaceA1, Branch::ReplaceA2}) {
    if (k == 0) break;
    Chamber cur = successor(root, first);
    out.push_back(cur);
    for (int j = 2; j <= k; ++j) {
      std::optional<Chamber> next;
      for (Branch br : {Branch::ReplaceA1, Branch::ReplaceA2}) {
        Chamber cand = successor(cur, br);
        bool incident = cand.triangle[0] == v || cand.triangle[1] == v ||
                        cand.triangle[2] == v;
        if (!incident) continue;
        if (next) throw std::logic_error("build_diag: ambiguous chain step");
        next = std::move(cand);
      }
      if (!next) throw std::logic_error("build_diag: chain step not found");
      cur = *next;
      out.push_back(cur);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bounding triangles.

// Conservative rational triangle containing the chamber and all of its
// descendants. In the normal-form frame the fan beyond the vertical edge is
// swept by a chain of horizontal segments; the first has length lambda times
// the horizontal edge image and each later one shrinks by a further factor of
// at most 1/5, so the total run is bounded by s*a2*lambda*5/4. The bounding side
// joins the far frame vertex to the end of that run, and symmetrically for
// the other branch; the apex is the rational intersection of the two sides.
inline std::array<QVec, 3> bounding_region(const Chamber& fu) {
  NormalForm nf = normal_form(fu.model);
  QVec v{Rat(nf.vertices[2].x), Rat(nf.vertices[2].y)};
  Rat h2 = Rat(nf.s * fu.model.a(0));  // vertical edge image length
  Rat h1 = Rat(nf.s * fu.model.a(1));  // horizontal edge image length
  Rat run2 = h1 * glue_map(fu.model, 0, 1).scale() * rat(5, 4);
  Rat run1 = h2 * glue_map(fu.model, 1, 0).scale() * rat(5, 4);
  QVec c2{Rat(v.x - run2), v.y}, d2{run2, h2};
  QVec c1{v.x, Rat(v.y - run1)}, d1{h1, run1};
  Rat t = wedge(d1, c1 - c2) / wedge(d1, d2);
  QVec apex = c2 + t * d2;
  // back through the frame: solve rho*(p) = apex
  Int det = wedge(nf.rho[0], nf.rho[1]);
  QVec apex_model{Rat(nf.rho[1].y * apex.x - nf.rho[0].y * apex.y) / det,
                  Rat(nf.rho[0].x * apex.y - nf.rho[1].x * apex.x) / det};
  return {fu.triangle[0], fu.triangle[1], fu.S.apply(apex_model)};
}

inline Rat squared_diameter(const std::array<QVec, 3>& tri) {
  Rat best = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) best = std::max(best, norm2(tri[i] - tri[j]));
  return best;
}

// ---------------------------------------------------------------------------
// Asymptotic cones.

// Cone at the apex of a chamber, bounded by the two irrational asymptote
// slopes of the fan. Stored as the affine map into the model normal-form
// frame based at the apex; membership there is d.x, d.y < 0 together with
// d.x^2 - s*d.x*d.y + d.y^2 < 0, the sign test placing the slope strictly
// between the roots of q^2 - s*q + 1.
struct ConeRegion {
  QVec apex;
  Int s;
  AffineMap frame;
};

inline ConeRegion cone_of(const Chamber& fu) {
  NormalForm nf = normal_form(fu.model);
  AffineMap rho{Rat(nf.rho[0].x), Rat(nf.rho[0].y), Rat(nf.rho[1].x),
                Rat(nf.rho[1].y),
                QVec{Rat(-nf.vertices[2].x), Rat(-nf.vertices[2].y)}};
  return {fu.triangle[2], nf.s, rho.compose(fu.S.inverse())};
}

inline bool in_cone(const ConeRegion& c, const QVec& p, bool strict = true) {
  QVec d = c.frame.apply(p);
  Rat q = d.x * d.x - c.s * d.x * d.y + d.y * d.y;
  if (strict) return d.x < 0 && d.y < 0 && q < 0;
  return d.x <= 0 && d.y <= 0 && q <= 0;
}

inline std::vector<ConeRegion> cones_and_W(const std::vector<Chamber>& region) {
  std::vector<ConeRegion> out;
  out.reserve(region.size());
  for (const Chamber& fu : region) out.push_back(cone_of(fu));
  return out;
}

// Does the open segment/cone intersection exist? Exact: clip the parameter
// interval by the two linear frame constraints, then minimize the quadratic.
inline bool segment_meets_cone(const ConeRegion& c, const QVec& A,
                               const QVec& B) {
  QVec da = c.frame.apply(A);
  QVec db = c.frame.apply(B);
  Rat lo = 0, hi = 1;
  for (auto [va, vb] : {std::pair{da.x, db.x}, std::pair{da.y, db.y}}) {
    Rat d = vb - va;  // constraint va + t*d < 0
    if (d == 0) {
      if (va >= 0) return false;
      continue;
    }
    Rat t = -va / d;
    if (d > 0)
      hi = std::min(hi, t);
    else
      lo = std::max(lo, t);
  }
  if (!(lo < hi)) return false;
  // Q(t) = q2 t^2 + q1 t + q0 on [lo, hi]
  QVec e = db - da;
  Rat q2 = e.x * e.x - c.s * e.x * e.y + e.y * e.y;
  Rat q1 = 2 * da.x * e.x - c.s * (da.x * e.y + da.y * e.x) + 2 * da.y * e.y;
  Rat q0 = da.x * da.x - c.s * da.x * da.y + da.y * da.y;
  auto val = [&](const Rat& t) { return Rat(q2 * t * t + q1 * t + q0); };
  Rat best = std::min(val(lo), val(hi));
  if (q2 > 0) {
    Rat tstar = -q1 / (2 * q2);
    if (lo < tstar && tstar < hi) best = std::min(best, val(tstar));
  }
  return best < 0;
}

inline bool triangle_meets_cone(const ConeRegion& c,
                                const std::array<QVec, 3>& tri) {
  for (const QVec& p : tri)
    if (in_cone(c, p)) return true;
  for (int e = 0; e < 3; ++e)
    if (segment_meets_cone(c, tri[e], tri[(e + 1) % 3])) return true;
  return contains_point(tri, c.apex, true);
}

// ---------------------------------------------------------------------------
// Chart atlas.

// The affine manifold carries one focus-focus singularity per edge of the
// central polygon, placed at the midpoint. Charts cut along a ray from each
// singular point running in the edge direction; cuts avoid the vertex at
// slot 1 of p0 and exactly one passes through the slot-2 vertex.
struct ChartAtlas {
  FanoPolygon central;
  std::array<std::pair<Vec, Vec>, 3> edge;  // endpoints of edge i
  std::array<QVec, 3> singular;             // midpoints
  std::array<Vec, 3> cut_dir;               // cut ray direction from singular[i]
  std::array<Vec, 3> leg;                   // leg direction at vertex i
  std::vector<std::pair<Vec, Vec>> charts;  // the six (v, v') pairs
};

inline ChartAtlas build_atlas() {
  ChartAtlas a{p0(), {}, {}, {}, {}, {}};
  for (int i = 0; i < 3; ++i) {
    Vec p = a.central.vertex(i);
    Vec q = a.central.vertex(i + 1);
    a.edge[i] = {p, q};
    a.singular[i] = (QVec(p) + QVec(q)) * rat(1, 2);
    a.leg[i] = p;  // radial legs
    for (int j = 0; j < 3; ++j)
      if (j != i) a.charts.push_back({p, a.central.vertex(j)});
  }
  // One cut per singularity, along the edge line through an endpoint:
  // never through (1,0), through (0,1) only once.
  Vec v1{1, 0}, v2{0, 1};
  bool used_v2 = false;
  for (int i = 0; i < 3; ++i) {
    auto [p, q] = a.edge[i];
    Vec toward = p;
    if (toward == v1 || (toward == v2 && used_v2)) toward = q;
    if (toward == v2) used_v2 = true;
    a.cut_dir[i] = primitive(QVec(toward) - a.singular[i]);
  }
  return a;
}

// Shear across the line of edge i, developing the affine structure from the
// chart at from_vertex into the chart at the opposite endpoint. Points on
// the edge line are fixed; the linear part is unipotent.
inline AffineMap edge_transition(const ChartAtlas& a, int i,
                                 const Vec& from_vertex) {
  auto [p, q] = a.edge[i];
  if (!(from_vertex == p || from_vertex == q))
    throw std::invalid_argument("edge_transition: vertex not on the edge");
  Vec to = from_vertex == p ? q : p;
  Vec e = primitive(to - from_vertex);
  Vec n = -edge_data_of(p, q).normal;  // outward
  Rat c = dot(n, a.singular[i]);
  return AffineMap{Rat(1 + e.x * n.x), Rat(e.x * n.y), Rat(e.y * n.x),
                   Rat(1 + e.y * n.y), QVec{Rat(-c * e.x), Rat(-c * e.y)}};
}

// ---------------------------------------------------------------------------
// The identified chamber complex over all three vertices.

struct TElement {
  std::array<QVec, 3> canonical;  // sorted vertices in the canonical development
  int depth = 0;
  std::vector<std::pair<int, std::size_t>> reps;  // (root index, region index)
};

struct TComplex {
  ChartAtlas atlas;
  std::array<MarkovTriangle, 3> roots;          // slot 2 = central vertex i
  std::array<std::vector<Chamber>, 3> regions;  // Region(P, v_i)
  std::vector<TElement> elements;
};

inline MarkovTriangle vertex_root(const FanoPolygon& P, int i) {
  return MarkovTriangle{{P.vertex(i + 1), P.vertex(i + 2), P.vertex(i)},
                        markov_root()};
}

// Index of the central edge crossed by the first step of a chamber path.
inline int first_edge_index(const ChartAtlas& a, const MarkovTriangle& base,
                            Branch first) {
  int i = first == Branch::ReplaceA1 ? 0 : 1;
  auto [p, q] = base.edge(i);
  for (int e = 0; e < 3; ++e) {
    auto [x, y] = a.edge[e];
    if ((x == p && y == q) || (x == q && y == p)) return e;
  }
  throw std::logic_error("first_edge_index: not an edge of the central polygon");
}

// Canonical development of a chamber: shear across the crossed edge when the
// home vertex is not the lexicographically smaller endpoint, then sort.
inline std::array<QVec, 3> canonical_triangle(const ChartAtlas& a,
                                              const MarkovTriangle& base,
                                              const Chamber& fu) {
  std::array<QVec, 3> tri = fu.triangle;
  if (fu.depth > 0) {
    int e = first_edge_index(a, base, fu.path.front());
    Vec home = base.vertex(2);
    auto [p, q] = a.edge[e];
    Vec other = home == p ? q : p;
    if (lex_less(other, home)) {
      AffineMap t = edge_transition(a, e, home);
      for (QVec& v : tri) v = t.apply(v);
    }
  }
  std::sort(tri.begin(), tri.end(), qvec_less);
  return tri;
}

inline TComplex build_T(int depth, int depth_bound = 16) {
  if (depth < 0 || depth > depth_bound) throw DepthExceeded{};
  TComplex out{build_atlas(), {}, {}, {}};
  struct KeyLess {
    bool operator()(const std::array<QVec, 3>& a,
                    const std::array<QVec, 3>& b) const {
      for (int i = 0; i < 3; ++i) {
        if (qvec_less(a[i], b[i])) return true;
        if (qvec_less(b[i], a[i])) return false;
      }
      return false;
    }
  };
  std::map<std::array<QVec, 3>, std::size_t, KeyLess> seen;
  for (int r = 0; r < 3; ++r) {
    out.roots[r] = vertex_root(out.atlas.central, r);
    out.regions[r] = build_region(depth, out.roots[r]);
    for (std::size_t idx = 0; idx < out.regions[r].size(); ++idx) {
      const Chamber& fu = out.regions[r][idx];
      auto key = canonical_triangle(out.atlas, out.roots[r], fu);
      auto it = seen.find(key);
      if (it == seen.end()) {
        it = seen.emplace(key, out.elements.size()).first;
        out.elements.push_back({key, fu.depth, {}});
      }
      if (out.elements[it->second].depth != fu.depth)
        throw std::logic_error("build_T: identified chambers disagree on depth");
      out.elements[it->second].reps.push_back({r, idx});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Structure rays.

struct StructureRay {
  QVec base;      // end nearer the origin
  QVec tip;       // far end reached within the built depth
  Vec direction;  // primitive, from base toward tip
  std::vector<std::pair<std::size_t, int>> edges;  // (chamber index, edge slot)
};

// Maximal unions of collinear, contiguous chamber edges.
inline std::vector<StructureRay> structure_rays(
    const std::vector<Chamber>& region) {
  struct LineKey {
    Vec dir;
    Rat off;
    bool operator<(const LineKey& o) const {
      if (!(dir == o.dir)) return lex_less(dir, o.dir);
      return off < o.off;
    }
  };
  struct Piece {
    Rat t0, t1;  // along dir, t0 < t1
    QVec p0, p1;
    std::size_t chamber;
    int slot;
  };
  std::map<LineKey, std::vector<Piece>> lines;
  for (std::size_t ci = 0; ci < region.size(); ++ci) {
    const auto& tri = region[ci].triangle;
    for (int e = 0; e < 3; ++e) {
      QVec p = tri[(e + 1) % 3], q = tri[(e + 2) % 3];
      Vec dir = primitive(q - p);
      if (dir.x < 0 || (dir.x == 0 && dir.y < 0)) dir = -dir;
      LineKey key{dir, wedge(QVec(dir), p)};
      Rat tp = dot(dir, p), tq = dot(dir, q);
      Piece piece = tp < tq ? Piece{tp, tq, p, q, ci, e}
                            : Piece{tq, tp, q, p, ci, e};
      lines[key].push_back(std::move(piece));
    }
  }
  std::vector<StructureRay> out;
  for (auto& [key, pieces] : lines) {
    std::sort(pieces.begin(), pieces.end(),
              [](const Piece& a, const Piece& b) { return a.t0 < b.t0; });
    std::size_t i = 0;
    while (i < pieces.size()) {
      std::size_t j = i;
      Rat hi = pieces[i].t1;
      QVec hip = pieces[i].p1;
      while (j + 1 < pieces.size() && pieces[j + 1].t0 <= hi) {
        ++j;
        if (pieces[j].t1 > hi) {
          hi = pieces[j].t1;
          hip = pieces[j].p1;
        }
      }
      StructureRay ray;
      ray.base = pieces[i].p0;
      ray.tip = hip;
      ray.direction = key.dir;
      if (norm2(ray.tip) < norm2(ray.base) ||
          (norm2(ray.tip) == norm2(ray.base) && qvec_less(ray.tip, ray.base)))
        std::swap(ray.base, ray.tip);
      ray.direction = primitive(ray.tip - ray.base);
      for (std::size_t m = i; m <= j; ++m)
        ray.edges.push_back({pieces[m].chamber, pieces[m].slot});
      out.push_back(std::move(ray));
      i = j + 1;
    }
  }
  return out;
}

inline bool ray_contains(const StructureRay& r, const QVec& p) {
  if (wedge(QVec(r.direction), p - r.base) != 0) return false;
  Rat t = dot(r.direction, p);
  Rat t0 = dot(r.direction, r.base), t1 = dot(r.direction, r.tip);
  return t0 <= t && t <= t1;
}

// ---------------------------------------------------------------------------
// Shrinking descent.

struct ShrinkStep {
  MarkovTriple triple;  // model triple of the chamber whose edge shrinks
  Rat f2;               // squared Euclidean length of the shrinking edge
};

// Descends the chamber tree toward a point outside the chamber union,
// reporting the squared length of the apex edge not shared with the next
// chamber. Stops early when the point falls into an asymptotic cone.
inline std::vector<ShrinkStep> shrinking_witness(
    const QVec& x, int steps, MarkovTriangle base = MarkovTriangle{}) {
  std::vector<ShrinkStep> out;
  Chamber cur = root_chamber(base);
  if (contains_point(cur.triangle, x, false)) throw PointInsideV{};
  for (int i = 0; i < steps; ++i) {
    ConeRegion c = cone_of(cur);
    QVec d = c.frame.apply(x);
    if (d.x >= 0 && d.y >= 0)
      throw std::invalid_argument(
          "shrinking_witness: point not over a tracked edge of the base");
    Branch br;
    if (d.x < 0 && d.y >= 0) {
      br = Branch::ReplaceA1;
    } else if (d.y < 0 && d.x >= 0) {
      br = Branch::ReplaceA2;
    } else {
      BadlandsPosition pos = badlands_test(c.s.get_si(), primitive(-d));
      if (pos == BadlandsPosition::Inside) break;  // inside the cone
      br = pos == BadlandsPosition::Below ? Branch::ReplaceA1
                                          : Branch::ReplaceA2;
    }
    int slot = br == Branch::ReplaceA1 ? 0 : 1;
    // shrinking edge: the apex edge of cur not crossed by the descent.
    // The base chamber is skipped; the reported sequence starts with the
    // first proper successor, whose shrinking edge dominates the rest.
    if (cur.depth > 0) {
      auto [fp, fq] = cur.model.edge(1 - slot);
      Rat f2 = norm2(cur.S.apply(QVec(fp)) - cur.S.apply(QVec(fq)));
      out.push_back({cur.model.triple(), f2});
    }
    cur = successor(cur, br);
    if (contains_point(cur.triangle, x, false)) throw PointInsideV{};
  }
  return out;
}

}  // namespace polymut

#endif  // POLYMUT_CHAMBERS_HPP
