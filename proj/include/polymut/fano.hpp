// Fano polygons: edge data, weights, combinatorial mutation, normal-vector
// transport, normal forms, sublattice mutation factors, singularity content,
// and the correspondence between Markov triples and labeled triangles.

#ifndef POLYMUT_FANO_HPP
#define POLYMUT_FANO_HPP

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "polymut/lattice.hpp"
#include "polymut/laurent.hpp"
#include "polymut/markov.hpp"

namespace polymut {

struct NotFano : std::domain_error {
  explicit NotFano(const char* what) : std::domain_error(what) {}
};
struct NotATriangle : std::domain_error {
  NotATriangle() : std::domain_error("operation requires a triangle") {}
};
struct NotMutable : std::domain_error {
  NotMutable() : std::domain_error("edge not mutable: lattice length < index") {}
};
struct SharedEdge : std::domain_error {
  SharedEdge() : std::domain_error("mutating and fixed edge coincide") {}
};
struct BudgetExhausted : std::runtime_error {
  BudgetExhausted() : std::runtime_error("search budget exhausted") {}
};

// Primitive inner normal, local index, lattice length of an edge.
struct EdgeData {
  Vec normal;
  Int index;   // r: <normal, p> = -r on the edge
  Int length;  // lattice points on the edge minus one

  bool operator==(const EdgeData&) const = default;
};

inline EdgeData edge_data_of(const Vec& a, const Vec& b) {
  Vec d = b - a;
  auto [len, dp] = primitive_factor(d);
  Vec w = rot90(dp);
  Int h = dot(w, a);
  if (h > 0) {
    w = -w;
    h = -h;
  }
  if (h == 0) throw NotFano{"edge through the origin"};
  return {w, -h, len};
}

// Convex lattice polygon with primitive vertices and the origin strictly
// interior, stored counterclockwise with the lexicographically smallest
// vertex first.
class FanoPolygon {
 public:
  explicit FanoPolygon(std::vector<Vec> verts) : v_(std::move(verts)) {
    if (v_.size() < 3) throw NotFano{"fewer than three vertices"};
    Int orient = 0;
    for (std::size_t i = 0; i < v_.size(); ++i) {
      const Vec& a = v_[i];
      const Vec& b = v_[(i + 1) % v_.size()];
      Int w = wedge(a, b);
      if (orient == 0) orient = sign(w);
    }
    if (orient < 0) std::reverse(v_.begin(), v_.end());
    std::size_t lo = 0;
    for (std::size_t i = 1; i < v_.size(); ++i)
      if (lex_less(v_[i], v_[lo])) lo = i;
    std::rotate(v_.begin(), v_.begin() + lo, v_.end());
    for (std::size_t i = 0; i < v_.size(); ++i) {
      const Vec& a = v_[i];
      const Vec& b = v_[(i + 1) % v_.size()];
      if (primitive(a) != a) throw NotFano{"non-primitive vertex"};
      if (wedge(a, b) <= 0) throw NotFano{"origin not strictly interior"};
      if (wedge(b - a, v_[(i + 2) % v_.size()] - b) <= 0)
        throw NotFano{"not strictly convex"};
    }
  }

  const std::vector<Vec>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  const Vec& vertex(std::size_t i) const { return v_[i % v_.size()]; }

  EdgeData edge_data(std::size_t i) const {
    return edge_data_of(vertex(i), vertex(i + 1));
  }

  bool operator==(const FanoPolygon& o) const { return v_ == o.v_; }

 private:
  std::vector<Vec> v_;
};

inline FanoPolygon p0() {
  return FanoPolygon{{{1, 0}, {0, 1}, {-1, -1}}};
}

// The unique coprime positive (b1,b2,b3) with sum b_i v_i = 0, in vertex
// order of the given triangle.
inline std::array<Int, 3> weights(const Vec& v1, const Vec& v2, const Vec& v3) {
  std::array<Int, 3> b = {abs(wedge(v2, v3)), abs(wedge(v3, v1)),
                          abs(wedge(v1, v2))};
  Int g = gcd(gcd(b[0], b[1]), b[2]);
  if (g == 0) throw NotATriangle{};
  for (Int& x : b) x /= g;
  if (!((b[0] * v1 + b[1] * v2 + b[2] * v3).is_zero()))
    throw NotFano{"origin not interior to triangle"};
  return b;
}

inline std::array<Int, 3> weights(const FanoPolygon& P) {
  if (P.size() != 3) throw NotATriangle{};
  return weights(P.vertex(0), P.vertex(1), P.vertex(2));
}

// Eq-style transport of the inner normals under mutation at index i with the
// fixed edge j: w_i flips, every other normal picks up
// max{0, eps * (w_i ^ w_m)} * w_i where eps is chosen so w_j is unchanged.
inline std::array<Vec, 3> transform_normals(std::array<Vec, 3> ws, int i,
                                            int j) {
  if (i == j) throw SharedEdge{};
  int eps = -sign(wedge(ws[i], ws[j]));
  std::array<Vec, 3> out = ws;
  for (int m = 0; m < 3; ++m) {
    if (m == i) {
      out[m] = -ws[i];
      continue;
    }
    Int c = eps * wedge(ws[i], ws[m]);
    if (c > 0) out[m] = ws[m] + c * ws[i];
  }
  return out;
}

// General combinatorial mutation with weight w and factor conv{0, u},
// computed slice by slice: heights h >= 0 gain h copies of u, heights h < 0
// must shed |h| copies. Throws NotMutable when a negative slice is too short.
inline FanoPolygon mutate_general(const FanoPolygon& P, const Vec& w,
                                  const Vec& u) {
  if (dot(w, u) != 0) throw std::invalid_argument("factor not in w-perp");
  if (primitive(w) != w || primitive(u) != u)
    throw std::invalid_argument("w and u must be primitive");
  // Height range and a transversal direction m with <w, m> = 1.
  Int g, a, b;
  mpz_gcdext(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(), w.x.get_mpz_t(),
             w.y.get_mpz_t());
  Vec m{a, b};  // dot(w, m) = 1
  Int hmin = dot(w, P.vertex(0)), hmax = hmin;
  for (const Vec& v : P.vertices()) {
    Int h = dot(w, v);
    hmin = std::min(hmin, h);
    hmax = std::max(hmax, h);
  }
  // Slice [lo, hi] at height h in u-units: p = h*m + t*u, t in [lo, hi].
  auto slice = [&](const Int& h) -> std::pair<Rat, Rat> {
    std::optional<Rat> lo, hi;
    std::size_t n = P.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec& p = P.vertex(i);
      const Vec& q = P.vertex(i + 1);
      Int hp = dot(w, p), hq = dot(w, q);
      if ((hp < h && hq < h) || (hp > h && hq > h)) continue;
      auto account = [&](const QVec& pt) {
        // p = h*m + t*u, so t = wedge(m, p - h*m) / wedge(m, u)
        Rat t = wedge(QVec(m), pt - QVec(m) * Rat(h)) /
                Rat(wedge(m, u));
        if (!lo || t < *lo) lo = t;
        if (!hi || t > *hi) hi = t;
      };
      if (hp == hq) {
        account(QVec(p));
        account(QVec(q));
      } else {
        Rat s = rat(h - hp, hq - hp);
        account(QVec(p) + s * (QVec(q) - QVec(p)));
      }
    }
    return {*lo, *hi};
  };
  std::vector<Vec> pts;
  auto push = [&](const Int& h, const Rat& t) {
    QVec p = QVec(m) * Rat(h) + QVec(u) * t;
    if (p.x.get_den() == 1 && p.y.get_den() == 1)
      pts.push_back({p.x.get_num(), p.y.get_num()});
  };
  for (Int h = hmin; h <= hmax; ++h) {
    auto [lo, hi] = slice(h);
    Rat hi2 = hi + h;  // conv{0,u} contributes h*u at height h
    if (h < 0 && hi2 < lo) throw NotMutable{};
    push(h, lo);
    push(h, hi2);
  }
  std::vector<Vec> hull = convex_hull(std::move(pts));
  return FanoPolygon{std::move(hull)};
}

class MarkovTriangle;

// Result of a labeled mutation: the new triangle together with the weight
// and factor direction of the underlying birational change of variables.
struct MutationStep;

// A Markov triangle with labeled vertices: vertex(i) carries a_i of the
// sorted triple, edge E_i is the one disjoint from vertex(i).
class MarkovTriangle {
 public:
  MarkovTriangle() : v_{{{1, 0}, {0, 1}, {-1, -1}}} {}
  MarkovTriangle(std::array<Vec, 3> v, MarkovTriple t)
      : v_(std::move(v)), t_(std::move(t)) {
    std::array<Int, 3> b = weights(v_[0], v_[1], v_[2]);
    if (b[0] != t_.a1 * t_.a1 || b[1] != t_.a2 * t_.a2 ||
        b[2] != t_.a3 * t_.a3)
      throw NotFano{"labels do not match triangle weights"};
  }

  const Vec& vertex(int i) const { return v_[i]; }
  const MarkovTriple& triple() const { return t_; }

  // E_i = conv{v_j, v_k}, endpoints in index order.
  std::pair<Vec, Vec> edge(int i) const {
    return {v_[(i + 1) % 3], v_[(i + 2) % 3]};
  }

  EdgeData edge_data(int i) const {
    auto [a, b] = edge(i);
    return edge_data_of(a, b);
  }

  std::array<Vec, 3> normals() const {
    return {edge_data(0).normal, edge_data(1).normal, edge_data(2).normal};
  }

  FanoPolygon polygon() const {
    return FanoPolygon{{v_[0], v_[1], v_[2]}};
  }

  Int a(int i) const { return i == 0 ? t_.a1 : i == 1 ? t_.a2 : t_.a3; }

  // Mutation at E_i fixing E_j: v = common vertex of E_i and E_j, v' = the
  // opposite endpoint of E_j, u runs along E_i from v toward its other
  // endpoint. The new vertex is v' + <w_i, v'> u.
  MutationStep mutate(int i, int j) const;

  MutationStep mutate(Branch br) const;

  bool operator==(const MarkovTriangle& o) const {
    return v_ == o.v_ && t_ == o.t_;
  }

 private:
  std::array<Vec, 3> v_;
  MarkovTriple t_;
};

struct MutationStep {
  MarkovTriangle result;
  Vec w;  // weight: inner normal of the mutated edge
  Vec u;  // factor direction
};

inline MutationStep MarkovTriangle::mutate(int i, int j) const {
  if (i == j) throw SharedEdge{};
  int k = 3 - i - j;
  const Vec& v = v_[k];
  const Vec& vp = v_[i];
  EdgeData ed = edge_data(i);
  if (ed.length != ed.index) throw NotMutable{};
  Vec other = v_[j];  // endpoint of E_i distinct from v
  Vec u = primitive(other - v);
  Vec vnew = vp + dot(ed.normal, vp) * u;
  // New values: v keeps its seat with the Vieta conjugate (the new maximum),
  // v' inherits a_k, the fresh vertex inherits a_j.
  Int b = 3 * a(j) * a(k) - a(i);
  // Sort the three (value, vertex) pairs into label order a1 <= a2 <= a3.
  std::array<std::pair<Int, Vec>, 3> pairs = {std::make_pair(a(j), vnew),
                                              std::make_pair(a(k), vp),
                                              std::make_pair(b, v)};
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& x, const auto& y) {
                     return x.first < y.first;
                   });
  MarkovTriangle out;
  out.v_ = {pairs[0].second, pairs[1].second, pairs[2].second};
  out.t_ = MarkovTriple{pairs[0].first, pairs[1].first, pairs[2].first};
  return {std::move(out), ed.normal, u};
}

inline MutationStep MarkovTriangle::mutate(Branch br) const {
  return br == Branch::ReplaceA1 ? mutate(0, 1) : mutate(1, 0);
}

// Deterministic representative: P0 mutated along the canonical path of t.
inline MarkovTriangle triangle_from_triple(const MarkovTriple& t) {
  MarkovTriangle T;
  for (Branch b : path_from_root(t)) T = T.mutate(b).result;
  return T;
}

// Normal form: the sublattice embedding n -> (<w1,n>, <w2,n>) determined by
// the inner normals of E1 and E2; images of E1 and E2 are axis-parallel and
// the determinant is 3*a3.
struct NormalForm {
  std::array<Vec, 3> vertices;  // images of v1, v2, v3
  std::array<Vec, 2> rho;       // w1, w2
  Int s;                        // det = w1 ^ w2

  Vec map(const Vec& n) const { return {dot(rho[0], n), dot(rho[1], n)}; }
};

inline NormalForm normal_form(const MarkovTriangle& T) {
  std::array<Vec, 2> rho = {T.edge_data(0).normal, T.edge_data(1).normal};
  NormalForm nf;
  nf.rho = rho;
  nf.s = abs(wedge(rho[0], rho[1]));
  for (int i = 0; i < 3; ++i)
    nf.vertices[i] = Vec{dot(rho[0], T.vertex(i)), dot(rho[1], T.vertex(i))};
  return nf;
}

// Factors of the induced mutations of the normal-form image with respect to
// the ambient lattice: one segment per mutating edge, parallel to the edge
// image, of length s. Also reports R_i = r_i + r_i' for the index relation
// R_1 = s*r_2, R_2 = s*r_1.
struct SublatticeFactors {
  std::array<Vec, 2> factor;  // endpoint of conv{0, factor[i]} for E_{i+1}
  std::array<Int, 2> R;       // r_i + r_i' in the embedded picture
  Int s;
};

inline SublatticeFactors sublattice_mutation_factors(const MarkovTriangle& T) {
  NormalForm nf = normal_form(T);
  SublatticeFactors out;
  out.s = nf.s;
  for (int i = 0; i < 2; ++i) {
    int j = 1 - i;
    // Image of E_i joins the images of the other two vertices.
    Vec a = nf.vertices[(i + 1) % 3];
    Vec b = nf.vertices[(i + 2) % 3];
    Vec d = primitive(b - a);
    if (!lex_less(Vec{0, 0}, d)) d = -d;
    out.factor[i] = nf.s * d;
    // r_i in the embedded picture equals r_i in the source (Lemma-level
    // fact, asserted here), r_i' is read off the mutated image edge.
    Int r = edge_data_of(a, b).index;
    auto step = T.mutate(i, j);
    const MarkovTriangle& M = step.result;
    // The image G of E_i in the mutated triangle is the edge avoiding the
    // common vertex of E_i and E_j (which stays in place).
    const Vec& v = T.vertex(3 - i - j);
    Vec ga{}, gb{};
    bool found = false;
    for (int e = 0; e < 3; ++e) {
      auto [p, q] = M.edge(e);
      if (!(p == v) && !(q == v)) {
        ga = p;
        gb = q;
        found = true;
      }
    }
    if (!found) throw NotFano{"mutated triangle lost its base vertex"};
    Int rp = edge_data_of(nf.map(ga), nf.map(gb)).index;
    out.R[i] = r + rp;
  }
  return out;
}

struct SingularityContent {
  Int n{0};
  std::vector<ConeNormalForm> basket;  // sorted

  bool operator==(const SingularityContent&) const = default;
};

inline SingularityContent singularity_content(const FanoPolygon& P) {
  SingularityContent out;
  for (std::size_t i = 0; i < P.size(); ++i) {
    EdgeData ed = P.edge_data(i);
    Int m = ed.length / ed.index;
    Int l0 = ed.length % ed.index;
    out.n += m;
    if (l0 > 0) {
      // Residual cone over the trailing sub-segment of length l0.
      Vec a = P.vertex(i);
      Vec b = P.vertex(i + 1);
      Vec step = primitive(b - a);
      Vec p = a + (ed.length - l0) * step;
      out.basket.push_back(cone_normal_form(primitive(p), primitive(b), l0));
    }
  }
  std::sort(out.basket.begin(), out.basket.end());
  return out;
}

// Determinant +-1 lattice equivalence of polygons, by matching vertex pairs.
inline bool unimodular_equivalent(const FanoPolygon& A, const FanoPolygon& B) {
  if (A.size() != B.size()) return false;
  const Vec& a1 = A.vertex(0);
  Vec a2{};
  bool have = false;
  for (std::size_t i = 1; i < A.size() && !have; ++i)
    if (wedge(a1, A.vertex(i)) != 0) {
      a2 = A.vertex(i);
      have = true;
    }
  if (!have) return false;
  Int da = wedge(a1, a2);
  for (std::size_t i = 0; i < B.size(); ++i)
    for (std::size_t j = 0; j < B.size(); ++j) {
      if (i == j) continue;
      const Vec& b1 = B.vertex(i);
      const Vec& b2 = B.vertex(j);
      if (abs(wedge(b1, b2)) != abs(da)) continue;
      // Solve M a1 = b1, M a2 = b2 over the rationals; keep integer M with
      // det +-1 that maps the whole vertex set onto B's.
      Rat det(da);
      Rat m00 = (Rat(b1.x) * Rat(a2.y) - Rat(b2.x) * Rat(a1.y)) / det;
      Rat m01 = (Rat(b2.x) * Rat(a1.x) - Rat(b1.x) * Rat(a2.x)) / det;
      Rat m10 = (Rat(b1.y) * Rat(a2.y) - Rat(b2.y) * Rat(a1.y)) / det;
      Rat m11 = (Rat(b2.y) * Rat(a1.x) - Rat(b1.y) * Rat(a2.x)) / det;
      if (m00.get_den() != 1 || m01.get_den() != 1 || m10.get_den() != 1 ||
          m11.get_den() != 1)
        continue;
      Int d = m00.get_num() * m11.get_num() - m01.get_num() * m10.get_num();
      if (d != 1 && d != -1) continue;
      std::vector<Vec> img;
      img.reserve(A.size());
      for (const Vec& v : A.vertices())
        img.push_back({m00.get_num() * v.x + m01.get_num() * v.y,
                       m10.get_num() * v.x + m11.get_num() * v.y});
      try {
        if (FanoPolygon{img} == B) return true;
      } catch (const NotFano&) {
      }
    }
  return false;
}

// Bounded search for a mutation path from P back to P0. Returns the witness
// path (in descent order, from P toward P0) when found; an empty optional
// means provably not mutation-equivalent; throws BudgetExhausted when the
// invariant pre-filters pass but the descent exceeds the budget.
inline std::optional<std::vector<Branch>> mutation_equivalent_to_p0(
    const FanoPolygon& P, int budget = 64) {
  if (P.size() != 3) return std::nullopt;
  if (!(singularity_content(P) == SingularityContent{3, {}}))
    return std::nullopt;
  std::array<Int, 3> b = weights(P);
  std::sort(b.begin(), b.end());
  std::array<Int, 3> a;
  for (int i = 0; i < 3; ++i) {
    Int r = sqrt(b[i]);
    if (r * r != b[i]) return std::nullopt;
    a[i] = r;
  }
  if (!is_markov(a[0], a[1], a[2])) return std::nullopt;
  // Descend along the Markov tree: repeatedly undo the a3 vertex.
  std::vector<Vec> vs(P.vertices().begin(), P.vertices().end());
  std::array<Int, 3> bw = weights(P);
  std::array<Vec, 3> lv;
  std::array<std::pair<Int, Vec>, 3> pairs;
  for (int i = 0; i < 3; ++i) pairs[i] = {sqrt(bw[i]), vs[i]};
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& x, const auto& y) {
                     return x.first < y.first;
                   });
  for (int i = 0; i < 3; ++i) lv[i] = pairs[i].second;
  MarkovTriangle T{lv, MarkovTriple{pairs[0].first, pairs[1].first,
                                    pairs[2].first}};
  std::vector<Branch> path;
  int steps = 0;
  while (!T.triple().is_root()) {
    if (++steps > budget) throw BudgetExhausted{};
    // Undo: mutate at E3 fixing E1 replaces a3 by 3*a1*a2 - a3.
    MarkovTriple cur = T.triple();
    MarkovTriple par = cur.parent();
    T = T.mutate(2, 0).result;
    if (!(T.triple() == par)) throw NotFano{"descent left the Markov tree"};
    path.push_back(par.child(Branch::ReplaceA1) == cur ? Branch::ReplaceA1
                                                       : Branch::ReplaceA2);
  }
  if (!unimodular_equivalent(T.polygon(), p0())) return std::nullopt;
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace polymut

#endif  // POLYMUT_FANO_HPP
