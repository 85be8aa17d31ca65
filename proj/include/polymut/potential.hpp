// Superpotentials on the chamber complex: wall-crossing transport of the
// Hori-Vafa seed along chamber paths, broken-line enumeration by backward
// tracing, and the classical-period mirror test.

#ifndef POLYMUT_POTENTIAL_HPP
#define POLYMUT_POTENTIAL_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polymut/chambers.hpp"
#include "polymut/fano.hpp"
#include "polymut/laurent.hpp"

namespace polymut {

struct NonGenericBasepoint : std::domain_error {
  NonGenericBasepoint()
      : std::domain_error("basepoint lies on a wall or outside the chamber") {}
};

// One wall crossing: w is the primitive normal of the crossed wall, taken
// positive on the side the crossing starts from; u spans the wall.
struct WallCrossing {
  Vec w, u;
};

inline Laurent transport(Laurent f, const std::vector<WallCrossing>& path) {
  for (const WallCrossing& c : path) f = algebraic_mutate(f, c.w, c.u);
  return f;
}

// Crossing data accumulated by walking the chamber tree: each step crosses
// the mutated edge of the current model.
inline std::vector<WallCrossing> path_crossings(
    const std::vector<Branch>& path, MarkovTriangle base = MarkovTriangle{}) {
  std::vector<WallCrossing> out;
  out.reserve(path.size());
  MarkovTriangle T = base;
  for (Branch br : path) {
    MutationStep st = T.mutate(br);
    out.push_back({st.w, st.u});
    T = st.result;
  }
  return out;
}

inline Laurent chamber_potential(const Chamber& fu,
                                 MarkovTriangle base = MarkovTriangle{}) {
  return transport(Laurent::hori_vafa_p2(), path_crossings(fu.path, base));
}

// ---------------------------------------------------------------------------
// Broken lines.
//
// Straight-line pieces are traced backward from the basepoint through the
// developed picture of the chamber region. The wall set consists of the
// maximal structure rays, extended to infinity away from their bases, with
// the three central edge lines replaced by two unbounded half-lines from the
// focus-focus singularity at the edge midpoint. Each wall carries the
// binomial 1 + z^mbar with mbar pointing from infinity toward the base, that
// is toward the singularity on the central edge lines.

inline Int binom_int(const Int& e, int k) {
  Int num = 1;
  for (int i = 0; i < k; ++i) num *= e - i;
  for (int i = 2; i <= k; ++i) num /= i;
  return num;
}

// Integer 2x2 matrix acting on exponent vectors.
struct Mat2 {
  Int a = 1, b = 0, c = 0, d = 1;

  Vec apply(const Vec& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  Mat2 mul(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
            c * o.b + d * o.d};
  }
  Mat2 inverse() const {
    Int det = a * d - b * c;
    if (!(det == 1 || det == -1)) throw std::logic_error("Mat2: not unimodular");
    return {d / det, -b / det, -c / det, a / det};
  }
};

struct TropicalWall {
  QVec base;
  Vec out_dir;   // primitive, the unbounded direction away from base
  Vec mbar;      // monomial direction of the binomial, = -out_dir
  bool slab;     // lies on a central edge line (order-zero function)
  int cut = -1;  // singularity index when the support carries the chart cut
};

struct TropicalStructure {
  ChartAtlas atlas;
  std::vector<TropicalWall> walls;
  std::array<Vec, 3> seeds{Vec{1, 0}, Vec{0, 1}, Vec{-1, -1}};
  std::array<Mat2, 3> monodromy;  // shear around singularity i
};

inline TropicalStructure tropical_structure(int depth) {
  TropicalStructure ts{build_atlas()};
  // shear fixing edge i pointwise: I + e * n^T with <n, e> = 0
  for (int i = 0; i < 3; ++i) {
    auto [p, q] = ts.atlas.edge[i];
    Vec e = primitive(q - p);
    Vec n = -edge_data_of(p, q).normal;  // outward
    ts.monodromy[i] = Mat2{1 + e.x * n.x, e.x * n.y, e.y * n.x, 1 + e.y * n.y};
  }
  auto on_edge_line = [&](const QVec& pt, const Vec& dir) {
    for (int i = 0; i < 3; ++i) {
      auto [p, q] = ts.atlas.edge[i];
      Vec e = primitive(q - p);
      if (wedge(QVec(dir), QVec(e)) == 0 && wedge(QVec(e), pt - QVec(p)) == 0)
        return i;
    }
    return -1;
  };
  for (int i = 0; i < 3; ++i) {
    auto [p, q] = ts.atlas.edge[i];
    Vec e = primitive(q - p);
    for (Vec dir : {e, -e}) {
      TropicalWall w{ts.atlas.singular[i], dir, -dir, true, -1};
      if (dir == ts.atlas.cut_dir[i]) w.cut = i;
      ts.walls.push_back(w);
    }
  }
  for (const StructureRay& r : structure_rays(build_region(depth))) {
    if (on_edge_line(r.base, r.direction) >= 0) continue;  // covered above
    ts.walls.push_back({r.base, r.direction, -r.direction, false, -1});
  }
  return ts;
}

struct BendRecord {
  QVec at;
  std::size_t wall;
  int picks;  // 0 marks a plain cut crossing
  Int factor;
};

struct BrokenLine {
  Vec initial;               // order-zero seed direction
  Vec final_m;               // exponent of the end monomial
  Int coeff;
  std::vector<BendRecord> bends;  // ordered from the unbounded end to p
};

struct TraceOptions {
  int depth = 6;        // chamber depth of the wall set
  int pick_cap = 16;    // per-bend pick bound (working-window pruning)
  int max_events = 64;
  bool n_source = true;  // binomial normal positive on the pre-bend side
  int mono_sign = 1;     // orientation of the cut shear; 0 disables cuts
  bool mono_first = true;  // at a cut wall, shear before un-bending
  bool slab_only = false;  // forbid bends on non-slab rays
};

namespace detail {

struct TraceState {
  QVec q;
  Vec m;
  Int coeff;
  int bends = 0;
  int ray_order = 0;
  Mat2 acc;  // accumulated cut shear
  std::vector<BendRecord> log;
};

struct Hit {
  Rat t;
  std::size_t wall;
  QVec at;
  bool bad = false;  // joint, wall base, or travel along a wall
};

// Degenerate encounters (a wall base, a joint of two walls, travel along a
// wall line) prune the trace: a generic basepoint admits no broken line
// through them, and the two-basepoint invariance tests police the choice.
inline std::optional<Hit> first_hit(const TropicalStructure& ts, const QVec& q,
                                    const Vec& back) {
  std::optional<Hit> best;
  bool tie = false;
  for (std::size_t i = 0; i < ts.walls.size(); ++i) {
    const TropicalWall& w = ts.walls[i];
    Rat den = wedge(QVec(back), QVec(w.out_dir));
    QVec rel = w.base - q;
    if (den == 0) {
      if (wedge(QVec(back), rel) == 0)
        return Hit{Rat(0), i, q, true};  // runs along the wall line
      continue;
    }
    Rat t = wedge(rel, QVec(w.out_dir)) / den;
    Rat tau = wedge(rel, QVec(back)) / den;
    if (t <= 0 || tau < 0) continue;
    bool base_hit = tau == 0;
    if (best && t == best->t) tie = true;
    if (!best || t < best->t) {
      best = Hit{t, i, q + t * QVec(back), base_hit};
      tie = false;
    } else if (base_hit && best && t == best->t) {
      best->bad = true;
    }
  }
  if (best && tie) best->bad = true;
  return best;
}

inline void trace(const TropicalStructure& ts, const TraceOptions& opt, int K,
                  TraceState st, std::vector<BrokenLine>& out) {
  if (st.coeff == 0) return;
  if ((int)st.log.size() > opt.max_events) return;
  Vec back = -st.m;
  std::optional<Hit> hit = first_hit(ts, st.q, back);
  if (hit && hit->bad) return;
  if (!hit) {
    for (const Vec& d : ts.seeds) {
      if (st.m == st.acc.apply(d)) {
        BrokenLine bl{d, {}, st.coeff, st.log};
        std::reverse(bl.bends.begin(), bl.bends.end());
        out.push_back(std::move(bl));
      }
    }
    return;
  }
  const TropicalWall& w = ts.walls[hit->wall];
  bool is_cut = opt.mono_sign != 0 && w.cut >= 0;
  // orientation of the shear: advance the accumulated chart when the
  // backward trace passes to the far side of the cut
  Mat2 shear;
  if (is_cut) {
    const Mat2& M = ts.monodromy[w.cut];
    Vec n0{-w.out_dir.y, w.out_dir.x};
    int side = sign(dot(n0, back)) * opt.mono_sign;
    shear = side > 0 ? M : M.inverse();
  }
  for (int k = 0; k <= opt.pick_cap; ++k) {
    if (k > 0 && opt.slab_only && !w.slab) break;
    if (st.bends + (k > 0 ? 1 : 0) > K) break;
    int ray_order = st.ray_order + (w.slab ? 0 : k);
    if (ray_order > K) break;
    Vec m_cur = st.m;
    if (is_cut && opt.mono_first) m_cur = shear.apply(m_cur);
    Vec m_prev = m_cur - Int(k) * w.mbar;
    if (is_cut && !opt.mono_first) m_prev = shear.apply(m_prev);
    if (m_prev.is_zero()) continue;
    Int factor = 1;
    if (k > 0) {
      Vec n0{-w.out_dir.y, w.out_dir.x};
      Int pair0 = dot(n0, m_prev);
      if (pair0 == 0) continue;
      // n positive on the side the backward trace continues into (the side
      // the forward line comes from), or the opposite when !n_source
      int orient = sign(dot(n0, Vec{-m_prev.x, -m_prev.y}));
      if (!opt.n_source) orient = -orient;
      factor = binom_int(Int(orient) * pair0, k);
      if (factor == 0) continue;
    }
    TraceState next = st;
    next.q = hit->at;
    next.m = m_prev;
    next.coeff = st.coeff * factor;
    next.bends = st.bends + (k > 0 ? 1 : 0);
    next.ray_order = ray_order;
    if (is_cut) next.acc = next.acc.mul(shear);
    if (k > 0 || is_cut)
      next.log.push_back({hit->at, hit->wall, k, factor});
    trace(ts, opt, K, std::move(next), out);
  }
}

// Exponents reachable from the seeds by at most `adds` wall-monomial
// additions and cut shears, inside the working window.
inline std::vector<Vec> candidate_exponents(const TropicalStructure& ts,
                                            const TraceOptions& opt, int adds) {
  const Int cap = 64;
  std::vector<Vec> cur(ts.seeds.begin(), ts.seeds.end());
  std::map<Vec, bool, VecLess> seen;
  for (const Vec& s : cur) seen[s] = true;
  for (int step = 0; step < adds; ++step) {
    std::vector<Vec> next;
    for (const Vec& m : cur) {
      std::vector<Vec> nbr;
      for (const TropicalWall& w : ts.walls) nbr.push_back(m + w.mbar);
      if (opt.mono_sign != 0)
        for (const Mat2& M : ts.monodromy) {
          nbr.push_back(M.apply(m));
          nbr.push_back(M.inverse().apply(m));
        }
      for (const Vec& v : nbr) {
        if (abs(v.x) > cap || abs(v.y) > cap) continue;
        if (seen.emplace(v, true).second) next.push_back(v);
      }
    }
    cur = std::move(next);
    if (cur.empty()) break;
  }
  std::vector<Vec> out;
  for (const auto& [v, _] : seen) out.push_back(v);
  return out;
}

}  // namespace detail

inline std::pair<std::vector<BrokenLine>, Laurent> broken_lines(
    const Chamber& fu, const QVec& p, int K,
    const TraceOptions& opt = TraceOptions{}) {
  if (!contains_point(fu.triangle, p, true)) throw NonGenericBasepoint{};
  TropicalStructure ts = tropical_structure(std::max(opt.depth, K));
  for (const TropicalWall& w : ts.walls)
    if (wedge(QVec(w.out_dir), p - w.base) == 0) throw NonGenericBasepoint{};
  std::vector<BrokenLine> lines;
  for (const Vec& m : detail::candidate_exponents(ts, opt, 4 * K)) {
    detail::TraceState st;
    st.q = p;
    st.m = m;
    st.coeff = 1;
    std::vector<BrokenLine> got;
    detail::trace(ts, opt, K, st, got);
    for (BrokenLine& bl : got) {
      bl.final_m = m;
      lines.push_back(std::move(bl));
    }
  }
  Laurent W;
  for (const BrokenLine& bl : lines) W = W + Laurent::monomial(bl.final_m, bl.coeff);
  return {std::move(lines), std::move(W)};
}

}  // namespace polymut

#endif  // POLYMUT_POTENTIAL_HPP
