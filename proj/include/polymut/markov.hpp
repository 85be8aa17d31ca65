// Markov triples, the solution tree of a^2 + b^2 + c^2 = 3abc, its grading
// and meet-semilattice structure.

#ifndef POLYMUT_MARKOV_HPP
#define POLYMUT_MARKOV_HPP

#include <algorithm>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polymut/rational.hpp"

namespace polymut {

struct RootHasNoParent : std::domain_error {
  RootHasNoParent() : std::domain_error("parent of (1,1,1)") {}
};

inline bool is_markov(const Int& a, const Int& b, const Int& c) {
  return a >= 1 && b >= 1 && c >= 1 &&
         a * a + b * b + c * c == 3 * a * b * c;
}

// Child selector: which of the two smaller entries of a sorted triple gets
// replaced by its Vieta conjugate.
enum class Branch : char { ReplaceA1 = 'L', ReplaceA2 = 'R' };

using TreePath = std::vector<Branch>;

// Sorted Markov triple: a1 <= a2 <= a3.
struct MarkovTriple {
  Int a1{1}, a2{1}, a3{1};

  MarkovTriple() = default;
  MarkovTriple(Int x, Int y, Int z) {
    Int v[3] = {std::move(x), std::move(y), std::move(z)};
    std::sort(v, v + 3);
    a1 = std::move(v[0]);
    a2 = std::move(v[1]);
    a3 = std::move(v[2]);
    if (!is_markov(a1, a2, a3))
      throw std::invalid_argument("not a Markov triple");
  }

  bool operator==(const MarkovTriple& o) const = default;
  bool operator<(const MarkovTriple& o) const {
    if (a3 != o.a3) return a3 < o.a3;
    if (a2 != o.a2) return a2 < o.a2;
    return a1 < o.a1;
  }

  bool is_root() const { return a3 == 1; }

  MarkovTriple child(Branch b) const {
    if (b == Branch::ReplaceA1) return {3 * a2 * a3 - a1, a2, a3};
    return {a1, 3 * a1 * a3 - a2, a3};
  }

  // Children in canonical order (the branch replacing a1 first); duplicate
  // children at (1,1,1) and (1,1,2) are merged so the tree is the familiar
  // binary-after-two-steps Markov tree.
  std::vector<MarkovTriple> children() const {
    MarkovTriple l = child(Branch::ReplaceA1);
    MarkovTriple r = child(Branch::ReplaceA2);
    if (l == r) return {l};
    return {l, r};
  }

  MarkovTriple parent() const {
    if (is_root()) throw RootHasNoParent{};
    return {a1, a2, 3 * a1 * a2 - a3};
  }

  // Distance to the root (1,1,1): each parent step strictly decreases a3.
  int depth() const {
    MarkovTriple t = *this;
    int d = 0;
    while (!t.is_root()) {
      t = t.parent();
      ++d;
    }
    return d;
  }

  std::string str() const {
    return "(" + a1.get_str() + "," + a2.get_str() + "," + a3.get_str() + ")";
  }
};

inline MarkovTriple markov_root() { return MarkovTriple{}; }

// Path from the root to t, in canonical child order.
inline TreePath path_from_root(const MarkovTriple& t) {
  TreePath rev;
  MarkovTriple cur = t;
  while (!cur.is_root()) {
    MarkovTriple p = cur.parent();
    rev.push_back(p.child(Branch::ReplaceA1) == cur ? Branch::ReplaceA1
                                                    : Branch::ReplaceA2);
    cur = p;
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

inline MarkovTriple apply_path(const TreePath& path) {
  MarkovTriple t;
  for (Branch b : path) t = t.child(b);
  return t;
}

struct GradedTriple {
  MarkovTriple triple;
  int d;
  TreePath path;
};

// All triples with d(t) <= depth, breadth-first, deterministic order.
inline std::vector<GradedTriple> enumerate_markov(int depth) {
  std::vector<GradedTriple> out;
  out.push_back({markov_root(), 0, {}});
  std::size_t level_begin = 0;
  for (int d = 1; d <= depth; ++d) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      GradedTriple node = out[i];  // copy: out may reallocate
      for (Branch b : {Branch::ReplaceA1, Branch::ReplaceA2}) {
        MarkovTriple c = node.triple.child(b);
        if (b == Branch::ReplaceA2 &&
            c == node.triple.child(Branch::ReplaceA1))
          continue;  // merged duplicate at (1,1,1) and (1,1,2)
        TreePath p = node.path;
        p.push_back(b);
        out.push_back({std::move(c), d, std::move(p)});
      }
    }
    level_begin = level_end;
  }
  return out;
}

// Deepest common ancestor in the tree order.
inline MarkovTriple meet(MarkovTriple s, MarkovTriple t) {
  while (s.depth() > t.depth()) s = s.parent();
  while (t.depth() > s.depth()) t = t.parent();
  while (!(s == t)) {
    s = s.parent();
    t = t.parent();
  }
  return s;
}

}  // namespace polymut

#endif  // POLYMUT_MARKOV_HPP
