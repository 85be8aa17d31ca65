// Laurent polynomials in two variables with exact integer coefficients:
// algebraic mutation, Newton polygons, classical periods and the quantum
// period of the plane.

#ifndef POLYMUT_LAURENT_HPP
#define POLYMUT_LAURENT_HPP

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "polymut/lattice.hpp"

namespace polymut {

struct NotLaurent : std::domain_error {
  NotLaurent() : std::domain_error("mutation result is not Laurent") {}
};

struct VecLess {
  bool operator()(const Vec& a, const Vec& b) const { return lex_less(a, b); }
};

class Laurent {
 public:
  using Terms = std::map<Vec, Int, VecLess>;

  Laurent() = default;

  static Laurent monomial(const Vec& e, Int c = 1) {
    Laurent f;
    f.add_term(e, std::move(c));
    return f;
  }

  static Laurent constant(Int c) { return monomial(Vec{0, 0}, std::move(c)); }

  // x + y + 1/xy
  static Laurent hori_vafa_p2() {
    Laurent f;
    f.add_term({1, 0}, 1);
    f.add_term({0, 1}, 1);
    f.add_term({-1, -1}, 1);
    return f;
  }

  void add_term(const Vec& e, Int c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, std::move(c));
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Int coeff(const Vec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Int(0) : it->second;
  }

  Int constant_term() const { return coeff({0, 0}); }

  Laurent operator+(const Laurent& o) const {
    Laurent r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }

  Laurent operator*(const Laurent& o) const {
    Laurent r;
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) r.add_term(e1 + e2, c1 * c2);
    return r;
  }

  Laurent operator*(const Int& k) const {
    Laurent r;
    if (k == 0) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * k);
    return r;
  }

  bool operator==(const Laurent& o) const { return terms_ == o.terms_; }

  // Vertices of the Newton polygon, counterclockwise. Degenerate cases
  // (point, segment) return the support hull as is.
  std::vector<Vec> newton_polygon() const;

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += c.get_str() + "*x^" + e.x.get_str() + "*y^" + e.y.get_str();
    }
    return s;
  }

 private:
  Terms terms_;
};

// Monotone-chain convex hull of lattice points; returns ccw vertex cycle.
inline std::vector<Vec> convex_hull(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const Vec& a, const Vec& b) { return lex_less(a, b); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<Vec> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower hull
    while (k >= 2 && wedge(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper hull
    while (k >= t && wedge(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

inline std::vector<Vec> Laurent::newton_polygon() const {
  std::vector<Vec> pts;
  pts.reserve(terms_.size());
  for (const auto& [e, c] : terms_) pts.push_back(e);
  return convex_hull(std::move(pts));
}

// Exact division by (1 + z^u); throws NotLaurent when inexact.
inline Laurent divide_by_one_plus(const Laurent& f, Vec u) {
  if (f.is_zero()) return f;
  // Normalize so the factor exponent is lex-positive:
  // 1 + z^u = z^u (1 + z^-u).
  Vec shift{0, 0};
  if (!lex_less(Vec{0, 0}, u)) {
    shift = u;
    u = -u;
  }
  Laurent rem;
  for (const auto& [e, c] : f.terms()) rem.add_term(e - shift, c);
  Vec lex_max = rem.terms().rbegin()->first;
  Laurent q;
  while (!rem.is_zero()) {
    auto it = rem.terms().begin();
    Vec lead = it->first;
    if (lex_less(lex_max, lead)) throw NotLaurent{};
    Int lc = it->second;
    q.add_term(lead, lc);
    rem.add_term(lead, -lc);
    rem.add_term(lead + u, -lc);
  }
  return q;
}

// Mutation theta^*_{w,F}(z^n) = (1 + z^u)^{<w,n>} z^n, with <w,u> = 0.
// Computed over a common power of the factor; throws NotLaurent if the
// denominator does not cancel.
inline Laurent algebraic_mutate(const Laurent& f, const Vec& w, const Vec& u) {
  if (dot(w, u) != 0) throw std::invalid_argument("factor not in w-perp");
  if (primitive(u) != u) throw std::invalid_argument("factor not primitive");
  Laurent factor;
  factor.add_term({0, 0}, 1);
  factor.add_term(u, 1);

  Int max_neg = 0;  // largest -<w,n> over negative pairings
  for (const auto& [e, c] : f.terms()) {
    Int p = dot(w, e);
    if (p < 0 && -p > max_neg) max_neg = -p;
  }
  // numerator = sum c * z^n * (1+z^u)^{<w,n> + max_neg}
  Laurent num;
  for (const auto& [e, c] : f.terms()) {
    Int p = dot(w, e) + max_neg;
    Laurent t = Laurent::monomial(e, c);
    for (Int i = 0; i < p; ++i) t = t * factor;
    num = num + t;
  }
  for (Int i = 0; i < max_neg; ++i) num = divide_by_one_plus(num, u);
  return num;
}

// Classical period sequence: c_m = constant term of f^m, m = 0..M.
inline std::vector<Int> period(const Laurent& f, int M) {
  std::vector<Int> out;
  out.reserve(M + 1);
  out.push_back(1);
  Laurent p = Laurent::constant(1);
  for (int m = 1; m <= M; ++m) {
    p = p * f;
    out.push_back(p.constant_term());
  }
  return out;
}

// Regularised quantum period of the plane: c_{3m} = (3m)!/(m!)^3.
inline std::vector<Int> quantum_period_p2(int M) {
  std::vector<Int> out(M + 1, 0);
  for (int m = 0; 3 * m <= M; ++m) {
    Int f = factorial(3 * m) / (factorial(m) * factorial(m) * factorial(m));
    out[3 * m] = f;
  }
  return out;
}

inline bool is_mirror_dual_p2(const Laurent& f, int M) {
  return period(f, M) == quantum_period_p2(M);
}

}  // namespace polymut

#endif  // POLYMUT_LAURENT_HPP
