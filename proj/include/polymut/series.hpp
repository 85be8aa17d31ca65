// Bivariate Laurent series truncated in a formal parameter t. Each term
// carries an explicit t-order; multiplication drops everything beyond the
// working order.

#ifndef POLYMUT_SERIES_HPP
#define POLYMUT_SERIES_HPP

#include <map>
#include <stdexcept>
#include <string>

#include "polymut/lattice.hpp"

namespace polymut {

struct SeriesKey {
  int k;  // t-order
  Vec m;  // exponent

  bool operator==(const SeriesKey&) const = default;
  bool operator<(const SeriesKey& o) const {
    if (k != o.k) return k < o.k;
    return lex_less(m, o.m);
  }
};

class TruncatedSeries {
 public:
  using Terms = std::map<SeriesKey, Rat>;

  explicit TruncatedSeries(int order) : order_(order) {}

  static TruncatedSeries one(int order) {
    TruncatedSeries s(order);
    s.add_term(0, {0, 0}, 1);
    return s;
  }

  static TruncatedSeries monomial(int order, int k, const Vec& m,
                                  Rat c = Rat(1)) {
    TruncatedSeries s(order);
    s.add_term(k, m, std::move(c));
    return s;
  }

  int order() const { return order_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(int k, const Vec& m, Rat c) {
    if (k < 0) throw std::invalid_argument("negative t-order");
    if (k > order_ || c == 0) return;
    auto [it, inserted] = terms_.try_emplace({k, m}, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rat coeff(int k, const Vec& m) const {
    auto it = terms_.find({k, m});
    return it == terms_.end() ? Rat(0) : it->second;
  }

  // Smallest t-order present, or order+1 when zero.
  int min_order() const {
    return terms_.empty() ? order_ + 1 : terms_.begin()->first.k;
  }

  TruncatedSeries operator+(const TruncatedSeries& o) const {
    TruncatedSeries r = *this;
    for (const auto& [key, c] : o.terms_) r.add_term(key.k, key.m, c);
    return r;
  }

  TruncatedSeries operator-() const {
    TruncatedSeries r(order_);
    for (const auto& [key, c] : terms_) r.terms_.emplace(key, -c);
    return r;
  }

  TruncatedSeries operator-(const TruncatedSeries& o) const {
    return *this + (-o);
  }

  TruncatedSeries operator*(const TruncatedSeries& o) const {
    TruncatedSeries r(order_);
    for (const auto& [k1, c1] : terms_)
      for (const auto& [k2, c2] : o.terms_) {
        if (k1.k + k2.k > order_) continue;
        r.add_term(k1.k + k2.k, k1.m + k2.m, c1 * c2);
      }
    return r;
  }

  // Integer power for series with constant term 1; negative exponents via
  // the truncated geometric expansion.
  TruncatedSeries pow(const Int& e) const {
    if (coeff(0, {0, 0}) != 1)
      throw std::invalid_argument("pow: constant term must be 1");
    TruncatedSeries g = *this;
    g.add_term(0, {0, 0}, -1);  // g = f - 1, positive t-order
    if (!g.is_zero() && g.min_order() < 1)
      throw std::invalid_argument("pow: non-unit order-zero part");
    TruncatedSeries r = one(order_);
    TruncatedSeries gj = one(order_);
    for (unsigned long j = 1; j <= static_cast<unsigned long>(order_); ++j) {
      gj = gj * g;
      if (gj.is_zero()) break;
      Int b = binomial_general(e, j);
      if (b == 0) continue;
      for (const auto& [key, c] : gj.terms()) r.add_term(key.k, key.m, c * b);
    }
    return r;
  }

  // Shift every exponent by -m0 (multiply by z^{-m0}).
  TruncatedSeries shifted(const Vec& m0) const {
    TruncatedSeries r(order_);
    for (const auto& [key, c] : terms_) r.terms_.emplace(SeriesKey{key.k, key.m - m0}, c);
    return r;
  }

  bool operator==(const TruncatedSeries& o) const {
    return order_ == o.order_ && terms_ == o.terms_;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [key, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += c.get_str() + "*t^" + std::to_string(key.k) + "*x^" +
           key.m.x.get_str() + "*y^" + key.m.y.get_str();
    }
    return s;
  }

 private:
  int order_;
  Terms terms_;
};

}  // namespace polymut

#endif  // POLYMUT_SERIES_HPP
