// 2-d lattice vectors, wedge products, affine maps and cone normal forms.
//
// All operations are exact. The global orientation convention is
// wedge((1,0),(0,1)) = +1 and is used consistently by every module.

#ifndef POLYMUT_LATTICE_HPP
#define POLYMUT_LATTICE_HPP

#include <array>
#include <compare>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "polymut/rational.hpp"

namespace polymut {

struct ZeroVector : std::domain_error {
  ZeroVector() : std::domain_error("primitive: zero vector") {}
};
struct DegenerateCone : std::domain_error {
  DegenerateCone() : std::domain_error("cone_normal_form: parallel rays") {}
};
struct SingularLinearPart : std::domain_error {
  SingularLinearPart() : std::domain_error("AffineMap: det = 0") {}
};

// Integer lattice vector.
struct Vec {
  Int x{0}, y{0};

  Vec() = default;
  Vec(Int x_, Int y_) : x(std::move(x_)), y(std::move(y_)) {}
  Vec(long x_, long y_) : x(x_), y(y_) {}

  Vec operator+(const Vec& o) const { return {x + o.x, y + o.y}; }
  Vec operator-(const Vec& o) const { return {x - o.x, y - o.y}; }
  Vec operator-() const { return {-x, -y}; }
  Vec operator*(const Int& k) const { return {x * k, y * k}; }
  bool operator==(const Vec& o) const = default;
  bool is_zero() const { return x == 0 && y == 0; }
};

inline Vec operator*(const Int& k, const Vec& v) { return v * k; }

inline bool lex_less(const Vec& a, const Vec& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

// Rational point / vector.
struct QVec {
  Rat x{0}, y{0};

  QVec() = default;
  QVec(Rat x_, Rat y_) : x(std::move(x_)), y(std::move(y_)) {}
  QVec(const Vec& v) : x(v.x), y(v.y) {}

  QVec operator+(const QVec& o) const { return {x + o.x, y + o.y}; }
  QVec operator-(const QVec& o) const { return {x - o.x, y - o.y}; }
  QVec operator-() const { return {-x, -y}; }
  QVec operator*(const Rat& k) const { return {x * k, y * k}; }
  bool operator==(const QVec& o) const = default;
};

inline QVec operator*(const Rat& k, const QVec& v) { return v * k; }

inline Int wedge(const Vec& u, const Vec& v) { return u.x * v.y - u.y * v.x; }
inline Rat wedge(const QVec& u, const QVec& v) { return u.x * v.y - u.y * v.x; }
inline Int dot(const Vec& u, const Vec& v) { return u.x * v.x + u.y * v.y; }
inline Rat dot(const Vec& u, const QVec& v) { return u.x * v.x + u.y * v.y; }
inline Rat dot(const QVec& u, const QVec& v) { return u.x * v.x + u.y * v.y; }

inline Rat norm2(const QVec& v) { return v.x * v.x + v.y * v.y; }

// Factors v = g * p with g > 0 and p primitive.
inline std::pair<Int, Vec> primitive_factor(const Vec& v) {
  if (v.is_zero()) throw ZeroVector{};
  Int g = gcd(abs(v.x), abs(v.y));
  return {g, Vec{v.x / g, v.y / g}};
}

inline Vec primitive(const Vec& v) { return primitive_factor(v).second; }

// Primitive integer direction of a rational vector.
inline Vec primitive(const QVec& v) {
  Int d = v.x.get_den() * v.y.get_den() / gcd(v.x.get_den(), v.y.get_den());
  Vec w{v.x.get_num() * (d / v.x.get_den()), v.y.get_num() * (d / v.y.get_den())};
  return primitive(w);
}

inline Vec rot90(const Vec& v) { return {-v.y, v.x}; }   // ccw quarter turn
inline QVec rot90(const QVec& v) { return {-v.y, v.x}; }

// Affine map x -> L x + t with exact rational entries and det(L) != 0.
class AffineMap {
 public:
  AffineMap() : a_(1), b_(0), c_(0), d_(1) {}
  AffineMap(Rat a, Rat b, Rat c, Rat d, QVec t)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)),
        t_(std::move(t)) {
    if (det() == 0) throw SingularLinearPart{};
  }

  static AffineMap identity() { return AffineMap{}; }

  // x -> lambda x + t, lambda > 0.
  static AffineMap scale_translate(const Rat& lambda, const QVec& t) {
    return AffineMap{lambda, 0, 0, lambda, t};
  }

  static AffineMap translation(const QVec& t) {
    return AffineMap{1, 0, 0, 1, t};
  }

  Rat det() const { return a_ * d_ - b_ * c_; }

  QVec apply(const QVec& p) const {
    return {a_ * p.x + b_ * p.y + t_.x, c_ * p.x + d_ * p.y + t_.y};
  }

  QVec apply_linear(const QVec& v) const {
    return {a_ * v.x + b_ * v.y, c_ * v.x + d_ * v.y};
  }

  AffineMap compose(const AffineMap& o) const {  // this after o
    return AffineMap{a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
                     c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_,
                     apply(o.t_)};
  }

  AffineMap inverse() const {
    Rat dt = det();
    AffineMap inv{d_ / dt, -b_ / dt, -c_ / dt, a_ / dt, QVec{}};
    inv.t_ = -inv.apply_linear(t_);
    return inv;
  }

  bool is_scale_translate() const { return b_ == 0 && c_ == 0 && a_ == d_; }
  Rat scale() const { return a_; }
  const QVec& translation_part() const { return t_; }
  std::array<Rat, 4> linear() const { return {a_, b_, c_, d_}; }

  bool operator==(const AffineMap& o) const {
    return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_ && t_ == o.t_;
  }

 private:
  Rat a_, b_, c_, d_;  // row-major linear part
  QVec t_;
};

// Unimodular-invariant normal form of a 2-d rational cone: index r and
// weight c in [0, r), with c normalized under the generator swap c -> c^-1
// (mod r). Two cones get equal normal forms iff a determinant +-1 integer
// map takes one to the other.
struct ConeNormalForm {
  Int index{1};      // r
  Int weight{0};     // c in [0, r)
  Int width{1};      // lattice length of the defining edge segment

  bool operator==(const ConeNormalForm& o) const = default;
  bool operator<(const ConeNormalForm& o) const {
    if (index != o.index) return index < o.index;
    if (weight != o.weight) return weight < o.weight;
    return width < o.width;
  }
};

inline ConeNormalForm cone_normal_form(Vec r1, Vec r2, Int width = 1) {
  if (primitive(r1) != r1 || primitive(r2) != r2)
    throw std::invalid_argument("cone_normal_form: rays must be primitive");
  Int w = wedge(r1, r2);
  if (w == 0) throw DegenerateCone{};
  if (w < 0) std::swap(r1, r2);
  Int r = abs(w);
  if (r == 1) return {1, 0, std::move(width)};

  // Send r1 to (1,0) by a unimodular map; r2 lands on (a, r) and a is
  // well-defined mod r under shears fixing (1,0).
  Int u, v, g;
  mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), r1.x.get_mpz_t(),
             r1.y.get_mpz_t());
  // matrix [[u, v], [-r1.y, r1.x]] maps r1 -> (1, 0), det = 1
  Int a = u * r2.x + v * r2.y;
  Int c = mod_floor(a, r);
  // Swapping the two rays inverts the weight mod r.
  Int cinv = (c == 0) ? Int(0) : mod_inverse(c, r);
  if (cinv < c) c = cinv;
  return {std::move(r), std::move(c), std::move(width)};
}

}  // namespace polymut

#endif  // POLYMUT_LATTICE_HPP
