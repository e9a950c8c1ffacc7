#ifndef HECKEBOUND_INTERVAL_HPP
#define HECKEBOUND_INTERVAL_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace heckebound {

/// Working precision (bits) of every interval endpoint.
inline constexpr mpfr_prec_t kIntervalPrecision = 256;

/// Closed real interval [lo, hi] with outward-rounded MPFR endpoints.
///
/// Every operation returns an enclosure of the exact result set, so a
/// property proven on the interval holds for the true value.
class Interval {
 public:
  Interval();
  Interval(long v);  // NOLINT(google-explicit-constructor)
  explicit Interval(const mpz_class& v);
  explicit Interval(const mpq_class& v);
  Interval(const mpq_class& lo, const mpq_class& hi);
  /// Enclosure of a double; the decimal literal 0.1 is NOT exactly 1/10.
  static Interval from_double(double v);
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(const Interval& o);
  Interval& operator=(Interval&& o) noexcept;
  ~Interval();

  static Interval pi();
  static Interval hull(const Interval& a, const Interval& b);

  double lo_double() const;  // rounded down
  double hi_double() const;  // rounded up
  double mid_double() const;
  double width_double() const;
  mpq_class lo_rational() const;
  mpq_class hi_rational() const;

  bool contains(const mpq_class& q) const;
  bool contains_zero() const;
  bool certainly_positive() const;
  bool certainly_negative() const;
  bool certainly_less(const Interval& o) const { return less_than_lo(o); }
  bool certainly_le(const Interval& o) const;
  bool overlaps(const Interval& o) const;

  Interval operator-() const;
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Throws PrecisionError if b contains zero.
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator-=(const Interval& b) { return *this = *this - b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }
  Interval& operator/=(const Interval& b) { return *this = *this / b; }

  Interval abs() const;
  /// Negative parts are clipped; throws DomainError if hi < 0.
  Interval sqrt() const;
  Interval log() const;
  Interval exp() const;
  Interval atan() const;
  Interval asin() const;
  /// Lipschitz enclosure around the midpoint.
  Interval cos() const;
  Interval sin() const;
  Interval pow(unsigned e) const;
  Interval min(const Interval& o) const;
  Interval max(const Interval& o) const;

  /// "[lo, hi]" with the given number of significant digits, outward rounded.
  std::string str(int digits = 15) const;

  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

 private:
  bool less_than_lo(const Interval& o) const;

  mpfr_t lo_;
  mpfr_t hi_;
};

/// Rectangular complex interval.
struct ComplexInterval {
  Interval re;
  Interval im;

  ComplexInterval() = default;
  ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

  friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  ComplexInterval conj() const { return {re, -im}; }
  /// |z|^2 enclosure.
  Interval norm() const { return re * re + im * im; }
  Interval abs() const { return norm().sqrt(); }
  friend ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
    const Interval d = b.norm();
    const ComplexInterval n = a * b.conj();
    return {n.re / d, n.im / d};
  }
};

}  // namespace heckebound

#endif
