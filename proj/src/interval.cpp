#include "heckebound/interval.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "heckebound/errors.hpp"

namespace heckebound {

namespace {

struct Tmp {
  mpfr_t v;
  Tmp() { mpfr_init2(v, kIntervalPrecision); }
  ~Tmp() { mpfr_clear(v); }
  Tmp(const Tmp&) = delete;
  Tmp& operator=(const Tmp&) = delete;
};

void set_q(mpfr_t dst, const mpq_class& q, mpfr_rnd_t rnd) { mpfr_set_q(dst, q.get_mpq_t(), rnd); }

}  // namespace

Interval::Interval() {
  mpfr_init2(lo_, kIntervalPrecision);
  mpfr_init2(hi_, kIntervalPrecision);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(long v) {
  mpfr_init2(lo_, kIntervalPrecision);
  mpfr_init2(hi_, kIntervalPrecision);
  mpfr_set_si(lo_, v, MPFR_RNDD);
  mpfr_set_si(hi_, v, MPFR_RNDU);
}

Interval::Interval(const mpz_class& v) {
  mpfr_init2(lo_, kIntervalPrecision);
  mpfr_init2(hi_, kIntervalPrecision);
  mpfr_set_z(lo_, v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_, v.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(const mpq_class& v) {
  mpfr_init2(lo_, kIntervalPrecision);
  mpfr_init2(hi_, kIntervalPrecision);
  set_q(lo_, v, MPFR_RNDD);
  set_q(hi_, v, MPFR_RNDU);
}

Interval::Interval(const mpq_class& lo, const mpq_class& hi) {
  if (lo > hi) throw DomainError("Interval: lo > hi");
  mpfr_init2(lo_, kIntervalPrecision);
  mpfr_init2(hi_, kIntervalPrecision);
  set_q(lo_, lo, MPFR_RNDD);
  set_q(hi_, hi, MPFR_RNDU);
}

Interval Interval::from_double(double v) {
  Interval r;
  mpfr_set_d(r.lo_, v, MPFR_RNDD);
  mpfr_set_d(r.hi_, v, MPFR_RNDU);
  return r;
}

Interval::Interval(const Interval& o) {
  mpfr_init2(lo_, kIntervalPrecision);
  mpfr_init2(hi_, kIntervalPrecision);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : Interval() { mpfr_swap(lo_, o.lo_), mpfr_swap(hi_, o.hi_); }

Interval& Interval::operator=(const Interval& o) {
  if (this != &o) {
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::pi() {
  Interval r;
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval r;
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

double Interval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid_double() const {
  Tmp m;
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  return mpfr_get_d(m.v, MPFR_RNDN);
}

double Interval::width_double() const {
  Tmp w;
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  return mpfr_get_d(w.v, MPFR_RNDU);
}

mpq_class Interval::lo_rational() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

mpq_class Interval::hi_rational() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

bool Interval::contains(const mpq_class& q) const { return lo_rational() <= q && q <= hi_rational(); }

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
bool Interval::certainly_positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::certainly_negative() const { return mpfr_sgn(hi_) < 0; }
bool Interval::less_than_lo(const Interval& o) const { return mpfr_less_p(hi_, o.lo_) != 0; }
bool Interval::certainly_le(const Interval& o) const { return mpfr_lessequal_p(hi_, o.lo_) != 0; }
bool Interval::overlaps(const Interval& o) const {
  return mpfr_lessequal_p(lo_, o.hi_) && mpfr_lessequal_p(o.lo_, hi_);
}

Interval Interval::operator-() const {
  Interval r;
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r;
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r;
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  Interval r;
  Tmp t;
  mpfr_srcptr ea[2] = {a.lo_, a.hi_};
  mpfr_srcptr eb[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : ea) {
    for (auto y : eb) {
      mpfr_mul(t.v, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.v, r.lo_)) mpfr_set(r.lo_, t.v, MPFR_RNDD);
      mpfr_mul(t.v, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.v, r.hi_)) mpfr_set(r.hi_, t.v, MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw PrecisionError("interval division by an interval containing zero");
  Interval r;
  Tmp t;
  mpfr_srcptr ea[2] = {a.lo_, a.hi_};
  mpfr_srcptr eb[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : ea) {
    for (auto y : eb) {
      mpfr_div(t.v, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.v, r.lo_)) mpfr_set(r.lo_, t.v, MPFR_RNDD);
      mpfr_div(t.v, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.v, r.hi_)) mpfr_set(r.hi_, t.v, MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Interval Interval::abs() const {
  if (mpfr_sgn(lo_) >= 0) return *this;
  if (mpfr_sgn(hi_) <= 0) return -*this;
  Interval r;
  mpfr_set_zero(r.lo_, 1);
  Tmp n;
  mpfr_neg(n.v, lo_, MPFR_RNDU);
  mpfr_max(r.hi_, n.v, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::sqrt() const {
  if (mpfr_sgn(hi_) < 0) throw DomainError("sqrt of a negative interval");
  Interval r;
  if (mpfr_sgn(lo_) <= 0)
    mpfr_set_zero(r.lo_, 1);
  else
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::log() const {
  if (mpfr_sgn(lo_) <= 0) throw DomainError("log of a non-positive interval");
  Interval r;
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::exp() const {
  Interval r;
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::atan() const {
  Interval r;
  mpfr_atan(r.lo_, lo_, MPFR_RNDD);
  mpfr_atan(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::asin() const {
  if (mpfr_cmp_si(lo_, -1) < 0 || mpfr_cmp_si(hi_, 1) > 0) throw DomainError("asin outside [-1, 1]");
  Interval r;
  mpfr_asin(r.lo_, lo_, MPFR_RNDD);
  mpfr_asin(r.hi_, hi_, MPFR_RNDU);
  return r;
}

namespace {

// f(I) ⊆ [RD(f(m)) - r, RU(f(m)) + r] for 1-Lipschitz f, m the midpoint, r the radius.
template <class F>
Interval lipschitz_enclosure(const Interval& x, F f) {
  Tmp m, rad, v;
  mpfr_add(m.v, x.lo(), x.hi(), MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  Tmp a, b;
  mpfr_sub(a.v, m.v, x.lo(), MPFR_RNDU);
  mpfr_sub(b.v, x.hi(), m.v, MPFR_RNDU);
  mpfr_max(rad.v, a.v, b.v, MPFR_RNDU);
  Tmp lo, hi;
  f(v.v, m.v, MPFR_RNDD);
  mpfr_sub(lo.v, v.v, rad.v, MPFR_RNDD);
  f(v.v, m.v, MPFR_RNDU);
  mpfr_add(hi.v, v.v, rad.v, MPFR_RNDU);
  // Endpoints are exact MPFR numbers: convert through rationals without loss.
  mpq_class ql, qh;
  mpfr_get_q(ql.get_mpq_t(), lo.v);
  mpfr_get_q(qh.get_mpq_t(), hi.v);
  return Interval(ql, qh);
}

}  // namespace

Interval Interval::cos() const {
  return lipschitz_enclosure(*this, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_cos(r, a, rnd); });
}

Interval Interval::sin() const {
  return lipschitz_enclosure(*this, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_sin(r, a, rnd); });
}

Interval Interval::pow(unsigned e) const {
  Interval r(1);
  Interval b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

Interval Interval::min(const Interval& o) const {
  Interval r;
  mpfr_min(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_min(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::max(const Interval& o) const {
  Interval r;
  mpfr_max(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

std::string Interval::str(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  std::string fmt = "%." + std::to_string(digits) + "R*g";
  mpfr_snprintf(buf.data(), buf.size(), fmt.c_str(), MPFR_RNDD, lo_);
  std::string lo(buf.data());
  mpfr_snprintf(buf.data(), buf.size(), fmt.c_str(), MPFR_RNDU, hi_);
  std::string hi(buf.data());
  return "[" + lo + ", " + hi + "]";
}

}  // namespace heckebound
