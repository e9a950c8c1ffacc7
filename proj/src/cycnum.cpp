#include "heckebound/cycnum.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "heckebound/errors.hpp"

namespace heckebound {

namespace {

struct CyclotomicData {
  std::vector<mpz_class> phi;                     // Phi_m, monic, degree d
  std::vector<std::vector<mpz_class>> reduction;  // x^i mod Phi_m for 0 <= i < m
  std::size_t degree = 0;
};

std::vector<mpz_class> poly_mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  std::vector<mpz_class> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Exact division by a monic polynomial.
std::vector<mpz_class> poly_divexact_monic(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
  const std::size_t db = b.size() - 1;
  std::vector<mpz_class> q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    const mpz_class c = a[i];
    q[i - db] = c;
    if (c != 0)
      for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return q;
}

std::shared_ptr<const CyclotomicData> make_data(u64 m) {
  auto data = std::make_shared<CyclotomicData>();
  std::vector<mpz_class> num{1}, den{1};
  for (u64 d : divisors(m)) {
    const int mu = moebius(m / d);
    if (mu == 0) continue;
    std::vector<mpz_class> f(d + 1, 0);
    f[0] = -1;
    f[d] = 1;
    (mu == 1 ? num : den) = poly_mul(mu == 1 ? num : den, f);
  }
  data->phi = poly_divexact_monic(num, den);
  data->degree = data->phi.size() - 1;
  const std::size_t deg = data->degree;
  data->reduction.resize(m);
  std::vector<mpz_class> cur(deg, 0);
  if (deg > 0) cur[0] = 1;
  for (u64 i = 0; i < m; ++i) {
    data->reduction[i] = cur;
    // multiply by x and reduce
    mpz_class top = deg > 0 ? cur[deg - 1] : mpz_class(0);
    for (std::size_t j = deg; j-- > 1;) cur[j] = cur[j - 1] - top * data->phi[j];
    if (deg > 0) cur[0] = -top * data->phi[0];
  }
  return data;
}

std::shared_ptr<const CyclotomicData> cyclo(u64 m) {
  static std::mutex mu;
  static std::map<u64, std::shared_ptr<const CyclotomicData>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  auto d = make_data(m);
  cache.emplace(m, d);
  return d;
}

// Reduce a polynomial given by coefficients on exponents (any length) into Q(zeta_m).
std::vector<mpq_class> reduce_exponents(u64 m, const std::vector<mpq_class>& by_exp) {
  auto data = cyclo(m);
  std::vector<mpq_class> out(data->degree, 0);
  for (std::size_t i = 0; i < by_exp.size(); ++i) {
    if (by_exp[i] == 0) continue;
    const auto& red = data->reduction[i % m];
    for (std::size_t j = 0; j < out.size(); ++j)
      if (red[j] != 0) out[j] += by_exp[i] * red[j];
  }
  return out;
}

}  // namespace

const std::vector<mpz_class>& cyclotomic_polynomial(u64 m) {
  if (m == 0) throw DomainError("cyclotomic_polynomial: m must be positive");
  // Entries are never evicted, so the reference stays valid.
  return cyclo(m)->phi;
}

CycNum::CycNum() : order_(1), coeffs_(1, mpq_class(0)) {}

CycNum::CycNum(const mpq_class& q, u64 order) : order_(order) {
  if (order == 0) throw DomainError("CycNum: order must be positive");
  coeffs_.assign(cyclo(order)->degree, 0);
  coeffs_[0] = q;
  coeffs_[0].canonicalize();
}

CycNum CycNum::root_of_unity(u64 order, i64 exponent) {
  if (order == 0) throw DomainError("CycNum: order must be positive");
  const i64 m = static_cast<i64>(order);
  const i64 e = ((exponent % m) + m) % m;
  CycNum r;
  r.order_ = order;
  const auto& red = cyclo(order)->reduction[static_cast<std::size_t>(e)];
  r.coeffs_.assign(red.size(), 0);
  for (std::size_t j = 0; j < red.size(); ++j) r.coeffs_[j] = red[j];
  return r;
}

CycNum CycNum::from_exponent_sums(u64 order, const std::vector<mpz_class>& sums, const mpz_class& den) {
  if (den == 0) throw DomainError("CycNum: zero denominator");
  auto data = cyclo(order);
  std::vector<mpz_class> acc(data->degree, 0);
  for (std::size_t i = 0; i < sums.size(); ++i) {
    if (sums[i] == 0) continue;
    const auto& red = data->reduction[i % order];
    for (std::size_t j = 0; j < acc.size(); ++j)
      if (red[j] != 0) acc[j] += sums[i] * red[j];
  }
  CycNum r;
  r.order_ = order;
  r.coeffs_.resize(acc.size());
  for (std::size_t j = 0; j < acc.size(); ++j) {
    r.coeffs_[j] = mpq_class(acc[j], den);
    r.coeffs_[j].canonicalize();
  }
  return r;
}

CycNum CycNum::from_integer_vector(u64 order, const std::vector<mpz_class>& num, const mpz_class& den) {
  auto data = cyclo(order);
  if (num.size() != data->degree) throw DataError("CycNum: coefficient vector length must equal phi(order)");
  if (den == 0) throw DataError("CycNum: zero denominator");
  CycNum r;
  r.order_ = order;
  r.coeffs_.resize(num.size());
  for (std::size_t j = 0; j < num.size(); ++j) {
    r.coeffs_[j] = mpq_class(num[j], den);
    r.coeffs_[j].canonicalize();
  }
  return r;
}

void CycNum::to_integer_vector(std::vector<mpz_class>& num, mpz_class& den) const {
  den = 1;
  for (const auto& c : coeffs_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  num.resize(coeffs_.size());
  for (std::size_t j = 0; j < coeffs_.size(); ++j) num[j] = coeffs_[j].get_num() * (den / coeffs_[j].get_den());
}

CycNum CycNum::lifted(u64 new_order) const {
  if (new_order % order_ != 0) throw DomainError("CycNum::lifted: order must divide new order");
  if (new_order == order_) return *this;
  const u64 step = new_order / order_;
  std::vector<mpq_class> by_exp(new_order, 0);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) by_exp[(j * step) % new_order] += coeffs_[j];
  CycNum r;
  r.order_ = new_order;
  r.coeffs_ = reduce_exponents(new_order, by_exp);
  return r;
}

bool CycNum::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool CycNum::is_rational() const {
  for (std::size_t j = 1; j < coeffs_.size(); ++j)
    if (coeffs_[j] != 0) return false;
  return true;
}

mpq_class CycNum::rational_value() const {
  if (!is_rational()) throw DomainError("CycNum is not rational: " + str());
  return coeffs_.empty() ? mpq_class(0) : coeffs_[0];
}

CycNum CycNum::conj() const {
  std::vector<mpq_class> by_exp(order_, 0);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) by_exp[(order_ - j) % order_] += coeffs_[j];
  CycNum r;
  r.order_ = order_;
  r.coeffs_ = reduce_exponents(order_, by_exp);
  return r;
}

CycNum CycNum::inverse() const {
  if (is_zero()) throw DomainError("CycNum::inverse of zero");
  const std::size_t d = coeffs_.size();
  if (d == 1) return CycNum(1 / coeffs_[0], order_);
  // Columns of the multiplication-by-this matrix, then solve M x = e_0.
  std::vector<std::vector<mpq_class>> a(d, std::vector<mpq_class>(d + 1, 0));
  for (std::size_t j = 0; j < d; ++j) {
    CycNum col = *this * root_of_unity(order_, static_cast<i64>(j));
    for (std::size_t i = 0; i < d; ++i) a[i][j] = col.coeffs_[i];
  }
  a[0][d] = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && a[piv][c] == 0) ++piv;
    if (piv == d) throw DomainError("CycNum::inverse: singular multiplication matrix");
    std::swap(a[piv], a[c]);
    const mpq_class inv = 1 / a[c][c];
    for (std::size_t k = c; k <= d; ++k) a[c][k] *= inv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const mpq_class f = a[r][c];
      for (std::size_t k = c; k <= d; ++k) a[r][k] -= f * a[c][k];
    }
  }
  CycNum r;
  r.order_ = order_;
  r.coeffs_.resize(d);
  for (std::size_t i = 0; i < d; ++i) r.coeffs_[i] = a[i][d];
  return r;
}

ComplexInterval CycNum::embed() const {
  ComplexInterval acc{Interval(0L), Interval(0L)};
  const Interval two_pi_over_m = Interval(2L) * Interval::pi() / Interval(static_cast<long>(order_));
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0) continue;
    const Interval c(coeffs_[j]);
    if (j == 0) {
      acc.re += c;
      continue;
    }
    const Interval ang = two_pi_over_m * Interval(static_cast<long>(j));
    acc.re += c * ang.cos();
    acc.im += c * ang.sin();
  }
  return acc;
}

CycNum CycNum::operator-() const {
  CycNum r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycNum operator+(const CycNum& a, const CycNum& b) {
  if (a.order_ != b.order_) {
    const u64 L = std::lcm(a.order_, b.order_);
    return a.lifted(L) + b.lifted(L);
  }
  CycNum r = a;
  for (std::size_t j = 0; j < r.coeffs_.size(); ++j) r.coeffs_[j] += b.coeffs_[j];
  return r;
}

CycNum operator-(const CycNum& a, const CycNum& b) { return a + (-b); }

CycNum operator*(const CycNum& a, const CycNum& b) {
  if (a.order_ != b.order_) {
    const u64 L = std::lcm(a.order_, b.order_);
    return a.lifted(L) * b.lifted(L);
  }
  if (a.coeffs_.size() == 1) {
    CycNum r = b;
    for (auto& c : r.coeffs_) c *= a.coeffs_[0];
    return r;
  }
  std::vector<mpq_class> prod(2 * a.coeffs_.size(), 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      if (b.coeffs_[j] != 0) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  CycNum r;
  r.order_ = a.order_;
  r.coeffs_ = reduce_exponents(a.order_, prod);
  return r;
}

bool operator==(const CycNum& a, const CycNum& b) {
  if (a.order_ != b.order_) {
    const u64 L = std::lcm(a.order_, b.order_);
    return a.lifted(L).coeffs_ == b.lifted(L).coeffs_;
  }
  return a.coeffs_ == b.coeffs_;
}

std::string CycNum::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    const mpq_class& c = coeffs_[j];
    if (c == 0) continue;
    if (j == 0) {
      os << c.get_str();
    } else {
      mpq_class a = abs(c);
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      if (a != 1) os << a.get_str() << "*";
      os << "z" << order_;
      if (j > 1) os << "^" << j;
    }
    first = false;
  }
  if (first) return "0";
  return os.str();
}

}  // namespace heckebound
