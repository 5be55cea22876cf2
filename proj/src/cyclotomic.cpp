#include "strata/cyclotomic.hpp"

#include <mutex>
#include <stdexcept>

namespace strata {

namespace {

using Poly = std::vector<Rat>;  // coefficients, no trailing zeros

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// num = quot * den + rem; returns quot, leaves rem in num.
Poly poly_divmod(Poly& num, const Poly& den) {
  Poly quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Rat(0));
  while (num.size() >= den.size() && !num.empty()) {
    Rat c = num.back() / den.back();
    size_t shift = num.size() - den.size();
    quot[shift] += c;
    for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    trim(num);
  }
  return quot;
}

Poly cyclotomic_poly(long k) {
  // Phi_k = (x^k - 1) / prod_{d | k, d < k} Phi_d
  Poly num(k + 1, Rat(0));
  num[0] = -1;
  num[k] = 1;
  for (long d = 1; d < k; ++d) {
    if (k % d != 0) continue;
    Poly q = poly_divmod(num, cyclotomic_poly(d));
    if (!num.empty()) throw std::logic_error("cyclotomic: non-exact division");
    num = std::move(q);
  }
  return num;
}

}  // namespace

CyclotomicField::CyclotomicField(long k) : k_(k) {
  if (k < 1) throw std::invalid_argument("cyclotomic field needs k >= 1");
  modulus_ = cyclotomic_poly(k);
  degree_ = static_cast<long>(modulus_.size()) - 1;
  // x^j mod Phi_k for every j needed by zeta_pow and by products of two
  // reduced elements, i.e. j < max(k, 2*degree - 1).
  long table_size = std::max<long>(k_, 2 * degree_ - 1);
  power_table_.resize(table_size);
  std::vector<Rat> cur(degree_, Rat(0));
  cur[0] = 1;
  for (long j = 0; j < table_size; ++j) {
    power_table_[j] = cur;
    std::vector<Rat> next(degree_, Rat(0));
    Rat top = cur[degree_ - 1];
    for (long i = degree_ - 1; i > 0; --i) next[i] = cur[i - 1];
    for (long i = 0; i < degree_; ++i) next[i] -= top * modulus_[i];
    cur = std::move(next);
  }
}

CyclotomicField::Elem CyclotomicField::one() const {
  Elem e = zero();
  e[0] = 1;
  return e;
}

CyclotomicField::Elem CyclotomicField::from_rat(const Rat& r) const {
  Elem e = zero();
  e[0] = r;
  return e;
}

CyclotomicField::Elem CyclotomicField::zeta_pow(long s) const {
  s %= k_;
  if (s < 0) s += k_;
  return power_table_[s];
}

CyclotomicField::Elem CyclotomicField::add(const Elem& a, const Elem& b) const {
  Elem r(a);
  for (long i = 0; i < degree_; ++i) r[i] += b[i];
  return r;
}

CyclotomicField::Elem CyclotomicField::sub(const Elem& a, const Elem& b) const {
  Elem r(a);
  for (long i = 0; i < degree_; ++i) r[i] -= b[i];
  return r;
}

CyclotomicField::Elem CyclotomicField::neg(const Elem& a) const {
  Elem r(a);
  for (auto& c : r) c = -c;
  return r;
}

bool CyclotomicField::is_zero(const Elem& a) const {
  for (const auto& c : a)
    if (c != 0) return false;
  return true;
}

CyclotomicField::Elem CyclotomicField::mul(const Elem& a, const Elem& b) const {
  std::vector<Rat> prod(2 * degree_ - 1, Rat(0));
  for (long i = 0; i < degree_; ++i) {
    if (a[i] == 0) continue;
    for (long j = 0; j < degree_; ++j) {
      if (b[j] == 0) continue;
      prod[i + j] += a[i] * b[j];
    }
  }
  Elem r(prod.begin(), prod.begin() + degree_);
  for (long i = degree_; i < static_cast<long>(prod.size()); ++i) {
    if (prod[i] == 0) continue;
    const std::vector<Rat>& pw = power_table_[i];
    for (long j = 0; j < degree_; ++j) r[j] += prod[i] * pw[j];
  }
  return r;
}

CyclotomicField::Elem CyclotomicField::inv(const Elem& a) const {
  if (is_zero(a)) throw std::domain_error("cyclotomic: division by zero");
  // Extended Euclid in Q[x] against the (irreducible) modulus.
  Poly r0 = modulus_, r1(a);
  trim(r1);
  Poly s0, s1{Rat(1)};
  while (!r1.empty()) {
    Poly rem = r0;
    Poly q = poly_divmod(rem, r1);
    Poly qs(q.size() + s1.size(), Rat(0));
    for (size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
    }
    Poly s2(std::max(s0.size(), qs.size()), Rat(0));
    for (size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
    for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) throw std::logic_error("cyclotomic: modulus not irreducible?");
  // s0 * a == r0 (mod Phi_k); s0 has degree < degree_ here.
  Elem result = zero();
  for (size_t i = 0; i < s0.size(); ++i) result[i] = s0[i] / r0[0];
  return result;
}

long CyclotomicField::rank(std::vector<std::vector<Elem>> rows) const {
  if (rows.empty()) return 0;
  const size_t ncols = rows[0].size();
  size_t row = 0;
  for (size_t col = 0; col < ncols && row < rows.size(); ++col) {
    size_t piv = row;
    while (piv < rows.size() && is_zero(rows[piv][col])) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[row], rows[piv]);
    Elem inv_p = inv(rows[row][col]);
    for (size_t j = col; j < ncols; ++j) rows[row][j] = mul(rows[row][j], inv_p);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == row || is_zero(rows[i][col])) continue;
      Elem f = rows[i][col];
      for (size_t j = col; j < ncols; ++j)
        rows[i][j] = sub(rows[i][j], mul(f, rows[row][j]));
    }
    ++row;
  }
  return static_cast<long>(row);
}

const CyclotomicField& CyclotomicField::get(long k) {
  static std::mutex mu;
  static std::map<long, std::unique_ptr<CyclotomicField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it == cache.end())
    it = cache.emplace(k, std::make_unique<CyclotomicField>(k)).first;
  return *it->second;
}

}  // namespace strata
