#pragma once

#include <map>
#include <memory>
#include <vector>

#include "strata/rational.hpp"

namespace strata {

// Elements of Q(zeta_k) as rational polynomials reduced modulo the k-th
// cyclotomic polynomial. Coefficient vectors have fixed length phi(k).
class CyclotomicField {
 public:
  explicit CyclotomicField(long k);

  long k() const { return k_; }
  long degree() const { return degree_; }

  using Elem = std::vector<Rat>;

  Elem zero() const { return Elem(degree_, Rat(0)); }
  Elem one() const;
  Elem from_rat(const Rat& r) const;
  // zeta_k^s
  Elem zeta_pow(long s) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem inv(const Elem& a) const;
  bool is_zero(const Elem& a) const;

  // Exact row rank of a matrix with entries in Q(zeta_k).
  long rank(std::vector<std::vector<Elem>> rows) const;

  // Shared per-k instance; fields are immutable once built.
  static const CyclotomicField& get(long k);

 private:
  long k_;
  long degree_;
  // Monic cyclotomic polynomial Phi_k, coefficients of degree 0..degree_.
  std::vector<Rat> modulus_;
  // x^(degree_ + i) reduced mod Phi_k, for i in [0, degree_).
  std::vector<std::vector<Rat>> power_table_;
};

}  // namespace strata
