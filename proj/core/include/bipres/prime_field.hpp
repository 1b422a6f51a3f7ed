#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace bipres {

/// Element of Z/pZ, stored as its canonical representative in [0, p).
/// p is restricted to primes below 2^16, so products fit in 32 bits.
using coeff_t = std::uint16_t;

bool is_supported_prime(std::uint32_t p);

/// Arithmetic in Z/pZ for a small prime p. For p > 2 a table of inverses is
/// precomputed so a pivot cancellation costs one lookup; the table is shared
/// between copies.
class PrimeField {
 public:
  PrimeField() : PrimeField(2) {}

  /// Throws ValidationError unless p is a prime below 2^16.
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const { return p_; }

  coeff_t add(coeff_t a, coeff_t b) const {
    std::uint32_t s = std::uint32_t(a) + b;
    if (s >= p_) s -= p_;
    return coeff_t(s);
  }

  coeff_t sub(coeff_t a, coeff_t b) const {
    return a >= b ? coeff_t(a - b) : coeff_t(a + p_ - b);
  }

  coeff_t neg(coeff_t a) const { return a == 0 ? coeff_t(0) : coeff_t(p_ - a); }

  coeff_t mul(coeff_t a, coeff_t b) const {
    return coeff_t((std::uint32_t(a) * b) % p_);
  }

  /// Multiplicative inverse of a nonzero element.
  /// Throws InternalError("division by zero in field") for a == 0.
  coeff_t inv(coeff_t a) const;

  /// Canonical representative of an arbitrary integer.
  coeff_t reduce(std::int64_t v) const {
    std::int64_t r = v % std::int64_t(p_);
    if (r < 0) r += p_;
    return coeff_t(r);
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) {
    return a.p_ == b.p_;
  }

 private:
  std::uint32_t p_ = 2;
  std::shared_ptr<const std::vector<coeff_t>> inverse_;  // size p, built for p > 2
};

}  // namespace bipres
