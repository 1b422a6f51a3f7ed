#include "bipres/prime_field.hpp"

#include "bipres/errors.hpp"

namespace bipres {

bool is_supported_prime(std::uint32_t p) {
  if (p < 2 || p >= (1u << 16)) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_supported_prime(p))
    throw ValidationError("field characteristic must be a prime below 2^16, got " +
                          std::to_string(p));
  if (p_ > 2) {
    // inv[i] = -(p / i) * inv[p % i] mod p, the usual linear-time recurrence.
    auto table = std::make_shared<std::vector<coeff_t>>(p_, coeff_t(0));
    (*table)[1] = 1;
    for (std::uint32_t i = 2; i < p_; ++i) {
      std::uint64_t v = std::uint64_t(p_ - p_ / i) * (*table)[p_ % i] % p_;
      (*table)[i] = coeff_t(v);
    }
    inverse_ = std::move(table);
  }
}

coeff_t PrimeField::inv(coeff_t a) const {
  if (a == 0) throw InternalError("division by zero in field");
  if (p_ == 2) return 1;
  return (*inverse_)[a];
}

}  // namespace bipres
