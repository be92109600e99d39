#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace ranpart {

mpz_class factorial(int n);
mpz_class binomial(int n, int k);

// q^e for integer e (e >= 0, or any e with q != 0).
mpq_class pow_q(const mpq_class& q, long e);

// Bernoulli number B_n (B_1 = -1/2 convention), cached after first use.
// The cache is filled once under a mutex and read-only afterwards.
mpq_class bernoulli(unsigned n);

// zeta(-k) = -B_{k+1}/(k+1) for k >= 1; zeta(0) = -1/2.
mpq_class zeta_neg(unsigned k);

// "num/den", or just "num" when den == 1.
std::string rational_str(const mpq_class& q);

} // namespace ranpart
