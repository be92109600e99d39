#pragma once

#include <complex>
#include <map>
#include <variant>
#include <vector>

#include "ranpart/partition.hpp"

namespace ranpart {

// A finite vector in the charge-zero sector of the infinite wedge space,
// expanded over the orthonormal basis v_lambda. Terms whose energy |lambda|
// would exceed e_max are dropped and the `truncated` flag records that this
// happened (exactness is auditable: untruncated results are exact in the
// coefficient type).
template <class Coeff>
struct FockVector {
    std::map<Partition, Coeff> coeffs;
    int e_max = 0;
    bool truncated = false;
};

using FockQ = FockVector<mpq_class>;            // exact rational coefficients
using FockC = FockVector<std::complex<double>>; // numeric coefficients

template <class Coeff>
FockVector<Coeff> vacuum(int e_max) {
    FockVector<Coeff> v;
    v.e_max = e_max;
    v.coeffs.emplace(Partition{}, Coeff(1));
    return v;
}

// alpha_n: moves one particle of the configuration down by n (so alpha_{-1}
// adds a box in all possible ways), with the fermionic sign
// (-1)^{#occupied sites strictly between source and target}.
template <class Coeff>
FockVector<Coeff> apply_alpha(int n, const FockVector<Coeff>& v);

// Diagonal operator with eigenvalue power_series_E(lambda, z) on v_lambda.
FockC apply_E(std::complex<double> z, const FockC& v);

template <class Coeff>
Coeff inner(const FockVector<Coeff>& u, const FockVector<Coeff>& w);

template <class Coeff>
double norm2(const FockVector<Coeff>& v);

// --- operator words --------------------------------------------------------

struct Alpha {
    int n;
};
struct EInsertion {
    std::complex<double> z;
};
struct ScalarExpAlpha { // exp(c * alpha_{-n})
    std::complex<double> c;
    int n;
};
using WordAtom = std::variant<Alpha, EInsertion, ScalarExpAlpha>;
using OperatorWord = std::vector<WordAtom>; // written left to right, applied right to left

struct Expectation {
    std::complex<double> value = 0.0;
    bool truncated = false; // some intermediate term hit the energy cutoff
    double drift = 0.0;     // |value(e_max) - value(e_max + 5)|
    bool stable = true;     // drift below the stability tolerance
};

// Apply a word to a vector, rightmost atom first.
FockC apply_word(const OperatorWord& word, FockC v);

// <word> = (word . v_vacuum, v_vacuum), evaluated under truncation e_max and
// re-evaluated at e_max + 5 to attach a stability verdict.
Expectation vacuum_expectation(const OperatorWord& word, int e_max,
                               double stability_tol = 1e-9);

// Coefficients c_d of tr_0 q^{L_0} prod_i E(z_i) = sum_d c_d q^d, d <= e_max;
// each c_d is a full (exact-enumeration) sum over |lambda| = d.
std::vector<std::complex<double>> trace_weighted_coeffs(
    const std::vector<std::complex<double>>& zs, int e_max);

std::complex<double> trace_weighted(std::complex<double> q,
                                    const std::vector<std::complex<double>>& zs,
                                    int e_max);

// Schur function s_lambda(t) = (exp(sum_n t_n alpha_{-n}) v_vac, v_lambda),
// computed by expanding the exponential up to energy |lambda| (exact there).
// Coeff = mpq_class gives exact polynomial evaluation.
template <class Coeff>
Coeff schur_function(const Partition& lam, const std::vector<Coeff>& t);

// Probability measure |(v, v_lambda)|^2 / ||v||^2 induced by a vector.
std::map<Partition, double> measure_from_vector(const FockC& v);
std::map<Partition, mpq_class> measure_from_vector_exact(const FockQ& v);

} // namespace ranpart
