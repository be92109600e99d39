#include "ranpart/rational.hpp"

#include <mutex>
#include <vector>

#include "ranpart/errors.hpp"
#include "ranpart/halfint.hpp"

namespace ranpart {

mpz_class factorial(int n) {
    if (n < 0) throw ArgumentError("factorial: negative argument");
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

mpz_class binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

mpq_class pow_q(const mpq_class& q, long e) {
    if (e == 0) return 1;
    if (e < 0) {
        if (q == 0) throw ArgumentError("pow_q: 0 to a negative power");
        return 1 / pow_q(q, -e);
    }
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), q.get_den().get_mpz_t(), static_cast<unsigned long>(e));
    mpq_class r(num, den);
    r.canonicalize();
    return r;
}

namespace {
std::mutex g_bernoulli_mutex;
std::vector<mpq_class> g_bernoulli; // B_0, B_1, ...
} // namespace

mpq_class bernoulli(unsigned n) {
    std::lock_guard<std::mutex> lock(g_bernoulli_mutex);
    if (g_bernoulli.empty()) g_bernoulli.push_back(1);
    // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1  =>  solve for B_m.
    while (g_bernoulli.size() <= n) {
        const int m = static_cast<int>(g_bernoulli.size());
        mpq_class acc = 0;
        for (int j = 0; j < m; ++j)
            acc += mpq_class(binomial(m + 1, j)) * g_bernoulli[static_cast<size_t>(j)];
        g_bernoulli.push_back(-acc / mpq_class(m + 1));
    }
    return g_bernoulli[n];
}

mpq_class zeta_neg(unsigned k) {
    if (k == 0) return mpq_class(-1, 2);
    return -bernoulli(k + 1) / mpq_class(static_cast<long>(k) + 1);
}

std::string rational_str(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Half parse_half(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos || s.substr(slash + 1) != "2")
        throw ArgumentError("half-integer must be written as odd/2, got '" + s + "'");
    std::int64_t t = 0;
    try {
        t = std::stoll(s.substr(0, slash));
    } catch (const std::exception&) {
        throw ArgumentError("bad half-integer '" + s + "'");
    }
    if (t % 2 == 0) throw ArgumentError("half-integer numerator must be odd: '" + s + "'");
    return Half{t};
}

} // namespace ranpart
