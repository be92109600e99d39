#include "ranpart/partition.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace ranpart {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 1) throw ArgumentError("partition parts must be positive");
        if (i > 0 && parts_[i - 1] < parts_[i])
            throw ArgumentError("partition parts must be weakly decreasing");
        size_ += parts_[i];
    }
}

Partition Partition::parse(const std::string& text) {
    std::vector<int> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
        if (tok.empty()) continue;
        try {
            parts.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw ArgumentError("bad partition part '" + tok + "'");
        }
    }
    return Partition(std::move(parts));
}

std::string Partition::str() const {
    std::string s;
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(parts_[i]);
    }
    return s;
}

namespace {

void enum_rec(int remaining, int max_part, std::vector<int>& stack,
              std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(stack);
        return;
    }
    for (int k = std::min(remaining, max_part); k >= 1; --k) {
        stack.push_back(k);
        enum_rec(remaining - k, k, stack, out);
        stack.pop_back();
    }
}

std::vector<int> conjugate_parts(const Partition& lam) {
    std::vector<int> conj(lam.empty() ? 0 : static_cast<size_t>(lam.part(0)), 0);
    for (int i = 0; i < lam.num_parts(); ++i)
        for (int j = 0; j < lam.part(i); ++j) conj[static_cast<size_t>(j)]++;
    return conj;
}

} // namespace

std::vector<Partition> enumerate_partitions(int n, int limit) {
    if (n < 0) throw ArgumentError("enumerate_partitions: n must be >= 0");
    if (n > limit)
        throw ResourceError("enumerate_partitions: n = " + std::to_string(n) +
                            " exceeds limit " + std::to_string(limit));
    std::vector<Partition> out;
    std::vector<int> stack;
    enum_rec(n, n, stack, out);
    return out;
}

mpz_class dimension(const Partition& lam) {
    const auto conj = conjugate_parts(lam);
    mpz_class hooks = 1;
    for (int i = 0; i < lam.num_parts(); ++i)
        for (int j = 0; j < lam.part(i); ++j) {
            const int arm = lam.part(i) - (j + 1);
            const int leg = conj[static_cast<size_t>(j)] - (i + 1);
            hooks *= 1 + arm + leg;
        }
    mpz_class dim = factorial(lam.size()) / hooks;
#ifndef NDEBUG
    if (lam.size() <= 8) {
        assert(dim == dimension_det(lam));
        assert(dim == growth_paths(lam));
    }
#endif
    return dim;
}

mpz_class dimension_det(const Partition& lam) {
    const int k = lam.num_parts();
    mpz_class num = factorial(lam.size());
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j)
            num *= lam.part(i - 1) - lam.part(j - 1) + j - i;
    mpz_class den = 1;
    for (int i = 1; i <= k; ++i) den *= factorial(lam.part(i - 1) + k - i);
    return num / den;
}

mpz_class growth_paths(const Partition& lam) {
    std::map<Partition, mpz_class> memo;
    auto rec = [&memo](auto&& self, const Partition& mu) -> mpz_class {
        if (mu.empty()) return 1;
        auto it = memo.find(mu);
        if (it != memo.end()) return it->second;
        mpz_class total = 0;
        for (const auto& nu : shrink(mu)) total += self(self, nu);
        memo.emplace(mu, total);
        return total;
    };
    return rec(rec, lam);
}

HookArmLeg hook_arm_leg(const Partition& lam, int row, int col) {
    if (row < 1 || row > lam.num_parts() || col < 1 || col > lam.part(row - 1))
        throw ArgumentError("hook_arm_leg: cell outside the diagram");
    const auto conj = conjugate_parts(lam);
    const int a = lam.part(row - 1) - col;
    const int l = conj[static_cast<size_t>(col - 1)] - row;
    return HookArmLeg{1 + a + l, a, l};
}

ParticleSet particles(const Partition& lam) {
    const int ell = lam.num_parts();
    // Occupied integer offsets k (position k + 1/2) coming from the rows.
    std::set<std::int64_t> occ;
    for (int i = 1; i <= ell; ++i) occ.insert(lam.part(i - 1) - i);

    ParticleSet ps;
    for (std::int64_t k : occ)
        if (k >= 0) ps.positives.push_back(Half::from_index(k));
    std::sort(ps.positives.begin(), ps.positives.end(), std::greater<>());
    // Holes live strictly above the untouched deep sea, i.e. in [-ell, -1].
    for (std::int64_t k = -1; k >= -ell; --k)
        if (!occ.count(k)) ps.negative_holes.push_back(Half::from_index(k));
    return ps;
}

Partition from_particles(const ParticleSet& ps) {
    if (ps.positives.size() != ps.negative_holes.size())
        throw ArgumentError("particle set must have as many positives as holes");
    std::set<std::int64_t> pos, holes;
    for (const Half& h : ps.positives) {
        if (h.twice <= 0 || h.twice % 2 == 0)
            throw ArgumentError("positives must be positive half-integers");
        pos.insert(h.index());
    }
    for (const Half& h : ps.negative_holes) {
        if (h.twice >= 0 || h.twice % 2 == 0)
            throw ArgumentError("holes must be negative half-integers");
        holes.insert(h.index());
    }
    if (pos.size() != ps.positives.size() || holes.size() != ps.negative_holes.size())
        throw ArgumentError("particle set entries must be distinct");

    // Walk the occupied positions from the top; everything below the deepest
    // hole is untouched sea and yields only zero parts.
    std::int64_t floor_k = holes.empty() ? -1 : *holes.begin();
    std::vector<std::int64_t> occ_desc(pos.rbegin(), pos.rend());
    for (std::int64_t k = -1; k >= floor_k; --k)
        if (!holes.count(k)) occ_desc.push_back(k);

    std::vector<int> parts;
    for (size_t i = 0; i < occ_desc.size(); ++i) {
        const std::int64_t li = occ_desc[i] + static_cast<std::int64_t>(i) + 1;
        if (li < 0) throw ArgumentError("particle set does not encode a partition");
        if (li > 0) parts.push_back(static_cast<int>(li));
    }
    return Partition(std::move(parts));
}

std::vector<Partition> grow(const Partition& lam) {
    std::vector<Partition> out;
    const int ell = lam.num_parts();
    for (int i = 0; i <= ell; ++i) {
        if (i > 0 && lam.part(i - 1) <= lam.part(i)) continue; // not addable
        std::vector<int> parts = lam.parts();
        if (i == ell)
            parts.push_back(1);
        else
            parts[static_cast<size_t>(i)]++;
        out.emplace_back(std::move(parts));
    }
    return out;
}

std::vector<Partition> shrink(const Partition& lam) {
    std::vector<Partition> out;
    for (int i = 0; i < lam.num_parts(); ++i) {
        if (lam.part(i) == lam.part(i + 1)) continue; // not removable
        std::vector<int> parts = lam.parts();
        parts[static_cast<size_t>(i)]--;
        if (parts[static_cast<size_t>(i)] == 0) parts.pop_back();
        out.emplace_back(std::move(parts));
    }
    return out;
}

Partition transpose(const Partition& lam) {
    return Partition(conjugate_parts(lam));
}

mpq_class power_sum(int k, const Partition& lam) {
    if (k < 1) throw ArgumentError("power_sum: k must be >= 1");
    mpq_class acc = 0;
    for (int i = 1; i <= lam.num_parts(); ++i) {
        const mpq_class a(2 * (lam.part(i - 1) - i) + 1, 2); // lambda_i - i + 1/2
        const mpq_class b(-2 * i + 1, 2);                    // -i + 1/2
        acc += pow_q(a, k) - pow_q(b, k);
    }
    const mpz_class two_k = pow_q(mpq_class(2), k).get_num();
    acc += mpq_class(two_k - 1, two_k) * zeta_neg(static_cast<unsigned>(k));
    return acc;
}

std::complex<double> power_series_E(const Partition& lam, std::complex<double> z) {
    // Poles where e^z = 1, i.e. z in 2*pi*i*Z.
    const double two_pi = 2.0 * std::numbers::pi;
    const std::complex<double> nearest(0.0, two_pi * std::round(z.imag() / two_pi));
    if (std::abs(z - nearest) < 1e-9)
        throw NumericError("power_series_E: pole at e^z = 1");

    const int ell = lam.num_parts();
    std::complex<double> head = 0.0;
    for (int i = 1; i <= ell; ++i)
        head += std::exp(z * (lam.part(i - 1) - i + 0.5));
    // Geometric tail over the untouched sea below row ell.
    const std::complex<double> tail =
        std::exp(-z * (ell + 0.5)) / (1.0 - std::exp(-z));
    return head + tail;
}

mpz_class conjugacy_class_size(const Partition& eta) {
    mpz_class denom = 1;
    int run = 0;
    for (int i = 0; i < eta.num_parts(); ++i) {
        denom *= eta.part(i);
        run = (i > 0 && eta.part(i) == eta.part(i - 1)) ? run + 1 : 1;
        denom *= run; // accumulates multiplicity factorials incrementally
    }
    return factorial(eta.size()) / denom;
}

namespace {

// One Murnaghan-Nakayama step on the first-column beta-set: remove a border
// strip of length r, returning (resulting partition, sign) alternatives.
std::vector<std::pair<Partition, int>> strip_removals(const Partition& lam, int r) {
    const int L = lam.num_parts();
    std::vector<std::int64_t> beta(static_cast<size_t>(L));
    for (int i = 1; i <= L; ++i) beta[static_cast<size_t>(i - 1)] = lam.part(i - 1) + (L - i);
    std::set<std::int64_t> bs(beta.begin(), beta.end());

    std::vector<std::pair<Partition, int>> out;
    for (std::int64_t b : beta) {
        const std::int64_t target = b - r;
        if (target < 0 || bs.count(target)) continue;
        int height = 0;
        for (std::int64_t x : bs)
            if (x > target && x < b) ++height;
        std::vector<std::int64_t> nb;
        for (std::int64_t x : bs) nb.push_back(x == b ? target : x);
        std::sort(nb.rbegin(), nb.rend());
        std::vector<int> parts;
        for (int i = 1; i <= L; ++i) {
            const std::int64_t li = nb[static_cast<size_t>(i - 1)] - (L - i);
            if (li > 0) parts.push_back(static_cast<int>(li));
        }
        out.emplace_back(Partition(std::move(parts)), height % 2 == 0 ? 1 : -1);
    }
    return out;
}

mpz_class mn_character(const Partition& lam, const std::vector<int>& eta, size_t idx) {
    if (idx == eta.size()) return lam.empty() ? 1 : 0;
    mpz_class acc = 0;
    for (const auto& [mu, sign] : strip_removals(lam, eta[idx]))
        acc += sign * mn_character(mu, eta, idx + 1);
    return acc;
}

} // namespace

mpz_class character(const Partition& lam, const Partition& eta) {
    if (lam.size() != eta.size())
        throw ArgumentError("character: |lambda| and |eta| must match");
    return mn_character(lam, eta.parts(), 0);
}

mpq_class central_character(const Partition& eta, const Partition& lam) {
    if (lam.size() != eta.size())
        throw ArgumentError("central_character: |lambda| and |eta| must match");
    if (lam.empty()) return 1;
    mpq_class r(conjugacy_class_size(eta) * character(lam, eta), dimension(lam));
    r.canonicalize();
    return r;
}

mpz_class partition_count(int n) {
    if (n < 0) return 0;
    std::vector<mpz_class> p(static_cast<size_t>(n) + 1);
    p[0] = 1;
    for (int m = 1; m <= n; ++m) {
        mpz_class acc = 0;
        for (int k = 1;; ++k) {
            const int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
            if (g1 > m && g2 > m) break;
            const int sign = (k % 2 == 1) ? 1 : -1;
            if (g1 <= m) acc += sign * p[static_cast<size_t>(m - g1)];
            if (g2 <= m) acc += sign * p[static_cast<size_t>(m - g2)];
        }
        p[static_cast<size_t>(m)] = acc;
    }
    return p[static_cast<size_t>(n)];
}

} // namespace ranpart
