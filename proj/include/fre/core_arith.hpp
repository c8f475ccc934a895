#pragma once

// Integer backbone: a linear sieve producing mu / phi / smallest-prime-factor
// tables, divisor enumeration on top of it, and the Ramanujan sum
//
//   c_q(n) = sum_{a in (Z/q)^*} e(an/q) = sum_{d | (n,q)} d * mu(q/d),
//
// evaluated exactly in integers.  The closed form
//
//   c_q(n) = phi(q) * mu(q/(n,q)) / phi(q/(n,q))
//
// is kept as an independent second route; the two are cross-checked by the
// verification suites.  All values here are exact (int64 / big int), the
// floating point starts one layer up.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fre/numeric.hpp"

namespace fre {

using bigint = boost::multiprecision::cpp_int;

// hard cap on sieve size: ~9 bytes per entry, so 1e8 entries ~ 0.9 GB
constexpr std::uint64_t kMaxTablesLimit = 100000000;

struct SieveTables {
    std::uint64_t limit = 0;
    std::vector<std::int8_t> mu;    // Moebius function
    std::vector<std::uint32_t> phi; // Euler totient
    std::vector<std::uint32_t> spf; // smallest prime factor; spf[1] = 1

    void check(std::uint64_t n, const char* who) const {
        if (n == 0 || n > limit)
            throw std::invalid_argument(std::string(who) + ": argument " + std::to_string(n)
                                        + " outside table range [1, " + std::to_string(limit) + "]");
    }

    int mobius(std::uint64_t n) const { check(n, "mobius"); return mu[n]; }
    std::uint64_t totient(std::uint64_t n) const { check(n, "totient"); return phi[n]; }
    bool is_prime(std::uint64_t n) const { check(n, "is_prime"); return n >= 2 && spf[n] == n; }
};

inline SieveTables build_tables(std::uint64_t limit) {
    if (limit == 0)
        throw std::invalid_argument("build_tables: limit must be >= 1");
    if (limit > kMaxTablesLimit)
        throw std::length_error("build_tables: limit " + std::to_string(limit)
                                + " exceeds memory budget (" + std::to_string(kMaxTablesLimit) + ")");

    SieveTables t;
    t.limit = limit;
    t.mu.assign(limit + 1, 0);
    t.phi.assign(limit + 1, 0);
    t.spf.assign(limit + 1, 0);
    t.mu[1] = 1;
    t.phi[1] = 1;
    t.spf[1] = 1;

    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (t.spf[i] == 0) {
            t.spf[i] = static_cast<std::uint32_t>(i);
            t.mu[i] = -1;
            t.phi[i] = static_cast<std::uint32_t>(i - 1);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        for (std::uint32_t p : primes) {
            if (p > t.spf[i] || i * p > limit) break;
            std::uint64_t ip = i * p;
            t.spf[ip] = p;
            if (i % p == 0) {
                t.mu[ip] = 0;
                t.phi[ip] = t.phi[i] * p;
                break; // p == spf[i]; larger primes handled when i' = ip
            }
            t.mu[ip] = static_cast<std::int8_t>(-t.mu[i]);
            t.phi[ip] = t.phi[i] * (p - 1);
        }
    }
    return t;
}

// --- divisors ---------------------------------------------------------------

// prime factorisation (p, multiplicity) using the spf table
inline std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n, const SieveTables& t) {
    t.check(n, "factorize");
    std::vector<std::pair<std::uint64_t, unsigned>> f;
    while (n > 1) {
        std::uint64_t p = t.spf[n];
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        f.emplace_back(p, e);
    }
    return f;
}

// all divisors of n, ascending
inline std::vector<std::uint64_t> divisors(std::uint64_t n, const SieveTables& t) {
    auto f = factorize(n, t);
    std::vector<std::uint64_t> d{1};
    for (auto [p, e] : f) {
        std::size_t sz = d.size();
        std::uint64_t pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i) d.push_back(d[i] * pk);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

inline std::uint64_t divisor_count(std::uint64_t n, const SieveTables& t) {
    std::uint64_t c = 1;
    for (auto [p, e] : factorize(n, t)) c *= e + 1;
    return c;
}

// --- Ramanujan sums ---------------------------------------------------------

// n taken mod q (c_q is q-periodic, so any integer n is fine)
inline std::uint64_t reduce_mod(std::int64_t n, std::uint64_t q) {
    std::int64_t m = n % static_cast<std::int64_t>(q);
    if (m < 0) m += static_cast<std::int64_t>(q);
    return static_cast<std::uint64_t>(m);
}

// divisor-sum form: c_q(n) = sum_{d | (n,q)} d * mu(q/d); c_q(0) = phi(q)
inline std::int64_t ramanujan_sum(std::uint64_t q, std::int64_t n, const SieveTables& t) {
    t.check(q, "ramanujan_sum");
    std::uint64_t r = reduce_mod(n, q);
    std::uint64_t g = (r == 0) ? q : std::gcd(r, q);
    std::int64_t s = 0;
    for (std::uint64_t d : divisors(g, t))
        s += static_cast<std::int64_t>(d) * t.mu[q / d];
    return s;
}

// closed form via totients; exact because phi(q/(n,q)) | phi(q)
inline std::int64_t ramanujan_sum_closed(std::uint64_t q, std::int64_t n, const SieveTables& t) {
    t.check(q, "ramanujan_sum_closed");
    std::uint64_t r = reduce_mod(n, q);
    std::uint64_t g = (r == 0) ? q : std::gcd(r, q);
    std::uint64_t m = q / g;
    if (t.mu[m] == 0) return 0;
    std::uint64_t quot = t.phi[q] / t.phi[m];
    return static_cast<std::int64_t>(quot) * t.mu[m];
}

// period table c_q(0..q-1); lets inner loops trade the divisor walk for a lookup
inline std::vector<std::int64_t> ramanujan_period(std::uint64_t q, const SieveTables& t) {
    std::vector<std::int64_t> row(q);
    for (std::uint64_t r = 0; r < q; ++r)
        row[r] = ramanujan_sum(q, static_cast<std::int64_t>(r), t);
    return row;
}

// --- primorial ---------------------------------------------------------------

// P(G) = prod_{p <= G} p; exceeds 2^64 from G = 53 on, hence the big int
inline bigint primorial(std::uint64_t G, const SieveTables& t) {
    t.check(G, "primorial");
    bigint P = 1;
    for (std::uint64_t p = 2; p <= G; ++p)
        if (t.spf[p] == p) P *= p;
    return P;
}

// (n, P(G)) = 1 without touching the big product: no prime factor of n is <= G
inline bool coprime_to_primorial(std::uint64_t n, std::uint64_t G, const SieveTables& t) {
    t.check(n, "coprime_to_primorial");
    while (n > 1) {
        std::uint64_t p = t.spf[n];
        if (p <= G) return false;
        while (n % p == 0) n /= p;
    }
    return true;
}

} // namespace fre
