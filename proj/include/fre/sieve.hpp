#pragma once

// Sieve-flavoured consequences of the finite expansion.  A "sieve function"
// here is a truncated divisor sum of range Q viewed against a length scale
// N, with level lambda = log Q / log N.  The exact skeletons:
//
//   arithmetic progressions   sum_{d <= Q, (d,t) | a} f'(d) (d,t)/d
//                               = sum_{k | t} hhat(k) c_k(a),
//   twisted sums              sum_{t | ell} mu(ell/t) sum_{k | t} hhat(k) c_k(a)
//                               = hhat(ell) c_ell(a),
//   coprimality removal       1_{(n,q)=1} = sum_{d | q, d | n} mu(d),
//
// feed the heuristics: AP main term (N/t) sum_{k|t} hhat(k) c_k(a), twisted
// main term hhat(ell) c_ell(a) N, and for G-sifted pairs (f'(q) = 0 whenever
// some prime p <= G divides q) the bare prediction fhat(1) ghat(1) N for the
// coprimality-restricted correlation.  The dyadic bound
// sum_{A < q <= B} |c_q(h)| <= 2 B d(h) caps every coefficient tail that
// appears along the way.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "fre/core_arith.hpp"
#include "fre/correlation.hpp"
#include "fre/expansion.hpp"
#include "fre/numeric.hpp"

namespace fre {

// --- sieve functions ----------------------------------------------------------

struct SieveFunction {
    TruncatedDivisorSum tds;       // f'(Q) != 0 after trailing-zero trim
    RamanujanCoefficients coeffs;  // hhat(1..Q)
    std::uint64_t level_context;   // the N in lambda = log Q / log N
    double growth_diagnostic;      // max_d |f'(d)| / d^0.1 (recorded, not asserted)

    std::uint64_t range() const { return tds.truncation(); }
    double level() const {
        return std::log(static_cast<double>(range())) / std::log(static_cast<double>(level_context));
    }
};

inline SieveFunction make_sieve_function(TruncatedDivisorSum tds, std::uint64_t N) {
    if (N < 2) throw std::invalid_argument("make_sieve_function: level context N must be >= 2");
    while (!tds.fp.empty() && tds.fp.back() == cplx{0.0, 0.0} && tds.fp.size() > 1) tds.fp.pop_back();
    if (tds.truncation() == 0)
        throw std::invalid_argument("make_sieve_function: degenerate input (all coefficients zero)");
    SieveFunction f;
    f.growth_diagnostic = 0.0;
    for (std::uint64_t d = 1; d <= tds.truncation(); ++d)
        f.growth_diagnostic = std::max(f.growth_diagnostic,
                                       std::abs(tds.fp[d]) / std::pow(static_cast<double>(d), 0.1));
    f.coeffs = finite_ramanujan_coefficients(tds);
    f.tds = std::move(tds);
    f.level_context = N;
    return f;
}

// --- arithmetic progressions ------------------------------------------------------

struct ApSum {
    cplx direct;     // sum_{n <= N, n === a (mod t)} f(n)
    cplx main_term;  // (N/t) sum_{k | t} hhat(k) c_k(a)
    cplx difference;
};

// only the class of a mod t matters (both the progression and c_k are
// periodic), so any integer a — negative residues included — is accepted
inline ApSum ap_sum(const SieveFunction& f, std::uint64_t N, std::int64_t a, std::uint64_t t_mod,
                    const SieveTables& t) {
    if (t_mod == 0) throw std::invalid_argument("ap_sum: modulus must be >= 1");
    if (N == 0 || N > t.limit) throw std::invalid_argument("ap_sum: N outside table range");
    std::uint64_t a0 = reduce_mod(a, t_mod);
    ApSum r;
    KahanCplx direct;
    for (std::uint64_t n = (a0 == 0 ? t_mod : a0); n <= N; n += t_mod)
        direct.add(evaluate_truncated(f.tds, n, t));
    r.direct = direct.value();
    KahanCplx main;
    for (std::uint64_t k : divisors(t_mod, t)) {
        if (k > f.range() || f.coeffs.h[k] == cplx{0.0, 0.0}) continue;
        main.add(f.coeffs.h[k] * static_cast<double>(ramanujan_sum(k, a, t)));
    }
    r.main_term = main.value() * (static_cast<double>(N) / static_cast<double>(t_mod));
    r.difference = r.direct - r.main_term;
    return r;
}

// both sides of the exact progression identity (no N involved)
struct IdentityPair {
    cplx lhs;
    cplx rhs;
};

inline IdentityPair ap_main_term_identity(const SieveFunction& f, std::uint64_t t_mod,
                                          std::int64_t a, const SieveTables& t) {
    if (t_mod == 0) throw std::invalid_argument("ap_main_term_identity: modulus must be >= 1");
    IdentityPair r;
    KahanCplx lhs;
    for (std::uint64_t d = 1; d <= f.range(); ++d) {
        if (f.tds.fp[d] == cplx{0.0, 0.0}) continue;
        std::uint64_t g = std::gcd(d, t_mod);
        std::uint64_t a0 = reduce_mod(a, g);
        if (a0 != 0) continue; // (d, t) must divide a
        lhs.add(f.tds.fp[d] * (static_cast<double>(g) / static_cast<double>(d)));
    }
    r.lhs = lhs.value();
    KahanCplx rhs;
    for (std::uint64_t k : divisors(t_mod, t)) {
        if (k > f.range()) continue;
        rhs.add(f.coeffs.h[k] * static_cast<double>(ramanujan_sum(k, a, t)));
    }
    r.rhs = rhs.value();
    return r;
}

// --- twisted sums -------------------------------------------------------------------

struct TwistedSum {
    cplx direct;     // sum_{n <= N} f(n) c_ell(n - a)
    cplx main_term;  // hhat(ell) c_ell(a) N
    cplx difference;
};

inline TwistedSum twisted_sum(const SieveFunction& f, std::uint64_t N, std::uint64_t ell,
                              std::int64_t a, const SieveTables& t) {
    t.check(ell, "twisted_sum");
    if (N == 0 || N > t.limit) throw std::invalid_argument("twisted_sum: N outside table range");
    auto row = ramanujan_period(ell, t);
    TwistedSum r;
    KahanCplx direct;
    for (std::uint64_t n = 1; n <= N; ++n) {
        std::uint64_t res = reduce_mod(static_cast<std::int64_t>(n) - a, ell);
        direct.add(evaluate_truncated(f.tds, n, t) * static_cast<double>(row[res]));
    }
    r.direct = direct.value();
    cplx hl = ell <= f.range() ? f.coeffs.h[ell] : cplx{0.0, 0.0};
    r.main_term = hl * static_cast<double>(ramanujan_sum(ell, a, t)) * static_cast<double>(N);
    r.difference = r.direct - r.main_term;
    return r;
}

// Moebius collapse behind the twisted main term:
//   sum_{t | ell} mu(ell/t) sum_{k | t} hhat(k) c_k(a) = hhat(ell) c_ell(a)
inline IdentityPair twisted_moebius_identity(const SieveFunction& f, std::uint64_t ell,
                                             std::int64_t a, const SieveTables& t) {
    t.check(ell, "twisted_moebius_identity");
    IdentityPair r;
    KahanCplx lhs;
    for (std::uint64_t d : divisors(ell, t)) {
        int m = t.mu[ell / d];
        if (m == 0) continue;
        KahanCplx inner;
        for (std::uint64_t k : divisors(d, t)) {
            if (k > f.range()) continue;
            inner.add(f.coeffs.h[k] * static_cast<double>(ramanujan_sum(k, a, t)));
        }
        lhs.add(static_cast<double>(m) * inner.value());
    }
    r.lhs = lhs.value();
    cplx hl = ell <= f.range() ? f.coeffs.h[ell] : cplx{0.0, 0.0};
    r.rhs = hl * static_cast<double>(ramanujan_sum(ell, a, t));
    return r;
}

// --- G-sifted functions ----------------------------------------------------------------

struct GSiftedFunction {
    SieveFunction base;
    std::uint64_t G;
};

// Keep rule(q) only where q = 1 or every prime factor of q exceeds G.  The
// construction self-checks two exact consequences: the coefficient support
// law (hhat(q) = 0 for 1 < q <= G and for q sharing a factor with P(G)) and
// the sift invariance f(n) = f(n / (n, P(G))) on pseudo-random samples.
// level_context = 0 picks N = max(Q, 2), i.e. level 1, for callers that do
// not study the level.
inline GSiftedFunction make_gsifted(const std::function<cplx(std::uint64_t)>& rule, std::uint64_t Q,
                                    std::uint64_t G, const SieveTables& t,
                                    std::uint64_t level_context = 0) {
    if (G < 2) throw std::invalid_argument("make_gsifted: sift bound G must be >= 2");
    if (Q == 0 || Q > t.limit) throw std::invalid_argument("make_gsifted: Q outside table range");
    TruncatedDivisorSum tds;
    tds.fp.assign(Q + 1, cplx{0.0, 0.0});
    for (std::uint64_t q = 1; q <= Q; ++q)
        if (coprime_to_primorial(q, G, t)) tds.fp[q] = rule(q);
    if (level_context == 0) level_context = std::max<std::uint64_t>(Q, 2);
    GSiftedFunction g;
    g.base = make_sieve_function(std::move(tds), level_context); // throws if everything vanished
    g.G = G;
    for (std::uint64_t q = 2; q <= g.base.range(); ++q) {
        if (q <= G || !coprime_to_primorial(q, G, t)) {
            if (g.base.coeffs.h[q] != cplx{0.0, 0.0})
                throw std::logic_error("make_gsifted: coefficient support law violated");
        }
    }
    SplitMix64 rng{0x51F7ull ^ (Q << 8) ^ (G << 40)};
    for (int s = 0; s < 16; ++s) {
        std::uint64_t n = static_cast<std::uint64_t>(
            rng.range(1, static_cast<std::int64_t>(std::min<std::uint64_t>(t.limit, 1000000))));
        std::uint64_t m = n;
        while (m > 1 && t.spf[m] <= G) m /= t.spf[m];
        if (evaluate_truncated(g.base.tds, n, t) != evaluate_truncated(g.base.tds, m, t))
            throw std::logic_error("make_gsifted: sift invariance violated");
    }
    return g;
}

// --- coprimality-restricted sums ------------------------------------------------------------

struct CoprimeSum {
    cplx restricted;   // sum_{n <= N, (n,q) = 1} f(n)
    cplx unrestricted; // sum_{n <= N} f(n)
    cplx difference;
};

inline CoprimeSum coprime_sum(const SieveFunction& f, std::uint64_t N, std::uint64_t q,
                              std::uint64_t G, const SieveTables& t) {
    t.check(q, "coprime_sum");
    if (N == 0 || N > t.limit) throw std::invalid_argument("coprime_sum: N outside table range");
    if (!coprime_to_primorial(q, G, t))
        throw std::invalid_argument("coprime_sum: q shares a prime factor <= G with the primorial");
    CoprimeSum r;
    KahanCplx restricted, all;
    for (std::uint64_t n = 1; n <= N; ++n) {
        cplx v = evaluate_truncated(f.tds, n, t);
        all.add(v);
        if (std::gcd(n, q) == 1) restricted.add(v);
    }
    r.restricted = restricted.value();
    r.unrestricted = all.value();
    r.difference = r.restricted - r.unrestricted;
    return r;
}

// the same restricted sum through 1_{(n,q)=1} = sum_{d | q} mu(d) [d | n]
inline cplx coprime_sum_moebius(const SieveFunction& f, std::uint64_t N, std::uint64_t q,
                                const SieveTables& t) {
    KahanCplx acc;
    for (std::uint64_t d : divisors(q, t)) {
        int m = t.mu[d];
        if (m == 0) continue;
        KahanCplx inner;
        for (std::uint64_t n = d; n <= N; n += d) inner.add(evaluate_truncated(f.tds, n, t));
        acc.add(static_cast<double>(m) * inner.value());
    }
    return acc.value();
}

struct CoprimeCorrelation {
    cplx value;      // sum_{n <= N, (n,q) = 1} f(n) g(n+h)
    cplx prediction; // fhat(1) ghat(1) N
    cplx residual;
};

// correlation against a G-sifted partner with the n-side coprimality
// restriction; the regime asks 0 < |h| <= G and (q, P(G)) = 1
inline CoprimeCorrelation coprime_correlation(const SieveFunction& f, const GSiftedFunction& g,
                                              std::uint64_t N, std::int64_t h, std::uint64_t q,
                                              const SieveTables& t) {
    if (h == 0 || static_cast<std::uint64_t>(h < 0 ? -h : h) > g.G)
        throw std::invalid_argument("coprime_correlation: requires 0 < |h| <= G");
    t.check(q, "coprime_correlation");
    if (!coprime_to_primorial(q, g.G, t))
        throw std::invalid_argument("coprime_correlation: q shares a prime factor <= G");
    if (N == 0) throw std::invalid_argument("coprime_correlation: N must be >= 1");
    CoprimeCorrelation r;
    KahanCplx acc;
    for (std::uint64_t n = 1; n <= N; ++n) {
        if (std::gcd(n, q) != 1) continue;
        std::int64_t m = static_cast<std::int64_t>(n) + h;
        if (m < 1) continue;
        acc.add(evaluate_truncated(f.tds, n, t)
                * evaluate_truncated(g.base.tds, static_cast<std::uint64_t>(m), t));
    }
    r.value = acc.value();
    r.prediction = f.coeffs.h[1] * g.base.coeffs.h[1] * static_cast<double>(N);
    r.residual = r.value - r.prediction;
    return r;
}

// --- dyadic coefficient-tail bound ------------------------------------------------------------

struct DyadicBound {
    double sum;   // sum_{A < q <= B} |c_q(h)|
    double bound; // 2 B d(h)
};

inline DyadicBound dyadic_csum_bound_check(std::uint64_t A, std::uint64_t B, std::uint64_t h,
                                           const SieveTables& t) {
    if (h == 0) throw std::invalid_argument("dyadic_csum_bound_check: h must be >= 1");
    if (A >= B || B > t.limit)
        throw std::invalid_argument("dyadic_csum_bound_check: need 0 <= A < B <= table limit");
    KahanSum s;
    for (std::uint64_t q = A + 1; q <= B; ++q)
        s.add(std::abs(static_cast<double>(ramanujan_sum_closed(q, static_cast<std::int64_t>(h), t))));
    DyadicBound r;
    r.sum = s.value();
    r.bound = 2.0 * static_cast<double>(B) * static_cast<double>(divisor_count(h, t));
    return r;
}

// --- mean value ---------------------------------------------------------------------------------

struct MeanValue {
    cplx empirical; // (1/x) sum_{n <= x} f(n)
    cplx limit;     // hhat(1) = sum_d f'(d)/d
    double drift;
};

// every truncated divisor sum has the mean value hhat(1); the empirical mean
// approaches it at speed sum_d |f'(d)| / x
inline MeanValue mean_value_drift(const SieveFunction& f, std::uint64_t x) {
    if (x == 0) throw std::invalid_argument("mean_value_drift: x must be >= 1");
    MeanValue r;
    r.empirical = truncated_partial_sum(f.tds, x) / static_cast<double>(x);
    r.limit = f.coeffs.h[1];
    r.drift = rel_err(r.empirical, r.limit);
    return r;
}

// --- correlation through the double expansion ----------------------------------------------------

// T(d, q; h, N) = sum_{n <= N} c_d(n) c_q(n+h), exact in integers: the
// summand is lcm(d,q)-periodic, so one period plus a partial block suffices
inline std::int64_t csum_correlation(std::uint64_t d, std::uint64_t q, std::uint64_t h,
                                     std::uint64_t N, const SieveTables& t) {
    auto rd = ramanujan_period(d, t);
    auto rq = ramanujan_period(q, t);
    std::uint64_t L = std::lcm(d, q);
    std::int64_t period = 0, partial = 0;
    std::uint64_t cut = N % L;
    for (std::uint64_t r = 1; r <= L; ++r) {
        std::int64_t term = rd[r % d] * rq[(r + h) % q];
        period += term;
        if (r <= cut) partial += term;
    }
    return static_cast<std::int64_t>(N / L) * period + partial;
}

struct FreSplit {
    cplx value;      // sum_d fhat(d) sum_q ghat(q) T(d, q; h, N)
    cplx main_term;  // S_{f,g}(h) N
    cplx residual;
    double level_sum; // lambda(f) + lambda(g)
    bool in_regime;   // level_sum < 1
};

inline FreSplit fre_correlation_formula(const SieveFunction& f, const SieveFunction& g,
                                        std::uint64_t N, std::uint64_t h, const SieveTables& t) {
    if (N == 0) throw std::invalid_argument("fre_correlation_formula: N must be >= 1");
    FreSplit r;
    KahanCplx acc;
    for (std::uint64_t d = 1; d <= f.range(); ++d) {
        if (f.coeffs.h[d] == cplx{0.0, 0.0}) continue;
        for (std::uint64_t q = 1; q <= g.range(); ++q) {
            if (g.coeffs.h[q] == cplx{0.0, 0.0}) continue;
            std::int64_t T = csum_correlation(d, q, h, N, t);
            if (T != 0) acc.add(f.coeffs.h[d] * g.coeffs.h[q] * static_cast<double>(T));
        }
    }
    r.value = acc.value();
    r.main_term = singular_sum_coefficient_form(f.coeffs, g.coeffs, h, t) * static_cast<double>(N);
    r.residual = r.value - r.main_term;
    r.level_sum = f.level() + g.level();
    r.in_regime = r.level_sum < 1.0;
    return r;
}

} // namespace fre
