#pragma once

// Shifted convolution sums ("correlations") of truncated divisor sums,
//
//   C_{f,g}(N,h) = sum_{n <= N} f_D(n) g_D'(n+h),
//
// by direct evaluation and by the exact divisor-pair expansion
//
//   C = sum_{d <= D} f'(d) sum_{q <= D'} g'(q) #{n <= N : d | n, q | n+h},
//
// where the inner count is a CRT class.  The heuristic main term is
// S_{f,g}(h) * N with the singular sum
//
//   S_{f,g}(h) = sum_q fhat(q) ghat(q) c_q(h)
//              = sum_{l | h} l sum_{d} f'(d)/d sum_{(q,d)=l} g'(q)/q,
//
// the second (Eratosthenes) form being a finite rearrangement of the first;
// for h = 0 every l >= 1 contributes.  Specialising f = g = Lambda_N gives
// the truncated twin-type series sum_q mu^2(q)/phi^2(q) c_q(h), whose
// partial sums for even h approach the classical twin constant.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "fre/core_arith.hpp"
#include "fre/expansion.hpp"
#include "fre/numeric.hpp"

namespace fre {

// --- direct correlation -------------------------------------------------------

inline cplx correlate_direct(const TruncatedDivisorSum& f, const TruncatedDivisorSum& g,
                             std::uint64_t N, std::uint64_t h, const SieveTables& t) {
    if (N == 0) throw std::invalid_argument("correlate_direct: N must be >= 1");
    if (N + h > t.limit)
        throw std::invalid_argument("correlate_direct: N + h exceeds table range");
    KahanCplx acc;
    for (std::uint64_t n = 1; n <= N; ++n)
        acc.add(evaluate_truncated(f, n, t) * evaluate_truncated(g, n + h, t));
    return acc.value();
}

inline cplx correlate_direct(const ArithmeticFunction& f, const ArithmeticFunction& g,
                             std::uint64_t N, std::uint64_t h) {
    if (N == 0) throw std::invalid_argument("correlate_direct: N must be >= 1");
    if (N > f.domain_limit || N + h > g.domain_limit)
        throw std::invalid_argument("correlate_direct: N + h exceeds function domain");
    KahanCplx acc;
    for (std::uint64_t n = 1; n <= N; ++n) acc.add(f.evaluate(n) * g.evaluate(n + h));
    return acc.value();
}

// --- divisor-pair expansion -----------------------------------------------------

namespace detail {

// x with a x === 1 (mod m), m >= 1, (a, m) = 1; extended Euclid
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t r0 = m, r1 = a % m, s0 = 0, s1 = 1;
    if (r1 < 0) r1 += m;
    while (r1 != 0) {
        std::int64_t k = r0 / r1;
        r0 -= k * r1; std::swap(r0, r1);
        s0 -= k * s1; std::swap(s0, s1);
    }
    return s0 < 0 ? s0 + m : s0;
}

// #{n in [1, N] : n === 0 (mod d), n === -h (mod q)}
inline std::uint64_t crt_count(std::uint64_t d, std::uint64_t q, std::uint64_t h, std::uint64_t N) {
    std::uint64_t g = std::gcd(d, q);
    if (h % g != 0) return 0;
    std::uint64_t q1 = q / g;
    // solve (d/g) x === (-h/g) (mod q1); n = d x
    std::uint64_t m = (q1 - (h / g) % q1) % q1;
    std::uint64_t x0 = q1 == 1 ? 0
        : (m * static_cast<std::uint64_t>(mod_inverse(static_cast<std::int64_t>((d / g) % q1),
                                                      static_cast<std::int64_t>(q1)))) % q1;
    std::uint64_t L = d * q1; // lcm(d, q)
    std::uint64_t n0 = d * x0;
    if (n0 == 0) n0 = L;
    return n0 > N ? 0 : (N - n0) / L + 1;
}

} // namespace detail

inline cplx correlate_via_divisors(const TruncatedDivisorSum& f, const TruncatedDivisorSum& g,
                                   std::uint64_t N, std::uint64_t h) {
    if (N == 0) throw std::invalid_argument("correlate_via_divisors: N must be >= 1");
    KahanCplx acc;
    for (std::uint64_t d = 1; d <= f.truncation(); ++d) {
        if (f.fp[d] == cplx{0.0, 0.0}) continue;
        for (std::uint64_t q = 1; q <= g.truncation(); ++q) {
            if (g.fp[q] == cplx{0.0, 0.0}) continue;
            std::uint64_t cnt = detail::crt_count(d, q, h, N);
            if (cnt != 0) acc.add(f.fp[d] * g.fp[q] * static_cast<double>(cnt));
        }
    }
    return acc.value();
}

// --- singular sums -----------------------------------------------------------

// sum_q fhat(q) ghat(q) c_q(h); coefficients beyond either range count as zero
inline cplx singular_sum_coefficient_form(const RamanujanCoefficients& fc,
                                          const RamanujanCoefficients& gc,
                                          std::uint64_t h, const SieveTables& t) {
    std::uint64_t Q = std::min(fc.range(), gc.range());
    if (Q > t.limit)
        throw std::invalid_argument("singular_sum_coefficient_form: range exceeds table range");
    KahanCplx acc;
    for (std::uint64_t q = 1; q <= Q; ++q) {
        cplx w = fc.h[q] * gc.h[q];
        if (w == cplx{0.0, 0.0}) continue;
        acc.add(w * static_cast<double>(ramanujan_sum(q, static_cast<std::int64_t>(h), t)));
    }
    return acc.value();
}

// sum_{l | h} l sum_d f'(d)/d sum_{(q,d)=l} g'(q)/q; for h = 0 all l >= 1
// contribute (the gcd condition truncates the l-range automatically)
inline cplx singular_sum_eratosthenes_form(const TruncatedDivisorSum& f,
                                           const TruncatedDivisorSum& g, std::uint64_t h) {
    const std::uint64_t Df = f.truncation(), Dg = g.truncation();
    const std::uint64_t lmax = std::min(Df, Dg);
    KahanCplx acc;
    for (std::uint64_t l = 1; l <= lmax; ++l) {
        if (h != 0 && h % l != 0) continue;
        for (std::uint64_t d = l; d <= Df; d += l) {
            if (f.fp[d] == cplx{0.0, 0.0}) continue;
            cplx fd = f.fp[d] / static_cast<double>(d);
            for (std::uint64_t q = l; q <= Dg; q += l) {
                if (std::gcd(d, q) != l) continue;
                if (g.fp[q] == cplx{0.0, 0.0}) continue;
                acc.add(static_cast<double>(l) * fd * g.fp[q] / static_cast<double>(q));
            }
        }
    }
    return acc.value();
}

// --- heuristic decomposition C = S*N + residual ---------------------------------

struct HeuristicSplit {
    cplx correlation; // C_{f,g}(N, h), computed directly
    cplx main_term;   // S_{f,g}(h) * N
    cplx residual;    // C - S*N
};

inline HeuristicSplit heuristic_residual(const TruncatedDivisorSum& f, const TruncatedDivisorSum& g,
                                         std::uint64_t N, std::uint64_t h, const SieveTables& t) {
    HeuristicSplit r;
    r.correlation = correlate_direct(f, g, N, h, t);
    cplx S = singular_sum_coefficient_form(finite_ramanujan_coefficients(f),
                                           finite_ramanujan_coefficients(g), h, t);
    r.main_term = S * static_cast<double>(N);
    r.residual = r.correlation - r.main_term;
    return r;
}

// --- twin-type series -----------------------------------------------------------

// partial sum of sum_q mu^2(q)/phi^2(q) c_q(h): the h-dependent singular
// series of the ideal (non-truncated) von Mangoldt correlation
inline double twin_singular_series_partial(std::uint64_t h, std::uint64_t Q, const SieveTables& t) {
    if (h == 0) throw std::invalid_argument("twin_singular_series_partial: h must be >= 1");
    if (Q == 0 || Q > t.limit)
        throw std::invalid_argument("twin_singular_series_partial: Q outside table range");
    KahanSum acc;
    for (std::uint64_t q = 1; q <= Q; ++q) {
        if (t.mu[q] == 0) continue;
        double ph = static_cast<double>(t.phi[q]);
        acc.add(static_cast<double>(ramanujan_sum_closed(q, static_cast<std::int64_t>(h), t))
                / (ph * ph));
    }
    return acc.value();
}

struct TwinComparison {
    double truncated_sum; // sum_q lambda_hat_N(q)^2 c_q(h) over q <= N
    double partial_ideal; // twin series partial sum up to Q
    double difference;
};

// singular sum of the truncated von Mangoldt function against the ideal
// series: the truncation bias at level N, measured at shift h
inline TwinComparison truncated_vs_ideal_singular(std::uint64_t N, std::uint64_t h, std::uint64_t Q,
                                                  const SieveTables& t) {
    if (N == 0 || N > t.limit)
        throw std::invalid_argument("truncated_vs_ideal_singular: N outside table range");
    auto lam = eratosthenes_transform(make_mangoldt(t), N, t);
    auto c = finite_ramanujan_coefficients(lam);
    KahanSum acc;
    for (std::uint64_t q = 1; q <= N; ++q) {
        double hq = c.h[q].real();
        if (hq == 0.0) continue;
        acc.add(hq * hq * static_cast<double>(ramanujan_sum_closed(q, static_cast<std::int64_t>(h), t)));
    }
    TwinComparison r;
    r.truncated_sum = acc.value();
    r.partial_ideal = twin_singular_series_partial(h, Q, t);
    r.difference = r.truncated_sum - r.partial_ideal;
    return r;
}

} // namespace fre
