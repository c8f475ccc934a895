#pragma once

// Finite Ramanujan expansions of truncated divisor sums.
//
// A function enters as its Eratosthenes transform f' (f = 1 * f'); the
// truncated divisor sum of range D is
//
//   f_D(n) = sum_{d | n, d <= D} f'(d),
//
// and its expansion coefficients are
//
//   hhat(q) = sum_{m <= D, q | m} f'(m) / m   for q <= D,
//
// with the exact round trips
//
//   f'(d)  = d * sum_{j <= D/d} mu(j) * hhat(d j)          (inversion)
//   f_D(n) = sum_{q <= D} hhat(q) * c_q(n)                 (reconstruction)
//
// and hhat(q) = f'(q)/q on the top dyadic block q in (D/2, D].  The
// reconstruction identity rests on sum_{q | m} c_q(n) = m * [m | n].

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fre/core_arith.hpp"
#include "fre/numeric.hpp"

namespace fre {

// a named function n -> C, optionally carrying a closed-form Eratosthenes
// transform rule d -> f'(d); evaluators backed by sieve tables are valid
// for n <= domain_limit
struct ArithmeticFunction {
    std::string name;
    std::uint64_t domain_limit = 0;
    std::function<cplx(std::uint64_t)> evaluate;
    std::function<cplx(std::uint64_t)> transform_rule; // empty if unknown
};

// f'(1..D), 1-indexed; [0] unused
struct TruncatedDivisorSum {
    std::vector<cplx> fp;

    std::uint64_t truncation() const { return fp.empty() ? 0 : fp.size() - 1; }
};

// hhat(1..Q), 1-indexed; [0] unused
struct RamanujanCoefficients {
    std::vector<cplx> h;

    std::uint64_t range() const { return h.empty() ? 0 : h.size() - 1; }
};

// --- Eratosthenes transform -------------------------------------------------

// f'(d) = sum_{e | d} mu(d/e) f(e) for d <= D.  When the function carries a
// closed-form rule the rule is used directly but validated against the
// evaluator on 32 deterministic sample points (the rule must satisfy
// sum_{e | n} f'(e) = f(n)).
inline TruncatedDivisorSum eratosthenes_transform(const ArithmeticFunction& f, std::uint64_t D,
                                                  const SieveTables& t) {
    if (D == 0)
        throw std::invalid_argument("eratosthenes_transform: truncation must be >= 1");
    if (D > t.limit)
        throw std::invalid_argument("eratosthenes_transform: truncation exceeds table range");
    if (D > f.domain_limit)
        throw std::invalid_argument("eratosthenes_transform: truncation exceeds domain of " + f.name);

    TruncatedDivisorSum out;
    out.fp.assign(D + 1, cplx{0.0, 0.0});

    if (f.transform_rule) {
        for (std::uint64_t d = 1; d <= D; ++d) out.fp[d] = f.transform_rule(d);

        SplitMix64 rng(0xC0FFEE ^ D);
        for (int k = 0; k < 32; ++k) {
            std::uint64_t n = static_cast<std::uint64_t>(rng.range(1, static_cast<std::int64_t>(D)));
            cplx via_rule{0.0, 0.0};
            for (std::uint64_t e : divisors(n, t)) via_rule += out.fp[e];
            cplx direct = f.evaluate(n);
            if (rel_err(via_rule, direct) > 1e-9)
                throw std::logic_error("eratosthenes_transform: rule for " + f.name
                                       + " disagrees with evaluator at n=" + std::to_string(n));
        }
        return out;
    }

    // Moebius-inversion sieve: contributions f(e)*mu(k) land on d = e*k
    for (std::uint64_t e = 1; e <= D; ++e) {
        cplx fe = f.evaluate(e);
        if (fe == cplx{0.0, 0.0}) continue;
        for (std::uint64_t k = 1; e * k <= D; ++k)
            if (t.mu[k] != 0) out.fp[e * k] += static_cast<double>(t.mu[k]) * fe;
    }
    return out;
}

// f_D(n) = sum_{d | n, d <= D} f'(d), divisors ascending, compensated
inline cplx evaluate_truncated(const TruncatedDivisorSum& f, std::uint64_t n, const SieveTables& t) {
    t.check(n, "evaluate_truncated");
    const std::uint64_t D = f.truncation();
    KahanCplx acc;
    for (std::uint64_t d : divisors(n, t)) {
        if (d > D) break;
        acc.add(f.fp[d]);
    }
    return acc.value();
}

// partial sum sum_{n <= x} f_D(n) = sum_{d <= D} f'(d) * floor(x/d), exact in
// the divisor picture; this is the Wintner mean-value route
inline cplx truncated_partial_sum(const TruncatedDivisorSum& f, std::uint64_t x) {
    KahanCplx acc;
    const std::uint64_t D = f.truncation();
    for (std::uint64_t d = 1; d <= D; ++d)
        acc.add(f.fp[d] * static_cast<double>(x / d));
    return acc.value();
}

// --- coefficients and round trips --------------------------------------------

// hhat(q) = sum_{m <= D, q | m} f'(m)/m, multiples iterated ascending
inline RamanujanCoefficients finite_ramanujan_coefficients(const TruncatedDivisorSum& f) {
    const std::uint64_t D = f.truncation();
    RamanujanCoefficients out;
    out.h.assign(D + 1, cplx{0.0, 0.0});
    for (std::uint64_t q = 1; q <= D; ++q) {
        KahanCplx acc;
        for (std::uint64_t m = q; m <= D; m += q)
            acc.add(f.fp[m] / static_cast<double>(m));
        out.h[q] = acc.value();
    }
    return out;
}

// f'(d) = d * sum_{j <= Q/d} mu(j) hhat(dj)
inline TruncatedDivisorSum invert_coefficients(const RamanujanCoefficients& c, const SieveTables& t) {
    const std::uint64_t Q = c.range();
    if (Q > t.limit)
        throw std::invalid_argument("invert_coefficients: range exceeds table range");
    TruncatedDivisorSum out;
    out.fp.assign(Q + 1, cplx{0.0, 0.0});
    for (std::uint64_t d = 1; d <= Q; ++d) {
        cplx s{0.0, 0.0};
        for (std::uint64_t j = 1; d * j <= Q; ++j)
            if (t.mu[j] != 0) s += static_cast<double>(t.mu[j]) * c.h[d * j];
        out.fp[d] = static_cast<double>(d) * s;
    }
    return out;
}

// f_D(n) = sum_{q <= Q} hhat(q) c_q(n), ascending q, compensated
inline cplx reconstruct(const RamanujanCoefficients& c, std::uint64_t n, const SieveTables& t) {
    t.check(n, "reconstruct");
    KahanCplx acc;
    for (std::uint64_t q = 1; q <= c.range(); ++q)
        acc.add(c.h[q] * static_cast<double>(ramanujan_sum(q, static_cast<std::int64_t>(n), t)));
    return acc.value();
}

// bulk reconstruction for all n <= n_max: contributions hhat(q)*d*mu(q/d) are
// scattered over multiples of d, q ascending (same terms as `reconstruct`,
// plainly accumulated).  Keeps whole-corpus checks out of quadratic land.
inline std::vector<cplx> reconstruct_range(const RamanujanCoefficients& c, std::uint64_t n_max,
                                           const SieveTables& t) {
    if (n_max > t.limit)
        throw std::invalid_argument("reconstruct_range: n_max exceeds table range");
    std::vector<cplx> acc(n_max + 1, cplx{0.0, 0.0});
    for (std::uint64_t q = 1; q <= c.range(); ++q) {
        if (c.h[q] == cplx{0.0, 0.0}) continue;
        for (std::uint64_t d : divisors(q, t)) {
            if (t.mu[q / d] == 0) continue;
            cplx w = c.h[q] * static_cast<double>(d) * static_cast<double>(t.mu[q / d]);
            for (std::uint64_t n = d; n <= n_max; n += d) acc[n] += w;
        }
    }
    return acc;
}

// --- classical comparison ----------------------------------------------------

// the infinite-expansion coefficient of sigma_{-s}: zeta(s+1) / q^(s+1);
// the finite hhat(q) of sigma_{-s,D} approaches this as D/q grows
inline double classical_coefficient_sigma(std::uint64_t q, double s) {
    if (q == 0)
        throw std::invalid_argument("classical_coefficient_sigma: q must be >= 1");
    if (!(s > 0.0))
        throw std::invalid_argument("classical_coefficient_sigma: requires s > 0");
    return riemann_zeta(s + 1.0) / std::pow(static_cast<double>(q), s + 1.0);
}

// --- built-in catalog ----------------------------------------------------------
//
// Catalog functions capture the sieve tables by pointer; the tables must
// outlive the function object.

inline ArithmeticFunction make_one() {
    ArithmeticFunction f;
    f.name = "one";
    f.domain_limit = UINT64_MAX;
    f.evaluate = [](std::uint64_t) { return cplx{1.0, 0.0}; };
    f.transform_rule = [](std::uint64_t d) { return d == 1 ? cplx{1.0, 0.0} : cplx{0.0, 0.0}; };
    return f;
}

// von Mangoldt: log p on prime powers, 0 elsewhere; f'(d) = -mu(d) log d
inline ArithmeticFunction make_mangoldt(const SieveTables& t) {
    ArithmeticFunction f;
    f.name = "mangoldt";
    f.domain_limit = t.limit;
    f.evaluate = [tp = &t](std::uint64_t n) {
        if (n == 1) return cplx{0.0, 0.0};
        std::uint64_t p = tp->spf[n];
        while (n % p == 0) n /= p;
        return n == 1 ? cplx{std::log(static_cast<double>(p)), 0.0} : cplx{0.0, 0.0};
    };
    f.transform_rule = [tp = &t](std::uint64_t d) {
        return cplx{-static_cast<double>(tp->mu[d]) * std::log(static_cast<double>(d)), 0.0};
    };
    return f;
}

// sigma_{-s}(n) = sum_{d | n} d^(-s); f'(d) = d^(-s)
inline ArithmeticFunction make_sigma(double s, const SieveTables& t) {
    if (!(s > 0.0)) throw std::invalid_argument("make_sigma: requires s > 0");
    ArithmeticFunction f;
    f.name = "sigma";
    f.domain_limit = t.limit;
    f.evaluate = [s, tp = &t](std::uint64_t n) {
        KahanSum acc;
        for (std::uint64_t d : divisors(n, *tp)) acc.add(std::pow(static_cast<double>(d), -s));
        return cplx{acc.value(), 0.0};
    };
    f.transform_rule = [s](std::uint64_t d) { return cplx{std::pow(static_cast<double>(d), -s), 0.0}; };
    return f;
}

// prod_{p | n} (1 - p^(-s)); f'(d) = mu(d) d^(-s)
inline ArithmeticFunction make_prod_minus(double s, const SieveTables& t) {
    if (!(s > 0.0)) throw std::invalid_argument("make_prod_minus: requires s > 0");
    ArithmeticFunction f;
    f.name = "prod-minus";
    f.domain_limit = t.limit;
    f.evaluate = [s, tp = &t](std::uint64_t n) {
        double v = 1.0;
        for (auto [p, e] : factorize(n, *tp)) v *= 1.0 - std::pow(static_cast<double>(p), -s);
        return cplx{v, 0.0};
    };
    f.transform_rule = [s, tp = &t](std::uint64_t d) {
        return cplx{tp->mu[d] * std::pow(static_cast<double>(d), -s), 0.0};
    };
    return f;
}

// prod_{p | n} (1 + p^(-s)); f'(d) = mu(d)^2 d^(-s)
inline ArithmeticFunction make_prod_plus(double s, const SieveTables& t) {
    if (!(s > 0.0)) throw std::invalid_argument("make_prod_plus: requires s > 0");
    ArithmeticFunction f;
    f.name = "prod-plus";
    f.domain_limit = t.limit;
    f.evaluate = [s, tp = &t](std::uint64_t n) {
        double v = 1.0;
        for (auto [p, e] : factorize(n, *tp)) v *= 1.0 + std::pow(static_cast<double>(p), -s);
        return cplx{v, 0.0};
    };
    f.transform_rule = [s, tp = &t](std::uint64_t d) {
        return cplx{(tp->mu[d] != 0 ? 1.0 : 0.0) * std::pow(static_cast<double>(d), -s), 0.0};
    };
    return f;
}

// two-valued 2H-periodic block: c1 on (2kH, (2k+1)H], c2 on the next block
inline cplx block_value(cplx c1, cplx c2, std::uint64_t H, std::uint64_t n) {
    std::uint64_t block = (n + H - 1) / H; // ceil(n / H)
    return (block % 2 == 1) ? c1 : c2;
}

inline ArithmeticFunction make_block(cplx c1, cplx c2, std::uint64_t H) {
    if (H == 0) throw std::invalid_argument("make_block: H must be >= 1");
    if (c1 == c2) throw std::invalid_argument("make_block: the two values must differ");
    ArithmeticFunction f;
    f.name = "block";
    f.domain_limit = UINT64_MAX;
    f.evaluate = [c1, c2, H](std::uint64_t n) { return block_value(c1, c2, H, n); };
    return f;
}

// function given by explicit values f(1..N); transform obtained numerically
inline ArithmeticFunction make_from_values(std::string name, std::vector<cplx> values) {
    if (values.empty()) throw std::invalid_argument("make_from_values: empty value list");
    ArithmeticFunction f;
    f.name = std::move(name);
    f.domain_limit = values.size();
    f.evaluate = [vals = std::move(values)](std::uint64_t n) {
        if (n == 0 || n > vals.size())
            throw std::invalid_argument("custom function: argument outside stored range");
        return vals[n - 1];
    };
    return f;
}

// function given by its transform f'(1..D); zero-extended beyond D
inline ArithmeticFunction make_from_transform(std::string name, std::vector<cplx> coeffs,
                                              const SieveTables& t) {
    if (coeffs.empty()) throw std::invalid_argument("make_from_transform: empty coefficient list");
    ArithmeticFunction f;
    f.name = std::move(name);
    f.domain_limit = t.limit;
    auto shared = std::make_shared<std::vector<cplx>>(std::move(coeffs));
    f.evaluate = [shared, tp = &t](std::uint64_t n) {
        KahanCplx acc;
        for (std::uint64_t d : divisors(n, *tp)) {
            if (d > shared->size()) break;
            acc.add((*shared)[d - 1]);
        }
        return acc.value();
    };
    f.transform_rule = [shared](std::uint64_t d) {
        return d <= shared->size() ? (*shared)[d - 1] : cplx{0.0, 0.0};
    };
    return f;
}

} // namespace fre
