#pragma once

// Named verification suites: each one re-derives an exact identity or a
// pinned numeric bound from scratch and reports PASS/FAIL with the worst
// observed error and, on failure, enough parameters to replay the case.
// Random corpora are drawn from SplitMix64 streams seeded from the caller's
// seed, so a (seed, cases) pair fixes every input byte-for-byte.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "fre/core_arith.hpp"
#include "fre/correlation.hpp"
#include "fre/expansion.hpp"
#include "fre/numeric.hpp"
#include "fre/shift_expansion.hpp"
#include "fre/sieve.hpp"
#include "fre/symmetry.hpp"

namespace fre {

struct SuiteResult {
    std::string name;
    bool pass;
    std::uint64_t cases;
    double max_err;
    std::string detail; // replay parameters of the worst / failing case
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    std::uint64_t cases = 100;
    std::uint64_t qmax = 40; // modulus bound for the orthogonality sweep
};

namespace verify_detail {

struct Harness {
    SuiteResult r;
    explicit Harness(std::string name) {
        r.name = std::move(name);
        r.pass = true;
        r.cases = 0;
        r.max_err = 0.0;
    }
    void observe(double err, const std::string& replay) {
        ++r.cases;
        if (err > r.max_err) {
            r.max_err = err;
            r.detail = replay;
        }
    }
    void check(bool ok, double err, const std::string& replay) {
        observe(err, replay);
        if (!ok && r.pass) {
            r.pass = false;
            r.detail = replay;
        }
    }
    SuiteResult finish(double tolerance) {
        if (r.max_err >= tolerance) r.pass = false;
        if (r.pass) r.detail.clear();
        return r;
    }
    SuiteResult finish_exact() {
        if (r.pass) r.detail.clear();
        return r;
    }
};

inline TruncatedDivisorSum random_tds(SplitMix64& rng, std::uint64_t dmax) {
    TruncatedDivisorSum f;
    std::uint64_t D = static_cast<std::uint64_t>(rng.range(1, static_cast<std::int64_t>(dmax)));
    f.fp.assign(D + 1, cplx{0.0, 0.0});
    for (std::uint64_t d = 1; d <= D; ++d)
        f.fp[d] = cplx{static_cast<double>(rng.range(-9, 9)), static_cast<double>(rng.range(-9, 9))};
    if (f.fp[D] == cplx{0.0, 0.0}) f.fp[D] = cplx{1.0, 0.0}; // keep the truncation at D
    return f;
}

inline std::string fmt(std::initializer_list<std::pair<const char*, std::int64_t>> kv) {
    std::string s;
    for (const auto& [k, v] : kv) {
        if (!s.empty()) s += ' ';
        s += k;
        s += '=';
        s += std::to_string(v);
    }
    return s;
}

// Euler-product oracle for the twin singular series: independent of the
// library's Ramanujan-sum route, primality by table lookup
inline double twin_product_oracle(std::uint64_t h, std::uint64_t plimit, const SieveTables& t) {
    double prod = 2.0;
    for (std::uint64_t p = 3; p <= plimit; p += 2) {
        if (!t.is_prime(p)) continue;
        double pm1 = static_cast<double>(p - 1);
        prod *= 1.0 - 1.0 / (pm1 * pm1);
    }
    std::uint64_t m = h;
    while (m % 2 == 0) m /= 2;
    for (std::uint64_t p = 3; p * p <= m; p += 2) {
        if (m % p == 0) {
            prod *= static_cast<double>(p - 1) / static_cast<double>(p - 2);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 2) prod *= static_cast<double>(m - 1) / static_cast<double>(m - 2);
    return prod;
}

// --- the suites -------------------------------------------------------------

inline SuiteResult suite_csum_forms(const VerifyOptions& o, const SieveTables& t) {
    Harness H("csum-forms");
    SplitMix64 rng(o.seed ^ 0x11);
    for (std::uint64_t q = 1; q <= 120; ++q)
        for (std::int64_t n = -2; n <= static_cast<std::int64_t>(q) + 2; ++n)
            H.check(ramanujan_sum(q, n, t) == ramanujan_sum_closed(q, n, t), 0.0,
                    fmt({{"q", static_cast<std::int64_t>(q)}, {"n", n}}));
    for (std::uint64_t k = 0; k < o.cases; ++k) {
        std::uint64_t q = static_cast<std::uint64_t>(rng.range(1, 2000));
        std::int64_t n = rng.range(-1000000, 1000000);
        H.check(ramanujan_sum(q, n, t) == ramanujan_sum_closed(q, n, t), 0.0,
                fmt({{"q", static_cast<std::int64_t>(q)}, {"n", n}}));
    }
    return H.finish_exact();
}

inline SuiteResult suite_csum_divisor_identity(const VerifyOptions& o, const SieveTables& t) {
    Harness H("csum-divisor-identity");
    SplitMix64 rng(o.seed ^ 0x12);
    auto check_one = [&](std::uint64_t m, std::int64_t n) {
        std::int64_t total = 0;
        for (std::uint64_t q : divisors(m, t)) total += ramanujan_sum(q, n, t);
        std::int64_t want =
            (reduce_mod(n, m) == 0) ? static_cast<std::int64_t>(m) : 0;
        H.check(total == want, 0.0, fmt({{"m", static_cast<std::int64_t>(m)}, {"n", n}}));
    };
    for (std::uint64_t m = 1; m <= 60; ++m)
        for (std::int64_t n = 0; n <= 60; ++n) check_one(m, n);
    for (std::uint64_t k = 0; k < o.cases; ++k)
        check_one(static_cast<std::uint64_t>(rng.range(1, 300)), rng.range(-2000, 2000));
    return H.finish_exact();
}

inline SuiteResult suite_lemma_a0(const VerifyOptions& o, const SieveTables& t) {
    Harness H("lemma-a0");
    SplitMix64 rng(o.seed ^ 0x13);
    auto check_one = [&](std::uint64_t a, std::uint64_t b) {
        t.check(a * b, "lemma-a0");
        H.check(static_cast<std::uint64_t>(t.phi[a * b]) <= a * t.phi[b], 0.0,
                fmt({{"a", static_cast<std::int64_t>(a)}, {"b", static_cast<std::int64_t>(b)}}));
    };
    // products must stay inside the tables, so cap draws at sqrt(limit)
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(t.limit)));
    while (root * root > t.limit) --root;
    std::uint64_t sweep = std::min<std::uint64_t>(100, root);
    std::uint64_t draw = std::min<std::uint64_t>(300, root);
    for (std::uint64_t a = 1; a <= sweep; ++a)
        for (std::uint64_t b = 1; b <= sweep; ++b) check_one(a, b);
    for (std::uint64_t k = 0; k < o.cases; ++k)
        check_one(static_cast<std::uint64_t>(rng.range(1, static_cast<std::int64_t>(draw))),
                  static_cast<std::uint64_t>(rng.range(1, static_cast<std::int64_t>(draw))));
    return H.finish_exact();
}

inline SuiteResult suite_lemma_a1(const VerifyOptions& o, const SieveTables& t) {
    Harness H("lemma-a1");
    SplitMix64 rng(o.seed ^ 0x14);
    auto check_one = [&](std::uint64_t q, std::int64_t n) {
        std::uint64_t r = reduce_mod(n, q);
        std::uint64_t bound = (r == 0) ? q : std::gcd(r, q);
        std::int64_t c = ramanujan_sum_closed(q, n, t);
        H.check(static_cast<std::uint64_t>(c < 0 ? -c : c) <= bound, 0.0,
                fmt({{"q", static_cast<std::int64_t>(q)}, {"n", n}}));
    };
    for (std::uint64_t q = 1; q <= 120; ++q)
        for (std::int64_t n = -static_cast<std::int64_t>(2 * q); n <= static_cast<std::int64_t>(2 * q);
             ++n)
            check_one(q, n);
    for (std::uint64_t k = 0; k < o.cases; ++k)
        check_one(static_cast<std::uint64_t>(rng.range(1, 2000)), rng.range(-1000000, 1000000));
    return H.finish_exact();
}

inline SuiteResult suite_reconstruction(const VerifyOptions& o, const SieveTables& t) {
    Harness H("reconstruction");
    SplitMix64 rng(o.seed ^ 0x21);
    const std::uint64_t n_max = 5000;
    for (std::uint64_t k = 0; k < o.cases; ++k) {
        auto f = random_tds(rng, 2000);
        auto c = finite_ramanujan_coefficients(f);
        auto values = reconstruct_range(c, n_max, t);
        for (std::uint64_t n = 1; n <= n_max; ++n)
            H.observe(rel_err(values[n], evaluate_truncated(f, n, t)),
                      fmt({{"case", static_cast<std::int64_t>(k)},
                           {"D", static_cast<std::int64_t>(f.truncation())},
                           {"n", static_cast<std::int64_t>(n)}}));
    }
    return H.finish(1e-9);
}

inline SuiteResult suite_inversion(const VerifyOptions& o, const SieveTables& t) {
    Harness H("inversion");
    SplitMix64 rng(o.seed ^ 0x22);
    for (std::uint64_t k = 0; k < o.cases; ++k) {
        auto f = random_tds(rng, 1000);
        auto back = invert_coefficients(finite_ramanujan_coefficients(f), t);
        for (std::uint64_t d = 1; d <= f.truncation(); ++d)
            H.observe(rel_err(back.fp[d], f.fp[d]),
                      fmt({{"case", static_cast<std::int64_t>(k)},
                           {"D", static_cast<std::int64_t>(f.truncation())},
                           {"d", static_cast<std::int64_t>(d)}}));
    }
    return H.finish(1e-9);
}

inline SuiteResult suite_high_coeff(const VerifyOptions& o, const SieveTables&) {
    Harness H("high-coeff");
    SplitMix64 rng(o.seed ^ 0x23);
    for (std::uint64_t k = 0; k < o.cases; ++k) {
        auto f = random_tds(rng, 1500);
        auto c = finite_ramanujan_coefficients(f);
        std::uint64_t D = f.truncation();
        for (std::uint64_t q = D / 2 + 1; q <= D; ++q)
            H.check(c.h[q] == f.fp[q] / static_cast<double>(q), 0.0,
                    fmt({{"case", static_cast<std::int64_t>(k)},
                         {"D", static_cast<std::int64_t>(D)},
                         {"q", static_cast<std::int64_t>(q)}}));
    }
    return H.finish_exact();
}

inline SuiteResult suite_lemma_a6(const VerifyOptions& o, const SieveTables& t) {
    Harness H("lemma-a6");
    SplitMix64 rng(o.seed ^ 0x24);
    for (std::uint64_t k = 0; k < o.cases; ++k) {
        auto f = random_tds(rng, 300);
        auto g = random_tds(rng, 300);
        std::uint64_t h = static_cast<std::uint64_t>(rng.range(0, 100));
        cplx a = singular_sum_coefficient_form(finite_ramanujan_coefficients(f),
                                               finite_ramanujan_coefficients(g), h, t);
        cplx b = singular_sum_eratosthenes_form(f, g, h);
        H.observe(rel_err(a, b), fmt({{"case", static_cast<std::int64_t>(k)},
                                      {"h", static_cast<std::int64_t>(h)}}));
    }
    return H.finish(1e-9);
}

inline SuiteResult suite_ap_identity(const VerifyOptions& o, const SieveTables& t) {
    Harness H("ap-identity");
    SplitMix64 rng(o.seed ^ 0x31);
    for (std::uint64_t k = 0; k < o.cases; ++k) {
        auto f = make_sieve_function(random_tds(rng, 500), 5000);
        std::uint64_t mod = static_cast<std::uint64_t>(rng.range(1, 60));
        std::int64_t a = rng.range(-static_cast<std::int64_t>(mod), static_cast<std::int64_t>(mod));
        auto r = ap_main_term_identity(f, mod, a, t);
        H.observe(rel_err(r.lhs, r.rhs), fmt({{"case", static_cast<std::int64_t>(k)},
                                              {"t", static_cast<std::int64_t>(mod)},
                                              {"a", a}}));
    }
    return H.finish(1e-9);
}

inline SuiteResult suite_twisted_identity(const VerifyOptions& o, const SieveTables& t) {
    Harness H("twisted-identity");
    SplitMix64 rng(o.seed ^ 0x32);
    for (std::uint64_t k = 0; k < o.cases; ++k) {
        auto f = make_sieve_function(random_tds(rng, 400), 4000);
        std::uint64_t ell = static_cast<std::uint64_t>(rng.range(1, 60));
        std::int64_t a = rng.range(-60, 60);
        auto r = twisted_moebius_identity(f, ell, a, t);
        H.observe(rel_err(r.lhs, r.rhs), fmt({{"case", static_cast<std::int64_t>(k)},
                                              {"ell", static_cast<std::int64_t>(ell)},
                                              {"a", a}}));
    }
    return H.finish(1e-9);
}

inline SuiteResult suite_coprime_identity(const VerifyOptions& o, const SieveTables& t) {
    Harness H("coprime-identity");
    SplitMix64 rng(o.seed ^ 0x33);
    for (std::uint64_t k = 0; k < o.cases; ++k) {
        auto f = make_sieve_function(random_tds(rng, 60), 600);
        std::uint64_t N = static_cast<std::uint64_t>(rng.range(10, 500));
        std::uint64_t q = static_cast<std::uint64_t>(rng.range(1, 100));
        auto r = coprime_sum(f, N, q, 1, t);
        H.observe(rel_err(r.restricted, coprime_sum_moebius(f, N, q, t)),
                  fmt({{"case", static_cast<std::int64_t>(k)},
                       {"N", static_cast<std::int64_t>(N)},
                       {"q", static_cast<std::int64_t>(q)}}));
    }
    // structural dichotomy: a sifted transform cannot share factors with the
    // modulus once the residue is small and nonzero
    auto g = make_gsifted([](std::uint64_t) { return cplx{1.0, 0.0}; }, 60, 7, t);
    for (std::uint64_t mod = 1; mod <= 40; ++mod)
        for (std::uint64_t a = 1; a <= 7; ++a)
            for (std::uint64_t d = 1; d <= g.base.range(); ++d) {
                if (g.base.tds.fp[d] == cplx{0.0, 0.0}) continue;
                std::uint64_t gg = std::gcd(d, mod);
                H.check(gg == 1 || a % gg != 0, 0.0,
                        fmt({{"t", static_cast<std::int64_t>(mod)},
                             {"a", static_cast<std::int64_t>(a)},
                             {"d", static_cast<std::int64_t>(d)}}));
            }
    return H.finish(1e-9);
}

inline SuiteResult suite_dyadic(const VerifyOptions& o, const SieveTables& t) {
    Harness H("dyadic");
    SplitMix64 rng(o.seed ^ 0x34);
    for (std::uint64_t k = 0; k < o.cases; ++k) {
        std::uint64_t A = static_cast<std::uint64_t>(rng.range(0, 1000));
        std::uint64_t B = A + static_cast<std::uint64_t>(rng.range(1, 1000));
        std::uint64_t h = static_cast<std::uint64_t>(rng.range(1, 50));
        auto r = dyadic_csum_bound_check(A, B, h, t);
        H.check(r.sum <= r.bound + 1e-9, std::max(0.0, r.sum - r.bound),
                fmt({{"A", static_cast<std::int64_t>(A)},
                     {"B", static_cast<std::int64_t>(B)},
                     {"h", static_cast<std::int64_t>(h)}}));
    }
    return H.finish_exact();
}

inline SuiteResult suite_orthogonality(const VerifyOptions& o, const SieveTables& t) {
    Harness H("orthogonality");
    SplitMix64 rng(o.seed ^ 0x35);
    for (std::uint64_t q = 1; q <= o.qmax; ++q)
        for (std::uint64_t ell = 1; ell <= o.qmax; ++ell) {
            std::uint64_t x = std::lcm(q, ell);
            std::uint64_t n = static_cast<std::uint64_t>(rng.range(0, 10000));
            auto r = orthogonality_check(q, ell, x, n, t);
            H.observe(r.error, fmt({{"q", static_cast<std::int64_t>(q)},
                                    {"ell", static_cast<std::int64_t>(ell)},
                                    {"n", static_cast<std::int64_t>(n)}}));
        }
    return H.finish(1e-9);
}

inline SuiteResult suite_correlation_methods(const VerifyOptions& o, const SieveTables& t) {
    Harness H("correlation-methods");
    SplitMix64 rng(o.seed ^ 0x41);
    for (std::uint64_t k = 0; k < o.cases; ++k) {
        auto ftds = random_tds(rng, 100);
        auto gtds = random_tds(rng, 100);
        std::uint64_t N = static_cast<std::uint64_t>(rng.range(5, 2000));
        std::uint64_t h = static_cast<std::uint64_t>(rng.range(0, 50));
        cplx direct = correlate_direct(ftds, gtds, N, h, t);
        cplx via_div = correlate_via_divisors(ftds, gtds, N, h);
        auto f = make_sieve_function(ftds, 4000);
        auto g = make_sieve_function(gtds, 4000);
        cplx via_fre = fre_correlation_formula(f, g, N, h, t).value;
        double err = std::max(rel_err(via_div, direct), rel_err(via_fre, direct));
        H.observe(err, fmt({{"case", static_cast<std::int64_t>(k)},
                            {"N", static_cast<std::int64_t>(N)},
                            {"h", static_cast<std::int64_t>(h)}}));
    }
    return H.finish(1e-9);
}

inline SuiteResult suite_carmichael_explicit(const VerifyOptions& o, const SieveTables& t) {
    Harness H("carmichael-explicit");
    SplitMix64 rng(o.seed ^ 0x42);
    for (std::uint64_t k = 0; k < o.cases; ++k) {
        std::uint64_t P = static_cast<std::uint64_t>(rng.range(2, 12));
        auto divs = divisors(P, t);
        TruncatedDivisorSum ftds, gtds;
        ftds.fp.assign(P + 1, cplx{0.0, 0.0});
        gtds.fp.assign(P + 1, cplx{0.0, 0.0});
        for (std::uint64_t d : divs) {
            ftds.fp[d] = cplx{static_cast<double>(rng.range(-5, 5)), 0.0};
            gtds.fp[d] = cplx{static_cast<double>(rng.range(-5, 5)), 0.0};
        }
        ftds.fp[1] = cplx{1.0, 0.0}; // keep both functions nondegenerate
        gtds.fp[1] = cplx{1.0, 0.0};
        std::uint64_t N = static_cast<std::uint64_t>(rng.range(4, 40));
        auto gc = finite_ramanujan_coefficients(gtds);
        auto feval = [&](std::uint64_t n) { return evaluate_truncated(ftds, n, t); };
        // the correlation is P-periodic in the shift; memoize enough of it
        std::uint64_t ellmax = P + 2;
        std::uint64_t xmax = 0;
        for (std::uint64_t ell = 1; ell <= ellmax; ++ell)
            xmax = std::max(xmax, 2 * std::lcm(P, ell));
        std::vector<cplx> C(xmax + 1);
        for (std::uint64_t h = 0; h <= xmax; ++h) C[h] = correlate_direct(ftds, gtds, N, h, t);
        auto Cfn = [&](std::uint64_t h) { return C.at(h); };
        for (std::uint64_t ell = 1; ell <= ellmax; ++ell) {
            std::uint64_t x = 2 * std::lcm(P, ell);
            cplx car = carmichael_coefficient(Cfn, ell, x, t);
            cplx exp = explicit_coefficient(feval, gc, N, ell, t);
            H.observe(rel_err(car, exp), fmt({{"case", static_cast<std::int64_t>(k)},
                                              {"P", static_cast<std::int64_t>(P)},
                                              {"ell", static_cast<std::int64_t>(ell)}}));
        }
    }
    return H.finish(1e-9);
}

inline SuiteResult suite_gsift_support(const VerifyOptions& o, const SieveTables& t) {
    Harness H("gsift-support");
    SplitMix64 rng(o.seed ^ 0x43);
    for (std::uint64_t k = 0; k < o.cases; ++k) {
        std::uint64_t Q = static_cast<std::uint64_t>(rng.range(10, 200));
        std::uint64_t G = static_cast<std::uint64_t>(rng.range(2, 13));
        std::vector<cplx> vals(Q + 1);
        for (auto& v : vals)
            v = cplx{static_cast<double>(rng.range(-9, 9)), static_cast<double>(rng.range(-9, 9))};
        vals[1] = cplx{1.0, 0.0};
        auto g = make_gsifted([&](std::uint64_t q) { return vals[q]; }, Q, G, t);
        for (std::uint64_t d = 2; d <= g.base.range(); ++d) {
            bool sieved = !coprime_to_primorial(d, G, t);
            H.check(!sieved || g.base.tds.fp[d] == cplx{0.0, 0.0}, 0.0,
                    fmt({{"case", static_cast<std::int64_t>(k)}, {"d", static_cast<std::int64_t>(d)}}));
            bool coeff_zero = d <= G || sieved;
            H.check(!coeff_zero || g.base.coeffs.h[d] == cplx{0.0, 0.0}, 0.0,
                    fmt({{"case", static_cast<std::int64_t>(k)}, {"q", static_cast<std::int64_t>(d)}}));
        }
        H.check(g.base.tds.fp[g.base.range()] != cplx{0.0, 0.0}, 0.0,
                fmt({{"case", static_cast<std::int64_t>(k)},
                     {"range", static_cast<std::int64_t>(g.base.range())}}));
        for (int s = 0; s < 8; ++s) {
            std::uint64_t n = static_cast<std::uint64_t>(rng.range(1, 10000));
            std::uint64_t m = n;
            while (m > 1 && t.spf[m] <= G) m /= t.spf[m];
            H.check(evaluate_truncated(g.base.tds, n, t) == evaluate_truncated(g.base.tds, m, t), 0.0,
                    fmt({{"case", static_cast<std::int64_t>(k)}, {"n", static_cast<std::int64_t>(n)}}));
        }
    }
    return H.finish_exact();
}

inline SuiteResult suite_twin_series(const VerifyOptions&, const SieveTables& t) {
    Harness H("twin-series");
    std::uint64_t Q = std::min<std::uint64_t>(10000, t.limit);
    std::uint64_t plimit = std::min<std::uint64_t>(1000000, t.limit);
    double s2 = twin_singular_series_partial(2, Q, t);
    H.check(std::abs(s2 - twin_product_oracle(2, plimit, t)) < 5e-3,
            std::abs(s2 - twin_product_oracle(2, plimit, t)), "h=2");
    double s4 = twin_singular_series_partial(4, Q, t);
    H.check(std::abs(s4 - twin_product_oracle(4, plimit, t)) < 5e-3,
            std::abs(s4 - twin_product_oracle(4, plimit, t)), "h=4");
    double s6 = twin_singular_series_partial(6, Q, t);
    H.check(std::abs(s6 - twin_product_oracle(6, plimit, t)) < 5e-3,
            std::abs(s6 - twin_product_oracle(6, plimit, t)), "h=6");
    double s1 = twin_singular_series_partial(1, Q, t);
    H.check(std::abs(s1) < 1e-2, std::abs(s1), "h=1");
    return H.finish_exact(); // per-check bounds: 5e-3 even shifts, 1e-2 odd
}

inline SuiteResult suite_sgn_weight(const VerifyOptions&, const SieveTables&) {
    Harness H("sgn-weight");
    for (std::uint64_t Hw = 1; Hw <= 100; ++Hw) {
        auto W = sgn_weight(Hw);
        std::int64_t s = static_cast<std::int64_t>(Hw);
        std::int64_t total = 0;
        for (std::int64_t h = -2 * s; h <= 2 * s; ++h) {
            std::int64_t closed;
            std::int64_t a = h < 0 ? -h : h;
            if (a == 0)
                closed = 2 * s;
            else if (a <= s)
                closed = 2 * s - 3 * a + 1;
            else
                closed = -(2 * s - a + 1);
            H.check(W.at(h) == closed && W.at(h) == W.at(-h), 0.0,
                    fmt({{"H", s}, {"h", h}}));
            total += W.at(h);
        }
        H.check(total == 0 && W.at(0) == 2 * s && W.at(2 * s + 1) == 0, 0.0, fmt({{"H", s}}));
    }
    return H.finish_exact();
}

inline SuiteResult suite_symmetry_linear(const VerifyOptions&, const SieveTables&) {
    Harness H("symmetry-linear");
    auto linear = [](std::uint64_t n) { return cplx{static_cast<double>(n), 0.0}; };
    auto constant = [](std::uint64_t) { return cplx{1.25, -0.5}; };
    for (auto [N, Hw] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
             {100, 5}, {1000, 20}, {2000, 31}}) {
        double want = static_cast<double>(N) * static_cast<double>(Hw) * static_cast<double>(Hw)
                      * static_cast<double>(Hw + 1) * static_cast<double>(Hw + 1);
        double got = symmetry_integral(linear, N, Hw).value;
        H.observe(rel_err(cplx{got, 0}, cplx{want, 0}),
                  fmt({{"N", static_cast<std::int64_t>(N)}, {"H", static_cast<std::int64_t>(Hw)}}));
        H.check(symmetry_integral(constant, N, Hw).value == 0.0, 0.0,
                fmt({{"N", static_cast<std::int64_t>(N)}, {"H", static_cast<std::int64_t>(Hw)}}));
    }
    return H.finish(1e-12);
}

inline SuiteResult suite_mean_value(const VerifyOptions&, const SieveTables& t) {
    Harness H("mean-value");
    std::vector<SieveFunction> fs;
    fs.push_back(make_sieve_function(eratosthenes_transform(make_one(), 1, t), 1000000));
    fs.push_back(make_sieve_function(eratosthenes_transform(make_mangoldt(t), 100, t), 1000000));
    fs.push_back(make_sieve_function(eratosthenes_transform(make_sigma(1.0, t), 1000, t), 1000000));
    fs.push_back(make_sieve_function(eratosthenes_transform(make_prod_minus(1.0, t), 500, t), 1000000));
    fs.push_back(make_sieve_function(eratosthenes_transform(make_prod_plus(2.0, t), 300, t), 1000000));
    for (std::size_t i = 0; i < fs.size(); ++i)
        H.observe(mean_value_drift(fs[i], 1000000).drift,
                  fmt({{"fn", static_cast<std::int64_t>(i)}, {"x", 1000000}}));
    return H.finish(1e-2);
}

} // namespace verify_detail

// the exact-identity subset: every member re-checks an identity that holds
// with equality (tolerance 1e-9 against rounding, integer checks exact)
inline const std::vector<std::string>& verify_exact_identity_suites() {
    static const std::vector<std::string> names = {
        "csum-forms",    "csum-divisor-identity",
        "lemma-a0",      "lemma-a1",
        "reconstruction", "inversion",
        "high-coeff",    "lemma-a6",
        "ap-identity",   "twisted-identity",
        "coprime-identity", "dyadic",
        "orthogonality"};
    return names;
}

inline const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = {
        "csum-forms",    "csum-divisor-identity",
        "lemma-a0",      "lemma-a1",
        "reconstruction", "inversion",
        "high-coeff",    "lemma-a6",
        "ap-identity",   "twisted-identity",
        "coprime-identity", "dyadic",
        "orthogonality", "correlation-methods",
        "carmichael-explicit", "gsift-support",
        "twin-series",   "sgn-weight",
        "symmetry-linear", "mean-value"};
    return names;
}

inline SuiteResult run_verify_suite(const std::string& name, const VerifyOptions& o,
                                    const SieveTables& t) {
    using namespace verify_detail;
    if (name == "csum-forms") return suite_csum_forms(o, t);
    if (name == "csum-divisor-identity") return suite_csum_divisor_identity(o, t);
    if (name == "lemma-a0") return suite_lemma_a0(o, t);
    if (name == "lemma-a1") return suite_lemma_a1(o, t);
    if (name == "reconstruction") return suite_reconstruction(o, t);
    if (name == "inversion") return suite_inversion(o, t);
    if (name == "high-coeff") return suite_high_coeff(o, t);
    if (name == "lemma-a6") return suite_lemma_a6(o, t);
    if (name == "ap-identity") return suite_ap_identity(o, t);
    if (name == "twisted-identity") return suite_twisted_identity(o, t);
    if (name == "coprime-identity") return suite_coprime_identity(o, t);
    if (name == "dyadic") return suite_dyadic(o, t);
    if (name == "orthogonality") return suite_orthogonality(o, t);
    if (name == "correlation-methods") return suite_correlation_methods(o, t);
    if (name == "carmichael-explicit") return suite_carmichael_explicit(o, t);
    if (name == "gsift-support") return suite_gsift_support(o, t);
    if (name == "twin-series") return suite_twin_series(o, t);
    if (name == "sgn-weight") return suite_sgn_weight(o, t);
    if (name == "symmetry-linear") return suite_symmetry_linear(o, t);
    if (name == "mean-value") return suite_mean_value(o, t);
    throw std::invalid_argument("unknown verification suite '" + name + "'");
}

inline std::vector<SuiteResult> run_verify(const std::string& which, const VerifyOptions& o,
                                           const SieveTables& t) {
    std::vector<SuiteResult> out;
    if (which == "all") {
        for (const auto& name : verify_suite_names()) out.push_back(run_verify_suite(name, o, t));
    } else if (which == "exact-identities") {
        for (const auto& name : verify_exact_identity_suites())
            out.push_back(run_verify_suite(name, o, t));
    } else {
        out.push_back(run_verify_suite(which, o, t));
    }
    return out;
}

} // namespace fre
