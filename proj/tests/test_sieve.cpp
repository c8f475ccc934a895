#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "fre/sieve.hpp"
#include "oracles.hpp"

using namespace fre;
using Catch::Approx;

namespace {

TruncatedDivisorSum pair_ones() {
    TruncatedDivisorSum f;
    f.fp = {cplx{0, 0}, cplx{1, 0}, cplx{1, 0}};
    return f;
}

TruncatedDivisorSum random_tds(SplitMix64& rng, std::uint64_t dmax) {
    TruncatedDivisorSum f;
    std::uint64_t D = static_cast<std::uint64_t>(rng.range(1, static_cast<std::int64_t>(dmax)));
    f.fp.assign(D + 1, cplx{0.0, 0.0});
    for (std::uint64_t d = 1; d <= D; ++d)
        f.fp[d] = cplx{static_cast<double>(rng.range(-9, 9)), static_cast<double>(rng.range(-9, 9))};
    return f;
}

double abs_coeff_sum(const TruncatedDivisorSum& f) {
    double s = 0.0;
    for (std::uint64_t d = 1; d <= f.truncation(); ++d) s += std::abs(f.fp[d]);
    return s;
}

} // namespace

TEST_CASE("sieve function construction", "[sieve]") {
    auto t = build_tables(2000);
    SECTION("trailing zeros are trimmed, interior zeros kept") {
        TruncatedDivisorSum raw;
        raw.fp = {cplx{0, 0}, cplx{1, 0}, cplx{0, 0}, cplx{2, 0}, cplx{0, 0}, cplx{0, 0}};
        auto f = make_sieve_function(raw, 100);
        REQUIRE(f.range() == 3);
        REQUIRE(f.tds.fp[2] == cplx{0.0, 0.0});
        REQUIRE(f.tds.fp[3] == cplx{2.0, 0.0});
    }
    SECTION("degenerate and bad-context inputs") {
        TruncatedDivisorSum zero;
        zero.fp = {cplx{0, 0}, cplx{0, 0}, cplx{0, 0}};
        REQUIRE_THROWS_AS(make_sieve_function(zero, 100), std::invalid_argument);
        REQUIRE_THROWS_AS(make_sieve_function(pair_ones(), 1), std::invalid_argument);
    }
    SECTION("level is log-range over log-context") {
        TruncatedDivisorSum raw;
        raw.fp.assign(101, cplx{1.0, 0.0});
        raw.fp[0] = cplx{0.0, 0.0};
        auto f = make_sieve_function(raw, 10000);
        REQUIRE(f.level() == Approx(0.5).margin(1e-12));
        REQUIRE(f.growth_diagnostic >= 1.0);
    }
    SECTION("coefficients are attached and obey the top-range law") {
        SplitMix64 rng(7771);
        for (int k = 0; k < 10; ++k) {
            auto f = make_sieve_function(random_tds(rng, 200), 4000);
            std::uint64_t Q = f.range();
            auto direct = finite_ramanujan_coefficients(f.tds);
            for (std::uint64_t q = 1; q <= Q; ++q) REQUIRE(f.coeffs.h[q] == direct.h[q]);
            for (std::uint64_t q = Q / 2 + 1; q <= Q; ++q)
                REQUIRE(f.coeffs.h[q] == f.tds.fp[q] / static_cast<double>(q));
        }
    }
}

TEST_CASE("arithmetic progression sums", "[sieve]") {
    auto t = build_tables(5000);
    SECTION("constant function: only floor error") {
        auto one = make_sieve_function(eratosthenes_transform(make_one(), 1, t), 100);
        for (std::uint64_t mod : {1ull, 2ull, 5ull, 9ull}) {
            for (std::int64_t a = 0; a < static_cast<std::int64_t>(mod); ++a) {
                auto r = ap_sum(one, 137, a, mod, t);
                REQUIRE(r.main_term.real() == Approx(137.0 / static_cast<double>(mod)).margin(1e-9));
                REQUIRE(std::abs(r.difference) <= 1.0 + 1e-9);
            }
        }
    }
    SECTION("frozen pair family") {
        auto f = make_sieve_function(pair_ones(), 100);
        auto even = ap_sum(f, 12, 0, 2, t);
        REQUIRE(even.direct.real() == Approx(12.0).margin(1e-12));
        REQUIRE(even.main_term.real() == Approx(12.0).margin(1e-12));
        REQUIRE(std::abs(even.difference) < 1e-12);
        auto odd = ap_sum(f, 12, 1, 2, t);
        REQUIRE(odd.direct.real() == Approx(6.0).margin(1e-12));
        REQUIRE(odd.main_term.real() == Approx(6.0).margin(1e-12));
    }
    SECTION("negative residues denote the same class") {
        auto f = make_sieve_function(pair_ones(), 100);
        auto a = ap_sum(f, 50, -1, 6, t);
        auto b = ap_sum(f, 50, 5, 6, t);
        REQUIRE(a.direct == b.direct);
        REQUIRE(a.main_term == b.main_term);
    }
    SECTION("von Mangoldt flavour stays within the coefficient-mass bound") {
        auto f = make_sieve_function(eratosthenes_transform(make_mangoldt(t), 50, t), 1000);
        double mass = abs_coeff_sum(f.tds);
        auto r = ap_sum(f, 1000, 3, 7, t);
        REQUIRE(std::abs(r.difference) <= mass + 1e-9);
    }
    SECTION("argument validation") {
        auto f = make_sieve_function(pair_ones(), 100);
        REQUIRE_THROWS_AS(ap_sum(f, 12, 0, 0, t), std::invalid_argument);
        REQUIRE_THROWS_AS(ap_sum(f, 0, 0, 2, t), std::invalid_argument);
        REQUIRE_THROWS_AS(ap_sum(f, 6000, 0, 2, t), std::invalid_argument);
    }
}

TEST_CASE("progression main-term identity", "[sieve]") {
    auto t = build_tables(600);
    SECTION("modulus one collapses to the mean value") {
        SplitMix64 rng(41);
        auto f = make_sieve_function(random_tds(rng, 80), 600);
        auto r = ap_main_term_identity(f, 1, 0, t);
        REQUIRE(rel_err(r.lhs, f.coeffs.h[1]) < 1e-12);
        REQUIRE(rel_err(r.rhs, f.coeffs.h[1]) < 1e-12);
    }
    SECTION("frozen pair family, modulus 2, residue 1") {
        auto f = make_sieve_function(pair_ones(), 100);
        auto r = ap_main_term_identity(f, 2, 1, t);
        REQUIRE(r.lhs.real() == Approx(1.0).margin(1e-12));
        REQUIRE(r.rhs.real() == Approx(1.0).margin(1e-12));
    }
    SECTION("exact on random inputs") {
        SplitMix64 rng(90125);
        for (int k = 0; k < 200; ++k) {
            auto f = make_sieve_function(random_tds(rng, 500), 5000);
            std::uint64_t mod = static_cast<std::uint64_t>(rng.range(1, 60));
            std::int64_t a = rng.range(-static_cast<std::int64_t>(mod), static_cast<std::int64_t>(mod));
            auto r = ap_main_term_identity(f, mod, a, t);
            REQUIRE(rel_err(r.lhs, r.rhs) < 1e-9);
        }
    }
}

TEST_CASE("twisted sums against a Ramanujan sum", "[sieve]") {
    auto t = build_tables(3000);
    SECTION("frozen pair family, ell = 2, a = 0") {
        auto f = make_sieve_function(pair_ones(), 100);
        auto r = twisted_sum(f, 4, 2, 0, t);
        REQUIRE(r.direct.real() == Approx(2.0).margin(1e-12));
        REQUIRE(r.main_term.real() == Approx(2.0).margin(1e-12));
        REQUIRE(std::abs(r.difference) < 1e-12);
    }
    SECTION("ell = 1 is the mean value view") {
        SplitMix64 rng(555);
        auto f = make_sieve_function(random_tds(rng, 40), 500);
        auto r = twisted_sum(f, 500, 1, 0, t);
        REQUIRE(rel_err(r.main_term, f.coeffs.h[1] * 500.0) < 1e-12);
        REQUIRE(std::abs(r.difference) <= abs_coeff_sum(f.tds) + 1e-9);
    }
    SECTION("Moebius collapse identity exact on random inputs") {
        SplitMix64 rng(424242);
        for (int k = 0; k < 200; ++k) {
            auto f = make_sieve_function(random_tds(rng, 400), 4000);
            std::uint64_t ell = static_cast<std::uint64_t>(rng.range(1, 60));
            std::int64_t a = rng.range(-60, 60);
            auto r = twisted_moebius_identity(f, ell, a, t);
            REQUIRE(rel_err(r.lhs, r.rhs) < 1e-9);
        }
    }
}

TEST_CASE("sifted function construction", "[sieve]") {
    auto t = build_tables(100000);
    auto ones_rule = [](std::uint64_t) { return cplx{1.0, 0.0}; };
    SECTION("support survives exactly where no prime factor is small") {
        auto g = make_gsifted(ones_rule, 30, 3, t);
        REQUIRE(g.G == 3);
        REQUIRE(g.base.range() == 29); // 30 = 2*3*5 is sieved out, so the tail trims
        std::vector<std::uint64_t> support;
        for (std::uint64_t d = 1; d <= g.base.range(); ++d)
            if (g.base.tds.fp[d] != cplx{0.0, 0.0}) support.push_back(d);
        REQUIRE(support == std::vector<std::uint64_t>{1, 5, 7, 11, 13, 17, 19, 23, 25, 29});
    }
    SECTION("coefficient support law") {
        auto g = make_gsifted(ones_rule, 60, 5, t);
        for (std::uint64_t q = 2; q <= g.base.range(); ++q)
            if (q <= 5 || !coprime_to_primorial(q, 5, t))
                REQUIRE(g.base.coeffs.h[q] == cplx{0.0, 0.0});
        // something must survive beyond the sift bound
        REQUIRE(g.base.coeffs.h[7] != cplx{0.0, 0.0});
    }
    SECTION("sift bound at or above the range leaves a constant") {
        auto g = make_gsifted(ones_rule, 10, 11, t);
        REQUIRE(g.base.range() == 1);
        for (std::uint64_t n : {1ull, 6ull, 97ull, 2310ull})
            REQUIRE(evaluate_truncated(g.base.tds, n, t) == cplx{1.0, 0.0});
    }
    SECTION("sift invariance under removing small prime factors") {
        auto g = make_gsifted(ones_rule, 60, 7, t);
        for (std::uint64_t n = 1; n <= 3000; ++n) {
            std::uint64_t m = n;
            while (m > 1 && t.spf[m] <= 7) m /= t.spf[m];
            REQUIRE(evaluate_truncated(g.base.tds, n, t) == evaluate_truncated(g.base.tds, m, t));
        }
    }
    SECTION("degenerate and invalid inputs") {
        auto headless = [](std::uint64_t q) { return q == 1 ? cplx{0.0, 0.0} : cplx{1.0, 0.0}; };
        REQUIRE_THROWS_AS(make_gsifted(headless, 10, 11, t), std::invalid_argument);
        REQUIRE_THROWS_AS(make_gsifted(ones_rule, 30, 1, t), std::invalid_argument);
        REQUIRE_THROWS_AS(make_gsifted(ones_rule, 0, 3, t), std::invalid_argument);
    }
    SECTION("default level context is the range scale") {
        auto g = make_gsifted(ones_rule, 30, 3, t);
        REQUIRE(g.base.level_context == 30);
        auto g2 = make_gsifted(ones_rule, 30, 3, t, 900);
        REQUIRE(g2.base.level() == Approx(std::log(29.0) / std::log(900.0)).margin(1e-12));
    }
}

TEST_CASE("coprimality-restricted sums", "[sieve]") {
    auto t = build_tables(3000);
    SECTION("frozen count for the constant function") {
        auto one = make_sieve_function(eratosthenes_transform(make_one(), 1, t), 100);
        auto r = coprime_sum(one, 100, 7, 5, t);
        REQUIRE(r.restricted.real() == Approx(86.0).margin(1e-12));
        REQUIRE(r.unrestricted.real() == Approx(100.0).margin(1e-12));
        REQUIRE(r.difference.real() == Approx(-14.0).margin(1e-12));
    }
    SECTION("q = 1 removes nothing") {
        SplitMix64 rng(13);
        auto f = make_sieve_function(random_tds(rng, 30), 300);
        auto r = coprime_sum(f, 300, 1, 2, t);
        REQUIRE(r.restricted == r.unrestricted);
    }
    SECTION("precondition: q must avoid the small primes") {
        auto one = make_sieve_function(eratosthenes_transform(make_one(), 1, t), 100);
        REQUIRE_THROWS_AS(coprime_sum(one, 100, 6, 5, t), std::invalid_argument);
        REQUIRE_NOTHROW(coprime_sum(one, 100, 49, 5, t));
    }
    SECTION("Moebius expansion reproduces the restricted sum exactly") {
        SplitMix64 rng(777001);
        for (int k = 0; k < 30; ++k) {
            auto f = make_sieve_function(random_tds(rng, 60), 600);
            std::uint64_t N = static_cast<std::uint64_t>(rng.range(10, 500));
            std::uint64_t q = static_cast<std::uint64_t>(rng.range(1, 100));
            auto r = coprime_sum(f, N, q, 1, t); // G = 1: empty primorial, no precondition bite
            REQUIRE(rel_err(r.restricted, coprime_sum_moebius(f, N, q, t)) < 1e-9);
        }
    }
    SECTION("surviving moduli in the sifted expansion are coprime to t") {
        // with f G-sifted and 0 < |a| <= G, any d in the progression identity
        // with f'(d) != 0 and (d,t) | a forces (d,t) = 1
        auto g = make_gsifted([](std::uint64_t) { return cplx{1.0, 0.0}; }, 60, 7, t);
        for (std::uint64_t mod = 1; mod <= 40; ++mod) {
            for (std::uint64_t a = 1; a <= 7; ++a) {
                for (std::uint64_t d = 1; d <= g.base.range(); ++d) {
                    if (g.base.tds.fp[d] == cplx{0.0, 0.0}) continue;
                    std::uint64_t gg = std::gcd(d, mod);
                    if (gg > 1) REQUIRE(a % gg != 0);
                }
            }
        }
    }
}

TEST_CASE("coprimality-restricted correlations", "[sieve]") {
    auto t = build_tables(20000);
    auto ones_rule = [](std::uint64_t) { return cplx{1.0, 0.0}; };
    SECTION("no restriction means the plain correlation") {
        auto f = make_sieve_function(pair_ones(), 100);
        auto g = make_gsifted(ones_rule, 30, 5, t);
        auto r = coprime_correlation(f, g, 200, 1, 1, t);
        REQUIRE(rel_err(r.value, correlate_direct(f.tds, g.base.tds, 200, 1, t)) < 1e-12);
    }
    SECTION("prediction and residual at desk scale") {
        auto f = make_sieve_function(pair_ones(), 10000);
        auto g = make_gsifted(ones_rule, 30, 5, t, 10000);
        auto r = coprime_correlation(f, g, 10000, 2, 7, t);
        REQUIRE(rel_err(r.prediction, f.coeffs.h[1] * g.base.coeffs.h[1] * 10000.0) < 1e-12);
        REQUIRE(r.value == r.prediction + r.residual);
        // error scale DQ + N/G
        double scale = 2.0 * 30.0 + 10000.0 / 5.0;
        REQUIRE(std::abs(r.residual) <= 10.0 * scale);
    }
    SECTION("sift-level sweep keeps the residual within the predicted scale") {
        std::uint64_t N = 3000;
        auto f = make_sieve_function(pair_ones(), N);
        for (double expo : {0.2, 0.3, 0.5}) {
            std::uint64_t G = static_cast<std::uint64_t>(std::pow(static_cast<double>(N), expo));
            auto g = make_gsifted(ones_rule, 60, G, t, N);
            auto r = coprime_correlation(f, g, N, 2, 1, t);
            double scale = 2.0 * 60.0 + static_cast<double>(N) / static_cast<double>(G);
            REQUIRE(std::abs(r.residual) <= 10.0 * scale);
        }
    }
    SECTION("singular sum collapses to the coefficient-one product below the sift bound") {
        auto f = make_sieve_function(pair_ones(), 100); // range 2 < G
        auto g = make_gsifted(ones_rule, 30, 5, t);
        cplx S = singular_sum_coefficient_form(f.coeffs, g.base.coeffs, 2, t);
        REQUIRE(rel_err(S, f.coeffs.h[1] * g.base.coeffs.h[1]) < 1e-12);
        // with a wide partner the surviving terms sit beyond the sift bound
        TruncatedDivisorSum wide;
        wide.fp.assign(41, cplx{1.0, 0.0});
        wide.fp[0] = cplx{0.0, 0.0};
        auto w = make_sieve_function(wide, 1600);
        cplx Sw = singular_sum_coefficient_form(w.coeffs, g.base.coeffs, 2, t);
        KahanCplx manual;
        manual.add(w.coeffs.h[1] * g.base.coeffs.h[1]);
        for (std::uint64_t ell = 6; ell <= std::min(w.range(), g.base.range()); ++ell)
            manual.add(w.coeffs.h[ell] * g.base.coeffs.h[ell]
                       * static_cast<double>(ramanujan_sum_closed(ell, 2, t)));
        REQUIRE(rel_err(Sw, manual.value()) < 1e-12);
    }
    SECTION("regime preconditions") {
        auto f = make_sieve_function(pair_ones(), 100);
        auto g = make_gsifted(ones_rule, 30, 5, t);
        REQUIRE_THROWS_AS(coprime_correlation(f, g, 100, 0, 1, t), std::invalid_argument);
        REQUIRE_THROWS_AS(coprime_correlation(f, g, 100, 6, 1, t), std::invalid_argument);
        REQUIRE_THROWS_AS(coprime_correlation(f, g, 100, 2, 6, t), std::invalid_argument);
    }
}

TEST_CASE("dyadic Ramanujan-sum tail bound", "[sieve]") {
    auto t = build_tables(5000);
    SECTION("frozen enumerations") {
        auto r6 = dyadic_csum_bound_check(0, 10, 6, t);
        REQUIRE(r6.sum == Approx(14.0).margin(1e-12));
        REQUIRE(r6.bound == Approx(80.0).margin(1e-12));
        auto r1 = dyadic_csum_bound_check(0, 10, 1, t);
        REQUIRE(r1.sum == Approx(7.0).margin(1e-12)); // squarefree q <= 10
        REQUIRE(r1.bound == Approx(20.0).margin(1e-12));
    }
    SECTION("inequality on a random grid") {
        SplitMix64 rng(31337);
        for (int k = 0; k < 100; ++k) {
            std::uint64_t A = static_cast<std::uint64_t>(rng.range(0, 300));
            std::uint64_t B = A + static_cast<std::uint64_t>(rng.range(1, 700));
            std::uint64_t h = static_cast<std::uint64_t>(rng.range(1, 40));
            auto r = dyadic_csum_bound_check(A, B, h, t);
            REQUIRE(r.sum <= r.bound + 1e-9);
        }
    }
    SECTION("argument validation") {
        REQUIRE_THROWS_AS(dyadic_csum_bound_check(0, 10, 0, t), std::invalid_argument);
        REQUIRE_THROWS_AS(dyadic_csum_bound_check(10, 10, 1, t), std::invalid_argument);
        REQUIRE_THROWS_AS(dyadic_csum_bound_check(0, 6000, 1, t), std::invalid_argument);
    }
}

TEST_CASE("inner Ramanujan-sum correlations", "[sieve]") {
    auto t = build_tables(600);
    SECTION("periodic folding equals the naive loop") {
        for (std::uint64_t d = 1; d <= 12; ++d) {
            for (std::uint64_t q = 1; q <= 12; ++q) {
                for (std::uint64_t h : {0ull, 1ull, 2ull, 5ull}) {
                    for (std::uint64_t N : {1ull, 7ull, 50ull, 101ull}) {
                        std::int64_t naive = 0;
                        for (std::uint64_t n = 1; n <= N; ++n)
                            naive += ramanujan_sum(d, static_cast<std::int64_t>(n), t)
                                     * ramanujan_sum(q, static_cast<std::int64_t>(n + h), t);
                        REQUIRE(csum_correlation(d, q, h, N, t) == naive);
                    }
                }
            }
        }
    }
    SECTION("diagonal full-period mass is q times the totient") {
        for (std::uint64_t q = 1; q <= 50; ++q)
            REQUIRE(csum_correlation(q, q, 0, q, t)
                    == static_cast<std::int64_t>(q) * static_cast<std::int64_t>(t.phi[q]));
    }
    SECTION("off-diagonal full periods vanish") {
        REQUIRE(csum_correlation(3, 5, 0, 15, t) == 0);
        REQUIRE(csum_correlation(4, 6, 2, 24, t) == 0);
    }
}

TEST_CASE("correlation through the double expansion", "[sieve]") {
    auto t = build_tables(2000);
    SECTION("frozen pair family") {
        auto f = make_sieve_function(pair_ones(), 100);
        auto r = fre_correlation_formula(f, f, 4, 1, t);
        REQUIRE(r.value.real() == Approx(8.0).margin(1e-12));
        REQUIRE(r.main_term.real() == Approx(8.0).margin(1e-12));
        REQUIRE(std::abs(r.residual) < 1e-12);
    }
    SECTION("range-one pair is exactly the product of means") {
        TruncatedDivisorSum cf, cg;
        cf.fp = {cplx{0, 0}, cplx{3, 1}};
        cg.fp = {cplx{0, 0}, cplx{-2, 5}};
        auto f = make_sieve_function(cf, 100);
        auto g = make_sieve_function(cg, 100);
        auto r = fre_correlation_formula(f, g, 77, 4, t);
        REQUIRE(rel_err(r.value, cplx{3, 1} * cplx{-2, 5} * 77.0) < 1e-12);
    }
    SECTION("equals the direct correlation on random inputs") {
        SplitMix64 rng(246810);
        for (int k = 0; k < 25; ++k) {
            auto ftds = random_tds(rng, 30);
            auto gtds = random_tds(rng, 30);
            std::uint64_t N = static_cast<std::uint64_t>(rng.range(5, 400));
            std::uint64_t h = static_cast<std::uint64_t>(rng.range(0, 10));
            auto f = make_sieve_function(ftds, 1000);
            auto g = make_sieve_function(gtds, 1000);
            auto r = fre_correlation_formula(f, g, N, h, t);
            REQUIRE(rel_err(r.value, correlate_direct(f.tds, g.tds, N, h, t)) < 1e-9);
        }
    }
    SECTION("level bookkeeping") {
        TruncatedDivisorSum raw;
        raw.fp.assign(101, cplx{1.0, 0.0});
        raw.fp[0] = cplx{0.0, 0.0};
        auto tight = make_sieve_function(raw, 10000);   // level 0.5
        auto loose = make_sieve_function(raw, 1000000); // level 1/3
        REQUIRE_FALSE(fre_correlation_formula(tight, tight, 100, 1, t).in_regime);
        auto r = fre_correlation_formula(loose, loose, 100, 1, t);
        REQUIRE(r.in_regime);
        REQUIRE(r.level_sum == Approx(2.0 / 3.0).margin(1e-12));
    }
    SECTION("residual scale stays sane on a small grid") {
        for (std::uint64_t N : {200ull, 2000ull}) {
            std::uint64_t D = static_cast<std::uint64_t>(std::pow(static_cast<double>(N), 0.3));
            auto f = make_sieve_function(eratosthenes_transform(make_sigma(1.0, t), D, t), N);
            auto r = fre_correlation_formula(f, f, N, 1, t);
            double bound_scale = std::abs(r.residual) / (static_cast<double>(D) * static_cast<double>(D));
            REQUIRE(std::isfinite(bound_scale));
            REQUIRE(bound_scale < 1000.0);
        }
    }
}

TEST_CASE("mean values of sieve functions", "[sieve]") {
    auto t = build_tables(1000);
    SECTION("catalog functions drift to the first coefficient") {
        std::vector<SieveFunction> fs;
        fs.push_back(make_sieve_function(eratosthenes_transform(make_one(), 1, t), 1000000));
        fs.push_back(make_sieve_function(eratosthenes_transform(make_mangoldt(t), 100, t), 1000000));
        fs.push_back(make_sieve_function(eratosthenes_transform(make_sigma(1.0, t), 1000, t), 1000000));
        fs.push_back(make_sieve_function(eratosthenes_transform(make_prod_minus(1.0, t), 500, t), 1000000));
        fs.push_back(make_sieve_function(eratosthenes_transform(make_prod_plus(2.0, t), 300, t), 1000000));
        for (const auto& f : fs) {
            auto r = mean_value_drift(f, 1000000);
            REQUIRE(r.drift < 1e-2);
            REQUIRE(rel_err(r.limit, f.coeffs.h[1]) < 1e-12);
        }
    }
    SECTION("drift bound is the coefficient mass over x") {
        SplitMix64 rng(8080);
        for (int k = 0; k < 20; ++k) {
            auto f = make_sieve_function(random_tds(rng, 50), 100000);
            std::uint64_t x = static_cast<std::uint64_t>(rng.range(100, 100000));
            auto r = mean_value_drift(f, x);
            REQUIRE(std::abs(r.empirical - r.limit)
                    <= abs_coeff_sum(f.tds) / static_cast<double>(x) + 1e-9);
        }
    }
    SECTION("x = 0 is rejected") {
        auto f = make_sieve_function(pair_ones(), 100);
        REQUIRE_THROWS_AS(mean_value_drift(f, 0), std::invalid_argument);
    }
}
