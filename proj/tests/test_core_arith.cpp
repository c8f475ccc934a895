#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "fre/core_arith.hpp"
#include "oracles.hpp"

using namespace fre;

TEST_CASE("sieve tables match brute-force mu and phi", "[core]") {
    auto t = build_tables(600);

    SECTION("first values of mu") {
        REQUIRE(t.mu[1] == 1);
        REQUIRE(t.mu[2] == -1);
        REQUIRE(t.mu[3] == -1);
        REQUIRE(t.mu[4] == 0);
        REQUIRE(t.mu[5] == -1);
        REQUIRE(t.mu[6] == 1);
    }

    SECTION("phi spot values") {
        REQUIRE(t.phi[1] == 1);
        REQUIRE(t.phi[10] == 4);
        REQUIRE(t.phi[97] == 96);
    }

    SECTION("full range against trial division") {
        for (std::uint64_t n = 1; n <= 600; ++n) {
            REQUIRE(t.mu[n] == oracle::mobius(n));
            REQUIRE(t.phi[n] == oracle::totient(n));
        }
    }

    SECTION("totient divisor identity sum_{d|n} phi(d) = n") {
        for (std::uint64_t n = 1; n <= 600; ++n) {
            std::uint64_t s = 0;
            for (std::uint64_t d : divisors(n, t)) s += t.phi[d];
            REQUIRE(s == n);
        }
    }

    SECTION("smallest prime factor") {
        REQUIRE(t.spf[1] == 1);
        REQUIRE(t.spf[2] == 2);
        REQUIRE(t.spf[91] == 7);
        REQUIRE(t.is_prime(97));
        REQUIRE_FALSE(t.is_prime(91));
    }

    SECTION("argument validation") {
        REQUIRE_THROWS_AS(build_tables(0), std::invalid_argument);
        REQUIRE_THROWS_AS(build_tables(kMaxTablesLimit + 1), std::length_error);
        REQUIRE_THROWS_AS(t.mobius(601), std::invalid_argument);
        REQUIRE_THROWS_AS(t.mobius(0), std::invalid_argument);
    }
}

TEST_CASE("divisor machinery", "[core]") {
    auto t = build_tables(5000);

    SECTION("divisors ascending, against trial division") {
        for (std::uint64_t n : {1ULL, 2ULL, 12ULL, 97ULL, 360ULL, 4096ULL, 4620ULL})
            REQUIRE(divisors(n, t) == oracle::divisors(n));
    }

    SECTION("divisor counts") {
        REQUIRE(divisor_count(1, t) == 1);
        REQUIRE(divisor_count(12, t) == 6);
        REQUIRE(divisor_count(97, t) == 2);
        for (std::uint64_t n = 1; n <= 300; ++n)
            REQUIRE(divisor_count(n, t) == oracle::divisors(n).size());
    }
}

TEST_CASE("Ramanujan sums agree with the exponential-sum definition", "[core]") {
    auto t = build_tables(500);

    SECTION("frozen examples") {
        REQUIRE(ramanujan_sum(1, 7, t) == 1);
        REQUIRE(ramanujan_sum(5, 0, t) == 4); // c_q(0) = phi(q)
        REQUIRE(ramanujan_sum(6, 3, t) == -2);
        REQUIRE(ramanujan_sum(4, 2, t) == -2);
        REQUIRE(ramanujan_sum(9, 3, t) == -3);
    }

    SECTION("exponential sum oracle, q <= 120") {
        for (std::uint64_t q = 1; q <= 120; ++q)
            for (std::int64_t n = 0; n <= 2 * static_cast<std::int64_t>(q) + 3; ++n)
                REQUIRE(ramanujan_sum(q, n, t) == oracle::ramanujan_exponential(q, n));
    }

    SECTION("closed form equals divisor form") {
        for (std::uint64_t q = 1; q <= 500; ++q)
            for (std::int64_t n : {0L, 1L, 2L, 3L, 17L, 100L, 360L, -5L})
                REQUIRE(ramanujan_sum(q, n, t) == ramanujan_sum_closed(q, n, t));
    }

    SECTION("periodicity and negative arguments") {
        for (std::uint64_t q : {1ULL, 2ULL, 12ULL, 45ULL}) {
            for (std::int64_t n = -30; n <= 30; ++n)
                REQUIRE(ramanujan_sum(q, n, t)
                        == ramanujan_sum(q, n + 7 * static_cast<std::int64_t>(q), t));
        }
    }

    SECTION("magnitude bound |c_q(n)| <= (n, q) for n >= 1") {
        for (std::uint64_t q = 1; q <= 200; ++q)
            for (std::int64_t n = 1; n <= 200; ++n) {
                auto c = ramanujan_sum(q, n, t);
                auto g = std::gcd(static_cast<std::uint64_t>(n), q);
                REQUIRE(static_cast<std::uint64_t>(c < 0 ? -c : c) <= g);
            }
    }

    SECTION("divisor identity sum_{q | m} c_q(n) = m [m | n]") {
        for (std::uint64_t m = 1; m <= 120; ++m)
            for (std::int64_t n = 1; n <= 120; ++n) {
                std::int64_t s = 0;
                for (std::uint64_t q : divisors(m, t)) s += ramanujan_sum(q, n, t);
                std::int64_t want = (n % static_cast<std::int64_t>(m) == 0)
                                        ? static_cast<std::int64_t>(m) : 0;
                REQUIRE(s == want);
            }
    }

    SECTION("period table matches pointwise evaluation") {
        for (std::uint64_t q : {1ULL, 6ULL, 30ULL, 97ULL}) {
            auto row = ramanujan_period(q, t);
            for (std::uint64_t r = 0; r < q; ++r)
                REQUIRE(row[r] == ramanujan_sum(q, static_cast<std::int64_t>(r), t));
        }
    }

    SECTION("rejects q outside the tables") {
        REQUIRE_THROWS_AS(ramanujan_sum(0, 1, t), std::invalid_argument);
        REQUIRE_THROWS_AS(ramanujan_sum(501, 1, t), std::invalid_argument);
    }
}

TEST_CASE("totient submultiplicativity phi(ab) <= a phi(b)", "[core]") {
    auto t = build_tables(90000);
    for (std::uint64_t a = 1; a <= 300; ++a)
        for (std::uint64_t b = 1; b <= 300; ++b)
            REQUIRE(static_cast<std::uint64_t>(t.phi[a * b]) <= a * t.phi[b]);
}

TEST_CASE("primorial", "[core]") {
    auto t = build_tables(200);

    SECTION("small values") {
        REQUIRE(primorial(1, t) == 1);
        REQUIRE(primorial(2, t) == 2);
        REQUIRE(primorial(3, t) == 6);
        REQUIRE(primorial(10, t) == 210);
        REQUIRE(primorial(13, t) == 30030);
    }

    SECTION("beyond 64 bits at G = 59") {
        bigint p59 = primorial(59, t);
        bigint p53 = primorial(53, t);
        REQUIRE(p59 == p53 * 59);
        REQUIRE(p59 > bigint("18446744073709551615")); // 2^64 - 1
        // prod of primes <= 59, computed independently
        bigint check = 1;
        for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59})
            check *= p;
        REQUIRE(p59 == check);
    }

    SECTION("coprimality to the primorial via smallest prime factors") {
        for (std::uint64_t n = 1; n <= 200; ++n) {
            bool direct = boost::multiprecision::gcd(bigint(n), primorial(13, t)) == 1;
            REQUIRE(coprime_to_primorial(n, 13, t) == direct);
        }
    }
}
