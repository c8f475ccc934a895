#pragma once

// Small numeric kit shared by the whole library: compensated (Kahan)
// accumulation for the long real/complex sums, a Riemann zeta evaluator
// (direct series plus Euler-Maclaurin tail), and a tiny fully-specified
// PRNG so seeded corpora are reproducible byte-for-byte on any compiler.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>

namespace fre {

using cplx = std::complex<double>;

// --- compensated summation ------------------------------------------------
//
// Neumaier's variant of Kahan summation: also safe when the running sum is
// smaller than the incoming term.

struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    double value() const { return sum + comp; }
};

struct KahanCplx {
    KahanSum re, im;

    void add(const cplx& z) {
        re.add(z.real());
        im.add(z.imag());
    }

    cplx value() const { return {re.value(), im.value()}; }
};

// --- Riemann zeta ----------------------------------------------------------
//
// zeta(x) for x > 1 by direct summation of n^-x up to a fixed cutoff M plus
// the Euler-Maclaurin tail
//
//   sum_{n>M} n^-x  =  M^(1-x)/(x-1) - M^-x/2 + x*M^-(x+1)/12 - ...
//
// With M = 1e6 and the B_2 term included the truncation error is below
// 1e-12 for every x > 1 (the next term is O(x^3 M^(-x-3))).  Values are
// memoised because callers evaluate the same exponent in tight loops.

inline double riemann_zeta(double x) {
    if (!(x > 1.0))
        throw std::invalid_argument("riemann_zeta: requires x > 1");

    static std::mutex mtx;
    static std::map<double, double> cache;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(x);
        if (it != cache.end()) return it->second;
    }

    constexpr std::uint64_t M = 1000000;
    KahanSum s;
    for (std::uint64_t n = 1; n <= M; ++n)
        s.add(std::pow(static_cast<double>(n), -x));
    const double Md = static_cast<double>(M);
    double tail = std::pow(Md, 1.0 - x) / (x - 1.0)
                - 0.5 * std::pow(Md, -x)
                + x / 12.0 * std::pow(Md, -x - 1.0);
    double z = s.value() + tail;

    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(x, z);
    return z;
}

// --- deterministic PRNG ----------------------------------------------------
//
// SplitMix64.  The recurrence is fixed by construction, so a seed pins the
// corpus independently of standard-library internals.

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [lo, hi]; modulo bias is irrelevant at corpus scale
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// relative-scale comparison used throughout the verification suites
inline double rel_err(double got, double want) {
    return std::abs(got - want) / (1.0 + std::abs(want));
}

inline double rel_err(const cplx& got, const cplx& want) {
    return std::abs(got - want) / (1.0 + std::abs(want));
}

} // namespace fre
