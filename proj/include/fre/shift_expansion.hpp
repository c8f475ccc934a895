#pragma once

// Expansions of a correlation in the *shift* variable:
//
//   C(N, h) ~ sum_ell Chat(N, ell) c_ell(h).
//
// Two routes to the coefficients:
//
//   Carmichael average   Chat(ell) = 1/phi(ell) * lim_x 1/x sum_{h <= x} C(h) c_ell(h)
//   explicit form        Chat(ell) = ghat(ell)/phi(ell) * sum_{n <= N} f(n) c_ell(n)
//
// For finite-range g both agree and the expansion is a finite sum that
// reconstructs C(N, .) exactly.  The averages rest on the orthogonality
//
//   1/x sum_{h <= x} c_q(n+h) c_ell(h)  ->  [q = ell] c_ell(n),
//
// which is *exact* whenever lcm(q, ell) divides x; that makes full-period
// averages exact, no limit needed.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "fre/core_arith.hpp"
#include "fre/expansion.hpp"
#include "fre/numeric.hpp"
#include "fre/parallel.hpp"

namespace fre {

// --- Carmichael averages ------------------------------------------------------

// 1/(phi(ell) x) * sum_{h = 1}^{x} C(h) c_ell(h)
inline cplx carmichael_coefficient(const std::function<cplx(std::uint64_t)>& C, std::uint64_t ell,
                                   std::uint64_t x, const SieveTables& t) {
    if (x == 0) throw std::invalid_argument("carmichael_coefficient: x must be >= 1");
    t.check(ell, "carmichael_coefficient");
    auto row = ramanujan_period(ell, t);
    KahanCplx acc;
    for (std::uint64_t h = 1; h <= x; ++h)
        acc.add(C(h) * static_cast<double>(row[h % ell]));
    return acc.value() / (static_cast<double>(t.phi[ell]) * static_cast<double>(x));
}

struct CarmichaelProbe {
    cplx value;
    std::uint64_t x_used = 0;
    bool converged = false;
};

// average on the geometric grid x0, 2 x0, 4 x0, ... until two successive
// values agree to rel_tol (or the doubling budget runs out)
inline CarmichaelProbe carmichael_probe(const std::function<cplx(std::uint64_t)>& C,
                                        std::uint64_t ell, std::uint64_t x0, unsigned doublings,
                                        const SieveTables& t, double rel_tol = 1e-6) {
    if (x0 == 0) throw std::invalid_argument("carmichael_probe: x0 must be >= 1");
    CarmichaelProbe r;
    std::uint64_t x = x0;
    r.value = carmichael_coefficient(C, ell, x, t);
    r.x_used = x;
    for (unsigned k = 0; k < doublings; ++k) {
        x *= 2;
        cplx next = carmichael_coefficient(C, ell, x, t);
        bool close = std::abs(next - r.value) <= rel_tol * (1.0 + std::abs(next));
        r.value = next;
        r.x_used = x;
        if (close) { r.converged = true; break; }
    }
    return r;
}

// --- explicit coefficients ------------------------------------------------------

// ghat(ell)/phi(ell) * sum_{n <= N} f(n) c_ell(n); zero beyond the range of g
inline cplx explicit_coefficient(const std::function<cplx(std::uint64_t)>& f,
                                 const RamanujanCoefficients& gc, std::uint64_t N,
                                 std::uint64_t ell, const SieveTables& t) {
    if (N == 0) throw std::invalid_argument("explicit_coefficient: N must be >= 1");
    t.check(ell, "explicit_coefficient");
    if (ell > gc.range()) return cplx{0.0, 0.0};
    if (gc.h[ell] == cplx{0.0, 0.0}) return cplx{0.0, 0.0};
    auto row = ramanujan_period(ell, t);
    KahanCplx acc;
    for (std::uint64_t n = 1; n <= N; ++n)
        acc.add(f(n) * static_cast<double>(row[n % ell]));
    return gc.h[ell] / static_cast<double>(t.phi[ell]) * acc.value();
}

// --- assembled expansions ---------------------------------------------------------

struct ShiftExpansion {
    std::uint64_t N = 0;
    std::vector<cplx> coeff; // Chat(N, 1..L), 1-indexed; [0] unused
    std::string method;      // "explicit" or "carmichael"

    std::uint64_t range() const { return coeff.empty() ? 0 : coeff.size() - 1; }
};

inline ShiftExpansion build_shift_expansion_explicit(const std::function<cplx(std::uint64_t)>& f,
                                                     const RamanujanCoefficients& gc,
                                                     std::uint64_t N, std::uint64_t L,
                                                     const SieveTables& t, unsigned threads = 1) {
    ShiftExpansion se;
    se.N = N;
    se.method = "explicit";
    se.coeff.assign(L + 1, cplx{0.0, 0.0});
    auto vals = parallel_map<cplx>(L, threads, [&](std::size_t i) {
        return explicit_coefficient(f, gc, N, static_cast<std::uint64_t>(i + 1), t);
    });
    for (std::uint64_t ell = 1; ell <= L; ++ell) se.coeff[ell] = vals[ell - 1];
    return se;
}

inline ShiftExpansion build_shift_expansion_carmichael(const std::function<cplx(std::uint64_t)>& C,
                                                       std::uint64_t N, std::uint64_t L,
                                                       std::uint64_t x, const SieveTables& t,
                                                       unsigned threads = 1) {
    ShiftExpansion se;
    se.N = N;
    se.method = "carmichael";
    se.coeff.assign(L + 1, cplx{0.0, 0.0});
    auto vals = parallel_map<cplx>(L, threads, [&](std::size_t i) {
        return carmichael_coefficient(C, static_cast<std::uint64_t>(i + 1), x, t);
    });
    for (std::uint64_t ell = 1; ell <= L; ++ell) se.coeff[ell] = vals[ell - 1];
    return se;
}

// sum_{ell <= L} Chat(ell) c_ell(h)
inline cplx reconstruct_correlation(const ShiftExpansion& se, std::uint64_t h, const SieveTables& t) {
    KahanCplx acc;
    for (std::uint64_t ell = 1; ell <= se.range(); ++ell) {
        if (se.coeff[ell] == cplx{0.0, 0.0}) continue;
        acc.add(se.coeff[ell] * static_cast<double>(ramanujan_sum(ell, static_cast<std::int64_t>(h), t)));
    }
    return acc.value();
}

// --- decay diagnostics --------------------------------------------------------------

// least-squares slope of log |Chat| against log ell over the coefficients
// with |Chat| > 1e-12 * N; returns delta = -slope - 1, the exponent in the
// |Chat| ~ N / ell^(1+delta) decay picture
inline double decay_class_fit(const ShiftExpansion& se) {
    std::vector<double> xs, ys;
    const double floor_mag = 1e-12 * static_cast<double>(se.N);
    for (std::uint64_t ell = 1; ell <= se.range(); ++ell) {
        double m = std::abs(se.coeff[ell]);
        if (m > floor_mag) {
            xs.push_back(std::log(static_cast<double>(ell)));
            ys.push_back(std::log(m));
        }
    }
    if (xs.size() < 8)
        throw std::runtime_error("decay_class_fit: insufficient data (need >= 8 coefficients above "
                                 "the magnitude floor)");
    double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i]; sy += ys[i]; sxx += xs[i] * xs[i]; sxy += xs[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0)
        throw std::runtime_error("decay_class_fit: insufficient data (degenerate abscissae)");
    double slope = (n * sxy - sx * sy) / denom;
    return -slope - 1.0;
}

// --- orthogonality of Ramanujan sums ---------------------------------------------------

struct OrthogonalityReport {
    cplx average;  // 1/x sum_{h <= x} c_q(n+h) c_ell(h)
    cplx expected; // [q = ell] * c_ell(n)
    double error;
};

inline OrthogonalityReport orthogonality_check(std::uint64_t q, std::uint64_t ell, std::uint64_t x,
                                               std::int64_t n, const SieveTables& t) {
    if (x == 0) throw std::invalid_argument("orthogonality_check: x must be >= 1");
    t.check(q, "orthogonality_check");
    t.check(ell, "orthogonality_check");
    auto rq = ramanujan_period(q, t);
    auto rl = ramanujan_period(ell, t);
    KahanSum acc;
    for (std::uint64_t h = 1; h <= x; ++h) {
        std::uint64_t a = reduce_mod(n + static_cast<std::int64_t>(h), q);
        acc.add(static_cast<double>(rq[a]) * static_cast<double>(rl[h % ell]));
    }
    OrthogonalityReport r;
    r.average = cplx{acc.value() / static_cast<double>(x), 0.0};
    r.expected = cplx{q == ell ? static_cast<double>(ramanujan_sum(ell, n, t)) : 0.0, 0.0};
    r.error = std::abs(r.average - r.expected);
    return r;
}

} // namespace fre
