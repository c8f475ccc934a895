#pragma once

// The irregularity construction: a two-valued 2H-periodic block function
// f(n) = c1 on odd blocks of length H, c2 on even ones, probed by the
// symmetry integral
//
//   J(N, H) = sum_{N < x <= 2N} | sum_{|k| <= H} sgn(k) f(x + k) |^2 .
//
// Expanding the square turns J into a weighted combination of shifted
// autocorrelations: with W_H(h) = sum_{h2 - h1 = h} sgn(h1) sgn(h2) (both
// h1, h2 in [-H, H]),
//
//   J = W_H(0) dC(0) + 2 sum_{0 < h <= 2H} W_H(h) Re dC(h) + boundary,
//
// where dC(h) = C(2N, h) - C(N, h) and C(M, h) = sum_{n <= M} f(n)
// conj(f(n+h)).  The boundary mismatch comes from |h1| <= H window shifts
// only, so it is O(H^3) once the h = 0 term is kept on the main side.  A
// block function with c1 != c2 keeps J of order N H^2, which is the
// computable witness that such f cannot have first-class coefficient decay.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "fre/expansion.hpp"
#include "fre/numeric.hpp"

namespace fre {

// --- block functions ---------------------------------------------------------

struct BlockFunction {
    cplx c1, c2;
    std::uint64_t H;
    cplx operator()(std::uint64_t n) const { return block_value(c1, c2, H, n); }
};

inline BlockFunction make_block_function(cplx c1, cplx c2, std::uint64_t H) {
    if (H == 0) throw std::invalid_argument("make_block_function: block length must be >= 1");
    if (c1 == c2) throw std::invalid_argument("make_block_function: the two values must differ");
    return BlockFunction{c1, c2, H};
}

// --- sgn correlation weight ---------------------------------------------------

inline int sgn(std::int64_t k) { return (k > 0) - (k < 0); }

struct SgnWeight {
    std::uint64_t H;
    std::vector<std::int64_t> w; // index h + 2H for h in [-2H, 2H]
    std::int64_t at(std::int64_t h) const {
        std::int64_t s = 2 * static_cast<std::int64_t>(H);
        if (h < -s || h > s) return 0;
        return w[static_cast<std::size_t>(h + s)];
    }
    double growth_constant; // max_h |W_H(h)| / H
};

// exact integer table by double enumeration over (h1, h2)
inline SgnWeight sgn_weight(std::uint64_t H) {
    if (H == 0) throw std::invalid_argument("sgn_weight: H must be >= 1");
    SgnWeight W;
    W.H = H;
    std::int64_t s = static_cast<std::int64_t>(H);
    W.w.assign(static_cast<std::size_t>(4 * s + 1), 0);
    for (std::int64_t h1 = -s; h1 <= s; ++h1)
        for (std::int64_t h2 = -s; h2 <= s; ++h2)
            W.w[static_cast<std::size_t>((h2 - h1) + 2 * s)] += sgn(h1) * sgn(h2);
    std::int64_t peak = 0;
    for (std::int64_t v : W.w) peak = std::max(peak, v < 0 ? -v : v);
    W.growth_constant = static_cast<double>(peak) / static_cast<double>(H);
    return W;
}

// --- the symmetry integral ----------------------------------------------------

struct SymmetryIntegral {
    double value;
    bool window_ok; // H <= N/10, the H = o(N) regime marker
};

// J(N,H) via a sliding window: T(x) = S+(x) - S-(x) with
// S+(x) = f(x+1) + ... + f(x+H), S-(x) = f(x-H) + ... + f(x-1); both are
// updated incrementally and recomputed from scratch every 4096 steps to stop
// floating-point drift.
inline SymmetryIntegral symmetry_integral(const std::function<cplx(std::uint64_t)>& f,
                                          std::uint64_t N, std::uint64_t H) {
    if (N == 0 || H == 0) throw std::invalid_argument("symmetry_integral: need N, H >= 1");
    if (H > N) throw std::invalid_argument("symmetry_integral: window H exceeds N");
    auto window = [&](std::uint64_t x, cplx& plus, cplx& minus) {
        KahanCplx p, m;
        for (std::uint64_t k = 1; k <= H; ++k) {
            p.add(f(x + k));
            m.add(f(x - k));
        }
        plus = p.value();
        minus = m.value();
    };
    cplx plus, minus;
    KahanSum j;
    for (std::uint64_t x = N + 1; x <= 2 * N; ++x) {
        if ((x - (N + 1)) % 4096 == 0)
            window(x, plus, minus);
        else {
            plus += f(x + H) - f(x);       // window (x, x+H] gained x+H, lost x
            minus += f(x - 1) - f(x - 1 - H); // window [x-H, x) gained x-1, lost x-1-H
        }
        j.add(std::norm(plus - minus));
    }
    SymmetryIntegral r;
    r.value = j.value();
    r.window_ok = 10 * H <= N;
    return r;
}

// --- correlation decomposition --------------------------------------------------

namespace detail {

// C(M, h) = sum_{n <= M} f(n) conj(f(n+h))
inline cplx window_autocorrelation(const std::function<cplx(std::uint64_t)>& f, std::uint64_t M,
                                   std::uint64_t h) {
    KahanCplx acc;
    for (std::uint64_t n = 1; n <= M; ++n) acc.add(f(n) * std::conj(f(n + h)));
    return acc.value();
}

} // namespace detail

struct SymmetryDecomposition {
    double value;  // weighted correlation sum, h = 0 term included
    double direct; // J(N, H) recomputed directly
    double gap;    // |value - direct|, the window-shift boundary effect, O(H^3)
};

inline SymmetryDecomposition symmetry_via_correlations(const std::function<cplx(std::uint64_t)>& f,
                                                       std::uint64_t N, std::uint64_t H) {
    if (N == 0 || H == 0) throw std::invalid_argument("symmetry_via_correlations: need N, H >= 1");
    if (H > N) throw std::invalid_argument("symmetry_via_correlations: window H exceeds N");
    auto W = sgn_weight(H);
    KahanSum acc;
    for (std::uint64_t h = 0; h <= 2 * H; ++h) {
        std::int64_t w = W.at(static_cast<std::int64_t>(h));
        if (w == 0) continue;
        cplx d = detail::window_autocorrelation(f, 2 * N, h)
                 - detail::window_autocorrelation(f, N, h);
        acc.add(static_cast<double>(h == 0 ? w : 2 * w) * d.real());
    }
    SymmetryDecomposition r;
    r.value = acc.value();
    r.direct = symmetry_integral(f, N, H).value;
    r.gap = std::abs(r.value - r.direct);
    return r;
}

// --- the irregularity experiment ---------------------------------------------------

struct IrregularityRow {
    std::uint64_t N;
    std::uint64_t H;
    double J;
    double J_over_NH2;
    double via_correlations;
    double gap;
};

// J / (N H^2) along a grid: coefficient decay of first class would force the
// ratio toward zero as H grows like sqrt(N); block functions keep it bounded
// below
inline std::vector<IrregularityRow> irregularity_experiment(
    cplx c1, cplx c2, const std::vector<std::uint64_t>& N_grid,
    const std::function<std::uint64_t(std::uint64_t)>& H_rule) {
    std::vector<IrregularityRow> rows;
    rows.reserve(N_grid.size());
    for (std::uint64_t N : N_grid) {
        std::uint64_t H = H_rule(N);
        if (H == 0 || H * H > N)
            throw std::invalid_argument("irregularity_experiment: need 1 <= H <= sqrt(N)");
        auto f = make_block_function(c1, c2, H);
        auto dec = symmetry_via_correlations(f, N, H);
        IrregularityRow row;
        row.N = N;
        row.H = H;
        row.J = dec.direct;
        row.J_over_NH2 = dec.direct
                         / (static_cast<double>(N) * static_cast<double>(H) * static_cast<double>(H));
        row.via_correlations = dec.value;
        row.gap = dec.gap;
        rows.push_back(row);
    }
    return rows;
}

} // namespace fre
