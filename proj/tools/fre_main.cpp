// Command-line surface: every library operation is reachable from one of the
// subcommands below.  Tables print as CSV (default) or single-line JSON; all
// floating-point output uses shortest round-trip decimals, and identical
// invocations (same flags, same seed, any thread count) print identical bytes.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "fre/core_arith.hpp"
#include "fre/correlation.hpp"
#include "fre/expansion.hpp"
#include "fre/io.hpp"
#include "fre/numeric.hpp"
#include "fre/shift_expansion.hpp"
#include "fre/sieve.hpp"
#include "fre/symmetry.hpp"
#include "fre/verify.hpp"

namespace {

using namespace fre;

std::vector<std::uint64_t> as_uints(const std::vector<std::int64_t>& v, const char* what,
                                    std::int64_t lo) {
    std::vector<std::uint64_t> out;
    out.reserve(v.size());
    for (std::int64_t x : v) {
        if (x < lo)
            throw std::invalid_argument(std::string(what) + ": value " + std::to_string(x)
                                        + " must be >= " + std::to_string(lo));
        out.push_back(static_cast<std::uint64_t>(x));
    }
    return out;
}

void push_complex(std::vector<Cell>& row, cplx z) {
    row.push_back(cell(z.real()));
    row.push_back(cell(z.imag()));
}

// shift-memoized correlation h -> C_{f,g}(N, h) for the Carmichael averages
std::vector<cplx> correlation_memo(const TruncatedDivisorSum& f, const TruncatedDivisorSum& g,
                                   std::uint64_t N, std::uint64_t hmax, const SieveTables& t,
                                   unsigned threads) {
    auto vals = parallel_map<cplx>(hmax + 1, threads, [&](std::size_t h) {
        return correlate_direct(f, g, N, static_cast<std::uint64_t>(h), t);
    });
    return vals;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite Ramanujan expansions, shifted convolution sums, and sieve experiments"};
    app.name("fre");
    app.require_subcommand(1);

    std::string format = "csv";
    std::uint64_t tables_limit = 10000000;
    unsigned threads = 0;
    std::uint64_t seed = 1;
    app.add_option("--format", format, "output format (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--tables-limit", tables_limit, "sieve table size (default 10^7)");
    app.add_option("--threads", threads, "worker threads, 0 = auto");
    app.add_option("--seed", seed, "seed for randomized verification corpora");

    auto add_sub = [&](const char* name, const char* desc) {
        CLI::App* s = app.add_subcommand(name, desc);
        s->fallthrough();
        s->set_help_flag("--help", "print this help message and exit");
        return s;
    };

    // --- csum ----------------------------------------------------------------
    auto* sc_csum = add_sub("csum", "Ramanujan sums c_q(n) over a (q, n) grid");
    std::string csum_q, csum_n;
    sc_csum->add_option("--q", csum_q, "modulus: single value, a..b, or comma list")->required();
    sc_csum->add_option("--n", csum_n, "argument: single value, a..b, or comma list")->required();

    // --- transform / coeffs / invert / reconstruct ----------------------------
    std::string fn_f, fn_n;
    std::uint64_t fn_D = 0;
    auto* sc_transform = add_sub("transform", "Eratosthenes transform f' of a function spec");
    auto* sc_coeffs = add_sub("coeffs", "finite Ramanujan-expansion coefficients of f_D");
    auto* sc_invert = add_sub("invert", "recover f' from the expansion coefficients (round trip)");
    auto* sc_reconstruct = add_sub("reconstruct", "evaluate f_D(n) from its expansion");
    for (CLI::App* s : {sc_transform, sc_coeffs, sc_invert, sc_reconstruct}) {
        s->add_option("--f", fn_f, "function spec name[:key=val,...]")->required();
        s->add_option("--D", fn_D, "truncation when the spec carries none");
    }
    sc_reconstruct->add_option("--n", fn_n, "arguments: single value, a..b, or comma list")
        ->required();

    // --- correlate -------------------------------------------------------------
    auto* sc_corr = add_sub("correlate", "shifted convolution sums C_{f,g}(N, h) and residuals");
    std::string corr_f, corr_g, corr_N, corr_h, corr_method = "direct";
    std::uint64_t corr_D = 0;
    bool corr_trunc_nh = false, corr_fre = false;
    sc_corr->add_option("--f", corr_f, "left function spec")->required();
    sc_corr->add_option("--g", corr_g, "right function spec")->required();
    sc_corr->add_option("--N", corr_N, "summation length (comma list with --fre-experiment)")
        ->required();
    sc_corr->add_option("--h", corr_h, "shift range")->required();
    sc_corr->add_option("--method", corr_method, "direct | divisors | fre")
        ->check(CLI::IsMember({"direct", "divisors", "fre"}));
    sc_corr->add_option("--D", corr_D, "fallback truncation (default N)");
    sc_corr->add_flag("--truncate-nh", corr_trunc_nh, "re-truncate g at N+h for each shift");
    sc_corr->add_flag("--fre-experiment", corr_fre,
                      "emit the expansion-formula split N,D,Q,h,value,main,residual,bound_scale");

    // --- singular ----------------------------------------------------------------
    auto* sc_sing = add_sub("singular", "singular sums S_{f,g}(h), twin series, Lambda_N comparison");
    std::string sing_f, sing_g, sing_h, sing_N;
    std::uint64_t sing_D = 0, sing_Q = 10000;
    bool sing_twin = false, sing_lambda = false;
    sc_sing->add_option("--f", sing_f, "left function spec (two-form mode)");
    sc_sing->add_option("--g", sing_g, "right function spec (two-form mode)");
    sc_sing->add_option("--h", sing_h, "shift range")->required();
    sc_sing->add_option("--D", sing_D, "fallback truncation (two-form mode)");
    sc_sing->add_option("--Q", sing_Q, "modulus cutoff for --twin / --lambda-N (default 10^4)");
    sc_sing->add_option("--N", sing_N, "truncation list for --lambda-N");
    auto* twin_flag = sc_sing->add_flag("--twin", sing_twin, "partial twin-series sums h,Q,value");
    auto* lam_flag = sc_sing->add_flag("--lambda-N", sing_lambda,
                                       "truncated von Mangoldt singular sum vs ideal partial sum");
    twin_flag->excludes(lam_flag);

    // --- carmichael ----------------------------------------------------------------
    auto* sc_car = add_sub("carmichael", "Carmichael-averaged shift-expansion coefficients");
    std::string car_f, car_g, car_ell;
    std::uint64_t car_N = 0, car_x = 0, car_D = 0;
    sc_car->add_option("--f", car_f, "left function spec")->required();
    sc_car->add_option("--g", car_g, "right function spec")->required();
    sc_car->add_option("--N", car_N, "correlation length")->required();
    sc_car->add_option("--x", car_x, "averaging length over shifts")->required();
    sc_car->add_option("--ell", car_ell, "coefficient index range")->required();
    sc_car->add_option("--D", car_D, "fallback truncation (default N)");

    // --- shift-expand ----------------------------------------------------------------
    auto* sc_se = add_sub("shift-expand", "assemble a shift expansion of h -> C_{f,g}(N, h)");
    std::string se_f, se_g, se_method = "explicit";
    std::uint64_t se_N = 0, se_L = 0, se_x = 0, se_D = 0;
    bool se_diag = false;
    sc_se->add_option("--f", se_f, "left function spec")->required();
    sc_se->add_option("--g", se_g, "right function spec")->required();
    sc_se->add_option("--N", se_N, "correlation length")->required();
    sc_se->add_option("--L", se_L, "expansion support (coefficients 1..L)")->required();
    sc_se->add_option("--method", se_method, "explicit | carmichael")
        ->check(CLI::IsMember({"explicit", "carmichael"}));
    sc_se->add_option("--x", se_x, "averaging length (required for --method carmichael)");
    sc_se->add_option("--D", se_D, "fallback truncation (default N)");
    sc_se->add_flag("--diagnostics", se_diag,
                    "append JSON {\"delta_fit\",\"max_residual\",\"support\"}");

    // --- ap-sum ----------------------------------------------------------------
    auto* sc_ap = add_sub("ap-sum", "sums over arithmetic progressions vs the expansion main term");
    std::string ap_f, ap_t, ap_a;
    std::uint64_t ap_N = 0, ap_D = 0;
    sc_ap->add_option("--f", ap_f, "function spec")->required();
    sc_ap->add_option("--N", ap_N, "summation length")->required();
    sc_ap->add_option("--t", ap_t, "modulus range")->required();
    sc_ap->add_option("--a", ap_a, "residue range (any integers)")->required();
    sc_ap->add_option("--D", ap_D, "fallback truncation (default N)");

    // --- twisted-sum ----------------------------------------------------------------
    auto* sc_tw = add_sub("twisted-sum", "Ramanujan-twisted sums vs the single-coefficient main term");
    std::string tw_f, tw_ell, tw_a;
    std::uint64_t tw_N = 0, tw_D = 0;
    sc_tw->add_option("--f", tw_f, "function spec")->required();
    sc_tw->add_option("--N", tw_N, "summation length")->required();
    sc_tw->add_option("--ell", tw_ell, "twist modulus range")->required();
    sc_tw->add_option("--a", tw_a, "twist offset range (any integers)")->required();
    sc_tw->add_option("--D", tw_D, "fallback truncation (default N)");

    // --- gsift ----------------------------------------------------------------
    auto* sc_gs = add_sub("gsift", "construct a G-sifted function and print its transform support");
    std::string gs_f;
    std::uint64_t gs_Q = 0, gs_G = 0, gs_level = 0;
    sc_gs->add_option("--Q", gs_Q, "range (transform support bound)")->required();
    sc_gs->add_option("--G", gs_G, "sift bound (primes <= G removed)")->required();
    sc_gs->add_option("--f", gs_f, "transform rule spec (default: all-ones)");
    sc_gs->add_option("--level", gs_level, "level context (default max(Q,2))");

    // --- coprime-corr ----------------------------------------------------------------
    auto* sc_cc = add_sub("coprime-corr",
                          "coprimality-restricted correlation against a G-sifted partner");
    std::string cc_f, cc_g, cc_h, cc_q;
    std::uint64_t cc_N = 0, cc_Q = 0, cc_G = 0, cc_D = 0;
    sc_cc->add_option("--f", cc_f, "plain function spec")->required();
    sc_cc->add_option("--g", cc_g, "sifted-partner transform rule spec (default: all-ones)");
    sc_cc->add_option("--N", cc_N, "summation length")->required();
    sc_cc->add_option("--h", cc_h, "shift range (nonzero, |h| <= G)")->required();
    sc_cc->add_option("--q", cc_q, "coprimality modulus range")->required();
    sc_cc->add_option("--Q", cc_Q, "sifted partner range")->required();
    sc_cc->add_option("--G", cc_G, "sift bound")->required();
    sc_cc->add_option("--D", cc_D, "fallback truncation for --f");

    // --- symmetry ----------------------------------------------------------------
    auto* sc_sym = add_sub("symmetry", "symmetry-integral experiment for two-valued block functions");
    std::string sym_c1 = "1", sym_c2 = "-1", sym_N, sym_H;
    sc_sym->add_option("--c1", sym_c1, "first block value (re or re/im)");
    sc_sym->add_option("--c2", sym_c2, "second block value (re or re/im)");
    sc_sym->add_option("--N", sym_N, "length list")->required();
    sc_sym->add_option("--H", sym_H, "window list (default floor(sqrt(N)/2))");

    // --- verify ----------------------------------------------------------------
    auto* sc_ver = add_sub("verify", "run named verification suites (see --help for names)");
    std::string ver_which = "all";
    std::uint64_t ver_cases = 100, ver_qmax = 40;
    sc_ver->add_option("suite", ver_which,
                       "suite name, 'all', or 'exact-identities' (default all)");
    sc_ver->add_option("--cases", ver_cases, "random cases per suite (default 100)");
    sc_ver->add_option("--qmax", ver_qmax, "modulus bound for the orthogonality sweep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const SieveTables t = build_tables(tables_limit);
        const unsigned nthreads =
            threads ? threads : std::max(1u, std::thread::hardware_concurrency());
        const bool as_json = (format == "json");
        OutputTable tab;

        if (sc_csum->parsed()) {
            auto qs = as_uints(parse_range(csum_q), "csum --q", 1);
            auto ns = parse_range(csum_n);
            tab.columns = {"q", "n", "value"};
            for (std::uint64_t q : qs)
                for (std::int64_t n : ns)
                    tab.add({cell(q), cell(n), cell(ramanujan_sum_closed(q, n, t))});
            write_table(std::cout, tab, as_json);
            return 0;
        }

        if (sc_transform->parsed() || sc_invert->parsed()) {
            auto tds = resolve_tds(parse_function_spec(fn_f), t, fn_D);
            if (sc_invert->parsed()) tds = invert_coefficients(finite_ramanujan_coefficients(tds), t);
            tab.columns = {"d", "fp_re", "fp_im"};
            for (std::uint64_t d = 1; d <= tds.truncation(); ++d) {
                std::vector<Cell> row{cell(d)};
                push_complex(row, tds.fp[d]);
                tab.add(std::move(row));
            }
            write_table(std::cout, tab, as_json);
            return 0;
        }

        if (sc_coeffs->parsed()) {
            auto c = finite_ramanujan_coefficients(resolve_tds(parse_function_spec(fn_f), t, fn_D));
            tab.columns = {"q", "coeff_re", "coeff_im"};
            for (std::uint64_t q = 1; q <= c.range(); ++q) {
                std::vector<Cell> row{cell(q)};
                push_complex(row, c.h[q]);
                tab.add(std::move(row));
            }
            write_table(std::cout, tab, as_json);
            return 0;
        }

        if (sc_reconstruct->parsed()) {
            auto c = finite_ramanujan_coefficients(resolve_tds(parse_function_spec(fn_f), t, fn_D));
            auto ns = as_uints(parse_range(fn_n), "reconstruct --n", 1);
            std::uint64_t n_max = *std::max_element(ns.begin(), ns.end());
            auto values = reconstruct_range(c, n_max, t);
            tab.columns = {"n", "value_re", "value_im"};
            for (std::uint64_t n : ns) {
                std::vector<Cell> row{cell(n)};
                push_complex(row, values[n]);
                tab.add(std::move(row));
            }
            write_table(std::cout, tab, as_json);
            return 0;
        }

        if (sc_corr->parsed()) {
            auto fspec = parse_function_spec(corr_f);
            auto gspec = parse_function_spec(corr_g);
            auto Ns = as_uints(parse_range(corr_N), "correlate --N", 1);
            auto hs = as_uints(parse_range(corr_h), "correlate --h", 0);
            if (corr_fre) {
                tab.columns = {"N", "D", "Q", "h", "value", "main", "residual", "bound_scale"};
                for (std::uint64_t N : Ns) {
                    std::uint64_t fallback =
                        corr_D ? corr_D
                               : std::max<std::uint64_t>(
                                     1, static_cast<std::uint64_t>(
                                            std::pow(static_cast<double>(N), 0.3)));
                    auto f = make_sieve_function(resolve_tds(fspec, t, fallback),
                                                 std::max<std::uint64_t>(N, 2));
                    auto g = make_sieve_function(resolve_tds(gspec, t, fallback),
                                                 std::max<std::uint64_t>(N, 2));
                    auto rows = parallel_map<FreSplit>(hs.size(), nthreads, [&](std::size_t i) {
                        return fre_correlation_formula(f, g, N, hs[i], t);
                    });
                    for (std::size_t i = 0; i < hs.size(); ++i) {
                        const auto& r = rows[i];
                        double scale = std::abs(r.residual)
                                       / (static_cast<double>(f.range()) * static_cast<double>(g.range()));
                        tab.add({cell(N), cell(f.range()), cell(g.range()), cell(hs[i]),
                                 cell(r.value.real()), cell(r.main_term.real()),
                                 cell(r.residual.real()), cell(scale)});
                    }
                }
                write_table(std::cout, tab, as_json);
                return 0;
            }
            if (Ns.size() != 1)
                throw std::invalid_argument("correlate: exactly one --N unless --fre-experiment");
            std::uint64_t N = Ns[0];
            std::uint64_t fallback = corr_D ? corr_D : N;
            auto ftds = resolve_tds(fspec, t, fallback);
            auto fc = finite_ramanujan_coefficients(ftds);
            ResolvedFunction grf;
            TruncatedDivisorSum gtds;
            RamanujanCoefficients gc;
            if (corr_trunc_nh) {
                grf = resolve_function(gspec, t);
            } else {
                gtds = resolve_tds(gspec, t, fallback);
                gc = finite_ramanujan_coefficients(gtds);
            }
            struct Row {
                cplx value, singular, residual;
            };
            auto rows = parallel_map<Row>(hs.size(), nthreads, [&](std::size_t i) {
                std::uint64_t h = hs[i];
                TruncatedDivisorSum g_local;
                RamanujanCoefficients gc_local;
                const TruncatedDivisorSum* g = &gtds;
                const RamanujanCoefficients* gcp = &gc;
                if (corr_trunc_nh) {
                    g_local = eratosthenes_transform(grf.fn, N + h, t);
                    gc_local = finite_ramanujan_coefficients(g_local);
                    g = &g_local;
                    gcp = &gc_local;
                }
                cplx value;
                if (corr_method == "direct")
                    value = correlate_direct(ftds, *g, N, h, t);
                else if (corr_method == "divisors")
                    value = correlate_via_divisors(ftds, *g, N, h);
                else
                    value = fre_correlation_formula(
                                make_sieve_function(ftds, std::max<std::uint64_t>(N, 2)),
                                make_sieve_function(*g, std::max<std::uint64_t>(N, 2)), N, h, t)
                                .value;
                cplx S = singular_sum_coefficient_form(fc, *gcp, h, t);
                return Row{value, S, value - S * static_cast<double>(N)};
            });
            tab.columns = {"h",           "value_re",    "value_im",    "singular_re",
                           "singular_im", "residual_re", "residual_im"};
            for (std::size_t i = 0; i < hs.size(); ++i) {
                std::vector<Cell> row{cell(hs[i])};
                push_complex(row, rows[i].value);
                push_complex(row, rows[i].singular);
                push_complex(row, rows[i].residual);
                tab.add(std::move(row));
            }
            write_table(std::cout, tab, as_json);
            return 0;
        }

        if (sc_sing->parsed()) {
            if (sing_twin) {
                auto hs = as_uints(parse_range(sing_h), "singular --h", 1);
                tab.columns = {"h", "Q", "value"};
                for (std::uint64_t h : hs)
                    tab.add({cell(h), cell(sing_Q), cell(twin_singular_series_partial(h, sing_Q, t))});
            } else if (sing_lambda) {
                if (sing_N.empty())
                    throw std::invalid_argument("singular --lambda-N: needs --N list");
                auto Ns = as_uints(parse_range(sing_N), "singular --N", 1);
                auto hs = as_uints(parse_range(sing_h), "singular --h", 1);
                tab.columns = {"N", "h", "Q", "truncated", "ideal", "difference"};
                for (std::uint64_t N : Ns)
                    for (std::uint64_t h : hs) {
                        auto r = truncated_vs_ideal_singular(N, h, sing_Q, t);
                        tab.add({cell(N), cell(h), cell(sing_Q), cell(r.truncated_sum),
                                 cell(r.partial_ideal), cell(r.difference)});
                    }
            } else {
                if (sing_f.empty() || sing_g.empty())
                    throw std::invalid_argument("singular: needs --f and --g (or --twin/--lambda-N)");
                auto ftds = resolve_tds(parse_function_spec(sing_f), t, sing_D);
                auto gtds = resolve_tds(parse_function_spec(sing_g), t, sing_D);
                auto fc = finite_ramanujan_coefficients(ftds);
                auto gc = finite_ramanujan_coefficients(gtds);
                auto hs = as_uints(parse_range(sing_h), "singular --h", 0);
                tab.columns = {"h", "coeff_re", "coeff_im", "erat_re", "erat_im"};
                for (std::uint64_t h : hs) {
                    std::vector<Cell> row{cell(h)};
                    push_complex(row, singular_sum_coefficient_form(fc, gc, h, t));
                    push_complex(row, singular_sum_eratosthenes_form(ftds, gtds, h));
                    tab.add(std::move(row));
                }
            }
            write_table(std::cout, tab, as_json);
            return 0;
        }

        if (sc_car->parsed()) {
            std::uint64_t fallback = car_D ? car_D : car_N;
            auto ftds = resolve_tds(parse_function_spec(car_f), t, fallback);
            auto gtds = resolve_tds(parse_function_spec(car_g), t, fallback);
            if (car_x == 0) throw std::invalid_argument("carmichael: --x must be >= 1");
            auto ells = as_uints(parse_range(car_ell), "carmichael --ell", 1);
            auto C = correlation_memo(ftds, gtds, car_N, car_x, t, nthreads);
            auto Cfn = [&](std::uint64_t h) { return C.at(h); };
            auto coeffs = parallel_map<cplx>(ells.size(), nthreads, [&](std::size_t i) {
                return carmichael_coefficient(Cfn, ells[i], car_x, t);
            });
            tab.columns = {"ell", "coeff_re", "coeff_im", "method"};
            for (std::size_t i = 0; i < ells.size(); ++i) {
                std::vector<Cell> row{cell(ells[i])};
                push_complex(row, coeffs[i]);
                row.push_back(cell("carmichael"));
                tab.add(std::move(row));
            }
            write_table(std::cout, tab, as_json);
            return 0;
        }

        if (sc_se->parsed()) {
            std::uint64_t fallback = se_D ? se_D : se_N;
            auto ftds = resolve_tds(parse_function_spec(se_f), t, fallback);
            auto gtds = resolve_tds(parse_function_spec(se_g), t, fallback);
            ShiftExpansion se;
            if (se_method == "explicit") {
                auto gc = finite_ramanujan_coefficients(gtds);
                auto feval = [&](std::uint64_t n) { return evaluate_truncated(ftds, n, t); };
                se = build_shift_expansion_explicit(feval, gc, se_N, se_L, t, nthreads);
            } else {
                if (se_x == 0)
                    throw std::invalid_argument("shift-expand: --method carmichael needs --x");
                auto C = correlation_memo(ftds, gtds, se_N, se_x, t, nthreads);
                auto Cfn = [&](std::uint64_t h) { return C.at(h); };
                se = build_shift_expansion_carmichael(Cfn, se_N, se_L, se_x, t, nthreads);
            }
            tab.columns = {"ell", "coeff_re", "coeff_im", "method"};
            for (std::uint64_t ell = 1; ell <= se.range(); ++ell) {
                std::vector<Cell> row{cell(ell)};
                push_complex(row, se.coeff[ell]);
                row.push_back(cell(se.method));
                tab.add(std::move(row));
            }
            write_table(std::cout, tab, as_json);
            if (se_diag) {
                std::string delta = "null";
                try {
                    delta = format_number(decay_class_fit(se));
                } catch (const std::runtime_error&) {
                    // fewer than 8 usable coefficients: report null rather than guess
                }
                double max_res = 0.0;
                for (std::uint64_t h = 0; h <= 2 * se_L; ++h)
                    max_res = std::max(max_res,
                                       std::abs(reconstruct_correlation(se, h, t)
                                                - correlate_direct(ftds, gtds, se_N, h, t)));
                std::cout << "{\"delta_fit\":" << delta
                          << ",\"max_residual\":" << format_number(max_res)
                          << ",\"support\":" << se_L << "}\n";
            }
            return 0;
        }

        if (sc_ap->parsed()) {
            std::uint64_t fallback = ap_D ? ap_D : ap_N;
            auto f = make_sieve_function(resolve_tds(parse_function_spec(ap_f), t, fallback),
                                         std::max<std::uint64_t>(ap_N, 2));
            auto mods = as_uints(parse_range(ap_t), "ap-sum --t", 1);
            auto as = parse_range(ap_a);
            tab.columns = {"N",       "t",       "a",       "direct_re", "direct_im",
                           "main_re", "main_im", "diff_re", "diff_im"};
            for (std::uint64_t mod : mods)
                for (std::int64_t a : as) {
                    auto r = ap_sum(f, ap_N, a, mod, t);
                    std::vector<Cell> row{cell(ap_N), cell(mod), cell(a)};
                    push_complex(row, r.direct);
                    push_complex(row, r.main_term);
                    push_complex(row, r.difference);
                    tab.add(std::move(row));
                }
            write_table(std::cout, tab, as_json);
            return 0;
        }

        if (sc_tw->parsed()) {
            std::uint64_t fallback = tw_D ? tw_D : tw_N;
            auto f = make_sieve_function(resolve_tds(parse_function_spec(tw_f), t, fallback),
                                         std::max<std::uint64_t>(tw_N, 2));
            auto ells = as_uints(parse_range(tw_ell), "twisted-sum --ell", 1);
            auto as = parse_range(tw_a);
            tab.columns = {"N",       "ell",     "a",       "direct_re", "direct_im",
                           "main_re", "main_im", "diff_re", "diff_im"};
            for (std::uint64_t ell : ells)
                for (std::int64_t a : as) {
                    auto r = twisted_sum(f, tw_N, ell, a, t);
                    std::vector<Cell> row{cell(tw_N), cell(ell), cell(a)};
                    push_complex(row, r.direct);
                    push_complex(row, r.main_term);
                    push_complex(row, r.difference);
                    tab.add(std::move(row));
                }
            write_table(std::cout, tab, as_json);
            return 0;
        }

        if (sc_gs->parsed()) {
            std::function<cplx(std::uint64_t)> rule = [](std::uint64_t) { return cplx{1.0, 0.0}; };
            TruncatedDivisorSum rtds;
            if (!gs_f.empty()) {
                rtds = resolve_tds(parse_function_spec(gs_f), t, gs_Q);
                rule = [&](std::uint64_t q) {
                    return q < rtds.fp.size() ? rtds.fp[q] : cplx{0.0, 0.0};
                };
            }
            auto g = make_gsifted(rule, gs_Q, gs_G, t, gs_level);
            tab.columns = {"q", "fp_re", "fp_im"};
            for (std::uint64_t q = 1; q <= g.base.range(); ++q) {
                if (g.base.tds.fp[q] == cplx{0.0, 0.0}) continue;
                std::vector<Cell> row{cell(q)};
                push_complex(row, g.base.tds.fp[q]);
                tab.add(std::move(row));
            }
            write_table(std::cout, tab, as_json);
            return 0;
        }

        if (sc_cc->parsed()) {
            auto f = make_sieve_function(resolve_tds(parse_function_spec(cc_f), t, cc_D),
                                         std::max<std::uint64_t>(cc_N, 2));
            std::function<cplx(std::uint64_t)> rule = [](std::uint64_t) { return cplx{1.0, 0.0}; };
            TruncatedDivisorSum rtds;
            if (!cc_g.empty()) {
                rtds = resolve_tds(parse_function_spec(cc_g), t, cc_Q);
                rule = [&](std::uint64_t q) {
                    return q < rtds.fp.size() ? rtds.fp[q] : cplx{0.0, 0.0};
                };
            }
            auto g = make_gsifted(rule, cc_Q, cc_G, t, std::max<std::uint64_t>(cc_N, 2));
            auto hs = parse_range(cc_h);
            auto qs = as_uints(parse_range(cc_q), "coprime-corr --q", 1);
            tab.columns = {"N",       "h",           "q",             "G",
                           "value_re", "value_im",   "prediction_re", "prediction_im",
                           "residual_re", "residual_im"};
            for (std::int64_t h : hs)
                for (std::uint64_t q : qs) {
                    auto r = coprime_correlation(f, g, cc_N, h, q, t);
                    std::vector<Cell> row{cell(cc_N), cell(h), cell(q), cell(cc_G)};
                    push_complex(row, r.value);
                    push_complex(row, r.prediction);
                    push_complex(row, r.residual);
                    tab.add(std::move(row));
                }
            write_table(std::cout, tab, as_json);
            return 0;
        }

        if (sc_sym->parsed()) {
            cplx c1 = parse_complex(sym_c1);
            cplx c2 = parse_complex(sym_c2);
            auto Ns = as_uints(parse_range(sym_N), "symmetry --N", 1);
            std::vector<std::uint64_t> Hs;
            if (!sym_H.empty()) {
                Hs = as_uints(parse_range(sym_H), "symmetry --H", 1);
                if (Hs.size() != 1 && Hs.size() != Ns.size())
                    throw std::invalid_argument(
                        "symmetry: --H must be a single value or match --N in length");
            }
            tab.columns = {"N", "H", "J", "J_over_NH2", "via_correlations", "gap"};
            for (std::size_t i = 0; i < Ns.size(); ++i) {
                std::uint64_t H =
                    Hs.empty()
                        ? std::max<std::uint64_t>(
                              1, static_cast<std::uint64_t>(
                                     std::sqrt(static_cast<double>(Ns[i])) / 2.0))
                        : (Hs.size() == 1 ? Hs[0] : Hs[i]);
                auto rows = irregularity_experiment(c1, c2, {Ns[i]},
                                                    [&](std::uint64_t) { return H; });
                for (const auto& r : rows)
                    tab.add({cell(r.N), cell(r.H), cell(r.J), cell(r.J_over_NH2),
                             cell(r.via_correlations), cell(r.gap)});
            }
            write_table(std::cout, tab, as_json);
            return 0;
        }

        if (sc_ver->parsed()) {
            VerifyOptions vo;
            vo.seed = seed;
            vo.cases = ver_cases;
            vo.qmax = ver_qmax;
            auto results = run_verify(ver_which, vo, t);
            bool all_ok = true;
            for (const auto& r : results) {
                std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " cases=" << r.cases
                          << " max_err=" << format_number(r.max_err);
                if (!r.pass && !r.detail.empty()) std::cout << " case=[" << r.detail << "]";
                std::cout << "\n";
                all_ok = all_ok && r.pass;
            }
            return all_ok ? 0 : 3;
        }

        return 2; // unreachable: require_subcommand(1) guarantees a branch above
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
