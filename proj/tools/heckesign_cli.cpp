// Command-line surface: constants, interval tables, eigenform listings, the
// census, the empirical experiments and the sieve evaluators.
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heckesign/averages.hpp"
#include "heckesign/config.hpp"
#include "heckesign/experiments.hpp"
#include "heckesign/heckeforms.hpp"
#include "heckesign/measures.hpp"
#include "heckesign/report.hpp"
#include "heckesign/sieve.hpp"
#include "heckesign/sign_intervals.hpp"

namespace hs = heckesign;

namespace {

struct Output {
    bool json = false;
    bool csv = false;
};

int report_exit(const hs::ExperimentReport& r) { return r.verdict ? 0 : 1; }

void print_report(const hs::ExperimentReport& r, const Output& out) {
    if (out.json) {
        std::printf("%s\n", hs::report_to_json(r).c_str());
        return;
    }
    if (out.csv) {
        std::printf("index,observed,expected\n");
        for (std::size_t i = 0; i < std::max(r.observed.size(), r.expected.size()); ++i) {
            std::printf("%zu,%s,%s\n", i,
                        i < r.observed.size() ? hs::format_double(r.observed[i]).c_str() : "",
                        i < r.expected.size() ? hs::format_double(r.expected[i]).c_str() : "");
        }
        return;
    }
    std::fputs(hs::report_to_text(r).c_str(), stdout);
}

hs::PrimePower parse_prime_power(const std::string& s) {
    const auto caret = s.find('^');
    if (caret != std::string::npos) {
        const std::uint64_t q = std::stoull(s.substr(0, caret));
        const unsigned n = (unsigned)std::stoul(s.substr(caret + 1));
        return hs::make_prime_power(q, n);
    }
    auto pp = hs::as_prime_power(std::stoull(s));
    if (!pp) throw CLI::ValidationError("--target", "not a prime power");
    return *pp;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"first sign changes of Hecke eigenvalues: constants, eigenforms, sieve numerics"};
    app.require_subcommand(1);
    app.fallthrough(true);

    Output out;
    hs::Config cfg = hs::load_config_from_env();
    app.add_flag("--json", out.json, "one JSON object per result");
    app.add_flag("--csv", out.csv, "CSV for tabular output");
    app.add_option("--prec", cfg.prec, "q-expansion precision (default from config, else 210)");
    app.add_option("--cache-dir", cfg.cache_dir, "coefficient cache directory");
    app.add_option("--threads", cfg.threads, "worker threads for census builds");

    // constants ------------------------------------------------------------
    double tol = 1e-9;
    CLI::App* constants = app.add_subcommand("constants", "both limiting averages with tail bounds");
    constants->add_option("--tol", tol, "series tail tolerance (default 1e-9)");

    // measure --------------------------------------------------------------
    CLI::App* measure = app.add_subcommand("measure", "interval mass of mu_ST or mu_p");
    std::string kind = "st";
    std::uint64_t mp = 2;
    double lo = 0.0, hi = 0.0;
    measure->add_option("--kind", kind, "st | plancherel")->required();
    measure->add_option("--p", mp, "prime for the Plancherel measure");
    measure->add_option("--lo", lo, "interval lower end (radians)")->required();
    measure->add_option("--hi", hi, "interval upper end (radians)")->required();

    // intervals ------------------------------------------------------------
    CLI::App* intervals = app.add_subcommand("intervals", "constraint-interval table for n_f = q^n");
    std::string target;
    intervals->add_option("--target", target, "prime power, e.g. 8 or 2^3")->required();

    // forms ----------------------------------------------------------------
    CLI::App* forms = app.add_subcommand("forms", "eigenform records for one weight");
    int form_k = 12;
    forms->add_option("--k", form_k, "weight")->required();

    // census ---------------------------------------------------------------
    CLI::App* census_cmd = app.add_subcommand("census", "per-form p_f / n_f listing");
    int kmax = 300, kmin = 12;
    census_cmd->add_option("--kmax", kmax, "largest weight (default 300)");
    census_cmd->add_option("--kmin", kmin, "smallest weight (default 12)");

    // experiment -----------------------------------------------------------
    CLI::App* experiment = app.add_subcommand("experiment", "one empirical experiment");
    std::string exp_id;
    std::uint64_t exp_p = 2, exp_P = 2, exp_n = 4;
    int exp_bins = 4, exp_kmin = 12, exp_kmax = 300;
    double exp_tol = 0.1;
    experiment->add_option("id", exp_id,
                           "sign-fraction | angle-distribution | average-pf | average-nf | "
                           "positive-pattern | trace-limit")
        ->required();
    experiment->add_option("--p", exp_p, "prime (sign-fraction, angle-distribution)");
    experiment->add_option("--P", exp_P, "prime bound (positive-pattern)");
    experiment->add_option("--n", exp_n, "operator index (trace-limit)");
    experiment->add_option("--bins", exp_bins, "histogram bins");
    experiment->add_option("--kmin", exp_kmin, "smallest weight");
    experiment->add_option("--kmax", exp_kmax, "largest weight");
    experiment->add_option("--tol", exp_tol, "declared tolerance");

    // sieve ----------------------------------------------------------------
    CLI::App* sieve = app.add_subcommand("sieve", "sieve-analytics evaluators");
    sieve->require_subcommand(1);
    CLI::App* skloo = sieve->add_subcommand("kloosterman", "exact S(m,n;c)");
    std::int64_t km = 1, kn = 1;
    std::uint64_t kc = 1;
    skloo->add_option("--m", km)->required();
    skloo->add_option("--n", kn)->required();
    skloo->add_option("--c", kc)->required();
    CLI::App* stail = sieve->add_subcommand("tail", "truncated Petersson tail");
    std::uint64_t tm = 1, tn = 1, tN = 1, tcmax = 0;
    int tk = 12;
    double ttol = 1e-10;
    stail->add_option("--m", tm)->required();
    stail->add_option("--n", tn)->required();
    stail->add_option("--k", tk)->required();
    stail->add_option("--N", tN);
    stail->add_option("--cmax", tcmax, "0 = automatic");
    stail->add_option("--tol", ttol);
    CLI::App* sbounds = sieve->add_subcommand("bounds", "Delta(N,k,M) and the complete sieve bound");
    int bk = 12;
    std::uint64_t bN = 1;
    double bM = 10.0, balpha = 0.6, beps = 0.1;
    sbounds->add_option("--k", bk)->required();
    sbounds->add_option("--N", bN)->required();
    sbounds->add_option("--M", bM)->required();
    sbounds->add_option("--alpha", balpha);
    sbounds->add_option("--eps", beps);
    CLI::App* shsum = sieve->add_subcommand("h-sum", "amplifier H-sum of the weighted sieve");
    std::uint64_t hM = 10, hN = 1;
    double hbeta = 3.0;
    shsum->add_option("--M", hM)->required();
    shsum->add_option("--beta", hbeta)->required();
    shsum->add_option("--N", hN);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*constants) {
            const hs::SeriesResult pf = hs::average_pf(tol);
            const double nf_tol = std::max(tol, 1e-13);
            const hs::SeriesResult nf = hs::average_nf(nf_tol);
            hs::ExperimentReport rp;
            rp.id = "avg-pf";
            rp.params = {{"tol", hs::format_double(tol)},
                         {"terms", std::to_string(pf.terms_used)},
                         {"tail_bound", hs::format_double(pf.tail_bound)}};
            rp.observed = {pf.value};
            rp.expected = {3.674643966011328};
            rp.deviation = std::fabs(pf.value - rp.expected[0]);
            rp.tolerance = std::max(tol, 1e-9);
            rp.verdict = rp.deviation <= rp.tolerance;
            hs::ExperimentReport rn = rp;
            rn.id = "avg-nf";
            rn.params = {{"tol", hs::format_double(nf_tol)},
                         {"terms", std::to_string(nf.terms_used)},
                         {"tail_bound", hs::format_double(nf.tail_bound)}};
            rn.observed = {nf.value};
            rn.expected = {2.9423403000531483};
            rn.deviation = std::fabs(nf.value - rn.expected[0]);
            rn.tolerance = std::max(tol, 1e-9);
            rn.verdict = rn.deviation <= rn.tolerance;
            if (out.json) {
                std::printf("%s\n%s\n", hs::report_to_json(rp).c_str(),
                            hs::report_to_json(rn).c_str());
            } else {
                std::printf("avg_pf = %.15f   (tail bound %.3e, %zu terms)\n", pf.value,
                            pf.tail_bound, pf.terms_used);
                std::printf("avg_nf = %.15f   (tail bound %.3e, %zu terms)\n", nf.value,
                            nf.tail_bound, nf.terms_used);
            }
            return (rp.verdict && rn.verdict) ? 0 : 1;
        }

        if (*measure) {
            const hs::MeasureSpec spec = (kind == "st") ? hs::MeasureSpec::sato_tate()
                                                        : hs::MeasureSpec::plancherel(mp);
            if (kind != "st" && kind != "plancherel")
                throw CLI::ValidationError("--kind", "must be st or plancherel");
            const hs::AngleInterval I(lo, hi);
            const double mass = hs::measure_mass(spec, I);
            const double oracle = hs::measure_mass_quadrature(spec, I, 1e-12);
            hs::ExperimentReport r;
            r.id = "measure-mass";
            r.params = {{"kind", kind},
                        {"p", kind == "st" ? "-" : std::to_string(mp)},
                        {"lo", hs::format_double(lo)},
                        {"hi", hs::format_double(hi)}};
            r.observed = {mass};
            r.expected = {oracle};
            r.deviation = std::fabs(mass - oracle);
            r.tolerance = 1e-10;
            r.verdict = r.deviation <= r.tolerance;
            if (!out.json && !out.csv)
                std::printf("mass = %.15f   (quadrature oracle %.15f)\n", mass, oracle);
            else
                print_report(r, out);
            return report_exit(r);
        }

        if (*intervals) {
            const hs::PrimePower ppw = parse_prime_power(target);
            const hs::ConstraintSystem cs = hs::constraint_system(ppw);
            if (out.csv) std::printf("prime,lo,hi,mass\n");
            std::vector<double> masses;
            for (const auto& [p, I] : cs.constraints) {
                const double mass = hs::measure_mass(hs::MeasureSpec::plancherel(p), I);
                masses.push_back(mass);
                if (out.csv)
                    std::printf("%" PRIu64 ",%s,%s,%s\n", p, hs::format_double(I.lo).c_str(),
                                hs::format_double(I.hi).c_str(), hs::format_double(mass).c_str());
                else if (!out.json)
                    std::printf("p=%-6" PRIu64 " I=[%.6f, %.6f]   mu_p(I)=%.12f\n", p, I.lo, I.hi,
                                mass);
            }
            const double term = hs::nf_term(ppw);
            if (out.json) {
                hs::ExperimentReport r;
                r.id = "intervals";
                r.params = {{"target", std::to_string(ppw.value)}};
                r.observed = masses;
                r.observed.push_back(term);
                r.deviation = 0.0;
                r.tolerance = 0.0;
                r.verdict = true;
                std::printf("%s\n", hs::report_to_json(r).c_str());
            } else if (!out.csv) {
                std::printf("series term m*prod = %.15f\n", term);
            }
            return 0;
        }

        if (*forms) {
            hs::HeckeEngine engine(cfg.prec, cfg.cache_dir);
            const std::vector<hs::EigenformRecord> recs = engine.eigenforms(form_k);
            if (out.csv) std::printf("k,index,lambda2,lambda3,lambda5,p_f,n_f,residual\n");
            else if (!out.json)
                std::printf("%-5s %-5s %-12s %-12s %-12s %-5s %-5s %s\n", "k", "idx", "lambda(2)",
                            "lambda(3)", "lambda(5)", "p_f", "n_f", "residual");
            for (const auto& f : recs) {
                if (out.json) {
                    hs::ExperimentReport r;
                    r.id = "form";
                    r.params = {{"k", std::to_string(f.k)},
                                {"index", std::to_string(f.index)},
                                {"p_f", std::to_string(f.p_f)},
                                {"n_f", std::to_string(f.n_f)}};
                    r.observed = {f.lambda(2), f.lambda(3), f.lambda(5), f.residual};
                    r.deviation = f.residual;
                    r.tolerance = 1e-8;
                    r.verdict = f.residual <= 1e-8;
                    std::printf("%s\n", hs::report_to_json(r).c_str());
                } else if (out.csv) {
                    std::printf("%d,%d,%s,%s,%s,%" PRIu64 ",%" PRIu64 ",%s\n", f.k, f.index,
                                hs::format_double(f.lambda(2)).c_str(),
                                hs::format_double(f.lambda(3)).c_str(),
                                hs::format_double(f.lambda(5)).c_str(), f.p_f, f.n_f,
                                hs::format_double(f.residual).c_str());
                } else {
                    std::printf("%-5d %-5d %-12.8f %-12.8f %-12.8f %-5" PRIu64 " %-5" PRIu64
                                " %.2e\n",
                                f.k, f.index, f.lambda(2), f.lambda(3), f.lambda(5), f.p_f, f.n_f,
                                f.residual);
                }
            }
            return 0;
        }

        if (*census_cmd) {
            hs::HeckeEngine engine(cfg.prec, cfg.cache_dir);
            const hs::SignCensus c =
                hs::build_census(engine, hs::WeightRange{kmin, kmax}, 200, cfg.threads);
            if (out.csv) std::printf("k,index,p_f,n_f\n");
            else if (!out.json) std::printf("%-5s %-5s %-5s %-5s\n", "k", "idx", "p_f", "n_f");
            for (const auto& row : c.rows) {
                if (out.csv)
                    std::printf("%d,%d,%" PRIu64 ",%" PRIu64 "\n", row.k, row.index, row.p_f,
                                row.n_f);
                else if (!out.json)
                    std::printf("%-5d %-5d %-5" PRIu64 " %-5" PRIu64 "\n", row.k, row.index,
                                row.p_f, row.n_f);
            }
            if (out.json) {
                hs::ExperimentReport r;
                r.id = "census";
                r.params = {{"kmin", std::to_string(kmin)},
                            {"kmax", std::to_string(kmax)},
                            {"forms", std::to_string(c.rows.size())}};
                for (const auto& row : c.rows) r.observed.push_back((double)row.n_f);
                r.deviation = 0.0;
                r.tolerance = 0.0;
                r.verdict = true;
                std::printf("%s\n", hs::report_to_json(r).c_str());
            }
            return 0;
        }

        if (*experiment) {
            hs::HeckeEngine engine(cfg.prec, cfg.cache_dir);
            const hs::WeightRange range{exp_kmin, exp_kmax};
            hs::ExperimentReport r;
            if (exp_id == "trace-limit") {
                r = hs::trace_limit_experiment(engine, exp_n, range, exp_tol);
            } else {
                const hs::SignCensus c = hs::build_census(engine, range, 200, cfg.threads);
                if (exp_id == "sign-fraction")
                    r = hs::empirical_sign_fraction(c, exp_p, exp_tol);
                else if (exp_id == "angle-distribution")
                    r = hs::empirical_angle_distribution(c, exp_p, exp_bins, exp_tol);
                else if (exp_id == "average-pf")
                    r = hs::empirical_average(c, hs::FirstNegativeKind::p_f, exp_tol);
                else if (exp_id == "average-nf")
                    r = hs::empirical_average(c, hs::FirstNegativeKind::n_f, exp_tol);
                else if (exp_id == "positive-pattern")
                    r = hs::positive_pattern_count(c, exp_P, exp_tol);
                else {
                    std::fprintf(stderr, "unknown experiment id: %s\n", exp_id.c_str());
                    return 2;
                }
            }
            print_report(r, out);
            return report_exit(r);
        }

        if (*skloo) {
            const hs::KloostermanValue v =
                hs::kloosterman_full(hs::KloostermanQuery{km, kn, kc});
            if (out.json) {
                hs::ExperimentReport r;
                r.id = "kloosterman";
                r.params = {{"m", std::to_string(km)},
                            {"n", std::to_string(kn)},
                            {"c", std::to_string(kc)}};
                r.observed = {v.real_part};
                r.deviation = std::fabs(v.imag_part);
                r.tolerance = 1e-10;
                r.verdict = true;
                std::printf("%s\n", hs::report_to_json(r).c_str());
            } else {
                std::printf("S(%" PRId64 ",%" PRId64 ";%" PRIu64 ") = %.12f\n", km, kn, kc,
                            v.real_part);
            }
            return 0;
        }

        if (*stail) {
            const hs::PeterssonTail t = hs::petersson_tail(tm, tn, tk, tN, tcmax, ttol);
            hs::ExperimentReport r;
            r.id = "petersson-tail";
            r.params = {{"m", std::to_string(tm)},   {"n", std::to_string(tn)},
                        {"k", std::to_string(tk)},   {"N", std::to_string(tN)},
                        {"c_max", std::to_string(t.c_max)}};
            r.observed = {t.value};
            r.expected = {};
            r.deviation = t.truncation_bound;
            r.tolerance = ttol;
            r.verdict = !t.warning;
            if (out.json)
                std::printf("%s\n", hs::report_to_json(r).c_str());
            else
                std::printf("tail = %.15e   (truncation bound %.3e at c_max %" PRIu64 ")\n",
                            t.value, t.truncation_bound, t.c_max);
            return report_exit(r);
        }

        if (*sbounds) {
            const hs::SieveParams params(bk, bN, bM, balpha);
            const double db = hs::delta_bound(params);
            const double cb = hs::complete_sieve_bound(bM, bN, bk, beps);
            if (out.json) {
                hs::ExperimentReport r;
                r.id = "sieve-bounds";
                r.params = {{"k", std::to_string(bk)},
                            {"N", std::to_string(bN)},
                            {"M", hs::format_double(bM)},
                            {"alpha", hs::format_double(balpha)},
                            {"eps", hs::format_double(beps)},
                            {"eta", hs::format_double(params.eta)}};
                r.observed = {db, cb};
                r.deviation = 0.0;
                r.tolerance = 0.0;
                r.verdict = true;
                std::printf("%s\n", hs::report_to_json(r).c_str());
            } else {
                std::printf("eta = %.6f   constraint %s\n", params.eta,
                            params.constraint_ok ? "ok" : "VIOLATED");
                std::printf("Delta(N,k,M)        = %.12f\n", db);
                std::printf("complete sieve bound = %.12f\n", cb);
            }
            return 0;
        }

        if (*shsum) {
            const double H = hs::sieve_H_amplifier(hM, hbeta, hN);
            if (out.json) {
                hs::ExperimentReport r;
                r.id = "h-sum";
                r.params = {{"M", std::to_string(hM)},
                            {"beta", hs::format_double(hbeta)},
                            {"N", std::to_string(hN)}};
                r.observed = {H};
                r.deviation = 0.0;
                r.tolerance = 0.0;
                r.verdict = true;
                std::printf("%s\n", hs::report_to_json(r).c_str());
            } else {
                std::printf("H = %.12f\n", H);
            }
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
