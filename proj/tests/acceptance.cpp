// Acceptance suite: one pass/fail line per criterion, every tolerance pinned
// in code. Exit status is the number of failed criteria.

#include "qbus/validate.hpp"

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace qbus;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int index, const char* title, const Outcome& o) {
    std::printf("%s  criterion %2d: %s — %s\n", o.pass ? "PASS" : "FAIL", index, title,
                o.detail.c_str());
    if (!o.pass) ++failures;
}

template <typename F>
double timed(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

}  // namespace

int main() {
    const ModelParams defaults{};
    const EffectiveForm rwa = EffectiveForm::rwa();

    // 1 + 2: defining condition and generator agreement, defaults + 20 random
    {
        double worst_cond = 0.0, worst_gap = 0.0;
        const double secs = timed([&] {
            auto sets = random_param_sets(20, 555);
            sets.insert(sets.begin(), defaults.with_cutoff(16));
            for (const auto& p : sets) {
                const auto c = measure_condition(p);
                worst_cond = std::max({worst_cond, c.generic_residual, c.model_residual});
                worst_gap = std::max(worst_gap, c.s_gap);
            }
        });
        report(1, "defining condition ||HI+[H0,S]||/||HI|| < 1e-8, runtime < 5 s",
               {worst_cond < 1e-8 && secs < 5.0,
                fmt("max residual %.3g, %.2f s", worst_cond, secs)});
        report(2, "generic vs closed-form generator entrywise within 1e-8",
               {worst_gap < 1e-8, fmt("max gap %.3g", worst_gap)});
    }

    // 3: second-order accuracy slope band
    {
        const auto s = measure_scaling(defaults);
        report(3, "interior eigenvalue error log-log slope within 3 +- 0.3",
               {std::abs(s.slope - 3.0) < 0.3,
                fmt("slope %.3f (errors %.3g, %.3g, %.3g at g = 0.01, 0.03, 0.1)", s.slope,
                    s.errors[0], s.errors[1], s.errors[2])});
    }

    // 4: photon-number conservation, structural zero
    {
        const double c = measure_photon_conservation(defaults);
        report(4, "[H_eff_rwa, a'a] identically zero", {c == 0.0, fmt("max |[.,.]| = %.3g", c)});
    }

    // 5: closed-form sector dynamics vs the 4x4 matrix-exponential oracle
    {
        const auto d = measure_closed_form_dynamics(defaults, rwa);
        report(5, "|c1|^2, |c2|^2 match the matrix-exponential oracle within 1e-10",
               {d.max_mod2_error < 1e-10,
                fmt("max |.|^2 gap %.3g (amplitude gap %.3g)", d.max_mod2_error,
                    d.max_amp_error)});
    }

    // 6: fidelity decay ordering, both readings of m, exact F(0)
    {
        const auto mean = trend_fidelity_vs_m(defaults, rwa, MInterpretation::Mean,
                                              SweepMode::Auto);
        const auto amp = trend_fidelity_vs_m(defaults, rwa, MInterpretation::Amplitude,
                                             SweepMode::Auto);
        const auto prep = CavityPrep::coherent(std::sqrt(0.2));
        const bool f0_exact =
            fidelity_vs_target(0, prep, Vector4c::Unit(0), 0.0,
                               defaults.with_cutoff(min_cutoff(prep)), rwa) == 1.0;
        report(6, "max-over-t fidelity non-increasing in m, F(t=0) = 1 exactly",
               {mean.ordered && amp.ordered && f0_exact,
                fmt("mean-reading maxima %.12g/%.12g/%.12g, F(0)==1 %s", mean.values[0],
                    mean.values[1], mean.values[2], f0_exact ? "yes" : "no")});
    }

    // 7: imperfect-gate bound and ordering of the sector overlaps
    {
        const auto tr = trend_bell_overlap(defaults, rwa, SweepMode::Auto);
        const double worst = std::max({tr.values[0], tr.values[1], tr.values[2]});
        report(7, "max f_m < 1 - 1e-6 for m in {0,10,20}, non-increasing in m",
               {tr.ordered && worst < 1.0 - 1e-6,
                fmt("maxima %.9g/%.9g/%.9g", tr.values[0], tr.values[1], tr.values[2])});
    }

    // 8: protected-subspace protocol
    {
        const auto d = measure_dfs(defaults, rwa);
        const double j = block_terms(0, defaults, rwa).xx_coupling;
        const auto dfs = dfs_protocol(defaults, rwa,
                                      j < 0 ? BellTarget::PsiPlusI : BellTarget::PsiMinusI);
        report(8,
               "concurrence 1 at t*, preparation-independent (spread < 1e-10), purity 1 "
               "throughout",
               {d.max_concurrence_defect < 1e-10 && d.concurrence_spread < 1e-10 &&
                    1.0 - d.min_purity < 1e-10 && d.scan_time_offset < 2e-3,
                fmt("defect %.3g, spread %.3g, purity defect %.3g; t* = %.6g vs published %.6g "
                    "(ratio %.6g, documented discrepancy)",
                    d.max_concurrence_defect, d.concurrence_spread, 1.0 - d.min_purity,
                    dfs.t_star, dfs.paper_time, dfs.ratio)});
    }

    // 9: concurrence oracle
    {
        const auto c = measure_concurrence_oracle(1000, 314159);
        report(9, "C = 2|ad-bc| within 1e-10 (1000 pure states); Bell -> 1; product -> 0",
               {c.max_pure_error < 1e-10 && c.max_bell_defect < 1e-10 &&
                    c.max_product_value < 1e-10,
                fmt("pure %.3g, Bell %.3g, product %.3g", c.max_pure_error, c.max_bell_defect,
                    c.max_product_value)});
    }

    // 10: concurrence trends and the cold-thermal limit
    {
        const auto ca = trend_concurrence_alpha(defaults, rwa, SweepMode::Auto);
        const auto ct = trend_concurrence_thermal(defaults, rwa, SweepMode::Auto);
        const double gap = measure_thermal_vacuum_limit(defaults, rwa, SweepMode::Auto);
        const auto ca_printed =
            trend_concurrence_alpha(defaults, EffectiveForm::printed(), SweepMode::Auto);
        report(10,
               "max concurrence non-increasing in alpha, non-decreasing in betaE; betaE=50 "
               "matches the vacuum curve within 1e-8",
               {ca.ordered && ct.ordered && gap < 1e-8,
                fmt("alpha maxima %.6g/%.6g/%.6g, betaE maxima %.6g/%.6g/%.6g, cold gap %.3g "
                    "(printed coefficient set would order alpha %s)",
                    ca.values[0], ca.values[1], ca.values[2], ct.values[0], ct.values[1],
                    ct.values[2], gap, ca_printed.ordered ? "correctly" : "incorrectly too")});
    }

    // 11: branch ensembles against the full-space evolution
    {
        const double worst = measure_ensemble_vs_fullspace(defaults, rwa);
        report(11, "ensemble reduced state equals full-space partial trace within 1e-9",
               {worst < 1e-9, fmt("max gap %.3g", worst)});
    }

    // 12: the validation command: runtime and induced failure
    {
        ValidationReport normal, mutated;
        const double secs = timed([&] { normal = run_validation(defaults.with_cutoff(24)); });
        ValidateOptions mut;
        mut.mutate_flip_xx_sign = true;
        mutated = run_validation(defaults.with_cutoff(24), mut);
        const CheckResult* c5_normal = normal.find("c05_closed_form_dynamics");
        const CheckResult* c5_mutated = mutated.find("c05_closed_form_dynamics");
        const bool ok = secs < 120.0 && c5_normal && c5_normal->pass && c5_mutated &&
                        !c5_mutated->pass && !mutated.all_passed;
        report(12, "validate completes < 120 s; flipped coupling sign fails its check 5",
               {ok, fmt("%.1f s; mutated c05 %s, mutated all_passed %s", secs,
                        c5_mutated && !c5_mutated->pass ? "fails as required" : "DID NOT FAIL",
                        mutated.all_passed ? "true" : "false")});
    }

    std::printf("%d of 12 criteria passed\n", 12 - failures);
    return failures;
}
