#include "qbus/validate.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

namespace qbus {

namespace {

std::vector<int> interior_indices(int cutoff, int guard) {
    std::vector<int> idx;
    for (int q = 0; q < 4; ++q)
        for (int n = 0; n < cutoff - guard; ++n) idx.push_back(q * cutoff + n);
    return idx;
}

double max_abs_on(const Matrix& m, const std::vector<int>& idx) {
    double best = 0.0;
    for (int i : idx)
        for (int j : idx) best = std::max(best, std::abs(m(i, j)));
    return best;
}

Vector4c unit4(int k) { return Vector4c::Unit(k); }

}  // namespace

std::vector<ModelParams> random_param_sets(int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<ModelParams> out;
    while (int(out.size()) < count) {
        ModelParams p;
        p.omega = 0.5 + 1.5 * u01(rng);
        p.omega_j = (u01(rng) - 0.5) * 0.9 * p.omega;
        p.g = (0.005 + 0.045 * u01(rng)) * p.omega;
        p.cutoff = 16;
        if (std::abs(p.omega - 2.0 * std::abs(p.omega_j)) < 0.05 * p.omega) continue;
        try {
            check_params(p);
        } catch (const ResonanceError&) {
            continue;
        }
        out.push_back(p);
    }
    return out;
}

ConditionResult measure_condition(const ModelParams& p) {
    auto [h0, hi] = build_model(p);
    const Operator s_gen = generic_s_operator(h0, hi);
    const Operator s_mod = model_s_operator(p);
    const auto idx = interior_indices(p.cutoff, 2);
    const double hi_scale = max_abs(hi.mat);

    ConditionResult r;
    r.generic_residual = max_abs_on(hi.mat + commutator(h0.mat, s_gen.mat), idx) / hi_scale;
    r.model_residual = max_abs_on(hi.mat + commutator(h0.mat, s_mod.mat), idx) / hi_scale;
    r.s_gap = max_abs_on(s_mod.mat - s_gen.mat, idx);
    return r;
}

ScalingResult measure_scaling(const ModelParams& base) {
    const int cutoff = 16, guard = 4;
    ScalingResult res;
    for (double rel : {0.01, 0.03, 0.1}) {
        ModelParams p = base;
        p.cutoff = cutoff;
        p.g = rel * p.omega;
        auto [h0, hi] = build_model(p);
        const Operator s = model_s_operator(p);
        const Matrix heff = h0.mat + 0.5 * commutator(hi.mat, s.mat);
        Eigen::SelfAdjointEigenSolver<Matrix> ee(heff), ex(h0.mat + hi.mat);

        const auto tail_weight = [&](const Matrix& vecs, int k) {
            double w = 0.0;
            for (int q = 0; q < 4; ++q)
                for (int n = cutoff - guard; n < cutoff; ++n)
                    w += std::norm(vecs(q * cutoff + n, k));
            return w;
        };
        double maxerr = 0.0;
        for (int k = 0; k < 4 * cutoff; ++k) {
            if (tail_weight(ee.eigenvectors(), k) > 1e-8) continue;
            int best = 0;
            double best_ov = -1.0;
            for (int j = 0; j < 4 * cutoff; ++j) {
                const double ov = std::norm(ee.eigenvectors().col(k).dot(ex.eigenvectors().col(j)));
                if (ov > best_ov) { best_ov = ov; best = j; }
            }
            if (tail_weight(ex.eigenvectors(), best) > 1e-8) continue;
            maxerr = std::max(maxerr, std::abs(ee.eigenvalues()(k) - ex.eigenvalues()(best)));
        }
        res.couplings.push_back(p.g);
        res.errors.push_back(maxerr);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(res.couplings.size());
    for (std::size_t i = 0; i < res.couplings.size(); ++i) {
        const double x = std::log(res.couplings[i]), y = std::log(res.errors[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    res.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return res;
}

double measure_photon_conservation(const ModelParams& p) {
    const Operator heff = effective_model_hamiltonian(p, EffectiveForm::rwa());
    const Matrix n_full =
        tensor(identity_op(SpaceTag::two_qubits()), number_operator(p.cutoff)).mat;
    return max_abs(commutator(heff.mat, n_full));
}

ClosedFormDynamicsResult measure_closed_form_dynamics(const ModelParams& p,
                                                      const EffectiveForm& closed) {
    const EffectiveForm oracle_form{Variant::Rwa, CoefficientSet::Derived, false};
    const auto grid = linspace(0.0, 200.0, 2001);
    ClosedFormDynamicsResult r;
    for (int n : {0, 1, 5}) {
        const ModelParams pn = p.cutoff > n ? p : p.with_cutoff(n + 1);
        const ExactPropagator prop(block_hamiltonian(n, pn, oracle_form));
        for (double t : grid) {
            const Vector psi = prop.evolve(Vector(unit4(0)), t);
            const auto bc = block_coefficients(n, t, pn, closed);
            r.max_amp_error = std::max({r.max_amp_error, std::abs(psi(0) - bc.amp00()),
                                        std::abs(psi(3) - bc.amp11()), std::abs(psi(1)),
                                        std::abs(psi(2))});
            r.max_mod2_error = std::max({r.max_mod2_error,
                                         std::abs(std::norm(psi(0)) - std::norm(bc.c2)),
                                         std::abs(std::norm(psi(3)) - std::norm(bc.c1))});
            const Vector psi_dfs = prop.evolve(Vector(unit4(1)), t);
            const Vector4c closed_dfs = evolve_block(unit4(1), n, t, pn, closed);
            for (int k = 0; k < 4; ++k)
                r.max_amp_error = std::max(r.max_amp_error, std::abs(psi_dfs(k) - closed_dfs(k)));
        }
    }
    return r;
}

double measure_ensemble_vs_fullspace(const ModelParams& p, const EffectiveForm& form) {
    const std::vector<CavityPrep> preps = {
        CavityPrep::fock(0),      CavityPrep::fock(1), CavityPrep::fock(2),
        CavityPrep::fock(3),      CavityPrep::coherent(0.5), CavityPrep::coherent(1.1),
        CavityPrep::thermal(2.0),
    };
    const std::vector<Vector4c> inits = {unit4(0), unit4(1), bell_state(BellTarget::PhiPlus)};
    const std::vector<double> times = {0.0, 5.0, 20.0, 100.0};

    double worst = 0.0;
    for (const auto& prep : preps) {
        const int cutoff = std::max(min_cutoff(prep), 8);
        const ModelParams pn = p.with_cutoff(cutoff);
        const ExactPropagator prop(effective_model_hamiltonian(pn, form));
        for (const auto& init : inits) {
            QuantumState full0 = [&] {
                if (prep.kind == CavityPrep::Kind::Thermal) {
                    const Matrix cav = prepare_cavity(prep, cutoff).rho;
                    const Matrix q = Matrix(init * init.adjoint());
                    Matrix rho = Eigen::kroneckerProduct(q, cav);
                    return QuantumState::density(SpaceTag::two_qubits_fock(cutoff), std::move(rho));
                }
                const Vector cav = prep_amplitudes(prep, cutoff);
                Vector v(4 * cutoff);
                for (int q = 0; q < 4; ++q)
                    for (int n = 0; n < cutoff; ++n) v(q * cutoff + n) = init(q) * cav(n);
                return QuantumState::pure(SpaceTag::two_qubits_fock(cutoff), std::move(v));
            }();
            for (double t : times) {
                const Matrix via_full = partial_trace_cavity(prop.evolve(full0, t)).rho;
                const Matrix via_ens = qubit_rdm(evolve_effective(prep, init, t, pn, form));
                worst = std::max(worst, max_abs(via_full - via_ens));
            }
        }
    }
    return worst;
}

DfsCheckResult measure_dfs(const ModelParams& p, const EffectiveForm& form) {
    const double j = block_terms(0, p, form).xx_coupling;
    const BellTarget first = j < 0 ? BellTarget::PsiPlusI : BellTarget::PsiMinusI;
    const DfsResult dfs = dfs_protocol(p, form, first);

    const std::vector<CavityPrep> preps = {CavityPrep::fock(0), CavityPrep::fock(5),
                                           CavityPrep::coherent(1.1), CavityPrep::thermal(2.0)};
    DfsCheckResult r;
    double cmin = 2.0, cmax = -1.0;
    for (const auto& prep : preps) {
        const ModelParams pn = p.with_cutoff(std::max(min_cutoff(prep), 6));
        const double c =
            concurrence(qubit_rdm(evolve_effective(prep, unit4(1), dfs.t_star, pn, form)));
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
        r.max_concurrence_defect = std::max(r.max_concurrence_defect, std::abs(1.0 - c));
        for (double t : linspace(0.0, 2.0 * dfs.t_star, 201)) {
            const double pu = purity(qubit_rdm(evolve_effective(prep, unit4(1), t, pn, form)));
            r.min_purity = std::min(r.min_purity, pu);
        }
    }
    r.concurrence_spread = cmax - cmin;

    // dense scan confirming t* is the first maximum
    const ModelParams pv = p.with_cutoff(6);
    const auto grid = linspace(0.0, 1.2 * dfs.t_star, 1201);  // step = 1e-3 t*
    double best_c = -1.0, best_t = 0.0;
    for (double t : grid) {
        const double c = concurrence(qubit_rdm(evolve_effective(CavityPrep::fock(0), unit4(1), t,
                                                                pv, form)));
        if (c > best_c) { best_c = c; best_t = t; }
    }
    r.scan_time_offset = std::abs(best_t - dfs.t_star) / dfs.t_star;
    return r;
}

namespace {

double max_over_grid(const std::vector<double>& grid, const PointFn& fn, SweepMode sweep) {
    const auto vals = sweep_values(grid, fn, sweep);
    return *std::max_element(vals.begin(), vals.end());
}

bool non_increasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[i - 1]) return false;
    return true;
}

bool non_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] < v[i - 1]) return false;
    return true;
}

}  // namespace

TrendResult trend_fidelity_vs_m(const ModelParams& p, const EffectiveForm& form,
                                MInterpretation m_is, SweepMode sweep) {
    const auto grid = linspace(0.0, 200.0, 1001);
    TrendResult r;
    for (double m : {0.2, 0.4, 0.7}) {
        const auto prep = CavityPrep::coherent(alpha_from_m(m, m_is));
        const ModelParams pn = p.with_cutoff(min_cutoff(prep));
        r.values.push_back(max_over_grid(
            grid, [&](double t) { return fidelity_vs_target(0, prep, unit4(0), t, pn, form); },
            sweep));
    }
    r.ordered = non_increasing(r.values);
    return r;
}

TrendResult trend_bell_overlap(const ModelParams& p, const EffectiveForm& form, SweepMode sweep) {
    const auto grid = linspace(0.0, 200.0, 2001);
    TrendResult r;
    for (int m : {0, 10, 20}) {
        const ModelParams pn = p.with_cutoff(std::max(p.cutoff, m + 2));
        r.values.push_back(max_over_grid(
            grid, [&](double t) { return bell_overlap_fock(m, t, pn, form); }, sweep));
    }
    r.ordered = non_increasing(r.values);
    return r;
}

TrendResult trend_concurrence_alpha(const ModelParams& p, const EffectiveForm& form,
                                    SweepMode sweep) {
    const auto grid = linspace(0.0, 200.0, 1001);
    TrendResult r;
    for (double a : {0.1, 1.1, 3.0}) {
        const auto prep = CavityPrep::coherent(a);
        const ModelParams pn = p.with_cutoff(min_cutoff(prep));
        r.values.push_back(max_over_grid(
            grid,
            [&](double t) {
                return concurrence_coherent(a, t, pn, form, ConcurrenceMode::Wootters);
            },
            sweep));
    }
    r.ordered = non_increasing(r.values);
    return r;
}

TrendResult trend_concurrence_thermal(const ModelParams& p, const EffectiveForm& form,
                                      SweepMode sweep) {
    const auto grid = linspace(0.0, 200.0, 1001);
    TrendResult r;
    for (double b : {0.7, 2.0, 6.0}) {
        const auto prep = CavityPrep::thermal(b);
        const ModelParams pn = p.with_cutoff(min_cutoff(prep));
        r.values.push_back(max_over_grid(
            grid,
            [&](double t) {
                return concurrence_thermal(b, t, pn, form, ConcurrenceMode::Wootters);
            },
            sweep));
    }
    r.ordered = non_decreasing(r.values);
    return r;
}

double measure_thermal_vacuum_limit(const ModelParams& p, const EffectiveForm& form,
                                    SweepMode sweep) {
    const auto grid = linspace(0.0, 200.0, 1001);
    const ModelParams pt = p.with_cutoff(min_cutoff(CavityPrep::thermal(50.0)));
    const ModelParams pf = p.with_cutoff(4);
    const auto gaps = sweep_values(
        grid,
        [&](double t) {
            const double ct = concurrence_thermal(50.0, t, pt, form, ConcurrenceMode::Wootters);
            const double c0 = concurrence(
                qubit_rdm(evolve_effective(CavityPrep::fock(0), unit4(0), t, pf, form)));
            return std::abs(ct - c0);
        },
        sweep);
    return *std::max_element(gaps.begin(), gaps.end());
}

ConcurrenceOracleResult measure_concurrence_oracle(int trials, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto random_pure = [&](int dim) {
        Vector v(dim);
        for (int i = 0; i < dim; ++i) v(i) = complexd(gauss(rng), gauss(rng));
        v.normalize();
        return v;
    };

    ConcurrenceOracleResult r;
    for (int k = 0; k < trials; ++k) {
        const Vector v = random_pure(4);
        const double exact = 2.0 * std::abs(v(0) * v(3) - v(1) * v(2));
        const double got = concurrence(Matrix(v * v.adjoint()));
        r.max_pure_error = std::max(r.max_pure_error, std::abs(got - exact));
    }
    for (BellTarget b : {BellTarget::PhiPlus, BellTarget::PsiMinusI, BellTarget::PsiPlusI}) {
        const Vector4c v = bell_state(b);
        r.max_bell_defect =
            std::max(r.max_bell_defect, std::abs(1.0 - concurrence(Matrix(v * v.adjoint()))));
    }
    for (int k = 0; k < 200; ++k) {
        const Vector a = random_pure(2), b = random_pure(2);
        Vector v(4);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) v(2 * i + j) = a(i) * b(j);
        r.max_product_value =
            std::max(r.max_product_value, concurrence(Matrix(v * v.adjoint())));
    }
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        Matrix rho = Matrix::Zero(4, 4);
        double wsum = 0.0;
        for (int c = 0; c < 4; ++c) {
            const Vector v = random_pure(4);
            const double w = u01(rng) + 1e-3;
            rho += w * (v * v.adjoint());
            wsum += w;
        }
        rho /= wsum;
        r.max_route_gap = std::max(
            r.max_route_gap, std::abs(concurrence(rho) - concurrence_r_route(rho)));
    }
    return r;
}

EffectiveVsTrueResult measure_effective_vs_true(const ModelParams& p) {
    const auto run = [&](double g) {
        ModelParams pg = p;
        pg.g = g;
        pg.cutoff = 12;
        const double j = std::abs(block_terms(0, pg, EffectiveForm::rwa()).xx_coupling);
        const double period = std::numbers::pi / (2.0 * j);
        auto [h0, hi] = build_model(pg);
        const ExactPropagator true_prop({h0.space, h0.mat + hi.mat});
        const ExactPropagator eff_prop(effective_model_hamiltonian(pg, EffectiveForm::rwa()));

        Vector psi0 = Vector::Zero(4 * pg.cutoff);
        psi0(0) = 1.0;  // |00> (x) |0>
        const QuantumState s0 = QuantumState::pure(SpaceTag::two_qubits_fock(pg.cutoff), psi0);
        double worst = 0.0;
        for (double t : linspace(0.0, period, 201)) {
            const Matrix r_true = partial_trace_cavity(true_prop.evolve(s0, t)).rho;
            const Matrix r_eff = partial_trace_cavity(eff_prop.evolve(s0, t)).rho;
            worst = std::max(worst, trace_distance(r_true, r_eff));
        }
        return worst;
    };
    EffectiveVsTrueResult r;
    r.max_trace_distance = run(p.g);
    r.max_trace_distance_half_g = run(0.5 * p.g);
    return r;
}

TrivialValuesResult measure_trivial_values(const ModelParams& p, const EffectiveForm& form) {
    TrivialValuesResult r;
    const auto prep = CavityPrep::coherent(1.1);
    const ModelParams pn = p.with_cutoff(min_cutoff(prep));
    r.fidelity_t0_exact = fidelity_vs_target(0, prep, unit4(0), 0.0, pn, form) == 1.0;
    r.overlap_t0_exact = bell_overlap_fock(0, 0.0, pn, form) == 0.5 &&
                         bell_overlap_coherent(complexd(1.1, 0.0), 0.0, pn, form) == 0.5;
    r.concurrence_t0 = concurrence_coherent(complexd(1.1, 0.0), 0.0, pn, form,
                                            ConcurrenceMode::Wootters);
    const Vector4c bell = bell_state(BellTarget::PhiPlus);
    r.bell_concurrence_defect = std::abs(1.0 - concurrence(Matrix(bell * bell.adjoint())));

    ModelParams p0 = pn;
    p0.g = 0.0;
    for (double t : {0.0, 7.0, 31.0, 150.0}) {
        r.g0_concurrence_max = std::max(
            r.g0_concurrence_max,
            concurrence_coherent(complexd(1.1, 0.0), t, p0, form, ConcurrenceMode::Wootters));
        r.g0_fidelity_defect = std::max(
            r.g0_fidelity_defect,
            std::abs(1.0 - fidelity_vs_target(0, prep, unit4(0), t, p0, form)));
    }
    return r;
}

namespace {

CheckResult make_check(std::string id, std::string description, double measured,
                       double threshold, std::string cmp, bool pass, std::string detail = {}) {
    return {std::move(id), std::move(description), measured, threshold, std::move(cmp), pass,
            std::move(detail)};
}

std::string vec_str(const std::vector<double>& v) {
    std::string s = "[";
    char buf[32];
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.6g", v[i]);
        s += buf;
        if (i + 1 < v.size()) s += ", ";
    }
    return s + "]";
}

}  // namespace

ValidationReport run_validation(const ModelParams& p, const ValidateOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    ValidationReport rep;
    rep.params = p;
    const EffectiveForm form = EffectiveForm::rwa();
    EffectiveForm closed = form;
    closed.flip_xx_sign = opts.mutate_flip_xx_sign;

    {
        double worst_gen = 0.0, worst_mod = 0.0, worst_gap = 0.0;
        auto sets = random_param_sets(20, opts.seed);
        sets.insert(sets.begin(), p.with_cutoff(16));
        for (const auto& ps : sets) {
            const auto c = measure_condition(ps);
            worst_gen = std::max(worst_gen, c.generic_residual);
            worst_mod = std::max(worst_mod, c.model_residual);
            worst_gap = std::max(worst_gap, c.s_gap);
        }
        rep.checks.push_back(make_check(
            "c01_defining_condition",
            "||HI + [H0,S]||/||HI|| on interior sectors, generic and closed-form generator, "
            "defaults plus 20 random parameter sets",
            std::max(worst_gen, worst_mod), 1e-8, "<", std::max(worst_gen, worst_mod) < 1e-8));
        rep.checks.push_back(make_check(
            "c02_generator_agreement",
            "max entrywise |S_model - S_generic| on interior sectors, same parameter sets",
            worst_gap, 1e-8, "<", worst_gap < 1e-8));
    }
    {
        const auto s = measure_scaling(p);
        rep.checks.push_back(make_check(
            "c03_eigenvalue_scaling",
            "log-log slope of max interior eigenvalue error of H_eff vs exact diagonalization "
            "over g/omega in {0.01, 0.03, 0.1}",
            s.slope, 0.3, "|slope-3|<", std::abs(s.slope - 3.0) < 0.3,
            "errors=" + vec_str(s.errors)));
    }
    {
        const double c = measure_photon_conservation(p);
        rep.checks.push_back(make_check("c04_photon_conservation",
                                        "max |[H_eff_rwa, a'a]| (structural zero)", c, 0.0, "==",
                                        c == 0.0));
    }
    {
        const auto d = measure_closed_form_dynamics(p, closed);
        rep.checks.push_back(make_check(
            "c05_closed_form_dynamics",
            "closed-form sector amplitudes vs 4x4 matrix-exponential oracle, sectors {0,1,5}, "
            "t in [0,200]",
            d.max_amp_error, 1e-10, "<", d.max_amp_error < 1e-10,
            "mod2_error=" + std::to_string(d.max_mod2_error)));
    }
    {
        const double worst = measure_ensemble_vs_fullspace(p, form);
        rep.checks.push_back(make_check(
            "c06_ensemble_vs_fullspace",
            "branch-ensemble reduced state vs partial trace of full-space effective evolution",
            worst, 1e-9, "<", worst < 1e-9));
    }
    {
        const auto d = measure_dfs(p, form);
        rep.checks.push_back(make_check(
            "c07_dfs_purity", "reduced-state purity inside span{|01>,|10>} for all preparations",
            1.0 - d.min_purity, 1e-10, "<", 1.0 - d.min_purity < 1e-10));
        rep.checks.push_back(make_check(
            "c08_dfs_concurrence",
            "concurrence 1 at t*, preparation-independent, t* confirmed by dense scan",
            std::max(d.max_concurrence_defect, d.concurrence_spread), 1e-10, "<",
            d.max_concurrence_defect < 1e-10 && d.concurrence_spread < 1e-10 &&
                d.scan_time_offset < 2e-3,
            "scan_offset=" + std::to_string(d.scan_time_offset)));
    }
    {
        const auto tv = measure_trivial_values(p, form);
        const bool pass = tv.fidelity_t0_exact && tv.overlap_t0_exact &&
                          tv.concurrence_t0 < 1e-12 && tv.bell_concurrence_defect < 1e-12 &&
                          tv.g0_concurrence_max < 1e-12 && tv.g0_fidelity_defect < 1e-12;
        rep.checks.push_back(make_check(
            "c09_metric_trivial_values",
            "F(0)=1 and f(0)=1/2 exact; C(0)=0; Bell concurrence 1; g=0 keeps F=1, C=0",
            std::max({tv.concurrence_t0, tv.bell_concurrence_defect, tv.g0_concurrence_max,
                      tv.g0_fidelity_defect}),
            1e-12, "<", pass));
    }
    {
        const auto ta = trend_fidelity_vs_m(p, form, MInterpretation::Mean, opts.sweep);
        const auto tb = trend_fidelity_vs_m(p, form, MInterpretation::Amplitude, opts.sweep);
        rep.checks.push_back(make_check(
            "c10_trend_fidelity",
            "max-over-t fidelity non-increasing across m in {0.2,0.4,0.7}, both readings of m",
            0.0, 0.0, "trend", ta.ordered && tb.ordered,
            "mean=" + vec_str(ta.values) + " amplitude=" + vec_str(tb.values)));
    }
    {
        const auto tr = trend_bell_overlap(p, form, opts.sweep);
        const double worst = *std::max_element(tr.values.begin(), tr.values.end());
        rep.checks.push_back(make_check(
            "c11_trend_bell_overlap",
            "max f_m below 1 - 1e-6 for m in {0,10,20} and non-increasing in m", worst,
            1.0 - 1e-6, "<", tr.ordered && worst < 1.0 - 1e-6, "values=" + vec_str(tr.values)));
    }
    {
        const auto ca = trend_concurrence_alpha(p, form, opts.sweep);
        const auto ct = trend_concurrence_thermal(p, form, opts.sweep);
        rep.checks.push_back(make_check(
            "c12_trend_concurrence",
            "max concurrence non-increasing over alpha {0.1,1.1,3}, non-decreasing over "
            "betaE {0.7,2,6}",
            0.0, 0.0, "trend", ca.ordered && ct.ordered,
            "alpha=" + vec_str(ca.values) + " betaE=" + vec_str(ct.values)));
    }
    {
        const double gap = measure_thermal_vacuum_limit(p, form, opts.sweep);
        rep.checks.push_back(make_check("c13_thermal_vacuum_limit",
                                        "betaE=50 thermal concurrence equals the vacuum curve",
                                        gap, 1e-8, "<", gap < 1e-8));
    }
    {
        const auto c = measure_concurrence_oracle(1000, opts.seed + 1);
        const bool pass = c.max_pure_error < 1e-10 && c.max_bell_defect < 1e-10 &&
                          c.max_product_value < 1e-10 && c.max_route_gap < 1e-6;
        rep.checks.push_back(make_check(
            "c14_concurrence_oracle",
            "pipeline vs 2|ad-bc| on random pure states; Bell -> 1; product -> 0; "
            "route agreement on mixed states",
            std::max({c.max_pure_error, c.max_bell_defect, c.max_product_value}), 1e-10, "<",
            pass, "route_gap=" + std::to_string(c.max_route_gap)));
    }
    {
        const auto e = measure_effective_vs_true(p);
        const double bound = 5.0 * p.g / p.omega;
        const bool pass = e.max_trace_distance < bound &&
                          e.max_trace_distance_half_g < e.max_trace_distance;
        rep.checks.push_back(make_check(
            "c15_effective_vs_true",
            "trace distance between effective and true reduced dynamics over one entangling "
            "period; halving g reduces it",
            e.max_trace_distance, bound, "<", pass,
            "half_g=" + std::to_string(e.max_trace_distance_half_g)));
    }

    // ---- informational discrepancies: derived vs published -----------------
    {
        ordered_json d;
        const auto dd = delta_coefficients(p);
        const double printed_mag = 0.5 * p.g * p.g * dd.plus;
        const double derived_xx = block_terms(0, p, EffectiveForm::rwa()).xx_coupling;
        d["coupling"] = {{"derived", derived_xx},
                         {"printed_full_form", -printed_mag},
                         {"printed_rwa_form", printed_mag},
                         {"ratio_vs_printed_magnitude", derived_xx / printed_mag}};
        d["stark_shift_per_photon"] = {
            {"derived", -p.g * p.g * dd.minus},
            {"printed", p.g * p.g * dd.minus},
        };
        const double j = block_terms(0, p, form).xx_coupling;
        const auto dfs = dfs_protocol(p, form, j < 0 ? BellTarget::PsiPlusI
                                                     : BellTarget::PsiMinusI);
        d["dfs_time"] = {{"t_star", dfs.t_star},
                         {"published_formula", dfs.paper_time},
                         {"ratio", dfs.ratio}};

        const ModelParams pc = p.with_cutoff(min_cutoff(CavityPrep::coherent(1.1)));
        double gap_std = 0.0, gap_lit = 0.0;
        for (double t : linspace(0.0, 200.0, 401)) {
            gap_std = std::max(gap_std,
                               std::abs(concurrence_coherent(1.1, t, pc, form,
                                                             ConcurrenceMode::Wootters) -
                                        concurrence_coherent(1.1, t, pc, form,
                                                             ConcurrenceMode::ClosedForm)));
            gap_lit = std::max(
                gap_lit, std::abs(concurrence_coherent(1.1, t, pc, form,
                                                       ConcurrenceMode::Wootters,
                                                       WeightConvention::PaperLiteral) -
                                  concurrence_coherent(1.1, t, pc, form,
                                                       ConcurrenceMode::ClosedForm,
                                                       WeightConvention::PaperLiteral)));
        }
        const ModelParams pth = p.with_cutoff(min_cutoff(CavityPrep::thermal(2.0)));
        double gap_th = 0.0;
        for (double t : linspace(0.0, 200.0, 401))
            gap_th = std::max(gap_th,
                              std::abs(concurrence_thermal(2.0, t, pth, form,
                                                           ConcurrenceMode::Wootters) -
                                       concurrence_thermal(2.0, t, pth, form,
                                                           ConcurrenceMode::ClosedForm)));
        d["closed_form_concurrence_max_gap"] = {{"coherent_standard_weights", gap_std},
                                                {"coherent_literal_weights", gap_lit},
                                                {"thermal", gap_th}};

        // the published figures' ordering of the concurrence maxima holds
        // under the printed coefficient set but inverts under the derived
        // one: the corrected photon-dependent shift makes the sector mixing
        // angle grow with n, which outweighs branch dephasing here
        {
            const EffectiveForm printed = EffectiveForm::printed();
            const auto ca_d = trend_concurrence_alpha(p, form, opts.sweep);
            const auto ca_p = trend_concurrence_alpha(p, printed, opts.sweep);
            const auto ct_d = trend_concurrence_thermal(p, form, opts.sweep);
            const auto ct_p = trend_concurrence_thermal(p, printed, opts.sweep);
            d["concurrence_trend_ordering"] = {
                {"alpha_maxima_derived", ca_d.values},
                {"alpha_ordering_holds_derived", ca_d.ordered},
                {"alpha_maxima_printed", ca_p.values},
                {"alpha_ordering_holds_printed", ca_p.ordered},
                {"thermal_maxima_derived", ct_d.values},
                {"thermal_ordering_holds_derived", ct_d.ordered},
                {"thermal_maxima_printed", ct_p.values},
                {"thermal_ordering_holds_printed", ct_p.ordered},
            };
        }

        // expanded fidelity sum: transcription check of the published seven-term
        // expression against the branch sum, same weights on both sides
        {
            const double m_label = 0.4;
            const auto dd2 = delta_coefficients(p);
            const double g2 = p.g * p.g;
            const auto omega_of = [&](double x) {
                const double w = p.omega_j - 0.5 * g2 * dd2.minus * (2.0 * x + 1.0);
                return std::hypot(2.0 * w, g2 * dd2.plus);
            };
            const auto sin_theta_of = [&](double x) {
                const double w = p.omega_j - 0.5 * g2 * dd2.minus * (2.0 * x + 1.0);
                return 2.0 * w / omega_of(x);
            };
            const auto prep = CavityPrep::coherent(std::sqrt(m_label));
            const ModelParams pm = p.with_cutoff(min_cutoff(prep));
            const auto w = prep_weights(prep, pm.cutoff);
            double max_gap = 0.0;
            for (double t : linspace(0.0, 200.0, 401)) {
                const double om = omega_of(m_label), sm = std::sin(om * t),
                             cm = std::cos(om * t);
                const double sthm = sin_theta_of(m_label),
                             cthm = std::sqrt(std::max(0.0, 1.0 - sthm * sthm));
                double f_expanded = 0.0, f_branch = 0.0;
                for (int n = 0; n < pm.cutoff; ++n) {
                    const double on = omega_of(double(n)), sn = std::sin(on * t),
                                 cn = std::cos(on * t);
                    const double sthn = sin_theta_of(double(n)),
                                 cthn = std::sqrt(std::max(0.0, 1.0 - sthn * sthn));
                    f_expanded +=
                        w[n] * (cn * cn * cm * cm + sn * sn * sthn * sthn * sm * sm * sthm * sthm +
                                cm * cm * sn * sn * sthn * sthn + cn * cn * sm * sm * sthm * sthm +
                                sn * sn * cthn * cthn * sm * sm * cthm * cthm +
                                2.0 * sn * cn * cthn * sm * cthm * cm +
                                2.0 * sn * sn * sm * sm * cthn * cthm * sthm * sthn);
                    const complexd c2m(cm, -sm * sthm), c2n(cn, -sn * sthn);
                    f_branch += w[n] * std::norm(std::conj(c2m) * c2n + sm * cthm * sn * cthn);
                }
                max_gap = std::max(max_gap, std::abs(f_expanded - f_branch));
            }
            d["expanded_fidelity_transcription_gap"] = max_gap;
        }
        rep.discrepancies = std::move(d);
    }

    rep.all_passed = std::all_of(rep.checks.begin(), rep.checks.end(),
                                 [](const CheckResult& c) { return c.pass; });
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

const CheckResult* ValidationReport::find(const std::string& id) const {
    for (const auto& c : checks)
        if (c.id == id) return &c;
    return nullptr;
}

ordered_json ValidationReport::to_json() const {
    ordered_json j;
    j["environment"] = params_json(params);
    ordered_json arr = ordered_json::array();
    for (const auto& c : checks) {
        ordered_json cj;
        cj["id"] = c.id;
        cj["description"] = c.description;
        cj["measured"] = c.measured;
        cj["threshold"] = c.threshold;
        cj["comparison"] = c.comparison;
        cj["pass"] = c.pass;
        if (!c.detail.empty()) cj["detail"] = c.detail;
        arr.push_back(cj);
    }
    j["checks"] = arr;
    j["discrepancies"] = discrepancies;
    j["all_passed"] = all_passed;
    j["elapsed_seconds"] = elapsed_seconds;
    return j;
}

}  // namespace qbus
