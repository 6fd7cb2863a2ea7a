#include "qbus/scenario.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qbus {

namespace {

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_label(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

void fill_common_meta(MetricCurve& c, const ScenarioOptions& opts) {
    c.meta["omega"] = fmt_double(opts.params.omega);
    c.meta["omega_j"] = fmt_double(opts.params.omega_j);
    c.meta["g"] = fmt_double(opts.params.g);
    c.meta["form"] = opts.form.variant == Variant::Rwa ? "rwa" : "full";
    c.meta["coefficients"] =
        opts.form.coeffs == CoefficientSet::Derived ? "derived" : "printed";
    c.meta["weights"] =
        opts.weights == WeightConvention::Standard ? "standard" : "paper-literal";
    c.meta["m_is"] = opts.m_is == MInterpretation::Mean ? "mean" : "amplitude";
    c.meta["time_unit"] = "1/omega";
}

MetricCurve time_curve(const ScenarioOptions& opts) {
    MetricCurve c;
    c.abscissa = linspace(0.0, opts.t_max, opts.t_steps);
    fill_common_meta(c, opts);
    c.meta["abscissa"] = "t";
    return c;
}

}  // namespace

complexd alpha_from_m(double m, MInterpretation m_is) {
    if (m < 0) throw Error("series value m must be non-negative");
    return m_is == MInterpretation::Amplitude ? complexd(m, 0.0)
                                              : complexd(std::sqrt(m), 0.0);
}

int effective_cutoff(const CavityPrep& prep, const ScenarioOptions& opts, int min_needed) {
    const int wanted = std::max(min_cutoff(prep), min_needed);
    if (opts.cutoff_override) return std::max(*opts.cutoff_override, min_needed);
    return wanted;
}

MetricCurve curve_fidelity(const ScenarioOptions& opts, int target_m, const CavityPrep& prep) {
    MetricCurve c = time_curve(opts);
    ModelParams p = opts.params.with_cutoff(effective_cutoff(prep, opts, target_m + 1));
    c.names.push_back("F");
    c.series.push_back(sweep_values(
        c.abscissa,
        [&](double t) {
            return fidelity_vs_target(target_m, prep, Vector4c::Unit(0), t, p, opts.form);
        },
        opts.sweep));
    c.meta["prep"] = prep.describe();
    c.meta["target"] = std::to_string(target_m);
    c.meta["cutoff"] = std::to_string(p.cutoff);
    return c;
}

MetricCurve curve_bell_fock(const ScenarioOptions& opts, int m) {
    MetricCurve c = time_curve(opts);
    ModelParams p = opts.params.with_cutoff(
        effective_cutoff(CavityPrep::fock(m), opts, m + 1));
    c.names.push_back("f_m");
    c.series.push_back(sweep_values(
        c.abscissa, [&](double t) { return bell_overlap_fock(m, t, p, opts.form); },
        opts.sweep));
    c.meta["prep"] = CavityPrep::fock(m).describe();
    c.meta["cutoff"] = std::to_string(p.cutoff);
    return c;
}

MetricCurve curve_bell_coherent(const ScenarioOptions& opts, complexd alpha) {
    MetricCurve c = time_curve(opts);
    const auto prep = CavityPrep::coherent(alpha, opts.weights);
    ModelParams p = opts.params.with_cutoff(effective_cutoff(prep, opts));
    c.names.push_back("f_alpha");
    c.series.push_back(sweep_values(
        c.abscissa,
        [&](double t) { return bell_overlap_coherent(alpha, t, p, opts.form, opts.weights); },
        opts.sweep));
    c.meta["prep"] = prep.describe();
    c.meta["cutoff"] = std::to_string(p.cutoff);
    return c;
}

MetricCurve curve_concurrence_coherent(const ScenarioOptions& opts, complexd alpha,
                                       ConcurrenceMode mode) {
    MetricCurve c = time_curve(opts);
    const auto prep = CavityPrep::coherent(alpha, opts.weights);
    ModelParams p = opts.params.with_cutoff(effective_cutoff(prep, opts));
    c.names.push_back(mode == ConcurrenceMode::Wootters ? "C" : "C_closed_form");
    c.series.push_back(sweep_values(
        c.abscissa,
        [&](double t) {
            return concurrence_coherent(alpha, t, p, opts.form, mode, opts.weights);
        },
        opts.sweep));
    c.meta["prep"] = prep.describe();
    c.meta["cutoff"] = std::to_string(p.cutoff);
    return c;
}

MetricCurve curve_concurrence_thermal(const ScenarioOptions& opts, double beta_e,
                                      ConcurrenceMode mode) {
    MetricCurve c = time_curve(opts);
    const auto prep = CavityPrep::thermal(beta_e, opts.weights);
    ModelParams p = opts.params.with_cutoff(effective_cutoff(prep, opts));
    c.names.push_back(mode == ConcurrenceMode::Wootters ? "C" : "C_closed_form");
    c.series.push_back(sweep_values(
        c.abscissa,
        [&](double t) {
            return concurrence_thermal(beta_e, t, p, opts.form, mode, opts.weights);
        },
        opts.sweep));
    c.meta["prep"] = prep.describe();
    c.meta["cutoff"] = std::to_string(p.cutoff);
    return c;
}

MetricCurve curve_evolution(const ScenarioOptions& opts, const CavityPrep& prep,
                            const Vector4c& init) {
    MetricCurve c = time_curve(opts);
    ModelParams p = opts.params.with_cutoff(effective_cutoff(prep, opts));
    c.names = {"p00", "p01", "p10", "p11", "purity", "concurrence"};
    c.series.assign(6, std::vector<double>(c.abscissa.size()));
    // one ensemble per grid point feeds all six columns; parallel over points
    std::vector<std::array<double, 6>> rows(c.abscissa.size());
    const auto fill_row = [&](std::size_t i) {
        const Matrix rho = qubit_rdm(evolve_effective(prep, init, c.abscissa[i], p, opts.form));
        for (int k = 0; k < 4; ++k) rows[i][k] = rho(k, k).real();
        rows[i][4] = purity(rho);
        rows[i][5] = concurrence(rho);
    };
    if (opts.sweep == SweepMode::Serial || !openmp_enabled()) {
        for (std::size_t i = 0; i < rows.size(); ++i) fill_row(i);
    } else {
        const long n = long(rows.size());
#pragma omp parallel for schedule(dynamic, 16)
        for (long i = 0; i < n; ++i) fill_row(std::size_t(i));
    }
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int k = 0; k < 6; ++k) c.series[k][i] = rows[i][k];
    c.meta["prep"] = prep.describe();
    c.meta["cutoff"] = std::to_string(p.cutoff);
    return c;
}

namespace {

MetricCurve merge_series(MetricCurve base, const std::vector<MetricCurve>& parts,
                         const std::vector<std::string>& names) {
    base.names.clear();
    base.series.clear();
    for (std::size_t k = 0; k < parts.size(); ++k) {
        base.names.push_back(names[k]);
        base.series.push_back(parts[k].series.at(0));
        const auto it = parts[k].meta.find("cutoff");
        if (it != parts[k].meta.end()) base.meta["cutoff[" + names[k] + "]"] = it->second;
    }
    return base;
}

}  // namespace

MetricCurve run_figure(int fig, const ScenarioOptions& opts) {
    check_params(opts.params);
    switch (fig) {
        case 2: {
            const std::vector<double> ms = {0.2, 0.4, 0.7};
            std::vector<MetricCurve> parts;
            std::vector<std::string> names;
            for (double m : ms) {
                parts.push_back(curve_fidelity(
                    opts, 0, CavityPrep::coherent(alpha_from_m(m, opts.m_is), opts.weights)));
                names.push_back("m=" + fmt_label(m));
            }
            MetricCurve c = merge_series(time_curve(opts), parts, names);
            c.meta["figure"] = "2";
            c.meta["metric"] = "fidelity";
            return c;
        }
        case 3: {
            const std::vector<double> ts = {13.0, 40.0, 70.0};
            MetricCurve c;
            c.abscissa = linspace(0.0, 3.0, 301);
            fill_common_meta(c, opts);
            c.meta["abscissa"] = "m";
            c.meta["figure"] = "3";
            c.meta["metric"] = "fidelity";
            for (double t : ts) {
                c.names.push_back("t=" + fmt_label(t));
                c.series.push_back(sweep_values(
                    c.abscissa,
                    [&](double m) {
                        const auto prep =
                            CavityPrep::coherent(alpha_from_m(m, opts.m_is), opts.weights);
                        ModelParams p = opts.params.with_cutoff(effective_cutoff(prep, opts));
                        return fidelity_vs_target(0, prep, Vector4c::Unit(0), t, p, opts.form);
                    },
                    opts.sweep));
            }
            return c;
        }
        case 4: {
            const std::vector<int> ms = {0, 10, 20};
            std::vector<MetricCurve> parts;
            std::vector<std::string> names;
            for (int m : ms) {
                parts.push_back(curve_bell_fock(opts, m));
                names.push_back("m=" + std::to_string(m));
            }
            MetricCurve c = merge_series(time_curve(opts), parts, names);
            c.meta["figure"] = "4";
            c.meta["metric"] = "bell_overlap";
            return c;
        }
        case 5: {
            const std::vector<double> alphas = {0.1, 1.1, 5.0};
            std::vector<MetricCurve> parts;
            std::vector<std::string> names;
            for (double a : alphas) {
                parts.push_back(curve_bell_coherent(opts, complexd(a, 0.0)));
                names.push_back("alpha=" + fmt_label(a));
            }
            MetricCurve c = merge_series(time_curve(opts), parts, names);
            c.meta["figure"] = "5";
            c.meta["metric"] = "bell_overlap";
            return c;
        }
        case 6: {
            const std::vector<double> alphas = {0.1, 1.1, 3.0};
            std::vector<MetricCurve> parts;
            std::vector<std::string> names;
            for (double a : alphas) {
                parts.push_back(
                    curve_concurrence_coherent(opts, complexd(a, 0.0), ConcurrenceMode::Wootters));
                names.push_back("alpha=" + fmt_label(a));
            }
            MetricCurve c = merge_series(time_curve(opts), parts, names);
            c.meta["figure"] = "6";
            c.meta["metric"] = "concurrence";
            return c;
        }
        case 7: {
            const std::vector<double> betas = {0.7, 2.0, 6.0};
            std::vector<MetricCurve> parts;
            std::vector<std::string> names;
            for (double b : betas) {
                parts.push_back(curve_concurrence_thermal(opts, b, ConcurrenceMode::Wootters));
                names.push_back("betaE=" + fmt_label(b));
            }
            MetricCurve c = merge_series(time_curve(opts), parts, names);
            c.meta["figure"] = "7";
            c.meta["metric"] = "concurrence";
            return c;
        }
        default:
            throw Error("figure index must be 2..7, got " + std::to_string(fig));
    }
}

std::string csv_string(const MetricCurve& curve) {
    for (const auto& s : curve.series)
        if (s.size() != curve.abscissa.size())
            throw ShapeError("curve series length does not match abscissa");
    std::ostringstream os;
    os << "abscissa";
    for (const auto& n : curve.names) os << ',' << n;
    os << '\n';
    for (std::size_t i = 0; i < curve.abscissa.size(); ++i) {
        os << fmt_double(curve.abscissa[i]);
        for (const auto& s : curve.series) os << ',' << fmt_double(s[i]);
        os << '\n';
    }
    return os.str();
}

void write_csv(const MetricCurve& curve, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << csv_string(curve);
    if (!out) throw Error("write failed for " + path.string());

    ordered_json meta;
    for (const auto& [k, v] : curve.meta) meta[k] = v;
    write_json(meta, path.string() + ".meta.json");
}

ordered_json params_json(const ModelParams& p) {
    ordered_json j;
    j["omega"] = p.omega;
    j["omega_j"] = p.omega_j;
    j["g"] = p.g;
    j["cutoff"] = p.cutoff;
    return j;
}

ordered_json matrix_json(const Matrix& m) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

ordered_json derive_report(const ModelParams& p, const EffectiveForm& form,
                           bool compare_printed) {
    const auto check = check_params(p);
    const auto d = delta_coefficients(p);
    ordered_json j;
    j["params"] = params_json(p);
    j["delta"] = {{"plus", d.plus}, {"minus", d.minus}};

    const double derived_xx = block_terms(0, p, EffectiveForm{form.variant, CoefficientSet::Derived,
                                                              false}).xx_coupling;
    const double printed_mag = 0.5 * p.g * p.g * d.plus;
    ordered_json res;
    res["derived_xx_coupling"] = derived_xx;
    res["printed_coupling_full_form"] = -printed_mag;
    res["printed_coupling_rwa_form"] = printed_mag;
    res["resolved_sign"] = derived_xx < 0 ? -1 : 1;
    res["sign_agrees_with"] = (derived_xx < 0) == (printed_mag > 0)
                                  ? "full-form (minus)"
                                  : "rwa-form (plus)";
    res["magnitude_ratio_vs_printed"] = printed_mag != 0.0 ? derived_xx / printed_mag : 0.0;
    j["coupling_resolution"] = res;

    ordered_json blocks;
    for (int n : {0, 1, 2}) {
        const auto params_n = p.cutoff > n ? p : p.with_cutoff(n + 1);
        blocks["n=" + std::to_string(n)] =
            matrix_json(block_hamiltonian(n, params_n, form).mat);
    }
    j["blocks"] = blocks;
    j["form"] = form.variant == Variant::Rwa ? "rwa" : "full";
    j["coefficients"] = form.coeffs == CoefficientSet::Derived ? "derived" : "printed";

    if (compare_printed) {
        ordered_json printed;
        const EffectiveForm pf{form.variant, CoefficientSet::PaperPrinted, false};
        for (int n : {0, 1, 2}) {
            const auto params_n = p.cutoff > n ? p : p.with_cutoff(n + 1);
            printed["n=" + std::to_string(n)] =
                matrix_json(block_hamiltonian(n, params_n, pf).mat);
        }
        j["blocks_printed"] = printed;
    }
    j["warnings"] = check.warnings;
    return j;
}

void write_json(const ordered_json& j, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
    if (!out) throw Error("write failed for " + path.string());
}

}  // namespace qbus
