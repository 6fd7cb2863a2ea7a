// Command-line front end: scenario presets, effective-Hamiltonian derivation,
// metric curves and the oracle-comparison suite.

#include "qbus/scenario.hpp"
#include "qbus/validate.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

using namespace qbus;

struct CommonOpts {
    double omega = 1.0;
    double omega_j = 0.3;
    double g = 0.02;
    int cutoff = 0;  // 0 = auto tail-mass selection
    double t_max = 200.0;
    int t_steps = 1001;
    std::string weights = "standard";
    std::string form = "rwa";
    std::string coeffs = "derived";
    std::string m_is = "mean";
    std::string out;
    bool paper_literal = false;
    bool serial = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--omega", o.omega, "cavity frequency (reference energy, hbar = 1)");
    cmd->add_option("--omega-j", o.omega_j, "qubit half-splitting");
    cmd->add_option("--g", o.g, "qubit-cavity coupling");
    cmd->add_option("--cutoff", o.cutoff, "retained Fock levels (0 = auto tail-mass selection)");
    cmd->add_option("--t-max", o.t_max, "end of the time grid (units of 1/omega)");
    cmd->add_option("--t-steps", o.t_steps, "number of time-grid points");
    cmd->add_option("--weights", o.weights, "coherent-state weight convention")
        ->check(CLI::IsMember({"standard", "paper-literal"}));
    cmd->add_option("--form", o.form, "effective Hamiltonian variant")
        ->check(CLI::IsMember({"rwa", "full"}));
    cmd->add_option("--coeffs", o.coeffs, "coefficient set: derived (default) or printed")
        ->check(CLI::IsMember({"derived", "printed"}));
    cmd->add_flag("--paper-literal", o.paper_literal,
                  "shorthand: printed coefficient set and paper-literal weights");
    cmd->add_option("--m-is", o.m_is, "reading of the series label m for coherent preparations")
        ->check(CLI::IsMember({"amplitude", "mean"}));
    cmd->add_option("--out", o.out, "output path (stdout when omitted)");
    cmd->add_flag("--serial", o.serial, "evaluate grids serially (reference path)");
}

ScenarioOptions to_scenario(const CommonOpts& o) {
    ScenarioOptions s;
    s.params.omega = o.omega;
    s.params.omega_j = o.omega_j;
    s.params.g = o.g;
    s.form.variant = o.form == "full" ? Variant::FullSecondOrder : Variant::Rwa;
    s.form.coeffs = (o.coeffs == "printed" || o.paper_literal) ? CoefficientSet::PaperPrinted
                                                               : CoefficientSet::Derived;
    s.weights = (o.weights == "paper-literal" || o.paper_literal)
                    ? WeightConvention::PaperLiteral
                    : WeightConvention::Standard;
    s.m_is = o.m_is == "amplitude" ? MInterpretation::Amplitude : MInterpretation::Mean;
    s.t_max = o.t_max;
    s.t_steps = o.t_steps;
    if (o.cutoff > 0) s.cutoff_override = o.cutoff;
    s.sweep = o.serial ? SweepMode::Serial : SweepMode::Auto;
    return s;
}

CavityPrep parse_prep(const std::string& text, WeightConvention w) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw Error("preparation must look like fock:N, coherent:ALPHA or thermal:BETAE");
    const std::string kind = text.substr(0, colon);
    const std::string value = text.substr(colon + 1);
    if (kind == "fock") return CavityPrep::fock(std::stoi(value));
    if (kind == "coherent") return CavityPrep::coherent(complexd(std::stod(value), 0.0), w);
    if (kind == "thermal") return CavityPrep::thermal(std::stod(value), w);
    throw Error("unknown preparation kind '" + kind + "'");
}

Vector4c parse_init(const std::string& text) {
    if (text == "00") return Vector4c::Unit(0);
    if (text == "01") return Vector4c::Unit(1);
    if (text == "10") return Vector4c::Unit(2);
    if (text == "11") return Vector4c::Unit(3);
    if (text == "bell+") return bell_state(BellTarget::PhiPlus);
    if (text == "bell-i") return bell_state(BellTarget::PsiMinusI);
    if (text == "bell+i") return bell_state(BellTarget::PsiPlusI);
    throw Error("unknown initial state '" + text + "'");
}

void emit_curve(const MetricCurve& curve, const std::string& out) {
    if (out.empty()) {
        std::fputs(csv_string(curve).c_str(), stdout);
        return;
    }
    write_csv(curve, out);
    std::printf("wrote %s (+ %s.meta.json)\n", out.c_str(), out.c_str());
}

void emit_json(const ordered_json& j, const std::string& out) {
    if (out.empty()) {
        std::printf("%s\n", j.dump(2).c_str());
        return;
    }
    write_json(j, out);
    std::printf("wrote %s\n", out.c_str());
}

int run(int argc, char** argv) {
    CLI::App app{"two charge qubits entangled through an off-resonant cavity mode"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML configuration file ([subcommand] sections)");

    CommonOpts o;

    auto* cmd_derive = app.add_subcommand(
        "derive", "effective Hamiltonian blocks, Delta coefficients and sign resolution");
    bool compare = false;
    add_common(cmd_derive, o);
    cmd_derive->add_flag("--compare", compare, "also print the published coefficient blocks");

    auto* cmd_evolve =
        app.add_subcommand("evolve", "populations, purity and concurrence over time");
    std::string prep_text = "fock:0", init_text = "00";
    add_common(cmd_evolve, o);
    cmd_evolve->add_option("--prep", prep_text, "cavity preparation (fock:N|coherent:A|thermal:B)");
    cmd_evolve->add_option("--init", init_text, "qubit initial state (00|01|10|11|bell+|bell-i|bell+i)");

    auto* cmd_fidelity = app.add_subcommand("fidelity", "fidelity against the ideal sector evolution");
    int target_m = 0;
    add_common(cmd_fidelity, o);
    cmd_fidelity->add_option("--target", target_m, "ideal sector index m");
    cmd_fidelity->add_option("--prep", prep_text, "cavity preparation");

    auto* cmd_bell = app.add_subcommand("bell-overlap", "overlap with (|00>+|11>)/sqrt(2)");
    int bell_fock = -1;
    double bell_alpha = -1.0;
    add_common(cmd_bell, o);
    cmd_bell->add_option("--fock", bell_fock, "sector index m");
    cmd_bell->add_option("--alpha", bell_alpha, "coherent amplitude");

    auto* cmd_conc = app.add_subcommand("concurrence", "two-qubit concurrence over time");
    double conc_alpha = -1.0, conc_beta = -1.0;
    std::string conc_mode = "wootters";
    add_common(cmd_conc, o);
    cmd_conc->add_option("--alpha", conc_alpha, "coherent amplitude");
    cmd_conc->add_option("--beta-e", conc_beta, "thermal Boltzmann factor betaE");
    cmd_conc->add_option("--mode", conc_mode, "wootters (pipeline) or closed-form (published sums)")
        ->check(CLI::IsMember({"wootters", "closed-form"}));

    auto* cmd_dfs = app.add_subcommand("dfs", "entangling protocol inside span{|01>,|10>}");
    std::string which = "first";
    add_common(cmd_dfs, o);
    cmd_dfs->add_option("--which", which, "target: first (sign-resolved), minus-i or plus-i")
        ->check(CLI::IsMember({"first", "minus-i", "plus-i"}));

    auto* cmd_figure = app.add_subcommand("figure", "bundled scenario presets (2..7)");
    int fig = 0;
    add_common(cmd_figure, o);
    cmd_figure->add_option("index", fig, "preset index, 2..7")->required();

    auto* cmd_validate = app.add_subcommand("validate", "run the oracle-comparison suite");
    bool mutate = false;
    add_common(cmd_validate, o);
    cmd_validate->add_flag("--mutate-coupling-sign", mutate,
                           "induced failure: flip the closed-form coupling sign");

    CLI11_PARSE(app, argc, argv);

    const ScenarioOptions sopts = to_scenario(o);
    const ModelParams params = sopts.params.with_cutoff(o.cutoff > 0 ? o.cutoff : 24);

    if (cmd_derive->parsed()) {
        const auto j = derive_report(params, sopts.form, compare);
        const auto& res = j["coupling_resolution"];
        std::printf("Delta+ = %.12g, Delta- = %.12g\n", j["delta"]["plus"].get<double>(),
                    j["delta"]["minus"].get<double>());
        std::printf("two-qubit coupling from [HI,S]/2: %.12g\n",
                    res["derived_xx_coupling"].get<double>());
        std::printf("  published magnitude g^2 Delta+/2 = %.12g; sign agrees with the %s,\n",
                    res["printed_coupling_rwa_form"].get<double>(),
                    res["sign_agrees_with"].get<std::string>().c_str());
        std::printf("  derived/published magnitude ratio = %.12g\n",
                    res["magnitude_ratio_vs_printed"].get<double>());
        emit_json(j, o.out);
        return 0;
    }
    if (cmd_evolve->parsed()) {
        const auto prep = parse_prep(prep_text, sopts.weights);
        emit_curve(curve_evolution(sopts, prep, parse_init(init_text)), o.out);
        return 0;
    }
    if (cmd_fidelity->parsed()) {
        const auto prep = parse_prep(prep_text, sopts.weights);
        emit_curve(curve_fidelity(sopts, target_m, prep), o.out);
        return 0;
    }
    if (cmd_bell->parsed()) {
        if ((bell_fock >= 0) == (bell_alpha >= 0))
            throw Error("bell-overlap needs exactly one of --fock or --alpha");
        emit_curve(bell_fock >= 0 ? curve_bell_fock(sopts, bell_fock)
                                  : curve_bell_coherent(sopts, complexd(bell_alpha, 0.0)),
                   o.out);
        return 0;
    }
    if (cmd_conc->parsed()) {
        if ((conc_alpha >= 0) == (conc_beta >= 0))
            throw Error("concurrence needs exactly one of --alpha or --beta-e");
        const auto mode =
            conc_mode == "wootters" ? ConcurrenceMode::Wootters : ConcurrenceMode::ClosedForm;
        emit_curve(conc_alpha >= 0
                       ? curve_concurrence_coherent(sopts, complexd(conc_alpha, 0.0), mode)
                       : curve_concurrence_thermal(sopts, conc_beta, mode),
                   o.out);
        return 0;
    }
    if (cmd_dfs->parsed()) {
        const double jxx = block_terms(0, params, sopts.form).xx_coupling;
        BellTarget target;
        if (which == "minus-i") target = BellTarget::PsiMinusI;
        else if (which == "plus-i") target = BellTarget::PsiPlusI;
        else target = jxx < 0 ? BellTarget::PsiPlusI : BellTarget::PsiMinusI;
        const auto res = dfs_protocol(params, sopts.form, target);
        ordered_json j;
        j["params"] = params_json(params);
        j["target"] = target == BellTarget::PsiMinusI ? "(|01>-i|10>)/sqrt2" : "(|01>+i|10>)/sqrt2";
        j["t_star"] = res.t_star;
        j["achieved_concurrence"] = res.achieved_concurrence;
        j["published_time"] = res.paper_time;
        j["ratio"] = res.ratio;
        emit_json(j, o.out);
        return 0;
    }
    if (cmd_figure->parsed()) {
        const MetricCurve c = run_figure(fig, sopts);
        emit_curve(c, o.out.empty() ? "fig" + std::to_string(fig) + ".csv" : o.out);
        return 0;
    }
    if (cmd_validate->parsed()) {
        ValidateOptions vo;
        vo.mutate_flip_xx_sign = mutate;
        vo.sweep = sopts.sweep;
        const auto rep = run_validation(params, vo);
        for (const auto& c : rep.checks)
            std::printf("%s  %-28s %s (measured %.6g, threshold %s %.6g)\n",
                        c.pass ? "PASS" : "FAIL", c.id.c_str(), c.description.c_str(), c.measured,
                        c.comparison.c_str(), c.threshold);
        std::printf("%s in %.1f s\n", rep.all_passed ? "all checks passed" : "CHECKS FAILED",
                    rep.elapsed_seconds);
        if (!o.out.empty()) {
            write_json(rep.to_json(), o.out);
            std::printf("wrote %s\n", o.out.c_str());
        }
        return rep.all_passed ? 0 : 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
