#pragma once

// Preset scenarios (the figure command), curve builders for the other CLI
// commands, and the CSV / JSON writers.

#include "qbus/metrics.hpp"
#include "qbus/sweep.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>

namespace qbus {

using ordered_json = nlohmann::ordered_json;

enum class MInterpretation { Amplitude, Mean };

struct ScenarioOptions {
    ModelParams params;                 // params.cutoff is ignored; see cutoff_override
    EffectiveForm form;
    WeightConvention weights = WeightConvention::Standard;
    MInterpretation m_is = MInterpretation::Mean;
    double t_max = 200.0;
    int t_steps = 1001;
    std::optional<int> cutoff_override;
    SweepMode sweep = SweepMode::Auto;
};

/// Coherent amplitude for a figure-series label m under the chosen reading.
complexd alpha_from_m(double m, MInterpretation m_is);

/// Cutoff actually used: auto tail-mass selection unless overridden.
int effective_cutoff(const CavityPrep& prep, const ScenarioOptions& opts, int min_needed = 1);

/// One of the bundled presets, fig in 2..7.
MetricCurve run_figure(int fig, const ScenarioOptions& opts);

MetricCurve curve_fidelity(const ScenarioOptions& opts, int target_m, const CavityPrep& prep);
MetricCurve curve_bell_fock(const ScenarioOptions& opts, int m);
MetricCurve curve_bell_coherent(const ScenarioOptions& opts, complexd alpha);
MetricCurve curve_concurrence_coherent(const ScenarioOptions& opts, complexd alpha,
                                       ConcurrenceMode mode);
MetricCurve curve_concurrence_thermal(const ScenarioOptions& opts, double beta_e,
                                      ConcurrenceMode mode);
/// Populations, purity and concurrence of the reduced state over time.
MetricCurve curve_evolution(const ScenarioOptions& opts, const CavityPrep& prep,
                            const Vector4c& init);

// CSV: header row `abscissa,<series names>`, %.17g floats, LF endings.
// The effective configuration is echoed to <path>.meta.json.
void write_csv(const MetricCurve& curve, const std::filesystem::path& path);
std::string csv_string(const MetricCurve& curve);

/// Transformation summary: Delta coefficients, sector blocks, sign resolution.
ordered_json derive_report(const ModelParams& p, const EffectiveForm& form, bool compare_printed);

ordered_json params_json(const ModelParams& p);
ordered_json matrix_json(const Matrix& m);

void write_json(const ordered_json& j, const std::filesystem::path& path);

}  // namespace qbus
