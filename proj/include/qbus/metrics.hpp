#pragma once

// Figures of merit: fidelity against the ideal single-sector evolution,
// Bell-state overlaps, Wootters concurrence (matrix pipeline and published
// closed forms), and the decoherence-free-subspace entangling protocol.

#include "qbus/dynamics.hpp"
#include "qbus/froehlich.hpp"

namespace qbus {

enum class BellTarget {
    PhiPlus,     // (|00> + |11>)/sqrt(2)
    PsiMinusI,   // (|01> - i|10>)/sqrt(2)
    PsiPlusI,    // (|01> + i|10>)/sqrt(2)
};

Vector4c bell_state(BellTarget which);

// Clamp a metric to [0,1]; values outside by more than 1e-8 indicate an
// internal inconsistency and throw.
double clamp01(double value, const char* context);

// F = Tr[rho_m(t) rho(t)] with rho_m the pure evolution under H(m) and rho
// the reduced state of the ensemble evolution.
double fidelity_vs_target(int target_m, const CavityPrep& prep, const Vector4c& qubit_init,
                          double t, const ModelParams& p, const EffectiveForm& form);

/// |<phi+| exp(-iH(m)t) |00>|^2 from the closed-form sector coefficients.
double bell_overlap_fock(int m, double t, const ModelParams& p, const EffectiveForm& form);

/// <phi+| rho_alpha(t) |phi+> for a coherent preparation from |00>.
double bell_overlap_coherent(complexd alpha, double t, const ModelParams& p,
                             const EffectiveForm& form,
                             WeightConvention weights = WeightConvention::Standard);

// Wootters concurrence of a two-qubit density matrix. The lambdas are the
// square roots of the eigenvalues of rho (sy x sy) conj(rho) (sy x sy),
// computed as singular values of sqrt(rho) (sy x sy) conj(sqrt(rho)) for
// numerical stability on rank-deficient states.
double concurrence(const Matrix& rho4);
Eigen::Vector4d concurrence_lambdas(const Matrix& rho4);

// Same lambdas straight from the non-Hermitian product's eigenvalues;
// noisier near rank deficiency, kept as an independent cross-check.
double concurrence_r_route(const Matrix& rho4);

enum class ConcurrenceMode { Wootters, ClosedForm };

// Concurrence of the qubits evolved from |00> with a coherent / thermal
// cavity. Wootters is the matrix pipeline on the reduced state (the ground
// truth); ClosedForm evaluates the published sqrt(2)|sqrt(AB)-|D|| sums
// verbatim as a comparison target.
double concurrence_coherent(complexd alpha, double t, const ModelParams& p,
                            const EffectiveForm& form, ConcurrenceMode mode,
                            WeightConvention weights = WeightConvention::Standard);
double concurrence_thermal(double beta_e, double t, const ModelParams& p,
                           const EffectiveForm& form, ConcurrenceMode mode,
                           WeightConvention weights = WeightConvention::Standard);

struct DfsResult {
    double t_star = 0.0;               // first time the target is reached exactly
    double achieved_concurrence = 0.0; // concurrence at t_star (vacuum preparation)
    double paper_time = 0.0;           // published formula pi(w^2-4wj^2)/(16 g^2 wj), x3 for PsiPlusI
    double ratio = 0.0;                // t_star / paper_time
};

// Entangling protocol inside span{|01>,|10>}. The sector coupling is photon
// independent, so the result holds for every cavity preparation. `which`
// must be PsiMinusI or PsiPlusI; which of the two comes first depends on the
// sign of the coupling and is resolved here, not assumed.
DfsResult dfs_protocol(const ModelParams& p, const EffectiveForm& form, BellTarget which);

}  // namespace qbus
