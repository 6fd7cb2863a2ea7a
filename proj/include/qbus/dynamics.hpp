#pragma once

// Time evolution: exact propagation under any Hermitian Hamiltonian via
// eigendecomposition (the oracle), and the closed-form evolution inside one
// photon sector. No time stepping anywhere; every phase is exp(-i E t).

#include "qbus/froehlich.hpp"
#include "qbus/hilbert.hpp"
#include "qbus/types.hpp"

#include <vector>

namespace qbus {

// Caches the eigendecomposition of a Hermitian Hamiltonian so a time sweep
// costs one matrix-vector product per point.
class ExactPropagator {
public:
    explicit ExactPropagator(const Operator& h);

    Vector evolve(const Vector& psi0, double t) const;
    Matrix evolve_density(const Matrix& rho0, double t) const;
    QuantumState evolve(const QuantumState& state, double t) const;

    const SpaceTag& space() const { return space_; }

private:
    SpaceTag space_;
    Eigen::VectorXd energies_;
    Matrix vecs_;
};

/// One-shot exp(-iHt) psi0; h must be Hermitian.
QuantumState evolve_exact(const Operator& h, const QuantumState& psi0, double t);

// Coefficients of the closed-form evolution of photon sector n, starting
// from |00>:
//   amp(|00>) = phase * c2,      c2 = cos(W t) - i sin(W t) sin(theta)
//   amp(|11>) = phase * (-i sign(J)) * c1,   c1 = sin(W t) cos(theta)
// with W = sqrt((2 sz_coeff)^2 + J^2), sin(theta) = 2 sz_coeff / W,
// cos(theta) >= 0 and phase = exp(-i scalar t). |c1|^2 + |c2|^2 = 1.
struct BlockCoefficients {
    int n = 0;
    double omega_n = 0.0;  // Rabi frequency W
    double theta_n = 0.0;  // mixing angle, cos(theta) >= 0
    complexd c1{0.0, 0.0};
    complexd c2{0.0, 0.0};
    double coupling_sign = 1.0;   // sign of the sector's xx coupling J
    complexd sector_phase{1.0, 0.0};

    complexd amp00() const { return sector_phase * c2; }
    complexd amp11() const { return sector_phase * (-kI * coupling_sign) * c1; }
};

BlockCoefficients block_coefficients(int n, double t, const ModelParams& p,
                                     const EffectiveForm& form);

// Evolve a two-qubit state under H(n). Closed form when the state lies in
// span{|00>,|11>} or span{|01>,|10>}; otherwise the 4x4 matrix exponential.
Vector4c evolve_block(const Vector4c& init, int n, double t, const ModelParams& p,
                      const EffectiveForm& form);

struct Branch {
    double weight = 0.0;       // probability
    int photon_n = 0;
    Vector4c qubit_state;      // includes the sector phase exp(-i(omega n + shift) t)
    complexd source_amp{0.0, 0.0};  // preparation amplitude (sqrt(weight) for thermal)
};

struct EvolvedEnsemble {
    std::vector<Branch> branches;
    CavityPrep source_prep;
    int cutoff = 0;
};

// One branch per photon number, weighted by the preparation's distribution.
// Weights sum to exactly 1; each branch vector is normalized.
EvolvedEnsemble evolve_effective(const CavityPrep& prep, const Vector4c& qubit_init, double t,
                                 const ModelParams& p, const EffectiveForm& form);

/// Reduced 4x4 density matrix of the ensemble: sum of weight * |q><q|.
Matrix qubit_rdm(const EvolvedEnsemble& ens);

}  // namespace qbus
