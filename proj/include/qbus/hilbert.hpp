#pragma once

// Operators and states on the truncated joint Hilbert space
// qubit (x) qubit (x) Fock(N), and the dense linear-algebra primitives the
// rest of the library is built on.
//
// Conventions, fixed once here:
//   * charge basis |0>, |1> with sigma_z|0> = +|0>,
//   * two-qubit index = 2*q1 + q2, so the order is |00>,|01>,|10>,|11>,
//   * joint index = (2*q1 + q2)*N + n for Fock level n.

#include "qbus/types.hpp"

namespace qbus {

enum class PauliAxis { X, Y, Z };

enum class WeightConvention { Standard, PaperLiteral };

// Cavity preparation: Fock |n>, coherent |alpha>, or thermal with Boltzmann
// factor exp(-n*betaE). PaperLiteral replaces the coherent Poisson weights by
// the published |alpha|^(2k)/(k!k!) variant (renormalized); kept only so the
// as-printed curves can be reproduced for comparison.
struct CavityPrep {
    enum class Kind { Fock, Coherent, Thermal };
    Kind kind = Kind::Fock;
    int fock_n = 0;
    complexd alpha{0.0, 0.0};
    double beta_e = 0.0;
    WeightConvention weights = WeightConvention::Standard;

    static CavityPrep fock(int n);
    static CavityPrep coherent(complexd alpha, WeightConvention w = WeightConvention::Standard);
    static CavityPrep thermal(double beta_e, WeightConvention w = WeightConvention::Standard);

    std::string describe() const;
};

Matrix pauli_matrix(PauliAxis axis);

/// Kronecker product; factor lists concatenate.
Operator tensor(const Operator& a, const Operator& b);

/// Identity on a tagged space.
Operator identity_op(SpaceTag space);

/// Truncated annihilation operator on Fock(N): a|n> = sqrt(n)|n-1>.
Operator annihilation(int cutoff);
Operator creation(int cutoff);
Operator number_operator(int cutoff);

/// The chosen Pauli on qubit 1 or 2 of `space`, identity elsewhere.
Operator pauli(PauliAxis axis, int which_qubit, const SpaceTag& space);

/// Smallest cutoff whose neglected tail mass is below 1e-10 (floor of 4).
int min_cutoff(const CavityPrep& prep);

/// Untruncated probability mass above the top retained level.
double tail_mass(const CavityPrep& prep, int cutoff);

// Branch probabilities of the preparation, truncated and renormalized.
// The left-to-right sum is fixed up to be exactly 1.0 so that weighted
// averages of a unit quantity are bitwise 1.
std::vector<double> prep_weights(const CavityPrep& prep, int cutoff);

// Branch amplitudes for pure preparations (Fock, Coherent). ShapeError for
// Thermal, which has no amplitude representation.
Vector prep_amplitudes(const CavityPrep& prep, int cutoff);

/// Realize the preparation on Fock(cutoff); CutoffError if the tail criterion fails.
QuantumState prepare_cavity(const CavityPrep& prep, int cutoff);

/// Trace out the Fock factor of a state on qubit (x) qubit (x) Fock(N).
QuantumState partial_trace_cavity(const QuantumState& state);

double purity(const Matrix& rho);
double purity(const QuantumState& state);

/// max |rho1 - rho2| eigenvalue sum / 2 (trace distance).
double trace_distance(const Matrix& rho1, const Matrix& rho2);

}  // namespace qbus
