#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qbus {

using complexd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Vector4c = Eigen::Vector4cd;

inline constexpr complexd kI{0.0, 1.0};

// Tolerances used by the value-type invariants.
inline constexpr double kNormTol = 1e-10;
inline constexpr double kHermitianTol = 1e-10;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeError : Error {
    using Error::Error;
};

struct ResonanceError : Error {
    using Error::Error;
};

// Thrown when a requested preparation does not fit in the Fock truncation;
// carries the smallest cutoff that would.
struct CutoffError : Error {
    int min_required;
    CutoffError(const std::string& msg, int min_n) : Error(msg), min_required(min_n) {}
};

// Degenerate levels coupled by the perturbation make the generator singular.
struct DegeneracyError : Error {
    std::vector<std::pair<int, int>> pairs;
    DegeneracyError(const std::string& msg, std::vector<std::pair<int, int>> p)
        : Error(msg), pairs(std::move(p)) {}
};

// A metric left its mathematically allowed range by more than round-off.
struct ConsistencyError : Error {
    using Error::Error;
};

enum class FactorKind { Qubit, Fock };

struct Factor {
    FactorKind kind;
    int dim;
    bool operator==(const Factor&) const = default;
};

// Ordered factorization of a Hilbert space. Kronecker index convention is
// row-major: the first factor varies slowest.
struct SpaceTag {
    std::vector<Factor> factors;

    int dim() const {
        int d = 1;
        for (const auto& f : factors) d *= f.dim;
        return d;
    }
    bool operator==(const SpaceTag&) const = default;

    static SpaceTag qubit() { return {{{FactorKind::Qubit, 2}}}; }
    static SpaceTag two_qubits() { return {{{FactorKind::Qubit, 2}, {FactorKind::Qubit, 2}}}; }
    static SpaceTag fock(int cutoff);
    static SpaceTag two_qubits_fock(int cutoff);

    int qubit_count() const;
    // Cutoff of the single Fock factor; ShapeError if there is not exactly one.
    int fock_cutoff() const;
};

struct Operator {
    SpaceTag space;
    Matrix mat;

    int dim() const { return space.dim(); }
    double hermiticity_error() const { return (mat - mat.adjoint()).cwiseAbs().maxCoeff(); }
    bool is_hermitian(double tol = kHermitianTol) const { return hermiticity_error() < tol; }
};

enum class StateKind { Pure, Density };

// Pure vector or density matrix on a tagged space. Use the factories: they
// enforce the norm / trace / hermiticity invariants.
struct QuantumState {
    SpaceTag space;
    StateKind kind = StateKind::Pure;
    Vector vec;   // kind == Pure
    Matrix rho;   // kind == Density

    static QuantumState pure(SpaceTag space, Vector v);
    static QuantumState density(SpaceTag space, Matrix m);

    // Density-matrix view regardless of representation.
    Matrix density_matrix() const;
    // Full invariant check including eigenvalue positivity (tests, debugging).
    void validate() const;
};

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

}  // namespace qbus
