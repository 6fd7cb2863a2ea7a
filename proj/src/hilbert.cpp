#include "qbus/hilbert.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <sstream>

namespace qbus {

SpaceTag SpaceTag::fock(int cutoff) {
    if (cutoff < 1) throw Error("Fock cutoff must be at least 1, got " + std::to_string(cutoff));
    return {{{FactorKind::Fock, cutoff}}};
}

SpaceTag SpaceTag::two_qubits_fock(int cutoff) {
    if (cutoff < 1) throw Error("Fock cutoff must be at least 1, got " + std::to_string(cutoff));
    return {{{FactorKind::Qubit, 2}, {FactorKind::Qubit, 2}, {FactorKind::Fock, cutoff}}};
}

int SpaceTag::qubit_count() const {
    int n = 0;
    for (const auto& f : factors)
        if (f.kind == FactorKind::Qubit) ++n;
    return n;
}

int SpaceTag::fock_cutoff() const {
    int found = -1;
    for (const auto& f : factors)
        if (f.kind == FactorKind::Fock) {
            if (found >= 0) throw ShapeError("space has more than one Fock factor");
            found = f.dim;
        }
    if (found < 0) throw ShapeError("space has no Fock factor");
    return found;
}

QuantumState QuantumState::pure(SpaceTag space, Vector v) {
    if (v.size() != space.dim()) throw ShapeError("state vector does not match space dimension");
    if (std::abs(v.norm() - 1.0) > kNormTol)
        throw Error("pure state vector is not normalized: |norm-1| = " +
                    std::to_string(std::abs(v.norm() - 1.0)));
    QuantumState s;
    s.space = std::move(space);
    s.kind = StateKind::Pure;
    s.vec = std::move(v);
    return s;
}

QuantumState QuantumState::density(SpaceTag space, Matrix m) {
    if (m.rows() != space.dim() || m.cols() != space.dim())
        throw ShapeError("density matrix does not match space dimension");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
        throw Error("density matrix is not Hermitian");
    if (std::abs(m.trace().real() - 1.0) > kNormTol || std::abs(m.trace().imag()) > kNormTol)
        throw Error("density matrix trace differs from 1");
    QuantumState s;
    s.space = std::move(space);
    s.kind = StateKind::Density;
    s.rho = std::move(m);
    return s;
}

Matrix QuantumState::density_matrix() const {
    if (kind == StateKind::Pure) return vec * vec.adjoint();
    return rho;
}

void QuantumState::validate() const {
    if (kind == StateKind::Pure) {
        if (std::abs(vec.norm() - 1.0) > kNormTol) throw Error("pure state norm invariant violated");
        return;
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
        throw Error("density hermiticity invariant violated");
    if (std::abs(rho.trace().real() - 1.0) > kNormTol) throw Error("density trace invariant violated");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kNormTol) throw Error("density positivity invariant violated");
}

CavityPrep CavityPrep::fock(int n) {
    if (n < 0) throw Error("Fock level must be non-negative");
    CavityPrep p;
    p.kind = Kind::Fock;
    p.fock_n = n;
    return p;
}

CavityPrep CavityPrep::coherent(complexd alpha, WeightConvention w) {
    CavityPrep p;
    p.kind = Kind::Coherent;
    p.alpha = alpha;
    p.weights = w;
    return p;
}

CavityPrep CavityPrep::thermal(double beta_e, WeightConvention w) {
    if (!(beta_e > 0)) throw Error("thermal betaE must be positive");
    CavityPrep p;
    p.kind = Kind::Thermal;
    p.beta_e = beta_e;
    p.weights = w;
    return p;
}

std::string CavityPrep::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Fock: os << "fock(" << fock_n << ")"; break;
        case Kind::Coherent:
            os << "coherent(" << alpha.real();
            if (alpha.imag() != 0) os << (alpha.imag() > 0 ? "+" : "") << alpha.imag() << "i";
            os << ")";
            break;
        case Kind::Thermal: os << "thermal(" << beta_e << ")"; break;
    }
    if (weights == WeightConvention::PaperLiteral) os << "[literal]";
    return os.str();
}

Matrix pauli_matrix(PauliAxis axis) {
    Matrix m(2, 2);
    switch (axis) {
        case PauliAxis::X: m << 0, 1, 1, 0; break;
        case PauliAxis::Y: m << 0, -kI, kI, 0; break;
        case PauliAxis::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

Operator tensor(const Operator& a, const Operator& b) {
    Operator out;
    out.space.factors = a.space.factors;
    out.space.factors.insert(out.space.factors.end(), b.space.factors.begin(),
                             b.space.factors.end());
    out.mat = Eigen::kroneckerProduct(a.mat, b.mat);
    return out;
}

Operator identity_op(SpaceTag space) {
    const int d = space.dim();
    return {std::move(space), Matrix::Identity(d, d)};
}

Operator annihilation(int cutoff) {
    if (cutoff < 1) throw Error("invalid cutoff " + std::to_string(cutoff));
    Matrix a = Matrix::Zero(cutoff, cutoff);
    for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(double(n));
    return {SpaceTag::fock(cutoff), std::move(a)};
}

Operator creation(int cutoff) {
    Operator a = annihilation(cutoff);
    a.mat = a.mat.adjoint().eval();
    return a;
}

Operator number_operator(int cutoff) {
    if (cutoff < 1) throw Error("invalid cutoff " + std::to_string(cutoff));
    Matrix n = Matrix::Zero(cutoff, cutoff);
    for (int k = 0; k < cutoff; ++k) n(k, k) = double(k);
    return {SpaceTag::fock(cutoff), std::move(n)};
}

Operator pauli(PauliAxis axis, int which_qubit, const SpaceTag& space) {
    if (which_qubit != 1 && which_qubit != 2) throw Error("which_qubit must be 1 or 2");
    if (space.qubit_count() < 2) throw ShapeError("space does not contain two qubit factors");

    Operator out;
    out.space = SpaceTag{};
    out.mat = Matrix::Ones(1, 1);
    int qubit_seen = 0;
    for (const auto& f : space.factors) {
        Matrix block;
        if (f.kind == FactorKind::Qubit) {
            ++qubit_seen;
            block = (qubit_seen == which_qubit) ? pauli_matrix(axis) : Matrix::Identity(2, 2);
        } else {
            block = Matrix::Identity(f.dim, f.dim);
        }
        out.mat = Eigen::kroneckerProduct(out.mat, block).eval();
        out.space.factors.push_back(f);
    }
    return out;
}

namespace {

// Untruncated coherent-state number distribution, standard or literal,
// evaluated term by term until it has converged.
std::vector<double> coherent_weights_unnormalized(const CavityPrep& p, int count) {
    const double mu = std::norm(p.alpha);
    std::vector<double> w(count);
    double term = std::exp(-mu);  // n = 0 term of exp(-mu) mu^n / n!
    for (int n = 0; n < count; ++n) {
        w[n] = term;
        term *= mu / double(n + 1);
        if (p.weights == WeightConvention::PaperLiteral) term /= double(n + 1);
    }
    return w;
}

double coherent_total_mass(const CavityPrep& p) {
    if (p.weights == WeightConvention::Standard) return 1.0;
    // exp(-mu) * sum mu^k/(k!k!) = exp(-mu) * I0(2 sqrt(mu)), by series.
    const double mu = std::norm(p.alpha);
    double sum = 0.0, term = std::exp(-mu);
    for (int n = 0; n < 10000; ++n) {
        sum += term;
        term *= mu / (double(n + 1) * double(n + 1));
        if (term < sum * 1e-18) break;
    }
    return sum;
}

// Scale to unit sum, then pin the last weight so the plain left-to-right
// sum is exactly 1.0 (1 - head is exact for head in [0.5, 2]).
void normalize_exact(std::vector<double>& w) {
    double s = 0.0;
    for (double x : w) s += x;
    if (s <= 0.0) throw Error("preparation weights sum to zero");
    for (double& x : w) x /= s;
    if (w.size() == 1) {
        w[0] = 1.0;
        return;
    }
    double head = 0.0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) head += w[i];
    const double rest = 1.0 - head;
    if (rest >= 0.0) {
        w.back() = rest;
        return;
    }
    // the tail weight is below fold-rounding noise; nudge the largest entry
    std::size_t imax = 0;
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] > w[imax]) imax = i;
    for (int pass = 0; pass < 64; ++pass) {
        double s2 = 0.0;
        for (double x : w) s2 += x;
        if (s2 == 1.0) return;
        w[imax] += 1.0 - s2;
    }
    throw Error("weight normalization did not converge");
}

constexpr double kTailTol = 1e-10;
constexpr int kCutoffFloor = 4;

}  // namespace

double tail_mass(const CavityPrep& prep, int cutoff) {
    switch (prep.kind) {
        case CavityPrep::Kind::Fock:
            return prep.fock_n < cutoff ? 0.0 : 1.0;
        case CavityPrep::Kind::Coherent: {
            auto w = coherent_weights_unnormalized(prep, cutoff);
            double head = 0.0;
            for (double x : w) head += x;
            return std::max(0.0, 1.0 - head / coherent_total_mass(prep));
        }
        case CavityPrep::Kind::Thermal:
            // geometric tail: sum_{n>=N} (1-q) q^n = q^N with q = exp(-betaE)
            return std::exp(-prep.beta_e * cutoff);
    }
    throw Error("unreachable");
}

int min_cutoff(const CavityPrep& prep) {
    if (prep.kind == CavityPrep::Kind::Fock)
        return std::max(prep.fock_n + 1, kCutoffFloor);
    int n = kCutoffFloor;
    while (tail_mass(prep, n) >= kTailTol) {
        ++n;
        if (n > 100000) throw Error("cutoff search did not converge");
    }
    return n;
}

std::vector<double> prep_weights(const CavityPrep& prep, int cutoff) {
    if (cutoff < 1) throw Error("invalid cutoff " + std::to_string(cutoff));
    switch (prep.kind) {
        case CavityPrep::Kind::Fock: {
            if (prep.fock_n >= cutoff)
                throw CutoffError("Fock level " + std::to_string(prep.fock_n) +
                                      " does not fit below cutoff " + std::to_string(cutoff),
                                  prep.fock_n + 1);
            std::vector<double> w(cutoff, 0.0);
            w[prep.fock_n] = 1.0;
            return w;
        }
        case CavityPrep::Kind::Coherent: {
            if (tail_mass(prep, cutoff) >= kTailTol)
                throw CutoffError("cutoff " + std::to_string(cutoff) +
                                      " too small for " + prep.describe(),
                                  min_cutoff(prep));
            auto w = coherent_weights_unnormalized(prep, cutoff);
            normalize_exact(w);
            return w;
        }
        case CavityPrep::Kind::Thermal: {
            if (tail_mass(prep, cutoff) >= kTailTol)
                throw CutoffError("cutoff " + std::to_string(cutoff) +
                                      " too small for " + prep.describe(),
                                  min_cutoff(prep));
            std::vector<double> w(cutoff);
            for (int n = 0; n < cutoff; ++n) w[n] = std::exp(-prep.beta_e * n);
            normalize_exact(w);  // divides by the truncated partition sum
            return w;
        }
    }
    throw Error("unreachable");
}

Vector prep_amplitudes(const CavityPrep& prep, int cutoff) {
    if (prep.kind == CavityPrep::Kind::Thermal)
        throw ShapeError("thermal preparation has no amplitude representation");
    if (prep.kind == CavityPrep::Kind::Fock) {
        if (prep.fock_n >= cutoff)
            throw CutoffError("Fock level does not fit below cutoff", prep.fock_n + 1);
        Vector v = Vector::Zero(cutoff);
        v(prep.fock_n) = 1.0;
        return v;
    }
    if (tail_mass(prep, cutoff) >= kTailTol)
        throw CutoffError("cutoff too small for " + prep.describe(), min_cutoff(prep));
    Vector v(cutoff);
    complexd amp = std::exp(-0.5 * std::norm(prep.alpha));
    for (int n = 0; n < cutoff; ++n) {
        v(n) = amp;
        amp *= prep.alpha / std::sqrt(double(n + 1));
        if (prep.weights == WeightConvention::PaperLiteral) amp /= std::sqrt(double(n + 1));
    }
    v.normalize();
    return v;
}

QuantumState prepare_cavity(const CavityPrep& prep, int cutoff) {
    if (prep.kind == CavityPrep::Kind::Thermal) {
        auto w = prep_weights(prep, cutoff);
        Matrix rho = Matrix::Zero(cutoff, cutoff);
        for (int n = 0; n < cutoff; ++n) rho(n, n) = w[n];
        return QuantumState::density(SpaceTag::fock(cutoff), std::move(rho));
    }
    return QuantumState::pure(SpaceTag::fock(cutoff), prep_amplitudes(prep, cutoff));
}

QuantumState partial_trace_cavity(const QuantumState& state) {
    const auto expected = SpaceTag::two_qubits_fock(state.space.fock_cutoff());
    if (!(state.space == expected))
        throw ShapeError("partial_trace_cavity expects a qubit-qubit-Fock space");
    const int n_fock = state.space.fock_cutoff();

    Matrix out = Matrix::Zero(4, 4);
    if (state.kind == StateKind::Pure) {
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int n = 0; n < n_fock; ++n)
                    out(i, j) += state.vec(i * n_fock + n) * std::conj(state.vec(j * n_fock + n));
    } else {
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int n = 0; n < n_fock; ++n)
                    out(i, j) += state.rho(i * n_fock + n, j * n_fock + n);
    }
    return QuantumState::density(SpaceTag::two_qubits(), std::move(out));
}

double purity(const Matrix& rho) { return (rho * rho).trace().real(); }

double purity(const QuantumState& state) {
    if (state.kind == StateKind::Pure) return 1.0;
    return purity(state.rho);
}

double trace_distance(const Matrix& rho1, const Matrix& rho2) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho1 - rho2, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace qbus
