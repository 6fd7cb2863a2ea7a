#include "qbus/dynamics.hpp"

#include <cmath>

namespace qbus {

ExactPropagator::ExactPropagator(const Operator& h) : space_(h.space) {
    if (h.hermiticity_error() > 1e-10 * std::max(1.0, max_abs(h.mat)))
        throw Error("evolution requires a Hermitian Hamiltonian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.mat);
    if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
    energies_ = es.eigenvalues();
    vecs_ = es.eigenvectors();
}

Vector ExactPropagator::evolve(const Vector& psi0, double t) const {
    if (psi0.size() != vecs_.rows()) throw ShapeError("state does not match propagator dimension");
    Vector coeffs = vecs_.adjoint() * psi0;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k)
        coeffs(k) *= std::exp(complexd(0.0, -energies_(k) * t));
    return vecs_ * coeffs;
}

Matrix ExactPropagator::evolve_density(const Matrix& rho0, double t) const {
    if (rho0.rows() != vecs_.rows() || rho0.cols() != vecs_.rows())
        throw ShapeError("density matrix does not match propagator dimension");
    Matrix r = vecs_.adjoint() * rho0 * vecs_;
    for (Eigen::Index i = 0; i < r.rows(); ++i)
        for (Eigen::Index j = 0; j < r.cols(); ++j)
            r(i, j) *= std::exp(complexd(0.0, -(energies_(i) - energies_(j)) * t));
    return vecs_ * r * vecs_.adjoint();
}

QuantumState ExactPropagator::evolve(const QuantumState& state, double t) const {
    if (!(state.space == space_)) throw ShapeError("state space does not match Hamiltonian space");
    if (state.kind == StateKind::Pure)
        return QuantumState::pure(space_, evolve(state.vec, t));
    return QuantumState::density(space_, evolve_density(state.rho, t));
}

QuantumState evolve_exact(const Operator& h, const QuantumState& psi0, double t) {
    return ExactPropagator(h).evolve(psi0, t);
}

BlockCoefficients block_coefficients(int n, double t, const ModelParams& p,
                                     const EffectiveForm& form) {
    const auto terms = block_terms(n, p, form);
    const double two_w = 2.0 * terms.sz_coeff;
    const double j = terms.xx_coupling;

    BlockCoefficients bc;
    bc.n = n;
    bc.omega_n = std::hypot(two_w, j);
    bc.coupling_sign = j < 0.0 ? -1.0 : 1.0;
    if (bc.omega_n > 0.0) {
        bc.theta_n = std::asin(std::clamp(two_w / bc.omega_n, -1.0, 1.0));
    } else {
        bc.theta_n = 0.0;  // static sector: no precession at all
    }
    const double s = std::sin(bc.omega_n * t);
    const double c = std::cos(bc.omega_n * t);
    bc.c1 = s * std::cos(bc.theta_n);
    bc.c2 = complexd(c, -s * std::sin(bc.theta_n));
    bc.sector_phase = std::exp(complexd(0.0, -terms.scalar * t));
    return bc;
}

namespace {

// exp(-i t (w sz + j sx + e)) on a 2-dimensional block.
Eigen::Matrix2cd two_level_propagator(double w, double j, double e, double t) {
    const double rabi = std::hypot(w, j);
    const double s = std::sin(rabi * t);
    const double c = std::cos(rabi * t);
    const complexd phase = std::exp(complexd(0.0, -e * t));
    Eigen::Matrix2cd u;
    if (rabi == 0.0) {
        u = Eigen::Matrix2cd::Identity();
    } else {
        const double sw = w / rabi, sj = j / rabi;
        u << complexd(c, -s * sw), complexd(0.0, -s * sj),
             complexd(0.0, -s * sj), complexd(c, s * sw);
    }
    return phase * u;
}

}  // namespace

Vector4c evolve_block(const Vector4c& init, int n, double t, const ModelParams& p,
                      const EffectiveForm& form) {
    const auto terms = block_terms(n, p, form);
    const double outer_norm = std::norm(init(0)) + std::norm(init(3));
    const double inner_norm = std::norm(init(1)) + std::norm(init(2));

    Vector4c out = Vector4c::Zero();
    if (inner_norm < 1e-14) {
        // span{|00>,|11>}: sz term is +-2 sz_coeff, xx coupling swaps them
        const Eigen::Matrix2cd u =
            two_level_propagator(2.0 * terms.sz_coeff, terms.xx_coupling, terms.scalar, t);
        out(0) = u(0, 0) * init(0) + u(0, 1) * init(3);
        out(3) = u(1, 0) * init(0) + u(1, 1) * init(3);
        return out;
    }
    if (outer_norm < 1e-14) {
        // span{|01>,|10>}: sz term vanishes, photon dependence is a pure phase
        const Eigen::Matrix2cd u = two_level_propagator(0.0, terms.xx_coupling, terms.scalar, t);
        out(1) = u(0, 0) * init(1) + u(0, 1) * init(2);
        out(2) = u(1, 0) * init(1) + u(1, 1) * init(2);
        return out;
    }
    const ExactPropagator prop(block_hamiltonian(n, p, form));
    Vector v = prop.evolve(Vector(init), t);
    return Vector4c(v);
}

EvolvedEnsemble evolve_effective(const CavityPrep& prep, const Vector4c& qubit_init, double t,
                                 const ModelParams& p, const EffectiveForm& form) {
    if (std::abs(qubit_init.norm() - 1.0) > kNormTol)
        throw Error("qubit initial state is not normalized");
    const auto weights = prep_weights(prep, p.cutoff);

    Vector amps;
    if (prep.kind != CavityPrep::Kind::Thermal) amps = prep_amplitudes(prep, p.cutoff);

    EvolvedEnsemble ens;
    ens.source_prep = prep;
    ens.cutoff = p.cutoff;
    ens.branches.reserve(weights.size());
    for (int n = 0; n < int(weights.size()); ++n) {
        Branch b;
        b.weight = weights[n];
        b.photon_n = n;
        b.qubit_state = evolve_block(qubit_init, n, t, p, form);
        b.source_amp = prep.kind == CavityPrep::Kind::Thermal
                           ? complexd(std::sqrt(weights[n]), 0.0)
                           : complexd(amps(n));
        ens.branches.push_back(std::move(b));
    }
    return ens;
}

Matrix qubit_rdm(const EvolvedEnsemble& ens) {
    Matrix rho = Matrix::Zero(4, 4);
    for (const auto& b : ens.branches)
        rho += b.weight * (b.qubit_state * b.qubit_state.adjoint());
    return rho;
}

}  // namespace qbus
