#include "qbus/froehlich.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qbus {

ParamCheck check_params(const ModelParams& p) {
    if (!(p.omega > 0)) throw Error("omega must be positive");
    if (p.cutoff < 1) throw Error("cutoff must be at least 1");

    ParamCheck c;
    c.resonance_margin = std::abs(p.omega - 2.0 * std::abs(p.omega_j));
    if (c.resonance_margin < 1e-6 * p.omega) {
        std::ostringstream os;
        os << "omega = " << p.omega << ", omega_j = " << p.omega_j
           << " is resonant: |omega - 2|omega_j|| = " << c.resonance_margin
           << " < 1e-6*omega, the transformation coefficients diverge";
        throw ResonanceError(os.str());
    }
    const double dmax =
        std::abs(1.0 / (p.omega - 2.0 * p.omega_j)) + std::abs(1.0 / (p.omega + 2.0 * p.omega_j));
    const bool delta_small = c.resonance_margin > 10.0 * p.g * p.g * dmax;
    if (c.resonance_margin < 0.1 * p.omega) {
        // inside the resonance region the divergence criterion is a hard stop
        if (!delta_small) {
            std::ostringstream os;
            os << "resonance margin " << c.resonance_margin << " below 10*g^2*max|Delta| = "
               << 10.0 * p.g * p.g * dmax << "; the transformation is unusable here";
            throw ResonanceError(os.str());
        }
        c.warnings.push_back("resonance margin below 0.1*omega; second-order accuracy degrades");
    } else if (!delta_small) {
        c.warnings.push_back("g^2*Delta comparable to the detuning; second-order terms not small");
    }
    c.dispersive = std::abs(p.g) / p.omega < 0.1;
    if (!c.dispersive)
        c.warnings.push_back("|g|/omega >= 0.1: outside the dispersive regime");
    return c;
}

DeltaCoefficients delta_coefficients(const ModelParams& p) {
    check_params(p);
    DeltaCoefficients d;
    d.plus = 1.0 / (p.omega - 2.0 * p.omega_j) + 1.0 / (p.omega + 2.0 * p.omega_j);
    d.minus = 1.0 / (p.omega - 2.0 * p.omega_j) - 1.0 / (p.omega + 2.0 * p.omega_j);
    return d;
}

std::pair<Operator, Operator> build_model(const ModelParams& p) {
    check_params(p);
    const auto space = SpaceTag::two_qubits_fock(p.cutoff);
    const Operator sz_sum = [&] {
        Operator o = pauli(PauliAxis::Z, 1, space);
        o.mat += pauli(PauliAxis::Z, 2, space).mat;
        return o;
    }();
    const Operator sx_sum = [&] {
        Operator o = pauli(PauliAxis::X, 1, space);
        o.mat += pauli(PauliAxis::X, 2, space).mat;
        return o;
    }();
    const Operator a = annihilation(p.cutoff);
    const Operator q_id = identity_op(SpaceTag::two_qubits());
    const Matrix x_full = tensor(q_id, a).mat + tensor(q_id, creation(p.cutoff)).mat;
    const Matrix n_full = tensor(q_id, number_operator(p.cutoff)).mat;

    Operator h0{space, p.omega_j * sz_sum.mat + p.omega * n_full};
    Operator hi{space, p.g * (x_full * sx_sum.mat)};
    return {std::move(h0), std::move(hi)};
}

Operator generic_s_operator(const Operator& h0, const Operator& hi) {
    if (!(h0.space == hi.space)) throw ShapeError("h0 and hi live on different spaces");
    const double h0_scale = std::max(1.0, max_abs(h0.mat));
    if (h0.hermiticity_error() > 1e-10 * h0_scale) throw Error("h0 is not Hermitian");
    const bool hi_hermitian = hi.hermiticity_error() <= 1e-10 * std::max(1.0, max_abs(hi.mat));

    Eigen::SelfAdjointEigenSolver<Matrix> es(h0.mat);
    if (es.info() != Eigen::Success) throw Error("eigendecomposition of h0 failed");
    const Eigen::VectorXd energies = es.eigenvalues();
    Matrix vecs = es.eigenvectors();

    // Deterministic phase: largest-magnitude component real positive.
    const int d = h0.dim();
    for (int k = 0; k < d; ++k) {
        int imax = 0;
        for (int i = 1; i < d; ++i)
            if (std::abs(vecs(i, k)) > std::abs(vecs(imax, k))) imax = i;
        const complexd z = vecs(imax, k);
        if (std::abs(z) > 0) vecs.col(k) *= std::conj(z) / std::abs(z);
    }

    const Matrix w = vecs.adjoint() * hi.mat * vecs;
    const double deg_tol = 1e-9 * max_abs(h0.mat);
    const double coupling_tol = 1e-12 * std::max(1.0, max_abs(hi.mat));

    // The condition HI + [H0,S] = 0 is solvable only when HI vanishes on
    // every degenerate block, the diagonal included.
    std::vector<std::pair<int, int>> bad;
    Matrix s_eig = Matrix::Zero(d, d);
    for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) {
            const double gap = energies(n) - energies(m);
            if (m == n || std::abs(gap) < deg_tol) {
                if (std::abs(w(m, n)) >= coupling_tol) bad.emplace_back(m, n);
                continue;
            }
            s_eig(m, n) = w(m, n) / gap;
        }
    }
    if (!bad.empty()) {
        std::ostringstream os;
        os << "degenerate levels coupled by the perturbation:";
        for (std::size_t i = 0; i < bad.size() && i < 8; ++i)
            os << " (" << bad[i].first << "," << bad[i].second << ")";
        if (bad.size() > 8) os << " ...";
        throw DegeneracyError(os.str(), std::move(bad));
    }

    Operator s{h0.space, vecs * s_eig * vecs.adjoint()};
    if (hi_hermitian && (s.mat + s.mat.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, max_abs(s.mat)))
        throw Error("generator lost anti-hermiticity");
    return s;
}

Operator effective_hamiltonian(const Operator& h0, const Operator& hi, const Operator& s) {
    if (!(h0.space == hi.space) || !(h0.space == s.space))
        throw ShapeError("operands live on different spaces");
    Operator h{h0.space, h0.mat + 0.5 * commutator(hi.mat, s.mat)};
    if (h.hermiticity_error() > 1e-10 * std::max(1.0, max_abs(h.mat)))
        throw Error("effective Hamiltonian is not Hermitian");
    return h;
}

Operator model_s_operator(const ModelParams& p) {
    const auto d = delta_coefficients(p);
    const auto space = SpaceTag::two_qubits_fock(p.cutoff);
    const Operator q_id = identity_op(SpaceTag::two_qubits());
    const Matrix a = tensor(q_id, annihilation(p.cutoff)).mat;
    const Matrix ad = tensor(q_id, creation(p.cutoff)).mat;
    const Matrix sx_sum = pauli(PauliAxis::X, 1, space).mat + pauli(PauliAxis::X, 2, space).mat;
    const Matrix sy_sum = pauli(PauliAxis::Y, 1, space).mat + pauli(PauliAxis::Y, 2, space).mat;

    Matrix s = 0.5 * p.g *
               (d.plus * ((a - ad) * sx_sum) + kI * d.minus * ((a + ad) * sy_sum));
    return {space, std::move(s)};
}

BlockTerms block_terms(int n, const ModelParams& p, const EffectiveForm& form) {
    const auto d = delta_coefficients(p);
    const double g2 = p.g * p.g;
    BlockTerms t;
    if (form.coeffs == CoefficientSet::Derived) {
        t.sz_coeff = p.omega_j - 0.5 * g2 * d.minus * double(2 * n + 1);
        t.xx_coupling = -g2 * d.plus;
        t.scalar = p.omega * n - g2 * d.plus;
    } else {
        t.sz_coeff = p.omega_j + g2 * d.minus * double(n);
        t.xx_coupling = 0.5 * g2 * d.plus;
        t.scalar = p.omega * n;
    }
    if (form.flip_xx_sign) t.xx_coupling = -t.xx_coupling;
    return t;
}

Operator block_hamiltonian(int n, const ModelParams& p, const EffectiveForm& form) {
    if (n < 0 || n >= p.cutoff)
        throw Error("photon number " + std::to_string(n) + " outside cutoff " +
                    std::to_string(p.cutoff));
    const auto t = block_terms(n, p, form);
    const auto space = SpaceTag::two_qubits();
    Matrix h = Matrix::Zero(4, 4);
    h(0, 0) = t.scalar + 2.0 * t.sz_coeff;   // |00>
    h(1, 1) = t.scalar;                      // |01>
    h(2, 2) = t.scalar;                      // |10>
    h(3, 3) = t.scalar - 2.0 * t.sz_coeff;   // |11>
    h(0, 3) = h(3, 0) = t.xx_coupling;
    h(1, 2) = h(2, 1) = t.xx_coupling;
    return {space, std::move(h)};
}

Operator effective_model_hamiltonian(const ModelParams& p, const EffectiveForm& form) {
    check_params(p);
    const int n_fock = p.cutoff;
    const auto space = SpaceTag::two_qubits_fock(n_fock);

    if (form.variant == Variant::Rwa) {
        // Assemble sector by sector; photon-number conservation is then
        // structural and [H_eff, a'a] vanishes identically.
        Matrix h = Matrix::Zero(4 * n_fock, 4 * n_fock);
        for (int n = 0; n < n_fock; ++n) {
            const Matrix block = block_hamiltonian(n, p, form).mat;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    h(i * n_fock + n, j * n_fock + n) = block(i, j);
        }
        return {space, std::move(h)};
    }

    const auto d = delta_coefficients(p);
    const double g2 = p.g * p.g;
    const Operator q_id = identity_op(SpaceTag::two_qubits());
    const Matrix x = tensor(q_id, annihilation(n_fock)).mat + tensor(q_id, creation(n_fock)).mat;
    const Matrix n_full = tensor(q_id, number_operator(n_fock)).mat;
    const Matrix sz_sum = pauli(PauliAxis::Z, 1, space).mat + pauli(PauliAxis::Z, 2, space).mat;
    const Matrix sxsx = (pauli(PauliAxis::X, 1, space).mat * pauli(PauliAxis::X, 2, space).mat).eval();
    const Matrix id = Matrix::Identity(4 * n_fock, 4 * n_fock);

    const double xx = (form.coeffs == CoefficientSet::Derived ? -g2 * d.plus : -0.5 * g2 * d.plus) *
                      (form.flip_xx_sign ? -1.0 : 1.0);
    const double shift = form.coeffs == CoefficientSet::Derived ? -g2 * d.plus : -0.5 * g2 * d.plus;

    Matrix h = p.omega_j * sz_sum + p.omega * n_full -
               0.5 * g2 * d.minus * (x * x * sz_sum) + shift * id + xx * sxsx;
    return {space, std::move(h)};
}

}  // namespace qbus
