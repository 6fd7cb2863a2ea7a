#include "qbus/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qbus {

namespace {

const double kSqrtHalf = std::numbers::sqrt2 / 2.0;

Matrix spin_flip_matrix() {
    // sy (x) sy is real: antidiagonal (-1, 1, 1, -1)
    Matrix f = Matrix::Zero(4, 4);
    f(0, 3) = -1.0;
    f(1, 2) = 1.0;
    f(2, 1) = 1.0;
    f(3, 0) = -1.0;
    return f;
}

void require_density4(const Matrix& rho) {
    if (rho.rows() != 4 || rho.cols() != 4) throw ShapeError("expected a 4x4 density matrix");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
        throw Error("concurrence input is not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-8)
        throw Error("concurrence input does not have unit trace");
}

// Hermitian square root with eigenvalues below round-off clipped to zero,
// so rank-deficient states stay exactly rank deficient.
Matrix psd_sqrt(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    Eigen::VectorXd ev = es.eigenvalues();
    const double clip = std::max(ev.cwiseAbs().maxCoeff(), 1.0) * 1e-14;
    for (Eigen::Index k = 0; k < ev.size(); ++k)
        ev(k) = ev(k) > clip ? std::sqrt(ev(k)) : 0.0;
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Vector4c bell_state(BellTarget which) {
    Vector4c v = Vector4c::Zero();
    switch (which) {
        case BellTarget::PhiPlus:
            v(0) = kSqrtHalf;
            v(3) = kSqrtHalf;
            break;
        case BellTarget::PsiMinusI:
            v(1) = kSqrtHalf;
            v(2) = complexd(0.0, -kSqrtHalf);
            break;
        case BellTarget::PsiPlusI:
            v(1) = kSqrtHalf;
            v(2) = complexd(0.0, kSqrtHalf);
            break;
    }
    return v;
}

double clamp01(double value, const char* context) {
    if (value < -1e-8 || value > 1.0 + 1e-8) {
        std::ostringstream os;
        os << context << " left [0,1] by more than round-off: " << value;
        throw ConsistencyError(os.str());
    }
    return std::clamp(value, 0.0, 1.0);
}

double fidelity_vs_target(int target_m, const CavityPrep& prep, const Vector4c& qubit_init,
                          double t, const ModelParams& p, const EffectiveForm& form) {
    if (target_m < 0 || target_m >= p.cutoff)
        throw Error("target sector " + std::to_string(target_m) + " outside cutoff");
    const Vector4c ideal = evolve_block(qubit_init, target_m, t, p, form);
    const Matrix rho = qubit_rdm(evolve_effective(prep, qubit_init, t, p, form));
    return clamp01((ideal.adjoint() * rho * ideal).value().real(), "fidelity");
}

double bell_overlap_fock(int m, double t, const ModelParams& p, const EffectiveForm& form) {
    if (m < 0 || m >= p.cutoff) throw Error("sector " + std::to_string(m) + " outside cutoff");
    const auto bc = block_coefficients(m, t, p, form);
    return clamp01(0.5 * std::norm(bc.amp00() + bc.amp11()), "bell overlap");
}

double bell_overlap_coherent(complexd alpha, double t, const ModelParams& p,
                             const EffectiveForm& form, WeightConvention weights) {
    const auto ens = evolve_effective(CavityPrep::coherent(alpha, weights), Vector4c::Unit(0), t,
                                      p, form);
    // <phi+|rho|phi+> as the branch sum of single-sector overlaps
    double f = 0.0;
    for (const auto& b : ens.branches)
        f += b.weight * 0.5 * std::norm(b.qubit_state(0) + b.qubit_state(3));
    return clamp01(f, "bell overlap");
}

Eigen::Vector4d concurrence_lambdas(const Matrix& rho4) {
    require_density4(rho4);
    const Matrix sqrt_rho = psd_sqrt(rho4);
    const Matrix a = sqrt_rho * spin_flip_matrix() * sqrt_rho.conjugate();
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues();  // descending
}

double concurrence(const Matrix& rho4) {
    const Eigen::Vector4d l = concurrence_lambdas(rho4);
    return clamp01(std::max(0.0, l(0) - l(1) - l(2) - l(3)), "concurrence");
}

double concurrence_r_route(const Matrix& rho4) {
    require_density4(rho4);
    const Matrix f = spin_flip_matrix();
    const Matrix r = rho4 * f * rho4.conjugate() * f;
    Eigen::ComplexEigenSolver<Matrix> es(r);
    Eigen::Vector4d l;
    for (int k = 0; k < 4; ++k) l(k) = std::sqrt(std::max(0.0, es.eigenvalues()(k).real()));
    std::sort(l.data(), l.data() + 4, std::greater<double>());
    return std::clamp(l(0) - l(1) - l(2) - l(3), 0.0, 1.0);
}

namespace {

double closed_form_concurrence(const std::vector<double>& w, double t, const ModelParams& p,
                               const EffectiveForm& form, bool thermal_variant) {
    // Published sums: A collects the |00> populations, B the |11> populations,
    // D the coherence. Transcribed as printed, including the extra angle
    // factor inside D's braces (cos(theta) for the coherent variant, with
    // sin(theta) as the prefactor in the thermal one).
    double a_sum = 0.0, b_sum = 0.0;
    complexd d_sum{0.0, 0.0};
    for (int k = 0; k < int(w.size()); ++k) {
        const auto bc = block_coefficients(k, t, p, form);
        const double st = std::sin(bc.omega_n * t), ct = std::cos(bc.omega_n * t);
        const double sth = std::sin(bc.theta_n), cth = std::cos(bc.theta_n);
        a_sum += w[k] * std::norm(complexd(ct, -st * sth));
        b_sum += w[k] * st * st * cth * cth;
        const complexd brace(cth * ct, -st * sth);
        d_sum += w[k] * st * (thermal_variant ? sth : cth) * brace;
    }
    const double c = std::numbers::sqrt2 * std::abs(std::sqrt(a_sum * b_sum) - std::abs(d_sum));
    return std::clamp(c, 0.0, 1.0);
}

}  // namespace

double concurrence_coherent(complexd alpha, double t, const ModelParams& p,
                            const EffectiveForm& form, ConcurrenceMode mode,
                            WeightConvention weights) {
    const auto prep = CavityPrep::coherent(alpha, weights);
    if (mode == ConcurrenceMode::Wootters)
        return concurrence(qubit_rdm(evolve_effective(prep, Vector4c::Unit(0), t, p, form)));
    return closed_form_concurrence(prep_weights(prep, p.cutoff), t, p, form, false);
}

double concurrence_thermal(double beta_e, double t, const ModelParams& p,
                           const EffectiveForm& form, ConcurrenceMode mode,
                           WeightConvention weights) {
    const auto prep = CavityPrep::thermal(beta_e, weights);
    if (mode == ConcurrenceMode::Wootters)
        return concurrence(qubit_rdm(evolve_effective(prep, Vector4c::Unit(0), t, p, form)));
    return closed_form_concurrence(prep_weights(prep, p.cutoff), t, p, form, true);
}

DfsResult dfs_protocol(const ModelParams& p, const EffectiveForm& form, BellTarget which) {
    if (which == BellTarget::PhiPlus)
        throw Error("dfs_protocol targets lie in span{|01>,|10>}");
    const double j = block_terms(0, p, form).xx_coupling;
    if (j == 0.0) throw Error("two-qubit coupling vanishes; no entangling time exists");

    // exp(-i J sx t)|01> = cos(Jt)|01> - i sin(Jt)|10>; the overlap with
    // (|01> -+ i|10>)/sqrt(2) is (1 +- sin(2Jt))/2. First unit maximum:
    const double pi = std::numbers::pi;
    double t_star;
    if (which == BellTarget::PsiMinusI)
        t_star = j > 0 ? pi / (4.0 * j) : 3.0 * pi / (4.0 * std::abs(j));
    else
        t_star = j > 0 ? 3.0 * pi / (4.0 * j) : pi / (4.0 * std::abs(j));

    DfsResult res;
    res.t_star = t_star;
    const Vector4c init = Vector4c::Unit(1);  // |01>
    res.achieved_concurrence =
        concurrence(qubit_rdm(evolve_effective(CavityPrep::fock(0), init, t_star, p, form)));

    const double base = pi * (p.omega * p.omega - 4.0 * p.omega_j * p.omega_j) /
                        (16.0 * p.g * p.g * p.omega_j);
    res.paper_time = (which == BellTarget::PsiMinusI ? 1.0 : 3.0) * base;
    res.ratio = res.paper_time != 0.0 ? res.t_star / res.paper_time
                                      : std::numeric_limits<double>::infinity();
    return res;
}

}  // namespace qbus
