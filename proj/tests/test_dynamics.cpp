#include "qbus/dynamics.hpp"
#include "qbus/metrics.hpp"
#include "qbus/sweep.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <doctest.h>

#include <cmath>
#include <random>

using namespace qbus;

namespace {

const ModelParams kDefaults{};

Vector random_state(int dim, std::mt19937& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = complexd(g(rng), g(rng));
    v.normalize();
    return v;
}

}  // namespace

TEST_CASE("evolve_exact basics") {
    Operator h{SpaceTag::qubit(), Matrix::Zero(2, 2)};
    h.mat(0, 0) = 0.7;
    h.mat(1, 1) = -0.4;
    const auto psi = QuantumState::pure(SpaceTag::qubit(), Vector::Unit(2, 1));

    const auto same = evolve_exact(h, psi, 0.0);
    CHECK((same.vec - psi.vec).norm() < 1e-14);

    // diagonal Hamiltonian: pure phase, populations untouched
    const auto later = evolve_exact(h, psi, 3.7);
    CHECK(std::abs(std::abs(later.vec(1)) - 1.0) < 1e-14);
    CHECK(std::abs(later.vec(0)) < 1e-14);

    Operator bad{SpaceTag::qubit(), Matrix::Zero(2, 2)};
    bad.mat(0, 1) = 1.0;
    CHECK_THROWS_AS(evolve_exact(bad, psi, 1.0), Error);
}

TEST_CASE("evolve_exact: two-level Rabi formula") {
    const double e = 0.45, lambda = 0.12, rabi = std::hypot(e, lambda);
    Operator h{SpaceTag::qubit(), e * pauli_matrix(PauliAxis::Z) + lambda * pauli_matrix(PauliAxis::X)};
    const ExactPropagator prop(h);
    for (double t : linspace(0.0, 30.0, 121)) {
        const Vector psi = prop.evolve(Vector::Unit(2, 0), t);
        const double p1 = std::norm(psi(1));
        const double expect =
            lambda * lambda / (rabi * rabi) * std::pow(std::sin(rabi * t), 2);
        CHECK(std::abs(p1 - expect) < 1e-12);
    }
}

TEST_CASE("evolve_exact: unitarity and composition") {
    std::mt19937 rng(5);
    ModelParams p = kDefaults;
    p.cutoff = 6;
    const ExactPropagator prop(effective_model_hamiltonian(p, EffectiveForm::full()));
    const Vector psi0 = random_state(4 * p.cutoff, rng);
    const Vector a = prop.evolve(psi0, 17.0);
    CHECK(std::abs(a.norm() - 1.0) < 1e-10);
    const Vector b = prop.evolve(prop.evolve(psi0, 7.3), 9.7);
    CHECK((prop.evolve(psi0, 17.0) - b).norm() < 1e-9);
}

TEST_CASE("block coefficients: t = 0 and the no-transfer limit") {
    const auto bc0 = block_coefficients(1, 0.0, kDefaults, EffectiveForm::rwa());
    CHECK(bc0.c1 == complexd(0.0));
    CHECK(bc0.c2 == complexd(1.0));
    CHECK(std::norm(bc0.c1) + std::norm(bc0.c2) == 1.0);

    // g tiny: mixing angle near pi/2, population transfer bounded by cos^2
    ModelParams p = kDefaults;
    p.g = 1e-4;
    const double bound = std::cos(block_coefficients(0, 0.0, p, EffectiveForm::rwa()).theta_n);
    CHECK(bound < 1e-7);  // |J|/(2 omega_j) = g^2 Delta+ / 0.6 at g = 1e-4
    for (double t : linspace(0.0, 500.0, 101))
        CHECK(std::abs(block_coefficients(0, t, p, EffectiveForm::rwa()).c1) <= bound + 1e-15);
}

TEST_CASE("block coefficients: invariant |c1|^2 + |c2|^2 = 1") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> ut(0.0, 300.0);
    for (int n : {0, 1, 4, 9})
        for (int k = 0; k < 50; ++k) {
            const auto bc = block_coefficients(n, ut(rng), kDefaults, EffectiveForm::rwa());
            CHECK(std::abs(std::norm(bc.c1) + std::norm(bc.c2) - 1.0) < 1e-12);
        }
}

TEST_CASE("closed form vs full-space oracle for one sector") {
    // |c1(t)|^2 against the |11,1> population of the full-space evolution
    ModelParams p = kDefaults;
    p.g = 0.05;
    p.cutoff = 8;
    const ExactPropagator prop(effective_model_hamiltonian(p, EffectiveForm::rwa()));
    Vector psi0 = Vector::Zero(4 * p.cutoff);
    psi0(0 * p.cutoff + 1) = 1.0;  // |00> (x) |1>
    for (double t : linspace(0.0, 200.0, 401)) {
        const Vector psi = prop.evolve(psi0, t);
        const auto bc = block_coefficients(1, t, p, EffectiveForm::rwa());
        CHECK(std::abs(std::norm(psi(3 * p.cutoff + 1)) - std::norm(bc.c1)) < 1e-10);
        CHECK(std::abs(std::norm(psi(0 * p.cutoff + 1)) - std::norm(bc.c2)) < 1e-10);
    }
}

TEST_CASE("evolve_block: closed form equals the matrix exponential") {
    ModelParams p = kDefaults;
    p.cutoff = 8;
    const EffectiveForm form = EffectiveForm::rwa();
    std::mt19937 rng(17);
    for (int n : {0, 3}) {
        const ExactPropagator prop(block_hamiltonian(n, p, form));
        // outer block
        Vector4c outer = Vector4c::Zero();
        const Vector r2 = random_state(2, rng);
        outer(0) = r2(0);
        outer(3) = r2(1);
        // inner block
        Vector4c inner = Vector4c::Zero();
        const Vector r2b = random_state(2, rng);
        inner(1) = r2b(0);
        inner(2) = r2b(1);
        for (double t : {0.0, 3.1, 47.0}) {
            CHECK((evolve_block(outer, n, t, p, form) - Vector4c(prop.evolve(Vector(outer), t)))
                      .norm() < 1e-12);
            CHECK((evolve_block(inner, n, t, p, form) - Vector4c(prop.evolve(Vector(inner), t)))
                      .norm() < 1e-12);
            // mixed-block states take the exponential path; cross-check anyway
            Vector4c mixed = (outer + inner) / std::sqrt(2.0);
            mixed.normalize();
            CHECK((evolve_block(mixed, n, t, p, form) - Vector4c(prop.evolve(Vector(mixed), t)))
                      .norm() < 1e-12);
        }
    }
}

TEST_CASE("evolve_effective: single-sector preparations stay pure") {
    ModelParams p = kDefaults;
    p.cutoff = 8;
    for (int n : {0, 5}) {
        for (double t : {0.0, 12.0, 90.0}) {
            const auto ens =
                evolve_effective(CavityPrep::fock(n), Vector4c::Unit(0), t, p, EffectiveForm::rwa());
            CHECK(ens.branches.size() == std::size_t(p.cutoff));
            double wsum = 0.0;
            for (const auto& b : ens.branches) wsum += b.weight;
            CHECK(wsum == 1.0);
            CHECK(ens.branches[n].weight == 1.0);
            CHECK(std::abs(purity(qubit_rdm(ens)) - 1.0) < 1e-12);
        }
    }
    CHECK_THROWS_AS(
        evolve_effective(CavityPrep::fock(0), Vector4c::Ones(), 1.0, kDefaults, EffectiveForm::rwa()),
        Error);
}

TEST_CASE("evolve_effective: coherent(0) equals fock(0) branch for branch") {
    ModelParams p = kDefaults;
    p.cutoff = 6;
    const auto a = evolve_effective(CavityPrep::coherent(0.0), Vector4c::Unit(0), 25.0, p,
                                    EffectiveForm::rwa());
    const auto b =
        evolve_effective(CavityPrep::fock(0), Vector4c::Unit(0), 25.0, p, EffectiveForm::rwa());
    REQUIRE(a.branches.size() == b.branches.size());
    for (std::size_t k = 0; k < a.branches.size(); ++k) {
        CHECK(a.branches[k].weight == b.branches[k].weight);
        CHECK((a.branches[k].qubit_state - b.branches[k].qubit_state).norm() == 0.0);
    }
}

TEST_CASE("ensemble equals the full-space effective evolution") {
    const EffectiveForm form = EffectiveForm::rwa();
    const std::vector<CavityPrep> preps = {CavityPrep::fock(1), CavityPrep::coherent(1.1),
                                           CavityPrep::thermal(2.0)};
    const std::vector<Vector4c> inits = {Vector4c::Unit(0), bell_state(BellTarget::PhiPlus)};
    for (const auto& prep : preps) {
        const ModelParams p = kDefaults.with_cutoff(std::max(min_cutoff(prep), 8));
        const ExactPropagator prop(effective_model_hamiltonian(p, form));
        for (const auto& init : inits) {
            QuantumState full0 = [&] {
                if (prep.kind == CavityPrep::Kind::Thermal) {
                    Matrix rho = Eigen::kroneckerProduct(Matrix(init * init.adjoint()),
                                                         prepare_cavity(prep, p.cutoff).rho);
                    return QuantumState::density(SpaceTag::two_qubits_fock(p.cutoff), rho);
                }
                const Vector cav = prep_amplitudes(prep, p.cutoff);
                Vector v(4 * p.cutoff);
                for (int q = 0; q < 4; ++q)
                    for (int n = 0; n < p.cutoff; ++n) v(q * p.cutoff + n) = init(q) * cav(n);
                return QuantumState::pure(SpaceTag::two_qubits_fock(p.cutoff), v);
            }();
            for (double t : {5.0, 40.0, 100.0}) {
                const Matrix lhs = qubit_rdm(evolve_effective(prep, init, t, p, form));
                const Matrix rhs = partial_trace_cavity(prop.evolve(full0, t)).rho;
                CHECK(max_abs(lhs - rhs) < 1e-9);
            }
        }
    }
}

TEST_CASE("branch bookkeeping reconstructs the joint state") {
    const auto prep = CavityPrep::coherent(1.1);
    const ModelParams p = kDefaults.with_cutoff(min_cutoff(prep));
    const EffectiveForm form = EffectiveForm::rwa();
    const ExactPropagator prop(effective_model_hamiltonian(p, form));

    const Vector cav = prep_amplitudes(prep, p.cutoff);
    Vector full0(4 * p.cutoff);
    for (int q = 0; q < 4; ++q)
        for (int n = 0; n < p.cutoff; ++n) full0(q * p.cutoff + n) = (q == 0 ? cav(n) : 0.0);

    const double t = 40.0;
    const Vector expect = prop.evolve(full0, t);
    const auto ens = evolve_effective(prep, Vector4c::Unit(0), t, p, form);
    Vector rebuilt = Vector::Zero(4 * p.cutoff);
    for (const auto& b : ens.branches)
        for (int q = 0; q < 4; ++q)
            rebuilt(q * p.cutoff + b.photon_n) += b.source_amp * b.qubit_state(q);
    CHECK((rebuilt - expect).norm() < 1e-12);
}

TEST_CASE("qubit_rdm mixes orthogonal branches") {
    EvolvedEnsemble ens;
    ens.cutoff = 2;
    Branch b1, b2;
    b1.weight = 0.5;
    b1.photon_n = 0;
    b1.qubit_state = Vector4c::Unit(0);
    b2.weight = 0.5;
    b2.photon_n = 1;
    b2.qubit_state = Vector4c::Unit(3);
    ens.branches = {b1, b2};
    CHECK(purity(qubit_rdm(ens)) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("protected subspace: purity 1 for every preparation") {
    std::mt19937 rng(23);
    const EffectiveForm form = EffectiveForm::rwa();
    for (const auto& prep : {CavityPrep::fock(3), CavityPrep::coherent(1.1),
                             CavityPrep::thermal(0.7)}) {
        const ModelParams p = kDefaults.with_cutoff(std::max(min_cutoff(prep), 6));
        const Vector r = random_state(2, rng);
        Vector4c init = Vector4c::Zero();
        init(1) = r(0);
        init(2) = r(1);
        for (double t : linspace(0.0, 900.0, 31)) {
            const double pu = purity(qubit_rdm(evolve_effective(prep, init, t, p, form)));
            CHECK(std::abs(pu - 1.0) < 1e-10);
        }
    }
}
