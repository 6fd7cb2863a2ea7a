#include "qbus/hilbert.hpp"
#include "qbus/metrics.hpp"

#include <doctest.h>

#include <random>

using namespace qbus;

namespace {

Matrix random_complex(int n, std::mt19937& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = complexd(g(rng), g(rng));
    return m;
}

}  // namespace

TEST_CASE("tensor: identities and bit flips") {
    const Operator i2 = identity_op(SpaceTag::qubit());
    const Operator i4 = tensor(i2, i2);
    CHECK(i4.mat.isIdentity(0.0));
    CHECK(i4.space == SpaceTag::two_qubits());

    // sigma_z (x) 1 on |0>|1> has eigenvalue +1 under sz|0> = +|0>
    Operator sz1{SpaceTag::qubit(), pauli_matrix(PauliAxis::Z)};
    const Operator szI = tensor(sz1, i2);
    Vector v = Vector::Zero(4);
    v(1) = 1.0;  // |0>|1>
    CHECK((szI.mat * v - v).norm() == 0.0);

    // sigma_x (x) sigma_x flips both qubits
    Operator sx{SpaceTag::qubit(), pauli_matrix(PauliAxis::X)};
    const Operator sxsx = tensor(sx, sx);
    Vector v00 = Vector::Zero(4);
    v00(0) = 1.0;
    Vector v11 = Vector::Zero(4);
    v11(3) = 1.0;
    CHECK((sxsx.mat * v00 - v11).norm() == 0.0);
}

TEST_CASE("tensor: associativity up to factor-list reassociation") {
    // exact for the operator zoo used by the model
    const Operator a = annihilation(3);
    Operator sx{SpaceTag::qubit(), pauli_matrix(PauliAxis::X)};
    Operator sy{SpaceTag::qubit(), pauli_matrix(PauliAxis::Y)};
    const Operator left = tensor(tensor(sx, sy), a);
    const Operator right = tensor(sx, tensor(sy, a));
    CHECK(max_abs(left.mat - right.mat) == 0.0);
    CHECK(left.space == right.space);

    std::mt19937 rng(7);
    Operator ra{SpaceTag::qubit(), random_complex(2, rng)};
    Operator rb{SpaceTag::qubit(), random_complex(2, rng)};
    Operator rc{SpaceTag::fock(3), random_complex(3, rng)};
    const Matrix l = tensor(tensor(ra, rb), rc).mat;
    const Matrix r = tensor(ra, tensor(rb, rc)).mat;
    CHECK(max_abs(l - r) < 1e-15 * max_abs(l));
}

TEST_CASE("annihilation: ladder action and truncation artifact") {
    const Operator a2 = annihilation(2);
    Vector one = Vector::Zero(2);
    one(1) = 1.0;
    Vector zero = Vector::Zero(2);
    zero(0) = 1.0;
    CHECK((a2.mat * one - zero).norm() == 0.0);

    const Operator a3 = annihilation(3);
    const Matrix num = a3.mat.adjoint() * a3.mat;
    CHECK(num(0, 0) == complexd(0.0));
    CHECK(num(1, 1) == complexd(1.0));
    CHECK(num(2, 2).real() == doctest::Approx(2.0).epsilon(1e-15));

    // [a, a'] is the identity except the top level, where it is -(N-1)
    const Matrix comm = commutator(a3.mat, Matrix(a3.mat.adjoint()));
    CHECK(comm(0, 0).real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(comm(1, 1).real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(comm(2, 2).real() == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(max_abs(comm - comm.diagonal().asDiagonal().toDenseMatrix()) == 0.0);

    CHECK_THROWS_AS(annihilation(0), Error);
}

TEST_CASE("pauli embedding and the dark combination") {
    const auto space = SpaceTag::two_qubits_fock(3);
    const Operator z1 = pauli(PauliAxis::Z, 1, space);
    Vector v = Vector::Zero(12);
    v(0 * 6 + 1 * 3 + 2) = 1.0;  // |0>|1>|2>
    CHECK((z1.mat * v - v).norm() == 0.0);

    const Operator x2 = pauli(PauliAxis::X, 2, SpaceTag::two_qubits());
    Vector v00 = Vector::Zero(4);
    v00(0) = 1.0;
    Vector v01 = Vector::Zero(4);
    v01(1) = 1.0;
    CHECK((x2.mat * v00 - v01).norm() == 0.0);

    // (sz1 + sz2) annihilates |01>: the subspace the protocol lives in
    const Operator zsum{SpaceTag::two_qubits(),
                        pauli(PauliAxis::Z, 1, SpaceTag::two_qubits()).mat +
                            pauli(PauliAxis::Z, 2, SpaceTag::two_qubits()).mat};
    CHECK((zsum.mat * v01).norm() == 0.0);

    CHECK_THROWS_AS(pauli(PauliAxis::X, 1, SpaceTag::fock(3)), ShapeError);
}

TEST_CASE("prepare_cavity: coherent") {
    const auto vac = prepare_cavity(CavityPrep::coherent(0.0), 6);
    CHECK(vac.vec(0) == complexd(1.0));
    CHECK(vac.vec.tail(5).norm() == 0.0);

    // mean photon number equals |alpha|^2, checked by direct summation
    const auto st = prepare_cavity(CavityPrep::coherent(1.1), 20);
    double mean = 0.0;
    for (int n = 0; n < 20; ++n) mean += n * std::norm(st.vec(n));
    CHECK(mean == doctest::Approx(1.21).epsilon(1e-8));

    // the literal convention scales amplitudes by an extra 1/sqrt(n!)
    const auto lit = prepare_cavity(
        CavityPrep::coherent(1.1, WeightConvention::PaperLiteral), 20);
    double fact = 1.0;
    for (int n = 0; n < 8; ++n) {
        if (n > 0) fact *= n;
        CHECK(std::abs(lit.vec(n)) ==
              doctest::Approx(std::abs(lit.vec(0)) * std::pow(1.1, n) / fact).epsilon(1e-12));
    }

    CHECK_THROWS_AS(prepare_cavity(CavityPrep::coherent(3.0), 10), CutoffError);
    try {
        prepare_cavity(CavityPrep::coherent(3.0), 10);
    } catch (const CutoffError& e) {
        CHECK(e.min_required == min_cutoff(CavityPrep::coherent(3.0)));
        CHECK(e.min_required > 10);
    }
}

TEST_CASE("prepare_cavity: thermal and Fock") {
    const auto cold = prepare_cavity(CavityPrep::thermal(50.0), 6);
    Matrix vac = Matrix::Zero(6, 6);
    vac(0, 0) = 1.0;
    CHECK(max_abs(cold.rho - vac) < 1e-10);

    const auto f2 = prepare_cavity(CavityPrep::fock(2), 5);
    CHECK(f2.vec(2) == complexd(1.0));
    CHECK_THROWS_AS(prepare_cavity(CavityPrep::fock(7), 5), CutoffError);
}

TEST_CASE("prep_weights: exact unit sum and monotone tail") {
    for (const auto& prep : {CavityPrep::coherent(1.1), CavityPrep::thermal(0.7),
                             CavityPrep::coherent(2.0, WeightConvention::PaperLiteral)}) {
        const auto w = prep_weights(prep, min_cutoff(prep));
        double s = 0.0;
        for (double x : w) s += x;
        CHECK(s == 1.0);  // bitwise, by construction
    }
    const auto prep = CavityPrep::coherent(1.3);
    double prev = 1.0;
    for (int n = 4; n < 24; ++n) {
        const double t = tail_mass(prep, n);
        CHECK(t <= prev);
        prev = t;
    }
}

TEST_CASE("partial_trace_cavity") {
    const int nf = 4;
    const auto space = SpaceTag::two_qubits_fock(nf);

    Vector v = Vector::Zero(4 * nf);
    v(0 * nf + 2) = 1.0;  // |00> (x) |2>
    auto rho = partial_trace_cavity(QuantumState::pure(space, v));
    CHECK(rho.rho(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(purity(rho) == doctest::Approx(1.0).epsilon(1e-14));

    // orthogonal cavity levels wash out qubit coherence between branches
    Vector4c q0 = Vector4c::Unit(0), q1 = Vector4c::Unit(3);
    Vector w = Vector::Zero(4 * nf);
    const double c0 = std::sqrt(0.7), c1 = std::sqrt(0.3);
    for (int q = 0; q < 4; ++q) {
        w(q * nf + 0) = c0 * q0(q);
        w(q * nf + 1) = c1 * q1(q);
    }
    auto mixed = partial_trace_cavity(QuantumState::pure(space, w));
    Matrix expect = 0.7 * (q0 * q0.adjoint()) + 0.3 * (q1 * q1.adjoint());
    CHECK(max_abs(mixed.rho - expect) < 1e-14);

    // Bell (x) |0> reduces to a pure, maximally entangled state
    const Vector4c bell = bell_state(BellTarget::PhiPlus);
    Vector b = Vector::Zero(4 * nf);
    for (int q = 0; q < 4; ++q) b(q * nf) = bell(q);
    auto rb = partial_trace_cavity(QuantumState::pure(space, b));
    CHECK(purity(rb) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(concurrence(rb.rho) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(partial_trace_cavity(QuantumState::pure(SpaceTag::fock(4),
                                                            prepare_cavity(CavityPrep::fock(0), 4).vec)),
                    ShapeError);
}

TEST_CASE("partial trace preserves trace") {
    std::mt19937 rng(11);
    const int nf = 3;
    for (int trial = 0; trial < 20; ++trial) {
        Matrix m = random_complex(4 * nf, rng);
        Matrix rho = m * m.adjoint();
        rho /= rho.trace();
        const auto out =
            partial_trace_cavity(QuantumState::density(SpaceTag::two_qubits_fock(nf), rho));
        CHECK(std::abs(out.rho.trace().real() - 1.0) < 1e-12);
    }
}

TEST_CASE("purity") {
    Matrix mixed = Matrix::Identity(4, 4) / 4.0;
    CHECK(purity(mixed) == doctest::Approx(0.25).epsilon(1e-15));
    Matrix half = Matrix::Zero(4, 4);
    half(0, 0) = 0.5;
    half(3, 3) = 0.5;
    CHECK(purity(half) == doctest::Approx(0.5).epsilon(1e-15));
    const Vector4c bell = bell_state(BellTarget::PhiPlus);
    CHECK(purity(Matrix(bell * bell.adjoint())) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("state invariants are enforced") {
    Vector bad = Vector::Ones(4);
    CHECK_THROWS_AS(QuantumState::pure(SpaceTag::two_qubits(), bad), Error);
    Matrix notherm = Matrix::Identity(4, 4) / 4.0;
    notherm(0, 1) = complexd(0.0, 0.5);
    CHECK_THROWS_AS(QuantumState::density(SpaceTag::two_qubits(), notherm), Error);
}
