#include "naqs/densitymatrix.hpp"
#include "naqs/statevector.hpp"
#include "test_util.hpp"

#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>

using namespace naqs;

namespace {

Eigen::MatrixXcd to_eigen(const DensityMatrix& d) {
    const Eigen::Index dim = Eigen::Index(d.dim());
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            m(r, c) = d.entry(std::size_t(r), std::size_t(c));
        }
    }
    return m;
}

} // namespace

TEST_CASE("initial density matrix is |0..0><0..0|") {
    DensityMatrix d1(1);
    CHECK(d1.entry(0, 0) == cplx(1, 0));
    CHECK(d1.entry(0, 1) == cplx(0, 0));
    CHECK(d1.entry(1, 0) == cplx(0, 0));
    CHECK(d1.entry(1, 1) == cplx(0, 0));

    DensityMatrix d2(2);
    CHECK(d2.dim() == 4);
    CHECK(d2.entry(0, 0) == cplx(1, 0));
    CHECK(d2.trace() == doctest::Approx(1.0));
}

TEST_CASE("qubit guard at n = 14") {
    CHECK_THROWS_AS(DensityMatrix(15), ContractError);
    CHECK_THROWS_AS(DensityMatrix(0), ContractError);
}

TEST_CASE("X maps |0><0| to |1><1|") {
    DensityMatrix d(1);
    d.apply(GateOp{GateKind::X, {0}, {}});
    CHECK(std::abs(d.entry(1, 1) - cplx(1, 0)) <= 1e-15);
    CHECK(std::abs(d.entry(0, 0)) <= 1e-15);
}

TEST_CASE("H gives the uniform pure projector") {
    DensityMatrix d(1);
    d.apply(GateOp{GateKind::H, {0}, {}});
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            CHECK(std::abs(d.entry(r, c) - cplx(0.5, 0)) <= 1e-15);
        }
    }
}

TEST_CASE("unitary evolution matches the state-vector outer product") {
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 3); // up to 4 qubits here
        const Circuit c = test::random_circuit(rng, n, 25);
        DensityMatrix d(n);
        d.run(c);
        const Eigen::VectorXcd psi = test::to_eigen(sv_run(c));
        const Eigen::MatrixXcd outer = psi * psi.adjoint();
        CHECK((to_eigen(d) - outer).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK(std::abs(d.trace() - 1.0) <= 1e-10);
        CHECK(d.hermiticity_residual() <= 1e-10);
    }
}

TEST_CASE("identity channel leaves rho unchanged") {
    DensityMatrix d(2);
    d.apply(GateOp{GateKind::H, {0}, {}});
    d.apply(GateOp{GateKind::CX, {0, 1}, {}});
    const Eigen::MatrixXcd before = to_eigen(d);
    d.apply_channel(identity_channel(1), {0});
    d.apply_channel(identity_channel(2), {0, 1});
    CHECK((to_eigen(d) - before).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("depolarizing channel contracts <Z> by 1 - 4p/3") {
    DensityMatrix d(1);
    d.apply_channel(depolarizing(0.15, 1), {0});
    CHECK(d.expectation(PauliString("Z")) == doctest::Approx(0.8).epsilon(1e-12));

    DensityMatrix d2(1);
    d2.apply_channel(depolarizing(0.3, 1), {0});
    CHECK(d2.expectation(PauliString("Z")) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("amplitude damping with gamma = 1 fully relaxes |1>") {
    DensityMatrix d(1);
    d.apply(GateOp{GateKind::X, {0}, {}});
    d.apply_channel(amplitude_damping(1.0), {0});
    CHECK(std::abs(d.entry(0, 0) - cplx(1, 0)) <= 1e-12);
    CHECK(std::abs(d.entry(1, 1)) <= 1e-12);
}

TEST_CASE("channel application matches the dense Kraus sum") {
    Rng rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3;
        const Circuit c = test::random_circuit(rng, n, 10);
        DensityMatrix d(n);
        d.run(c);
        const Eigen::MatrixXcd rho_before = to_eigen(d);

        const double p = rng.uniform(0.0, 1.0);
        const bool two_qubit = (rng.next_u64() & 1) != 0;
        const KrausChannel ch = depolarizing(p, two_qubit ? 2 : 1);
        std::vector<int> qubits = two_qubit ? std::vector<int>{2, 0} : std::vector<int>{1};
        d.apply_channel(ch, qubits);

        Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(rho_before.rows(), rho_before.cols());
        for (const auto& k : ch.kraus) {
            const Eigen::MatrixXcd kf = test::embed_unitary(k, qubits, n);
            expected += kf * rho_before * kf.adjoint();
        }
        CHECK((to_eigen(d) - expected).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("trace and hermiticity survive a long mixed schedule") {
    Rng rng(47);
    const int n = 3;
    DensityMatrix d(n);
    int ops = 0;
    while (ops < 10000) {
        const Circuit c = test::random_circuit(rng, n, 20);
        d.run(c);
        ops += 20;
        d.apply_channel(depolarizing(rng.uniform(0.0, 0.2), 1),
                        {static_cast<int>(rng.next_u64() % n)});
        d.apply_channel(thermal_relaxation(50.0, 30.0, rng.uniform(0.0, 500.0)),
                        {static_cast<int>(rng.next_u64() % n)});
        ops += 2;
    }
    CHECK(std::abs(d.trace() - 1.0) <= 1e-10);
    CHECK(d.hermiticity_residual() <= 1e-10);
    CHECK(d.purity() >= std::pow(2.0, -n) - 1e-9);
    CHECK(d.purity() <= 1.0 + 1e-9);
}

TEST_CASE("a channel on a pure state cannot raise purity") {
    Rng rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2;
        DensityMatrix d(n);
        d.run(test::random_circuit(rng, n, 15));
        CHECK(d.purity() == doctest::Approx(1.0).epsilon(1e-10));
        const KrausChannel ch = (trial % 2) ? depolarizing(rng.uniform(0.0, 1.0), 1)
                                            : thermal_relaxation(70.0, 40.0, 200.0);
        d.apply_channel(ch, {static_cast<int>(rng.next_u64() % n)});
        CHECK(d.purity() <= 1.0 + 1e-10);
    }
}

TEST_CASE("probabilities extract the diagonal") {
    DensityMatrix d(1);
    auto p = d.probabilities();
    CHECK(p[0] == doctest::Approx(1.0));
    CHECK(p[1] == doctest::Approx(0.0));

    d.apply_channel(depolarizing(0.75, 1), {0}); // maximally mixed at p = 3/4
    p = d.probabilities();
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-12));

    Circuit bell(2);
    bell.h(0).cx(0, 1);
    DensityMatrix b(2);
    b.run(bell);
    const auto bp = b.probabilities();
    CHECK(bp[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(bp[1] == doctest::Approx(0.0));
    CHECK(bp[2] == doctest::Approx(0.0));
    CHECK(bp[3] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("maximally mixed state has zero magnetization") {
    DensityMatrix d(1);
    d.apply_channel(depolarizing(0.75, 1), {0});
    CHECK(d.expectation(PauliString("Z")) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d.expectation(PauliString("X")) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d.expectation(PauliString("Y")) == doctest::Approx(0.0).epsilon(1e-12));
}

#ifdef _OPENMP
TEST_CASE("dm results are bit-identical for any worker count") {
    Rng rng(97);
    const Circuit c = test::random_circuit(rng, 5, 30, 2);
    const KrausChannel ch = thermal_relaxation(55.0, 35.0, 120.0);
    const int saved = omp_get_max_threads();

    omp_set_num_threads(1);
    DensityMatrix serial(5);
    serial.run(c);
    serial.apply_channel(ch, {2});

    omp_set_num_threads(saved > 1 ? saved : 2);
    DensityMatrix parallel(5);
    parallel.run(c);
    parallel.apply_channel(ch, {2});
    omp_set_num_threads(saved);

    for (std::size_t r = 0; r < serial.dim(); ++r) {
        for (std::size_t col = 0; col < serial.dim(); ++col) {
            REQUIRE(serial.entry(r, col) == parallel.entry(r, col));
        }
    }
}
#endif

TEST_CASE("dm expectation matches the dense trace oracle") {
    Rng rng(59);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3;
        DensityMatrix d(n);
        d.run(test::random_circuit(rng, n, 12));
        d.apply_channel(depolarizing(0.1, 1), {0});
        const char letters[] = {'I', 'X', 'Y', 'Z'};
        std::string word;
        for (int i = 0; i < n; ++i) word.push_back(letters[rng.next_u64() % 4]);
        const PauliString p(word, rng.uniform(-2.0, 2.0));
        const cplx ref = (pauli_dense(p) * to_eigen(d)).trace();
        CHECK(d.expectation(p) == doctest::Approx(ref.real()).epsilon(1e-10));
    }
}
