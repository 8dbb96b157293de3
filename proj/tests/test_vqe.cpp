#include "naqs/vqe.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace naqs;

TEST_CASE("ansatz parameter counting and structure") {
    const AnsatzSpec a{4, 3};
    CHECK(a.param_count() == 16);
    const Circuit c = build_ansatz_circuit(a, std::vector<double>(16, 0.0));
    // 4 initial RY + 3 layers x (3 CX + 4 RY)
    CHECK(c.size() == 4 + 3 * (3 + 4));
    CHECK_THROWS_AS(build_ansatz_circuit(a, std::vector<double>(15, 0.0)), ContractError);
}

TEST_CASE("all-zero parameters on a pure-X Hamiltonian give zero energy") {
    Hamiltonian h;
    h.n = 3;
    for (int i = 0; i < 3; ++i) {
        std::string word(3, 'I');
        word[static_cast<std::size_t>(i)] = 'X';
        h.add(word, -1.0);
    }
    const AnsatzSpec a{3, 2};
    const double e = vqe_energy(std::vector<double>(a.param_count(), 0.0), a, h);
    CHECK(e == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("single-qubit RY ansatz traces cos(theta)") {
    Hamiltonian h;
    h.add("Z", 1.0);
    const AnsatzSpec a{1, 1};
    for (double theta : {0.0, 0.5, M_PI / 2, M_PI, 2.2}) {
        // both RY columns act on the same qubit; split the angle across them
        const double e = vqe_energy({theta, 0.0}, a, h);
        CHECK(e == doctest::Approx(std::cos(theta)).epsilon(1e-12));
    }
    CHECK(vqe_energy({M_PI, 0.0}, a, h) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("sampled energies agree with exact within 3 sigma per term") {
    const Hamiltonian h = build_tfim_hamiltonian(3, 1.0, 0.7);
    const AnsatzSpec a{3, 2};
    Rng rng(83);
    std::vector<double> params(static_cast<std::size_t>(a.param_count()));
    for (auto& p : params) p = rng.uniform(-1.0, 1.0);

    const double exact = vqe_energy(params, a, h);
    const std::uint64_t shots = 1000000;
    const double sampled = vqe_energy(params, a, h, EnergyMode::sampled(shots, 17));
    // each |coeff| = 1 term has per-shot variance <= 1, so the energy's
    // 3 sigma is bounded by 3 sqrt(terms / shots)
    const double bound = 3.0 * std::sqrt(static_cast<double>(h.terms.size()) /
                                         static_cast<double>(shots));
    CHECK(std::abs(sampled - exact) <= bound);

    CHECK(vqe_energy(params, a, h, EnergyMode::sampled(shots, 17)) == sampled);
}

TEST_CASE("two-spin classical Ising reaches its ground state") {
    // J=1, h=0: ground energy -1 at a Z-aligned product state
    VqeOptions opts;
    opts.layers = 1;
    opts.max_evals = 200;
    opts.seed = 5;
    const auto r = run_vqe(2, 1.0, 0.0, opts);
    CHECK(r.best_energy <= -0.999);
}

TEST_CASE("n=4 vqe reaches 2% of the dense ground energy in 500 evals") {
    const double e0 = ground_energy(build_tfim_hamiltonian(4, 1.0, 1.0));
    VqeOptions opts;
    opts.layers = 3;
    opts.max_evals = 500;
    opts.seed = 2;
    const auto r = run_vqe(4, 1.0, 1.0, opts);
    CHECK(r.iterations <= 500);
    CHECK(std::abs((r.best_energy - e0) / e0) <= 0.02);

    // variational bound: no exact-mode evaluation dips below E0
    for (double e : r.trace) CHECK(e >= e0 - 1e-9);
}

TEST_CASE("vqe runs are deterministic") {
    VqeOptions opts;
    opts.layers = 2;
    opts.max_evals = 120;
    opts.seed = 9;
    const auto a = run_vqe(3, 1.0, 1.0, opts);
    const auto b = run_vqe(3, 1.0, 1.0, opts);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) REQUIRE(a.trace[i] == b.trace[i]);
    CHECK(a.best_params == b.best_params);
}

TEST_CASE("noise lifts the optimized energy") {
    DeviceNoiseModel m = DeviceNoiseModel::zero_noise(3);
    for (auto& q : m.qubits) {
        q.t1_us = 60.0;
        q.t2_us = 40.0;
    }
    m.default_1q = DeviceNoiseModel::GateParams{"default_1q", {}, 0.002, 50.0};
    m.default_2q = DeviceNoiseModel::GateParams{"default_2q", {}, 0.015, 300.0};

    VqeOptions opts;
    opts.layers = 2;
    opts.max_evals = 250;
    opts.seed = 3;
    const auto clean = run_vqe(3, 1.0, 1.0, opts);
    const auto noisy = run_vqe(3, 1.0, 1.0, opts, m);
    CHECK(noisy.best_energy >= clean.best_energy);
}
