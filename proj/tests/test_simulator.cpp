#include "doctest.h"

#include <numbers>
#include <random>

#include "hamsim/hamiltonian.hpp"
#include "hamsim/statevector.hpp"
#include "oracles.hpp"

using namespace hamsim;
using oracle::Mat;
using oracle::Vec;

namespace {

Vec as_vec(const StateVector& s) {
    return Eigen::Map<const Vec>(s.amplitudes().data(), Eigen::Index(s.amplitudes().size()));
}

double max_diff(const StateVector& a, const Vec& b) { return (as_vec(a) - b).cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("state construction") {
    const StateVector zero(3);
    CHECK(zero.amplitudes()[0] == cplx(1.0));
    CHECK(zero.norm() == 1.0);
    CHECK(StateVector::basis(3, 5).amplitudes()[5] == cplx(1.0));
    CHECK_THROWS(StateVector::basis(3, 8));
    CHECK_THROWS(StateVector::from_amplitudes({1.0, 1.0}));
    CHECK_THROWS(StateVector::from_amplitudes({1.0, 0.0, 0.0}));
    CHECK_NOTHROW(StateVector::from_amplitudes({std::sqrt(0.5), cplx(0, std::sqrt(0.5))}));
}

TEST_CASE("apply") {
    SUBCASE("empty circuit leaves the state alone") {
        std::mt19937_64 rng(1);
        const auto s = StateVector::from_amplitudes(oracle::random_state(3, rng));
        CHECK(apply(Circuit(3), s).amplitudes() == s.amplitudes());
    }
    SUBCASE("H on |0>") {
        const auto s = apply(Circuit(1).h(0), StateVector(1));
        CHECK(std::abs(s.amplitudes()[0] - std::sqrt(0.5)) < 1e-15);
        CHECK(std::abs(s.amplitudes()[1] - std::sqrt(0.5)) < 1e-15);
    }
    SUBCASE("a Trotter step matches the dense unitary on a random state") {
        std::mt19937_64 rng(2);
        const auto psi = oracle::random_state(3, rng);
        const auto c = trotter_step_first(3, 0.1, 0.0);
        const Vec ref = oracle::circuit_matrix(c) * Eigen::Map<const Vec>(psi.data(), 8);
        CHECK(max_diff(apply(c, StateVector::from_amplitudes(psi)), ref) < 1e-10);
    }
    SUBCASE("qubit-count mismatch") { CHECK_THROWS(apply(Circuit(2), StateVector(3))); }
}

TEST_CASE("gate identities on random states") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const int q = 1 + trial % 6;
        const auto s = StateVector::from_amplitudes(oracle::random_state(q, rng));
        const int t = int(rng() % q);
        CHECK(max_diff(apply(Circuit(q).h(t).h(t), s), as_vec(s)) < 1e-12);
        CHECK(max_diff(apply(Circuit(q).x(t).x(t), s), as_vec(s)) < 1e-12);
        CHECK(max_diff(apply(Circuit(q).rz(t, 0.3).rz(t, 0.9), s), as_vec(apply(Circuit(q).rz(t, 1.2), s))) < 1e-12);
        if (q > 1) {
            const int c = (t + 1) % q;
            CHECK(max_diff(apply(Circuit(q).cx(c, t).cx(c, t), s), as_vec(s)) < 1e-12);
        }
        // norm is preserved gate by gate
        StateVector w = s;
        const Circuit step = trotter_step_second(q, 0.4, 0.3);
        for (const auto& g : step.gates()) {
            Circuit one(q);
            one.add(g);
            apply_inplace(one, w);
            CHECK(w.norm() == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("apply distributes over concatenation") {
    std::mt19937_64 rng(4);
    const auto s = StateVector::from_amplitudes(oracle::random_state(4, rng));
    const auto c1 = trotter_step_first(4, 0.2, 0.1), c2 = trotter_step_second(4, -0.3, 1.0);
    Circuit both(4);
    both.append(c1).append(c2);
    CHECK(max_diff(apply(c2, apply(c1, s)), as_vec(apply(both, s))) < 1e-13);
}

TEST_CASE("evolve") {
    std::mt19937_64 rng(5);
    const auto s0 = StateVector::from_amplitudes(oracle::random_state(3, rng));
    const auto step = trotter_step_first(3, 0.1, 0.3);

    SUBCASE("single step") {
        const auto tr = evolve(step, s0, 1, 1);
        CHECK(tr.steps == std::vector<int>{0, 1});
        CHECK(max_diff(tr.states[1], as_vec(apply(step, s0))) < 1e-15);
    }
    SUBCASE("recording cadence keeps the final step") {
        std::vector<int> seen;
        const auto tr = evolve(step, s0, 7, 3, [&](int k, const StateVector&) { seen.push_back(k); });
        CHECK(tr.steps == std::vector<int>{0, 3, 6, 7});
        CHECK(seen == tr.steps);
    }
    SUBCASE("a propagator-like step composes into the exact propagator") {
        // Build a circuit whose unitary is exactly exp(-iHτ) for a one-term H.
        const PDEProblem p = [] {
            PDEProblem g;
            g.equation = Equation::GenericShift;
            g.n = 1;
            g.eta = {1.0};
            g.lambda = {0.3};
            g.tau = 0.1;
            return g;
        }();
        const auto tr = evolve(trotter_step_first(1, 0.1, 0.3), StateVector(1), 50, 0);
        const Vec ref = exact_propagator(generic_shift_hamiltonian(p), 5.0).col(0);
        CHECK(max_diff(tr.states.back(), ref) < 1e-9);
    }
    SUBCASE("Trotterized advection tracks the exact solution within the accumulated bound") {
        PDEProblem p;
        p.equation = Equation::Advection;
        p.n = 7;
        p.velocity = {1.0};
        p.tau = 0.1;
        p.total_time = 20;
        p.initial = UniformWindow{{{64, 128}}};
        const auto psi0 = StateVector::from_amplitudes(initial_state(p));
        const auto tr = evolve(step_circuit(p), psi0, 200, 100);
        REQUIRE(tr.steps == std::vector<int>{0, 100, 200});
        const SpectralPropagator prop(advection_hamiltonian(p));
        for (std::size_t i = 0; i < tr.steps.size(); ++i) {
            const auto ex = prop.apply(tr.steps[i] * 0.1, psi0.amplitudes());
            const double dev = max_diff(tr.states[i], Eigen::Map<const Vec>(ex.data(), 128));
            CHECK(dev <= tr.steps[i] * 0.00875 + 1e-12);
            CHECK(dev < 0.1);
        }
    }
    CHECK_THROWS(evolve(step, s0, 0, 1));
}

TEST_CASE("expectation") {
    const Observable ke = kinetic_energy_observable(3);
    // |0>|0>|1>: all weight in the time-derivative block
    CHECK(expectation(StateVector::basis(3, 1), ke) == 1.0);
    CHECK(expectation(StateVector::basis(3, 4), ke) == 0.0);
    std::mt19937_64 rng(6);
    const auto s = StateVector::from_amplitudes(oracle::random_state(3, rng));
    CHECK(expectation(s, Observable(QubitOperator::identity(3))) == doctest::Approx(1.0).epsilon(1e-14));
    // ½(Z+I) on the top qubit is the weight of the lower half of the indices
    double block0 = 0;
    for (int i = 0; i < 4; ++i)
        block0 += std::norm(s.amplitudes()[i]);
    CHECK(expectation(s, ke) == doctest::Approx(block0).epsilon(1e-14));
    const auto plus = apply(Circuit(1).h(0), StateVector(1));
    CHECK(std::abs(expectation(plus, Observable(local::pauli_z()))) < 1e-15);
    CHECK_THROWS(Observable(local::sigma01()));
}

TEST_CASE("shot sampling") {
    const Observable ke = kinetic_energy_observable(3);
    SUBCASE("deterministic outcome has zero width") {
        const auto e = sample_observable(StateVector::basis(3, 1), ke, 1000, 1);
        CHECK(e.estimate == 1.0);
        CHECK(e.ci95 == 0.0);
    }
    SUBCASE("fixed seed reproduces, different seed differs") {
        std::mt19937_64 rng(7);
        const auto s = StateVector::from_amplitudes(oracle::random_state(3, rng));
        const auto a = sample_observable(s, ke, 4000, 42), b = sample_observable(s, ke, 4000, 42);
        CHECK(a.estimate == b.estimate);
        CHECK(a.ci95 == b.ci95);
        CHECK(sample_observable(s, ke, 4000, 43).estimate != a.estimate);
    }
    SUBCASE("large-sample estimate is within 3 ci95 of the exact value") {
        std::mt19937_64 rng(8);
        for (int trial = 0; trial < 5; ++trial) {
            const auto s = StateVector::from_amplitudes(oracle::random_state(3, rng));
            const auto e = sample_observable(s, ke, 1000000, 100 + trial);
            CHECK(std::abs(e.estimate - expectation(s, ke)) <= 3 * e.ci95);
            CHECK(e.ci95 < 2e-3);
        }
    }
    SUBCASE("basis change measures X") {
        const auto plus = apply(Circuit(1).h(0), StateVector(1));
        const auto e = sample_observable(plus, Observable(local::pauli_z()), 500, 3, Circuit(1).h(0));
        CHECK(e.estimate == 1.0);
    }
    SUBCASE("errors") {
        CHECK_THROWS(sample_observable(StateVector(3), ke, 0, 1));
        CHECK_THROWS(sample_observable(StateVector(1), Observable(local::pauli_x()), 10, 1));
        CHECK_THROWS(sample_observable(StateVector(2), ke, 10, 1));
    }
}

TEST_CASE("materialize") {
    CHECK(oracle::max_abs(materialize(Circuit(2)) - oracle::eye(2)) == 0.0);
    CHECK_THROWS(materialize(Circuit(13)));
    const auto c = Circuit(3).h(2).mcrz({0, 2}, 1, 0.7).cx(1, 0);
    CHECK(oracle::max_abs(materialize(c) - oracle::circuit_matrix(c)) < 1e-14);
}
