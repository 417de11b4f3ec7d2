#include "doctest.h"

#include <random>

#include "hamsim/hamiltonian.hpp"
#include "oracles.hpp"

using namespace hamsim;
using oracle::Mat;

namespace {

const cplx kI(0, 1);

/// Dense periodic central difference by index loops.
Mat central_periodic(int n, double l) {
    const int N = 1 << n;
    Mat m = Mat::Zero(N, N);
    for (int j = 0; j < N; ++j) {
        m(j, (j + 1) % N) += 0.5 / l;
        m(j, (j + N - 1) % N) -= 0.5 / l;
    }
    return m;
}

/// Dirichlet-padded forward and backward differences.
Mat forward_dirichlet(int n, double l) {
    const int N = 1 << n;
    Mat m = Mat::Zero(N, N);
    for (int j = 0; j < N; ++j) {
        m(j, j) = -1.0 / l;
        if (j + 1 < N)
            m(j, j + 1) = 1.0 / l;
    }
    return m;
}

Mat backward_dirichlet(int n, double l) {
    const int N = 1 << n;
    Mat m = Mat::Zero(N, N);
    for (int j = 0; j < N; ++j) {
        m(j, j) = 1.0 / l;
        if (j > 0)
            m(j, j - 1) = -1.0 / l;
    }
    return m;
}

PDEProblem advection(int d, int n, std::vector<double> v, BoundaryCondition bc = BoundaryCondition::Periodic) {
    PDEProblem p;
    p.equation = Equation::Advection;
    p.d = d;
    p.n = n;
    p.velocity = std::move(v);
    p.bc = bc;
    return p;
}

PDEProblem wave(int d, int n, double c, BoundaryCondition bc) {
    PDEProblem p;
    p.equation = Equation::Wave;
    p.d = d;
    p.n = n;
    p.speed = c;
    p.bc = bc;
    return p;
}

PDEProblem generic(int d, int n, double gamma, std::vector<double> eta, std::vector<double> lambda) {
    PDEProblem p;
    p.equation = Equation::GenericShift;
    p.d = d;
    p.n = n;
    p.gamma = gamma;
    p.eta = std::move(eta);
    p.lambda = std::move(lambda);
    return p;
}

} // namespace

TEST_CASE("problem validation") {
    CHECK_NOTHROW(check_problem(advection(1, 3, {1.0})));
    CHECK_THROWS(check_problem(advection(2, 3, {1.0})));
    CHECK_THROWS(check_problem(advection(4, 1, {1, 1, 1, 1})));
    auto p = advection(1, 3, {1.0});
    p.l = 0;
    CHECK_THROWS(check_problem(p));
    p = advection(1, 3, {1.0});
    p.tau = 0.3;
    p.total_time = 1.0;
    CHECK_THROWS(num_steps(p));
    p.tau = 0.1;
    p.total_time = 20.0;
    CHECK(num_steps(p) == 200);
    CHECK_THROWS(check_problem(wave(3, 2, 1.0, BoundaryCondition::Periodic)));
    CHECK_THROWS(check_problem(wave(1, 2, 1.0, BoundaryCondition::Neumann)));
    CHECK(num_qubits(wave(1, 4, 1, BoundaryCondition::Dirichlet)) == 5);
    CHECK(num_qubits(wave(2, 6, 1, BoundaryCondition::Periodic)) == 13);
    CHECK(num_qubits(wave(3, 2, 1, BoundaryCondition::Dirichlet)) == 8);
    CHECK(num_qubits(advection(2, 6, {1, 1})) == 12);
}

TEST_CASE("initial states") {
    auto p = advection(2, 2, {1, 1});
    p.initial = UniformWindow{{{1, 3}, {0, 2}}};
    const auto psi = initial_state(p);
    // nodes (j1, j2) with j1 in {1,2}, j2 in {0,1}; index = j1·4 + j2
    for (Index i = 0; i < 16; ++i) {
        const bool in = (i / 4 >= 1 && i / 4 < 3) && (i % 4 < 2);
        CHECK(std::abs(psi[i] - cplx(in ? 0.5 : 0.0)) < 1e-15);
    }
    p.initial = UniformWindow{{{3, 3}, {0, 2}}};
    CHECK_THROWS(initial_state(p));
    p.initial = BasisState{16};
    CHECK_THROWS(initial_state(p));
    p.initial = ExplicitAmplitudes{std::vector<cplx>(16, 0.3)};
    CHECK_THROWS(initial_state(p));
    p.initial = ExplicitAmplitudes{std::vector<cplx>(16, 0.25)};
    CHECK(initial_state(p).size() == 16);
}

TEST_CASE("advection Hamiltonian") {
    SUBCASE("d=1 periodic is -i D_central and Hermitian") {
        const auto h = advection_hamiltonian(advection(1, 2, {1.0}));
        CHECK(h.is_hermitian());
        CHECK(oracle::max_abs(oracle::to_mat(h) + kI * central_periodic(2, 1.0)) < 1e-15);
    }
    SUBCASE("zero velocity gives the zero operator") {
        for (int n = 1; n <= 4; ++n)
            CHECK(advection_hamiltonian(advection(1, n, {0.0})).is_zero());
    }
    SUBCASE("d=2 matches a Kronecker assembly") {
        const auto h = advection_hamiltonian(advection(2, 2, {1.0, 1.0}));
        const Mat D = central_periodic(2, 1.0);
        const Mat ref = -kI * (oracle::kron(D, oracle::eye(2)) + oracle::kron(oracle::eye(2), D));
        CHECK(oracle::max_abs(oracle::to_mat(h) - ref) < 1e-15);
    }
    SUBCASE("linear in the velocity") {
        for (double k : {2.0, -0.5, 3.25}) {
            const auto h1 = advection_hamiltonian(advection(2, 3, {0.7, -1.1}));
            const auto hk = advection_hamiltonian(advection(2, 3, {0.7 * k, -1.1 * k}));
            CHECK(hk.approx_equal(h1 * k));
        }
    }
    SUBCASE("Neumann is rejected") {
        CHECK_THROWS(advection_hamiltonian(advection(1, 3, {1.0}, BoundaryCondition::Neumann)));
    }
}

TEST_CASE("wave Hamiltonian") {
    SUBCASE("d=1 mixed is sigma01 x D+ - sigma10 x D-") {
        const auto h = wave_hamiltonian(wave(1, 2, 1.0, BoundaryCondition::Dirichlet));
        const Mat ref = oracle::kron(oracle::ket_bra(0, 1), forward_dirichlet(2, 1.0)) -
                        oracle::kron(oracle::ket_bra(1, 0), backward_dirichlet(2, 1.0));
        CHECK(oracle::max_abs(oracle::to_mat(h) - ref) < 1e-15);
        CHECK(h.is_hermitian());
    }
    SUBCASE("zero speed") { CHECK(wave_hamiltonian(wave(1, 3, 0.0, BoundaryCondition::Dirichlet)).is_zero()); }
    SUBCASE("d=2 periodic matches term-by-term assembly") {
        const auto h = wave_hamiltonian(wave(2, 2, 1.0, BoundaryCondition::Periodic));
        REQUIRE(h.num_qubits() == 5);
        const Mat D = central_periodic(2, 1.0);
        const Mat D1 = oracle::kron(D, oracle::eye(2)), D2 = oracle::kron(oracle::eye(2), D);
        const Mat ref = oracle::kron(oracle::ket_bra(0, 1), D1 - kI * D2) -
                        oracle::kron(oracle::ket_bra(1, 0), D1 + kI * D2);
        CHECK(oracle::max_abs(oracle::to_mat(h) - ref) < 1e-15);
        CHECK(h.is_hermitian());
    }
    SUBCASE("the square recovers the Laplacian on each block") {
        // H² = -c² diag(D+D-, D-D+) for the mixed encoding.
        const int n = 3;
        const double c = 1.5, l = 0.5;
        auto p = wave(1, n, c, BoundaryCondition::Dirichlet);
        p.l = l;
        const Mat h = oracle::to_mat(wave_hamiltonian(p));
        const Mat Dp = forward_dirichlet(n, l), Dm = backward_dirichlet(n, l);
        const Mat ref = -c * c *
                        (oracle::kron(oracle::ket_bra(0, 0), Dp * Dm) + oracle::kron(oracle::ket_bra(1, 1), Dm * Dp));
        CHECK(oracle::max_abs(h * h - ref) < 1e-12);
    }
    SUBCASE("every supported configuration is Hermitian") {
        for (int n = 1; n <= 3; ++n) {
            for (int d = 1; d <= 3; ++d)
                CHECK(wave_hamiltonian(wave(d, n, 0.8, BoundaryCondition::Dirichlet)).is_hermitian());
            for (int d = 1; d <= 2; ++d)
                CHECK(wave_hamiltonian(wave(d, n, 0.8, BoundaryCondition::Periodic)).is_hermitian());
        }
        CHECK(wave_hamiltonian(wave(3, 2, 1.0, BoundaryCondition::Dirichlet)).num_qubits() == 8);
    }
}

TEST_CASE("generic shift Hamiltonian") {
    SUBCASE("n=1 is X") {
        const auto h = generic_shift_hamiltonian(generic(1, 1, 1.0, {1.0}, {0.0}));
        CHECK(h.approx_equal(local::pauli_x(), 0.0));
    }
    SUBCASE("lambda=-pi/2 with gamma=1/2 is the advection essential part") {
        const auto h = generic_shift_hamiltonian(generic(1, 2, 0.5, {1.0}, {-oracle::kPi / 2}));
        const Mat ref = -kI * (oracle::shift_minus(2) - oracle::shift_minus(2).adjoint()) / 2.0;
        CHECK(oracle::max_abs(oracle::to_mat(h) - ref) < 1e-15);
    }
    SUBCASE("d=2 matches a sum of Kronecker products") {
        const double eta[] = {1.0, 2.0}, lam[] = {0.0, oracle::kPi / 3};
        const auto h = generic_shift_hamiltonian(generic(2, 2, 1.0, {1.0, 2.0}, {0.0, oracle::kPi / 3}));
        Mat ref = Mat::Zero(16, 16);
        for (int a = 0; a < 2; ++a)
            for (int j = 1; j <= 2; ++j) {
                const Mat t = eta[a] * oracle::shift_term(2, j, lam[a]);
                ref += a == 0 ? oracle::kron(t, oracle::eye(2)) : oracle::kron(oracle::eye(2), t);
            }
        CHECK(oracle::max_abs(oracle::to_mat(h) - ref) < 1e-15);
    }
    SUBCASE("plus the wrap-around term equals periodic advection") {
        for (int n = 1; n <= 5; ++n)
            for (double v : {1.0, -0.6})
                for (double l : {1.0, 0.5}) {
                    auto g = generic(1, n, 1.0 / (2 * l), {v}, {-oracle::kPi / 2});
                    auto a = advection(1, n, {v});
                    a.l = g.l = l;
                    const auto wrap = (kron_power(local::sigma10(), n) - kron_power(local::sigma01(), n)) *
                                      (-kI * v / (2 * l));
                    CHECK((generic_shift_hamiltonian(g) + wrap).approx_equal(advection_hamiltonian(a)));
                }
    }
    SUBCASE("Hermitian for random parameters") {
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u(-3, 3);
        for (int trial = 0; trial < 20; ++trial) {
            const int d = 1 + trial % 3;
            std::vector<double> eta(d), lam(d);
            for (int a = 0; a < d; ++a) {
                eta[a] = u(rng);
                lam[a] = u(rng);
            }
            CHECK(generic_shift_hamiltonian(generic(d, 2, u(rng), eta, lam)).is_hermitian());
        }
    }
    CHECK_THROWS(generic_shift_hamiltonian(advection(1, 2, {1.0})));
}

TEST_CASE("exact propagator") {
    CHECK(oracle::max_abs(exact_propagator(QubitOperator(2), 1.7) - oracle::eye(2)) < 1e-15);
    const Mat z = exact_propagator(local::pauli_z(), oracle::kPi);
    CHECK(oracle::max_abs(z + oracle::eye(1)) < 1e-15);

    const auto h = advection_hamiltonian(advection(1, 3, {1.0}));
    const Mat u = exact_propagator(h, 0.1);
    CHECK(oracle::max_abs(u.adjoint() * u - oracle::eye(3)) < 1e-13);
    CHECK(oracle::max_abs(u - oracle::expm_taylor(oracle::to_mat(h), 0.1)) < 1e-8);

    SUBCASE("group property for random Hermitian H") {
        std::mt19937_64 rng(4);
        for (int trial = 0; trial < 5; ++trial) {
            const auto a = oracle::random_operator(3, 0.5, rng);
            const auto herm = a + a.adjoint();
            const SpectralPropagator prop(herm);
            for (auto [t1, t2] : {std::pair{0.1, 0.3}, {0.7, -0.2}, {1.5, 2.5}})
                CHECK(oracle::max_abs(prop.matrix(t1) * prop.matrix(t2) - prop.matrix(t1 + t2)) < 1e-9);
            CHECK(oracle::max_abs(prop.matrix(0.4) - exact_propagator(herm, 0.4)) < 1e-12);
        }
    }
    SUBCASE("apply matches the matrix") {
        std::mt19937_64 rng(8);
        const auto psi = oracle::random_state(3, rng);
        const SpectralPropagator prop(h);
        const auto out = prop.apply(0.37, psi);
        const oracle::Vec ref = prop.matrix(0.37) * Eigen::Map<const oracle::Vec>(psi.data(), 8);
        for (int i = 0; i < 8; ++i)
            CHECK(std::abs(out[i] - ref(i)) < 1e-14);
    }
}

TEST_CASE("sparse Taylor evolution agrees with the eigendecomposition") {
    std::mt19937_64 rng(12);
    const PDEProblem problems[] = {advection(1, 6, {1.0}), wave(1, 5, 1.0, BoundaryCondition::Dirichlet),
                                   wave(2, 3, 1.0, BoundaryCondition::Periodic), generic(2, 4, 0.7, {1, -2}, {0.2, 1})};
    for (const auto& p : problems) {
        const auto h = hamiltonian(p);
        const auto psi = oracle::random_state(h.num_qubits(), rng);
        for (double t : {0.05, 1.0, 7.5}) {
            const auto a = taylor_evolve(h, t, psi);
            const auto b = SpectralPropagator(h).apply(t, psi);
            double dev = 0;
            for (std::size_t i = 0; i < a.size(); ++i)
                dev = std::max(dev, std::abs(a[i] - b[i]));
            CAPTURE(to_string(p.equation));
            CAPTURE(t);
            CHECK(dev < 1e-11);
        }
    }
}
