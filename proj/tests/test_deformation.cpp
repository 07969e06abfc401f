#include <doctest.h>

#include "sq7/deformation.hpp"

using namespace sq7;

TEST_CASE("normal frames verify orthonormality and the cross table") {
    for (OrbitCase c : all_orbit_cases()) {
        NormalFrame f = build_normal_frame(c);
        CHECK(f.frame_residual < 1e-9);
    }
    // L1: the paper's v-frame is (sqrt5/3){X0, X2, X3, X1} at the base point.
    NormalFrame l1 = build_normal_frame(OrbitCase::L1);
    const Sasakian& s = sasakian();
    Vec8 X0 = Vec8::Zero();
    X0[4] = 1;  // t(0,0,1,0) in C^4
    const double r5 = std::sqrt(5.0);
    CHECK((l1.V[0] - (r5 / 3) * X0).norm() < 1e-12);
    CHECK((l1.V[1] - (r5 / 3) * s.phi_tensor(2, l1.p0, X0)).norm() < 1e-9);
    CHECK((l1.V[2] - (r5 / 3) * s.phi_tensor(3, l1.p0, X0)).norm() < 1e-9);
    CHECK((l1.V[3] - (r5 / 3) * s.phi_tensor(1, l1.p0, X0)).norm() < 1e-9);
}

TEST_CASE("connection matrices match the printed displays") {
    for (OrbitCase c : all_orbit_cases()) {
        NormalFrame f = build_normal_frame(c);
        ConnectionData cd = connection_matrix(f);
        auto printed = printed_connection(c);
        for (int i = 0; i < 3; ++i)
            CHECK((cd.A[i] - printed[i]).cwiseAbs().maxCoeff() < 1e-9);
    }
    // L1 tangential part: (nabla~top_{e_i} e_j) = (5/3)[[0,-e3,e2],[e3,0,-e1],[-e2,e1,0]].
    NormalFrame f = build_normal_frame(OrbitCase::L1);
    ConnectionData cd = connection_matrix(f);
    // (k, j)-entries: coefficient of e_k in nabla~top_{e_i} e_j.
    Eigen::Matrix3d G1, G2, G3;
    G1 << 0, 0, 0, 0, 0, 5.0 / 3, 0, -5.0 / 3, 0;
    G2 << 0, 0, -5.0 / 3, 0, 0, 0, 5.0 / 3, 0, 0;
    G3 << 0, 5.0 / 3, 0, -5.0 / 3, 0, 0, 0, 0, 0;
    CHECK((cd.Gamma[0] - G1).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((cd.Gamma[1] - G2).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((cd.Gamma[2] - G3).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("assembled operator reduces to D_{lambda,mu}") {
    OperatorData l1 = assemble_D(OrbitCase::L1);
    CHECK(l1.lambda == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(l1.mu == doctest::Approx(-1.0).epsilon(1e-10));
    OperatorData l2 = assemble_D(OrbitCase::L2);
    CHECK(l2.lambda == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(l2.mu == doctest::Approx(1.0 / 3).epsilon(1e-10));
    OperatorData a2 = assemble_D(OrbitCase::A2);
    CHECK(a2.lambda == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(a2.mu == doctest::Approx(23.0 / 9).epsilon(1e-10));
    OperatorData a3 = assemble_D(OrbitCase::A3);
    CHECK(a3.lambda == doctest::Approx(141.0 / 19).epsilon(1e-10));
    CHECK(a3.mu == doctest::Approx(-1.0).epsilon(1e-10));
    OperatorData a1 = assemble_D(OrbitCase::A1);
    Eigen::Matrix4d expect =
        (1.0 / 9) * Eigen::Vector4d(1, 11, 21, 21).asDiagonal().toDenseMatrix();
    CHECK((a1.zeroth - expect).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("ladder operators") {
    LadderResult r0 = ladder_apply(LadderOp::Raise, {3, 3});
    CHECK(std::abs(r0.factor) == doctest::Approx(0.0));
    LadderResult r1 = ladder_apply(LadderOp::IE3, {6, 5});
    CHECK(r1.factor.real() == doctest::Approx(4.0));
    CHECK(r1.factor.imag() == doctest::Approx(0.0));
    LadderResult r2 = ladder_apply(LadderOp::Raise, {2, 1});
    CHECK(r2.f.n == 2);
    CHECK(r2.f.k == 2);
    CHECK(std::abs(r2.factor - Cx(0, 2) * std::sqrt(2.0)) < 1e-14);
    LadderResult r3 = ladder_apply(LadderOp::Lower, {2, 0});
    CHECK(std::abs(r3.factor) == doctest::Approx(0.0));
}

TEST_CASE("Gamma eigenvalues vanish exactly at the printed kernel modes") {
    CHECK(gamma_eigenvalue(OrbitCase::L2, 2, 1) == doctest::Approx(0.0));
    CHECK(gamma_eigenvalue(OrbitCase::A2, 6, 5) == doctest::Approx(0.0));
    CHECK(gamma_eigenvalue(OrbitCase::A3, 6, 4) == doctest::Approx(0.0));
    CHECK(gamma_eigenvalue(OrbitCase::A3, 0, 0) == doctest::Approx(0.0));
    CHECK(std::abs(gamma_eigenvalue(OrbitCase::L2, 2, 0)) > 0.1);
    CHECK(std::abs(gamma_eigenvalue(OrbitCase::A2, 6, 4)) > 0.1);
    CHECK(std::abs(gamma_eigenvalue(OrbitCase::A2, 4, 3)) > 0.1);

    // Exact-rational route agrees with the doubles.
    Rational ev = gamma_eigenvalue(Rational(5, 27), Rational(-5, 9), Rational(-1),
                                   Rational(23, 9), Rational(-1), 6, 5);
    CHECK(ev.is_zero());
}

TEST_CASE("kernel dimensions: analytic route and brute force oracle agree") {
    const int expected[4] = {4, 8, 16, 16};
    const OrbitCase cases[4] = {OrbitCase::L1, OrbitCase::L2, OrbitCase::A2, OrbitCase::A3};
    for (int i = 0; i < 4; ++i) {
        CHECK(kernel_dimension(cases[i], 8) == expected[i]);
        CHECK(brute_force_kernel(cases[i], 8) == expected[i]);
    }
    CHECK(kernel_dimension(OrbitCase::A1, 8) == 10);
    CHECK(brute_force_kernel(OrbitCase::A1, 8) == 10);
}

TEST_CASE("T^3 kernel modes") {
    T3KernelResult t = t3_kernel(3);
    CHECK(t.real_dimension == 10);
    CHECK(t.det_formula_ok);
    CHECK(t.modes.size() == 10);
    std::vector<std::array<int, 3>> expect = {{2, 0, 0},  {-2, 0, 0}, {0, 2, 0},  {0, -2, 0},
                                              {0, 0, 2},  {0, 0, -2}, {0, 1, 1},  {0, -1, -1},
                                              {0, 1, -1}, {0, -1, 1}};
    for (const auto& m : expect) {
        bool found = false;
        for (const auto& got : t.modes) found = found || got == m;
        CHECK(found);
    }
    CHECK_THROWS(t3_kernel(2));
}

TEST_CASE("trivial deformation ranks") {
    // A3 computes to 9: the left U(1)-circle preserves the orbit (see the
    // stabilizer test below), so the effective stabilizer is 4-dimensional,
    // exactly as for A2.  The published count of 10 misses this.
    const int expected[5] = {4, 8, 10, 9, 9};
    int i = 0;
    for (OrbitCase c : all_orbit_cases()) {
        TrivialDeformation td = trivial_deformation_rank(c, 40, 11);
        CHECK(td.rank == expected[i]);
        CHECK(td.sv_gap > 1e3);
        CHECK(td.d_residual < 1e-5);
        ++i;
    }
}

TEST_CASE("the left U(1)-circle stabilizes A2 and A3") {
    // rho(g . diag(l, lbar)) p0 = lbar rho(g) p0 at (0,0,1,0): scalar phases
    // move A3 into itself, so the induced Killing field i.z is tangent along
    // the orbit.
    const GroupAction& irr = action(ActionTag::SU2irr);
    std::mt19937_64 rng(19);
    std::normal_distribution<double> g(0.0, 1.0);
    const Sasakian& sas = sasakian();
    for (int it = 0; it < 20; ++it) {
        Eigen::Vector4d q;
        for (int i = 0; i < 4; ++i) q[i] = g(rng);
        q.normalize();
        Mat8 el = irr.element_su2(Cx(q[0], q[1]), Cx(q[2], q[3]));
        for (const Vec8& p0 : {to_real(Vec4c(0, 0, 1, 0)), to_real(Vec4c(1, 0, 0, 0))}) {
            Vec8 x = el * p0;
            // W(x) = i x is tangent to the orbit: it lies in the span of the
            // three generator fields.
            Eigen::MatrixXd T(8, 3);
            for (int i = 1; i <= 3; ++i) T.col(i - 1) = irr.generator_field(i, x);
            Vec8 w = sas.I(1) * x;
            Eigen::VectorXd c = T.colPivHouseholderQr().solve(w);
            CHECK((T * c - w).norm() < 1e-9);
        }
    }
}

TEST_CASE("spectrum rows") {
    auto rows = spectrum_rows(OrbitCase::A2, 8);
    CHECK(rows.size() == 45);  // sum_{n<=8} (n+1)
    int kernels = 0;
    for (const auto& r : rows)
        if (r.in_kernel) ++kernels;
    CHECK(kernels == 1);  // only (6,5)
}
