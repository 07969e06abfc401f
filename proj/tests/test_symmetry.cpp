#include <doctest.h>

#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "sq7/symmetry.hpp"

using namespace sq7;

namespace {
Vec8 cv(Cx a, Cx b, Cx c, Cx d) {
    Vec4c z;
    z << a, b, c, d;
    return to_real(z);
}
}  // namespace

TEST_CASE("generator fields match the printed vectors") {
    const Sasakian& s = sasakian();
    Vec8 e0 = cv(1, 0, 0, 0);
    const GroupAction& irr = action(ActionTag::SU2irr);
    const double r3 = std::sqrt(3.0);
    CHECK((irr.generator_field(1, e0) - cv(0, 0, 0, -r3)).norm() == doctest::Approx(0.0));
    CHECK((irr.generator_field(2, e0) - cv(0, 0, 0, Cx(0, r3))).norm() == doctest::Approx(0.0));
    CHECK((irr.generator_field(3, e0) - cv(Cx(0, 3), 0, 0, 0)).norm() == doctest::Approx(0.0));
    CHECK((irr.generator_field(3, e0) + 3 * s.xi(1, e0)).norm() == doctest::Approx(0.0));

    Vec8 p3 = cv(0, 0, 1, 0);
    CHECK((irr.generator_field(1, p3) - cv(0, -r3, 0, 2)).norm() == doctest::Approx(0.0));
    CHECK((irr.generator_field(2, p3) - cv(0, Cx(0, r3), 0, Cx(0, 2))).norm() ==
          doctest::Approx(0.0));
    CHECK((irr.generator_field(3, p3) - cv(0, 0, Cx(0, -1), 0)).norm() == doctest::Approx(0.0));

    const GroupAction& t3 = action(ActionTag::T3);
    std::mt19937_64 rng(3);
    Vec8 p = random_sphere_point(rng);
    CHECK((t3.generator_field(1, p) + s.xi(1, p)).norm() == doctest::Approx(0.0));

    // L2 generators at e0 (diag SU(2)).
    const GroupAction& dg = action(ActionTag::SU2diag);
    CHECK((dg.generator_field(1, e0) - cv(0, 0, -1, 0)).norm() == doctest::Approx(0.0));
    CHECK((dg.generator_field(2, e0) - cv(0, 0, Cx(0, -1), 0)).norm() == doctest::Approx(0.0));
    CHECK((dg.generator_field(3, e0) - s.xi(1, e0)).norm() == doctest::Approx(0.0));

    // Sp(1)_L generators at e0: E1* = -xi2, E2* = -xi3, E3* = -xi1.
    const GroupAction& sp1 = action(ActionTag::Sp1L);
    CHECK((sp1.generator_field(1, e0) + s.xi(2, e0)).norm() == doctest::Approx(0.0));
    CHECK((sp1.generator_field(2, e0) + s.xi(3, e0)).norm() == doctest::Approx(0.0));
    CHECK((sp1.generator_field(3, e0) + s.xi(1, e0)).norm() == doctest::Approx(0.0));
}

TEST_CASE("group elements are consistent with the generators") {
    std::mt19937_64 rng(5);
    const double h = 1e-6;
    for (ActionTag tag : {ActionTag::Sp1L, ActionTag::SU2diag, ActionTag::SU2small,
                          ActionTag::SU2irr}) {
        const GroupAction& act = action(tag);
        // exp(t E_1) corresponds to (a, b) = (cos t, -sin t).
        Mat8 gp = act.element_su2(std::cos(h), -std::sin(h));
        Mat8 gm = act.element_su2(std::cos(h), std::sin(h));
        Mat8 d1 = (gp - gm) / (2 * h);
        CHECK((d1 - act.generators[0]).cwiseAbs().maxCoeff() < 1e-8);
        // exp(t E_3): (a, b) = (e^{it}, 0).
        Mat8 g3p = act.element_su2(Cx(std::cos(h), std::sin(h)), 0);
        Mat8 g3m = act.element_su2(Cx(std::cos(h), -std::sin(h)), 0);
        Mat8 d3 = (g3p - g3m) / (2 * h);
        CHECK((d3 - act.generators[2]).cwiseAbs().maxCoeff() < 1e-8);
        // Orthogonality of a random element.
        std::normal_distribution<double> g(0.0, 1.0);
        Eigen::Vector4d q;
        for (int i = 0; i < 4; ++i) q[i] = g(rng);
        q.normalize();
        Mat8 el = act.element_su2(Cx(q[0], q[1]), Cx(q[2], q[3]));
        CHECK((el.transpose() * el - Mat8::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    }
    const GroupAction& t3 = action(ActionTag::T3);
    Mat8 el = t3.element_t3(0.3, -0.8, 1.2);
    CHECK((el.transpose() * el - Mat8::Identity()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("structure constants") {
    for (ActionTag tag : {ActionTag::Sp1L, ActionTag::SU2diag, ActionTag::SU2small,
                          ActionTag::SU2irr}) {
        const GroupAction& act = action(tag);
        for (int i = 0; i < 3; ++i) {
            Mat8 br = act.generators[i] * act.generators[(i + 1) % 3] -
                      act.generators[(i + 1) % 3] * act.generators[i];
            CHECK((br - 2 * act.generators[(i + 2) % 3]).cwiseAbs().maxCoeff() <
                  1e-12);
        }
    }
    const GroupAction& t3 = action(ActionTag::T3);
    for (int i = 0; i < 3; ++i) {
        Mat8 br = t3.generators[i] * t3.generators[(i + 1) % 3] -
                  t3.generators[(i + 1) % 3] * t3.generators[i];
        CHECK(br.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
    }
}

TEST_CASE("sp(2) basis and invariance") {
    CHECK(sp2_basis().size() == 10);
    CHECK(sp1sp2_basis().size() == 13);
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g(0.0, 1.0);
    // Random algebra elements exponentiate to isometries of the squashed
    // structure.
    Eigen::VectorXd c(10);
    for (int i = 0; i < 10; ++i) c[i] = 0.3 * g(rng);
    Mat8 X = Mat8::Zero();
    for (int i = 0; i < 10; ++i) X += c[i] * sp2_basis()[i];
    CHECK(invariance_residual(X.exp(), 77, 10) < 1e-8);
    CHECK(invariance_residual(action(ActionTag::Sp1L).element_su2(Cx(0.6, 0.8), 0), 78, 10) <
          1e-8);
    // Sp(1)_L commutes with sp(2).
    for (const Mat8& sp1g : action(ActionTag::Sp1L).generators)
        for (const Mat8& sp2g : sp2_basis())
            CHECK((sp1g * sp2g - sp2g * sp1g).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Mq matrix") {
    CHECK((mq_matrix(Cx(1, 0), 0) - Eigen::Matrix3d::Identity()).norm() == doctest::Approx(0.0));
    Eigen::Matrix3d di = Eigen::Vector3d(1, -1, -1).asDiagonal();
    CHECK((mq_matrix(Cx(0, 1), 0) - di).norm() == doctest::Approx(0.0));
    std::mt19937_64 rng(10);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int it = 0; it < 10; ++it) {
        Eigen::Vector4d q;
        for (int i = 0; i < 4; ++i) q[i] = g(rng);
        q.normalize();
        Eigen::Matrix3d M = mq_matrix(Cx(q[0], q[1]), Cx(q[2], q[3]));
        CHECK((M.transpose() * M - Eigen::Matrix3d::Identity()).norm() < 1e-12);
        CHECK(M.determinant() == doctest::Approx(1.0));
    }
}

TEST_CASE("orbit lambda normalization") {
    std::mt19937_64 rng(13);
    OrbitFrame d = orbit_lambda_normalize(action(ActionTag::SU2diag), random_sphere_point(rng));
    for (double l : d.lambdas) CHECK(l == doctest::Approx(1.0).epsilon(1e-8));

    OrbitFrame a2 = orbit_lambda_normalize(action(ActionTag::SU2irr), cv(1, 0, 0, 0));
    std::array<double, 3> l2 = a2.lambdas;
    std::sort(l2.begin(), l2.end());
    CHECK(l2[0] == doctest::Approx(3.0).epsilon(1e-7));
    CHECK(l2[1] == doctest::Approx(3.0).epsilon(1e-7));
    CHECK(l2[2] == doctest::Approx(9.0).epsilon(1e-7));

    OrbitFrame a3 = orbit_lambda_normalize(action(ActionTag::SU2irr), cv(0, 0, 1, 0));
    std::array<double, 3> l3 = a3.lambdas;
    std::sort(l3.begin(), l3.end());
    CHECK(l3[0] == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(l3[1] == doctest::Approx(7.0).epsilon(1e-7));
    CHECK(l3[2] == doctest::Approx(7.0).epsilon(1e-7));

    // Orbit dimension < 3 is rejected: T3 at a coordinate point has a
    // degenerate orbit.
    CHECK_THROWS(orbit_lambda_normalize(action(ActionTag::T3), cv(1, 0, 0, 0)));
}

TEST_CASE("sum eta_i(E_j*)^2 = 9 for the irreducible action") {
    const GroupAction& irr = action(ActionTag::SU2irr);
    const Sasakian& s = sasakian();
    std::mt19937_64 rng(14);
    for (int it = 0; it < 100; ++it) {
        Vec8 p = random_sphere_point(rng);
        double sum = 0;
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j)
                sum += std::pow(s.eta(i, p, irr.generator_field(j, p)), 2);
        CHECK(sum == doctest::Approx(9.0).epsilon(1e-9));
    }
}
