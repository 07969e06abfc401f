#include <doctest.h>

#include "sq7/twistor.hpp"

using namespace sq7;

namespace {
Vec8 cv(Cx a, Cx b, Cx c, Cx d) {
    Vec4c z;
    z << a, b, c, d;
    return to_real(z);
}
}  // namespace

TEST_CASE("pi = p2 o p1 and fiber invariance") {
    std::mt19937_64 rng(2);
    for (int it = 0; it < 50; ++it) {
        Vec8 p = random_sphere_point(rng);
        ProjectivePoint z(to_complex(p));
        CHECK((pi_hopf(p) - p2_twistor(z)).norm() < 1e-12);
        CHECK(pi_hopf(p).norm() == doctest::Approx(1.0));
        // pi is constant along the Sp(1)_L fiber through p.
        const GroupAction& sp1 = action(ActionTag::Sp1L);
        std::normal_distribution<double> g(0.0, 1.0);
        Eigen::Vector4d q;
        for (int i = 0; i < 4; ++i) q[i] = g(rng);
        q.normalize();
        Vec8 moved = sp1.element_su2(Cx(q[0], q[1]), Cx(q[2], q[3])) * p;
        CHECK((pi_hopf(p) - pi_hopf(moved)).norm() < 1e-12);
    }
}

TEST_CASE("I1' is an almost complex structure with the right splitting") {
    const Sasakian& s = sasakian();
    std::mt19937_64 rng(3);
    for (int it = 0; it < 50; ++it) {
        Vec8 p = random_sphere_point(rng);
        Vec8 v = random_tangent(rng, p);
        v -= s.eta(1, p, v) * s.xi(1, p);
        CHECK((i1_prime(p, i1_prime(p, v)) + v).norm() < 1e-9 * std::max(1.0, v.norm()));
        Vec8 vert = s.eta(2, p, v) * s.xi(2, p) + s.eta(3, p, v) * s.xi(3, p);
        Vec8 hor = v - vert;
        CHECK((i1_prime(p, vert) + s.I(1) * vert).norm() < 1e-9);
        CHECK((i1_prime(p, hor) - s.I(1) * hor).norm() < 1e-9);
    }
    Vec8 e0 = cv(1, 0, 0, 0);
    CHECK_THROWS(i1_prime(e0, s.xi(1, e0)));
}

TEST_CASE("projected orbits are I1'-holomorphic curves") {
    HolomorphicCheck a1 = holomorphic_curve_check(OrbitCase::A1, 40, 5);
    HolomorphicCheck a2 = holomorphic_curve_check(OrbitCase::A2, 40, 6);
    HolomorphicCheck a3 = holomorphic_curve_check(OrbitCase::A3, 40, 7);
    CHECK(a1.holomorphic);
    CHECK(a2.holomorphic);
    CHECK(a3.holomorphic);
    CHECK(a2.horizontal);
    CHECK_FALSE(a3.horizontal);
    CHECK_FALSE(a1.horizontal);
}

TEST_CASE("hat transform sends p1(A3) onto the Veronese curve p1(A2)") {
    HatResult h = hat_transform(OrbitCase::A3, 60, 9);
    CHECK(h.min_pr_norm > 1e-3);
    for (const auto& pt : h.points) CHECK(distance_to_veronese(pt) < 1e-6);
}

TEST_CASE("hat transform fixes p1(A1)") {
    HatResult h = hat_transform(OrbitCase::A1, 40, 10);
    for (const auto& pt : h.points) CHECK(distance_to_p1A1(pt) < 1e-6);
}

TEST_CASE("Veronese curve distance function") {
    // Points on the curve are at distance ~0; a generic point is not.
    const double r3 = std::sqrt(3.0);
    Cx a(0.6, 0.3);
    Cx b = std::sqrt(Cx(1.0, 0) - a * std::conj(a));
    Vec4c v;
    v << a * a * a, b * b * b, r3 * a * b * b, r3 * a * a * b;
    CHECK(distance_to_veronese(ProjectivePoint(v)) < 1e-9);
    Vec4c w;
    w << 1, 1, 0, 0;
    CHECK(distance_to_veronese(ProjectivePoint(w)) > 1e-2);
}

TEST_CASE("Veronese stabilizer") {
    VeroneseStabilizer v = veronese_stabilizer_check(17, 60);
    CHECK(v.multiplicativity_residual < 1e-8);
    CHECK(v.curve_invariance_residual < 1e-8);
    CHECK(v.intersection_dimension == 6);
    // Identity maps to identity.
    CHECK((veronese_embedding(Eigen::Matrix2cd::Identity()) - Mat4c::Identity()).norm() <
          1e-14);
}
