#include <doctest.h>

#include <random>

#include "sq7/symmetry.hpp"

using namespace sq7;

namespace {
Vec8 cv(Cx a, Cx b, Cx c, Cx d) {
    Vec4c z;
    z << a, b, c, d;
    return to_real(z);
}
}  // namespace

TEST_CASE("canonical variation metric values") {
    const SquashedStructure& sq = squashed();
    const Sasakian& s = sasakian();
    Vec8 p0 = cv(1, 0, 0, 0), X0 = cv(0, 0, 1, 0);
    CHECK(sq.g_tilde(p0, s.xi(1, p0), s.xi(1, p0)) == doctest::Approx(9.0 / 25));
    CHECK(sq.g_tilde(p0, X0, X0) == doctest::Approx(9.0 / 5));
    CHECK(sq.g_tilde(p0, s.xi(1, p0), X0) == doctest::Approx(0.0));
}

TEST_CASE("exact exterior identities behind the variation proof") {
    const SquashedStructure& sq = squashed();
    // d(eta_123) = 2 sum eta_{jk} ^ omega_i, exactly.
    CHECK(sq.d_eta123() == Rational(2) * sq.sum_etaeta_omega());
    // d(sum eta_i ^ omega_i) = 2 sum omega_i^2 + 2 sum eta_{jk} ^ omega_i.
    CHECK(sq.d_sum_eta_omega() ==
          Rational(2) * sq.sum_omega_sq() + Rational(2) * sq.sum_etaeta_omega());
    // *phi~ through the (d eta)^2 expression, exactly.
    CHECK(sq.star_phi() == sq.star_phi_alt());
}

TEST_CASE("nearly parallel structure") {
    const SquashedStructure& sq = squashed();
    auto at_squashed = sq.verify_nearly_parallel(squashed_params(), 99, 20, 8);
    CHECK(at_squashed.nearly_parallel < 1e-9);
    CHECK(at_squashed.parametric_identity < 1e-9);

    auto at_round = sq.verify_nearly_parallel({1.0, 1.0}, 99, 10, 6);
    CHECK(at_round.parametric_identity < 1e-9);
    CHECK(at_round.nearly_parallel > 0.1);

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.5, 1.7);
    for (int it = 0; it < 3; ++it) {
        auto res = sq.verify_nearly_parallel({u(rng), u(rng)}, 123 + it, 8, 6);
        CHECK(res.parametric_identity < 1e-9);
    }
}

TEST_CASE("phi~ on the fiber") {
    const SquashedStructure& sq = squashed();
    const Sasakian& s = sasakian();
    std::mt19937_64 rng(23);
    for (int it = 0; it < 50; ++it) {
        Vec8 p = random_sphere_point(rng);
        CHECK(sq.phi_value(p, s.xi(1, p), s.xi(2, p), s.xi(3, p)) ==
              doctest::Approx(27.0 / 125).epsilon(1e-12));
    }
}

TEST_CASE("Theta tensor") {
    const SquashedStructure& sq = squashed();
    const Sasakian& s = sasakian();
    Vec8 p0 = cv(1, 0, 0, 0), X0 = cv(0, 0, 1, 0);
    Vec8 X1 = s.phi_tensor(1, p0, X0);
    CHECK((sq.theta_tensor(p0, s.xi(1, p0), X0) - X1).norm() == doctest::Approx(0.0));
    CHECK(sq.theta_tensor(p0, s.xi(1, p0), s.xi(2, p0)).norm() == doctest::Approx(0.0));
    CHECK(sq.theta_tensor(p0, X0, X1).norm() == doctest::Approx(0.0));
    // Symmetry.
    std::mt19937_64 rng(31);
    for (int it = 0; it < 20; ++it) {
        Vec8 p = random_sphere_point(rng);
        Vec8 a = random_tangent(rng, p), b = random_tangent(rng, p);
        CHECK((sq.theta_tensor(p, a, b) - sq.theta_tensor(p, b, a)).norm() ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("connection difference") {
    const SquashedStructure& sq = squashed();
    // At (s,t) = (1,1) the canonical variation is the round metric and
    // nabla~ = nabla for every input.
    const GroupAction& irr = action(ActionTag::SU2irr);
    std::mt19937_64 rng(37);
    for (int it = 0; it < 10; ++it) {
        Vec8 p = random_sphere_point(rng);
        Vec8 v = random_tangent(rng, p);
        Mat8 G = irr.generators[it % 3];
        CHECK((sq.nabla_tilde(p, G, v, {1.0, 1.0}) - sq.nabla_round(p, G, v)).norm() ==
              doctest::Approx(0.0).epsilon(1e-12));
        // nabla~ - nabla = (4/5) Theta(X, v) at the squashed values.
        Vec8 diff = sq.nabla_tilde(p, G, v) - sq.nabla_round(p, G, v);
        Vec8 theta = sq.theta_tensor(p, G * p, v);
        CHECK((diff - 0.8 * theta).norm() == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("metric compatibility of nabla~ along orbits") {
    // d/dt g~(V, W) = g~(nabla~ V, W) + g~(V, nabla~ W) along generator flows,
    // finite differences.
    const SquashedStructure& sq = squashed();
    const GroupAction& irr = action(ActionTag::SU2irr);
    std::mt19937_64 rng(41);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int it = 0; it < 20; ++it) {
        Vec8 p = random_sphere_point(rng);
        Vec8 v = random_tangent(rng, p), w = random_tangent(rng, p);
        Mat8 G = irr.generators[it % 3];
        const double h = 1e-6;
        Mat8 flow_p = (Mat8::Identity() + h * G + 0.5 * h * h * G * G);
        Mat8 flow_m = (Mat8::Identity() - h * G + 0.5 * h * h * G * G);
        double gp = sq.g_tilde(flow_p * p, flow_p * v, flow_p * w);
        double gm = sq.g_tilde(flow_m * p, flow_m * v, flow_m * w);
        double lhs = (gp - gm) / (2 * h);
        double rhs = sq.g_tilde(p, sq.nabla_tilde(p, G, v), w) +
                     sq.g_tilde(p, v, sq.nabla_tilde(p, G, w));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-5));
        (void)g;
    }
}
