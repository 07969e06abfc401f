#include <doctest.h>

#include <random>

#include "sq7/model.hpp"

using namespace sq7;

TEST_CASE("model forms match their defining coefficients") {
    const ModelForms& m = build_model();
    auto coeff = [](const PolyForm& f, std::initializer_list<int> axes) {
        std::uint8_t mask = 0;
        for (int a : axes) mask |= 1u << a;
        auto it = f.terms().find(mask);
        if (it == f.terms().end()) return 0.0;
        return it->second.eval(Vec8::Zero());
    };
    CHECK(coeff(m.phi0, {1, 2, 3}) == 1.0);
    CHECK(coeff(m.phi0, {1, 4, 5}) == 1.0);
    CHECK(coeff(m.phi0, {1, 6, 7}) == 1.0);
    CHECK(coeff(m.phi0, {2, 4, 6}) == 1.0);
    CHECK(coeff(m.phi0, {2, 5, 7}) == -1.0);
    CHECK(coeff(m.phi0, {3, 4, 7}) == -1.0);
    CHECK(coeff(m.phi0, {3, 5, 6}) == -1.0);
    CHECK(coeff(m.star_phi0, {4, 5, 6, 7}) == 1.0);
    CHECK(coeff(m.star_phi0, {1, 2, 5, 6}) == -1.0);

    // Phi0 = dx0 ^ phi0 + *phi0 = (1/2) omega0^2 + Re Omega0, exactly.
    PolyForm rhs = Rational(1, 2) * wedge(m.omega0, m.omega0) + m.Omega0_re;
    CHECK(m.Phi0 == rhs);
}

TEST_CASE("Spin(7) normalizations") {
    const ModelForms& m = build_model();
    AltForm Phi = AltForm::from_poly(m.Phi0, Vec8::Zero());
    Vec8 w1 = Vec8::Zero(), w2 = Vec8::Zero();
    w1[0] = 1;
    w2[1] = 1;
    Spin7Checks c = spin7_metric_checks(Phi, w1, w2);
    CHECK(c.fourteen == doctest::Approx(14.0));
    CHECK(c.ratio == doctest::Approx(1.0));
    CHECK_FALSE(c.degenerate);

    Spin7Checks d = spin7_metric_checks(Phi, w1, w1);
    CHECK(d.degenerate);
    CHECK(d.ratio == 0.0);

    // Random pairs also give ratio 1 (Spin(7) invariance of the identity).
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int it = 0; it < 20; ++it) {
        Vec8 a, b;
        for (int i = 0; i < 8; ++i) {
            a[i] = g(rng);
            b[i] = g(rng);
        }
        Spin7Checks r = spin7_metric_checks(Phi, a, b);
        CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("metric recovery from the model 3-form") {
    G2Context ctx = flat_model_context();
    AltForm phi = ctx.phi_at(Vec8::Zero());
    auto frame = ctx.frame_at(Vec8::Zero());
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j)
            CHECK(metric_from_phi(phi, frame, frame[i], frame[j]) ==
                  doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
}

TEST_CASE("model cross product") {
    G2Context ctx = flat_model_context();
    auto frame = ctx.frame_at(Vec8::Zero());
    Vec8 e1 = frame[0], e2 = frame[1], e3 = frame[2];
    CHECK((cross_product(ctx, Vec8::Zero(), e1, e2) - e3).norm() == doctest::Approx(0.0));
    CHECK(cross_product(ctx, Vec8::Zero(), e1, e1).norm() == doctest::Approx(0.0));

    std::mt19937_64 rng(2);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int it = 0; it < 500; ++it) {
        Vec8 u = Vec8::Zero(), v = Vec8::Zero();
        for (int i = 1; i < 8; ++i) {
            u[i] = g(rng);
            v[i] = g(rng);
        }
        Vec8 uv = cross_product(ctx, Vec8::Zero(), u, v);
        double rhs = u.squaredNorm() * v.squaredNorm() - std::pow(u.dot(v), 2);
        CHECK(uv.squaredNorm() == doctest::Approx(rhs).epsilon(1e-9));
        // Antisymmetry and orthogonality.
        CHECK((uv + cross_product(ctx, Vec8::Zero(), v, u)).norm() ==
              doctest::Approx(0.0).epsilon(1e-9));
        CHECK(uv.dot(u) == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("is_associative rejects dependent triples and is basis invariant") {
    G2Context ctx = flat_model_context();
    auto frame = ctx.frame_at(Vec8::Zero());
    Vec8 e1 = frame[0], e2 = frame[1], e3 = frame[2];
    Vec8 p = Vec8::Zero();
    CHECK_THROWS(is_associative(ctx, p, e1, e2, e1 + e2));
    AssocResult a = is_associative(ctx, p, e1, e2, e3);
    CHECK(a.pass);
    // GL(3) change of basis of the span.
    AssocResult b = is_associative(ctx, p, 2 * e1 + e2, e2 - 3 * e3, e3 + 0.5 * e1);
    CHECK(b.pass);
    // A non-associative 3-plane in the flat model: span{e1, e2, e4}.
    AssocResult c = is_associative(ctx, p, e1, e2, frame[3]);
    CHECK_FALSE(c.pass);
}
