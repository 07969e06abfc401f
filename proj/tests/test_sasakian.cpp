#include <doctest.h>

#include <random>

#include "sq7/squashed.hpp"

using namespace sq7;

namespace {
Vec8 cv(Cx a, Cx b, Cx c, Cx d) {
    Vec4c z;
    z << a, b, c, d;
    return to_real(z);
}
}  // namespace

TEST_CASE("characteristic vector fields") {
    const Sasakian& s = sasakian();
    Vec8 e0 = cv(1, 0, 0, 0);
    CHECK((s.xi(1, e0) - cv(Cx(0, -1), 0, 0, 0)).norm() == doctest::Approx(0.0));
    CHECK((s.xi(2, e0) - cv(0, -1, 0, 0)).norm() == doctest::Approx(0.0));
    CHECK((s.xi(3, e0) - cv(0, Cx(0, -1), 0, 0)).norm() == doctest::Approx(0.0));

    std::mt19937_64 rng(4);
    for (int it = 0; it < 100; ++it) {
        Vec8 p = random_sphere_point(rng);
        for (int i = 1; i <= 3; ++i) {
            for (int j = 1; j <= 3; ++j)
                CHECK(s.xi(i, p).dot(s.xi(j, p)) ==
                      doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
            CHECK(std::abs(s.xi(i, p).dot(p)) < 1e-12);
        }
        CHECK((s.xi(3, p) - s.phi_tensor(1, p, s.xi(2, p))).norm() ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("Phi tensors") {
    const Sasakian& s = sasakian();
    std::mt19937_64 rng(9);
    for (int it = 0; it < 50; ++it) {
        Vec8 p = random_sphere_point(rng);
        Vec8 v = random_tangent(rng, p);
        CHECK(s.phi_tensor(1, p, s.xi(1, p)).norm() == doctest::Approx(0.0).epsilon(1e-12));
        Vec8 h = s.horizontal_projection(p, v);
        CHECK((s.phi_tensor(1, p, h) - s.I(1) * h).norm() == doctest::Approx(0.0).epsilon(1e-12));
        Vec8 lhs = s.phi_tensor(3, p, v);
        Vec8 rhs = s.phi_tensor(1, p, s.phi_tensor(2, p, v)) - s.eta(2, p, v) * s.xi(1, p);
        CHECK((lhs - rhs).norm() == doctest::Approx(0.0).epsilon(1e-12));
        // Projection: idempotent, kernel = span{xi}.
        CHECK((s.horizontal_projection(p, h) - h).norm() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(s.horizontal_projection(p, s.xi(2, p)).norm() == doctest::Approx(0.0));
    }
    // X0 at e0 is already horizontal.
    Vec8 e0 = cv(1, 0, 0, 0), X0 = cv(0, 0, 1, 0);
    CHECK((sasakian().horizontal_projection(e0, X0) - X0).norm() == doctest::Approx(0.0));
}

TEST_CASE("eta forms are exactly the printed complex expressions") {
    const Sasakian& s = sasakian();
    // eta_2 + i eta_3 = -z1 dz2 + z2 dz1 - z3 dz4 + z4 dz3: build the real and
    // imaginary parts independently and compare representations.
    PolyForm re(1), im(1);
    auto X = [](int j) { return PolyScalar::coordinate(2 * (j - 1)); };
    auto Y = [](int j) { return PolyScalar::coordinate(2 * (j - 1) + 1); };
    auto mul = [](const PolyScalar& c, const PolyForm& f) {
        PolyForm r(f.degree());
        for (const auto& [m, s2] : f.terms()) r.add_term(m, c * s2);
        return r;
    };
    for (auto [a, b] : {std::pair<int, int>{1, 2}, {3, 4}}) {
        PolyForm dxa = PolyForm::dx(2 * (a - 1)), dya = PolyForm::dx(2 * (a - 1) + 1);
        PolyForm dxb = PolyForm::dx(2 * (b - 1)), dyb = PolyForm::dx(2 * (b - 1) + 1);
        // -z_a dz_b + z_b dz_a
        re = re - mul(X(a), dxb) + mul(Y(a), dyb) + mul(X(b), dxa) - mul(Y(b), dya);
        im = im - mul(X(a), dyb) - mul(Y(a), dxb) + mul(X(b), dya) + mul(Y(b), dxa);
    }
    CHECK(s.eta_form(2) == re);
    CHECK(s.eta_form(3) == im);

    // d eta_1 = -2 sum dx_j ^ dy_j; d(eta_2 + i eta_3) = -2 (dz_12 + dz_34).
    PolyForm de1(2);
    for (int j = 0; j < 4; ++j)
        de1 = de1 - Rational(2) * wedge(PolyForm::dx(2 * j), PolyForm::dx(2 * j + 1));
    CHECK(s.d_eta_form(1) == de1);
    PolyForm re2(2), im2(2);
    for (int a : {0, 2}) {
        PolyForm dx1 = PolyForm::dx(2 * a), dy1 = PolyForm::dx(2 * a + 1);
        PolyForm dx2 = PolyForm::dx(2 * a + 2), dy2 = PolyForm::dx(2 * a + 3);
        re2 = re2 + wedge(dx1, dx2) - wedge(dy1, dy2);
        im2 = im2 + wedge(dx1, dy2) + wedge(dy1, dx2);
    }
    CHECK(s.d_eta_form(2) == Rational(-2) * re2);
    CHECK(s.d_eta_form(3) == Rational(-2) * im2);

    // eta_i evaluates as <xi_i, .>, and d eta_1 = -2 g(Phi_1 ., .).
    std::mt19937_64 rng(12);
    for (int it = 0; it < 50; ++it) {
        Vec8 p = random_sphere_point(rng);
        Vec8 u = random_tangent(rng, p), v = random_tangent(rng, p);
        for (int i = 1; i <= 3; ++i) {
            std::array<Vec8, 1> a = {u};
            CHECK(s.eta_form(i).eval(p, std::span<const Vec8>(a.data(), 1)) ==
                  doctest::Approx(s.eta(i, p, u)).epsilon(1e-12));
        }
        std::array<Vec8, 2> uv = {u, v};
        CHECK(s.d_eta_form(1).eval(p, std::span<const Vec8>(uv.data(), 2)) ==
              doctest::Approx(-2 * s.phi_tensor(1, p, u).dot(v)).epsilon(1e-9));
    }
}

TEST_CASE("xi brackets via finite-difference flows") {
    const Sasakian& s = sasakian();
    std::mt19937_64 rng(20);
    for (int it = 0; it < 20; ++it) {
        Vec8 p = random_sphere_point(rng);
        for (int i = 1; i <= 3; ++i) {
            auto X = [&](const Vec8& q) { return Vec8(-(s.I(i) * q)); };
            int j = i % 3 + 1, k = (i + 1) % 3 + 1;
            auto Y = [&](const Vec8& q) { return Vec8(-(s.I(j) * q)); };
            Vec8 br = lie_bracket_fd(X, Y, p);
            CHECK((br - 2 * s.xi(k, p)).norm() < 1e-6);
        }
    }
}

TEST_CASE("omega forms") {
    const Sasakian& s = sasakian();
    std::mt19937_64 rng(30);
    for (int it = 0; it < 50; ++it) {
        Vec8 p = random_sphere_point(rng);
        // omega_i vanishes on vertical pairs and on mixed slots; on the
        // horizontal frame it follows the -(X^0i + X^jk) pattern.
        for (int i = 1; i <= 3; ++i) {
            std::array<Vec8, 2> vv = {s.xi(i % 3 + 1, p), s.xi((i + 1) % 3 + 1, p)};
            CHECK(std::abs(s.omega_form(i).eval(p, std::span<const Vec8>(vv.data(), 2))) < 1e-12);
        }
        Vec8 x0 = s.horizontal_projection(p, random_tangent(rng, p)).normalized();
        std::array<Vec8, 4> X = {x0, s.phi_tensor(1, p, x0), s.phi_tensor(2, p, x0),
                                 s.phi_tensor(3, p, x0)};
        const int pat[3][4] = {{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
        for (int i = 0; i < 3; ++i) {
            std::array<Vec8, 2> a = {X[pat[i][0]], X[pat[i][1]]};
            std::array<Vec8, 2> b = {X[pat[i][2]], X[pat[i][3]]};
            CHECK(s.omega_form(i + 1).eval(p, std::span<const Vec8>(a.data(), 2)) ==
                  doctest::Approx(-1.0).epsilon(1e-9));
            CHECK(s.omega_form(i + 1).eval(p, std::span<const Vec8>(b.data(), 2)) ==
                  doctest::Approx(-1.0).epsilon(1e-9));
            std::array<Vec8, 2> mixed = {s.xi(i + 1, p), x0};
            CHECK(std::abs(s.omega_form(i + 1).eval(p, std::span<const Vec8>(mixed.data(), 2))) <
                  1e-9);
        }
    }
}
