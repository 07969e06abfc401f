#include "sq7/model.hpp"

#include <cmath>
#include <stdexcept>

namespace sq7 {

namespace {

// Wedge chain over R^7 axis labels (paper's x_1..x_7 live on axes 1..7).
PolyForm dxs(std::initializer_list<int> axes) {
    PolyForm f = PolyForm::constant(Rational(1));
    for (int a : axes) f = wedge(f, PolyForm::dx(a));
    return f;
}

struct CxForm {
    PolyForm re, im;
};
CxForm cx_wedge(const CxForm& a, const CxForm& b) {
    return {wedge(a.re, b.re) - wedge(a.im, b.im), wedge(a.re, b.im) + wedge(a.im, b.re)};
}

}  // namespace

const ModelForms& build_model() {
    static const ModelForms model = [] {
        ModelForms m;
        m.phi0 = dxs({1, 2, 3}) + wedge(dxs({1}), dxs({4, 5}) + dxs({6, 7})) +
                 wedge(dxs({2}), dxs({4, 6}) - dxs({5, 7})) -
                 wedge(dxs({3}), dxs({4, 7}) + dxs({5, 6}));
        m.star_phi0 = dxs({4, 5, 6, 7}) + wedge(dxs({2, 3}), dxs({6, 7}) + dxs({4, 5})) +
                      wedge(dxs({1, 3}), dxs({5, 7}) - dxs({4, 6})) -
                      wedge(dxs({1, 2}), dxs({5, 6}) + dxs({4, 7}));
        m.Phi0 = wedge(dxs({0}), m.phi0) + m.star_phi0;

        // omega0 = (i/2) sum dz_j ^ dzbar_j = sum dx_j ^ dy_j over the four
        // complex coordinates (axis pairs (0,1),(2,3),(4,5),(6,7)).
        m.omega0 = dxs({0, 1}) + dxs({2, 3}) + dxs({4, 5}) + dxs({6, 7});

        CxForm dz[4];
        for (int j = 0; j < 4; ++j) dz[j] = {PolyForm::dx(2 * j), PolyForm::dx(2 * j + 1)};
        CxForm Om = cx_wedge(cx_wedge(dz[0], dz[1]), cx_wedge(dz[2], dz[3]));
        m.Omega0_re = Om.re;
        m.Omega0_im = Om.im;
        return m;
    }();
    return model;
}

G2Context flat_model_context() {
    const ModelForms& m = build_model();
    G2Context ctx;
    ctx.phi_at = [&m](const Vec8& p) { return AltForm::from_poly(m.phi0, p); };
    ctx.star_phi_at = [&m](const Vec8& p) { return AltForm::from_poly(m.star_phi0, p); };
    ctx.metric_at = [](const Vec8&) { return Mat8(Mat8::Identity()); };
    ctx.frame_at = [](const Vec8&) {
        std::vector<Vec8> f;
        for (int i = 1; i <= 7; ++i) {
            Vec8 e = Vec8::Zero();
            e[i] = 1;
            f.push_back(e);
        }
        return f;
    };
    return ctx;
}

double metric_from_phi(const AltForm& phi, const std::vector<Vec8>& frame,
                       const Vec8& u, const Vec8& v) {
    if (frame.size() != 7) throw std::invalid_argument("metric_from_phi: need a 7-frame");
    // W(a,b) = [i(a)phi ^ i(b)phi ^ phi](frame) = 6 g(a,b) V, where V is the
    // volume of the frame.  On the frame itself det(W/6) = det(gV) = V^9,
    // so V is recovered as the (signed) ninth root.
    auto W = [&](const Vec8& a, const Vec8& b) {
        AltForm w = wedge(wedge(phi.interior(a), phi.interior(b)), phi);
        return w.eval(std::span<const Vec8>(frame.data(), 7));
    };
    Eigen::Matrix<double, 7, 7> A;
    for (int i = 0; i < 7; ++i)
        for (int j = i; j < 7; ++j) {
            double wij = W(frame[i], frame[j]) / 6.0;
            A(i, j) = wij;
            A(j, i) = wij;
        }
    double detA = A.determinant();
    if (std::abs(detA) < 1e-300) throw std::runtime_error("metric_from_phi: degenerate volume");
    double V = std::copysign(std::pow(std::abs(detA), 1.0 / 9.0), detA);
    return W(u, v) / (6.0 * V);
}

Spin7Checks spin7_metric_checks(const AltForm& Phi, const Vec8& w1, const Vec8& w2) {
    std::array<Vec8, 8> std_basis;
    for (int i = 0; i < 8; ++i) {
        std_basis[i] = Vec8::Zero();
        std_basis[i][i] = 1;
    }
    std::span<const Vec8> full(std_basis.data(), 8);
    Spin7Checks out{};
    out.fourteen = wedge(Phi, Phi).eval(full);
    double n2 = w1.squaredNorm() * w2.squaredNorm() - std::pow(w1.dot(w2), 2);
    if (n2 < 1e-14) {
        out.ratio = 0;
        out.degenerate = true;
        return out;
    }
    AltForm c = Phi.interior(w1).interior(w2);  // i(w2) i(w1) Phi
    out.ratio = wedge(wedge(c, c), Phi).eval(full) / (6.0 * n2);
    out.degenerate = false;
    return out;
}

Vec8 cross_product(const G2Context& ctx, const Vec8& p, const Vec8& u, const Vec8& v) {
    AltForm phi = ctx.phi_at(p);
    Mat8 G = ctx.metric_at(p);
    std::vector<Vec8> frame = ctx.frame_at(p);
    int n = static_cast<int>(frame.size());
    Eigen::MatrixXd gram(n, n);
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) gram(i, j) = frame[i].dot(G * frame[j]);
        std::array<Vec8, 3> args = {u, v, frame[i]};
        rhs[i] = phi.eval(std::span<const Vec8>(args.data(), 3));
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
    if (!lu.isInvertible()) throw std::runtime_error("cross_product: singular Gram matrix");
    Eigen::VectorXd c = lu.solve(rhs);
    Vec8 w = Vec8::Zero();
    for (int i = 0; i < n; ++i) w += c[i] * frame[i];
    return w;
}

AssocResult is_associative(const G2Context& ctx, const Vec8& p, const Vec8& v1,
                           const Vec8& v2, const Vec8& v3, double tol) {
    Mat8 G = ctx.metric_at(p);
    auto inner = [&](const Vec8& a, const Vec8& b) { return a.dot(G * b); };
    std::array<Vec8, 3> u = {v1, v2, v3};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < i; ++j) u[i] -= inner(u[j], u[i]) * u[j];
        double n2 = inner(u[i], u[i]);
        if (n2 < 1e-20) throw std::invalid_argument("is_associative: dependent triple");
        u[i] /= std::sqrt(n2);
    }

    AltForm star = ctx.star_phi_at(p);
    std::vector<Vec8> frame = ctx.frame_at(p);
    // g-orthonormalize the frame so the sup below is scale-honest.
    std::vector<Vec8> onf;
    for (Vec8 f : frame) {
        for (const Vec8& b : onf) f -= inner(b, f) * b;
        double n2 = inner(f, f);
        if (n2 > 1e-12) onf.push_back(f / std::sqrt(n2));
    }
    double star_res = 0;
    for (const Vec8& w : onf) {
        std::array<Vec8, 4> args = {u[0], u[1], u[2], w};
        star_res = std::max(star_res, std::abs(star.eval(std::span<const Vec8>(args.data(), 4))));
    }

    AltForm phi = ctx.phi_at(p);
    double calib = phi.eval(std::span<const Vec8>(u.data(), 3));
    double calib_res = std::abs(std::abs(calib) - 1.0);

    AssocResult r;
    r.star_residual = star_res;
    r.calib_residual = calib_res;
    r.residual = std::max(star_res, calib_res);
    r.pass = star_res <= tol && calib_res <= tol;
    return r;
}

}  // namespace sq7
