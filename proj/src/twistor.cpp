#include "sq7/twistor.hpp"

#include <cmath>
#include <numbers>

namespace sq7 {

ProjectivePoint::ProjectivePoint(const Vec4c& w) : z(w) {
    double n = z.norm();
    if (n < 1e-14) throw std::invalid_argument("ProjectivePoint: zero vector");
    z /= n;
    for (int i = 0; i < 4; ++i) {
        if (std::abs(z[i]) > 1e-7) {
            z *= std::conj(z[i]) / std::abs(z[i]);
            break;
        }
    }
}

double projective_distance(const ProjectivePoint& a, const ProjectivePoint& b) {
    double c = std::abs(a.z.dot(b.z));  // |<a,b>| with unit representatives
    return std::sqrt(std::max(0.0, 1.0 - c * c));
}

Eigen::Matrix<double, 5, 1> pi_hopf(const Vec8& p) {
    Vec4c z = to_complex(p);
    // Quaternions q1 = z1 + z2 j, q2 = z3 + z4 j; the left-line invariant is
    // (2 conj(q1) q2, |q1|^2 - |q2|^2).
    // conj(q1) q2 = (conj z1 - z2 j)(z3 + z4 j)
    //            = (conj z1 z3 + z2 conj z4) + (conj z1 z4 - z2 conj z3) j.
    Cx a = std::conj(z[0]) * z[2] + z[1] * std::conj(z[3]);
    Cx b = std::conj(z[0]) * z[3] - z[1] * std::conj(z[2]);
    Eigen::Matrix<double, 5, 1> out;
    out << 2 * a.real(), 2 * a.imag(), 2 * b.real(), 2 * b.imag(),
        std::norm(z[0]) + std::norm(z[1]) - std::norm(z[2]) - std::norm(z[3]);
    return out;
}

Eigen::Matrix<double, 5, 1> p2_twistor(const ProjectivePoint& z) { return pi_hopf(to_real(z.z)); }

Vec8 i1_prime(const Vec8& p, const Vec8& v) {
    const Sasakian& sas = sasakian();
    if (std::abs(sas.eta(1, p, v)) > 1e-8 * std::max(1.0, v.norm()))
        throw std::invalid_argument("i1_prime: vector is not p1-horizontal");
    Vec8 vert = sas.eta(2, p, v) * sas.xi(2, p) + sas.eta(3, p, v) * sas.xi(3, p);
    Vec8 hor = v - vert - p.dot(v) * p;
    return -(sas.I(1) * vert) + sas.I(1) * hor;
}

namespace {

Vec8 cvec(Cx z1, Cx z2, Cx z3, Cx z4) {
    Vec4c z;
    z << z1, z2, z3, z4;
    return to_real(z);
}

struct OrbitSampler {
    const GroupAction* act;
    Vec8 p0;
    std::array<Mat8, 3> gens;

    Mat8 sample(std::mt19937_64& rng) const {
        if (act->tag == ActionTag::T3) {
            std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
            return act->element_t3(ang(rng), ang(rng), ang(rng));
        }
        std::normal_distribution<double> g(0.0, 1.0);
        Eigen::Vector4d q;
        for (int i = 0; i < 4; ++i) q[i] = g(rng);
        q.normalize();
        return act->element_su2(Cx(q[0], q[1]), Cx(q[2], q[3]));
    }
};

OrbitSampler orbit_sampler(OrbitCase c) {
    switch (c) {
        case OrbitCase::A1:
            return {&action(ActionTag::T3), cvec(0.5, 0.5, 0.5, Cx(0, 0.5)), {}};
        case OrbitCase::A2:
            return {&action(ActionTag::SU2irr), cvec(1, 0, 0, 0), {}};
        case OrbitCase::A3:
            return {&action(ActionTag::SU2irr), cvec(0, 0, 1, 0), {}};
        default:
            throw std::invalid_argument("orbit_sampler: only A1, A2, A3 project to curves");
    }
}

// p1-pushforward of the orbit tangent space at x: the tangent vectors with
// the xi_1 component removed; returns an orthonormal basis of the result.
std::vector<Vec8> pushforward_plane(const OrbitSampler& os, const Vec8& x) {
    const Sasakian& sas = sasakian();
    Vec8 xi1 = sas.xi(1, x);
    std::vector<Vec8> basis;
    for (int i = 1; i <= 3; ++i) {
        Vec8 v = os.act->generator_field(i, x);
        v -= sas.eta(1, x, v) * xi1;
        for (const Vec8& b : basis) v -= b.dot(v) * b;
        if (v.norm() > 1e-8) basis.push_back(v.normalized());
    }
    return basis;
}

}  // namespace

HolomorphicCheck holomorphic_curve_check(OrbitCase c, int n_samples, std::uint64_t seed) {
    OrbitSampler os = orbit_sampler(c);
    const Sasakian& sas = sasakian();
    std::mt19937_64 rng(seed);
    HolomorphicCheck out{true, true, 0, 0};
    for (int it = 0; it < n_samples; ++it) {
        Vec8 x = os.sample(rng) * os.p0;
        std::vector<Vec8> plane = pushforward_plane(os, x);
        if (plane.size() != 2)
            throw std::runtime_error("holomorphic_curve_check: pushforward is not 2-dimensional");
        for (const Vec8& v : plane) {
            Vec8 iv = i1_prime(x, v);
            Vec8 res = iv;
            for (const Vec8& b : plane) res -= b.dot(iv) * b;
            out.residual = std::max(out.residual, res.norm());
            double vert = std::hypot(sas.eta(2, x, v), sas.eta(3, x, v));
            out.vertical_part = std::max(out.vertical_part, vert);
        }
    }
    out.holomorphic = out.residual < 1e-8;
    out.horizontal = out.vertical_part < 1e-8;
    return out;
}

HatResult hat_transform(OrbitCase c, int n_samples, std::uint64_t seed) {
    OrbitSampler os = orbit_sampler(c);
    const Sasakian& sas = sasakian();
    std::mt19937_64 rng(seed);
    HatResult out;
    out.min_pr_norm = 1e300;
    for (int it = 0; it < n_samples; ++it) {
        Vec8 x = os.sample(rng) * os.p0;
        std::vector<Vec8> plane = pushforward_plane(os, x);
        if (plane.size() != 2)
            throw std::runtime_error("hat_transform: pushforward is not 2-dimensional");
        // Horizontal projections span L.
        std::vector<Vec8> L;
        double prn = 1e300;
        for (const Vec8& v : plane) {
            Vec8 h = sas.horizontal_projection(x, v - x.dot(v) * x);
            prn = std::min(prn, h.norm());
            for (const Vec8& b : L) h -= b.dot(h) * b;
            if (h.norm() > 1e-8) L.push_back(h.normalized());
        }
        out.min_pr_norm = std::min(out.min_pr_norm, prn);
        if (prn < 1e-8)
            throw std::runtime_error("hat_transform: horizontal projection vanishes");
        if (L.size() != 2)
            throw std::runtime_error("hat_transform: L is not a complex line");
        // Orthogonal complement of L inside the 4-dimensional horizontal space.
        std::vector<Vec8> Lperp;
        for (int i = 0; i < 8 && Lperp.size() < 2; ++i) {
            Vec8 e = Vec8::Zero();
            e[i] = 1;
            Vec8 h = sas.horizontal_projection(x, e - x.dot(e) * x);
            for (const Vec8& b : L) h -= b.dot(h) * b;
            for (const Vec8& b : Lperp) h -= b.dot(h) * b;
            if (h.norm() > 1e-6) Lperp.push_back(h.normalized());
        }
        if (Lperp.size() != 2)
            throw std::runtime_error("hat_transform: could not build L-perp");
        // L-perp is an I1-complex line; P(v) = [v~] is the same point for
        // every nonzero v in it.
        out.points.emplace_back(to_complex(Lperp[0]));
        ProjectivePoint other(to_complex(Lperp[1]));
        if (projective_distance(out.points.back(), other) > 1e-8)
            throw std::runtime_error("hat_transform: P is not constant on L-perp");
    }
    return out;
}

double distance_to_veronese(const ProjectivePoint& w) {
    // Veronese curve [x^3 : y^3 : sqrt3 x y^2 : sqrt3 x^2 y]; candidate
    // parameter from the ratio of the last two coordinates, then local
    // refinement over t in C.
    const double r3 = std::sqrt(3.0);
    auto curve = [&](Cx t) {
        Vec4c v;
        v << t * t * t, Cx(1, 0), r3 * t, r3 * t * t;
        return ProjectivePoint(v);
    };
    auto curve_inf = [&]() {
        Vec4c v;
        v << Cx(1, 0), 0, 0, 0;
        return ProjectivePoint(v);
    };
    double best = projective_distance(w, curve_inf());
    std::vector<Cx> seeds;
    if (std::abs(w.z[2]) > 1e-9) seeds.push_back(w.z[3] / w.z[2]);
    seeds.push_back(Cx(0, 0));
    for (Cx t0 : seeds) {
        Cx t = t0;
        double d = projective_distance(w, curve(t));
        double step = 0.1 * (1.0 + std::abs(t));
        for (int it = 0; it < 200 && step > 1e-12; ++it) {
            bool improved = false;
            for (Cx dt : {Cx(step, 0), Cx(-step, 0), Cx(0, step), Cx(0, -step)}) {
                double d2 = projective_distance(w, curve(t + dt));
                if (d2 < d) {
                    d = d2;
                    t = t + dt;
                    improved = true;
                }
            }
            if (!improved) step *= 0.5;
        }
        best = std::min(best, d);
    }
    return best;
}

double distance_to_p1A1(const ProjectivePoint& w) {
    // Projective membership in p1(A1): equal moduli and the torus phase
    // relation; measured through the defining residuals.
    Vec4c z = w.z;
    double r = 0;
    for (int i = 0; i < 4; ++i) r = std::max(r, std::abs(std::abs(z[i]) - 0.5));
    Cx prod = z[0] * z[1] * std::conj(z[2]) * std::conj(z[3]);
    // On A1: Re prod = 0 and Im prod < 0 at |z_i| = 1/2 (prod has modulus 1/16).
    r = std::max(r, std::abs(prod.real()));
    if (prod.imag() > 0) r = std::max(r, prod.imag());
    return r;
}

Mat4c veronese_embedding(const Eigen::Matrix2cd& g) {
    const double r3 = std::sqrt(3.0);
    Cx a = g(0, 0), b = g(0, 1), c = g(1, 0), d = g(1, 1);
    Mat4c M;
    M << a * a * a, b * b * b, r3 * a * b * b, r3 * a * a * b,
        c * c * c, d * d * d, r3 * c * d * d, r3 * c * c * d,
        r3 * a * c * c, r3 * b * d * d, d * (a * d + 2.0 * b * c), c * (2.0 * a * d + b * c),
        r3 * a * a * c, r3 * b * b * d, b * (2.0 * a * d + b * c), a * (a * d + 2.0 * b * c);
    return M;
}

VeroneseStabilizer veronese_stabilizer_check(std::uint64_t seed, int n_pairs) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    auto rand2 = [&]() {
        Eigen::Matrix2cd m;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m(i, j) = Cx(g(rng), g(rng)) * 0.7;
        m += Eigen::Matrix2cd::Identity();
        return m;
    };
    VeroneseStabilizer out{0, 0, 0};
    for (int it = 0; it < n_pairs; ++it) {
        Eigen::Matrix2cd x = rand2(), y = rand2();
        Mat4c lhs = veronese_embedding(x * y);
        Mat4c rhs = veronese_embedding(x) * veronese_embedding(y);
        out.multiplicativity_residual =
            std::max(out.multiplicativity_residual,
                     (lhs - rhs).norm() / std::max(1.0, rhs.norm()));
    }
    // Image elements preserve the Veronese curve: check the defining quadrics
    // w4^2 = sqrt3 w1 w3, w3^2 = sqrt3 w2 w4, w3 w4 = 3 w1 w2 on mapped points.
    const double r3 = std::sqrt(3.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int it = 0; it < n_pairs; ++it) {
        Eigen::Matrix2cd x = rand2();
        double th = 2 * std::numbers::pi * u(rng), ph = 2 * std::numbers::pi * u(rng);
        double cs = std::cos(th), sn = std::sin(th);
        Cx a = cs * std::polar(1.0, ph), b = sn;
        Vec4c v;
        v << a * a * a, b * b * b, r3 * a * b * b, r3 * a * a * b;
        Vec4c w = veronese_embedding(x) * v;
        w /= w.norm();
        double q1 = std::abs(w[3] * w[3] - r3 * w[0] * w[2]);
        double q2 = std::abs(w[2] * w[2] - r3 * w[1] * w[3]);
        double q3 = std::abs(w[2] * w[3] - 3.0 * w[0] * w[1]);
        out.curve_invariance_residual =
            std::max(out.curve_invariance_residual, std::max({q1, q2, q3}));
    }
    // d Xi at the identity; the intersection with sp(2,C) has real dimension 6.
    Mat4c Jc = Mat4c::Zero();
    Jc(0, 1) = -1; Jc(1, 0) = 1; Jc(2, 3) = -1; Jc(3, 2) = 1;
    const double h = 1e-6;
    std::vector<Eigen::Matrix2cd> basis;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int part = 0; part < 2; ++part) {
                Eigen::Matrix2cd Y = Eigen::Matrix2cd::Zero();
                Y(i, j) = part == 0 ? Cx(1, 0) : Cx(0, 1);
                basis.push_back(Y);
            }
    Eigen::MatrixXd C(32, 8);
    for (int k = 0; k < 8; ++k) {
        Eigen::Matrix2cd I2 = Eigen::Matrix2cd::Identity();
        Mat4c dXi = (veronese_embedding(I2 + h * basis[k]) -
                     veronese_embedding(I2 - h * basis[k])) /
                    (2 * h);
        Mat4c r = dXi.transpose() * Jc + Jc * dXi;
        for (int e = 0; e < 16; ++e) {
            C(2 * e, k) = r(e / 4, e % 4).real();
            C(2 * e + 1, k) = r(e / 4, e % 4).imag();
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(C);
    int nullity = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) < 1e-7 * std::max(1.0, svd.singularValues()(0))) ++nullity;
    nullity += 8 - static_cast<int>(svd.singularValues().size());
    out.intersection_dimension = nullity;
    return out;
}

}  // namespace sq7
