#include "sq7/symmetry.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

namespace sq7 {

std::string to_string(ActionTag t) {
    switch (t) {
        case ActionTag::Sp1L: return "Sp1_L";
        case ActionTag::T3: return "T3";
        case ActionTag::SU2diag: return "SU2_diag";
        case ActionTag::SU2small: return "SU2_small";
        case ActionTag::SU2irr: return "SU2_irr";
    }
    return "?";
}

namespace {

Mat4c diag4(Cx a, Cx b, Cx c, Cx d) {
    Mat4c m = Mat4c::Zero();
    m(0, 0) = a; m(1, 1) = b; m(2, 2) = c; m(3, 3) = d;
    return m;
}

// Left quaternion multiplications on C^4 = H^2 (antilinear for j, k).
Mat8 left_i() { return realify(Cx(0, 1) * Mat4c::Identity()); }
Mat8 left_j() {
    Mat4c Jc = Mat4c::Zero();
    Jc(0, 1) = -1; Jc(1, 0) = 1; Jc(2, 3) = -1; Jc(3, 2) = 1;
    return realify(Jc) * conjugation8();
}
Mat8 left_k() { return left_i() * left_j(); }

GroupAction make_action(ActionTag tag) {
    GroupAction a;
    a.tag = tag;
    const Cx I(0, 1);
    switch (tag) {
        case ActionTag::Sp1L:
            // E_1 -> j, E_2 -> k, E_3 -> i under SU(2) =~ Sp(1),
            // (a, -conj b; b, conj a) -> a - conj(b) j.
            a.generators = {left_j(), left_k(), left_i()};
            break;
        case ActionTag::T3:
            a.generators = {realify(diag4(I, I, I, I)), realify(diag4(I, -I, 0, 0)),
                            realify(diag4(0, 0, I, -I))};
            break;
        case ActionTag::SU2diag: {
            Mat4c E1 = Mat4c::Zero(), E2 = Mat4c::Zero();
            E1(0, 2) = 1; E1(1, 3) = 1; E1(2, 0) = -1; E1(3, 1) = -1;
            E2(0, 2) = -I; E2(1, 3) = I; E2(2, 0) = -I; E2(3, 1) = I;
            a.generators = {realify(E1), realify(E2), realify(diag4(-I, I, I, -I))};
            break;
        }
        case ActionTag::SU2small: {
            Mat4c E1 = Mat4c::Zero(), E2 = Mat4c::Zero();
            E1(0, 1) = 1; E1(1, 0) = -1;
            E2(0, 1) = I; E2(1, 0) = I;
            a.generators = {realify(E1), realify(E2), realify(diag4(I, -I, 0, 0))};
            break;
        }
        case ActionTag::SU2irr: {
            const double r3 = std::sqrt(3.0);
            Mat4c E1 = Mat4c::Zero(), E2 = Mat4c::Zero();
            E1(0, 3) = r3; E1(1, 2) = -r3; E1(2, 1) = r3; E1(2, 3) = -2;
            E1(3, 0) = -r3; E1(3, 2) = 2;
            E2(0, 3) = r3 * I; E2(1, 2) = r3 * I; E2(2, 1) = r3 * I; E2(2, 3) = 2.0 * I;
            E2(3, 0) = r3 * I; E2(3, 2) = 2.0 * I;
            a.generators = {realify(E1), realify(E2),
                            realify(diag4(3.0 * I, -3.0 * I, -I, I))};
            break;
        }
    }
    return a;
}

}  // namespace

Mat8 GroupAction::element_su2(const Cx& a, const Cx& b) const {
    const double r3 = std::sqrt(3.0);
    Mat4c M = Mat4c::Zero();
    Cx ac = std::conj(a), bc = std::conj(b);
    switch (tag) {
        case ActionTag::Sp1L: {
            // (a, -conj b; b, conj a) -> q = a - conj(b) j acting by
            // u -> a u - conj(b) J conj(u).
            return a.real() * Mat8::Identity() + a.imag() * left_i() - bc.real() * left_j() -
                   bc.imag() * left_k();
        }
        case ActionTag::SU2diag:
            M(0, 0) = ac; M(0, 2) = -b;
            M(1, 1) = a; M(1, 3) = -bc;
            M(2, 0) = bc; M(2, 2) = a;
            M(3, 1) = b; M(3, 3) = ac;
            return realify(M);
        case ActionTag::SU2small:
            M(0, 0) = a; M(0, 1) = -bc;
            M(1, 0) = b; M(1, 1) = ac;
            M(2, 2) = 1; M(3, 3) = 1;
            return realify(M);
        case ActionTag::SU2irr:
            M(0, 0) = a * a * a;       M(0, 1) = -bc * bc * bc;
            M(0, 2) = r3 * a * bc * bc; M(0, 3) = -r3 * a * a * bc;
            M(1, 0) = b * b * b;       M(1, 1) = ac * ac * ac;
            M(1, 2) = r3 * ac * ac * b; M(1, 3) = r3 * ac * b * b;
            M(2, 0) = r3 * a * b * b;  M(2, 1) = -r3 * ac * ac * bc;
            M(2, 2) = ac * (std::norm(a) - 2 * std::norm(b));
            M(2, 3) = b * (2 * std::norm(a) - std::norm(b));
            M(3, 0) = r3 * a * a * b;  M(3, 1) = r3 * ac * bc * bc;
            M(3, 2) = -bc * (2 * std::norm(a) - std::norm(b));
            M(3, 3) = a * (std::norm(a) - 2 * std::norm(b));
            return realify(M);
        default:
            throw std::invalid_argument("element_su2: not an SU(2)-type action");
    }
}

Mat8 GroupAction::element_t3(double alpha, double beta, double gamma) const {
    if (tag != ActionTag::T3) throw std::invalid_argument("element_t3: not the T3 action");
    auto ph = [](double t) { return Cx(std::cos(t), std::sin(t)); };
    return realify(diag4(ph(alpha + beta), ph(alpha - beta), ph(alpha + gamma), ph(alpha - gamma)));
}

Mat8 GroupAction::exp_element(const Eigen::Vector3d& c) const {
    Mat8 X = c[0] * generators[0] + c[1] * generators[1] + c[2] * generators[2];
    return X.exp();
}

const GroupAction& action(ActionTag tag) {
    static const GroupAction sp1 = make_action(ActionTag::Sp1L);
    static const GroupAction t3 = make_action(ActionTag::T3);
    static const GroupAction d = make_action(ActionTag::SU2diag);
    static const GroupAction s = make_action(ActionTag::SU2small);
    static const GroupAction irr = make_action(ActionTag::SU2irr);
    switch (tag) {
        case ActionTag::Sp1L: return sp1;
        case ActionTag::T3: return t3;
        case ActionTag::SU2diag: return d;
        case ActionTag::SU2small: return s;
        case ActionTag::SU2irr: return irr;
    }
    throw std::invalid_argument("action: bad tag");
}

const std::vector<Mat8>& sp2_basis() {
    static const std::vector<Mat8> basis = [] {
        // u(4) basis, then solve X^t J + J X = 0 (complex matrices).
        Mat4c Jc = Mat4c::Zero();
        Jc(0, 1) = -1; Jc(1, 0) = 1; Jc(2, 3) = -1; Jc(3, 2) = 1;
        const Cx I(0, 1);
        std::vector<Mat4c> u4;
        for (int i = 0; i < 4; ++i) {
            Mat4c m = Mat4c::Zero();
            m(i, i) = I;
            u4.push_back(m);
        }
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                Mat4c m = Mat4c::Zero();
                m(i, j) = 1; m(j, i) = -1;
                u4.push_back(m);
                Mat4c n = Mat4c::Zero();
                n(i, j) = I; n(j, i) = I;
                u4.push_back(n);
            }
        // Constraint rows: vec(X^t J + J X) = 0 over R.
        Eigen::MatrixXd C(32, 16);
        for (int k = 0; k < 16; ++k) {
            Mat4c r = u4[k].transpose() * Jc + Jc * u4[k];
            for (int e = 0; e < 16; ++e) {
                C(2 * e, k) = r(e / 4, e % 4).real();
                C(2 * e + 1, k) = r(e / 4, e % 4).imag();
            }
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(C);
        Eigen::MatrixXd null = lu.kernel();
        std::vector<Mat8> out;
        for (int c = 0; c < null.cols(); ++c) {
            Mat4c X = Mat4c::Zero();
            for (int k = 0; k < 16; ++k) X += null(k, c) * u4[k];
            out.push_back(realify(X));
        }
        if (out.size() != 10) throw std::runtime_error("sp2_basis: expected dimension 10");
        return out;
    }();
    return basis;
}

const std::vector<Mat8>& sp1sp2_basis() {
    static const std::vector<Mat8> basis = [] {
        std::vector<Mat8> out = {left_i(), left_j(), left_k()};
        for (const Mat8& m : sp2_basis()) out.push_back(m);
        return out;
    }();
    return basis;
}

double invariance_residual(const Mat8& g, std::uint64_t seed, int n_points) {
    const SquashedStructure& sq = squashed();
    std::mt19937_64 rng(seed);
    double res = 0;
    for (int ip = 0; ip < n_points; ++ip) {
        Vec8 p = random_sphere_point(rng);
        Vec8 gp = g * p;
        double gpn = gp.norm();
        res = std::max(res, std::abs(gpn - 1.0));  // metric-preserving sanity
        std::array<Vec8, 3> v;
        std::array<Vec8, 3> gv;
        for (int i = 0; i < 3; ++i) {
            v[i] = random_tangent(rng, p);
            gv[i] = g * v[i];
        }
        double f0 = sq.phi_value(p, v[0], v[1], v[2]);
        double f1 = sq.phi_value(gp / gpn, gv[0], gv[1], gv[2]);
        res = std::max(res, std::abs(f1 - f0));
        double m0 = sq.g_tilde(p, v[0], v[1]);
        double m1 = sq.g_tilde(gp / gpn, gv[0], gv[1]);
        res = std::max(res, std::abs(m1 - m0));
    }
    return res;
}

Eigen::Matrix3d mq_matrix(const Cx& a1, const Cx& a2) {
    if (std::abs(std::norm(a1) + std::norm(a2) - 1.0) > 1e-12)
        throw std::invalid_argument("mq_matrix: |q| != 1");
    Eigen::Matrix3d M;
    Cx a1c = std::conj(a1), a2c = std::conj(a2);
    M(0, 0) = std::norm(a1) - std::norm(a2);
    M(0, 1) = 2 * (a1 * a2c).imag();
    M(0, 2) = 2 * (a1 * a2c).real();
    M(1, 0) = 2 * (a1 * a2).imag();
    M(1, 1) = (a1 * a1 + a2 * a2).real();
    M(1, 2) = (-a1 * a1 + a2 * a2).imag();
    M(2, 0) = -2 * (a1 * a2).real();
    M(2, 1) = (a1 * a1 + a2 * a2).imag();
    M(2, 2) = (a1 * a1 - a2 * a2).real();
    return M;
}

OrbitFrame orbit_lambda_normalize(const GroupAction& act, const Vec8& p, std::uint64_t seed) {
    auto off_diag = [&](const Vec8& q) {
        double s = 0;
        for (int i = 1; i <= 3; ++i)
            for (int j = i + 1; j <= 3; ++j)
                s += std::pow(act.generator_field(i, q).dot(act.generator_field(j, q)), 2);
        return s;
    };

    // Check the orbit is 3-dimensional at p.
    Eigen::MatrixXd T(8, 3);
    for (int i = 1; i <= 3; ++i) T.col(i - 1) = act.generator_field(i, p);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(T);
    if (svd.singularValues()(2) < 1e-8)
        throw std::runtime_error("orbit_lambda_normalize: orbit dimension < 3");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Vec8 best_q = p;
    double best = off_diag(p);
    for (int start = 0; start < 12 && best > 1e-24; ++start) {
        Vec8 q = p;
        if (start > 0) {
            Eigen::Vector3d c;
            for (int i = 0; i < 3; ++i) c[i] = 0.7 * g(rng);
            q = act.exp_element(c) * p;
        }
        // Coordinate descent over exp(t E_i) moves with shrinking steps.
        double step = 0.3;
        double val = off_diag(q);
        for (int it = 0; it < 400 && val > 1e-24; ++it) {
            bool improved = false;
            for (int i = 0; i < 3; ++i) {
                for (double sgn : {1.0, -1.0}) {
                    Eigen::Vector3d c = Eigen::Vector3d::Zero();
                    c[i] = sgn * step;
                    Vec8 q2 = act.exp_element(c) * q;
                    double v2 = off_diag(q2);
                    if (v2 < val) {
                        q = q2;
                        val = v2;
                        improved = true;
                    }
                }
            }
            if (!improved) step *= 0.5;
            if (step < 1e-12) break;
        }
        if (val < best) {
            best = val;
            best_q = q;
        }
    }
    if (best > 1e-16)
        throw std::runtime_error("orbit_lambda_normalize: optimizer failed, off-diag " +
                                 std::to_string(best));
    OrbitFrame f;
    f.base = best_q;
    for (int i = 1; i <= 3; ++i) {
        f.generator_vectors[i - 1] = act.generator_field(i, best_q);
        f.lambdas[i - 1] = f.generator_vectors[i - 1].squaredNorm();
    }
    return f;
}

}  // namespace sq7
