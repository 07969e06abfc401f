#include "sq7/classification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sq7 {

namespace {

Vec8 cvec(Cx z1, Cx z2, Cx z3, Cx z4) {
    Vec4c z;
    z << z1, z2, z3, z4;
    return to_real(z);
}

// Ambient contraction w_a = *phi~(v1,v2,v3, e_a) at p.
Vec8 star_contract3(const Vec8& p, const Vec8& v1, const Vec8& v2, const Vec8& v3) {
    AltForm st = AltForm::from_poly(squashed().star_phi(), p);
    AltForm one = st.interior(v1).interior(v2).interior(v3);
    Vec8 w = Vec8::Zero();
    for (const auto& [m, c] : one.terms()) {
        for (int a = 0; a < 8; ++a)
            if (m == (1u << a)) w[a] += c;
    }
    return w;
}

double restricted_norm(const Vec8& p, const Vec8& w) {
    Vec8 t = w - w.dot(p) * p;
    return t.norm();
}

// Residual of the true tangential condition at p: arguments projected onto
// T_p S^7 before contracting (needed when the frame is not orthogonal).
double projected_residual(const Vec8& p, const Vec8& a, const Vec8& b, const Vec8& c) {
    auto proj = [&](const Vec8& v) { return Vec8(v - v.dot(p) * p); };
    return restricted_norm(p, star_contract3(p, proj(a), proj(b), proj(c)));
}

}  // namespace

Vec8 PlaneCandidate::e0() const { return cvec(1, 0, 0, 0); }
Vec8 PlaneCandidate::e1() const { return cvec(Cx(0, c), 0, s, 0); }
Vec8 PlaneCandidate::e2() const { return cvec(0, A2, Cx(A3, B3), Cx(A4, B4)); }
Vec8 PlaneCandidate::e3() const { return plane_cross_e0(*this); }

Vec8 plane_cross_e0(const PlaneCandidate& q) {
    return cvec(Cx(0, 5 * q.B3 * q.s), Cx(5 * q.A4 * q.s, -q.A2 * q.c + 5 * q.B4 * q.s),
                Cx(-q.B3 * q.c, q.A3 * q.c), Cx(-q.B4 * q.c - q.A2 * q.s, q.A4 * q.c));
}

std::array<double, 3> plane_condition_e1(const PlaneCandidate& q) {
    double c = q.c, s = q.s;
    double r1 = 4 * s * (c * c - 3 * s * s) *
                (c * q.A2 * q.A2 + 3 * c * q.A4 * q.A4 + 3 * c * q.B4 * q.B4 -
                 2 * s * q.A2 * q.B4);
    Eigen::Vector3d u2(q.A3 * q.A4, q.A2 * q.B3, q.B3 * q.B4);
    Eigen::Matrix<double, 2, 3> M2;
    M2 << c * (-2 * s * s + c * c), -2 * s * s * s, c * (3 * s * s + c * c),
        3 * s * c, 3 * s * s + c * c, -2 * s * c;
    Eigen::Vector2d r2 = s * (M2 * u2);
    Eigen::Vector3d u3(q.A2 * q.A3, q.A3 * q.B4, q.B3 * q.A4);
    Eigen::Matrix<double, 2, 3> M3;
    M3 << s * c, c * c - 2 * s * s, -(3 * s * s + c * c),
        c, -3 * s, -2 * s;
    Eigen::Vector2d r3 = s * (M3 * u3);
    return {r1, r2.cwiseAbs().maxCoeff(), r3.cwiseAbs().maxCoeff()};
}

std::array<double, 3> plane_condition_e2(const PlaneCandidate& q) {
    double c = q.c, s = q.s, A2 = q.A2, A4 = q.A4, B4 = q.B4;
    double r1 = A4 * (c * A2 * (c * A2 * A2 - 2 * s * A2 * B4 - 3 * c * A4 * A4 -
                                3 * c * B4 * B4) +
                      6 * B4 * s * (-3 * s * A2 * B4 + 2 * c * A4 * A4 + 2 * c * B4 * B4));
    double r2 = (c * c + 3 * s * s) * A2 * A2 * A2 * B4 - 2 * c * s * A2 * A2 * B4 * B4 +
                3 * (3 * s * s - c * c) * A2 * A4 * A4 * B4 -
                3 * (c * c + 3 * s * s) * A2 * B4 * B4 * B4 -
                6 * c * s * A4 * A4 * A4 * A4 + 6 * c * s * B4 * B4 * B4 * B4;
    double r3 = s * A2 * A4 * (c * A2 * A2 - 2 * s * A2 * B4 + 3 * c * A4 * A4 + 3 * c * B4 * B4);
    return {r1, r2, r3};
}

double plane_geometric_residual_e1(const PlaneCandidate& q) {
    Vec8 p = q.e1();
    return restricted_norm(p, star_contract3(p, q.e0(), q.e2(), q.e3()));
}

double plane_geometric_residual_e2(const PlaneCandidate& q) {
    Vec8 p = q.e2();
    return restricted_norm(p, star_contract3(p, q.e0(), q.e1(), q.e3()));
}

bool condition_equivalence_audit(std::uint64_t seed, int n_samples, double tol) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    auto near_zero = [&](double x) { return std::abs(x) < tol; };

    // Lemma domain (1): c, A2 > 0, e2 unit; printed e1-system vs geometry at e1.
    for (int it = 0; it < n_samples; ++it) {
        PlaneCandidate q;
        double th = 1.4 * uni(rng);
        q.c = std::cos(th);
        q.s = std::sin(th);
        Eigen::Matrix<double, 5, 1> v;
        for (int i = 0; i < 5; ++i) v[i] = 2 * uni(rng) - 1;
        v[0] = std::abs(v[0]) + 0.05;
        v.normalize();
        q.A2 = v[0]; q.A3 = v[1]; q.B3 = v[2]; q.A4 = v[3]; q.B4 = v[4];
        auto sys = plane_condition_e1(q);
        bool sys_zero = near_zero(sys[0]) && near_zero(sys[1]) && near_zero(sys[2]);
        bool geo_zero = plane_geometric_residual_e1(q) < tol;
        if (sys_zero != geo_zero) return false;
        // Known zeros of the domain: s = 0 must make both vanish.
        PlaneCandidate q0 = q;
        q0.c = 1;
        q0.s = 0;
        auto sys0 = plane_condition_e1(q0);
        if (!(near_zero(sys0[0]) && near_zero(sys0[1]) && near_zero(sys0[2])) ||
            plane_geometric_residual_e1(q0) >= tol)
            return false;
    }

    // Lemma domain (1)-(ii)/(iii): A3 = B3 = 0, e2 unit; printed e2-system vs
    // geometry at e2.
    for (int it = 0; it < n_samples; ++it) {
        PlaneCandidate q;
        bool branch_ii = (it % 2 == 0);
        if (branch_ii) {
            q.c = std::sqrt(3.0) / 2;
            q.s = 0.5;
        } else {
            double th = 0.2 + 1.2 * uni(rng);
            q.c = std::cos(th);
            q.s = std::sin(th);
        }
        double phi = 0.05 + 1.4 * uni(rng), psi = 2 * std::numbers::pi * uni(rng);
        q.A2 = std::cos(phi);
        q.A4 = std::sin(phi) * std::cos(psi);
        q.B4 = std::sin(phi) * std::sin(psi);
        if (!branch_ii) {
            // Stay in the lemma's (iii) hypothesis by projecting B4 onto the
            // condition c(A2^2+3A4^2+3B4^2) - 2 s A2 B4 = 0 when solvable;
            // otherwise just test the implication "system zero => geometric zero"
            // on the raw sample.
        }
        auto sys = plane_condition_e2(q);
        bool sys_zero = near_zero(sys[0]) && near_zero(sys[1]) && near_zero(sys[2]);
        bool geo_zero = plane_geometric_residual_e2(q) < tol;
        if (branch_ii) {
            if (sys_zero != geo_zero) return false;
        } else if (sys_zero != geo_zero) {
            // In branch (iii) the printed system encodes the e2-condition only
            // together with the e1-(iii) constraint; check consistency there.
            double e1iii = q.c * (q.A2 * q.A2 + 3 * q.A4 * q.A4 + 3 * q.B4 * q.B4) -
                           2 * q.s * q.A2 * q.B4;
            if (near_zero(e1iii)) return false;
        }
    }

    // Every printed solution satisfies both systems and both geometric tests.
    for (const auto& [name, t] : printed_plane_solutions()) {
        (void)name;
        PlaneCandidate q{t[0], t[1], t[2], t[3], t[4], t[5], t[6]};
        auto s1 = plane_condition_e1(q);
        auto s2 = plane_condition_e2(q);
        for (double r : {s1[0], s1[1], s1[2], s2[0], s2[1], s2[2]})
            if (!near_zero(r)) return false;
        if (plane_geometric_residual_e1(q) >= tol) return false;
        if (plane_geometric_residual_e2(q) >= tol) return false;
    }
    return true;
}

const std::vector<std::pair<std::string, std::array<double, 7>>>& printed_plane_solutions() {
    static const std::vector<std::pair<std::string, std::array<double, 7>>> sols = [] {
        const double h3 = std::sqrt(3.0) / 2;
        std::vector<std::pair<std::string, std::array<double, 7>>> v;
        v.push_back({"sol0", {1, 0, 1, 0, 0, 0, 0}});
        v.push_back({"sol1+", {1, 0, h3, 0.5, 0, 0, 0}});
        v.push_back({"sol1-", {1, 0, h3, -0.5, 0, 0, 0}});
        v.push_back({"sol2", {h3, 0.5, 1, 0, 0, 0, 0}});
        v.push_back({"sol3+", {h3, 0.5, h3, 0, 0, 0, 0.5}});
        v.push_back({"sol3-", {h3, 0.5, h3, 0, 0, 0, -0.5}});
        v.push_back({"sol4", {h3, 0.5, 0.5, 0, 0, 0, h3}});
        v.push_back({"sol5", {0.5, h3, h3, 0, 0, 0, 0.5}});
        return v;
    }();
    return sols;
}

namespace {

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Damped Gauss-Newton with numerical Jacobian; returns true on ||F|| < tol.
bool gauss_newton(const ResidualFn& F, Eigen::VectorXd& x, double tol, int max_iter = 60) {
    const double h = 1e-7;
    double lambda = 1e-3;
    Eigen::VectorXd f = F(x);
    for (int it = 0; it < max_iter; ++it) {
        if (f.norm() < tol) return true;
        int n = static_cast<int>(x.size()), m = static_cast<int>(f.size());
        Eigen::MatrixXd J(m, n);
        for (int j = 0; j < n; ++j) {
            Eigen::VectorXd xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            J.col(j) = (F(xp) - F(xm)) / (2 * h);
        }
        Eigen::MatrixXd A = J.transpose() * J + lambda * Eigen::MatrixXd::Identity(n, n);
        Eigen::VectorXd g = J.transpose() * f;
        Eigen::VectorXd dx = A.ldlt().solve(g);
        Eigen::VectorXd x2 = x - dx;
        Eigen::VectorXd f2 = F(x2);
        if (f2.norm() < f.norm()) {
            x = x2;
            f = f2;
            lambda = std::max(lambda * 0.3, 1e-12);
        } else {
            lambda *= 8;
            if (lambda > 1e8) break;
        }
    }
    return f.norm() < tol;
}

struct RawSolution {
    std::array<double, 7> tuple;
};

void record(std::vector<RawSolution>& out, const PlaneCandidate& q, double dedup_tol) {
    auto t = q.tuple();
    for (const auto& r : out) {
        double d = 0;
        for (int i = 0; i < 7; ++i) d = std::max(d, std::abs(r.tuple[i] - t[i]));
        if (d < dedup_tol) return;
    }
    out.push_back({t});
}

}  // namespace

std::array<Vec8, 4> plane_V1() {
    return {cvec(1, 0, 0, 0), cvec(Cx(0, 1), 0, 0, 0), cvec(0, 1, 0, 0), cvec(0, Cx(0, 1), 0, 0)};
}

std::array<Vec8, 4> plane_V2() {
    return {cvec(1, 0, 0, 0), cvec(Cx(0, 1), 0, 0, 0), cvec(0, 0, 1, 0), cvec(0, 0, Cx(0, 1), 0)};
}

std::array<Vec8, 4> plane_from_candidate(const PlaneCandidate& q) {
    std::array<Vec8, 4> raw = {q.e0(), q.e1(), q.e2(), q.e3()};
    std::array<Vec8, 4> b{};
    int k = 0;
    for (const Vec8& v : raw) {
        Vec8 w = v;
        for (int i = 0; i < k; ++i) w -= b[i].dot(w) * b[i];
        if (w.norm() < 1e-9) throw std::runtime_error("plane_from_candidate: degenerate frame");
        b[k++] = w.normalized();
    }
    return b;
}

namespace {

bool same_plane(const std::array<Vec8, 4>& A, const std::array<Vec8, 4>& B, double tol = 1e-7) {
    Eigen::Matrix4d M;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) M(i, j) = A[i].dot(B[j]);
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(M);
    return std::abs(svd.singularValues().minCoeff() - 1.0) < tol;
}

}  // namespace

PlaneEnumeration enumerate_plane_solutions(double grid_step, double match_tol) {
    PlaneEnumeration out;
    std::vector<RawSolution> raw;
    std::vector<std::array<Vec8, 4>> v2_planes;
    const double dedup = 1e-6;
    const double accept = 1e-10;
    const double pi = std::numbers::pi;

    // Case (1)-(i): s = 0, B3 = A4 = B4 = 0, A2 = cos th, A3 = sin th.
    {
        auto F = [](const Eigen::VectorXd& x) {
            PlaneCandidate q;
            q.c = 1;
            q.s = 0;
            q.A2 = std::cos(x[0]);
            q.A3 = std::sin(x[0]);
            Vec8 p = q.e2();
            Vec8 w = star_contract3(p, q.e0(), q.e1(), q.e3());
            Vec8 t = w - w.dot(p) * p;
            Eigen::VectorXd r(8);
            for (int i = 0; i < 8; ++i) r[i] = t[i];
            return r;
        };
        for (double th = -1.5; th <= 1.5; th += grid_step) {
            Eigen::VectorXd x(1);
            x[0] = th;
            if (F(x).norm() > 0.4) continue;
            if (gauss_newton(F, x, accept) && std::cos(x[0]) > 1e-3) {
                PlaneCandidate q;
                q.c = 1;
                q.s = 0;
                q.A2 = std::cos(x[0]);
                q.A3 = std::sin(x[0]);
                record(raw, q, dedup);
            }
        }
    }

    auto e2_sys = [](const PlaneCandidate& q) {
        auto r = plane_condition_e2(q);
        return Eigen::Vector3d(r[0], r[1], r[2]);
    };

    // Case (1)-(ii): c^2 = 3 s^2, A3 = B3 = 0.
    {
        auto F = [&](const Eigen::VectorXd& x) {
            PlaneCandidate q;
            q.c = std::sqrt(3.0) / 2;
            q.s = 0.5;
            q.A2 = std::cos(x[0]);
            q.A4 = std::sin(x[0]) * std::cos(x[1]);
            q.B4 = std::sin(x[0]) * std::sin(x[1]);
            return Eigen::VectorXd(e2_sys(q));
        };
        for (double phi = 0.02; phi <= 1.56; phi += grid_step)
            for (double psi = 0.0; psi < 2 * pi; psi += grid_step) {
                Eigen::VectorXd x(2);
                x << phi, psi;
                if (F(x).norm() > 0.3) continue;
                if (gauss_newton(F, x, accept)) {
                    PlaneCandidate q;
                    q.c = std::sqrt(3.0) / 2;
                    q.s = 0.5;
                    q.A2 = std::cos(x[0]);
                    q.A4 = std::sin(x[0]) * std::cos(x[1]);
                    q.B4 = std::sin(x[0]) * std::sin(x[1]);
                    if (q.A2 > 1e-3) {
                        if (plane_geometric_residual_e1(q) > 1e-8 ||
                            plane_geometric_residual_e2(q) > 1e-8) {
                            out.flagged_cells.push_back("1ii: geometric check failed");
                        } else {
                            record(raw, q, dedup);
                        }
                    }
                }
            }
    }

    // Case (1)-(iii): A3 = B3 = 0, c (A2^2 + 3A4^2 + 3B4^2) - 2 s A2 B4 = 0.
    {
        auto mk = [](const Eigen::VectorXd& x) {
            PlaneCandidate q;
            q.s = x[0];
            q.c = std::sqrt(std::max(0.0, 1 - x[0] * x[0]));
            q.A2 = std::cos(x[1]);
            q.A4 = std::sin(x[1]) * std::cos(x[2]);
            q.B4 = std::sin(x[1]) * std::sin(x[2]);
            return q;
        };
        auto F = [&](const Eigen::VectorXd& x) {
            PlaneCandidate q = mk(x);
            Eigen::VectorXd r(4);
            r.head<3>() = e2_sys(q);
            r[3] = q.c * (q.A2 * q.A2 + 3 * q.A4 * q.A4 + 3 * q.B4 * q.B4) -
                   2 * q.s * q.A2 * q.B4;
            return r;
        };
        for (double s = 0.04; s <= 0.99; s += grid_step)
            for (double phi = 0.02; phi <= 1.56; phi += grid_step * 2)
                for (double psi = 0.0; psi < 2 * pi; psi += grid_step * 2) {
                    Eigen::VectorXd x(3);
                    x << s, phi, psi;
                    if (F(x).norm() > 0.25) continue;
                    if (gauss_newton(F, x, accept)) {
                        PlaneCandidate q = mk(x);
                        if (q.A2 > 1e-3 && q.c > 1e-3 && q.s > 1e-3) {
                            if (plane_geometric_residual_e1(q) > 1e-8 ||
                                plane_geometric_residual_e2(q) > 1e-8) {
                                out.flagged_cells.push_back("1iii: geometric check failed");
                            } else {
                                record(raw, q, dedup);
                            }
                        }
                    }
                }
    }

    // Case (2): c > 0, A2 = 0; after the stabilizer reduction the family
    // collapses onto V2 for every s in (0,1).
    {
        for (double s = grid_step; s < 0.999; s += grid_step) {
            PlaneCandidate q;
            q.s = s;
            q.c = std::sqrt(1 - s * s);
            q.A2 = 0;
            q.A3 = 1;
            // e1 and e2 are not orthogonal here, so test the projected
            // tangent triples (the honest geometric condition).
            double r1 = projected_residual(q.e1(), q.e0(), q.e2(), q.e3());
            double r2 = projected_residual(q.e2(), q.e0(), q.e1(), q.e3());
            if (r1 < 1e-8 && r2 < 1e-8) {
                auto pl = plane_from_candidate(q);
                if (same_plane(pl, plane_V2())) {
                    out.v2_family_found = true;
                } else {
                    v2_planes.push_back(pl);
                }
            } else {
                out.flagged_cells.push_back("case2: unexpected nonzero residual");
            }
        }
    }

    // Case (3): c = 0; the reduced frame forces e2 = +-e1, no valid candidates.
    {
        PlaneCandidate q;
        q.c = 0;
        q.s = 1;
        q.A2 = 0;
        q.A3 = 1;
        if ((q.e2() - q.e1()).norm() > 1e-12 && (q.e2() + q.e1()).norm() > 1e-12)
            out.flagged_cells.push_back("case3: expected degenerate frame");
    }

    // Match the deduplicated tuples against the printed list.
    for (const RawSolution& r : raw) {
        PlaneSolution s;
        s.tuple = r.tuple;
        s.match = "";
        for (const auto& [name, t] : printed_plane_solutions()) {
            double d = 0;
            for (int i = 0; i < 7; ++i) d = std::max(d, std::abs(t[i] - r.tuple[i]));
            if (d < match_tol) {
                s.match = name;
                break;
            }
        }
        if (s.match.empty()) {
            PlaneCandidate q{r.tuple[0], r.tuple[1], r.tuple[2], r.tuple[3],
                             r.tuple[4], r.tuple[5], r.tuple[6]};
            if (same_plane(plane_from_candidate(q), plane_V2())) {
                s.match = "V2";
                out.v2_family_found = true;
            } else {
                ++out.unmatched;
            }
        }
        out.tuples.push_back(s);
    }
    for (const auto& pl : v2_planes) {
        (void)pl;
        ++out.unmatched;
    }
    return out;
}

GlobalPlaneResult plane_global_associativity(const std::array<Vec8, 4>& V, int n_samples,
                                             std::uint64_t seed, double tol) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    const G2Context ctx = squashed().context();
    GlobalPlaneResult out;
    out.pass = true;
    out.worst_residual = 0;
    for (int it = 0; it < n_samples; ++it) {
        Eigen::Vector4d a;
        for (int i = 0; i < 4; ++i) a[i] = g(rng);
        a.normalize();
        Vec8 x = Vec8::Zero();
        for (int i = 0; i < 4; ++i) x += a[i] * V[i];
        x.normalize();
        // Tangent basis of V cap S^7 at x.
        std::array<Vec8, 3> tb{};
        int k = 0;
        for (int i = 0; i < 4 && k < 3; ++i) {
            Vec8 w = V[i] - V[i].dot(x) * x;
            for (int j = 0; j < k; ++j) w -= tb[j].dot(w) * tb[j];
            if (w.norm() > 1e-6) tb[k++] = w.normalized();
        }
        if (k < 3) continue;
        AssocResult r = is_associative(ctx, x, tb[0], tb[1], tb[2], tol);
        if (r.residual > out.worst_residual) {
            out.worst_residual = r.residual;
            out.witness_point = x;
            out.witness_triple = tb;
        }
        if (!r.pass) out.pass = false;
    }
    return out;
}

// ---- T^3 orbits ------------------------------------------------------------

std::array<std::complex<double>, 4> t3_zeta(const Vec8& p) {
    Vec4c z = to_complex(p);
    Cx z1 = z[0], z2 = z[1], z3 = z[2], z4 = z[3];
    Cx w = z1 * z2 * std::conj(z3) * std::conj(z4);
    double im = w.imag();
    const Cx I(0, 1);
    std::array<Cx, 4> zeta;
    zeta[0] = -I * z2 * std::conj(z3) * std::conj(z4) - 4.0 * im * std::conj(z1);
    zeta[1] = -I * z1 * std::conj(z3) * std::conj(z4) - 4.0 * im * std::conj(z2);
    zeta[2] = I * std::conj(z1) * std::conj(z2) * z4 - 4.0 * im * std::conj(z3);
    zeta[3] = I * std::conj(z1) * std::conj(z2) * z3 - 4.0 * im * std::conj(z4);
    return zeta;
}

std::vector<std::array<double, 5>> t3_slice_solutions(double grid_step, double dedup_tol) {
    // Slice coordinates (x1,x2,x3,x4,y4) on the unit sphere, x1,x2,x3 > 0.
    auto to_point = [](const Eigen::VectorXd& u) {
        Vec8 p = Vec8::Zero();
        p[0] = u[0];
        p[2] = u[1];
        p[4] = u[2];
        p[6] = u[3];
        p[7] = u[4];
        return p;
    };
    auto F = [&](const Eigen::VectorXd& u) {
        Vec8 p = to_point(u);
        auto zeta = t3_zeta(p);
        Eigen::VectorXd r(9);
        for (int i = 0; i < 4; ++i) {
            r[2 * i] = zeta[i].real();
            r[2 * i + 1] = zeta[i].imag();
        }
        r[8] = p.squaredNorm() - 1.0;
        return r;
    };
    std::vector<std::array<double, 5>> sols;
    auto push = [&](const Eigen::VectorXd& u) {
        for (const auto& s : sols) {
            double d = 0;
            for (int i = 0; i < 5; ++i) d = std::max(d, std::abs(s[i] - u[i]));
            if (d < dedup_tol) return;
        }
        sols.push_back({u[0], u[1], u[2], u[3], u[4]});
    };
    for (double x1 = grid_step; x1 < 1.0; x1 += grid_step)
        for (double x2 = grid_step; x2 < 1.0; x2 += grid_step)
            for (double x3 = grid_step; x3 < 1.0; x3 += grid_step) {
                double r2 = 1.0 - x1 * x1 - x2 * x2 - x3 * x3;
                if (r2 < -0.2) continue;
                for (double ang = 0; ang < 2 * std::numbers::pi; ang += 4 * grid_step) {
                    double rad = r2 > 0 ? std::sqrt(r2) : 0.05;
                    Eigen::VectorXd u(5);
                    u << x1, x2, x3, rad * std::cos(ang), rad * std::sin(ang);
                    if (F(u).norm() > 0.08) continue;
                    Eigen::VectorXd x = u;
                    if (gauss_newton(F, x, 1e-12)) {
                        if (x[0] > 1e-3 && x[1] > 1e-3 && x[2] > 1e-3 &&
                            std::hypot(x[3], x[4]) > 1e-3)
                            push(x);
                    }
                }
            }
    return sols;
}

double t3_orbit_congruence_residual(int n_samples, std::uint64_t seed) {
    const GroupAction& t3 = action(ActionTag::T3);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
    Vec8 p_plus = cvec(0.5, 0.5, 0.5, Cx(0, 0.5));
    // K-block Sp(2) element: (z1,z2,z3,z4) -> (z1,z2,-i z4,-i z3).
    Mat4c K = Mat4c::Zero();
    const Cx I(0, 1);
    K(0, 0) = 1;
    K(1, 1) = 1;
    K(2, 3) = -I;
    K(3, 2) = -I;
    Mat8 Kr = realify(K);
    double worst = 0;
    for (int it = 0; it < n_samples; ++it) {
        Vec8 q = t3.element_t3(ang(rng), ang(rng), ang(rng)) * p_plus;
        Vec4c w = to_complex(Kr * q);
        // Membership in T^3 . (1,1,1,-i)/2: match phases.
        auto phase = [](Cx z) { return std::atan2(z.imag(), z.real()); };
        double f1 = phase(w[0]), f2 = phase(w[1]), f3 = phase(w[2]);
        double best = 1e9;
        for (int branch = 0; branch < 2; ++branch) {
            double alpha = 0.5 * (f1 + f2) + branch * std::numbers::pi;
            double beta = 0.5 * (f1 - f2);
            double gamma = f3 - alpha;
            Vec8 img = t3.element_t3(alpha, beta, gamma) * cvec(0.5, 0.5, 0.5, Cx(0, -0.5));
            best = std::min(best, (img - Kr * q).norm());
        }
        worst = std::max(worst, best);
    }
    return worst;
}

// ---- small SU(2) -----------------------------------------------------------

SmallSu2Result su2_small_condition(const Vec8& p) {
    const GroupAction& act = action(ActionTag::SU2small);
    Vec8 E1 = act.generator_field(1, p);
    Vec8 E2 = act.generator_field(2, p);
    Vec8 E3 = act.generator_field(3, p);
    Vec8 w = star_contract3(p, E1, E2, E3);
    SmallSu2Result out;
    out.dx1_coefficient = w[0];
    out.restricted_residual = restricted_norm(p, w);
    return out;
}

// ---- irreducible SU(2) -----------------------------------------------------

namespace {

double det_eta_matrix(const Vec8& p) {
    const GroupAction& act = action(ActionTag::SU2irr);
    const Sasakian& sas = sasakian();
    Eigen::Matrix3d M;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) M(i - 1, j - 1) = sas.eta(i, p, act.generator_field(j, p));
    return M.determinant();
}

}  // namespace

double su2_irr_case1(double mu) {
    Vec8 p0 = cvec(1, 0, mu, 0) / std::sqrt(mu * mu + 1);
    Vec8 v = cvec(-mu, 0, 1, 0);
    auto f = [&](double t) { return det_eta_matrix(p0 + t * v); };
    const double h = 1e-3;
    return (8 * (f(h) - f(-h)) - (f(2 * h) - f(-2 * h))) / (12 * h);
}

double su2_irr_case1_closed_form(double mu) {
    return 24 * mu * (mu * mu - 3) * (3 * mu * mu - 1) * std::pow(mu * mu + 1, -2.5);
}

IrrCertificates su2_irr_case2_certificates() {
    const GroupAction& act = action(ActionTag::SU2irr);
    const SquashedStructure& sq = squashed();
    IrrCertificates out{};
    Vec8 pA2 = cvec(1, 0, 0, 0), pA3 = cvec(0, 0, 1, 0);
    out.max_gram_offdiag = 0;
    for (const Vec8& p : {pA2, pA3}) {
        std::array<Vec8, 3> E;
        for (int i = 1; i <= 3; ++i) E[i - 1] = act.generator_field(i, p);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                out.max_gram_offdiag =
                    std::max(out.max_gram_offdiag, std::abs(sq.g_tilde(p, E[i], E[j])));
        double phi = sq.phi_value(p, E[0], E[1], E[2]);
        double prod = 1;
        for (int i = 0; i < 3; ++i) prod *= std::sqrt(sq.g_tilde(p, E[i], E[i]));
        if (p == pA2) {
            out.phi_at_A2 = phi;
            out.calib_A2 = std::abs(std::abs(phi) - prod);
        } else {
            out.phi_at_A3 = phi;
            out.calib_A3 = std::abs(std::abs(phi) - prod);
        }
    }
    return out;
}

Eigen::Matrix3d orbit_induced_metric(ActionTag tag, const Vec8& p) {
    const GroupAction& act = action(tag);
    const SquashedStructure& sq = squashed();
    Eigen::Matrix3d M;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            M(i - 1, j - 1) = sq.g_tilde(p, act.generator_field(i, p), act.generator_field(j, p));
    return M;
}

}  // namespace sq7
