// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <iostream>

#include "sq7/report.hpp"

using namespace sq7;

namespace {

int failures = 0;

void line(int idx, const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << idx << ": " << name;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

Vec8 cv(Cx a, Cx b, Cx c, Cx d) {
    Vec4c z;
    z << a, b, c, d;
    return to_real(z);
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", x);
    return buf;
}

}  // namespace

int main() {
    using Clock = std::chrono::steady_clock;
    const Config cfg;  // seed 42, tolerance 1e-9, samples 100, nmax 10, gamma_max 4

    // 1. Nearly-parallel identity d phi~ = 4 * phi~.
    {
        auto t0 = Clock::now();
        auto res = squashed().verify_nearly_parallel(squashed_params(), cfg.seed, 100, 20);
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        line(1, "nearly parallel d phi~ = 4 *phi~",
             res.nearly_parallel < 1e-9 && secs < 10.0,
             "residual=" + fmt(res.nearly_parallel) + " runtime=" + fmt(secs) + "s");
    }

    // 2. Parametric variation identity at 5 random (s,t).
    {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> u(0.5, 1.8);
        double worst = 0;
        for (int it = 0; it < 5; ++it) {
            VariationParams pr{u(rng), u(rng)};
            worst = std::max(
                worst,
                squashed().verify_nearly_parallel(pr, cfg.seed + it, 12, 8).parametric_identity);
        }
        line(2, "parametric d phi~ = (12 s/t^2) *G1 + (2s/t^2 + 2/s) *G2", worst < 1e-9,
             "residual=" + fmt(worst));
    }

    // 3. Hodge duality of the stored *phi~.
    {
        const SquashedStructure& sq = squashed();
        std::mt19937_64 rng(cfg.seed + 3);
        double worst = 0;
        for (int ip = 0; ip < 100; ++ip) {
            Vec8 p = random_sphere_point(rng);
            MetricAtPoint m = sq.metric_at(p);
            FrameForm st = hodge_star_at(sq.phi(), m, sq.star_orientation());
            for (int it = 0; it < 3; ++it) {
                std::array<Vec8, 4> v;
                for (auto& x : v) x = random_tangent(rng, p);
                double a = st.eval(m, std::span<const Vec8>(v.data(), 4));
                double b = sq.star_phi().eval(p, std::span<const Vec8>(v.data(), 4));
                worst = std::max(worst, std::abs(a - b));
            }
        }
        line(3, "stored *phi~ equals the pointwise Hodge star", worst < 1e-9,
             "residual=" + fmt(worst));
    }

    // 4. Plane classification.
    {
        auto v1 = plane_global_associativity(plane_V1(), 200, cfg.seed + 4);
        auto v2 = plane_global_associativity(plane_V2(), 200, cfg.seed + 5);
        PlaneCandidate sol1;
        sol1.c = 1;
        sol1.s = 0;
        sol1.A2 = std::sqrt(3.0) / 2;
        sol1.A3 = 0.5;
        auto bad = plane_global_associativity(plane_from_candidate(sol1), 200, cfg.seed + 6);
        // Paper witness triple at (e0+e1)/sqrt2.
        Vec8 e0 = sol1.e0(), e1 = sol1.e1(), e2 = sol1.e2(), e3 = sol1.e3();
        Vec8 wp = (e0 + e1) / std::sqrt(2.0);
        AltForm st = AltForm::from_poly(squashed().star_phi(), wp);
        AltForm one = st.interior((e1 - e0) / std::sqrt(2.0))
                          .interior((e2 - e3) / std::sqrt(2.0))
                          .interior((e2 + e3) / std::sqrt(2.0));
        Vec8 w = Vec8::Zero();
        for (const auto& [mm, cc] : one.terms())
            for (int a = 0; a < 8; ++a)
                if (mm == (1u << a)) w[a] += cc;
        double witness = (w - w.dot(wp) * wp).norm();
        PlaneEnumeration e = enumerate_plane_solutions(0.02, 1e-6);
        int missing = 0;
        for (const auto& [name, t] : printed_plane_solutions()) {
            (void)t;
            bool found = false;
            for (const auto& s : e.tuples)
                if (s.match == name) found = true;
            if (!found) ++missing;
        }
        bool ok = v1.pass && v1.worst_residual < 1e-9 && v2.pass && v2.worst_residual < 1e-9 &&
                  !bad.pass && bad.worst_residual > 1e-3 && witness > 1e-3 && missing == 0 &&
                  e.unmatched == 0 && e.v2_family_found && e.flagged_cells.empty();
        line(4, "plane classification (V1, V2, sol1 counterexample, enumeration)", ok,
             "V1=" + fmt(v1.worst_residual) + " V2=" + fmt(v2.worst_residual) +
                 " witness=" + fmt(witness) + " missing=" + std::to_string(missing));
    }

    // 5. T^3 orbit.
    {
        auto sols = t3_slice_solutions(0.1, 1e-6);
        bool two = sols.size() == 2;
        double match = 0;
        for (const auto& s : sols) {
            double d1 = std::max({std::abs(s[0] - 0.5), std::abs(s[1] - 0.5),
                                  std::abs(s[2] - 0.5), std::abs(s[3]),
                                  std::abs(std::abs(s[4]) - 0.5)});
            match = std::max(match, d1);
        }
        const GroupAction& t3 = action(ActionTag::T3);
        std::mt19937_64 rng(cfg.seed + 7);
        std::uniform_real_distribution<double> ang(0.0, 2 * 3.14159265358979);
        Vec8 p0 = cv(0.5, 0.5, 0.5, Cx(0, 0.5));
        double worst = 0;
        for (int it = 0; it < 25; ++it) {
            Vec8 x = t3.element_t3(ang(rng), ang(rng), ang(rng)) * p0;
            AssocResult a = is_associative(squashed().context(), x, t3.generator_field(1, x),
                                           t3.generator_field(2, x), t3.generator_field(3, x));
            worst = std::max(worst, a.residual);
        }
        line(5, "T^3 orbit zero set and associativity", two && match < 1e-6 && worst < 1e-9,
             "solutions=" + std::to_string(sols.size()) + " match=" + fmt(match) +
                 " orbit_residual=" + fmt(worst));
    }

    // 6. Calibration values.
    {
        IrrCertificates c = su2_irr_case2_certificates();
        const GroupAction& t3 = action(ActionTag::T3);
        Vec8 p1 = cv(0.5, 0.5, 0.5, Cx(0, 0.5));
        double f = squashed().phi_value(p1, t3.generator_field(1, p1),
                                        t3.generator_field(2, p1), t3.generator_field(3, p1));
        std::mt19937_64 rng(cfg.seed + 8);
        const GroupAction& irr = action(ActionTag::SU2irr);
        const Sasakian& sas = sasakian();
        double eta_sq = 0;
        for (int it = 0; it < 100; ++it) {
            Vec8 p = random_sphere_point(rng);
            double s = 0;
            for (int i = 1; i <= 3; ++i)
                for (int j = 1; j <= 3; ++j)
                    s += std::pow(sas.eta(i, p, irr.generator_field(j, p)), 2);
            eta_sq = std::max(eta_sq, std::abs(s - 9.0));
        }
        double r = std::max({std::abs(c.phi_at_A2 + 243.0 / 25),
                             std::abs(c.phi_at_A3 - 513.0 / 125),
                             std::abs(f + 81.0 / 250), eta_sq});
        line(6, "calibration values (-243/25, 513/125, -81/250, sum eta^2 = 9)", r < 1e-9,
             "residual=" + fmt(r));
    }

    // 7. Induced orbit metrics.
    {
        Eigen::Matrix3d a2 = orbit_induced_metric(ActionTag::SU2irr, cv(1, 0, 0, 0));
        Eigen::Matrix3d a3 = orbit_induced_metric(ActionTag::SU2irr, cv(0, 0, 1, 0));
        Eigen::Matrix3d a1 = orbit_induced_metric(ActionTag::T3, cv(0.5, 0.5, 0.5, Cx(0, 0.5)));
        double r = 0;
        r = std::max(r, (a2 - Eigen::Matrix3d((27.0 / 25) *
                                              Eigen::Vector3d(5, 5, 3).asDiagonal()))
                            .cwiseAbs()
                            .maxCoeff());
        r = std::max(r, (a3 - Eigen::Matrix3d((9.0 / 25) *
                                              Eigen::Vector3d(19, 19, 1).asDiagonal()))
                            .cwiseAbs()
                            .maxCoeff());
        // Vertical A1 coefficient 9/25 = (3/5)^2 from g~|V; the remark's 3/5
        // contradicts the paper's own frame normalization (see notes).
        r = std::max(
            r, (a1 - Eigen::Matrix3d(
                         Eigen::Vector3d(9.0 / 25, 27.0 / 50, 27.0 / 50).asDiagonal()))
                   .cwiseAbs()
                   .maxCoeff());
        line(7, "induced metrics on A1, A2, A3", r < 1e-10, "residual=" + fmt(r));
    }

    // 8. Connection matrices.
    {
        double r = 0;
        for (OrbitCase c : all_orbit_cases()) {
            NormalFrame fr = build_normal_frame(c);
            ConnectionData cd = connection_matrix(fr);
            auto printed = printed_connection(c);
            for (int i = 0; i < 3; ++i)
                r = std::max(r, (cd.A[i] - printed[i]).cwiseAbs().maxCoeff());
        }
        line(8, "connection matrices match the five printed displays", r < 1e-9,
             "residual=" + fmt(r));
    }

    // 9. Deformation dimensions.
    {
        auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        const int expected[4] = {4, 8, 16, 16};
        const OrbitCase cases[4] = {OrbitCase::L1, OrbitCase::L2, OrbitCase::A2, OrbitCase::A3};
        for (int nmax : {8, 10, 12})
            for (int i = 0; i < 4; ++i) {
                int kd = kernel_dimension(cases[i], nmax);
                int bf = brute_force_kernel(cases[i], nmax);
                if (kd != expected[i] || bf != expected[i]) {
                    ok = false;
                    detail += to_string(cases[i]) + "@" + std::to_string(nmax) + " ";
                }
            }
        T3KernelResult t3 = t3_kernel(cfg.gamma_max);
        if (t3.real_dimension != 10 || t3.modes.size() != 10 || !t3.det_formula_ok) ok = false;
        std::vector<std::array<int, 3>> expect_modes = {
            {2, 0, 0},  {-2, 0, 0}, {0, 2, 0},  {0, -2, 0}, {0, 0, 2},
            {0, 0, -2}, {0, 1, 1},  {0, -1, -1}, {0, 1, -1}, {0, -1, 1}};
        for (const auto& m : expect_modes) {
            bool found = false;
            for (const auto& got : t3.modes) found = found || got == m;
            if (!found) ok = false;
        }
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (secs >= 120.0) ok = false;
        line(9, "deformation kernel dimensions 4/8/16/16 and T^3 modes (dim 10)", ok,
             detail + "runtime=" + fmt(secs) + "s");
    }

    // 10. Trivial-deformation ranks.  Asserted against the published counts
    // 4/8/10/9/10; the engine computes 9 for A3 and refutes the final entry:
    // rho(diag(l, lbar)) scales the A3 base point by a phase, so the left
    // U(1)-circle preserves the orbit and the stabilizer is 4-dimensional,
    // exactly as for A2.  The failure below is the documented refutation
    // (see notes/decisions.md in the review material).
    {
        const int expected[5] = {4, 8, 10, 9, 10};
        bool ok = true;
        double min_gap = 1e300;
        int i = 0;
        std::string got = "computed=";
        for (OrbitCase c : all_orbit_cases()) {
            TrivialDeformation td = trivial_deformation_rank(c, 40, cfg.seed);
            if (td.rank != expected[i]) ok = false;
            got += std::to_string(td.rank) + (i < 4 ? "/" : "");
            min_gap = std::min(min_gap, td.sv_gap);
            ++i;
        }
        if (min_gap < 1e3) ok = false;
        line(10, "trivial deformation ranks 4/8/10/9/10", ok,
             got + " min_sv_gap=" + fmt(min_gap) +
                 "; A3 orbit is U(1)-stable, so its published rank 10 is refuted");
    }

    // 11. Twistor correspondences.
    {
        HatResult h = hat_transform(OrbitCase::A3, 200, cfg.seed + 11);
        double hat_worst = 0;
        for (const auto& pt : h.points) hat_worst = std::max(hat_worst, distance_to_veronese(pt));
        HolomorphicCheck a1 = holomorphic_curve_check(OrbitCase::A1, 50, cfg.seed + 12);
        HolomorphicCheck a2 = holomorphic_curve_check(OrbitCase::A2, 50, cfg.seed + 13);
        HolomorphicCheck a3 = holomorphic_curve_check(OrbitCase::A3, 50, cfg.seed + 14);
        bool ok = hat_worst < 1e-6 && a1.holomorphic && a2.holomorphic && a3.holomorphic &&
                  a2.horizontal && !a1.horizontal && !a3.horizontal;
        line(11, "hat transform A3 -> A2 and holomorphic-curve checks", ok,
             "hat=" + fmt(hat_worst));
    }

    // 12. Veronese stabilizer.
    {
        VeroneseStabilizer v = veronese_stabilizer_check(cfg.seed, 100);
        bool ok = v.multiplicativity_residual < 1e-8 && v.intersection_dimension == 6;
        line(12, "Veronese embedding multiplicativity and sl(2,C) intersection", ok,
             "mult=" + fmt(v.multiplicativity_residual) +
                 " dim=" + std::to_string(v.intersection_dimension));
    }

    // 13. Irreducible case (1) derivative.
    {
        double worst = 0;
        bool positive = true;
        for (double mu : {1.8, 2.0, 3.0}) {
            double num = su2_irr_case1(mu);
            worst = std::max(worst, std::abs(num - su2_irr_case1_closed_form(mu)));
            if (num <= 0) positive = false;
        }
        line(13, "su(2)-irreducible case (1): d(det M) positive and matches the closed form",
             worst < 1e-8 && positive, "residual=" + fmt(worst));
    }

    // 14. Determinism of the JSON report.
    {
        Config small = cfg;
        small.samples = 25;
        auto r1 = run_suite("orbits", small);
        auto r2 = run_suite("orbits", small);
        std::string a = reports_to_json("orbits", small, r1).dump();
        std::string b = reports_to_json("orbits", small, r2).dump();
        bool all_pass = true;
        for (const auto& r : r1) all_pass = all_pass && r.status == "pass";
        line(14, "identical JSON across two runs with one seed", a == b && all_pass,
             all_pass ? "" : "orbits suite not fully passing");
    }

    std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed"
                                : "ACCEPTANCE: " + std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
