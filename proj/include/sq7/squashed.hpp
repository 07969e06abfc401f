#pragma once

#include <random>

#include "sq7/model.hpp"
#include "sq7/sasakian.hpp"

namespace sq7 {

struct VariationParams {
    double s;
    double t;
};

inline VariationParams squashed_params() { return {3.0 / 5.0, 3.0 / std::sqrt(5.0)}; }

// The canonical-variation structure on S^7.  All stored forms are exact
// rational polynomial forms on R^8; the (s,t)-dependence enters only through
// scalar prefactors, so generic parameters cost nothing extra.
class SquashedStructure {
public:
    SquashedStructure();

    // Exact building blocks.
    const PolyForm& eta123() const { return eta123_; }              // eta_1 ^ eta_2 ^ eta_3
    const PolyForm& sum_eta_omega() const { return sum_eta_omega_; }  // sum eta_i ^ omega_i
    const PolyForm& sum_omega_sq() const { return sum_omega_sq_; }    // sum omega_i^2
    const PolyForm& sum_etaeta_omega() const { return sum_etaeta_omega_; }
    const PolyForm& d_eta123() const { return d_eta123_; }
    const PolyForm& d_sum_eta_omega() const { return d_sum_eta_omega_; }

    // Squashed-parameter forms (s = 3/5, t = 3/sqrt5): phi~, *phi~, d phi~.
    const PolyForm& phi() const { return phi_; }
    const PolyForm& star_phi() const { return star_phi_; }
    const PolyForm& d_phi() const { return d_phi_; }
    // *phi~ through the small-SU(2) proof expression
    // (27/25)(1/8 sum (d eta_i)^2 + 4/5 d eta123); equals star_phi() exactly.
    PolyForm star_phi_alt() const;

    // Metric of the canonical variation.
    double g_tilde(const VariationParams& pr, const Vec8& p, const Vec8& u, const Vec8& v) const;
    double g_tilde(const Vec8& p, const Vec8& u, const Vec8& v) const {
        return g_tilde(squashed_params(), p, u, v);
    }
    Mat8 metric_matrix(const VariationParams& pr, const Vec8& p) const;
    MetricAtPoint metric_at(const Vec8& p, const VariationParams& pr) const;
    MetricAtPoint metric_at(const Vec8& p) const { return metric_at(p, squashed_params()); }

    // Parametric evaluations on tangent tuples.
    double phi_value(const VariationParams& pr, const Vec8& p, std::span<const Vec8> v) const;
    double d_phi_value(const VariationParams& pr, const Vec8& p, std::span<const Vec8> v) const;
    double star_phi_value(const VariationParams& pr, const Vec8& p, std::span<const Vec8> v) const;

    double phi_value(const Vec8& p, const Vec8& a, const Vec8& b, const Vec8& c) const;

    struct NearlyParallelResidual {
        double parametric_identity;  // d phi - [(12 s/t^2) *G1 + (2s/t^2 + 2/s) *G2]
        double nearly_parallel;      // d phi - 4 *phi
    };
    NearlyParallelResidual verify_nearly_parallel(const VariationParams& pr, std::uint64_t seed,
                                                  int n_points = 30, int n_tuples = 10) const;

    // Theta(E1,E2) = sum eta_i(E1) Phi_i(E2) + eta_i(E2) Phi_i(E1).
    Vec8 theta_tensor(const Vec8& p, const Vec8& e1, const Vec8& e2) const;

    // Levi-Civita derivatives for equivariant fields along group orbits:
    // X is the generator field of the matrix Gx, and the field has value v at
    // p with ambient derivative Gx v there.
    Vec8 nabla_round(const Vec8& p, const Mat8& Gx, const Vec8& v) const;
    Vec8 nabla_tilde(const Vec8& p, const Mat8& Gx, const Vec8& v,
                     const VariationParams& pr) const;
    Vec8 nabla_tilde(const Vec8& p, const Mat8& Gx, const Vec8& v) const {
        return nabla_tilde(p, Gx, v, squashed_params());
    }

    // Calibration context for the squashed structure (used by is_associative,
    // cross products, the plane and orbit classifications).
    G2Context context() const;

    // Hodge-star orientation sign fixed at the base point (1,0,...,0); see
    // star_orientation().
    int star_orientation() const { return star_orientation_; }

private:
    PolyForm eta123_{3}, sum_eta_omega_{3}, sum_omega_sq_{4}, sum_etaeta_omega_{4};
    PolyForm d_eta123_{4}, d_sum_eta_omega_{4};
    PolyForm phi_{3}, star_phi_{4}, d_phi_{4};
    int star_orientation_ = 1;
};

const SquashedStructure& squashed();

// Seeded samplers.
Vec8 random_sphere_point(std::mt19937_64& rng);
Vec8 random_tangent(std::mt19937_64& rng, const Vec8& p);

}  // namespace sq7
