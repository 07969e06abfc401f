#pragma once

#include "sq7/deformation.hpp"

namespace sq7 {

// Projective point in CP^3, stored as a unit C^4 representative with the
// first sizable entry phase-normalized.
struct ProjectivePoint {
    Vec4c z;
    explicit ProjectivePoint(const Vec4c& w);
};
double projective_distance(const ProjectivePoint& a, const ProjectivePoint& b);

// Quaternionic Hopf data: pi = p2 o p1 with values in S^4 c R^5.
Eigen::Matrix<double, 5, 1> pi_hopf(const Vec8& p);
Eigen::Matrix<double, 5, 1> p2_twistor(const ProjectivePoint& z);

// Almost complex structure I1' at p in S^7 on the p1-horizontal subspace
// (vectors orthogonal to xi_1): -I1 on the p2-vertical part span{xi2, xi3},
// +I1 on the quaternionic-horizontal part.
Vec8 i1_prime(const Vec8& p, const Vec8& v);

struct HolomorphicCheck {
    bool holomorphic;   // pushforward plane closed under I1'
    bool horizontal;    // pushforward contained in the horizontal distribution
    double residual;
    double vertical_part;
};
HolomorphicCheck holomorphic_curve_check(OrbitCase c, int n_samples = 50,
                                         std::uint64_t seed = 5);

// Hat transform of the projected orbit: for each sampled point computes
// L = pr_H(T Sigma), its orthogonal complement in H, and P(v) = [v~].
struct HatResult {
    std::vector<ProjectivePoint> points;
    double min_pr_norm;  // smallest horizontal-projection singular value seen
};
HatResult hat_transform(OrbitCase c, int n_samples, std::uint64_t seed);

// Distance from a projective point to the Veronese curve p1(A2) and to the
// projected torus orbit p1(A1).
double distance_to_veronese(const ProjectivePoint& w);
double distance_to_p1A1(const ProjectivePoint& w);

struct VeroneseStabilizer {
    double multiplicativity_residual;
    double curve_invariance_residual;
    int intersection_dimension;  // expected 6 = dim_R sl(2,C)
};
VeroneseStabilizer veronese_stabilizer_check(std::uint64_t seed = 17, int n_pairs = 100);

// GL(2,C) -> GL(4,C) extension of the irreducible SU(2) embedding.
Mat4c veronese_embedding(const Eigen::Matrix2cd& g);

}  // namespace sq7
