#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "sq7/symmetry.hpp"

namespace sq7 {

// Frame candidate for a 4-plane through e0 = (1,0,0,0), after the
// group reductions: e1 = (c i, 0, s, 0), e2 = (0, A2, A3 + i B3, A4 + i B4).
struct PlaneCandidate {
    double c = 1, s = 0, A2 = 0, A3 = 0, B3 = 0, A4 = 0, B4 = 0;

    Vec8 e0() const;
    Vec8 e1() const;
    Vec8 e2() const;
    Vec8 e3() const;  // the cross product e1 x e2 at e0, normalized scale 5/3

    std::array<double, 7> tuple() const { return {c, s, A2, A3, B3, A4, B4}; }
};

// Closed-form cross product at e0 from the plane lemma:
// (5/3)(e1 x e2) in complex coordinates.
Vec8 plane_cross_e0(const PlaneCandidate& cand);

// The printed polynomial systems.  Residuals are the left-hand sides.
std::array<double, 3> plane_condition_e1(const PlaneCandidate& cand);
std::array<double, 3> plane_condition_e2(const PlaneCandidate& cand);

// The geometric conditions *phi~(triple, .)|_{T S^7} = 0 at e1 and e2
// (sup-norm over a tangent frame).
double plane_geometric_residual_e1(const PlaneCandidate& cand);
double plane_geometric_residual_e2(const PlaneCandidate& cand);

// Checks that vanishing of the printed systems coincides with the vanishing
// of the geometric residuals over sampled candidates in the lemma domains.
bool condition_equivalence_audit(std::uint64_t seed, int n_samples, double tol = 1e-7);

struct PlaneSolution {
    std::array<double, 7> tuple;
    std::string match;  // "sol0".."sol5+-" or "V2"
};

struct PlaneEnumeration {
    std::vector<PlaneSolution> tuples;  // matched against the printed list
    bool v2_family_found = false;
    int unmatched = 0;
    std::vector<std::string> flagged_cells;
};

PlaneEnumeration enumerate_plane_solutions(double grid_step = 0.02, double match_tol = 1e-6);

// Printed solutions (canonical sign representatives including +- pairs).
const std::vector<std::pair<std::string, std::array<double, 7>>>& printed_plane_solutions();

struct GlobalPlaneResult {
    bool pass;
    double worst_residual;
    Vec8 witness_point;
    std::array<Vec8, 3> witness_triple;
};

// Samples V cap S^7 and applies the associativity test to the tangent
// 3-planes.  V is given by an orthonormal basis.
GlobalPlaneResult plane_global_associativity(const std::array<Vec8, 4>& V, int n_samples,
                                             std::uint64_t seed, double tol = kDefaultTol);

std::array<Vec8, 4> plane_V1();
std::array<Vec8, 4> plane_V2();
std::array<Vec8, 4> plane_from_candidate(const PlaneCandidate& cand);

// ---- T^3 orbit machinery -------------------------------------------------

// The four zeta residuals at p.
std::array<std::complex<double>, 4> t3_zeta(const Vec8& p);

// Solves zeta = 0 on the slice {x1,x2,x3 >= 0, z4 = x4 + i y4} by grid +
// Newton; returns the deduplicated solutions as slice coordinates
// (x1,x2,x3,x4,y4).
std::vector<std::array<double, 5>> t3_slice_solutions(double grid_step = 0.1,
                                                      double dedup_tol = 1e-6);

// ---- small SU(2) orbits ----------------------------------------------------

struct SmallSu2Result {
    double dx1_coefficient;      // ambient coefficient of dx1 in *phi~(E*,E*,E*, .)
    double restricted_residual;  // sup over T_p S^7 of the contraction
};
SmallSu2Result su2_small_condition(const Vec8& p);

// ---- irreducible SU(2) orbits ---------------------------------------------

// d(det M)_{p0}(v) at p0 = (1,0,mu,0)/sqrt(mu^2+1), v = (-mu,0,1,0).
double su2_irr_case1(double mu);
double su2_irr_case1_closed_form(double mu);

struct IrrCertificates {
    double phi_at_A2;       // expected -243/25
    double phi_at_A3;       // expected 513/125
    double max_gram_offdiag;
    double calib_A2;        // | |phi| - prod of norms | at A2
    double calib_A3;
};
IrrCertificates su2_irr_case2_certificates();

// Induced g~ on the orbit frames (matrix entries g~(E_i*, E_j*)).
Eigen::Matrix3d orbit_induced_metric(ActionTag tag, const Vec8& p);

// Sp(2) congruence of the two T^3 orbits: max over samples of the distance
// from K-image points of orbit(+i) to orbit(-i).
double t3_orbit_congruence_residual(int n_samples, std::uint64_t seed);

}  // namespace sq7
