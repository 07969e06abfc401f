#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sq7/squashed.hpp"

namespace sq7 {

enum class ActionTag { Sp1L, T3, SU2diag, SU2small, SU2irr };

std::string to_string(ActionTag t);

// One of the five classified actions, carried by its realified Lie-algebra
// generators.  For the su(2) actions the generators satisfy
// [E_i, E_{i+1}] = 2 E_{i+2}; the torus generators commute.
struct GroupAction {
    ActionTag tag;
    std::vector<Mat8> generators;

    Vec8 generator_field(int i, const Vec8& p) const { return generators[i - 1] * p; }

    // Group element from parameters: a unit quaternion (a, b) for the su(2)
    // families, angles for T^3.
    Mat8 element_su2(const Cx& a, const Cx& b) const;
    Mat8 element_t3(double alpha, double beta, double gamma) const;

    // exp(sum c_i E_i)
    Mat8 exp_element(const Eigen::Vector3d& c) const;
};

const GroupAction& action(ActionTag tag);

// Realified sp(2) basis (10 matrices) and the full sp(1)+sp(2) list (13).
const std::vector<Mat8>& sp2_basis();
const std::vector<Mat8>& sp1sp2_basis();

// Max over sampled points / tangent tuples of |g*phi~ - phi~| and
// |g*g~ - g~| for the isometry candidate g (an ambient linear map).
double invariance_residual(const Mat8& g, std::uint64_t seed, int n_points = 20);

// The SO(3) matrix with (q* eta_1, q* eta_2, q* eta_3) = (eta) M_q^t for
// q = a1 + a2 j in Sp(1).
Eigen::Matrix3d mq_matrix(const Cx& a1, const Cx& a2);

struct OrbitFrame {
    Vec8 base;
    std::array<Vec8, 3> generator_vectors;
    std::array<double, 3> lambdas;  // round-metric squared norms
};

// Moves p along the orbit to a point where the three generator fields are
// round-orthogonal (Mashimo's lemma); lambdas sorted by the requested
// permutation of indices into ascending order by default.
OrbitFrame orbit_lambda_normalize(const GroupAction& act, const Vec8& p,
                                  std::uint64_t seed = 7);

}  // namespace sq7
