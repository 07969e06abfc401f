#pragma once

#include <complex>
#include <string>
#include <vector>

#include "sq7/classification.hpp"

namespace sq7 {

enum class OrbitCase { L1, L2, A1, A2, A3 };
std::string to_string(OrbitCase c);
std::vector<OrbitCase> all_orbit_cases();

// Oriented orthonormal tangent frame e and normal frame V at the base point,
// with V2 = e1 x V1, V3 = e2 x V1, V4 = -e3 x V1.
struct NormalFrame {
    OrbitCase tag;
    ActionTag act;
    Vec8 p0;
    std::array<double, 3> e_scale;  // e_i = e_scale[i] * (i-th generator)
    std::array<Vec8, 3> e;
    std::array<Vec8, 4> V;
    double frame_residual;  // worst deviation from the expected cross-product table
};

NormalFrame build_normal_frame(OrbitCase c);

// Connection of the squashed metric in the invariant trivialization:
// nabla~perp_{e_i} V_j = sum_k A[i](k,j) V_k  and
// nabla~top_{e_i} e_j  = sum_k Gamma[i](k,j) e_k.
struct ConnectionData {
    std::array<Eigen::Matrix4d, 3> A;
    std::array<Eigen::Matrix3d, 3> Gamma;
    Eigen::Matrix<double, 3, 3> K;  // K_{ij}: nabla~perp_{e_i} V_1 = sum K_{ij} V_j (j=2..4)
};

ConnectionData connection_matrix(const NormalFrame& f);

// Expected printed connection matrices (coefficient of V_k in
// nabla~perp_{e_i} V_j), for the entrywise acceptance check.
std::array<Eigen::Matrix4d, 3> printed_connection(OrbitCase c);

// D = sum_i e_i x nabla~perp_{e_i}: first-order part is universal in the
// invariant frame; the zeroth-order part must reduce to diag(lambda,mu,mu,lambda)
// for the SU(2) cases (A1 keeps its full diagonal).
struct OperatorData {
    OrbitCase tag;
    double p = 0, q = 0;         // e = {p E1, p E2, q E3} as Lie algebra elements
    Rational p2, q_rat;          // exact values (p^2 rational in every case)
    Eigen::Matrix4d zeroth;      // zeroth-order 4x4 block of D
    double lambda = 0, mu = 0;   // for the D_{lambda,mu} cases
    Rational lambda_rat, mu_rat;
    std::array<Eigen::Matrix4d, 3> cross;  // matrix of e_i x . on the V-frame
};

OperatorData assemble_D(OrbitCase c);

// Exact eigenvalue of Gamma_{p,q,lambda,mu,alpha} on <rho_n(.) v_k, u>; the
// linear term carries +(q(lambda-mu) + 2(p^2-q^2))(n-2k), which is what the
// operator calculus gives (the printed display flips this sign).
Rational gamma_eigenvalue(const Rational& p2, const Rational& q, const Rational& lambda,
                          const Rational& mu, const Rational& alpha, int n, int k);
double gamma_eigenvalue(OrbitCase c, int n, int k);  // alpha = -1 case parameters

// Symbolic ladder calculus on matrix coefficients <rho_n(.) v_k, u>.
struct MatrixCoefficient {
    int n;
    int k;
};
struct LadderResult {
    std::complex<double> factor;  // scalar multiplier
    MatrixCoefficient f;          // re-indexed coefficient (undefined if factor==0)
};
enum class LadderOp { Raise, Lower, IE3 };  // -iE1+E2, iE1+E2, iE3
LadderResult ladder_apply(LadderOp op, const MatrixCoefficient& f);

// Analytic kernel dimension of D psi = -psi from the Gamma spectrum plus the
// two boundary sectors; A2 restricted to Z3-equivariant solutions.  Returns
// the real dimension; throws if it does not stabilize between n_max-2 and n_max.
int kernel_dimension(OrbitCase c, int n_max);

// Independent finite-rank oracle: assembles (D + id) block-diagonally over
// the Peter-Weyl (or Fourier) basis and counts the numerical kernel.
int brute_force_kernel(OrbitCase c, int n_max);

struct T3KernelResult {
    int real_dimension;
    std::vector<std::array<int, 3>> modes;
    bool det_formula_ok;
};
T3KernelResult t3_kernel(int gamma_max);

// Rank of the space of normal fields induced by the 13 sp(1)+sp(2)
// generators, plus the worst pointwise residual of D psi + psi for them.
struct TrivialDeformation {
    int rank;
    double sv_gap;        // ratio sigma_r / sigma_{r+1}
    double d_residual;    // finite-difference check of D psi = -psi
};
TrivialDeformation trivial_deformation_rank(OrbitCase c, int n_samples = 40,
                                            std::uint64_t seed = 11);

// Gamma spectrum dump rows.
struct SpectrumRow {
    OrbitCase tag;
    int n, k;
    double eigenvalue;
    bool in_kernel;
};
std::vector<SpectrumRow> spectrum_rows(OrbitCase c, int n_max);

}  // namespace sq7
