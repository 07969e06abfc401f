#pragma once

#include <Eigen/Dense>
#include <complex>

#include "sq7/exterior.hpp"

namespace sq7 {

using Cx = std::complex<double>;
using Vec4c = Eigen::Vector4cd;
using Mat4c = Eigen::Matrix4cd;

// R^8 <-> C^4 with z_j = x[2j] + i x[2j+1].
Vec4c to_complex(const Vec8& v);
Vec8 to_real(const Vec4c& z);

// Realification of a complex-linear map on C^4.
Mat8 realify(const Mat4c& A);
// Realification of coordinatewise complex conjugation.
Mat8 conjugation8();

// The 3-Sasakian structure of the round S^7 in C^4.
class Sasakian {
public:
    Sasakian();

    // Complex structures I1, I2, I3 from the right actions of i, j, k,
    // as real 8x8 matrices (I2, I3 are antilinear over C).
    const Mat8& I(int i) const { return I_[i - 1]; }
    // Quaternionic structure J: (z1,z2,z3,z4) -> (-z2,z1,-z4,z3).
    const Mat8& J() const { return J8_; }

    Vec8 xi(int i, const Vec8& p) const { return -(I_[i - 1] * p); }
    double eta(int i, const Vec8& p, const Vec8& v) const { return xi(i, p).dot(v); }

    // Phi_i = I_i on Ker eta_i, 0 on R xi_i; extrinsically Phi_i v = I_i v - eta_i(v) p.
    Vec8 phi_tensor(int i, const Vec8& p, const Vec8& v) const {
        return I_[i - 1] * v - eta(i, p, v) * p;
    }

    Vec8 horizontal_projection(const Vec8& p, const Vec8& v) const {
        Vec8 w = v;
        for (int i = 1; i <= 3; ++i) w -= eta(i, p, v) * xi(i, p);
        return w;
    }

    // Contact one-forms and their exterior derivatives as exact polynomial
    // forms on R^8.
    const PolyForm& eta_form(int i) const { return eta_[i - 1]; }
    const PolyForm& d_eta_form(int i) const { return deta_[i - 1]; }

    // omega_i = (1/2) d eta_i + eta_{i+1} ^ eta_{i+2}; agrees with the
    // horizontally projected (1/2) D eta_i on sphere-tangent vectors.
    const PolyForm& omega_form(int i) const { return omega_[i - 1]; }

private:
    Mat8 I_[3];
    Mat8 J8_;
    PolyForm eta_[3] = {PolyForm(1), PolyForm(1), PolyForm(1)};
    PolyForm deta_[3] = {PolyForm(2), PolyForm(2), PolyForm(2)};
    PolyForm omega_[3] = {PolyForm(2), PolyForm(2), PolyForm(2)};
};

const Sasakian& sasakian();

}  // namespace sq7
