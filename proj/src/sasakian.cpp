#include "sq7/sasakian.hpp"

namespace sq7 {

Vec4c to_complex(const Vec8& v) {
    Vec4c z;
    for (int j = 0; j < 4; ++j) z[j] = Cx(v[2 * j], v[2 * j + 1]);
    return z;
}

Vec8 to_real(const Vec4c& z) {
    Vec8 v;
    for (int j = 0; j < 4; ++j) {
        v[2 * j] = z[j].real();
        v[2 * j + 1] = z[j].imag();
    }
    return v;
}

Mat8 realify(const Mat4c& A) {
    Mat8 M = Mat8::Zero();
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            double a = A(r, c).real(), b = A(r, c).imag();
            M(2 * r, 2 * c) = a;
            M(2 * r, 2 * c + 1) = -b;
            M(2 * r + 1, 2 * c) = b;
            M(2 * r + 1, 2 * c + 1) = a;
        }
    return M;
}

Mat8 conjugation8() {
    Mat8 C = Mat8::Zero();
    for (int j = 0; j < 4; ++j) {
        C(2 * j, 2 * j) = 1.0;
        C(2 * j + 1, 2 * j + 1) = -1.0;
    }
    return C;
}

namespace {

// x_j and y_j coordinate scalars, 1-based complex index.
PolyScalar X(int j) { return PolyScalar::coordinate(2 * (j - 1)); }
PolyScalar Y(int j) { return PolyScalar::coordinate(2 * (j - 1) + 1); }
PolyForm dX(int j) { return PolyForm::dx(2 * (j - 1)); }
PolyForm dY(int j) { return PolyForm::dx(2 * (j - 1) + 1); }

PolyForm mul(const PolyScalar& s, const PolyForm& f) {
    PolyForm r(f.degree());
    for (const auto& [m, c] : f.terms()) r.add_term(m, s * c);
    return r;
}

}  // namespace

Sasakian::Sasakian() {
    Mat4c i4 = Cx(0, 1) * Mat4c::Identity();
    Mat4c Jc = Mat4c::Zero();
    Jc(0, 1) = -1; Jc(1, 0) = 1; Jc(2, 3) = -1; Jc(3, 2) = 1;
    J8_ = realify(Jc);
    I_[0] = realify(i4);
    I_[1] = J8_ * conjugation8();   // u -> J conj(u)
    I_[2] = I_[0] * I_[1];          // u -> i J conj(u)

    // eta_1 = Im(sum z_j d zbar_j) = sum (y_j dx_j - x_j dy_j)
    PolyForm eta1(1);
    for (int j = 1; j <= 4; ++j)
        eta1 = eta1 + mul(Y(j), dX(j)) - mul(X(j), dY(j));

    // eta_2 + i eta_3 = -z1 dz2 + z2 dz1 - z3 dz4 + z4 dz3
    // Real part: for a pair (a,b): -z_a dz_b + z_b dz_a contributes
    //   Re: x_b dx_a - y_b dy_a - x_a dx_b + y_a dy_b
    //   Im: x_b dy_a + y_b dx_a - x_a dy_b - y_a dx_b
    PolyForm eta2(1), eta3(1);
    const int pair[2][2] = {{1, 2}, {3, 4}};
    for (const auto& pr : pair) {
        int a = pr[0], b = pr[1];
        eta2 = eta2 + mul(X(b), dX(a)) - mul(Y(b), dY(a)) - mul(X(a), dX(b)) + mul(Y(a), dY(b));
        eta3 = eta3 + mul(X(b), dY(a)) + mul(Y(b), dX(a)) - mul(X(a), dY(b)) - mul(Y(a), dX(b));
    }
    eta_[0] = eta1;
    eta_[1] = eta2;
    eta_[2] = eta3;
    for (int i = 0; i < 3; ++i) deta_[i] = exterior_derivative(eta_[i]);

    const Rational half(1, 2);
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        omega_[i] = half * deta_[i] + wedge(eta_[j], eta_[k]);
    }
}

const Sasakian& sasakian() {
    static const Sasakian s;
    return s;
}

}  // namespace sq7
