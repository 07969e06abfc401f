#pragma once

#include <optional>
#include <vector>

#include "sq7/exterior.hpp"

namespace sq7 {

// Flat model data on R^7 (axes 1..7 of R^8) and R^8.
struct ModelForms {
    PolyForm phi0{3};        // G2 3-form on R^7
    PolyForm star_phi0{4};   // its Hodge dual on R^7
    PolyForm Phi0{4};        // Spin(7) 4-form dx0 ^ phi0 + *phi0
    PolyForm omega0{2};      // Kaehler form of C^4
    PolyForm Omega0_re{4};   // Re(dz_1234)
    PolyForm Omega0_im{4};
};

const ModelForms& build_model();

// A pointwise G2 package: enough structure to run the calibration tests on
// either the flat model or the squashed sphere.
struct G2Context {
    std::function<AltForm(const Vec8&)> phi_at;        // degree-3 value at p
    std::function<AltForm(const Vec8&)> star_phi_at;   // degree-4 value at p
    std::function<Mat8(const Vec8&)> metric_at;        // ambient Gram matrix
    std::function<std::vector<Vec8>(const Vec8&)> frame_at;  // tangent spanning set
};

G2Context flat_model_context();

// Recovers g(u,v) from 6 g(v1,v2) vol = i(v1)phi ^ i(v2)phi ^ phi, where
// frame spans the 7-dimensional tangent space at the point of evaluation.
double metric_from_phi(const AltForm& phi, const std::vector<Vec8>& frame,
                       const Vec8& u, const Vec8& v);

// (Phi^2 / vol, (i(w2)i(w1)Phi)^2 ^ Phi / (6 |w1^w2|^2 vol)) on R^8 with the
// standard metric and volume; second component flagged degenerate when
// w1 ^ w2 = 0.
struct Spin7Checks {
    double fourteen;
    double ratio;
    bool degenerate;
};
Spin7Checks spin7_metric_checks(const AltForm& Phi, const Vec8& w1, const Vec8& w2);

// g(u x v, w) = phi(u, v, w), solved through the Gram matrix of the frame.
Vec8 cross_product(const G2Context& ctx, const Vec8& p, const Vec8& u, const Vec8& v);

struct AssocResult {
    bool pass;
    double residual;        // max of the two normalized test residuals
    double star_residual;   // sup |*phi(u1,u2,u3,w)| over the tangent frame
    double calib_residual;  // | |phi(u1,u2,u3)| - 1 | on the orthonormalized triple
};

// Dual test: *phi-annihilation and calibration equality, both on the
// g-orthonormalized triple.  Throws if the triple is dependent.
AssocResult is_associative(const G2Context& ctx, const Vec8& p, const Vec8& v1,
                           const Vec8& v2, const Vec8& v3, double tol = kDefaultTol);

}  // namespace sq7
