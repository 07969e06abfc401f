#include "sq7/exterior.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace sq7 {

int subset_merge_sign(std::uint8_t s, std::uint8_t t) {
    if (s & t) return 0;
    // Count transpositions needed to move each element of t past the
    // elements of s that sit above it.
    int swaps = 0;
    for (int b = 0; b < 8; ++b) {
        if (t & (1u << b)) {
            std::uint8_t above = static_cast<std::uint8_t>(s & ~((1u << (b + 1)) - 1u));
            swaps += std::popcount(above);
        }
    }
    return (swaps % 2 == 0) ? 1 : -1;
}

std::size_t PolyForm::term_count() const {
    std::size_t n = 0;
    for (const auto& [m, c] : terms_) n += c.terms().size();
    return n;
}

void PolyForm::add_term(std::uint8_t mask, const PolyScalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(mask);
    if (it == terms_.end()) {
        terms_[mask] = c;
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

PolyForm operator+(const PolyForm& a, const PolyForm& b) {
    if (a.degree_ != b.degree_ && !a.is_zero() && !b.is_zero())
        throw std::invalid_argument("PolyForm: degree mismatch in +");
    PolyForm r = a.is_zero() ? PolyForm(b.degree_) : PolyForm(a.degree_);
    r.terms_ = a.terms_;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
}

PolyForm operator-(const PolyForm& a, const PolyForm& b) {
    return a + (Rational(-1) * b);
}

PolyForm operator*(const Rational& c, const PolyForm& a) {
    PolyForm r(a.degree_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : a.terms_) r.terms_[m] = c * v;
    return r;
}

bool operator==(const PolyForm& a, const PolyForm& b) {
    return (a - b).is_zero();
}

PolyForm wedge(const PolyForm& a, const PolyForm& b) {
    int deg = a.degree() + b.degree();
    PolyForm r(deg);
    if (deg > kDim) return r;  // identically zero beyond top degree
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            int sign = subset_merge_sign(ma, mb);
            if (sign == 0) continue;
            PolyScalar c = ca * cb;
            if (sign < 0) c = -c;
            r.add_term(static_cast<std::uint8_t>(ma | mb), c);
        }
    return r;
}

PolyForm exterior_derivative(const PolyForm& a) {
    PolyForm r(a.degree() + 1);
    for (const auto& [m, c] : a.terms()) {
        for (int axis = 0; axis < 8; ++axis) {
            if (m & (1u << axis)) continue;
            PolyScalar dc = c.derivative(axis);
            if (dc.is_zero()) continue;
            // dx_axis ^ dx_m: move dx_axis past the lower bits of m.
            int below = std::popcount(static_cast<std::uint8_t>(m & ((1u << axis) - 1u)));
            if (below % 2) dc = -dc;
            r.add_term(static_cast<std::uint8_t>(m | (1u << axis)), dc);
        }
    }
    return r;
}

namespace {

double subset_determinant(std::uint8_t mask, std::span<const Vec8> vectors) {
    int k = std::popcount(mask);
    Eigen::MatrixXd M(k, k);
    int col = 0;
    for (int axis = 0; axis < 8; ++axis) {
        if (!(mask & (1u << axis))) continue;
        for (int row = 0; row < k; ++row) M(row, col) = vectors[row][axis];
        ++col;
    }
    switch (k) {
        case 0: return 1.0;
        case 1: return M(0, 0);
        case 2: return M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
        default: return M.determinant();
    }
}

}  // namespace

double PolyForm::eval(const Vec8& p, std::span<const Vec8> vectors) const {
    if (static_cast<int>(vectors.size()) != degree_)
        throw std::invalid_argument("PolyForm::eval: argument count != degree");
    double s = 0;
    for (const auto& [m, c] : terms_)
        s += c.eval(p) * subset_determinant(m, vectors);
    return s;
}

// --------------------------- AltForm ---------------------------------------

AltForm AltForm::from_poly(const PolyForm& f, const Vec8& p) {
    AltForm r(f.degree());
    for (const auto& [m, c] : f.terms()) r.add_term(m, c.eval(p));
    return r;
}

AltForm AltForm::covector(const Vec8& w) {
    AltForm r(1);
    for (int i = 0; i < 8; ++i) r.add_term(static_cast<std::uint8_t>(1u << i), w[i]);
    return r;
}

void AltForm::add_term(std::uint8_t mask, double c, double drop_tol) {
    if (std::abs(c) <= drop_tol) return;
    terms_[mask] += c;
    if (terms_[mask] == 0.0) terms_.erase(mask);
}

double AltForm::eval(std::span<const Vec8> vectors) const {
    if (static_cast<int>(vectors.size()) != degree_)
        throw std::invalid_argument("AltForm::eval: argument count != degree");
    double s = 0;
    for (const auto& [m, c] : terms_) s += c * subset_determinant(m, vectors);
    return s;
}

AltForm AltForm::interior(const Vec8& v) const {
    if (degree_ < 1) throw std::invalid_argument("AltForm::interior: degree < 1");
    AltForm r(degree_ - 1);
    for (const auto& [m, c] : terms_) {
        int pos = 0;
        for (int axis = 0; axis < 8; ++axis) {
            if (!(m & (1u << axis))) continue;
            double comp = v[axis];
            if (comp != 0.0) {
                double sc = (pos % 2 == 0) ? c : -c;
                r.add_term(static_cast<std::uint8_t>(m & ~(1u << axis)), sc * comp);
            }
            ++pos;
        }
    }
    return r;
}

AltForm wedge(const AltForm& a, const AltForm& b) {
    int deg = a.degree() + b.degree();
    AltForm r(deg);
    if (deg > kDim) return r;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            int sign = subset_merge_sign(ma, mb);
            if (sign == 0) continue;
            r.add_term(static_cast<std::uint8_t>(ma | mb), sign * ca * cb);
        }
    return r;
}

AltForm operator+(const AltForm& a, const AltForm& b) {
    AltForm r = a;
    for (const auto& [m, c] : b.terms()) r.add_term(m, c);
    return r;
}

AltForm operator*(double c, const AltForm& a) {
    AltForm r(a.degree());
    for (const auto& [m, v] : a.terms()) r.add_term(m, c * v);
    return r;
}

// --------------------------- sphere carriers -------------------------------

SpherePoint::SpherePoint(const Vec8& v) : x(v) {
    if (std::abs(v.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("SpherePoint: vector is not unit length");
}

Tangent::Tangent(const SpherePoint& p, const Vec8& vec) : base(p.x), v(vec) {
    double n = vec.norm();
    if (n > 0 && std::abs(base.dot(vec)) > 1e-9 * std::max(1.0, n))
        throw std::invalid_argument("Tangent: vector is not tangent to S^7");
}

MetricAtPoint make_metric_at(const Vec8& p, const Mat8& G) {
    MetricAtPoint m;
    m.p = p;
    m.G = G;
    // Tangent basis: project the ambient axes onto p-perp and keep the 7
    // least aligned with p (Euclidean Gram-Schmidt for independence only).
    std::vector<Vec8> cand;
    for (int i = 0; i < 8; ++i) {
        Vec8 e = Vec8::Zero();
        e[i] = 1.0;
        cand.push_back(e - p.dot(e) * p);
    }
    std::vector<Vec8> basis;
    for (const Vec8& c : cand) {
        Vec8 w = c;
        for (const Vec8& b : basis) w -= b.dot(w) * b;
        if (w.norm() > 1e-6) basis.push_back(w.normalized());
        if (basis.size() == 7) break;
    }
    if (basis.size() != 7) throw std::runtime_error("make_metric_at: rank defect");
    for (int i = 0; i < 7; ++i) m.basis[i] = basis[i];
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) m.gram(i, j) = m.inner(m.basis[i], m.basis[j]);
    return m;
}

std::array<Vec8, 7> orthonormal_tangent_frame(const MetricAtPoint& m) {
    std::array<Vec8, 7> f = m.basis;
    for (int i = 0; i < 7; ++i) {
        for (int j = 0; j < i; ++j) f[i] -= m.inner(f[j], f[i]) * f[j];
        double n2 = m.inner(f[i], f[i]);
        if (n2 <= 0) throw std::runtime_error("orthonormal_tangent_frame: metric not positive");
        f[i] /= std::sqrt(n2);
    }
    // Orient: det[p | f1..f7] > 0.
    Mat8 M;
    M.col(0) = m.p;
    for (int i = 0; i < 7; ++i) M.col(i + 1) = f[i];
    if (M.determinant() < 0) f[6] = -f[6];
    return f;
}

FrameForm hodge_star_at(const PolyForm& a, const MetricAtPoint& m, int orientation) {
    if (a.degree() > 7) throw std::invalid_argument("hodge_star_at: degree > 7");
    auto frame = orthonormal_tangent_frame(m);
    int k = a.degree();
    FrameForm out;
    out.frame = frame;
    out.degree = 7 - k;
    // Coefficients of a in the orthonormal coframe.
    std::vector<Vec8> args(k);
    for (std::uint8_t mask = 0; mask < 128; ++mask) {
        if (std::popcount(mask) != k) continue;
        int idx = 0;
        for (int b = 0; b < 7; ++b)
            if (mask & (1u << b)) args[idx++] = frame[b];
        double c = a.eval(m.p, args);
        if (c == 0.0) continue;
        std::uint8_t comp = static_cast<std::uint8_t>(~mask & 0x7f);
        int sign = subset_merge_sign(mask, comp) * orientation;
        out.coeffs[comp] += sign * c;
    }
    return out;
}

double FrameForm::eval(const MetricAtPoint& m, std::span<const Vec8> vectors) const {
    if (static_cast<int>(vectors.size()) != degree)
        throw std::invalid_argument("FrameForm::eval: argument count != degree");
    // Expand each vector in the orthonormal frame.
    Eigen::MatrixXd comp(degree, 7);
    for (int r = 0; r < degree; ++r)
        for (int c = 0; c < 7; ++c) comp(r, c) = m.inner(frame[c], vectors[r]);
    double s = 0;
    for (const auto& [mask, c] : coeffs) {
        Eigen::MatrixXd M(degree, degree);
        int col = 0;
        for (int b = 0; b < 7; ++b) {
            if (!(mask & (1u << b))) continue;
            for (int r = 0; r < degree; ++r) M(r, col) = comp(r, b);
            ++col;
        }
        s += c * (degree == 0 ? 1.0 : M.determinant());
    }
    return s;
}

Vec8 lie_bracket_fd(const std::function<Vec8(const Vec8&)>& X,
                    const std::function<Vec8(const Vec8&)>& Y,
                    const Vec8& p, double h) {
    // [X,Y](p) ~ (Y(p + hX) - Y(p - hX) - X(p + hY) + X(p - hY)) / (2h)
    Vec8 xp = X(p), yp = Y(p);
    Vec8 dY = (Y(p + h * xp) - Y(p - h * xp)) / (2 * h);
    Vec8 dX = (X(p + h * yp) - X(p - h * yp)) / (2 * h);
    return dY - dX;
}

}  // namespace sq7
