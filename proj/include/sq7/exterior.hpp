#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "sq7/rational.hpp"

namespace sq7 {

using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;
using Mat7 = Eigen::Matrix<double, 7, 7>;

constexpr int kDim = 8;
constexpr double kDefaultTol = 1e-9;

// ---------------------------------------------------------------------------
// Polynomial scalars on R^8, exact rational coefficients.
// Coordinates are ordered (x1,y1,x2,y2,x3,y3,x4,y4) with z_j = x_j + i y_j.
// ---------------------------------------------------------------------------

// Monomial exponents packed one byte per axis.
using MonomialKey = std::uint64_t;

inline MonomialKey monomial_key(const std::array<std::uint8_t, 8>& e) {
    MonomialKey k = 0;
    for (int i = 7; i >= 0; --i) k = (k << 8) | e[i];
    return k;
}
inline std::array<std::uint8_t, 8> monomial_exponents(MonomialKey k) {
    std::array<std::uint8_t, 8> e{};
    for (int i = 0; i < 8; ++i) { e[i] = static_cast<std::uint8_t>(k & 0xff); k >>= 8; }
    return e;
}

class PolyScalar {
public:
    PolyScalar() = default;
    explicit PolyScalar(const Rational& c) {
        if (!c.is_zero()) terms_[0] = c;
    }
    static PolyScalar coordinate(int axis) {
        PolyScalar p;
        std::array<std::uint8_t, 8> e{};
        e[axis] = 1;
        p.terms_[monomial_key(e)] = Rational(1);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<MonomialKey, Rational>& terms() const { return terms_; }

    void add_term(MonomialKey k, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_[k] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend PolyScalar operator+(const PolyScalar& a, const PolyScalar& b) {
        PolyScalar r = a;
        for (const auto& [k, c] : b.terms_) r.add_term(k, c);
        return r;
    }
    friend PolyScalar operator-(const PolyScalar& a, const PolyScalar& b) {
        PolyScalar r = a;
        for (const auto& [k, c] : b.terms_) r.add_term(k, -c);
        return r;
    }
    friend PolyScalar operator*(const PolyScalar& a, const PolyScalar& b) {
        PolyScalar r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                auto ea = monomial_exponents(ka), eb = monomial_exponents(kb);
                std::array<std::uint8_t, 8> e{};
                for (int i = 0; i < 8; ++i) e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
                r.add_term(monomial_key(e), ca * cb);
            }
        return r;
    }
    friend PolyScalar operator*(const Rational& c, const PolyScalar& a) {
        PolyScalar r;
        if (c.is_zero()) return r;
        for (const auto& [k, v] : a.terms_) r.terms_[k] = c * v;
        return r;
    }
    PolyScalar operator-() const { return Rational(-1) * *this; }

    friend bool operator==(const PolyScalar& a, const PolyScalar& b) {
        return a.terms_ == b.terms_;
    }

    PolyScalar derivative(int axis) const {
        PolyScalar r;
        for (const auto& [k, c] : terms_) {
            auto e = monomial_exponents(k);
            if (e[axis] == 0) continue;
            Rational nc = c * Rational(e[axis]);
            auto ne = e;
            --ne[axis];
            r.add_term(monomial_key(ne), nc);
        }
        return r;
    }

    double eval(const Vec8& x) const {
        double s = 0;
        for (const auto& [k, c] : terms_) {
            auto e = monomial_exponents(k);
            double m = c.to_double();
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < e[i]; ++j) m *= x[i];
            s += m;
        }
        return s;
    }

    int max_degree() const {
        int d = 0;
        for (const auto& [k, c] : terms_) {
            (void)c;
            auto e = monomial_exponents(k);
            int s = 0;
            for (int i = 0; i < 8; ++i) s += e[i];
            d = std::max(d, s);
        }
        return d;
    }

private:
    std::map<MonomialKey, Rational> terms_;
};

// ---------------------------------------------------------------------------
// Exterior forms with polynomial coefficients.  A k-form is stored as a map
// from the bitmask of an increasing k-subset of axes {0..7} to a PolyScalar.
// ---------------------------------------------------------------------------

// Sign picked up when wedging dx_S ^ dx_T into the sorted basis element of
// S|T; returns 0 if S and T overlap.
int subset_merge_sign(std::uint8_t s, std::uint8_t t);

class PolyForm {
public:
    explicit PolyForm(int degree = 0) : degree_(degree) {}

    // dx_{axis}
    static PolyForm dx(int axis) {
        PolyForm f(1);
        f.terms_[static_cast<std::uint8_t>(1u << axis)] = PolyScalar(Rational(1));
        return f;
    }
    static PolyForm constant(const Rational& c) {
        PolyForm f(0);
        if (!c.is_zero()) f.terms_[0] = PolyScalar(c);
        return f;
    }
    static PolyForm scalar(const PolyScalar& s) {
        PolyForm f(0);
        if (!s.is_zero()) f.terms_[0] = s;
        return f;
    }

    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::uint8_t, PolyScalar>& terms() const { return terms_; }
    std::size_t term_count() const;

    void add_term(std::uint8_t mask, const PolyScalar& c);

    friend PolyForm operator+(const PolyForm& a, const PolyForm& b);
    friend PolyForm operator-(const PolyForm& a, const PolyForm& b);
    friend PolyForm operator*(const Rational& c, const PolyForm& a);
    PolyForm operator-() const { return Rational(-1) * *this; }
    friend bool operator==(const PolyForm& a, const PolyForm& b);

    double eval(const Vec8& p, std::span<const Vec8> vectors) const;

private:
    int degree_;
    std::map<std::uint8_t, PolyScalar> terms_;
};

PolyForm wedge(const PolyForm& a, const PolyForm& b);
PolyForm exterior_derivative(const PolyForm& a);

// ---------------------------------------------------------------------------
// Pointwise alternating tensors on R^8 (double coefficients).
// ---------------------------------------------------------------------------

class AltForm {
public:
    explicit AltForm(int degree = 0) : degree_(degree) {}
    static AltForm from_poly(const PolyForm& f, const Vec8& p);
    static AltForm covector(const Vec8& w);

    int degree() const { return degree_; }
    const std::map<std::uint8_t, double>& terms() const { return terms_; }
    void add_term(std::uint8_t mask, double c, double drop_tol = 0.0);

    double eval(std::span<const Vec8> vectors) const;
    AltForm interior(const Vec8& v) const;  // i(v) in the first slot

    friend AltForm wedge(const AltForm& a, const AltForm& b);
    friend AltForm operator+(const AltForm& a, const AltForm& b);
    friend AltForm operator*(double c, const AltForm& a);

private:
    int degree_;
    std::map<std::uint8_t, double> terms_;
};

// ---------------------------------------------------------------------------
// Sphere geometry carriers.
// ---------------------------------------------------------------------------

struct SpherePoint {
    Vec8 x;
    explicit SpherePoint(const Vec8& v);
};

struct Tangent {
    Vec8 base;
    Vec8 v;
    Tangent(const SpherePoint& p, const Vec8& vec);
};

// Pointwise metric data on T_pS^7: an ambient symmetric matrix G with
// g(u,v) = u^T G v for tangent u,v, plus a tangent basis and its Gram matrix.
struct MetricAtPoint {
    Vec8 p;
    Mat8 G;
    std::array<Vec8, 7> basis;
    Mat7 gram;

    double inner(const Vec8& u, const Vec8& v) const { return u.dot(G * v); }
};

// Builds a tangent basis at p (projections of ambient axes, Euclidean
// Gram-Schmidt, keep the 7 independent ones) together with the Gram matrix
// of the supplied metric.
MetricAtPoint make_metric_at(const Vec8& p, const Mat8& G);

// A g-orthonormal frame of T_pS^7, oriented so that det[p | f1 .. f7] > 0.
std::array<Vec8, 7> orthonormal_tangent_frame(const MetricAtPoint& m);

// Pointwise Hodge star of a k-form with respect to the metric m.  The result
// is expressed in the dual of an oriented g-orthonormal frame.
struct FrameForm {
    std::array<Vec8, 7> frame;          // oriented orthonormal frame used
    int degree = 0;
    std::map<std::uint8_t, double> coeffs;  // masks over 7 frame slots

    // Evaluate on arbitrary tangent vectors (expanded in the frame via m).
    double eval(const MetricAtPoint& m, std::span<const Vec8> vectors) const;
};

FrameForm hodge_star_at(const PolyForm& a, const MetricAtPoint& m, int orientation);

// Finite-difference Lie bracket of two vector fields via flow pushforwards,
// central step h.
Vec8 lie_bracket_fd(const std::function<Vec8(const Vec8&)>& X,
                    const std::function<Vec8(const Vec8&)>& Y,
                    const Vec8& p, double h = 1e-5);

}  // namespace sq7
