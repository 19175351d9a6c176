#include "capax/orlicz.hpp"

#include <algorithm>
#include <cmath>

namespace capax {

namespace {

std::vector<double> log_lattice(double lo, double hi, int per_decade) {
    std::vector<double> ts;
    double decades = std::log10(hi / lo);
    int count = static_cast<int>(decades * per_decade) + 1;
    for (int k = 0; k <= count; ++k)
        ts.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / count));
    return ts;
}

void validate_scalar(const std::function<double(double)>& f, FnClass cls, bool relaxed) {
    auto ts = log_lattice(1e-6, 1e6, 64);
    double prev = f(ts[0]);
    if (!std::isfinite(prev) && cls != FnClass::Decreasing)
        throw precondition_error("orlicz: non-finite value on validation lattice");
    for (std::size_t k = 1; k < ts.size(); ++k) {
        double cur = f(ts[k]);
        double slack = 1e-13 * (std::abs(cur) + std::abs(prev));
        bool ok = cls == FnClass::Decreasing ? (cur < prev + slack) : (cur > prev - slack);
        if (!ok) throw precondition_error("orlicz: sampled monotonicity violated");
        prev = cur;
    }
    if (!relaxed) {
        if (std::abs(f(1.0) - 1.0) > 1e-9)
            throw precondition_error("orlicz: normalization f(1)=1 violated");
        if (cls == FnClass::Decreasing) {
            if (!(f(1e-6) > 1.1) || !(f(1e6) < 0.9))
                throw precondition_error("orlicz: endpoint behavior not decreasing-class");
        } else {
            if (!(f(1e-6) < 0.9) || !(f(1e6) > 1.1))
                throw precondition_error("orlicz: endpoint behavior not increasing-class");
        }
    }
    if (cls == FnClass::ConvexIncreasing) {
        if (std::abs(f(0.0)) > 1e-12)
            throw precondition_error("orlicz: convex class needs f(0)=0");
        // midpoint convexity on an affine lattice
        for (double a = 0.0; a < 4.0; a += 0.25) {
            for (double b = a + 0.25; b <= 4.0; b += 0.25) {
                double mid = f(0.5 * (a + b));
                if (mid > 0.5 * (f(a) + f(b)) + 1e-10 * (1.0 + std::abs(mid)))
                    throw precondition_error("orlicz: sampled convexity violated");
            }
        }
    }
}

// Fritsch-Carlson monotone cubic interpolation.
struct Pchip {
    std::vector<double> x, y, d;

    Pchip(std::vector<double> xs, std::vector<double> ys) : x(std::move(xs)), y(std::move(ys)) {
        std::size_t n = x.size();
        if (n < 2) throw input_error("pchip: need at least two knots");
        std::vector<double> h(n - 1), slope(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = x[i + 1] - x[i];
            if (!(h[i] > 0)) throw input_error("pchip: knots must be strictly increasing");
            slope[i] = (y[i + 1] - y[i]) / h[i];
        }
        d.assign(n, 0.0);
        d[0] = slope[0];
        d[n - 1] = slope[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (slope[i - 1] * slope[i] <= 0) {
                d[i] = 0.0;
            } else {
                double w1 = 2 * h[i] + h[i - 1], w2 = h[i] + 2 * h[i - 1];
                d[i] = (w1 + w2) / (w1 / slope[i - 1] + w2 / slope[i]);
            }
        }
    }

    double eval(double t) const {
        std::size_t i = std::upper_bound(x.begin(), x.end(), t) - x.begin();
        i = std::clamp<std::size_t>(i, 1, x.size() - 1) - 1;
        double h = x[i + 1] - x[i], s = (t - x[i]) / h;
        double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
        double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
        return h00 * y[i] + h * h10 * d[i] + h01 * y[i + 1] + h * h11 * d[i + 1];
    }
};

} // namespace

OrliczScalar::OrliczScalar(std::function<double(double)> f, FnClass cls,
                           std::function<double(double)> df, bool relaxed)
    : f_(std::move(f)), df_(std::move(df)), cls_(cls) {
    validate_scalar(f_, cls_, relaxed);
}

OrliczScalar OrliczScalar::power(double q) {
    if (q == 0.0) throw precondition_error("orlicz power: exponent must be nonzero");
    FnClass cls = q < 0 ? FnClass::Decreasing : (q >= 1 ? FnClass::ConvexIncreasing : FnClass::Increasing);
    return OrliczScalar([q](double t) { return std::pow(t, q); }, cls,
                        [q](double t) { return q * std::pow(t, q - 1.0); });
}

OrliczScalar OrliczScalar::table(std::vector<double> ts, std::vector<double> vals, FnClass cls,
                                 bool relaxed) {
    auto interp = std::make_shared<Pchip>(ts, vals);
    double t_lo = ts.front(), t_hi = ts.back();
    double v_lo = vals.front(), v_hi = vals.back();
    // Power-law extrapolation exponents from the end slopes in log-log scale.
    double a_lo = std::log(vals[1] / vals[0]) / std::log(ts[1] / ts[0]);
    std::size_t n = ts.size();
    double a_hi = std::log(vals[n - 1] / vals[n - 2]) / std::log(ts[n - 1] / ts[n - 2]);
    auto f = [=](double t) {
        if (t <= 0) return cls == FnClass::Decreasing ? 1e300 : 0.0;
        if (t < t_lo) return v_lo * std::pow(t / t_lo, a_lo);
        if (t > t_hi) return v_hi * std::pow(t / t_hi, a_hi);
        return interp->eval(t);
    };
    return OrliczScalar(f, cls, nullptr, relaxed);
}

double OrliczScalar::derivative(double t) const {
    if (df_) return df_(t);
    double h = 1e-6 * std::max(t, 1e-3);
    return (f_(t + h) - f_(t - h)) / (2 * h);
}

double OrliczScalar::one_sided_derivative_at_one() const {
    if (df_) return df_(1.0);
    double h = 1e-4;
    if (cls_ == FnClass::Decreasing)
        return (-3 * f_(1.0) + 4 * f_(1.0 + h) - f_(1.0 + 2 * h)) / (2 * h);
    return (3 * f_(1.0) - 4 * f_(1.0 - h) + f_(1.0 - 2 * h)) / (2 * h);
}

OrliczMulti::OrliczMulti(int arity, std::function<double(std::span<const double>)> f, bool relaxed)
    : arity_(arity), f_(std::move(f)) {
    if (arity_ < 1) throw input_error("OrliczMulti: arity must be positive");
    std::vector<double> x(arity_, 0.0);
    if (std::abs(f_(x)) > 1e-12) throw precondition_error("OrliczMulti: f(0) must be 0");
    if (!relaxed) {
        for (int j = 0; j < arity_; ++j) {
            std::fill(x.begin(), x.end(), 0.0);
            x[j] = 1.0;
            if (std::abs(f_(x) - 1.0) > 1e-9)
                throw precondition_error("OrliczMulti: f(e_j) must be 1");
        }
    }
    // Sampled coordinate-wise monotonicity around two base levels.
    for (double base : {0.5, 1.5}) {
        for (int j = 0; j < arity_; ++j) {
            std::fill(x.begin(), x.end(), base);
            double prev = -1e300;
            for (int k = 0; k <= 32; ++k) {
                x[j] = 4.0 * k / 32.0;
                double v = f_(x);
                if (v < prev - 1e-12 * (1 + std::abs(v)))
                    throw precondition_error("OrliczMulti: not increasing in each variable");
                prev = v;
            }
        }
    }
}

OrliczMulti OrliczMulti::sum_of_powers(int arity, double q) {
    if (!(q > 0)) throw precondition_error("sum_of_powers: q must be positive");
    return OrliczMulti(arity, [q](std::span<const double> x) {
        double s = 0;
        for (double v : x) s += std::pow(v, q);
        return s;
    });
}

OrliczMulti OrliczMulti::weighted_sum(std::vector<double> alphas, std::vector<OrliczScalar> phis) {
    if (alphas.size() != phis.size() || alphas.empty())
        throw input_error("weighted_sum: size mismatch");
    bool unit = true;
    for (double a : alphas) {
        if (!(a > 0)) throw precondition_error("weighted_sum: weights must be positive");
        if (std::abs(a - 1.0) > 1e-15) unit = false;
    }
    int m = static_cast<int>(alphas.size());
    auto a = std::make_shared<std::vector<double>>(std::move(alphas));
    auto p = std::make_shared<std::vector<OrliczScalar>>(std::move(phis));
    return OrliczMulti(
        m,
        [a, p](std::span<const double> x) {
            double s = 0;
            for (std::size_t j = 0; j < a->size(); ++j) s += (*a)[j] * (*p)[j](x[j]);
            return s;
        },
        /*relaxed=*/!unit);
}

// ------------------------------------------------------------ quadrature

namespace {
double simpson_rule(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double m, double fm, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson_rule(a, fa, m, fm, flm);
    double right = simpson_rule(m, fm, b, fb, frm);
    if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}
} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fb = f(b), fm = f(m);
    double whole = simpson_rule(a, fa, b, fb, fm);
    return adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, 40);
}

// ------------------------------------------------------------ AdmissiblePair

AdmissiblePair AdmissiblePair::power(double q) {
    if (!(q > 1.0)) throw precondition_error("AdmissiblePair::power: q must exceed 1");
    AdmissiblePair p;
    p.power_q_ = q;
    p.phi_ = [q](double t) { return std::pow(t, 1.0 - q); };
    return p;
}

AdmissiblePair AdmissiblePair::from_weight(std::function<double(double)> phi) {
    AdmissiblePair p;
    p.phi_ = std::move(phi);
    // (A1): decreasing with a blow-up at 0+ on the sampled lattice.
    auto ts = log_lattice(1e-9, 1e6, 32);
    double prev = p.phi_(ts[0]);
    for (std::size_t k = 1; k < ts.size(); ++k) {
        double cur = p.phi_(ts[k]);
        if (!(cur > 0)) throw precondition_error("admissible pair: weight must stay positive");
        if (cur > prev * (1 + 1e-12))
            throw precondition_error("admissible pair: weight must be decreasing ((A1))");
        prev = cur;
    }
    if (!(p.phi_(1e-9) > 1e2))
        throw precondition_error("admissible pair: weight must blow up at 0+ ((A1))");
    if (!(1.0 / p.phi_(1e-9) < 1e-2))
        throw precondition_error("admissible pair: reciprocal not integrable near 0 ((A2))");
    p.build_prefix_table();
    p.check_inverse_derivative();
    return p;
}

void AdmissiblePair::build_prefix_table() {
    knots_ = log_lattice(1e-8, 1e5, 24);
    knots_.insert(knots_.begin(), 0.0);
    prefix_.assign(knots_.size(), 0.0);
    auto inv = [this](double s) { return s <= 0 ? 0.0 : 1.0 / phi_(s); };
    for (std::size_t k = 1; k < knots_.size(); ++k) {
        double seg = adaptive_simpson(inv, knots_[k - 1], knots_[k],
                                      1e-14 * std::max(1.0, knots_[k]));
        prefix_[k] = prefix_[k - 1] + seg;
        if (!std::isfinite(prefix_[k]))
            throw precondition_error("admissible pair: divergent reciprocal integral ((A2))");
    }
}

double AdmissiblePair::varphi(double t) const {
    if (t <= 0) return 0.0;
    if (power_q_ > 0) return std::pow(t, power_q_) / power_q_;
    // Prefix at the nearest lower knot plus an adaptive remainder keeps every
    // evaluation at quadrature accuracy.
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    std::size_t i = (it - knots_.begin()) - 1;
    auto inv = [this](double s) { return s <= 0 ? 0.0 : 1.0 / phi_(s); };
    double tail = adaptive_simpson(inv, knots_[i], t, 1e-14 * std::max(1.0, t));
    if (it == knots_.end()) {
        // beyond the table: integrate from the last knot
        return prefix_.back() + adaptive_simpson(inv, knots_.back(), t, 1e-13 * t);
    }
    return prefix_[i] + tail;
}

double AdmissiblePair::varphi_inv(double s) const {
    if (s <= 0) return 0.0;
    if (power_q_ > 0) return std::pow(power_q_ * s, 1.0 / power_q_);
    double lo = 1e-12, hi = 1.0;
    while (varphi(hi) < s) {
        hi *= 2;
        if (hi > 1e12) throw precondition_error("varphi_inv: argument out of range");
    }
    while (varphi(lo) > s) lo *= 0.5;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (varphi(mid) < s ? lo : hi) = mid;
        if (hi - lo <= 1e-14 * hi) break;
    }
    return 0.5 * (lo + hi);
}

void AdmissiblePair::check_inverse_derivative() const {
    // (varphi^{-1})'(s) = phi(varphi^{-1}(s)) at sample points.
    for (double t : {0.2, 1.0, 3.0}) {
        double s = varphi(t);
        double h = 1e-5 * std::max(s, 1e-6);
        double fd = (varphi_inv(s + h) - varphi_inv(s - h)) / (2 * h);
        double an = phi_(varphi_inv(s));
        if (std::abs(fd - an) > 1e-3 * std::abs(an))
            throw precondition_error("admissible pair: inverse derivative identity failed");
    }
}

} // namespace capax
