#include "hhv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace hhv {

namespace {

// 7-point Gauss / 15-point Kronrod pair on [-1, 1]. Nodes are the positive
// abscissae; the Gauss rule uses the odd-indexed ones.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double value;
    double err;
};

// One Gauss-Kronrod panel over [lo, hi]. The error estimate follows the
// usual (200 * |K15 - G7|)^{3/2} sharpening, capped by the scale of the
// integrand's variation on the panel.
PanelResult gk15(const ScalarFn& g, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    double fv[15];
    double resk = 0.0, resg = 0.0, resabs = 0.0;
    for (int j = 0; j < 8; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = g(center - dx);
        if (j == 7) {
            fv[7] = f1;
            resk += kWgk[7] * f1;
            resg += kWg[3] * f1;
            resabs += kWgk[7] * std::abs(f1);
            continue;
        }
        const double f2 = g(center + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1)
            resg += kWg[j / 2] * (f1 + f2);
    }
    if (!std::isfinite(resk))
        throw QuadratureError("integrate: non-finite integrand value near x = " +
                              std::to_string(center));

    const double mean = 0.5 * resk;
    double resasc = 0.0;
    for (int j = 0; j < 8; ++j) {
        resasc += kWgk[j] * (std::abs(fv[j] - mean) +
                             (j == 7 ? 0.0 : std::abs(fv[14 - j] - mean)));
    }
    resasc *= std::abs(half);

    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double round = 50.0 * std::numeric_limits<double>::epsilon() * resabs * std::abs(half);
    err = std::max(err, round);
    return {resk * half, err};
}

struct Segment {
    double lo;
    double hi;
};

}  // namespace

QuadResult integrate(const ScalarFn& g, double lo, double hi, double tol,
                     std::size_t max_evals) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("integrate: require finite lo < hi");
    if (!(tol > 0.0))
        throw std::invalid_argument("integrate: require tol > 0");

    const double total_width = hi - lo;
    std::vector<Segment> stack{{lo, hi}};
    double value = 0.0, err = 0.0;
    std::size_t evals = 0;
    int panels = 0;

    while (!stack.empty()) {
        const Segment seg = stack.back();
        stack.pop_back();
        if (evals + 15 > max_evals)
            throw QuadratureError("integrate: node budget " + std::to_string(max_evals) +
                                  " exhausted before reaching tol");
        const double mid = 0.5 * (seg.lo + seg.hi);
        if (!(mid > seg.lo && mid < seg.hi))
            throw QuadratureError(
                "integrate: subdivision reached floating point resolution near x = " +
                std::to_string(seg.lo) + " without meeting tol");
        const PanelResult pr = gk15(g, seg.lo, seg.hi);
        evals += 15;
        ++panels;

        const double width = seg.hi - seg.lo;
        const double allowance = tol * (width / total_width);
        if (pr.err <= allowance) {
            value += pr.value;
            err += pr.err;
        } else {
            stack.push_back({mid, seg.hi});
            stack.push_back({seg.lo, mid});
        }
    }
    return {value, err, panels};
}

QuadResult integrate_unit_open(const ScalarFn& g, double lo, double hi, double tol,
                               std::size_t max_evals) {
    if (!(lo >= 0.0) || !(hi <= 1.0) || !(lo < hi))
        throw std::invalid_argument("integrate_unit_open: require 0 <= lo < hi <= 1");
    const double eps = 1e-12;
    double clipped_lo = lo, clipped_hi = hi;
    double clip_allowance = 0.0;
    if (lo == 0.0) {
        clipped_lo = eps;
        clip_allowance += eps * std::abs(g(eps));
    }
    if (hi == 1.0) {
        clipped_hi = 1.0 - eps;
        clip_allowance += eps * std::abs(g(1.0 - eps));
    }
    if (!std::isfinite(clip_allowance))
        throw QuadratureError("integrate_unit_open: non-finite integrand at the clip points");
    if (clip_allowance >= tol)
        throw QuadratureError("integrate_unit_open: clipped endpoint mass alone exceeds tol");

    QuadResult r = integrate(g, clipped_lo, clipped_hi, tol - clip_allowance, max_evals);
    r.err_estimate += clip_allowance;
    return r;
}

double log_gamma(double x) {
    if (!(x > 0.0))
        throw std::invalid_argument("log_gamma: require x > 0");
    return std::lgamma(x);
}

double beta(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0))
        throw std::invalid_argument("beta: require x > 0 and y > 0");
    return std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
}

double incomplete_beta_half(double q) {
    if (!(q > 0.0))
        throw std::invalid_argument("incomplete_beta_half: require q > 0");
    return 0.5 * beta(q + 1.0, q + 1.0);
}

QuadResult incomplete_beta_half_quad(double q, double tol) {
    if (!(q > 0.0))
        throw std::invalid_argument("incomplete_beta_half_quad: require q > 0");
    return integrate_unit_open(
        [q](double t) { return std::pow(t, q) * std::pow(1.0 - t, q); }, 0.0, 0.5, tol);
}

}  // namespace hhv
