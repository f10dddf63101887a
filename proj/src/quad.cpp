#include "pvsum/quad.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace pvsum {

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double result;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double hlgth = 0.5 * (b - a);
    const double centr = 0.5 * (a + b);
    double fc = f(centr);
    long double resg = fc * kWg[3];
    long double resk = fc * kWgk[7];
    long double resabs = std::abs(fc) * kWgk[7];
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        double absc = hlgth * kXgk[j];
        fv1[j] = f(centr - absc);
        fv2[j] = f(centr + absc);
        double fsum = fv1[j] + fv2[j];
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
        resk += kWgk[j] * fsum;
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    }
    double reskh = static_cast<double>(resk) * 0.5;
    long double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    double result = static_cast<double>(resk) * hlgth;
    double rasc = static_cast<double>(resasc) * std::abs(hlgth);
    double err = std::abs(static_cast<double>(resk - resg)) * std::abs(hlgth);
    if (rasc != 0.0 && err != 0.0)
        err = rasc * std::min(1.0, std::pow(200.0 * err / rasc, 1.5));
    double rabs = static_cast<double>(resabs) * std::abs(hlgth);
    double uflow = 50.0 * std::numeric_limits<double>::epsilon() * rabs;
    err = std::max(err, uflow);
    if (!std::isfinite(result))
        throw std::domain_error("adaptive_quad: non-finite integrand value");
    return {a, b, result, err};
}

}  // namespace

EvalResult adaptive_quad(const std::function<double(double)>& f, double a,
                         double b, const QuadConfig& cfg) {
    cfg.validate();
    if (a == b) return {0.0, 0.0, 0};
    std::priority_queue<Panel> heap;
    heap.push(gk15(f, a, b));
    double total = heap.top().result;
    double total_err = heap.top().err;
    int n = 1;
    while (total_err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
        if (n >= cfg.max_subdivisions)
            throw accuracy_error("adaptive_quad: subdivision limit reached", total,
                                 total_err);
        Panel worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b)
            throw accuracy_error("adaptive_quad: interval underflow", total, total_err);
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        total += left.result + right.result - worst.result;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++n;
    }
    // recompute sums from the heap for a tighter rounding floor
    std::priority_queue<Panel> copy = heap;
    long double v = 0.0L, e = 0.0L;
    while (!copy.empty()) {
        v += copy.top().result;
        e += copy.top().err;
        copy.pop();
    }
    return {static_cast<double>(v), static_cast<double>(e), n};
}

double cutoff_for_power(double p, double tol) {
    if (p <= 0.0) return -std::log(tol);
    double c = p + 10.0 * std::sqrt(p) + 50.0;
    // peak of y^p e^{-y} is at y = p; solve p log(c/p) - (c - p) = log(tol)
    for (int it = 0; it < 50; ++it) {
        double g = p * std::log(c / p) - (c - p) - std::log(tol);
        double dg = p / c - 1.0;
        double step = g / dg;
        c -= step;
        if (std::abs(step) < 1e-9 * c) break;
    }
    return std::max(c, p + 1.0);
}

EvalResult quad_to_infinity(const std::function<double(double)>& f, double a,
                            const QuadConfig& cfg) {
    double b = std::max(cfg.upper_cutoff, a + 1.0);
    return adaptive_quad(f, a, b, cfg);
}

EvalResult quad_algebraic_endpoint(const std::function<double(double)>& f,
                                   double alpha, double b, const QuadConfig& cfg) {
    if (!(alpha > -1.0 && alpha < 0.0))
        throw std::domain_error("quad_algebraic_endpoint: alpha must be in (-1, 0)");
    // y = u^q with q = 1/(1+alpha): dy = q u^{q-1} du and y^alpha dy = q du * (smooth)
    double q = 1.0 / (1.0 + alpha);
    auto g = [&](double u) {
        if (u <= 0.0) return 0.0;
        double y = std::pow(u, q);
        return f(y) * q * std::pow(u, q - 1.0);
    };
    return adaptive_quad(g, 0.0, std::pow(b, 1.0 / q), cfg);
}

}  // namespace pvsum
