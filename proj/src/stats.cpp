#include "phshape/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phshape {

namespace {

double gamma_p_series(double a, double x) {
    double sum = 1.0 / a, term = sum;
    for (int n = 1; n < 500; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
    // Lentz's algorithm for the continued fraction of Q(a,x).
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_contfrac(a, x);
}

double chi_squared_pvalue(double stat, int dof) {
    if (dof <= 0) throw std::invalid_argument("chi_squared_pvalue: dof <= 0");
    return gamma_q(0.5 * dof, 0.5 * stat);
}

double kolmogorov_q(double lambda) {
    if (lambda < 1e-9) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-12) break;
    }
    return std::min(1.0, std::max(0.0, sum));
}

double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = (double)a.size(), nb = (double)b.size();
    size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    return kolmogorov_q((ne + 0.12 + 0.11 / ne) * d);
}

double kuiper_uniform_pvalue(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("kuiper: empty sample");
    std::sort(values.begin(), values.end());
    const double n = (double)values.size();
    double dplus = 0.0, dminus = 0.0;
    for (size_t k = 0; k < values.size(); ++k) {
        dplus = std::max(dplus, (k + 1) / n - values[k]);
        dminus = std::max(dminus, values[k] - k / n);
    }
    const double v = dplus + dminus;
    const double sq = std::sqrt(n);
    const double lam = (sq + 0.155 + 0.24 / sq) * v;
    if (lam < 0.4) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double x = 4.0 * k * k * lam * lam;
        const double term = 2.0 * (x - 1.0) * std::exp(-0.5 * x);
        sum += term;
        if (std::abs(term) < 1e-12) break;
    }
    return std::min(1.0, std::max(0.0, sum));
}

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("least_squares: need >= 2 points");
    const size_t n = x.size();
    double sx = 0.0, sy = 0.0;
    for (size_t i = 0; i < n; ++i) { sx += x[i]; sy += y[i]; }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("least_squares: degenerate x");
    LinearFit f;
    f.n = n;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double e = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += e * e;
    }
    f.r_squared = (syy == 0.0) ? 1.0 : 1.0 - ss_res / syy;
    f.stderr_slope = (n > 2) ? std::sqrt(ss_res / ((n - 2) * sxx)) : 0.0;
    return f;
}

} // namespace phshape
