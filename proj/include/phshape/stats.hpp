#pragma once

#include <cstddef>
#include <vector>

namespace phshape {

// Upper regularized incomplete gamma Q(a, x); series + continued fraction.
double gamma_q(double a, double x);

// P(chi2 >= stat) with the given degrees of freedom.
double chi_squared_pvalue(double stat, int dof);

// Asymptotic Kolmogorov distribution Q_KS(lambda) = 2 sum (-1)^{k-1} e^{-2 k^2 lambda^2}.
double kolmogorov_q(double lambda);

// Two-sample Kolmogorov-Smirnov test; returns asymptotic p-value.
double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b);

// Kuiper test of sample (values in [0,1)) against the uniform distribution.
double kuiper_uniform_pvalue(std::vector<double> values);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    double r_squared = 0.0;
    size_t n = 0;
};

// Ordinary least squares y = a + b x.
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

} // namespace phshape
