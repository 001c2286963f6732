#pragma once

#include <cstddef>

namespace fedirec::stats {

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation
// (Lentz), absolute error <= 1e-12 in the tested range.
double incomplete_beta(double a, double b, double x);

// Regularized lower incomplete gamma P(a, x).
double incomplete_gamma_p(double a, double x);

// Two-tailed p-value of Student's t with df degrees of freedom.
double student_t_two_tailed_p(double t, double df);

// Chi-square survival function Q(x; df) = 1 - CDF.
double chi_square_sf(double x, double df);

struct ChiSquareResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t df = 0;
};

// Goodness-of-fit of observed counts against a uniform distribution.
ChiSquareResult chi_square_uniform(const std::size_t* counts, std::size_t n);

}  // namespace fedirec::stats
