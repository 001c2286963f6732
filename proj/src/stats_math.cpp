#include "fedirec/stats_math.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fedirec::stats {

namespace {

// Continued fraction for the incomplete beta, modified Lentz algorithm.
double beta_cf(double a, double b, double x) {
    constexpr double kTiny = 1e-300;
    constexpr double kEps = 1e-15;
    constexpr int kMaxIter = 500;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::domain_error("incomplete_beta: a, b must be positive");
    }
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                            std::lgamma(b) + a * std::log(x) +
                            b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_cf(a, b, x) / a;
    }
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double incomplete_gamma_p(double a, double x) {
    if (!(a > 0.0)) throw std::domain_error("incomplete_gamma_p: a > 0 required");
    if (x <= 0.0) return 0.0;
    constexpr double kEps = 1e-15;
    constexpr int kMaxIter = 10000;
    if (x < a + 1.0) {
        // series expansion
        double ap = a;
        double sum = 1.0 / a;
        double del = sum;
        for (int i = 0; i < kMaxIter; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * kEps) break;
        }
        return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    // continued fraction for Q(a, x), Lentz
    constexpr double kTiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    const double q = h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    return 1.0 - q;
}

double student_t_two_tailed_p(double t, double df) {
    if (!(df > 0.0)) throw std::domain_error("student_t: df > 0 required");
    if (!std::isfinite(t)) return 0.0;
    const double x = df / (df + t * t);
    return incomplete_beta(df / 2.0, 0.5, x);
}

double chi_square_sf(double x, double df) {
    if (x <= 0.0) return 1.0;
    return 1.0 - incomplete_gamma_p(df / 2.0, x / 2.0);
}

ChiSquareResult chi_square_uniform(const std::size_t* counts, std::size_t n) {
    if (n < 2) throw std::domain_error("chi_square_uniform: need >= 2 cells");
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += counts[i];
    ChiSquareResult r;
    r.df = n - 1;
    if (total == 0) return r;
    const double expected = static_cast<double>(total) / static_cast<double>(n);
    double stat = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = static_cast<double>(counts[i]) - expected;
        stat += d * d / expected;
    }
    r.statistic = stat;
    r.p_value = chi_square_sf(stat, static_cast<double>(r.df));
    return r;
}

}  // namespace fedirec::stats
