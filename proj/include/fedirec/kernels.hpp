#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Dense double-precision kernels used by the PageRank power iteration.
// A scalar reference implementation always exists; on x86 an AVX2 variant
// is selected at runtime when the CPU supports it. The variants are
// equivalence-tested against each other; reductions may differ in summation
// order, so agreement is required within 1e-12 relative, not bit-for-bit.

namespace fedirec::kernels {

struct Backend {
    std::string_view name;
    double (*sum)(std::span<const double>);
    double (*l1_diff)(std::span<const double>, std::span<const double>);
    void (*fill)(std::span<double>, double);
    void (*scaled_add)(std::span<double>, std::span<const double>, double);
};

// Scalar reference kernels, always available.
namespace scalar {
double sum(std::span<const double> x);
double l1_diff(std::span<const double> a, std::span<const double> b);
void fill(std::span<double> x, double value);
// dst[i] += s * src[i]
void scaled_add(std::span<double> dst, std::span<const double> src, double s);
}  // namespace scalar

// The backend chosen at first use (scalar or avx2).
const Backend& active();
// Force a specific backend ("scalar" or "avx2"); returns false if unavailable.
bool select(std::string_view name);

inline double sum(std::span<const double> x) { return active().sum(x); }
inline double l1_diff(std::span<const double> a, std::span<const double> b) {
    return active().l1_diff(a, b);
}
inline void fill(std::span<double> x, double v) { active().fill(x, v); }
inline void scaled_add(std::span<double> dst, std::span<const double> src, double s) {
    active().scaled_add(dst, src, s);
}

}  // namespace fedirec::kernels
