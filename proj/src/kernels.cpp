#include "fedirec/kernels.hpp"

#include <cmath>
#include <cstdlib>

namespace fedirec::kernels {

namespace scalar {

double sum(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v;
    return acc;
}

double l1_diff(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::fabs(a[i] - b[i]);
    return acc;
}

void fill(std::span<double> x, double value) {
    for (double& v : x) v = value;
}

void scaled_add(std::span<double> dst, std::span<const double> src, double s) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += s * src[i];
}

}  // namespace scalar

namespace {

constexpr Backend kScalar{"scalar", scalar::sum, scalar::l1_diff, scalar::fill,
                          scalar::scaled_add};

}  // namespace

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double sum(std::span<const double> x);
double l1_diff(std::span<const double> a, std::span<const double> b);
void fill(std::span<double> x, double value);
void scaled_add(std::span<double> dst, std::span<const double> src, double s);
}  // namespace avx2

namespace {
constexpr Backend kAvx2{"avx2", avx2::sum, avx2::l1_diff, avx2::fill,
                        avx2::scaled_add};

const Backend* detect() {
    if ((__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))) return &kAvx2;
    return &kScalar;
}
}  // namespace
#else
namespace {
const Backend* detect() { return &kScalar; }
}  // namespace
#endif

namespace {
const Backend* g_active = detect();
}

const Backend& active() { return *g_active; }

bool select(std::string_view name) {
    if (name == "scalar") {
        g_active = &kScalar;
        return true;
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (name == "avx2" && (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))) {
        g_active = &kAvx2;
        return true;
    }
#endif
    return false;
}

}  // namespace fedirec::kernels
