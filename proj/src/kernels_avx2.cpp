// AVX2 variants of the dense kernels. Compiled with -mavx2 in its own
// translation unit; only reached after the runtime CPU check in kernels.cpp.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>
#include <span>

namespace fedirec::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

}  // namespace

double sum(std::span<const double> x) {
    const std::size_t n = x.size();
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(x.data() + i));
    }
    double total = hsum(acc);
    for (; i < n; ++i) total += x[i];
    return total;
}

double l1_diff(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a.data() + i),
                                  _mm256_loadu_pd(b.data() + i));
        acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign_mask, d));
    }
    double total = hsum(acc);
    for (; i < n; ++i) total += std::fabs(a[i] - b[i]);
    return total;
}

void fill(std::span<double> x, double value) {
    const std::size_t n = x.size();
    const __m256d v = _mm256_set1_pd(value);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x.data() + i, v);
    for (; i < n; ++i) x[i] = value;
}

void scaled_add(std::span<double> dst, std::span<const double> src, double s) {
    const std::size_t n = dst.size();
    const __m256d sv = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_loadu_pd(dst.data() + i);
        __m256d x = _mm256_loadu_pd(src.data() + i);
        _mm256_storeu_pd(dst.data() + i, _mm256_fmadd_pd(sv, x, d));
    }
    for (; i < n; ++i) dst[i] += s * src[i];
}

}  // namespace fedirec::kernels::avx2

#endif
