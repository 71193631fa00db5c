// AVX2 + FMA lane. Compiled with -mavx2 -mfma; only dispatched to when the CPU
// reports both features. Reductions accumulate into 4 independent vector
// registers and fold them in a fixed order, so results are deterministic for
// a given input (though not bitwise equal to the scalar lane).

#include <immintrin.h>

#include <cmath>
#include <span>

namespace pcnet::kernels::avx2 {

namespace {

inline double hsum(__m256d v) noexcept {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

inline __m256d abs_pd(__m256d v) noexcept {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    return _mm256_and_pd(v, mask);
}

}  // namespace

double sum(std::span<const double> x) noexcept {
    const std::size_t n = x.size();
    const double* p = x.data();
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    __m256d s2 = _mm256_setzero_pd(), s3 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        s0 = _mm256_add_pd(s0, _mm256_loadu_pd(p + i));
        s1 = _mm256_add_pd(s1, _mm256_loadu_pd(p + i + 4));
        s2 = _mm256_add_pd(s2, _mm256_loadu_pd(p + i + 8));
        s3 = _mm256_add_pd(s3, _mm256_loadu_pd(p + i + 12));
    }
    for (; i + 4 <= n; i += 4) s0 = _mm256_add_pd(s0, _mm256_loadu_pd(p + i));
    double acc = hsum(_mm256_add_pd(_mm256_add_pd(s0, s1), _mm256_add_pd(s2, s3)));
    for (; i < n; ++i) acc += p[i];
    return acc;
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    const std::size_t n = a.size();
    const double* pa = a.data();
    const double* pb = b.data();
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        s0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i), s0);
        s1 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i + 4), _mm256_loadu_pd(pb + i + 4), s1);
    }
    for (; i + 4 <= n; i += 4)
        s0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i), s0);
    double acc = hsum(_mm256_add_pd(s0, s1));
    for (; i < n; ++i) acc = std::fma(pa[i], pb[i], acc);
    return acc;
}

double l1_diff(std::span<const double> a, std::span<const double> b) noexcept {
    const std::size_t n = a.size();
    const double* pa = a.data();
    const double* pb = b.data();
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        s0 = _mm256_add_pd(s0, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i))));
        s1 = _mm256_add_pd(
            s1, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(pa + i + 4), _mm256_loadu_pd(pb + i + 4))));
    }
    for (; i + 4 <= n; i += 4)
        s0 = _mm256_add_pd(s0, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i))));
    double acc = hsum(_mm256_add_pd(s0, s1));
    for (; i < n; ++i) acc += std::abs(pa[i] - pb[i]);
    return acc;
}

double sum_sq_diff(std::span<const double> x, double c) noexcept {
    const std::size_t n = x.size();
    const double* p = x.data();
    const __m256d vc = _mm256_set1_pd(c);
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(p + i), vc);
        const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(p + i + 4), vc);
        s0 = _mm256_fmadd_pd(d0, d0, s0);
        s1 = _mm256_fmadd_pd(d1, d1, s1);
    }
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(p + i), vc);
        s0 = _mm256_fmadd_pd(d, d, s0);
    }
    double acc = hsum(_mm256_add_pd(s0, s1));
    for (; i < n; ++i) {
        const double d = p[i] - c;
        acc = std::fma(d, d, acc);
    }
    return acc;
}

void add_inplace(std::span<double> acc, std::span<const double> x) noexcept {
    const std::size_t n = acc.size();
    double* pa = acc.data();
    const double* px = x.data();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(pa + i, _mm256_add_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(px + i)));
    for (; i < n; ++i) pa[i] += px[i];
}

void scale_inplace(std::span<double> x, double c) noexcept {
    const std::size_t n = x.size();
    double* p = x.data();
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(p + i, _mm256_mul_pd(_mm256_loadu_pd(p + i), vc));
    for (; i < n; ++i) p[i] *= c;
}

// mul+add rather than fma, to stay bitwise identical to the scalar lane
void scale_add_inplace(std::span<double> x, double a, double b) noexcept {
    const std::size_t n = x.size();
    double* p = x.data();
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(p + i, _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(p + i), va), vb));
    for (; i < n; ++i) p[i] = p[i] * a + b;
}

}  // namespace pcnet::kernels::avx2
