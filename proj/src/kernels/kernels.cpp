#include "pcnet/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

namespace pcnet::kernels {

namespace scalar {

double sum(std::span<const double> x) noexcept {
    double acc = 0.0;
    for (double v : x) acc += v;
    return acc;
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double l1_diff(std::span<const double> a, std::span<const double> b) noexcept {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
    return acc;
}

double sum_sq_diff(std::span<const double> x, double c) noexcept {
    double acc = 0.0;
    for (double v : x) {
        const double d = v - c;
        acc += d * d;
    }
    return acc;
}

void add_inplace(std::span<double> acc, std::span<const double> x) noexcept {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += x[i];
}

void scale_inplace(std::span<double> x, double c) noexcept {
    for (double& v : x) v *= c;
}

void scale_add_inplace(std::span<double> x, double a, double b) noexcept {
    for (double& v : x) v = a * v + b;
}

}  // namespace scalar

#if defined(PCNET_KERNELS_AVX2)
namespace avx2 {
double sum(std::span<const double> x) noexcept;
double dot(std::span<const double> a, std::span<const double> b) noexcept;
double l1_diff(std::span<const double> a, std::span<const double> b) noexcept;
double sum_sq_diff(std::span<const double> x, double c) noexcept;
void add_inplace(std::span<double> acc, std::span<const double> x) noexcept;
void scale_inplace(std::span<double> x, double c) noexcept;
void scale_add_inplace(std::span<double> x, double a, double b) noexcept;
}  // namespace avx2
#endif

namespace {

struct Vtable {
    double (*sum)(std::span<const double>) noexcept;
    double (*dot)(std::span<const double>, std::span<const double>) noexcept;
    double (*l1_diff)(std::span<const double>, std::span<const double>) noexcept;
    double (*sum_sq_diff)(std::span<const double>, double) noexcept;
    void (*add_inplace)(std::span<double>, std::span<const double>) noexcept;
    void (*scale_inplace)(std::span<double>, double) noexcept;
    void (*scale_add_inplace)(std::span<double>, double, double) noexcept;
};

constexpr Vtable kScalar{scalar::sum,         scalar::dot,           scalar::l1_diff,
                         scalar::sum_sq_diff, scalar::add_inplace,   scalar::scale_inplace,
                         scalar::scale_add_inplace};

#if defined(PCNET_KERNELS_AVX2)
constexpr Vtable kAvx2{avx2::sum,         avx2::dot,           avx2::l1_diff,
                       avx2::sum_sq_diff, avx2::add_inplace,   avx2::scale_inplace,
                       avx2::scale_add_inplace};
#endif

bool cpu_has_avx2() noexcept {
#if defined(PCNET_KERNELS_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Lane detect_lane() noexcept {
    if (const char* env = std::getenv("PCNET_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return Lane::scalar;
        if (std::strcmp(env, "avx2") == 0 && lane_supported(Lane::avx2)) return Lane::avx2;
    }
    return lane_supported(Lane::avx2) ? Lane::avx2 : Lane::scalar;
}

std::atomic<const Vtable*> g_vtable{nullptr};
std::atomic<Lane> g_lane{Lane::scalar};

const Vtable* table_for(Lane lane) noexcept {
#if defined(PCNET_KERNELS_AVX2)
    if (lane == Lane::avx2) return &kAvx2;
#endif
    (void)lane;
    return &kScalar;
}

const Vtable& vt() noexcept {
    const Vtable* t = g_vtable.load(std::memory_order_acquire);
    if (!t) {
        const Lane lane = detect_lane();
        g_lane.store(lane, std::memory_order_relaxed);
        t = table_for(lane);
        g_vtable.store(t, std::memory_order_release);
    }
    return *t;
}

}  // namespace

const char* lane_name(Lane lane) noexcept {
    return lane == Lane::avx2 ? "avx2" : "scalar";
}

bool lane_supported(Lane lane) noexcept {
    if (lane == Lane::scalar) return true;
    return cpu_has_avx2();
}

Lane active_lane() noexcept {
    vt();
    return g_lane.load(std::memory_order_relaxed);
}

void force_lane(Lane lane) {
    if (!lane_supported(lane))
        throw std::invalid_argument(std::string("kernel lane not available: ") + lane_name(lane));
    g_lane.store(lane, std::memory_order_relaxed);
    g_vtable.store(table_for(lane), std::memory_order_release);
}

double sum(std::span<const double> x) noexcept {
    return vt().sum(x);
}
double dot(std::span<const double> a, std::span<const double> b) noexcept {
    return vt().dot(a, b);
}
double l1_diff(std::span<const double> a, std::span<const double> b) noexcept {
    return vt().l1_diff(a, b);
}
double sum_sq_diff(std::span<const double> x, double c) noexcept {
    return vt().sum_sq_diff(x, c);
}
void add_inplace(std::span<double> acc, std::span<const double> x) noexcept {
    vt().add_inplace(acc, x);
}
void scale_inplace(std::span<double> x, double c) noexcept {
    vt().scale_inplace(x, c);
}
void scale_add_inplace(std::span<double> x, double a, double b) noexcept {
    vt().scale_add_inplace(x, a, b);
}

}  // namespace pcnet::kernels
