#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pcnet/kernels.hpp"
#include "pcnet/rng.hpp"

using namespace pcnet;
namespace k = pcnet::kernels;

namespace {

struct LaneGuard {
    k::Lane saved = k::active_lane();
    ~LaneGuard() { k::force_lane(saved); }
};

std::vector<double> random_vector(Rng& rng, std::size_t n) {
    std::vector<double> x(n);
    for (auto& v : x) v = rng.next_double() * 2.0 - 1.0;
    return x;
}

// high-precision reference reductions
long double ref_sum(const std::vector<double>& x) {
    long double acc = 0;
    for (double v : x) acc += v;
    return acc;
}
long double ref_dot(const std::vector<double>& a, const std::vector<double>& b) {
    long double acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += (long double)a[i] * b[i];
    return acc;
}

}  // namespace

TEST_CASE("kernel lanes agree on reductions and accuracy") {
    LaneGuard guard;
    Rng rng(7);
    // odd sizes exercise every remainder path
    for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{3}, std::size_t{4},
                          std::size_t{5}, std::size_t{17}, std::size_t{64}, std::size_t{257},
                          std::size_t{1000}}) {
        const auto a = random_vector(rng, n);
        const auto b = random_vector(rng, n);

        k::force_lane(k::Lane::scalar);
        const double sum_s = k::sum(a);
        const double dot_s = k::dot(a, b);
        const double l1_s = k::l1_diff(a, b);
        const double sq_s = k::sum_sq_diff(a, 0.25);

        CHECK(sum_s == doctest::Approx((double)ref_sum(a)).epsilon(1e-12));
        CHECK(dot_s == doctest::Approx((double)ref_dot(a, b)).epsilon(1e-12));

        if (!k::lane_supported(k::Lane::avx2)) continue;
        k::force_lane(k::Lane::avx2);
        CHECK(k::sum(a) == doctest::Approx(sum_s).epsilon(1e-12));
        CHECK(k::dot(a, b) == doctest::Approx(dot_s).epsilon(1e-12));
        CHECK(k::l1_diff(a, b) == doctest::Approx(l1_s).epsilon(1e-12));
        CHECK(k::sum_sq_diff(a, 0.25) == doctest::Approx(sq_s).epsilon(1e-12));
    }
}

TEST_CASE("elementwise kernels are bitwise identical across lanes") {
    if (!k::lane_supported(k::Lane::avx2)) return;
    LaneGuard guard;
    Rng rng(11);
    for (std::size_t n : {std::size_t{1}, std::size_t{4}, std::size_t{7}, std::size_t{33},
                          std::size_t{512}}) {
        const auto base = random_vector(rng, n);
        const auto x = random_vector(rng, n);

        auto acc_s = base;
        auto acc_v = base;
        k::force_lane(k::Lane::scalar);
        k::add_inplace(acc_s, x);
        k::scale_inplace(acc_s, 0.3);
        k::scale_add_inplace(acc_s, 0.85, 0.0123);
        k::force_lane(k::Lane::avx2);
        k::add_inplace(acc_v, x);
        k::scale_inplace(acc_v, 0.3);
        k::scale_add_inplace(acc_v, 0.85, 0.0123);
        CHECK(acc_s == acc_v);  // exact, not approximate
    }
}

TEST_CASE("reductions are deterministic within a lane") {
    LaneGuard guard;
    Rng rng(13);
    const auto a = random_vector(rng, 777);
    const auto b = random_vector(rng, 777);
    for (k::Lane lane : {k::Lane::scalar, k::Lane::avx2}) {
        if (!k::lane_supported(lane)) continue;
        k::force_lane(lane);
        CHECK(k::sum(a) == k::sum(a));
        CHECK(k::dot(a, b) == k::dot(a, b));
        CHECK(k::l1_diff(a, b) == k::l1_diff(a, b));
    }
}

TEST_CASE("force_lane rejects unsupported lanes") {
    if (k::lane_supported(k::Lane::avx2)) {
        CHECK_NOTHROW(k::force_lane(k::active_lane()));
        return;
    }
    CHECK_THROWS_AS(k::force_lane(k::Lane::avx2), std::invalid_argument);
}

TEST_CASE("sum_sq_diff matches direct evaluation") {
    const std::vector<double> x{0.5, 0.7};
    CHECK(k::sum_sq_diff(x, 1.0) == doctest::Approx(0.25 + 0.09).epsilon(1e-15));
    CHECK(k::sum_sq_diff(x, 0.6) == doctest::Approx(0.02).epsilon(1e-12));
}
