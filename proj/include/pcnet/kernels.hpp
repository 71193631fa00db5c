#pragma once

#include <cstddef>
#include <span>

// Dense vector kernels behind the score pipelines: a scalar reference lane
// plus an AVX2 lane selected at runtime. Elementwise kernels are bit-identical
// across lanes; reductions use a fixed blocked order inside each lane, so any
// single lane is deterministic run-to-run. The PCNET_KERNELS environment
// variable ("scalar" | "avx2") overrides auto-detection at startup.

namespace pcnet::kernels {

enum class Lane { scalar, avx2 };

const char* lane_name(Lane lane) noexcept;
bool lane_supported(Lane lane) noexcept;
Lane active_lane() noexcept;
/// Select a lane explicitly (tests, CLI). Throws std::invalid_argument if the
/// lane is not compiled in or the CPU lacks it.
void force_lane(Lane lane);

/// Σ x_i
double sum(std::span<const double> x) noexcept;
/// Σ a_i b_i
double dot(std::span<const double> a, std::span<const double> b) noexcept;
/// Σ |a_i − b_i|
double l1_diff(std::span<const double> a, std::span<const double> b) noexcept;
/// Σ (x_i − c)²
double sum_sq_diff(std::span<const double> x, double c) noexcept;
/// acc_i += x_i
void add_inplace(std::span<double> acc, std::span<const double> x) noexcept;
/// x_i *= c
void scale_inplace(std::span<double> x, double c) noexcept;
/// x_i = a·x_i + b
void scale_add_inplace(std::span<double> x, double a, double b) noexcept;

}  // namespace pcnet::kernels
