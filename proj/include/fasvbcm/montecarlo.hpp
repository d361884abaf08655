// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "fasvbcm/channel.hpp"

namespace fas {

struct McSettings {
    long long num_samples = 50000;
    std::uint64_t seed = 20240601;
    int chunk_size = 4096;  // samples per work item; never changes the result
    int threads = 0;        // 0: hardware concurrency; never changes the result

    void validate() const;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    double ci95_low = 0.0;
    double ci95_high = 0.0;
    long long num_samples = 0;
};

/// SplitMix64 sequence; satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;
    explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
    result_type operator()() noexcept;

private:
    std::uint64_t state_;
};

/// Generator for draw `index` of `stream`. Every draw has its own counter-derived
/// sequence, so results do not depend on how draws are grouped or scheduled.
SplitMix64 substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Draws g = F z, z i.i.d. unit-variance circular complex Gaussian, into (re, im).
void draw_channel(const Matrix& factor, SplitMix64& rng, std::span<double> re, std::span<double> im);

/// max_k |g_k| for one draw of g = F z.
double sample_max_amplitude(const Matrix& factor, SplitMix64& rng);

/// settings.num_samples selected-port amplitudes from the given stream, chunk-parallel.
std::vector<double> draw_max_amplitudes(const Matrix& factor, const McSettings& settings, std::uint64_t stream);

/// Alice (stream 0) and Eve (stream 1) amplitudes, reusable across power levels.
struct PairedAmplitudes {
    std::vector<double> alice;
    std::vector<double> eve;
};

PairedAmplitudes draw_paired_amplitudes(const Covariance& alice, const Covariance& eve, const McSettings& settings);

McEstimate asc_estimate(const PairedAmplitudes& samples, double power, double noise_alice, double noise_eve);
McEstimate sop_estimate(const PairedAmplitudes& samples, double power, double noise_alice, double noise_eve,
                        double secrecy_rate);

McEstimate mc_asc(const Covariance& alice, const Covariance& eve, double power, double noise_alice, double noise_eve,
                  const McSettings& settings);
McEstimate mc_sop(const Covariance& alice, const Covariance& eve, double power, double noise_alice, double noise_eve,
                  double secrecy_rate, const McSettings& settings);

}  // namespace fas
