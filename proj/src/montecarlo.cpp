// SPDX-License-Identifier: Apache-2.0
#include "fasvbcm/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "fasvbcm/error.hpp"
#include "fasvbcm/secrecy.hpp"
#include "fasvbcm/specfun.hpp"

namespace fas {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void check_noise(double power, double noise_alice, double noise_eve)
{
    if (!(power >= 0.0) || !std::isfinite(power))
        throw DomainError("Monte Carlo: power must be finite and non-negative");
    if (!(noise_alice > 0.0) || !(noise_eve > 0.0))
        throw DomainError("Monte Carlo: noise variances must be positive");
}

McEstimate make_estimate(double mean, double std_error, long long n)
{
    return {mean, std_error, mean - 1.96 * std_error, mean + 1.96 * std_error, n};
}

double secrecy_rate_sample(double a, double e, double power, double noise_alice, double noise_eve)
{
    const double diff = capacity(power * a * a / noise_alice) - capacity(power * e * e / noise_eve);
    return std::max(diff, 0.0);
}

}  // namespace

void McSettings::validate() const
{
    if (num_samples < 1000)
        throw DomainError("Monte Carlo: num_samples must be at least 1000");
    if (chunk_size < 1)
        throw DomainError("Monte Carlo: chunk_size must be positive");
    if (threads < 0)
        throw DomainError("Monte Carlo: threads must be non-negative");
}

SplitMix64::result_type SplitMix64::operator()() noexcept
{
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

SplitMix64 substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
{
    return SplitMix64(splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index));
}

void draw_channel(const Matrix& factor, SplitMix64& rng, std::span<double> re, std::span<double> im)
{
    const std::size_t n = factor.rows();
    const std::size_t m = factor.cols();
    if (re.size() != n || im.size() != n)
        throw DomainError("draw_channel: output size does not match the factor");
    // unit total variance: 1/2 per quadrature
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    thread_local std::vector<double> zr, zi;
    zr.resize(m);
    zi.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        zr[j] = normal(rng);
        zi[j] = normal(rng);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = factor.row(i);
        double sr = 0.0;
        double si = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            sr += row[j] * zr[j];
            si += row[j] * zi[j];
        }
        re[i] = sr;
        im[i] = si;
    }
}

double sample_max_amplitude(const Matrix& factor, SplitMix64& rng)
{
    thread_local std::vector<double> re, im;
    re.resize(factor.rows());
    im.resize(factor.rows());
    draw_channel(factor, rng, re, im);
    double best = 0.0;
    for (std::size_t i = 0; i < re.size(); ++i)
        best = std::max(best, std::hypot(re[i], im[i]));
    return best;
}

std::vector<double> draw_max_amplitudes(const Matrix& factor, const McSettings& settings, std::uint64_t stream)
{
    settings.validate();
    const auto n = static_cast<std::size_t>(settings.num_samples);
    const auto chunk = static_cast<std::size_t>(settings.chunk_size);
    const std::size_t chunks = (n + chunk - 1) / chunk;
    std::vector<double> out(n);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto worker = [&] {
        try {
            for (std::size_t c = next++; c < chunks; c = next++) {
                const std::size_t end = std::min(n, (c + 1) * chunk);
                for (std::size_t i = c * chunk; i < end; ++i) {
                    SplitMix64 rng = substream(settings.seed, stream, i);
                    out[i] = sample_max_amplitude(factor, rng);
                }
            }
        } catch (...) {
            std::lock_guard lock(failure_lock);
            failure = std::current_exception();
        }
    };

    std::size_t threads = settings.threads > 0 ? static_cast<std::size_t>(settings.threads)
                                               : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, chunks);
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
    pool.clear();
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

PairedAmplitudes draw_paired_amplitudes(const Covariance& alice, const Covariance& eve, const McSettings& settings)
{
    return {draw_max_amplitudes(coloring_factor(alice), settings, 0),
            draw_max_amplitudes(coloring_factor(eve), settings, 1)};
}

McEstimate asc_estimate(const PairedAmplitudes& samples, double power, double noise_alice, double noise_eve)
{
    check_noise(power, noise_alice, noise_eve);
    const std::size_t n = samples.alice.size();
    if (n < 2 || samples.eve.size() != n)
        throw DomainError("asc_estimate: need matching sample vectors of length >= 2");
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i)
        values[i] = secrecy_rate_sample(samples.alice[i], samples.eve[i], power, noise_alice, noise_eve);
    const double mean = pairwise_sum(values) / static_cast<double>(n);
    for (double& v : values)
        v = (v - mean) * (v - mean);
    const double variance = pairwise_sum(values) / static_cast<double>(n - 1);
    return make_estimate(mean, std::sqrt(variance / static_cast<double>(n)), static_cast<long long>(n));
}

McEstimate sop_estimate(const PairedAmplitudes& samples, double power, double noise_alice, double noise_eve,
                        double secrecy_rate)
{
    check_noise(power, noise_alice, noise_eve);
    if (!(secrecy_rate >= 0.0))
        throw DomainError("sop_estimate: secrecy rate must be non-negative");
    const std::size_t n = samples.alice.size();
    if (n < 2 || samples.eve.size() != n)
        throw DomainError("sop_estimate: need matching sample vectors of length >= 2");
    std::size_t outages = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (secrecy_rate_sample(samples.alice[i], samples.eve[i], power, noise_alice, noise_eve) < secrecy_rate)
            ++outages;
    const double count = static_cast<double>(n);
    const double p = static_cast<double>(outages) / count;
    double se = std::sqrt(p * (1.0 - p) / count);
    if (outages == 0 || outages == n)
        se = std::sqrt(0.5 / count);
    return make_estimate(p, se, static_cast<long long>(n));
}

McEstimate mc_asc(const Covariance& alice, const Covariance& eve, double power, double noise_alice, double noise_eve,
                  const McSettings& settings)
{
    check_noise(power, noise_alice, noise_eve);
    return asc_estimate(draw_paired_amplitudes(alice, eve, settings), power, noise_alice, noise_eve);
}

McEstimate mc_sop(const Covariance& alice, const Covariance& eve, double power, double noise_alice, double noise_eve,
                  double secrecy_rate, const McSettings& settings)
{
    check_noise(power, noise_alice, noise_eve);
    return sop_estimate(draw_paired_amplitudes(alice, eve, settings), power, noise_alice, noise_eve, secrecy_rate);
}

}  // namespace fas
