// SPDX-License-Identifier: Apache-2.0
#include "fasvbcm/vbcm.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "fasvbcm/error.hpp"

namespace fas {

std::string_view to_string(RhoMode mode)
{
    return mode == RhoMode::least_squares ? "least_squares" : "as_printed";
}

RhoMode parse_rho_mode(std::string_view text)
{
    if (text == "least_squares")
        return RhoMode::least_squares;
    if (text == "as_printed")
        return RhoMode::as_printed;
    throw DomainError("unknown rho mode '" + std::string(text) + "' (expected least_squares or as_printed)");
}

double optimal_rho(double dominant, std::span<const double> tail, RhoMode mode)
{
    if (tail.empty())
        throw DomainError("optimal_rho: tail must be nonempty");
    const double members = static_cast<double>(tail.size());  // L - 1
    const double size = members + 1.0;
    const double tail_sum = std::accumulate(tail.begin(), tail.end(), 0.0);
    const double numerator = members * dominant - tail_sum;
    const double denominator = mode == RhoMode::least_squares ? size * members : 2.0 * members;
    return std::clamp(numerator / denominator, 0.0, 1.0);
}

double assignment_error(double dominant, std::span<const double> tail_with_candidate, double rho)
{
    const double members = static_cast<double>(tail_with_candidate.size());
    const double head = 1.0 + rho * members - dominant;
    double err = head * head;
    for (double lambda : tail_with_candidate) {
        const double d = lambda - 1.0 + rho;
        err += d * d;
    }
    return err;
}

Spectrum normalized(const Spectrum& spectrum)
{
    if (!(spectrum.mean_gain > 0.0))
        throw DomainError("spectrum mean_gain must be positive");
    Spectrum out = spectrum;
    for (double& v : out.eigenvalues)
        v /= spectrum.mean_gain;
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
    out.mean_gain = 1.0;
    return out;
}

std::vector<double> model_eigenvalues(const BlockPartition& partition)
{
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(partition.source_dim));
    for (const Block& b : partition.blocks) {
        if (b.size == 1) {
            values.push_back(1.0);
            continue;
        }
        values.push_back(1.0 + (b.size - 1) * b.rho);
        values.insert(values.end(), static_cast<std::size_t>(b.size - 1), 1.0 - b.rho);
    }
    std::sort(values.begin(), values.end(), std::greater<>());
    return values;
}

double spectral_distance(const Spectrum& a, const Spectrum& b)
{
    if (a.dim() != b.dim())
        throw DomainError("spectral_distance: dimension mismatch");
    std::vector<double> x = a.eigenvalues;
    std::vector<double> y = b.eigenvalues;
    std::sort(x.begin(), x.end(), std::greater<>());
    std::sort(y.begin(), y.end(), std::greater<>());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        d += (x[i] - y[i]) * (x[i] - y[i]);
    return d;
}

namespace {

void finish(BlockPartition& partition, const Spectrum& unit)
{
    partition.source_dim = static_cast<int>(unit.dim());
    partition.distance = spectral_distance(unit, Spectrum{model_eigenvalues(partition), 1.0});
}

}  // namespace

BlockPartition fit_partition(const Spectrum& spectrum, int num_blocks, RhoMode mode)
{
    const Spectrum unit = normalized(spectrum);
    const int n = static_cast<int>(unit.dim());
    if (num_blocks < 1 || num_blocks > n)
        throw DomainError("fit_partition: number of blocks must lie in [1, N]");

    BlockPartition partition;
    partition.mode = mode;
    partition.blocks.resize(static_cast<std::size_t>(num_blocks));
    for (int d = 0; d < num_blocks; ++d)
        partition.blocks[d].dominant = unit.eigenvalues[d];

    std::vector<double> candidate;
    for (int idx = num_blocks; idx < n; ++idx) {
        const double current = unit.eigenvalues[idx];
        int best_block = 0;
        double best_error = 0.0;
        double best_rho = 1.0;
        for (int d = 0; d < num_blocks; ++d) {
            const Block& b = partition.blocks[d];
            candidate.assign(b.tail.begin(), b.tail.end());
            candidate.push_back(current);
            const double rho = optimal_rho(b.dominant, candidate, mode);
            const double err = assignment_error(b.dominant, candidate, rho);
            ++partition.error_evaluations;
            if (d == 0 || err < best_error) {
                best_block = d;
                best_error = err;
                best_rho = rho;
            }
        }
        Block& chosen = partition.blocks[best_block];
        chosen.tail.push_back(current);
        chosen.rho = best_rho;
    }
    for (Block& b : partition.blocks)
        b.size = static_cast<int>(b.tail.size()) + 1;
    finish(partition, unit);
    return partition;
}

int auto_block_count(const Spectrum& spectrum, int max_blocks, RhoMode mode)
{
    const int n = static_cast<int>(spectrum.dim());
    if (max_blocks < 1 || max_blocks > n)
        throw DomainError("auto_block_count: maximum block count must lie in [1, N]");
    int best = 1;
    double best_distance = fit_partition(spectrum, 1, mode).distance;
    for (int d = 2; d <= max_blocks; ++d) {
        const double dist = fit_partition(spectrum, d, mode).distance;
        if (dist < best_distance - 1e-12 * std::max(1.0, best_distance)) {
            best = d;
            best_distance = dist;
        }
    }
    return best;
}

Covariance reconstruct_covariance(const BlockPartition& partition, double mean_gain)
{
    int n = 0;
    for (const Block& b : partition.blocks) {
        if (b.size < 1)
            throw DomainError("reconstruct_covariance: block size must be positive");
        n += b.size;
    }
    Covariance cov{Matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n)), mean_gain};
    std::size_t offset = 0;
    for (const Block& b : partition.blocks) {
        const auto len = static_cast<std::size_t>(b.size);
        for (std::size_t i = 0; i < len; ++i)
            for (std::size_t j = 0; j < len; ++j)
                cov.entries(offset + i, offset + j) = mean_gain * (i == j ? 1.0 : b.rho);
        offset += len;
    }
    return cov;
}

BlockPartition constant_correlation_partition(const Spectrum& spectrum, std::optional<double> fixed_rho)
{
    BlockPartition partition = fit_partition(spectrum, 1, RhoMode::least_squares);
    if (fixed_rho) {
        if (*fixed_rho < 0.0 || *fixed_rho > 1.0)
            throw DomainError("fixed correlation must lie in [0, 1]");
        partition.blocks.front().rho = *fixed_rho;
        finish(partition, normalized(spectrum));
    }
    return partition;
}

BlockPartition shared_rho_partition(const BlockPartition& partition, const Spectrum& spectrum,
                                    std::optional<double> fixed_rho)
{
    BlockPartition out = partition;
    double rho = 1.0;
    if (fixed_rho) {
        if (*fixed_rho < 0.0 || *fixed_rho > 1.0)
            throw DomainError("fixed correlation must lie in [0, 1]");
        rho = *fixed_rho;
    } else {
        double numerator = 0.0;
        double denominator = 0.0;
        for (const Block& b : partition.blocks) {
            const double members = b.size - 1.0;
            numerator += members * (b.dominant - 1.0);
            for (double lambda : b.tail)
                numerator += 1.0 - lambda;
            denominator += b.size * members;
        }
        if (denominator > 0.0)
            rho = std::clamp(numerator / denominator, 0.0, 1.0);
    }
    for (Block& b : out.blocks)
        b.rho = rho;
    finish(out, normalized(spectrum));
    return out;
}

namespace {

std::string shortest(double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

double to_number(const std::string& s)
{
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw DomainError("partition record: bad number '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    return out;
}

}  // namespace

void write_partition_record(std::ostream& out, const BlockPartition& partition)
{
    out << "D," << partition.block_count() << '\n';
    out << "mode," << to_string(partition.mode) << '\n';
    out << "distance," << shortest(partition.distance) << '\n';
    for (std::size_t d = 0; d < partition.blocks.size(); ++d) {
        const Block& b = partition.blocks[d];
        out << "block," << d + 1 << ',' << b.size << ',' << shortest(b.rho) << ',' << shortest(b.dominant) << '\n';
    }
}

BlockPartition read_partition_record(std::istream& in)
{
    BlockPartition partition;
    int declared = -1;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line.front() == '#')
            continue;
        const auto cells = split(line);
        const std::string& key = cells.front();
        if (key == "D" && cells.size() == 2) {
            declared = static_cast<int>(to_number(cells[1]));
        } else if (key == "mode" && cells.size() == 2) {
            partition.mode = parse_rho_mode(cells[1]);
        } else if (key == "distance" && cells.size() == 2) {
            partition.distance = to_number(cells[1]);
        } else if (key == "block" && cells.size() == 5) {
            Block b;
            b.size = static_cast<int>(to_number(cells[2]));
            b.rho = to_number(cells[3]);
            b.dominant = to_number(cells[4]);
            if (b.size < 1 || b.rho < 0.0 || b.rho > 1.0)
                throw DomainError("partition record: invalid block '" + line + "'");
            partition.blocks.push_back(std::move(b));
        } else {
            throw DomainError("partition record: unrecognised line '" + line + "'");
        }
    }
    if (declared != partition.block_count())
        throw DomainError("partition record: block count does not match D");
    for (const Block& b : partition.blocks)
        partition.source_dim += b.size;
    return partition;
}

}  // namespace fas
