// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fasvbcm/channel.hpp"

namespace fas {

/// How the per-block correlation is solved for a candidate block.
enum class RhoMode {
    least_squares,  // exact minimiser of the block assignment error
    as_printed,     // historical closed form with a 2(L-1) denominator
};

std::string_view to_string(RhoMode mode);
RhoMode parse_rho_mode(std::string_view text);

/// One constant-correlation block. Eigenvalues are in correlation units (divided by eta).
struct Block {
    int size = 1;
    double rho = 1.0;
    double dominant = 1.0;
    std::vector<double> tail;
};

struct BlockPartition {
    std::vector<Block> blocks;
    int source_dim = 0;
    RhoMode mode = RhoMode::least_squares;
    /// Squared distance between the sorted source spectrum and the block model's spectrum.
    double distance = 0.0;
    /// Calls to assignment_error made while fitting.
    long long error_evaluations = 0;

    [[nodiscard]] int block_count() const noexcept { return static_cast<int>(blocks.size()); }
};

double optimal_rho(double dominant, std::span<const double> tail, RhoMode mode = RhoMode::least_squares);

double assignment_error(double dominant, std::span<const double> tail_with_candidate, double rho);

/// Greedy block fit: the D largest eigenvalues seed the blocks, every remaining
/// eigenvalue (descending) joins the block with the smallest assignment error.
BlockPartition fit_partition(const Spectrum& spectrum, int num_blocks, RhoMode mode = RhoMode::least_squares);

/// The D in [1, max_blocks] whose fit has the smallest distance (ties -> smaller D).
int auto_block_count(const Spectrum& spectrum, int max_blocks, RhoMode mode = RhoMode::least_squares);

/// Eigenvalues of the block-diagonal model in correlation units, sorted descending.
std::vector<double> model_eigenvalues(const BlockPartition& partition);

Covariance reconstruct_covariance(const BlockPartition& partition, double mean_gain);

double spectral_distance(const Spectrum& a, const Spectrum& b);

/// Spectrum scaled to correlation units.
Spectrum normalized(const Spectrum& spectrum);

/// Uniform constant-correlation baseline: one block over all ports. The correlation is the
/// least-squares fit unless fixed_rho is given.
BlockPartition constant_correlation_partition(const Spectrum& spectrum, std::optional<double> fixed_rho = {});

/// Keeps the block sizes and eigenvalue assignment of `partition` but shares one
/// correlation across all blocks (least-squares over the summed block errors unless fixed).
BlockPartition shared_rho_partition(const BlockPartition& partition, const Spectrum& spectrum,
                                    std::optional<double> fixed_rho = {});

/// Text record: "D,<D>", "mode,<mode>", "distance,<d>", then "block,<index>,<L>,<rho>,<lambda>" per block.
void write_partition_record(std::ostream& out, const BlockPartition& partition);
BlockPartition read_partition_record(std::istream& in);

}  // namespace fas
