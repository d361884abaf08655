// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <string_view>

#include "fasvbcm/stats.hpp"

namespace fas {

/// Which block model stands in for a user's Jakes correlation.
enum class ModelKind {
    vbcm,        // fitted partition, one rho per block
    constant,    // one block over all ports
    shared_rho,  // fitted partition sizes, one rho refit across all blocks
};

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view text);

struct ModelPolicy {
    ModelKind kind = ModelKind::vbcm;
    RhoMode mode = RhoMode::least_squares;
    int blocks = 0;                     // 0 selects D automatically
    int max_blocks = 0;                 // automatic search bound; 0 means N
    std::optional<double> fixed_rho;    // baselines only
    OuterIntegral outer;

    void validate() const;
};

struct UserModel {
    FasGeometry geometry;
    Covariance covariance;
    Spectrum spectrum;
    BlockPartition partition;
    std::shared_ptr<const AmplitudeDistribution> distribution;
};

/// Jakes covariance, its spectrum, the block fit chosen by the policy and the resulting
/// selected-port amplitude distribution.
UserModel build_user_model(const FasGeometry& geometry, const ModelPolicy& policy = {});

}  // namespace fas
