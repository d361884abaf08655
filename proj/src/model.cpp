// SPDX-License-Identifier: Apache-2.0
#include "fasvbcm/model.hpp"

#include <string>

#include "fasvbcm/error.hpp"

namespace fas {

std::string_view to_string(ModelKind kind)
{
    switch (kind) {
    case ModelKind::vbcm: return "vbcm";
    case ModelKind::constant: return "constant";
    case ModelKind::shared_rho: return "shared_rho";
    }
    return "vbcm";
}

ModelKind parse_model_kind(std::string_view text)
{
    if (text == "vbcm")
        return ModelKind::vbcm;
    if (text == "constant")
        return ModelKind::constant;
    if (text == "shared_rho")
        return ModelKind::shared_rho;
    throw DomainError("unknown model '" + std::string(text) + "' (expected vbcm, constant or shared_rho)");
}

void ModelPolicy::validate() const
{
    if (blocks < 0 || max_blocks < 0)
        throw DomainError("block counts must be non-negative");
    if (fixed_rho && (*fixed_rho < 0.0 || *fixed_rho > 1.0))
        throw DomainError("fixed correlation must lie in [0, 1]");
    outer.validate();
}

UserModel build_user_model(const FasGeometry& geometry, const ModelPolicy& policy)
{
    geometry.validate();
    policy.validate();
    UserModel model;
    model.geometry = geometry;
    model.covariance = build_covariance(geometry);
    model.spectrum = eigen_spectrum(model.covariance);

    const int n = geometry.num_ports;
    if (policy.kind == ModelKind::constant) {
        model.partition = constant_correlation_partition(model.spectrum, policy.fixed_rho);
    } else {
        if (policy.blocks > n)
            throw DomainError("block count " + std::to_string(policy.blocks) + " exceeds the port count");
        int d = policy.blocks;
        if (d == 0) {
            const int bound = policy.max_blocks == 0 ? n : std::min(policy.max_blocks, n);
            d = auto_block_count(model.spectrum, bound, policy.mode);
        }
        model.partition = fit_partition(model.spectrum, d, policy.mode);
        if (policy.kind == ModelKind::shared_rho)
            model.partition = shared_rho_partition(model.partition, model.spectrum, policy.fixed_rho);
    }
    model.distribution =
        std::make_shared<const AmplitudeDistribution>(model.partition, geometry.mean_gain, policy.outer);
    return model;
}

}  // namespace fas
