#pragma once

/**
 * @file enumeration.hpp
 * @brief Exhaustive search for locally factorial G/H-reflexive polytopes and
 *        canonical forms under a family's symmetry group.
 */

#include "sphfano/spherical.hpp"

#include <vector>

namespace sphfano::enumeration {

struct EnumConfig {
    int box_bound = 5;
    int max_vertices = 8;

    /// Throws ParamsOutOfDomain unless box_bound >= 4 and max_vertices >= 6.
    void validate() const;

    /// Defaults, with box_bound taken from SPHFANO_BOX when set.
    static EnumConfig from_env();
};

struct CanonicalPolytope {
    geometry::RationalPolytope polytope;
    int stabilizer_size = 1;

    friend bool operator==(const CanonicalPolytope&, const CanonicalPolytope&) = default;
};

/// Throws NotReflexive if P fails check_reflexive.
CanonicalPolytope canonical_form(const CombinatorialData& data, const geometry::RationalPolytope& p);

/// Same as canonical_form but skips the reflexivity check.
CanonicalPolytope normal_form(const CombinatorialData& data, const geometry::RationalPolytope& p);

std::vector<CanonicalPolytope> enumerate_rank1(const CombinatorialData& data, const EnumConfig& cfg = {});
std::vector<CanonicalPolytope> enumerate_rank2(const CombinatorialData& data, const EnumConfig& cfg = {});

/// Dispatches on data.rank.
std::vector<CanonicalPolytope> enumerate(const CombinatorialData& data, const EnumConfig& cfg = {});

/// Independent subset search over all points of [-box,box]^2 and the color points.
/// Small boxes only; no bound certification.
std::vector<CanonicalPolytope> brute_force_oracle(const CombinatorialData& data, int box, int max_vertices);

} // namespace sphfano::enumeration
