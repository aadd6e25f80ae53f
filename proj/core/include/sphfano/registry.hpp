#pragma once

/**
 * @file registry.hpp
 * @brief Families of spherical homogeneous spaces of rank <= 2 and dimension <= 4.
 */

#include "sphfano/spherical.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sphfano::registry {

/// Named integer parameters, in the family's declared order.
using Params = std::vector<std::pair<std::string, long>>;

std::string format_params(const Params& p);       // "a1=1;a2=0", "" when empty
Params parse_params(const std::string& text);      // accepts ',' or ';' separators

struct FamilySpec {
    std::string id;
    int dim = 0;
    int rank = 0;
    std::vector<std::string> param_names;
    std::string domain;               // human-readable predicate
    std::vector<Params> bound;        // every admissible parameter value, in identifier order
    std::vector<Params> probes;       // first values past the bound; enumerate to nothing
    std::string product_note;
    std::string bound_reason;
};

/// All families, deterministic order. Pass 0 to skip a filter.
std::vector<FamilySpec> families(int dim = 0, int rank = -1);

/// Throws UnknownFamily if no family has this id.
bool in_domain(const std::string& id, const Params& params);

/// Throws UnknownFamily, ParamsOutOfDomain.
CombinatorialData build(const std::string& id, const Params& params);
SymmetryGroup symmetry_group(const std::string& id, const Params& params);

struct Rank0Entry {
    std::string group;
    std::string space;
    int dim = 0;
    int pic = 0;
    int degree = 0;
    int fano_index = 0;
};

const std::vector<Rank0Entry>& rank0_entries();

/// The full registry as a JSON document (the shipped families.json).
std::string families_json();

} // namespace sphfano::registry
