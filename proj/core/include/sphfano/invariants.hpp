#pragma once

/**
 * @file invariants.hpp
 * @brief Picard group, Fano index, anticanonical degree and K-stability of an embedding.
 *
 * Every operation takes (data, P) with P accepted by check_reflexive and
 * throws NotReflexive otherwise.
 */

#include "sphfano/spherical.hpp"

#include <string>
#include <utility>
#include <vector>

namespace sphfano::invariants {

struct DivisorBasis {
    std::vector<Color> colors;
    std::vector<VecZ> g_stable;  // vertices in V that are not color points, in polytope order
};

struct PicardPresentation {
    MatZ relations;  // rows rho(D) for colors, then the G-stable vertices
    geometry::Snf snf;
    int free_rank = 0;
};

enum class KValue { Stable, SemistableNotStable, Unstable };

const char* kvalue_name(KValue v);

struct KVerdict {
    KValue value = KValue::Unstable;
    VecQ barycenter;
};

DivisorBasis divisor_basis(const CombinatorialData& data, const geometry::RationalPolytope& p);

/// Throws RelationRankDeficit if the relations have rank below r, TorsionInPicard if
/// some invariant factor exceeds 1.
PicardPresentation picard(const CombinatorialData& data, const geometry::RationalPolytope& p);
int picard_rank(const CombinatorialData& data, const geometry::RationalPolytope& p);
long fano_index(const CombinatorialData& data, const geometry::RationalPolytope& p);

/// dual(P) with the formal translation vector kappa.
std::pair<geometry::RationalPolytope, std::string> moment_polytope(const CombinatorialData& data,
                                                                   const geometry::RationalPolytope& p);

/// dim! times the integral of f over dual(P). Throws NonIntegerDegree.
long degree(const CombinatorialData& data, const geometry::RationalPolytope& p);

VecQ dh_barycenter(const CombinatorialData& data, const geometry::RationalPolytope& p);
KVerdict k_verdict(const CombinatorialData& data, const geometry::RationalPolytope& p);

/// Verdict from a barycenter and the spherical roots alone.
KValue classify(const std::vector<VecZ>& sigma, const VecQ& barycenter);

} // namespace sphfano::invariants
