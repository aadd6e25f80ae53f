#pragma once

/**
 * @file spherical.hpp
 * @brief Combinatorial data of a spherical homogeneous space and the
 *        locally factorial G/H-reflexive polytope checker.
 */

#include "sphfano/geometry.hpp"

#include <string>
#include <vector>

namespace sphfano {

struct Color {
    std::string label;              // "clubs", "hearts", "diamonds", "spades"
    VecZ rho;
    Int m = 1;
    std::vector<std::string> zeta;  // simple-root labels

    VecQ point() const;             // rho / m
};

/// prefactor * prod (c + <a,x>)^mult
struct DHPolynomial {
    struct Factor {
        Rat c;
        VecZ a;
        int mult = 1;
    };
    Rat prefactor = Rat(1);
    std::vector<Factor> factors;

    int degree() const;
    Rat at_origin() const;
    geometry::Polynomial expand(int rank) const;
};

std::string to_string(const DHPolynomial& f);

enum class GroupKind { Trivial, FiniteList, FullUnimodular, ShearClass };

const char* kind_name(GroupKind k);

/// A lattice automorphism g of N together with the induced color permutation:
/// color i is sent to color perm[i], and rho(perm[i]) = g * rho(i).
struct GroupElement {
    MatZ g;
    std::vector<int> perm;
};

struct SymmetryGroup {
    GroupKind kind = GroupKind::Trivial;
    std::vector<GroupElement> elements;  // FiniteList only, identity included
    VecZ fixed;                          // ShearClass: fixed vector of N
    bool reflection = false;             // ShearClass: allow [[1,k],[0,-1]]
    std::string source = "stated";       // or "count-calibrated"

    /// Generators as matrices on N. Empty for the trivial group.
    std::vector<MatZ> generators(int rank) const;
};

struct CombinatorialData {
    int rank = 0;
    int dim = 0;
    std::vector<VecZ> sigma;
    std::vector<Color> colors;
    DHPolynomial f;
    std::string kappa;
    std::vector<std::string> basis;
    std::string group;
    std::string type;
    SymmetryGroup symmetry;
};

/// Data in the basis changed by g: rho -> g rho, sigma -> g^{-T} sigma, f -> f o g^T.
/// The symmetry group is dropped (set to trivial).
CombinatorialData transform(const CombinatorialData& d, const MatZ& g);

enum class ConePosition { Interior, Boundary, Outside };

const char* position_name(ConePosition p);

ConePosition valuation_cone_position(const CombinatorialData& d, const VecQ& x);

std::vector<VecQ> color_points(const CombinatorialData& d);

/// True iff the cone over conv(pts) meets the interior of the valuation cone.
/// pts has one point (rank 1) or the two endpoints of an edge (rank 2).
bool cone_meets_interior(const CombinatorialData& d, const std::vector<VecQ>& pts);

struct Verdict {
    struct Violation {
        std::string condition;  // C1, C2, C3, C4a, C4b
        std::string detail;
    };
    bool ok = true;
    std::vector<Violation> violations;
};

Verdict check_reflexive(const CombinatorialData& d, const geometry::RationalPolytope& p);

std::string to_json(const CombinatorialData& d);
CombinatorialData data_from_json(const std::string& text);

} // namespace sphfano
