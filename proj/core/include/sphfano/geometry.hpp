#pragma once

/**
 * @file geometry.hpp
 * @brief Exact polytopes of rank 1 and 2, polynomial integration, integer normal forms.
 */

#include "sphfano/rat.hpp"

#include <map>
#include <string>
#include <vector>

namespace sphfano::geometry {

/// Vertex representation. Rank 2: strict counterclockwise order starting at the
/// lexicographically smallest vertex. Rank 1: [low, high].
struct RationalPolytope {
    int rank = 0;
    std::vector<VecQ> vertices;

    friend bool operator==(const RationalPolytope&, const RationalPolytope&) = default;
};

std::string to_string(const RationalPolytope& p); // "(a,b);(c,d);..."
RationalPolytope parse_polytope(const std::string& text, int rank);

struct Facet {
    VecZ outward_normal;        // primitive
    Rat support;                // facet = {x : <n,x> = support}
    std::vector<int> incident;  // indices into vertices
};

/// Sparse polynomial in `nvars` variables with rational coefficients.
class Polynomial {
public:
    using Exponent = std::vector<int>;

    explicit Polynomial(int nvars = 0) : nvars_(nvars) {}
    static Polynomial constant(int nvars, const Rat& c);
    static Polynomial variable(int nvars, int i);
    static Polynomial affine(const Rat& c, const VecQ& a); // c + <a,x>

    int nvars() const { return nvars_; }
    const std::map<Exponent, Rat>& terms() const { return terms_; }
    void add_term(const Exponent& e, const Rat& c);
    int degree() const;
    Rat eval(const VecQ& x) const;

    /// f(x) with x_i replaced by the polynomial subs[i] (all in a common ring).
    Polynomial compose(const std::vector<Polynomial>& subs) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator*=(const Rat& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rat& c) { return a *= c; }
    Polynomial pow(int k) const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    int nvars_;
    std::map<Exponent, Rat> terms_;
};

std::string to_string(const Polynomial& f);

RationalPolytope convex_hull(const std::vector<VecQ>& points, int rank);
std::vector<Facet> facets(const RationalPolytope& p);
RationalPolytope dual(const RationalPolytope& p);
bool contains(const RationalPolytope& p, const VecQ& x, bool strict);
std::vector<VecZ> lattice_points(const RationalPolytope& p);
Rat integrate(const RationalPolytope& p, const Polynomial& f);
Rat area(const RationalPolytope& p);

/// Integral over the triangle with the given vertices (used for apex independence checks).
Rat integrate_triangle(const VecQ& a, const VecQ& b, const VecQ& c, const Polynomial& f);

/// Image of a polytope under an integer linear map, re-stored canonically.
RationalPolytope transform(const RationalPolytope& p, const MatZ& g);

/// Rank-2 cross product a.x*b.y - a.y*b.x.
Rat cross(const VecQ& a, const VecQ& b);

// ---- integer linear algebra ----

struct Snf {
    MatZ U, S, V; // U * A * V = S
};

Snf snf(const MatZ& a);
bool is_lattice_basis(const std::vector<VecZ>& vs);
VecZ primitive(const VecZ& v);
Int content(const VecZ& v);

/// Unimodular G (2x2) such that G * A is in Hermite normal form
/// (upper triangular, positive diagonal, 0 <= a01 < a11). A must be invertible.
MatZ hermite_left(const MatZ& a);

} // namespace sphfano::geometry
