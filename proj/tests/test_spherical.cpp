#include "doctest.h"
#include "oracles.hpp"

#include "sphfano/enumeration.hpp"
#include "sphfano/error.hpp"
#include "sphfano/registry.hpp"
#include "sphfano/spherical.hpp"

#include <random>

using namespace sphfano;
using geometry::parse_polytope;
using registry::build;

namespace {

CombinatorialData with_sigma(std::vector<VecZ> sigma, int rank) {
    CombinatorialData d;
    d.rank = rank;
    d.dim = rank;
    d.sigma = std::move(sigma);
    return d;
}

bool has_violation(const Verdict& v, const std::string& c) {
    for (const auto& x : v.violations)
        if (x.condition == c) return true;
    return false;
}

std::vector<MatZ> small_unimodular() {
    std::vector<MatZ> out;
    for (long a = -2; a <= 2; ++a)
        for (long b = -2; b <= 2; ++b)
            for (long c = -2; c <= 2; ++c)
                for (long d = -2; d <= 2; ++d)
                    if (a * d - b * c == 1 || a * d - b * c == -1) out.push_back(MatZ{{a, b}, {c, d}});
    return out;
}

} // namespace

TEST_CASE("valuation_cone_position") {
    auto d = with_sigma({{1, 0}}, 2);
    CHECK(valuation_cone_position(d, {Rat(-1), Rat(5)}) == ConePosition::Interior);
    CHECK(valuation_cone_position(d, {Rat(0), Rat(5)}) == ConePosition::Boundary);
    CHECK(valuation_cone_position(d, {Rat(1), Rat(0)}) == ConePosition::Outside);

    auto toric = with_sigma({}, 2);
    CHECK(valuation_cone_position(toric, {Rat(7), Rat(-3)}) == ConePosition::Interior);

    auto borel = with_sigma({{1, 0}, {0, 1}}, 2);
    CHECK(valuation_cone_position(borel, {Rat(0), Rat(-1)}) == ConePosition::Boundary);
    CHECK(valuation_cone_position(borel, {Rat(-1), Rat(-1)}) == ConePosition::Interior);
}

TEST_CASE("color_points") {
    CHECK(color_points(build("SL2sq.diagSL2", {})) == std::vector<VecQ>{{Rat::parse("1/2")}});
    CHECK(color_points(build("Sp4.Nsym", {})) == std::vector<VecQ>{{Rat::parse("2/3")}});
    CHECK(color_points(build("toric", {{"n", 2}})).empty());
}

TEST_CASE("check_reflexive examples") {
    auto diag = build("SL2sq.diagSL2", {});
    CHECK(check_reflexive(diag, parse_polytope("(-1);(1/2)", 1)).ok);

    auto v = check_reflexive(diag, parse_polytope("(-1);(1)", 1));
    CHECK_FALSE(v.ok);
    CHECK(has_violation(v, "C3"));

    auto horo2 = build("SL2xGm.horo1", {{"a1", 2}});
    auto w = check_reflexive(horo2, parse_polytope("(-1);(1)", 1));
    CHECK_FALSE(w.ok);
    CHECK(has_violation(w, "C4b"));

    auto toric = build("toric", {{"n", 2}});
    CHECK(check_reflexive(toric, parse_polytope("(1,0);(0,1);(-1,0);(0,-1)", 2)).ok);

    SUBCASE("C1 origin on the boundary") {
        auto r = check_reflexive(toric, parse_polytope("(0,0);(1,0);(0,1)", 2));
        CHECK(has_violation(r, "C1"));
    }
    SUBCASE("C2 color outside") {
        auto r = check_reflexive(diag, parse_polytope("(-1);(1/3)", 1));
        CHECK(has_violation(r, "C2"));
    }
    SUBCASE("rank mismatch") { CHECK_THROWS_AS(check_reflexive(toric, parse_polytope("(-1);(1)", 1)), Error); }
}

TEST_CASE("toric acceptance is the smooth Fano condition") {
    auto toric = build("toric", {{"n", 2}});
    std::mt19937 rng(17);
    int accepted = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        auto p = geometry::convex_hull(oracle::random_cloud(rng, 2, 3 + trial % 5), 2);
        bool ok = check_reflexive(toric, p).ok;
        CHECK(ok == oracle::smooth_fano(p.vertices));
        accepted += ok;
    }
    CHECK(accepted > 0);
}

TEST_CASE("type T with a1 = 0 accepts exactly the described smooth Fano polygons") {
    auto t0 = build("SL2xGm.T", {{"a1", 0}});
    auto toric = build("toric", {{"n", 2}});
    auto classes = enumeration::enumerate(toric);
    REQUIRE(classes.size() == 5);
    int accepted = 0, total = 0;
    VecQ e1{Rat(1), Rat(0)};
    for (const auto& c : classes)
        for (const auto& g : small_unimodular()) {
            auto p = geometry::transform(c.polytope, g);
            ++total;
            bool has_e1 = std::find(p.vertices.begin(), p.vertices.end(), e1) != p.vertices.end();
            bool others_left = true;
            for (const auto& v : p.vertices)
                if (v != e1 && v[0].sign() > 0) others_left = false;
            bool facets_right = true;
            for (const auto& h : oracle::halfplanes(p.vertices)) {
                bool through_e1 = h.a * e1[0] + h.b * e1[1] == h.c;
                if (!through_e1) continue;
                for (const auto& v : p.vertices)
                    if (h.a * v[0] + h.b * v[1] == h.c && v[0].sign() < 0) facets_right = false;
            }
            bool expect = has_e1 && others_left && facets_right;
            bool got = check_reflexive(t0, p).ok;
            CHECK(got == expect);
            accepted += got;
        }
    CHECK(total > 100);
    CHECK(accepted > 0);
}

TEST_CASE("type N product acceptance: primitive vertex multiples form a basis per facet") {
    auto d = build("SL2xGm.N.product", {});
    for (const auto& c : enumeration::enumerate(d)) {
        const auto& v = c.polytope.vertices;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto& a = v[i];
            const auto& b = v[(i + 1) % v.size()];
            auto prim = [](const VecQ& x) {
                Int l = lcm(x[0].den(), x[1].den());
                return geometry::primitive({(x[0] * Rat(l)).num(), (x[1] * Rat(l)).num()});
            };
            CHECK(geometry::is_lattice_basis({prim(a), prim(b)}));
        }
    }
}

TEST_CASE("check_reflexive is invariant under unimodular changes of basis") {
    std::vector<std::pair<std::string, registry::Params>> cases = {
        {"SL2xGm.T", {{"a1", 1}}}, {"SL2xGm.horo", {{"a1", 1}}}, {"SL2sq.diagB", {}}, {"SL2sq.GL2", {}}};
    std::vector<MatZ> maps = {MatZ{{1, 1}, {0, 1}}, MatZ{{0, -1}, {1, 0}}, MatZ{{2, 1}, {1, 1}}};
    std::mt19937 rng(23);
    for (const auto& [id, params] : cases) {
        auto d = build(id, params);
        std::vector<geometry::RationalPolytope> polys;
        for (const auto& c : enumeration::enumerate(d)) polys.push_back(c.polytope);
        for (int i = 0; i < 30; ++i) {
            auto cloud = oracle::random_cloud(rng, 2, 5);
            for (const auto& pt : color_points(d)) cloud.push_back(pt);
            polys.push_back(geometry::convex_hull(cloud, 2));
        }
        for (const auto& g : maps) {
            auto dg = transform(d, g);
            for (const auto& p : polys) CHECK(check_reflexive(d, p).ok == check_reflexive(dg, geometry::transform(p, g)).ok);
        }
    }
}

TEST_CASE("cone_meets_interior") {
    auto d = with_sigma({{1, 0}}, 2);
    CHECK(cone_meets_interior(d, {{Rat(0), Rat(1)}, {Rat(-1), Rat(0)}}));
    CHECK_FALSE(cone_meets_interior(d, {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}}));
    // boundary ray alone
    CHECK_FALSE(cone_meets_interior(d, {{Rat(0), Rat(1)}, {Rat(0), Rat(2)}}));
    CHECK_FALSE(cone_meets_interior(d, {{Rat(1), Rat(1)}, {Rat(0), Rat(-1)}}));
    // two boundary rays with the open quadrant between them
    auto borel = with_sigma({{1, 0}, {0, 1}}, 2);
    CHECK(cone_meets_interior(borel, {{Rat(0), Rat(-1)}, {Rat(-1), Rat(0)}}));
    CHECK_FALSE(cone_meets_interior(borel, {{Rat(0), Rat(-1)}, {Rat(1), Rat(-1)}}));
    auto r1 = with_sigma({{1}}, 1);
    CHECK(cone_meets_interior(r1, {{Rat(-1)}}));
    CHECK_FALSE(cone_meets_interior(r1, {{Rat(1)}}));
}

TEST_CASE("CombinatorialData JSON round trip") {
    for (const auto& spec : registry::families()) {
        if (spec.rank == 0) continue;
        for (const auto& p : spec.bound) {
            auto d = build(spec.id, p);
            auto text = to_json(d);
            auto back = data_from_json(text);
            CHECK(to_json(back) == text);
            CHECK(back.rank == d.rank);
            CHECK(back.sigma == d.sigma);
        }
    }
}

TEST_CASE("DHPolynomial") {
    auto d = build("Sp4.Nsym", {});
    CHECK(d.f.degree() == 3);
    CHECK(d.f.at_origin() == Rat(9));
    auto f = d.f.expand(1);
    CHECK(f.eval({Rat(1)}) == Rat(125) / Rat(3));
}
