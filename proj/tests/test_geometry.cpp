#include "doctest.h"
#include "oracles.hpp"

#include "sphfano/error.hpp"
#include "sphfano/geometry.hpp"

#include <random>

using namespace sphfano;
using namespace sphfano::geometry;

namespace {

VecQ q(long x) { return {Rat(x)}; }
VecQ q(long x, long y) { return {Rat(x), Rat(y)}; }

RationalPolytope square() { return convex_hull({q(1, 0), q(0, 1), q(-1, 0), q(0, -1)}, 2); }
RationalPolytope hexagon() { return convex_hull({q(0, 1), q(-1, 1), q(-1, 0), q(0, -1), q(1, -1), q(1, 0)}, 2); }

} // namespace

TEST_CASE("Rat text format and normalization") {
    CHECK(Rat::parse("6/-4").str() == "-3/2");
    CHECK(Rat::parse("4/2").str() == "2");
    CHECK(Rat::parse("-0/7").str() == "0");
    CHECK(Rat::parse("1/2").den() == 2);
    CHECK_THROWS_AS(Rat::parse("1/0"), Error);
    CHECK_THROWS_AS(Rat::parse("abc"), Error);
    CHECK(to_string(parse_vec("(1/2,-3)")) == "(1/2,-3)");
    CHECK(Rat::parse("7/3").floor() == 2);
    CHECK(Rat::parse("-7/3").ceil() == -2);
}

TEST_CASE("convex_hull drops interior points and stores ccw from the lexmin vertex") {
    auto t = convex_hull({q(0, 1), q(1, 0), q(-1, -1), q(0, 0)}, 2);
    CHECK(to_string(t) == "(-1,-1);(1,0);(0,1)");
    auto s = convex_hull({VecQ{Rat(-1)}, VecQ{Rat::parse("1/2")}, VecQ{Rat(0)}}, 1);
    CHECK(to_string(s) == "(-1);(1/2)");
    CHECK_THROWS_AS(convex_hull({q(0, 0), q(1, 1), q(2, 2)}, 2), Error);
    CHECK_THROWS_AS(convex_hull({q(3), q(3)}, 1), Error);
}

TEST_CASE("convex_hull agrees with the all-triangles extremality oracle") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<VecQ> pts;
        for (int i = 0; i < 50; ++i) pts.push_back(q(c(rng), c(rng)));
        auto hull = convex_hull(pts, 2);
        std::set<VecQ> got(hull.vertices.begin(), hull.vertices.end());
        CHECK(got == oracle::extreme_points(pts));
        for (std::size_t i = 0; i < hull.vertices.size(); ++i) {
            const auto& a = hull.vertices[i];
            const auto& b = hull.vertices[(i + 1) % hull.vertices.size()];
            const auto& d = hull.vertices[(i + 2) % hull.vertices.size()];
            CHECK(oracle::cross3(a, b, d).sign() > 0);
        }
        CHECK(lex_less(hull.vertices[0], hull.vertices[1]));
        CHECK(convex_hull(hull.vertices, 2) == hull);
    }
}

TEST_CASE("facets") {
    SUBCASE("square") {
        auto fs = facets(square());
        REQUIRE(fs.size() == 4);
        std::set<VecZ> normals;
        for (const auto& f : fs) {
            normals.insert(f.outward_normal);
            CHECK(f.support == Rat(1));
            CHECK(f.incident.size() == 2);
        }
        CHECK(normals == std::set<VecZ>{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
    }
    SUBCASE("segment") {
        auto fs = facets(parse_polytope("(-1);(1/2)", 1));
        REQUIRE(fs.size() == 2);
        CHECK(fs[0].outward_normal == VecZ{-1});
        CHECK(fs[0].support == Rat(1));
        CHECK(fs[1].outward_normal == VecZ{1});
        CHECK(fs[1].support == Rat::parse("1/2"));
    }
    SUBCASE("hexagon against half-plane oracle") {
        auto h = hexagon();
        auto fs = facets(h);
        CHECK(fs.size() == 6);
        std::set<oracle::HalfPlane> got;
        for (const auto& f : fs) {
            CHECK(f.support == Rat(1));
            got.insert({Rat(f.outward_normal[0]), Rat(f.outward_normal[1]), f.support});
        }
        CHECK(got == oracle::halfplanes(h.vertices));
    }
}

TEST_CASE("dual") {
    CHECK(to_string(dual(parse_polytope("(-1);(1/2)", 1))) == "(-2);(1)");
    CHECK(dual(square()) == convex_hull({q(1, 1), q(-1, 1), q(-1, -1), q(1, -1)}, 2));
    CHECK(dual(hexagon()) == convex_hull({q(1, 0), q(1, 1), q(0, 1), q(-1, 0), q(-1, -1), q(0, -1)}, 2));
    CHECK_THROWS_AS(dual(convex_hull({q(0, 0), q(1, 0), q(0, 1)}, 2)), Error);
}

TEST_CASE("dual vertices are -n/c of the oracle half-planes") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        auto cloud = oracle::random_cloud(rng, 4, 6);
        auto p = convex_hull(cloud, 2);
        std::vector<VecQ> expect;
        for (const auto& h : oracle::halfplanes(p.vertices)) expect.push_back({-h.a / h.c, -h.b / h.c});
        CHECK(dual(p) == convex_hull(expect, 2));
    }
}

TEST_CASE("dual is an involution on random lattice polygons") {
    std::mt19937 rng(2024);
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        auto p = convex_hull(oracle::random_cloud(rng, 4, 3 + trial % 6), 2);
        CHECK(dual(dual(p)) == p);
        ++checked;
    }
    CHECK(checked == 1000);
}

TEST_CASE("contains") {
    auto seg = parse_polytope("(-1);(1/2)", 1);
    CHECK(contains(seg, q(0), true));
    CHECK_FALSE(contains(seg, VecQ{Rat::parse("1/2")}, true));
    CHECK(contains(seg, VecQ{Rat::parse("1/2")}, false));
    CHECK_FALSE(contains(square(), q(1, 0), true));
    CHECK(contains(square(), q(1, 0), false));
    // (1/2,1/2) sits on the edge x + y = 1
    CHECK_FALSE(contains(hexagon(), VecQ{Rat::parse("1/2"), Rat::parse("1/2")}, true));
    CHECK(contains(hexagon(), VecQ{Rat::parse("1/2"), Rat::parse("1/2")}, false));
    CHECK(contains(hexagon(), VecQ{Rat::parse("1/2"), Rat::parse("1/3")}, true));
    CHECK_FALSE(contains(hexagon(), q(1, 1), false));
}

TEST_CASE("lattice_points") {
    CHECK(lattice_points(parse_polytope("(-1);(1)", 1)) == std::vector<VecZ>{{-1}, {0}, {1}});
    CHECK(lattice_points(parse_polytope("(-1);(1/2)", 1)) == std::vector<VecZ>{{-1}, {0}});

    auto tri = convex_hull({q(1, -1), q(1, 1), q(-1, 0)}, 2);
    auto got = lattice_points(tri);
    std::set<VecZ> expect;
    auto hp = oracle::halfplanes(tri.vertices);
    for (long x = -3; x <= 3; ++x)
        for (long y = -3; y <= 3; ++y) {
            bool in = true;
            for (const auto& h : hp)
                if (h.a * Rat(x) + h.b * Rat(y) > h.c) in = false;
            if (in) expect.insert({x, y});
        }
    CHECK(std::set<VecZ>(got.begin(), got.end()) == expect);
    CHECK(expect == std::set<VecZ>{{1, -1}, {1, 0}, {1, 1}, {0, 0}, {-1, 0}});
}

TEST_CASE("integrate") {
    auto one1 = Polynomial::constant(1, Rat(1));
    CHECK(integrate(parse_polytope("(-1);(1)", 1), one1) == Rat(2));

    auto f = Polynomial::affine(Rat(2), {Rat(1)}).pow(2);
    CHECK(integrate(parse_polytope("(-2);(1)", 1), f) ==
          oracle::integrate_poly_1d(oracle::expand_1d({{{Rat(2), Rat(1)}, 2}}), Rat(-2), Rat(1)));
    CHECK(integrate(parse_polytope("(-2);(1)", 1), f) == Rat(9));

    auto sq = convex_hull({q(1, 1), q(-1, 1), q(-1, -1), q(1, -1)}, 2);
    auto g = Polynomial::affine(Rat(2), {Rat(2), Rat(0)});
    // separable: 2 * area + 2 * integral of x, the latter zero by symmetry
    CHECK(integrate(sq, g) == Rat(2) * area(sq) + Rat(0));
    CHECK(integrate(sq, g) == Rat(8));
}

TEST_CASE("integration is independent of the triangulation apex") {
    std::mt19937 rng(5);
    auto f = Polynomial::affine(Rat(3), {Rat(1), Rat(-2)}).pow(3) + Polynomial::variable(2, 0);
    for (int trial = 0; trial < 50; ++trial) {
        auto p = convex_hull(oracle::random_cloud(rng, 3, 7), 2);
        const auto& v = p.vertices;
        for (std::size_t apex = 0; apex < v.size(); ++apex) {
            Rat s;
            for (std::size_t i = 1; i + 1 < v.size(); ++i)
                s += integrate_triangle(v[apex], v[(apex + i) % v.size()], v[(apex + i + 1) % v.size()], f);
            CHECK(s == integrate(p, f));
        }
    }
}

TEST_CASE("unimodular equivariance of integration and duality") {
    std::mt19937 rng(9);
    std::vector<MatZ> maps = {MatZ{{1, 1}, {0, 1}}, MatZ{{0, 1}, {1, 0}}, MatZ{{2, 1}, {1, 1}}, MatZ{{-1, 3}, {0, 1}}};
    auto f = Polynomial::affine(Rat(2), {Rat(1), Rat(1)}).pow(2);
    for (int trial = 0; trial < 30; ++trial) {
        auto p = convex_hull(oracle::random_cloud(rng, 3, 6), 2);
        for (const auto& t : maps) {
            // f o T
            std::vector<Polynomial> subs;
            for (int i = 0; i < 2; ++i) {
                VecQ row{Rat(t(i, 0)), Rat(t(i, 1))};
                subs.push_back(Polynomial::affine(Rat(0), row));
            }
            CHECK(integrate(transform(p, t), f) == integrate(p, f.compose(subs)));
            CHECK(dual(transform(p, t)) == transform(dual(p), inverse_unimodular(t).transpose()));
        }
    }
}

TEST_CASE("snf") {
    auto check = [](const MatZ& a) {
        auto s = snf(a);
        CHECK(s.U * a * s.V == s.S);
        CHECK(oracle::det(s.U).abs() == Rat(1));
        CHECK(oracle::det(s.V).abs() == Rat(1));
        return s.S;
    };
    CHECK(check(MatZ::identity(2)) == MatZ::identity(2));
    CHECK(check(MatZ{{2, 0}, {0, 2}}) == MatZ{{2, 0}, {0, 2}});
    // first invariant factor is the gcd of the entries, the product is |det|
    auto s = check(MatZ{{2, 4}, {6, 8}});
    CHECK(s(0, 0) == 2);
    CHECK(s(0, 0) * s(1, 1) == 8);
    CHECK(s(0, 1) == 0);
    CHECK(s(1, 0) == 0);

    std::mt19937 rng(3);
    std::uniform_int_distribution<int> c(-6, 6);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t rows = 2 + trial % 4;
        MatZ a(rows, 2);
        for (auto& x : a.a) x = c(rng);
        auto sm = check(a);
        for (std::size_t i = 0; i + 1 < 2 && i + 1 < rows; ++i)
            if (sm(i + 1, i + 1) != 0) CHECK(sm(i + 1, i + 1) % sm(i, i) == 0);
        for (std::size_t i = 0; i < 2; ++i) CHECK(sm(i, i) >= 0);
        if (rows == 2) CHECK(abs(det(a)) == sm(0, 0) * sm(1, 1));
    }
}

TEST_CASE("is_lattice_basis, primitive, hermite_left") {
    CHECK(is_lattice_basis({{1, 0}, {0, 1}}));
    CHECK_FALSE(is_lattice_basis({{2, 0}, {0, 1}}));
    CHECK(is_lattice_basis({{1, 1}, {1, 2}}));
    CHECK_FALSE(is_lattice_basis({{1, 0}}));
    CHECK(is_lattice_basis({{-1}}));

    CHECK(primitive({2, 0}) == VecZ{1, 0});
    CHECK(primitive({-4, -6}) == VecZ{-2, -3});
    CHECK(primitive({3, 5}) == VecZ{3, 5});
    CHECK_THROWS_AS(primitive({0, 0}), Error);

    MatZ a{{3, 1}, {5, 2}};
    auto g = hermite_left(a);
    auto h = g * a;
    CHECK(abs(det(g)) == 1);
    CHECK(h(1, 0) == 0);
    CHECK(h(0, 0) > 0);
    CHECK(h(1, 1) > 0);
    CHECK(h(0, 1) >= 0);
    CHECK(h(0, 1) < h(1, 1));
}

TEST_CASE("polytope text round trip") {
    auto p = parse_polytope("(1/2,0);(0,1);(-1,-2);(0,-1)", 2);
    CHECK(parse_polytope(to_string(p), 2) == p);
    CHECK_THROWS_AS(parse_polytope("(1,0);(0,1", 2), Error);
    CHECK_THROWS_AS(parse_polytope("(1,0,2);(0,1);(-1,-1)", 2), Error);
}
