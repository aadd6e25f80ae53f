#include "doctest.h"
#include "oracles.hpp"

#include "sphfano/catalog.hpp"
#include "sphfano/error.hpp"
#include "sphfano/invariants.hpp"
#include "sphfano/registry.hpp"

#include <map>

using namespace sphfano;
using namespace sphfano::invariants;
using geometry::parse_polytope;
using registry::build;

namespace {

struct Example {
    CombinatorialData data;
    geometry::RationalPolytope polytope;
};

Example example(const std::string& id) {
    for (const auto& e : catalog::bundled_identifier_map())
        if (e.identifier == id) return {build(e.family, e.params), e.polytope};
    FAIL("no map entry " << id);
    return {};
}

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no exception");
    return ErrorCode::ParseError;
}

// monomial coefficients of a univariate polynomial of degree <= n from n + 1 samples
std::vector<Rat> interpolate(const CombinatorialData& d) {
    std::size_t n = static_cast<std::size_t>(d.dim - d.rank) + 1;
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        Rat x(static_cast<long>(i)), p(1);
        for (std::size_t k = 0; k < n; ++k, p *= x) a[i][k] = p;
        a[i][n] = d.f.expand(d.rank).eval({x});
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (a[p][c].is_zero()) ++p;
        std::swap(a[p], a[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            Rat f = a[r][c] / a[c][c];
            for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    std::vector<Rat> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i][n] / a[i][i];
    return out;
}

Rat factorial(int n) {
    Rat r(1);
    for (int i = 2; i <= n; ++i) r *= Rat(i);
    return r;
}

} // namespace

TEST_CASE("divisor_basis") {
    auto e = example("3-1-1");
    auto b = divisor_basis(e.data, e.polytope);
    REQUIRE(b.colors.size() == 1);
    CHECK(b.colors[0].rho == VecZ{1});
    CHECK(b.g_stable == std::vector<VecZ>{{-1}});

    e = example("2-1-4");
    b = divisor_basis(e.data, e.polytope);
    CHECK(b.colors.size() == 1);
    CHECK(b.g_stable == std::vector<VecZ>{{-1}, {1}});

    auto toric = build("toric", {{"n", 2}});
    b = divisor_basis(toric, parse_polytope("(1,0);(0,1);(-1,0);(0,-1)", 2));
    CHECK(b.colors.empty());
    CHECK(b.g_stable.size() == 4);
}

TEST_CASE("picard rank and Fano index") {
    CHECK(picard_rank(example("3-1-1").data, example("3-1-1").polytope) == 1);
    CHECK(picard_rank(example("2-1-4").data, example("2-1-4").polytope) == 2);
    CHECK(picard_rank(example("2-2-5").data, example("2-2-5").polytope) == 4);

    CHECK(fano_index(example("3-1-2").data, example("3-1-2").polytope) == 4);
    CHECK(fano_index(example("2-2-1").data, example("2-2-1").polytope) == 3);
    CHECK(fano_index(example("2-1-1").data, example("2-1-1").polytope) == 2);
    CHECK(fano_index(example("4-1-11").data, example("4-1-11").polytope) == 5);

    auto e = example("2-2-5");
    auto pres = picard(e.data, e.polytope);
    CHECK(pres.free_rank == 4);
    CHECK(pres.relations.rows == 6);
    CHECK(pres.relations.cols == 2);
}

TEST_CASE("moment_polytope") {
    auto e = example("3-1-1");
    auto [q, kappa] = moment_polytope(e.data, e.polytope);
    CHECK(geometry::to_string(q) == geometry::to_string(parse_polytope("(-2);(1)", 1)));
    CHECK(kappa == e.data.kappa);
}

TEST_CASE("degree") {
    auto deg = [](const char* id) {
        auto e = example(id);
        return degree(e.data, e.polytope);
    };
    CHECK(deg("3-1-1") == 54);
    CHECK(deg("3-1-2") == 64);
    CHECK(deg("4-1-11") == 625);
    CHECK(deg("2-2-5") == 6);
    CHECK(deg("2-2-1") == 9);
    CHECK(deg("3-2-1") == 48);
}

TEST_CASE("rank 1: degree and barycenter agree with antiderivatives over the dual interval") {
    int seen = 0;
    for (const auto& e : catalog::bundled_identifier_map()) {
        auto d = build(e.family, e.params);
        if (d.rank != 1) continue;
        CAPTURE(e.identifier);
        Rat lo = e.polytope.vertices.front()[0], hi = e.polytope.vertices.back()[0];
        if (hi < lo) std::swap(lo, hi);
        Rat a = Rat(-1) / hi, b = Rat(-1) / lo;
        auto f = interpolate(d);
        std::vector<Rat> xf{Rat(0)};
        xf.insert(xf.end(), f.begin(), f.end());
        CHECK(Rat(degree(d, e.polytope)) == factorial(d.dim) * oracle::integrate_poly_1d(f, a, b));
        CHECK(dh_barycenter(d, e.polytope) == VecQ{oracle::integrate_poly_1d(xf, a, b)});
        ++seen;
    }
    CHECK(seen > 20);
}

TEST_CASE("dh_barycenter examples") {
    auto bc = [](const char* id) {
        auto e = example(id);
        return dh_barycenter(e.data, e.polytope);
    };
    CHECK(bc("2-1-4") == VecQ{Rat(2) / Rat(3)});
    CHECK(bc("2-1-5") == VecQ{Rat(0)});
    CHECK(bc("3-2-1") == VecQ{Rat(8) / Rat(3), Rat(0)});

    // the dual of the diamond is the box [-1,1]^2; f is affine, so the moments separate
    auto e = example("3-2-1");
    Rat c = e.data.f.expand(2).eval({Rat(0), Rat(0)});
    Rat a1 = e.data.f.expand(2).eval({Rat(1), Rat(0)}) - c;
    Rat a2 = e.data.f.expand(2).eval({Rat(0), Rat(1)}) - c;
    Rat m0 = oracle::integrate_poly_1d({Rat(1)}, Rat(-1), Rat(1));
    Rat m2 = oracle::integrate_poly_1d({Rat(0), Rat(0), Rat(1)}, Rat(-1), Rat(1));
    CHECK(bc("3-2-1") == VecQ{a1 * m2 * m0, a2 * m2 * m0});
    CHECK(Rat(degree(e.data, e.polytope)) == factorial(3) * c * m0 * m0);
}

TEST_CASE("k_verdict") {
    auto kv = [](const char* id) {
        auto e = example(id);
        return k_verdict(e.data, e.polytope).value;
    };
    CHECK(kv("2-1-1") == KValue::Stable);
    CHECK(kv("2-1-4") == KValue::Unstable);
    CHECK(kv("2-1-5") == KValue::Stable);
    CHECK(kv("3-2-1") == KValue::Stable);
    CHECK(kv("4-1-11") == KValue::Stable);
    CHECK(std::string(kvalue_name(KValue::SemistableNotStable)) != kvalue_name(KValue::Stable));
}

TEST_CASE("classify") {
    Rat z(0), one(1), h = Rat(1) / Rat(2);
    CHECK(classify({}, {z, z}) == KValue::Stable);
    CHECK(classify({}, {one, z}) == KValue::Unstable);

    CHECK(classify({{1}}, {one}) == KValue::Stable);
    CHECK(classify({{1}}, {-one}) == KValue::Unstable);
    CHECK(classify({{1}}, {z}) == KValue::SemistableNotStable);

    CHECK(classify({{1, 1}}, {h, h}) == KValue::Stable);
    CHECK(classify({{1, 1}}, {one, z}) == KValue::Unstable);
    CHECK(classify({{1, 1}}, {-h, -h}) == KValue::Unstable);

    std::vector<VecZ> two{{1, 0}, {0, 1}};
    CHECK(classify(two, {one, one}) == KValue::Stable);
    CHECK(classify(two, {one, z}) == KValue::SemistableNotStable);
    CHECK(classify(two, {one, -h}) == KValue::Unstable);
    CHECK(classify(two, {z, z}) == KValue::SemistableNotStable);
}

TEST_CASE("every invariant rejects a polytope that is not reflexive") {
    auto d = build("SL2sq.diagSL2", {});
    auto bad = parse_polytope("(-1);(1)", 1);
    CHECK(code_of([&] { divisor_basis(d, bad); }) == ErrorCode::NotReflexive);
    CHECK(code_of([&] { picard_rank(d, bad); }) == ErrorCode::NotReflexive);
    CHECK(code_of([&] { fano_index(d, bad); }) == ErrorCode::NotReflexive);
    CHECK(code_of([&] { moment_polytope(d, bad); }) == ErrorCode::NotReflexive);
    CHECK(code_of([&] { degree(d, bad); }) == ErrorCode::NotReflexive);
    CHECK(code_of([&] { dh_barycenter(d, bad); }) == ErrorCode::NotReflexive);
    CHECK(code_of([&] { k_verdict(d, bad); }) == ErrorCode::NotReflexive);
}

TEST_CASE("Picard group is free of the expected rank across the map") {
    for (const auto& e : catalog::bundled_identifier_map()) {
        auto d = build(e.family, e.params);
        CAPTURE(e.identifier);
        auto pres = picard(d, e.polytope);
        auto basis = divisor_basis(d, e.polytope);
        CHECK(pres.free_rank == static_cast<int>(basis.colors.size() + basis.g_stable.size()) - d.rank);
        const auto& S = pres.snf.S;
        for (std::size_t i = 0; i < std::min(S.rows, S.cols); ++i) CHECK(abs(S(i, i)) == 1);
        CHECK(oracle::det(pres.snf.U) * oracle::det(pres.snf.U) == Rat(1));
        CHECK(degree(d, e.polytope) > 0);
        CHECK(fano_index(d, e.polytope) >= 1);
    }
}
