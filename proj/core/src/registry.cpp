#include "sphfano/registry.hpp"

#include "sphfano/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>

namespace sphfano::registry {

std::string format_params(const Params& p) {
    std::string s;
    for (const auto& [k, v] : p) {
        if (!s.empty()) s += ";";
        s += k + "=" + std::to_string(v);
    }
    return s;
}

Params parse_params(const std::string& text) {
    Params out;
    std::string item;
    auto flush = [&]() {
        auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos) { item.clear(); return; }
        item = item.substr(b, item.find_last_not_of(" \t") - b + 1);
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
            throw Error(ErrorCode::ParseError, "parameter '" + item + "' is not name=value");
        std::string name = item.substr(0, eq), val = item.substr(eq + 1);
        char* end = nullptr;
        long v = std::strtol(val.c_str(), &end, 10);
        if (*end != '\0') throw Error(ErrorCode::ParseError, "parameter value '" + val + "' is not an integer");
        out.emplace_back(name, v);
        item.clear();
    };
    for (char c : text) {
        if (c == ',' || c == ';') flush();
        else item += c;
    }
    flush();
    return out;
}

namespace {

const std::string C = "clubs", H = "hearts", D = "diamonds", S = "spades";

VecZ z(std::initializer_list<long> xs) {
    VecZ v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

Color color(const std::string& label, VecZ rho, long m, std::vector<std::string> zeta) {
    return Color{label, std::move(rho), Int(m), std::move(zeta)};
}

DHPolynomial::Factor fac(Rat c, VecZ a, int mult = 1) { return {c, std::move(a), mult}; }

SymmetryGroup full() { return SymmetryGroup{GroupKind::FullUnimodular, {}, {}, false, "stated"}; }

SymmetryGroup shear(VecZ fixed, bool reflection) {
    return SymmetryGroup{GroupKind::ShearClass, {}, std::move(fixed), reflection, "stated"};
}

/// Identity plus one involution.
SymmetryGroup pair(int rank, MatZ g, std::vector<int> perm) {
    int n = static_cast<int>(perm.size());
    std::vector<int> id(n);
    for (int i = 0; i < n; ++i) id[i] = i;
    return SymmetryGroup{GroupKind::FiniteList, {{MatZ::identity(rank), id}, {std::move(g), std::move(perm)}}, {}, false,
                         "stated"};
}

const MatZ kSwap{{0, 1}, {1, 0}};
const MatZ kFlip{{1, 0}, {0, -1}};
const MatZ kNeg{{-1}};

CombinatorialData base(int dim, int rank, std::string group, std::string type) {
    CombinatorialData d;
    d.dim = dim;
    d.rank = rank;
    d.group = std::move(group);
    d.type = std::move(type);
    return d;
}

long get(const Params& p, const std::string& name) {
    for (const auto& [k, v] : p)
        if (k == name) return v;
    throw Error(ErrorCode::ParamsOutOfDomain, "missing parameter " + name);
}

struct Def {
    FamilySpec spec;
    std::function<bool(const Params&)> domain;
    std::function<CombinatorialData(const Params&)> make;
};

Params P1(const char* n, long v) { return {{n, v}}; }
Params P2(long a1, long a2) { return {{"a1", a1}, {"a2", a2}}; }

std::vector<Params> range1(const char* n, long lo, long hi) {
    std::vector<Params> out;
    for (long v = lo; v <= hi; ++v) out.push_back(P1(n, v));
    return out;
}

auto always = [](const Params&) { return true; };

// -------------------------------------------------------------- dim 1, 2

void add_low_dim(std::vector<Def>& defs) {
    defs.push_back({{"toric", 1, 1, {"n"}, "n = 1", {P1("n", 1)}, {}, "", "fixed by the torus dimension"},
                    [](const Params& p) { return get(p, "n") == 1; },
                    [](const Params&) {
                        auto d = base(1, 1, "Gm", "toric");
                        d.kappa = "0";
                        d.basis = {"chi1"};
                        d.symmetry = full();
                        return d;
                    }});

    defs.push_back({{"toric", 2, 2, {"n"}, "n = 2", {P1("n", 2)}, {}, "", "fixed by the torus dimension"},
                    [](const Params& p) { return get(p, "n") == 2; },
                    [](const Params&) {
                        auto d = base(2, 2, "Gm^2", "toric");
                        d.kappa = "0";
                        d.basis = {"chi1", "chi2"};
                        d.symmetry = full();
                        return d;
                    }});

    defs.push_back({{"SL2.T", 2, 1, {}, "none", {{}}, {}, "", "parameterless"}, always, [](const Params&) {
                        auto d = base(2, 1, "SL2", "symmetric");
                        d.sigma = {z({1})};
                        d.colors = {color(C, z({1}), 1, {"a1"}), color(H, z({1}), 1, {"a1"})};
                        d.f.prefactor = 2;
                        d.f.factors = {fac(1, z({1}))};
                        d.kappa = "alpha1";
                        d.basis = {"alpha1"};
                        return d;
                    }});

    defs.push_back({{"SL2.N", 2, 1, {}, "none", {{}}, {}, "", "parameterless"}, always, [](const Params&) {
                        auto d = base(2, 1, "SL2", "symmetric");
                        d.sigma = {z({1})};
                        d.colors = {color(C, z({2}), 1, {"a1"})};
                        d.f.prefactor = 2;
                        d.f.factors = {fac(1, z({2}))};
                        d.kappa = "alpha1";
                        d.basis = {"2alpha1"};
                        return d;
                    }});

    // a >= 2 fails C4b on the color vertex and C3 otherwise
    defs.push_back({{"SL2xGm.horo1", 2, 1, {"a1"}, "a1 >= 0", range1("a1", 0, 1), {P1("a1", 2)},
                     "a1 = 0: P1 x P1", "non-primitive color ray for a1 >= 2"},
                    [](const Params& p) { return get(p, "a1") >= 0; },
                    [](const Params& p) {
                        long a = get(p, "a1");
                        auto d = base(2, 1, "SL2xGm", "horospherical");
                        d.colors = {color(C, z({a}), 2, {"a1"})};
                        d.f.factors = {fac(2, z({a}))};
                        d.kappa = "alpha1";
                        d.basis = {"a1*w1+chi1"};
                        d.symmetry = a == 0 ? full() : SymmetryGroup{};
                        return d;
                    }});
}

// -------------------------------------------------------------- dim 3

void add_dim3(std::vector<Def>& defs) {
    defs.push_back({{"SL2sq.diagSL2", 3, 1, {}, "none", {{}}, {}, "", "parameterless"}, always, [](const Params&) {
                        auto d = base(3, 1, "(SL2)^2", "symmetric");
                        d.sigma = {z({1})};
                        d.colors = {color(C, z({1}), 2, {"a1", "a2"})};
                        d.f.factors = {fac(2, z({1}), 2)};
                        d.kappa = "alpha1+alpha2";
                        d.basis = {"w1+w2"};
                        return d;
                    }});

    defs.push_back({{"SL2sq.NdiagSL2", 3, 1, {}, "none", {{}}, {}, "", "parameterless"}, always, [](const Params&) {
                        auto d = base(3, 1, "(SL2)^2", "symmetric");
                        d.sigma = {z({1})};
                        d.colors = {color(C, z({2}), 2, {"a1", "a2"})};
                        d.f.prefactor = 4;
                        d.f.factors = {fac(1, z({1}), 2)};
                        d.kappa = "alpha1+alpha2";
                        d.basis = {"alpha1+alpha2"};
                        return d;
                    }});

    // color coordinates bounded by 1 after normalization
    defs.push_back({{"SL2sq.horo1", 3, 1, {"a1", "a2"}, "a1 >= |a2|",
                     {P2(0, 0), P2(1, 0), P2(1, 1), P2(1, -1)}, {P2(2, 0)}, "a1 = a2 = 0: (P1)^3",
                     "horospherical color coordinates lie in {-1,0,1}"},
                    [](const Params& p) { return get(p, "a1") >= std::labs(get(p, "a2")); },
                    [](const Params& p) {
                        long a1 = get(p, "a1"), a2 = get(p, "a2");
                        auto d = base(3, 1, "(SL2)^2xGm", "horospherical");
                        d.colors = {color(C, z({a1}), 2, {"a1"}), color(H, z({a2}), 2, {"a2"})};
                        d.f.factors = {fac(2, z({a1})), fac(2, z({a2}))};
                        d.kappa = "alpha1+alpha2";
                        d.basis = {"a1*w1+a2*w2+chi1"};
                        if (a1 == 0 && a2 == 0) d.symmetry = full();
                        else if (a1 == -a2) d.symmetry = pair(1, kNeg, {1, 0});
                        return d;
                    }});

    defs.push_back({{"SL3.horo.Q", 3, 1, {"a1"}, "a1 >= 0", range1("a1", 0, 2), {P1("a1", 3)},
                     "a1 = 0: P2 x P1", "C2 fails for a1 >= 3"},
                    [](const Params& p) { return get(p, "a1") >= 0; },
                    [](const Params& p) {
                        long a = get(p, "a1");
                        auto d = base(3, 1, "SL3xGm", "horospherical");
                        d.colors = {color(C, z({a}), 3, {"a1"})};
                        d.f.prefactor = Rat(1, 2);
                        d.f.factors = {fac(3, z({a}), 2)};
                        d.kappa = "2alpha1+alpha2";
                        d.basis = {"a1*w1+chi1"};
                        d.symmetry = a == 0 ? full() : SymmetryGroup{};
                        return d;
                    }});

    // no embeddings for a1 >= 3
    defs.push_back({{"SL2xGm.T", 3, 2, {"a1"}, "a1 >= 0", range1("a1", 0, 2), {P1("a1", 3)},
                     "a1 = 0: symmetric product", "no locally factorial embeddings for a1 >= 3"},
                    [](const Params& p) { return get(p, "a1") >= 0; },
                    [](const Params& p) {
                        long a = get(p, "a1");
                        auto d = base(3, 2, "SL2xGm", a == 0 ? "symmetric" : "typeT");
                        d.kappa = "alpha1";
                        if (a % 2 == 0) {
                            d.sigma = {z({1, 0})};
                            d.colors = {color(C, z({1, a / 2}), 1, {"a1"}), color(H, z({1, -a / 2}), 1, {"a1"})};
                            d.f.prefactor = 2;
                            d.f.factors = {fac(1, z({1, 0}))};
                            d.basis = {"alpha1", "chi1"};
                            d.symmetry = pair(2, kFlip, {1, 0});
                        } else {
                            d.sigma = {z({1, 1})};
                            d.colors = {color(C, z({(a + 1) / 2, (1 - a) / 2}), 1, {"a1"}),
                                        color(H, z({(1 - a) / 2, (a + 1) / 2}), 1, {"a1"})};
                            d.f.factors = {fac(2, z({1, 1}))};
                            d.basis = {"w1+chi1", "w1-chi1"};
                            d.symmetry = pair(2, kSwap, {1, 0});
                        }
                        return d;
                    }});

    defs.push_back({{"SL2xGm.N.product", 3, 2, {}, "none", {{}}, {}, "product with Gm", "parameterless"}, always,
                    [](const Params&) {
                        auto d = base(3, 2, "SL2xGm", "symmetric");
                        d.sigma = {z({1, 0})};
                        d.colors = {color(C, z({2, 0}), 1, {"a1"})};
                        d.f.prefactor = 2;
                        d.f.factors = {fac(1, z({2, 0}))};
                        d.kappa = "alpha1";
                        d.basis = {"2alpha1", "chi1"};
                        d.symmetry = pair(2, kFlip, {0});
                        return d;
                    }});

    defs.push_back({{"SL2xGm.N.diag", 3, 2, {}, "none", {{}}, {}, "", "parameterless"}, always, [](const Params&) {
                        auto d = base(3, 2, "SL2xGm", "symmetric");
                        d.sigma = {z({1, 1})};
                        d.colors = {color(C, z({1, 1}), 1, {"a1"})};
                        d.f.factors = {fac(2, z({2, 2}))};
                        d.kappa = "alpha1";
                        d.basis = {"alpha1+chi1", "alpha1-chi1"};
                        d.symmetry = pair(2, kSwap, {0});
                        return d;
                    }});

    defs.push_back({{"SL2xGm.horo", 3, 2, {"a1"}, "a1 >= 0", range1("a1", 0, 1), {P1("a1", 2)},
                     "a1 = 0: P1 x toric surface", "non-primitive color ray for a1 >= 2"},
                    [](const Params& p) { return get(p, "a1") >= 0; },
                    [](const Params& p) {
                        long a = get(p, "a1");
                        auto d = base(3, 2, "SL2xGm^2", "horospherical");
                        d.colors = {color(C, z({a, 0}), 2, {"a1"})};
                        d.f.factors = {fac(2, z({a, 0}))};
                        d.kappa = "alpha1";
                        d.basis = {"a1*w1+chi1", "chi2"};
                        d.symmetry = a == 0 ? full() : shear(z({1, 0}), true);
                        return d;
                    }});
}

// -------------------------------------------------------------- dim 4, rank 1

CombinatorialData rank1_sym(const std::string& group, const std::string& type) {
    auto d = base(4, 1, group, type);
    d.sigma = {z({1})};
    return d;
}

void add_dim4_rank1(std::vector<Def>& defs) {
    defs.push_back({{"SL3.sym", 4, 1, {}, "none", {{}}, {}, "", "parameterless"}, always, [](const Params&) {
                        auto d = rank1_sym("SL3", "symmetric");
                        d.colors = {color(C, z({1}), 2, {"a1"}), color(H, z({1}), 2, {"a2"})};
                        d.f.factors = {fac(2, z({1}), 3)};
                        d.kappa = "2alpha1+2alpha2";
                        d.basis = {"w1+w2"};
                        return d;
                    }});

    defs.push_back({{"SL3.horosym", 4, 1, {}, "none", {{}}, {}, "", "parameterless"}, always, [](const Params&) {
                        auto d = rank1_sym("SL3", "horosymmetric");
                        d.colors = {color(C, z({-1}), 2, {"a1"}), color(H, z({1}), 1, {"a2"}),
                                    color(D, z({1}), 1, {"a2"})};
                        d.f.factors = {fac(2, z({-1})), fac(1, z({1})), fac(4, z({1}))};
                        d.kappa = "2alpha1+2alpha2";
                        d.basis = {"w2-w1"};
                        return d;
                    }});

    defs.push_back({{"SL3.Nhorosym", 4, 1, {}, "none", {{}}, {}, "", "no embeddings at all"}, always,
                    [](const Params&) {
                        auto d = rank1_sym("SL3", "horosymmetric");
                        d.colors = {color(C, z({-2}), 2, {"a1"}), color(H, z({2}), 1, {"a2"})};
                        d.f.prefactor = 4;
                        d.f.factors = {fac(1, z({-1})), fac(1, z({2})), fac(2, z({1}))};
                        d.kappa = "2alpha1+2alpha2";
                        d.basis = {"(w2-w1)/2"};
                        return d;
                    }});

    defs.push_back({{"SL3.horo.B", 4, 1, {"a1", "a2"}, "a1 >= |a2|",
                     {P2(0, 0), P2(1, 1), P2(1, 0), P2(1, -1)}, {P2(2, 0)}, "a1 = a2 = 0: flag variety x P1",
                     "horospherical color coordinates lie in {-1,0,1}"},
                    [](const Params& p) { return get(p, "a1") >= std::labs(get(p, "a2")); },
                    [](const Params& p) {
                        long a1 = get(p, "a1"), a2 = get(p, "a2");
                        auto d = base(4, 1, "SL3xGm", "horospherical");
                        d.colors = {color(C, z({a1}), 2, {"a1"}), color(H, z({a2}), 2, {"a2"})};
                        d.f.prefactor = Rat(1, 2);
                        d.f.factors = {fac(2, z({a1})), fac(2, z({a2})), fac(4, z({a1 + a2}))};
                        d.kappa = "2alpha1+2alpha2";
                        d.basis = {"a1*w1+a2*w2+chi1"};
                        if (a1 == 0 && a2 == 0) d.symmetry = full();
                        else if (a1 == -a2) d.symmetry = pair(1, kNeg, {1, 0});
                        return d;
                    }});

    defs.push_back({{"Sp4.Nsym", 4, 1, {}, "none", {{}}, {}, "", "parameterless"}, always, [](const Params&) {
                        auto d = rank1_sym("Sp4", "symmetric");
                        d.colors = {color(C, z({2}), 3, {"a2"})};
                        d.f.prefactor = Rat(1, 3);
                        d.f.factors = {fac(3, z({2}), 3)};
                        d.kappa = "3alpha1+3alpha2";
                        d.basis = {"w2"};
                        return d;
                    }});

    defs.push_back({{"Sp4.sym", 4, 1, {}, "none", {{}}, {}, "", "parameterless"}, always, [](const Params&) {
                        auto d = rank1_sym("Sp4", "symmetric");
                        d.colors = {color(C, z({1}), 3, {"a2"})};
                        d.f.prefactor = Rat(1, 3);
                        d.f.factors = {fac(3, z({1}), 3)};
                        d.kappa = "3alpha1+3alpha2";
                        d.basis = {"2w2"};
                        return d;
                    }});

    // products of a rank-0 flag variety with a rank-1 surface
    defs.push_back({{"SL3xSL2.T", 4, 1, {}, "none", {{}}, {}, "P2 x (SL2/T)", "parameterless"}, always,
                    [](const Params&) {
                        auto d = rank1_sym("SL3xSL2", "symmetric");
                        d.colors = {color(C, z({1}), 1, {"a3"}), color(H, z({1}), 1, {"a3"})};
                        d.f.factors = {fac(3, z({0}), 2), fac(1, z({1}))};
                        d.kappa = "alpha3";
                        d.basis = {"alpha3"};
                        return d;
                    }});

    defs.push_back({{"SL3xSL2.N", 4, 1, {}, "none", {{}}, {}, "P2 x (SL2/N)", "parameterless"}, always,
                    [](const Params&) {
                        auto d = rank1_sym("SL3xSL2", "symmetric");
                        d.colors = {color(C, z({2}), 1, {"a3"})};
                        d.f.factors = {fac(3, z({0}), 2), fac(1, z({2}))};
                        d.kappa = "alpha3";
                        d.basis = {"2alpha3"};
                        return d;
                    }});

    defs.push_back({{"SL2cube.diagSL2", 4, 1, {}, "none", {{}}, {}, "P1 x (SL2^2/diag)", "parameterless"}, always,
                    [](const Params&) {
                        auto d = rank1_sym("(SL2)^3", "symmetric");
                        d.colors = {color(C, z({1}), 2, {"a1", "a2"})};
                        d.f.factors = {fac(2, z({0})), fac(2, z({1}), 2)};
                        d.kappa = "alpha1+alpha2+alpha3";
                        d.basis = {"w1+w2"};
                        return d;
                    }});

    defs.push_back({{"SL2cube.NdiagSL2", 4, 1, {}, "none", {{}}, {}, "P1 x (SL2^2/N(diag))", "parameterless"},
                    always, [](const Params&) {
                        auto d = rank1_sym("(SL2)^3", "symmetric");
                        d.colors = {color(C, z({2}), 2, {"a1", "a2"})};
                        d.f.prefactor = 4;
                        d.f.factors = {fac(2, z({0})), fac(1, z({1}), 2)};
                        d.kappa = "alpha1+alpha2+alpha3";
                        d.basis = {"alpha1+alpha2"};
                        return d;
                    }});

    defs.push_back({{"SL2cube.T", 4, 1, {}, "none", {{}}, {}, "P1 x P1 x (SL2/T)", "parameterless"}, always,
                    [](const Params&) {
                        auto d = rank1_sym("(SL2)^3", "symmetric");
                        d.colors = {color(C, z({1}), 1, {"a1"}), color(H, z({1}), 1, {"a1"})};
                        d.f.prefactor = 2;
                        d.f.factors = {fac(2, z({0}), 2), fac(1, z({1}))};
                        d.kappa = "alpha1+alpha2+alpha3";
                        d.basis = {"alpha1"};
                        return d;
                    }});

    defs.push_back({{"SL2cube.N", 4, 1, {}, "none", {{}}, {}, "P1 x P1 x (SL2/N)", "parameterless"}, always,
                    [](const Params&) {
                        auto d = rank1_sym("(SL2)^3", "symmetric");
                        d.colors = {color(C, z({2}), 1, {"a1"})};
                        d.f.prefactor = 2;
                        d.f.factors = {fac(2, z({0}), 2), fac(1, z({2}))};
                        d.kappa = "alpha1+alpha2+alpha3";
                        d.basis = {"2alpha1"};
                        return d;
                    }});

    auto cube = [](long a1, long a2, long a3) { return Params{{"a1", a1}, {"a2", a2}, {"a3", a3}}; };
    // factor permutations and global negation leave one representative per class
    defs.push_back({{"SL2cube.horo", 4, 1, {"a1", "a2", "a3"}, "a1 >= |a2| >= |a3|",
                     {cube(0, 0, 0), cube(1, 0, 0), cube(1, 1, 0), cube(1, -1, 0), cube(1, 1, 1), cube(1, 1, -1)},
                     {cube(2, 0, 0)}, "a3 = 0: P1 x (SL2^2 horospherical)",
                     "horospherical color coordinates lie in {-1,0,1}"},
                    [](const Params& p) {
                        long a1 = get(p, "a1"), a2 = std::labs(get(p, "a2")), a3 = std::labs(get(p, "a3"));
                        return a1 >= a2 && a2 >= a3;
                    },
                    [](const Params& p) {
                        long a[3] = {get(p, "a1"), get(p, "a2"), get(p, "a3")};
                        auto d = base(4, 1, "(SL2)^3xGm", "horospherical");
                        const std::string labels[3] = {C, H, D};
                        for (int i = 0; i < 3; ++i) {
                            d.colors.push_back(color(labels[i], z({a[i]}), 2, {"a" + std::to_string(i + 1)}));
                            d.f.factors.push_back(fac(2, z({a[i]})));
                        }
                        d.kappa = "alpha1+alpha2+alpha3";
                        d.basis = {"a1*w1+a2*w2+a3*w3+chi1"};
                        if (a[0] == 0 && a[1] == 0 && a[2] == 0) d.symmetry = full();
                        else if (a[0] == -a[1] && a[2] == 0) d.symmetry = pair(1, kNeg, {1, 0, 2});
                        return d;
                    }});

    auto pp = [](long a1, long a3) { return Params{{"a1", a1}, {"a3", a3}}; };
    defs.push_back({{"SL3xSL2.horo", 4, 1, {"a1", "a3"}, "a1 >= 0, and a3 >= 0 when a1 = 0",
                     {pp(0, 0), pp(0, 1), pp(1, 0), pp(2, 0), pp(1, 1), pp(1, -1), pp(2, 1), pp(2, -1)},
                     {pp(3, 0), pp(0, 2), pp(1, 2)}, "a1 = 0 or a3 = 0: product with a flag variety",
                     "C2 and C4b bound a1 <= 2 and |a3| <= 1"},
                    [](const Params& p) {
                        long a1 = get(p, "a1"), a3 = get(p, "a3");
                        return a1 > 0 || (a1 == 0 && a3 >= 0);
                    },
                    [](const Params& p) {
                        long a1 = get(p, "a1"), a3 = get(p, "a3");
                        auto d = base(4, 1, "SL3xSL2xGm", "horospherical");
                        d.colors = {color(C, z({a1}), 3, {"a1"}), color(H, z({a3}), 2, {"a3"})};
                        d.f.prefactor = Rat(1, 2);
                        d.f.factors = {fac(3, z({a1}), 2), fac(2, z({a3}))};
                        d.kappa = "2alpha1+alpha2+alpha3";
                        d.basis = {"a1*w1+a3*w3+chi1"};
                        if (a1 == 0 && a3 == 0) d.symmetry = full();
                        return d;
                    }});

    struct Horo {
        const char* id;
        const char* group;
        long m;
        long max;
        Rat pre;
        const char* kappa;
    };
    for (const Horo& h : {Horo{"Sp4.horo.short", "Sp4xGm", 4, 3, Rat(1, 6), "4alpha1+2alpha2"},
                          Horo{"Sp4.horo.long", "Sp4xGm", 3, 2, Rat(1, 3), "3alpha1+3alpha2"},
                          Horo{"SL4.horo", "SL4xGm", 4, 3, Rat(1, 6), "3alpha1+2alpha2+alpha3"}}) {
        defs.push_back({{h.id, 4, 1, {"a1"}, "a1 >= 0", range1("a1", 0, h.max), {P1("a1", h.max + 1)},
                         "a1 = 0: product with P1", "C2 fails once a1 reaches m"},
                        [](const Params& p) { return get(p, "a1") >= 0; },
                        [h](const Params& p) {
                            long a = get(p, "a1");
                            auto d = base(4, 1, h.group, "horospherical");
                            d.colors = {color(C, z({a}), h.m, {"a1"})};
                            d.f.prefactor = h.pre;
                            d.f.factors = {fac(h.m, z({a}), 3)};
                            d.kappa = h.kappa;
                            d.basis = {"a1*w1+chi1"};
                            d.symmetry = a == 0 ? full() : SymmetryGroup{};
                            return d;
                        }});
    }
}

// -------------------------------------------------------------- dim 4, rank 2

CombinatorialData sl2sq(const std::string& group, const std::string& type, std::vector<VecZ> sigma) {
    auto d = base(4, 2, group, type);
    d.sigma = std::move(sigma);
    d.kappa = "alpha1+alpha2";
    return d;
}

void add_dim4_rank2(std::vector<Def>& defs) {
    defs.push_back({{"SL2sq.GC.diag", 4, 2, {}, "none", {{}}, {}, "", "parameterless"}, always, [](const Params&) {
                        auto d = sl2sq("(SL2)^2xGm", "symmetric", {z({1, 0})});
                        d.colors = {color(C, z({1, 0}), 2, {"a1", "a2"})};
                        d.f.factors = {fac(2, z({1, 0}), 2)};
                        d.basis = {"w1+w2", "chi1"};
                        d.symmetry = pair(2, kFlip, {0});
                        return d;
                    }});

    defs.push_back({{"SL2sq.GC.Ndiag", 4, 2, {}, "none", {{}}, {}, "", "parameterless"}, always, [](const Params&) {
                        auto d = sl2sq("(SL2)^2xGm", "symmetric", {z({1, 0})});
                        d.colors = {color(C, z({2, 0}), 2, {"a1", "a2"})};
                        d.f.prefactor = 4;
                        d.f.factors = {fac(1, z({1, 0}), 2)};
                        d.basis = {"alpha1+alpha2", "chi1"};
                        d.symmetry = pair(2, kFlip, {0});
                        return d;
                    }});

    defs.push_back({{"SL2sq.GL2", 4, 2, {}, "none", {{}}, {}, "", "parameterless"}, always, [](const Params&) {
                        auto d = sl2sq("(SL2)^2xGm", "group-compactification", {z({1, 1})});
                        d.colors = {color(C, z({1, 1}), 2, {"a1", "a2"})};
                        d.f.factors = {fac(2, z({1, 1}), 2)};
                        d.basis = {"w1+chi1", "w2-chi1"};
                        d.symmetry = pair(2, kSwap, {0});
                        return d;
                    }});

    defs.push_back({{"SL2sq.diagB", 4, 2, {}, "none", {{}}, {}, "", "parameterless"}, always, [](const Params&) {
                        auto d = sl2sq("(SL2)^2", "diag-Borel", {z({1, 1}), z({1, -1})});
                        d.colors = {color(C, z({0, 1}), 1, {"a1"}), color(H, z({1, 0}), 1, {"a1", "a2"}),
                                    color(D, z({0, -1}), 1, {"a2"})};
                        d.f.factors = {fac(2, z({1, 1})), fac(2, z({1, -1}))};
                        d.basis = {"w1", "w2"};
                        d.symmetry = pair(2, kFlip, {2, 1, 0});
                        return d;
                    }});

    defs.push_back({{"SL2sq.NdiagB", 4, 2, {}, "none", {{}}, {}, "", "parameterless"}, always, [](const Params&) {
                        auto d = sl2sq("(SL2)^2", "diag-Borel", {z({1, 0}), z({0, 1})});
                        d.colors = {color(C, z({1, -1}), 1, {"a1"}), color(H, z({1, 1}), 1, {"a1", "a2"}),
                                    color(D, z({-1, 1}), 1, {"a2"})};
                        d.f.prefactor = 4;
                        d.f.factors = {fac(1, z({1, 0})), fac(1, z({0, 1}))};
                        d.basis = {"w1+w2", "w1-w2"};
                        d.symmetry = pair(2, kSwap, {2, 1, 0});
                        return d;
                    }});

    defs.push_back({{"SL2sq.TxT", 4, 2, {}, "none", {{}}, {}, "(SL2/T)^2", "parameterless"}, always,
                    [](const Params&) {
                        auto d = sl2sq("(SL2)^2", "symmetric", {z({1, 0}), z({0, 1})});
                        d.colors = {color(C, z({1, 0}), 1, {"a1"}), color(H, z({1, 0}), 1, {"a1"}),
                                    color(S, z({0, 1}), 1, {"a2"}), color(D, z({0, 1}), 1, {"a2"})};
                        d.f.prefactor = 4;
                        d.f.factors = {fac(1, z({1, 0})), fac(1, z({0, 1}))};
                        d.basis = {"alpha1", "alpha2"};
                        d.symmetry = pair(2, kSwap, {2, 3, 0, 1});
                        return d;
                    }});

    defs.push_back({{"SL2sq.NTxT", 4, 2, {}, "none", {{}}, {}, "SL2/N x SL2/T", "parameterless"}, always,
                    [](const Params&) {
                        auto d = sl2sq("(SL2)^2", "symmetric", {z({1, 0}), z({0, 1})});
                        d.colors = {color(C, z({2, 0}), 1, {"a1"}), color(S, z({0, 1}), 1, {"a2"}),
                                    color(D, z({0, 1}), 1, {"a2"})};
                        d.f.prefactor = 4;
                        d.f.factors = {fac(1, z({2, 0})), fac(1, z({0, 1}))};
                        d.basis = {"2alpha1", "alpha2"};
                        return d;
                    }});

    defs.push_back({{"SL2sq.NTxNT", 4, 2, {}, "none", {{}}, {}, "(SL2/N)^2", "parameterless"}, always,
                    [](const Params&) {
                        auto d = sl2sq("(SL2)^2", "symmetric", {z({1, 0}), z({0, 1})});
                        d.colors = {color(C, z({2, 0}), 1, {"a1"}), color(S, z({0, 2}), 1, {"a2"})};
                        d.f.prefactor = 4;
                        d.f.factors = {fac(1, z({2, 0})), fac(1, z({0, 2}))};
                        d.basis = {"2alpha1", "2alpha2"};
                        d.symmetry = pair(2, kSwap, {1, 0});
                        return d;
                    }});

    defs.push_back({{"SL2sq.diagNT", 4, 2, {}, "none", {{}}, {}, "", "parameterless"}, always, [](const Params&) {
                        auto d = sl2sq("(SL2)^2", "symmetric", {z({1, 1}), z({1, -1})});
                        d.colors = {color(C, z({1, 1}), 1, {"a1"}), color(S, z({1, -1}), 1, {"a2"})};
                        d.f.prefactor = 4;
                        d.f.factors = {fac(1, z({1, 1})), fac(1, z({1, -1}))};
                        d.basis = {"alpha1", "alpha2"};
                        d.symmetry = pair(2, kFlip, {1, 0});
                        return d;
                    }});

    // a1 <= 2 as for type T; a2 in {0,1}
    std::vector<Params> pit;
    for (long a2 : {0L, 1L})
        for (long a1 = 0; a1 <= 2; ++a1) pit.push_back(P2(a1, a2));
    defs.push_back({{"SL2sq.PI-T", 4, 2, {"a1", "a2"}, "a1 >= 0, a2 >= 0", pit,
                     {P2(3, 1), P2(0, 2), P2(1, 2), P2(2, 2)}, "a2 = 0: P1 x (SL2xGm type T)",
                     "a1 <= 2 as for type T; a2 in {0,1}"},
                    [](const Params& p) { return get(p, "a1") >= 0 && get(p, "a2") >= 0; },
                    [](const Params& p) {
                        long a1 = get(p, "a1"), a2 = get(p, "a2");
                        auto d = sl2sq("(SL2)^2xGm", "typeT", {});
                        if (a1 % 2 == 0) {
                            d.sigma = {z({1, 0})};
                            d.colors = {color(C, z({1, a1 / 2}), 1, {"a1"}), color(H, z({1, -a1 / 2}), 1, {"a1"}),
                                        color(D, z({0, a2}), 2, {"a2"})};
                            d.f.prefactor = 2;
                            d.f.factors = {fac(1, z({1, 0})), fac(2, z({0, a2}))};
                            d.basis = {"alpha1", "a2*w2+chi1"};
                            if (a2 == 0) d.symmetry = pair(2, kFlip, {1, 0, 2});
                        } else {
                            d.sigma = {z({1, 1})};
                            d.colors = {color(C, z({(a1 + 1) / 2, (1 - a1) / 2}), 1, {"a1"}),
                                        color(H, z({(1 - a1) / 2, (a1 + 1) / 2}), 1, {"a1"}),
                                        color(D, z({a2, -a2}), 2, {"a2"})};
                            d.f.factors = {fac(2, z({1, 1})), fac(2, z({a2, -a2}))};
                            d.basis = {"w1+chi1+a2*w2", "w1-chi1"};
                            if (a2 == 0) d.symmetry = pair(2, kSwap, {1, 0, 2});
                        }
                        return d;
                    }});

    defs.push_back({{"SL2sq.PI-N.product", 4, 2, {"a2"}, "a2 >= 0", range1("a2", 0, 1), {P1("a2", 2)},
                     "a2 = 0: P1 x (SL2xGm type N)", "a2 in {0,1}"},
                    [](const Params& p) { return get(p, "a2") >= 0; },
                    [](const Params& p) {
                        long a2 = get(p, "a2");
                        auto d = sl2sq("(SL2)^2xGm", "typeN", {z({1, 0})});
                        d.colors = {color(C, z({2, 0}), 1, {"a1"}), color(D, z({0, a2}), 2, {"a2"})};
                        d.f.prefactor = 2;
                        d.f.factors = {fac(1, z({2, 0})), fac(2, z({0, a2}))};
                        d.basis = {"2alpha1", "a2*w2+chi1"};
                        if (a2 == 0) d.symmetry = pair(2, kFlip, {0, 1});
                        return d;
                    }});

    defs.push_back({{"SL2sq.PI-N.diag", 4, 2, {"a2"}, "a2 >= 0", range1("a2", 0, 1), {P1("a2", 2)},
                     "a2 = 0: P1 x (SL2xGm type N)", "a2 in {0,1}"},
                    [](const Params& p) { return get(p, "a2") >= 0; },
                    [](const Params& p) {
                        long a2 = get(p, "a2");
                        auto d = sl2sq("(SL2)^2xGm", "typeN", {z({1, 1})});
                        d.colors = {color(C, z({1, 1}), 1, {"a1"}), color(D, z({a2, -a2}), 2, {"a2"})};
                        d.f.prefactor = 2;
                        d.f.factors = {fac(1, z({1, 1})), fac(2, z({a2, -a2}))};
                        d.basis = {"alpha1+chi1+a2*w2", "alpha1-chi1"};
                        if (a2 == 0) d.symmetry = pair(2, kSwap, {0, 1});
                        return d;
                    }});

    auto h2 = [](long a1, long a2, long b2) { return Params{{"a1", a1}, {"a2", a2}, {"b2", b2}}; };
    // only (a2,b2) in {(0,0),(0,1),(1,2),(2,3)} survive the vertex conditions
    defs.push_back({{"SL2sq.horo2", 4, 2, {"a1", "a2", "b2"},
                     "(a2,b2) = (0,0) and a1 >= 0, or a1 >= 1 and 0 <= a2 < b2",
                     {h2(0, 0, 0), h2(1, 0, 0), h2(1, 0, 1), h2(1, 1, 2), h2(1, 2, 3)},
                     {h2(2, 0, 0), h2(2, 0, 1), h2(1, 1, 3), h2(1, 3, 4)}, "(a2,b2) = (0,0): P1 x (SL2xGm^2 horospherical)",
                     "horospherical color coordinates lie in {-1,0,1} after normalization"},
                    [](const Params& p) {
                        long a1 = get(p, "a1"), a2 = get(p, "a2"), b2 = get(p, "b2");
                        if (a2 == 0 && b2 == 0) return a1 >= 0;
                        return a1 >= 1 && a2 >= 0 && a2 < b2;
                    },
                    [](const Params& p) {
                        long a1 = get(p, "a1"), a2 = get(p, "a2"), b2 = get(p, "b2");
                        auto d = sl2sq("(SL2)^2xGm^2", "horospherical", {});
                        d.colors = {color(C, z({a1, 0}), 2, {"a1"}), color(H, z({a2, b2}), 2, {"a2"})};
                        d.f.factors = {fac(2, z({a1, 0})), fac(2, z({a2, b2}))};
                        d.basis = {"a1*w1+a2*w2+chi1", "b2*w2+chi2"};
                        if (a1 == 0) d.symmetry = full();
                        else if (a2 == 0 && b2 == 0) d.symmetry = shear(z({1, 0}), true);
                        else if (a1 == 1) {
                            // the involution exchanging the two color rays
                            MatZ g(2, 2);
                            g(0, 0) = a2;
                            g(1, 0) = b2;
                            // second column solves g (a2,b2) = (1,0)
                            g(0, 1) = (1 - a2 * a2) / b2;
                            g(1, 1) = -a2;
                            d.symmetry = pair(2, g, {1, 0});
                        }
                        return d;
                    }});

    defs.push_back({{"SL3.horo2", 4, 2, {"a1"}, "a1 >= 0", range1("a1", 0, 2), {P1("a1", 3)},
                     "a1 = 0: P2 x toric surface", "C2 fails for a1 >= 3"},
                    [](const Params& p) { return get(p, "a1") >= 0; },
                    [](const Params& p) {
                        long a = get(p, "a1");
                        auto d = base(4, 2, "SL3xGm^2", "horospherical");
                        d.colors = {color(C, z({a, 0}), 3, {"a1"})};
                        d.f.prefactor = Rat(1, 2);
                        d.f.factors = {fac(3, z({a, 0}), 2)};
                        d.kappa = "2alpha1+alpha2";
                        d.basis = {"a1*w1+chi1", "chi2"};
                        d.symmetry = a == 0 ? full() : shear(z({1, 0}), true);
                        return d;
                    }});
}

const std::vector<Def>& defs() {
    static const std::vector<Def> all = [] {
        std::vector<Def> v;
        add_low_dim(v);
        add_dim3(v);
        add_dim4_rank1(v);
        add_dim4_rank2(v);
        for (int dim = 1; dim <= 4; ++dim) {
            FamilySpec s{"rank0", dim, 0, {"k"}, "1 <= k <= number of rank-0 rows", {}, {}, "",
                         "static table of projective homogeneous spaces"};
            long k = 0;
            for (const auto& e : rank0_entries())
                if (e.dim == dim) s.bound.push_back(P1("k", ++k));
            v.push_back({s, [dim](const Params& p) {
                             long k = get(p, "k"), n = 0;
                             for (const auto& e : rank0_entries()) n += e.dim == dim;
                             return k >= 1 && k <= n;
                         },
                         [dim](const Params& p) {
                             long k = get(p, "k");
                             for (const auto& e : rank0_entries()) {
                                 if (e.dim != dim || --k != 0) continue;
                                 auto d = base(dim, 0, e.group, "rank0");
                                 d.f.prefactor = Rat(e.degree);
                                 for (int i = 2; i <= dim; ++i) d.f.prefactor /= Rat(i);
                                 d.kappa = e.space;
                                 return d;
                             }
                             throw Error(ErrorCode::ParamsOutOfDomain, "rank0 index");
                         }});
        }
        return v;
    }();
    return all;
}

/// Reorders params to the family's declared names; rejects missing or extra names.
Params normalized(const FamilySpec& s, const Params& p) {
    Params out;
    for (const auto& n : s.param_names) {
        auto it = std::find_if(p.begin(), p.end(), [&](const auto& kv) { return kv.first == n; });
        if (it == p.end()) throw Error(ErrorCode::ParamsOutOfDomain, s.id + ": missing parameter " + n);
        out.emplace_back(n, it->second);
    }
    if (p.size() != out.size()) throw Error(ErrorCode::ParamsOutOfDomain, s.id + ": unexpected parameter");
    return out;
}

const Def& lookup(const std::string& id, const Params& p) {
    const Def* first = nullptr;
    for (const auto& d : defs()) {
        if (d.spec.id != id) continue;
        if (!first) first = &d;
        try {
            if (d.domain(normalized(d.spec, p))) return d;
        } catch (const Error&) {
        }
    }
    if (!first) throw Error(ErrorCode::UnknownFamily, "unknown family '" + id + "'");
    return *first;
}

} // namespace

std::vector<FamilySpec> families(int dim, int rank) {
    std::vector<FamilySpec> out;
    for (const auto& d : defs())
        if ((dim == 0 || d.spec.dim == dim) && (rank < 0 || d.spec.rank == rank)) out.push_back(d.spec);
    std::stable_sort(out.begin(), out.end(), [](const FamilySpec& a, const FamilySpec& b) {
        return std::tie(a.dim, a.rank) < std::tie(b.dim, b.rank);
    });
    return out;
}

bool in_domain(const std::string& id, const Params& params) {
    const Def& d = lookup(id, params);
    try {
        return d.domain(normalized(d.spec, params));
    } catch (const Error&) {
        return false;
    }
}

CombinatorialData build(const std::string& id, const Params& params) {
    const Def& d = lookup(id, params);
    Params p = normalized(d.spec, params);
    if (!d.domain(p))
        throw Error(ErrorCode::ParamsOutOfDomain, id + ": " + format_params(p) + " violates " + d.spec.domain);
    return d.make(p);
}

SymmetryGroup symmetry_group(const std::string& id, const Params& params) { return build(id, params).symmetry; }

const std::vector<Rank0Entry>& rank0_entries() {
    static const std::vector<Rank0Entry> rows = {
        {"SL2", "P1", 1, 1, 2, 2},
        {"SL3", "P2", 2, 1, 9, 3},
        {"(SL2)^2", "P1xP1", 2, 2, 8, 2},
        {"SL3", "W", 3, 2, 48, 2},
        {"Sp4", "Q3", 3, 1, 54, 3},
        {"Sp4", "P3", 3, 1, 64, 4},
        {"(SL2)^3", "(P1)^3", 3, 3, 48, 2},
        {"SL3xSL2", "P2xP1", 3, 2, 54, 1},
        {"SL4", "P3", 3, 1, 64, 4},
        {"SL3xSL2", "WxP1", 4, 3, 384, 2},
        {"Sp4xSL2", "Q3xP1", 4, 2, 432, 1},
        {"Sp4xSL2", "P3xP1", 4, 2, 512, 2},
        {"SL4", "Q4", 4, 1, 512, 4},
        {"(SL2)^4", "(P1)^4", 4, 4, 384, 2},
        {"SL3x(SL2)^2", "P2xP1xP1", 4, 3, 432, 1},
        {"(SL3)^2", "P2xP2", 4, 2, 486, 3},
        {"SL4xSL2", "P3xP1", 4, 2, 512, 2},
        {"SL5", "P4", 4, 1, 625, 5},
    };
    return rows;
}

std::string families_json() {
    using nlohmann::ordered_json;
    auto params_json = [](const Params& p) {
        ordered_json o = ordered_json::object();
        for (const auto& [k, v] : p) o[k] = v;
        return o;
    };
    auto symmetry_json = [](const SymmetryGroup& g) {
        ordered_json s;
        s["kind"] = kind_name(g.kind);
        s["symmetry_source"] = g.source;
        if (g.kind == GroupKind::FiniteList) {
            s["elements"] = ordered_json::array();
            for (const auto& e : g.elements) s["elements"].push_back({{"matrix", to_string(e.g)}, {"perm", e.perm}});
        }
        if (g.kind == GroupKind::ShearClass) {
            s["fixed"] = to_string(g.fixed);
            s["reflection"] = g.reflection;
        }
        return s;
    };

    ordered_json root;
    root["families"] = ordered_json::array();
    for (const auto& spec : families()) {
        ordered_json f;
        f["id"] = spec.id;
        f["dim"] = spec.dim;
        f["rank"] = spec.rank;
        f["params"] = spec.param_names;
        f["domain"] = spec.domain;
        f["bound_reason"] = spec.bound_reason;
        f["product_note"] = spec.product_note;
        f["probes"] = ordered_json::array();
        for (const auto& p : spec.probes) f["probes"].push_back(params_json(p));
        f["bound"] = ordered_json::array();
        if (spec.rank > 0) {
            for (const auto& p : spec.bound) {
                auto d = build(spec.id, p);
                ordered_json b;
                b["params"] = params_json(p);
                b["data"] = ordered_json::parse(to_json(d));
                b["symmetry"] = symmetry_json(d.symmetry);
                f["bound"].push_back(b);
            }
        } else {
            for (const auto& p : spec.bound) f["bound"].push_back({{"params", params_json(p)}});
        }
        root["families"].push_back(f);
    }
    root["rank0"] = ordered_json::array();
    for (const auto& e : rank0_entries())
        root["rank0"].push_back({{"group", e.group},
                                 {"space", e.space},
                                 {"dim", e.dim},
                                 {"pic", e.pic},
                                 {"degree", e.degree},
                                 {"fano_index", e.fano_index}});
    return root.dump(2) + "\n";
}

} // namespace sphfano::registry
