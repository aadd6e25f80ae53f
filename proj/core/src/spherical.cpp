#include "sphfano/spherical.hpp"

#include "sphfano/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace sphfano {

using geometry::Polynomial;
using geometry::RationalPolytope;

VecQ Color::point() const {
    VecQ p;
    for (const auto& r : rho) p.push_back(Rat(r, m));
    return p;
}

int DHPolynomial::degree() const {
    int d = 0;
    for (const auto& f : factors)
        d += f.mult;
    return d;
}

Rat DHPolynomial::at_origin() const {
    Rat v = prefactor;
    for (const auto& f : factors)
        for (int k = 0; k < f.mult; ++k) v *= f.c;
    return v;
}

Polynomial DHPolynomial::expand(int rank) const {
    Polynomial p = Polynomial::constant(rank, prefactor);
    for (const auto& f : factors) {
        VecQ a;
        for (int i = 0; i < rank; ++i) a.emplace_back(i < static_cast<int>(f.a.size()) ? f.a[i] : Int(0));
        p = p * Polynomial::affine(f.c, a).pow(f.mult);
    }
    return p;
}

std::string to_string(const DHPolynomial& f) {
    std::string s = f.prefactor.str();
    for (const auto& fa : f.factors) {
        s += "*(" + fa.c.str();
        for (std::size_t i = 0; i < fa.a.size(); ++i) {
            if (fa.a[i] == 0) continue;
            s += fa.a[i] > 0 ? "+" : "-";
            Int mag = abs(fa.a[i]);
            if (mag != 1) s += mag.get_str();
            s += "x" + std::to_string(i + 1);
        }
        s += ")";
        if (fa.mult > 1) s += "^" + std::to_string(fa.mult);
    }
    return s;
}

const char* kind_name(GroupKind k) {
    switch (k) {
    case GroupKind::Trivial: return "Trivial";
    case GroupKind::FiniteList: return "FiniteList";
    case GroupKind::FullUnimodular: return "FullUnimodular";
    case GroupKind::ShearClass: return "ShearClass";
    }
    return "?";
}

std::vector<MatZ> SymmetryGroup::generators(int rank) const {
    std::vector<MatZ> out;
    switch (kind) {
    case GroupKind::Trivial: break;
    case GroupKind::FiniteList:
        for (const auto& e : elements)
            if (e.g != MatZ::identity(rank)) out.push_back(e.g);
        break;
    case GroupKind::FullUnimodular:
        if (rank == 1) {
            out.push_back(MatZ{{-1}});
        } else {
            out.push_back(MatZ{{0, -1}, {1, 0}});
            out.push_back(MatZ{{1, 1}, {0, 1}});
            out.push_back(MatZ{{1, 0}, {0, -1}});
        }
        break;
    case GroupKind::ShearClass:
        out.push_back(MatZ{{1, 1}, {0, 1}});
        if (reflection) out.push_back(MatZ{{1, 0}, {0, -1}});
        break;
    }
    return out;
}

CombinatorialData transform(const CombinatorialData& d, const MatZ& g) {
    CombinatorialData out = d;
    MatZ ginvT = inverse_unimodular(g).transpose();
    for (auto& s : out.sigma) s = sphfano::apply(ginvT, s);
    for (auto& c : out.colors) c.rho = sphfano::apply(g, c.rho);
    for (auto& fa : out.f.factors) {
        VecZ a = fa.a;
        a.resize(d.rank, Int(0));
        fa.a = sphfano::apply(g, a);
    }
    out.symmetry = SymmetryGroup{};
    return out;
}

const char* position_name(ConePosition p) {
    switch (p) {
    case ConePosition::Interior: return "Interior";
    case ConePosition::Boundary: return "Boundary";
    case ConePosition::Outside: return "Outside";
    }
    return "?";
}

ConePosition valuation_cone_position(const CombinatorialData& d, const VecQ& x) {
    if (static_cast<int>(x.size()) != d.rank) throw Error(ErrorCode::RankMismatch, "point length differs from rank");
    bool boundary = false;
    for (const auto& s : d.sigma) {
        int c = dot(s, x).sign();
        if (c > 0) return ConePosition::Outside;
        if (c == 0) boundary = true;
    }
    return boundary ? ConePosition::Boundary : ConePosition::Interior;
}

std::vector<VecQ> color_points(const CombinatorialData& d) {
    std::vector<VecQ> out;
    for (const auto& c : d.colors) out.push_back(c.point());
    return out;
}

bool cone_meets_interior(const CombinatorialData& d, const std::vector<VecQ>& pts) {
    if (pts.size() == 1) return valuation_cone_position(d, pts[0]) == ConePosition::Interior;
    const VecQ& u = pts[0];
    const VecQ& w = pts[1];
    // <s,(1-t)u + t w> is affine in t; collect its roots in (0,1) and test between them
    std::vector<Rat> ts{Rat(0), Rat(1)};
    for (const auto& s : d.sigma) {
        Rat a = dot(s, u), b = dot(s, w);
        if (a != b) {
            Rat t = a / (a - b);
            if (t > Rat(0) && t < Rat(1)) ts.push_back(t);
        }
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::size_t n = ts.size();
    for (std::size_t i = 0; i + 1 < n; ++i) ts.push_back((ts[i] + ts[i + 1]) / Rat(2));
    for (const auto& t : ts) {
        VecQ p{(Rat(1) - t) * u[0] + t * w[0], (Rat(1) - t) * u[1] + t * w[1]};
        if (valuation_cone_position(d, p) == ConePosition::Interior) return true;
    }
    return false;
}

Verdict check_reflexive(const CombinatorialData& d, const RationalPolytope& p) {
    if (p.rank != d.rank) throw Error(ErrorCode::RankMismatch, "polytope rank differs from data rank");
    Verdict v;
    auto fail = [&v](const char* c, std::string detail) {
        v.ok = false;
        v.violations.push_back({c, std::move(detail)});
    };
    VecQ origin(d.rank, Rat(0));
    if (!geometry::contains(p, origin, true)) fail("C1", "origin is not in the interior");

    auto pts = color_points(d);
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (!geometry::contains(p, pts[i], false))
            fail("C2", "color " + d.colors[i].label + " point " + to_string(pts[i]) + " lies outside");

    auto is_color_point = [&pts](const VecQ& x) { return std::find(pts.begin(), pts.end(), x) != pts.end(); };
    for (const auto& x : p.vertices) {
        if (is_color_point(x)) continue;
        bool integral = std::all_of(x.begin(), x.end(), [](const Rat& c) { return c.is_integer(); });
        if (!integral) fail("C3", "vertex " + to_string(x) + " is neither integral nor a color point");
        else if (valuation_cone_position(d, x) == ConePosition::Outside)
            fail("C3", "vertex " + to_string(x) + " lies outside the valuation cone");
    }

    for (const auto& f : geometry::facets(p)) {
        std::vector<VecQ> fv;
        for (int i : f.incident) fv.push_back(p.vertices[i]);
        if (!cone_meets_interior(d, fv)) continue;
        std::string where = "facet " + to_string(f.outward_normal) + "<=" + f.support.str();

        std::vector<int> df;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (dot(f.outward_normal, pts[i]) == f.support) df.push_back(static_cast<int>(i));

        std::set<VecZ> rhos;
        for (int i : df) rhos.insert(d.colors[i].rho);
        if (rhos.size() != df.size()) fail("C4a", where + ": two colors share rho");

        bool b_ok = true;
        std::vector<VecZ> basis;
        for (int i : df) {
            if (std::find(fv.begin(), fv.end(), pts[i]) == fv.end()) {
                fail("C4b", where + ": color " + d.colors[i].label + " is not a vertex of the facet");
                b_ok = false;
            }
            basis.push_back(d.colors[i].rho);
        }
        for (const auto& x : fv) {
            if (is_color_point(x)) continue;
            if (!std::all_of(x.begin(), x.end(), [](const Rat& c) { return c.is_integer(); })) {
                b_ok = false;
                continue;
            }
            VecZ z;
            for (const auto& c : x) z.push_back(c.num());
            basis.push_back(z);
        }
        if (b_ok && !geometry::is_lattice_basis(basis)) fail("C4b", where + ": generators do not form a lattice basis");
    }
    return v;
}

// ---------------------------------------------------------------- JSON

namespace {

using nlohmann::json;

json vec_json(const VecZ& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.get_si());
    return a;
}

VecZ vec_from(const json& a) {
    VecZ v;
    for (const auto& x : a) v.emplace_back(x.get<long>());
    return v;
}

} // namespace

std::string to_json(const CombinatorialData& d) {
    json j;
    j["rank"] = d.rank;
    j["dim"] = d.dim;
    j["sigma"] = json::array();
    for (const auto& s : d.sigma) j["sigma"].push_back(vec_json(s));
    j["colors"] = json::array();
    for (const auto& c : d.colors)
        j["colors"].push_back({{"label", c.label}, {"rho", vec_json(c.rho)}, {"m", c.m.get_si()}, {"zeta", c.zeta}});
    json f;
    f["prefactor"] = d.f.prefactor.str();
    f["factors"] = json::array();
    for (const auto& fa : d.f.factors)
        f["factors"].push_back({{"c", fa.c.str()}, {"a", vec_json(fa.a)}, {"mult", fa.mult}});
    j["f"] = f;
    j["kappa"] = d.kappa;
    j["basis"] = d.basis;
    j["group"] = d.group;
    j["type"] = d.type;
    return j.dump();
}

CombinatorialData data_from_json(const std::string& text) {
    try {
        json j = json::parse(text);
        CombinatorialData d;
        d.rank = j.at("rank").get<int>();
        d.dim = j.at("dim").get<int>();
        for (const auto& s : j.at("sigma")) d.sigma.push_back(vec_from(s));
        for (const auto& c : j.at("colors"))
            d.colors.push_back(Color{c.at("label").get<std::string>(), vec_from(c.at("rho")), Int(c.at("m").get<long>()),
                                     c.at("zeta").get<std::vector<std::string>>()});
        const auto& f = j.at("f");
        d.f.prefactor = Rat::parse(f.at("prefactor").get<std::string>());
        for (const auto& fa : f.at("factors"))
            d.f.factors.push_back({Rat::parse(fa.at("c").get<std::string>()), vec_from(fa.at("a")), fa.at("mult").get<int>()});
        d.kappa = j.at("kappa").get<std::string>();
        d.basis = j.at("basis").get<std::vector<std::string>>();
        d.group = j.at("group").get<std::string>();
        d.type = j.at("type").get<std::string>();
        return d;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("combinatorial data JSON: ") + e.what());
    }
}

} // namespace sphfano
