#include "sphfano/invariants.hpp"

#include "sphfano/error.hpp"

#include <algorithm>

namespace sphfano::invariants {

using geometry::RationalPolytope;

const char* kvalue_name(KValue v) {
    switch (v) {
    case KValue::Stable: return "Stable";
    case KValue::SemistableNotStable: return "SemistableNotStable";
    case KValue::Unstable: return "Unstable";
    }
    return "?";
}

namespace {

void require_reflexive(const CombinatorialData& d, const RationalPolytope& p) {
    auto v = check_reflexive(d, p);
    if (!v.ok)
        throw Error(ErrorCode::NotReflexive, v.violations.front().condition + ": " + v.violations.front().detail);
}

DivisorBasis split(const CombinatorialData& d, const RationalPolytope& p) {
    DivisorBasis b;
    b.colors = d.colors;
    auto pts = color_points(d);
    for (const auto& v : p.vertices) {
        if (std::find(pts.begin(), pts.end(), v) != pts.end()) continue;
        if (valuation_cone_position(d, v) == ConePosition::Outside) continue;
        VecZ z;
        for (const auto& c : v) z.push_back(c.num());
        b.g_stable.push_back(std::move(z));
    }
    return b;
}

PicardPresentation present(const CombinatorialData& d, const DivisorBasis& b) {
    std::size_t n = b.colors.size() + b.g_stable.size();
    std::size_t r = static_cast<std::size_t>(d.rank);
    PicardPresentation out;
    out.relations = MatZ(n, r);
    std::size_t row = 0;
    for (const auto& c : b.colors) {
        for (std::size_t j = 0; j < r; ++j) out.relations(row, j) = c.rho[j];
        ++row;
    }
    for (const auto& v : b.g_stable) {
        for (std::size_t j = 0; j < r; ++j) out.relations(row, j) = v[j];
        ++row;
    }
    out.snf = geometry::snf(out.relations);
    for (std::size_t i = 0; i < r; ++i) {
        if (i >= n || out.snf.S(i, i) == 0)
            throw Error(ErrorCode::RelationRankDeficit, "relation matrix has rank below " + std::to_string(r));
        if (out.snf.S(i, i) != 1)
            throw Error(ErrorCode::TorsionInPicard, "invariant factor " + out.snf.S(i, i).get_str());
    }
    out.free_rank = static_cast<int>(n - r);
    return out;
}

} // namespace

DivisorBasis divisor_basis(const CombinatorialData& data, const RationalPolytope& p) {
    require_reflexive(data, p);
    return split(data, p);
}

PicardPresentation picard(const CombinatorialData& data, const RationalPolytope& p) {
    return present(data, divisor_basis(data, p));
}

int picard_rank(const CombinatorialData& data, const RationalPolytope& p) { return picard(data, p).free_rank; }

long fano_index(const CombinatorialData& data, const RationalPolytope& p) {
    DivisorBasis b = divisor_basis(data, p);
    PicardPresentation pic = present(data, b);
    std::size_t n = b.colors.size() + b.g_stable.size();
    VecZ anti;
    for (const auto& c : b.colors) anti.push_back(c.m);
    for (std::size_t i = 0; i < b.g_stable.size(); ++i) anti.emplace_back(1);
    Int g(0);
    for (std::size_t i = static_cast<std::size_t>(data.rank); i < n; ++i) {
        Int ci(0);
        for (std::size_t j = 0; j < n; ++j) ci += pic.snf.U(i, j) * anti[j];
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ci.get_mpz_t());
    }
    if (g == 0) throw Error(ErrorCode::RelationRankDeficit, "anticanonical class vanishes");
    return g.get_si();
}

std::pair<RationalPolytope, std::string> moment_polytope(const CombinatorialData& data, const RationalPolytope& p) {
    require_reflexive(data, p);
    return {geometry::dual(p), data.kappa};
}

long degree(const CombinatorialData& data, const RationalPolytope& p) {
    require_reflexive(data, p);
    Rat v = geometry::integrate(geometry::dual(p), data.f.expand(data.rank));
    for (int i = 2; i <= data.dim; ++i) v *= Rat(i);
    if (!v.is_integer() || v.sign() <= 0)
        throw Error(ErrorCode::NonIntegerDegree, "degree evaluates to " + v.str() + " for " + geometry::to_string(p));
    return v.num().get_si();
}

VecQ dh_barycenter(const CombinatorialData& data, const RationalPolytope& p) {
    require_reflexive(data, p);
    RationalPolytope q = geometry::dual(p);
    geometry::Polynomial f = data.f.expand(data.rank);
    VecQ b;
    for (int i = 0; i < data.rank; ++i) b.push_back(geometry::integrate(q, geometry::Polynomial::variable(data.rank, i) * f));
    return b;
}

KValue classify(const std::vector<VecZ>& sigma, const VecQ& b) {
    bool zero = std::all_of(b.begin(), b.end(), [](const Rat& x) { return x.is_zero(); });
    if (sigma.empty()) return zero ? KValue::Stable : KValue::Unstable;
    if (zero) return KValue::SemistableNotStable;
    if (sigma.size() == 1) {
        const VecZ& s = sigma[0];
        if (b.size() == 2 && geometry::cross(to_q(s), b).sign() != 0) return KValue::Unstable;
        return dot(s, b).sign() > 0 ? KValue::Stable : KValue::Unstable;
    }
    // b = t1 s1 + t2 s2
    VecQ s1 = to_q(sigma[0]), s2 = to_q(sigma[1]);
    Rat det = geometry::cross(s1, s2);
    Rat t1 = geometry::cross(b, s2) / det;
    Rat t2 = geometry::cross(s1, b) / det;
    if (t1.sign() < 0 || t2.sign() < 0) return KValue::Unstable;
    if (t1.sign() == 0 || t2.sign() == 0) return KValue::SemistableNotStable;
    return KValue::Stable;
}

KVerdict k_verdict(const CombinatorialData& data, const RationalPolytope& p) {
    VecQ b = dh_barycenter(data, p);
    return {classify(data.sigma, b), b};
}

} // namespace sphfano::invariants
