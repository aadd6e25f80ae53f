#include "sphfano/enumeration.hpp"

#include "sphfano/error.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

namespace sphfano::enumeration {

using geometry::RationalPolytope;

void EnumConfig::validate() const {
    if (box_bound < 4) throw Error(ErrorCode::ParamsOutOfDomain, "box bound must be at least 4");
    if (max_vertices < 6) throw Error(ErrorCode::ParamsOutOfDomain, "max_vertices must be at least 6");
}

EnumConfig EnumConfig::from_env() {
    EnumConfig cfg;
    if (const char* s = std::getenv("SPHFANO_BOX")) {
        char* end = nullptr;
        long b = std::strtol(s, &end, 10);
        if (*s == '\0' || *end != '\0') throw Error(ErrorCode::ParseError, "SPHFANO_BOX is not an integer");
        cfg.box_bound = static_cast<int>(b);
    }
    cfg.validate();
    return cfg;
}

// ---------------------------------------------------------------- canonical forms

namespace {

bool lex_poly_less(const RationalPolytope& a, const RationalPolytope& b) { return a.vertices < b.vertices; }

RationalPolytope negate(const RationalPolytope& p) { return geometry::transform(p, MatZ{{-1}}); }

CanonicalPolytope finite_form(const SymmetryGroup& g, const RationalPolytope& p) {
    CanonicalPolytope best{p, 0};
    bool first = true;
    for (const auto& e : g.elements) {
        RationalPolytope img = geometry::transform(p, e.g);
        if (img == p) ++best.stabilizer_size;
        if (first || lex_poly_less(img, best.polytope)) best.polytope = std::move(img);
        first = false;
    }
    if (best.stabilizer_size == 0) best.stabilizer_size = 1;
    return best;
}

CanonicalPolytope unimodular_form(const RationalPolytope& p) {
    if (p.rank == 1) {
        RationalPolytope n = negate(p);
        if (n == p) return {p, 2};
        return {lex_poly_less(n, p) ? n : p, 1};
    }
    const auto& v = p.vertices;
    int n = static_cast<int>(v.size());
    Int l(1);
    for (const auto& x : v)
        for (const auto& c : x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.value().get_den_mpz_t());
    std::vector<RationalPolytope> cands;
    for (int i = 0; i < n; ++i)
        for (int nb : {(i + 1) % n, (i + n - 1) % n}) {
            MatZ a(2, 2);
            for (int r = 0; r < 2; ++r) {
                a(r, 0) = (v[i][r] * Rat(l)).num();
                a(r, 1) = (v[nb][r] * Rat(l)).num();
            }
            cands.push_back(geometry::transform(p, geometry::hermite_left(a)));
        }
    auto best = *std::min_element(cands.begin(), cands.end(), lex_poly_less);
    int stab = static_cast<int>(std::count(cands.begin(), cands.end(), best));
    return {best, stab};
}

CanonicalPolytope shear_form(const SymmetryGroup& g, const RationalPolytope& p) {
    if (p.rank != 2 || g.fixed != VecZ{Int(1), Int(0)})
        throw Error(ErrorCode::RankMismatch, "shear class is implemented for rank 2 with fixed vector (1,0)");
    // candidate images share max|x| only when k minimizes h(k) = max_v |x_v + k y_v|
    Rat xmax(0), ymin(-1);
    for (const auto& v : p.vertices) {
        xmax = std::max(xmax, v[0].abs());
        if (!v[1].is_zero() && (ymin < Rat(0) || v[1].abs() < ymin)) ymin = v[1].abs();
    }
    long K = (Rat(2) * xmax / ymin).ceil().get_si() + 1;
    auto h = [&p](long k) {
        Rat m(0);
        for (const auto& v : p.vertices) m = std::max(m, (v[0] + Rat(k) * v[1]).abs());
        return m;
    };
    Rat hbest = h(0);
    for (long k = -K; k <= K; ++k) hbest = std::min(hbest, h(k));
    CanonicalPolytope best{p, 0};
    bool first = true;
    for (long k = -K; k <= K; ++k) {
        bool minimal = h(k) == hbest;
        for (long eps : {1L, -1L}) {
            if (eps == -1 && !g.reflection) continue;
            RationalPolytope img = geometry::transform(p, MatZ{{1, k}, {0, eps}});
            if (img == p) ++best.stabilizer_size;
            if (minimal && (first || lex_poly_less(img, best.polytope))) {
                best.polytope = std::move(img);
                first = false;
            }
        }
    }
    return best;
}

} // namespace

CanonicalPolytope normal_form(const CombinatorialData& data, const RationalPolytope& p) {
    if (p.rank != data.rank) throw Error(ErrorCode::RankMismatch, "polytope rank differs from data rank");
    switch (data.symmetry.kind) {
    case GroupKind::Trivial: return {p, 1};
    case GroupKind::FiniteList: return finite_form(data.symmetry, p);
    case GroupKind::FullUnimodular: return unimodular_form(p);
    case GroupKind::ShearClass: return shear_form(data.symmetry, p);
    }
    return {p, 1};
}

CanonicalPolytope canonical_form(const CombinatorialData& data, const RationalPolytope& p) {
    auto v = check_reflexive(data, p);
    if (!v.ok)
        throw Error(ErrorCode::NotReflexive, v.violations.front().condition + ": " + v.violations.front().detail);
    return normal_form(data, p);
}

// ---------------------------------------------------------------- search

namespace {

std::vector<CanonicalPolytope> dedup(const CombinatorialData& data, const std::vector<RationalPolytope>& found) {
    std::map<std::vector<VecQ>, CanonicalPolytope> by_form;
    for (const auto& p : found) {
        auto c = normal_form(data, p);
        by_form.emplace(c.polytope.vertices, std::move(c));
    }
    std::vector<CanonicalPolytope> out;
    for (auto& [k, c] : by_form) out.push_back(std::move(c));
    return out;
}

/// Box certification on the class representatives. Infinite symmetry groups put
/// other members of every orbit on the box boundary, so raw hits are not checked.
void certify(const std::vector<CanonicalPolytope>& out, const EnumConfig& cfg) {
    for (const auto& c : out) {
        const auto& p = c.polytope;
        for (const auto& v : p.vertices)
            for (const auto& x : v)
                if (x.abs() > Rat(cfg.box_bound - 1))
                    throw Error(ErrorCode::BoundTooTight,
                                "accepted polytope " + geometry::to_string(p) + " reaches the search box");
        if (static_cast<int>(p.vertices.size()) > cfg.max_vertices - 1)
            throw Error(ErrorCode::BoundTooTight, "accepted polytope " + geometry::to_string(p) + " has too many vertices");
    }
}

struct Pt {
    std::int64_t x = 0, y = 0;
};

std::int64_t cross64(const Pt& a, const Pt& b) { return a.x * b.y - a.y * b.x; }
Pt sub64(const Pt& a, const Pt& b) { return {a.x - b.x, a.y - b.y}; }
int half(const Pt& p) { return (p.y < 0 || (p.y == 0 && p.x < 0)) ? 1 : 0; }

bool angle_less(const Pt& a, const Pt& b) {
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return cross64(a, b) > 0;
}

/// Candidate vertices for a rank-2 search, in coordinates scaled by `scale`.
struct Candidates {
    std::int64_t scale = 1;
    std::vector<Pt> pts;
    std::vector<VecQ> exact;
};

std::int64_t color_scale(const CombinatorialData& d) {
    std::int64_t l = 1;
    for (const auto& c : d.colors) l = std::lcm(l, c.m.get_si());
    return l;
}

void add_candidate(Candidates& c, const VecQ& x) {
    Pt p{(x[0] * Rat(c.scale)).num().get_si(), (x[1] * Rat(c.scale)).num().get_si()};
    if (p.x == 0 && p.y == 0) return;
    for (const auto& q : c.pts)
        if (q.x == p.x && q.y == p.y) return;
    c.pts.push_back(p);
    c.exact.push_back(x);
}

/// Local feasibility of a directed edge u -> w (counterclockwise boundary).
class EdgeOracle {
public:
    EdgeOracle(const CombinatorialData& d, const Candidates& c)
        : d_(d), c_(c), colors_(color_points(d)), memo_(c.pts.size() * c.pts.size(), -1) {}

    bool ok(std::size_t i, std::size_t j) {
        auto& m = memo_[i * c_.pts.size() + j];
        if (m < 0) m = compute(c_.exact[i], c_.exact[j]) ? 1 : 0;
        return m == 1;
    }

private:
    bool compute(const VecQ& u, const VecQ& w) const {
        VecQ e{w[0] - u[0], w[1] - u[1]};
        std::vector<int> on;
        for (std::size_t k = 0; k < colors_.size(); ++k) {
            const VecQ& x = colors_[k];
            int s = geometry::cross(e, {x[0] - u[0], x[1] - u[1]}).sign();
            if (s < 0) return false;
            if (s == 0) {
                Rat t = dot(e, {x[0] - u[0], x[1] - u[1]});
                if (t < Rat(0) || t > dot(e, e)) return false;
                on.push_back(static_cast<int>(k));
            }
        }
        if (!cone_meets_interior(d_, {u, w})) return true;
        std::set<VecZ> rhos;
        std::vector<VecZ> basis;
        for (int k : on) {
            if (colors_[k] != u && colors_[k] != w) return false;
            if (!rhos.insert(d_.colors[k].rho).second) return false;
            basis.push_back(d_.colors[k].rho);
        }
        for (const VecQ* x : {&u, &w}) {
            if (std::find(colors_.begin(), colors_.end(), *x) != colors_.end()) continue;
            basis.push_back({x->at(0).num(), x->at(1).num()});
        }
        return geometry::is_lattice_basis(basis);
    }

    const CombinatorialData& d_;
    const Candidates& c_;
    std::vector<VecQ> colors_;
    std::vector<signed char> memo_;
};

class Walker {
public:
    Walker(const CombinatorialData& d, const Candidates& c, int max_vertices)
        : d_(d), c_(c), edges_(d, c), maxv_(max_vertices) {}

    std::vector<RationalPolytope> run() {
        for (std::size_t s = 0; s < c_.pts.size(); ++s) {
            path_ = {s};
            extend();
        }
        return std::move(found_);
    }

private:
    bool convex(const Pt& a, const Pt& b, const Pt& c) const { return cross64(sub64(b, a), sub64(c, b)) > 0; }

    void extend() {
        const auto& P = c_.pts;
        std::size_t s = path_.front(), last = path_.back();
        std::size_t n = path_.size();
        if (n >= 3 && cross64(P[last], P[s]) > 0 && convex(P[path_[n - 2]], P[last], P[s]) &&
            convex(P[last], P[s], P[path_[1]]) && edges_.ok(last, s))
            close();
        if (static_cast<int>(n) >= maxv_) return;
        for (std::size_t c = last + 1; c < P.size(); ++c) {
            if (cross64(P[last], P[c]) <= 0) continue;
            if (n >= 2 && !convex(P[path_[n - 2]], P[last], P[c])) continue;
            // the rest of the walk must still turn back to the start
            if (n >= 2 && cross64(sub64(P[c], P[last]), sub64(P[s], P[last])) <= 0) continue;
            if (!edges_.ok(last, c)) continue;
            path_.push_back(c);
            extend();
            path_.pop_back();
        }
    }

    void close() {
        std::vector<VecQ> vs;
        for (auto i : path_) vs.push_back(c_.exact[i]);
        RationalPolytope p = geometry::convex_hull(vs, 2);
        if (check_reflexive(d_, p).ok) found_.push_back(std::move(p));
    }

    const CombinatorialData& d_;
    const Candidates& c_;
    EdgeOracle edges_;
    int maxv_;
    std::vector<std::size_t> path_;
    std::vector<RationalPolytope> found_;
};

} // namespace

std::vector<CanonicalPolytope> enumerate_rank1(const CombinatorialData& data, const EnumConfig& cfg) {
    if (data.rank != 1) throw Error(ErrorCode::RankMismatch, "enumerate_rank1 needs rank 1 data");
    cfg.validate();
    std::set<Rat> cands;
    for (long x = -cfg.box_bound; x <= cfg.box_bound; ++x)
        if (x != 0 && valuation_cone_position(data, {Rat(x)}) != ConePosition::Outside) cands.insert(Rat(x));
    for (const auto& c : color_points(data))
        if (!c[0].is_zero()) cands.insert(c[0]);
    std::vector<RationalPolytope> found;
    for (const auto& lo : cands) {
        if (lo >= Rat(0)) break;
        for (const auto& hi : cands) {
            if (hi <= Rat(0)) continue;
            RationalPolytope p{1, {{lo}, {hi}}};
            if (check_reflexive(data, p).ok) found.push_back(p);
        }
    }
    auto out = dedup(data, found);
    certify(out, cfg);
    return out;
}

std::vector<CanonicalPolytope> enumerate_rank2(const CombinatorialData& data, const EnumConfig& cfg) {
    if (data.rank != 2) throw Error(ErrorCode::RankMismatch, "enumerate_rank2 needs rank 2 data");
    cfg.validate();
    Candidates c;
    c.scale = color_scale(data);
    for (const auto& x : color_points(data)) add_candidate(c, x);
    for (long x = -cfg.box_bound; x <= cfg.box_bound; ++x)
        for (long y = -cfg.box_bound; y <= cfg.box_bound; ++y) {
            VecQ p{Rat(x), Rat(y)};
            if (valuation_cone_position(data, p) != ConePosition::Outside) add_candidate(c, p);
        }
    std::vector<std::size_t> order(c.pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&c](std::size_t a, std::size_t b) {
        if (angle_less(c.pts[a], c.pts[b])) return true;
        if (angle_less(c.pts[b], c.pts[a])) return false;
        return c.pts[a].x * c.pts[a].x + c.pts[a].y * c.pts[a].y < c.pts[b].x * c.pts[b].x + c.pts[b].y * c.pts[b].y;
    });
    Candidates sorted;
    sorted.scale = c.scale;
    for (auto i : order) {
        sorted.pts.push_back(c.pts[i]);
        sorted.exact.push_back(c.exact[i]);
    }
    auto found = Walker(data, sorted, cfg.max_vertices).run();
    auto out = dedup(data, found);
    certify(out, cfg);
    return out;
}

std::vector<CanonicalPolytope> enumerate(const CombinatorialData& data, const EnumConfig& cfg) {
    if (data.rank == 1) return enumerate_rank1(data, cfg);
    if (data.rank == 2) return enumerate_rank2(data, cfg);
    throw Error(ErrorCode::RankMismatch, "enumeration needs rank 1 or 2");
}

// ---------------------------------------------------------------- oracle

namespace {

bool convex_position(const std::vector<Pt>& s) {
    // every point must be a strict hull vertex
    std::vector<Pt> pts = s;
    std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    std::vector<Pt> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross64(sub64(hull[k - 1], hull[k - 2]), sub64(pts[i], hull[k - 2])) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && cross64(sub64(hull[k - 1], hull[k - 2]), sub64(pts[i - 1], hull[k - 2])) <= 0) --k;
        hull[k++] = pts[i - 1];
    }
    return k - 1 == pts.size() || (pts.size() <= 2);
}

bool origin_inside(const std::vector<Pt>& s) {
    // strict: every hull edge has the origin strictly on its left
    std::vector<Pt> pts = s;
    std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return angle_less(a, b); });
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (cross64(pts[i], pts[(i + 1) % pts.size()]) <= 0) return false;
    return true;
}

} // namespace

std::vector<CanonicalPolytope> brute_force_oracle(const CombinatorialData& data, int box, int max_vertices) {
    if (data.rank != 2) throw Error(ErrorCode::RankMismatch, "brute_force_oracle needs rank 2 data");
    Candidates c;
    c.scale = color_scale(data);
    for (long x = -box; x <= box; ++x)
        for (long y = -box; y <= box; ++y) add_candidate(c, {Rat(x), Rat(y)});
    for (const auto& x : color_points(data)) add_candidate(c, x);

    std::vector<RationalPolytope> found;
    std::vector<std::size_t> chosen;
    std::vector<Pt> pts;
    auto visit = [&](auto&& self, std::size_t next) -> void {
        if (pts.size() >= 3 && origin_inside(pts)) {
            std::vector<VecQ> vs;
            for (auto i : chosen) vs.push_back(c.exact[i]);
            RationalPolytope p = geometry::convex_hull(vs, 2);
            if (check_reflexive(data, p).ok) found.push_back(std::move(p));
        }
        if (static_cast<int>(pts.size()) >= max_vertices) return;
        for (std::size_t i = next; i < c.pts.size(); ++i) {
            pts.push_back(c.pts[i]);
            chosen.push_back(i);
            if (convex_position(pts)) self(self, i + 1);
            pts.pop_back();
            chosen.pop_back();
        }
    };
    visit(visit, 0);
    return dedup(data, found);
}

} // namespace sphfano::enumeration
