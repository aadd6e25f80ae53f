#include "sphfano/geometry.hpp"

#include "sphfano/error.hpp"

#include <algorithm>
#include <sstream>

namespace sphfano::geometry {

// ---------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(int nvars, const Rat& c) {
    Polynomial p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
}

Polynomial Polynomial::variable(int nvars, int i) {
    Polynomial p(nvars);
    Exponent e(nvars, 0);
    e[i] = 1;
    p.add_term(e, Rat(1));
    return p;
}

Polynomial Polynomial::affine(const Rat& c, const VecQ& a) {
    int n = static_cast<int>(a.size());
    Polynomial p = constant(n, c);
    for (int i = 0; i < n; ++i) p += variable(n, i) * a[i];
    return p;
}

void Polynomial::add_term(const Exponent& e, const Rat& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

int Polynomial::degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int k : e) s += k;
        d = std::max(d, s);
    }
    return d;
}

Rat Polynomial::eval(const VecQ& x) const {
    mpq_class total(0);
    for (const auto& [e, c] : terms_) {
        mpq_class t = c.value();
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k) t *= x[i].value();
        total += t;
    }
    return Rat(total);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (terms_.empty()) nvars_ = o.nvars_;
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rat& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out(std::max(a.nvars_, b.nvars_));
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            Polynomial::Exponent e(out.nvars_, 0);
            for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
            for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

Polynomial Polynomial::pow(int k) const {
    Polynomial r = constant(nvars_, Rat(1));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

Polynomial Polynomial::compose(const std::vector<Polynomial>& subs) const {
    int m = subs.empty() ? 0 : subs[0].nvars();
    Polynomial out(m);
    // powers[i][k] = subs[i]^k, built lazily
    std::vector<std::vector<Polynomial>> powers(subs.size());
    for (const auto& [e, c] : terms_) {
        Polynomial t = constant(m, c);
        for (int i = 0; i < nvars_; ++i) {
            auto& pw = powers[i];
            if (pw.empty()) pw.push_back(constant(m, Rat(1)));
            while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * subs[i]);
            if (e[i]) t = t * pw[e[i]];
        }
        out += t;
    }
    return out;
}

std::string to_string(const Polynomial& f) {
    if (f.terms().empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        if (!first) os << " + ";
        first = false;
        os << c.str();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << "*x" << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- polytopes

Rat cross(const VecQ& a, const VecQ& b) { return a[0] * b[1] - a[1] * b[0]; }

namespace {

VecQ sub(const VecQ& a, const VecQ& b) { return {a[0] - b[0], a[1] - b[1]}; }

Int lcm_den(const VecQ& v) {
    Int l(1);
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.value().get_den_mpz_t());
    return l;
}

VecZ primitive_direction(const VecQ& v) {
    Int l = lcm_den(v);
    VecZ z;
    for (const auto& x : v) z.push_back((x * Rat(l)).num());
    return primitive(z);
}

} // namespace

std::string to_string(const RationalPolytope& p) {
    std::string s;
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        if (i) s += ";";
        s += sphfano::to_string(p.vertices[i]);
    }
    return s;
}

RationalPolytope parse_polytope(const std::string& text, int rank) {
    std::vector<VecQ> pts;
    std::string_view rest(text);
    while (!rest.empty()) {
        auto semi = rest.find(';');
        auto piece = rest.substr(0, semi);
        if (piece.find_first_not_of(" \t") != std::string_view::npos) {
            VecQ v = parse_vec(piece);
            if (static_cast<int>(v.size()) != rank)
                throw Error(ErrorCode::RankMismatch, "vertex " + std::string(piece) + " has wrong length");
            pts.push_back(std::move(v));
        }
        if (semi == std::string_view::npos) break;
        rest.remove_prefix(semi + 1);
    }
    return convex_hull(pts, rank);
}

RationalPolytope convex_hull(const std::vector<VecQ>& points, int rank) {
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != rank)
            throw Error(ErrorCode::RankMismatch, "point of wrong length in convex_hull");
    if (rank == 1) {
        if (points.empty()) throw Error(ErrorCode::DegenerateInput, "no points");
        auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                            [](const VecQ& a, const VecQ& b) { return a[0] < b[0]; });
        if ((*lo)[0] == (*hi)[0]) throw Error(ErrorCode::DegenerateInput, "all points equal");
        return RationalPolytope{1, {*lo, *hi}};
    }
    if (rank != 2) throw Error(ErrorCode::RankMismatch, "only ranks 1 and 2 are supported");
    std::vector<VecQ> pts = points;
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) throw Error(ErrorCode::DegenerateInput, "fewer than three distinct points");
    std::vector<VecQ> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(sub(hull[k - 1], hull[k - 2]), sub(pts[i], hull[k - 2])).sign() <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && cross(sub(hull[k - 1], hull[k - 2]), sub(pts[i - 1], hull[k - 2])).sign() <= 0) --k;
        hull[k++] = pts[i - 1];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) throw Error(ErrorCode::DegenerateInput, "points are collinear");
    return RationalPolytope{2, std::move(hull)};
}

std::vector<Facet> facets(const RationalPolytope& p) {
    std::vector<Facet> out;
    if (p.rank == 1) {
        out.push_back(Facet{{Int(-1)}, -p.vertices[0][0], {0}});
        out.push_back(Facet{{Int(1)}, p.vertices[1][0], {1}});
        return out;
    }
    int n = static_cast<int>(p.vertices.size());
    for (int i = 0; i < n; ++i) {
        const VecQ& a = p.vertices[i];
        const VecQ& b = p.vertices[(i + 1) % n];
        VecQ d = sub(b, a);
        VecZ normal = primitive_direction({d[1], -d[0]});
        out.push_back(Facet{normal, dot(normal, a), {i, (i + 1) % n}});
    }
    return out;
}

bool contains(const RationalPolytope& p, const VecQ& x, bool strict) {
    for (const auto& f : facets(p)) {
        int c = (dot(f.outward_normal, x) <=> f.support) < 0 ? -1 : (dot(f.outward_normal, x) == f.support ? 0 : 1);
        if (c > 0 || (strict && c == 0)) return false;
    }
    return true;
}

RationalPolytope dual(const RationalPolytope& p) {
    VecQ origin(p.rank, Rat(0));
    if (!contains(p, origin, true)) throw Error(ErrorCode::OriginNotInterior, "dual requires 0 in the interior");
    std::vector<VecQ> pts;
    for (const auto& f : facets(p)) {
        VecQ y;
        for (const auto& c : f.outward_normal) y.push_back(-Rat(c) / f.support);
        pts.push_back(std::move(y));
    }
    return convex_hull(pts, p.rank);
}

std::vector<VecZ> lattice_points(const RationalPolytope& p) {
    std::vector<VecZ> out;
    VecQ lo = p.vertices[0], hi = p.vertices[0];
    for (const auto& v : p.vertices)
        for (int i = 0; i < p.rank; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    if (p.rank == 1) {
        for (Int x = lo[0].ceil(); x <= hi[0].floor(); ++x) out.push_back({x});
        return out;
    }
    for (Int x = lo[0].ceil(); x <= hi[0].floor(); ++x)
        for (Int y = lo[1].ceil(); y <= hi[1].floor(); ++y)
            if (contains(p, {Rat(x), Rat(y)}, false)) out.push_back({x, y});
    return out;
}

namespace {

// a! b! / (a+b+k)!
Rat factorial_ratio(int a, int b, int k) {
    Int num(1), den(1);
    for (int i = 2; i <= a; ++i) num *= i;
    for (int i = 2; i <= b; ++i) num *= i;
    for (int i = 2; i <= a + b + k; ++i) den *= i;
    return Rat(num, den);
}

} // namespace

Rat integrate_triangle(const VecQ& a, const VecQ& b, const VecQ& c, const Polynomial& f) {
    VecQ e1 = sub(b, a), e2 = sub(c, a);
    std::vector<Polynomial> subs;
    for (int k = 0; k < 2; ++k) subs.push_back(Polynomial::affine(a[k], {e1[k], e2[k]}));
    Polynomial g = f.compose(subs);
    Rat total(0);
    for (const auto& [e, coef] : g.terms()) total += coef * factorial_ratio(e[0], e[1], 2);
    return total * cross(e1, e2).abs();
}

Rat integrate(const RationalPolytope& p, const Polynomial& f) {
    if (p.rank == 1) {
        const Rat& lo = p.vertices[0][0];
        Rat len = p.vertices[1][0] - lo;
        Polynomial g = f.compose({Polynomial::affine(lo, {len})});
        Rat total(0);
        for (const auto& [e, coef] : g.terms()) total += coef / Rat(e[0] + 1);
        return total * len;
    }
    Rat total(0);
    const auto& v = p.vertices;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) total += integrate_triangle(v[0], v[i], v[i + 1], f);
    return total;
}

Rat area(const RationalPolytope& p) { return integrate(p, Polynomial::constant(p.rank, Rat(1))); }

RationalPolytope transform(const RationalPolytope& p, const MatZ& g) {
    std::vector<VecQ> img;
    img.reserve(p.vertices.size());
    for (const auto& v : p.vertices) img.push_back(sphfano::apply(g, v));
    return convex_hull(img, p.rank);
}

// ---------------------------------------------------------------- integers

Int content(const VecZ& v) {
    Int g(0);
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

VecZ primitive(const VecZ& v) {
    Int g = content(v);
    if (g == 0) throw Error(ErrorCode::ZeroVector, "primitive of the zero vector");
    VecZ out;
    for (const auto& x : v) out.push_back(x / g);
    return out;
}

bool is_lattice_basis(const std::vector<VecZ>& vs) {
    std::size_t r = vs.size();
    if (r == 0 || r > 3) return false;
    MatZ m(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        if (vs[i].size() != r) return false;
        for (std::size_t j = 0; j < r; ++j) m(i, j) = vs[i][j];
    }
    Int d = det(m);
    return d == 1 || d == -1;
}

namespace {

void swap_rows(MatZ& m, std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < m.cols; ++c) std::swap(m(i, c), m(j, c));
}
void swap_cols(MatZ& m, std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < m.rows; ++r) std::swap(m(r, i), m(r, j));
}
// row_i += k * row_j
void add_row(MatZ& m, std::size_t i, std::size_t j, const Int& k) {
    for (std::size_t c = 0; c < m.cols; ++c) m(i, c) += k * m(j, c);
}
void add_col(MatZ& m, std::size_t i, std::size_t j, const Int& k) {
    for (std::size_t r = 0; r < m.rows; ++r) m(r, i) += k * m(r, j);
}

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

} // namespace

Snf snf(const MatZ& a) {
    MatZ S = a, U = MatZ::identity(a.rows), V = MatZ::identity(a.cols);
    std::size_t n = std::min(a.rows, a.cols);
    for (std::size_t t = 0; t < n; ++t) {
        while (true) {
            // smallest nonzero entry of the trailing block becomes the pivot
            bool found = false;
            std::size_t pi = t, pj = t;
            for (std::size_t i = t; i < S.rows; ++i)
                for (std::size_t j = t; j < S.cols; ++j)
                    if (S(i, j) != 0 && (!found || abs(S(i, j)) < abs(S(pi, pj)))) {
                        found = true;
                        pi = i;
                        pj = j;
                    }
            if (!found) return {U, S, V};
            if (pi != t) { swap_rows(S, t, pi); swap_rows(U, t, pi); }
            if (pj != t) { swap_cols(S, t, pj); swap_cols(V, t, pj); }

            bool dirty = false;
            for (std::size_t i = t + 1; i < S.rows; ++i) {
                if (S(i, t) == 0) continue;
                Int q = floor_div(S(i, t), S(t, t));
                add_row(S, i, t, -q);
                add_row(U, i, t, -q);
                if (S(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < S.cols; ++j) {
                if (S(t, j) == 0) continue;
                Int q = floor_div(S(t, j), S(t, t));
                add_col(S, j, t, -q);
                add_col(V, j, t, -q);
                if (S(t, j) != 0) dirty = true;
            }
            if (dirty) continue;
            // divisibility of the remaining block by the pivot
            bool divides = true;
            for (std::size_t i = t + 1; i < S.rows && divides; ++i)
                for (std::size_t j = t + 1; j < S.cols; ++j)
                    if (S(i, j) % S(t, t) != 0) {
                        add_row(S, t, i, Int(1));
                        add_row(U, t, i, Int(1));
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (S(t, t) < 0) {
            for (std::size_t c = 0; c < S.cols; ++c) S(t, c) = -S(t, c);
            for (std::size_t c = 0; c < U.cols; ++c) U(t, c) = -U(t, c);
        }
    }
    return {U, S, V};
}

MatZ hermite_left(const MatZ& a) {
    if (a.rows != 2 || a.cols != 2 || det(a) == 0)
        throw Error(ErrorCode::DegenerateInput, "hermite_left needs an invertible 2x2 matrix");
    const Int& p = a(0, 0);
    const Int& q = a(1, 0);
    Int g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    MatZ G(2, 2);
    G(0, 0) = x;
    G(0, 1) = y;
    G(1, 0) = -q / g;
    G(1, 1) = p / g;
    MatZ H = G * a;
    if (H(1, 1) < 0) {
        G(1, 0) = -G(1, 0);
        G(1, 1) = -G(1, 1);
        H(1, 1) = -H(1, 1);
    }
    Int k = floor_div(H(0, 1), H(1, 1));
    G(0, 0) -= k * G(1, 0);
    G(0, 1) -= k * G(1, 1);
    return G;
}

} // namespace sphfano::geometry
