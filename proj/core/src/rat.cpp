#include "sphfano/rat.hpp"

#include "sphfano/error.hpp"

#include <cctype>
#include <sstream>

namespace sphfano {

const char* code_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::OriginNotInterior: return "OriginNotInterior";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::ParamsOutOfDomain: return "ParamsOutOfDomain";
    case ErrorCode::NotReflexive: return "NotReflexive";
    case ErrorCode::BoundTooTight: return "BoundTooTight";
    case ErrorCode::RelationRankDeficit: return "RelationRankDeficit";
    case ErrorCode::NonIntegerDegree: return "NonIntegerDegree";
    case ErrorCode::TorsionInPicard: return "TorsionInPicard";
    case ErrorCode::MappingConflict: return "MappingConflict";
    case ErrorCode::MalformedExpectedFile: return "MalformedExpectedFile";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

bool is_internal(ErrorCode c) {
    return c == ErrorCode::BoundTooTight || c == ErrorCode::NonIntegerDegree ||
           c == ErrorCode::RelationRankDeficit || c == ErrorCode::TorsionInPicard;
}

Rat::Rat(const Int& num, const Int& den) {
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw Error(ErrorCode::DegenerateInput, "division by zero");
    q_ /= o.q_;
    return *this;
}

namespace {

bool parse_int(std::string_view s, Int& out) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (std::size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
    std::string t(s);
    if (t[0] == '+') t.erase(0, 1);
    return out.set_str(t, 10) == 0;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace

Rat Rat::parse(std::string_view text) {
    text = trim(text);
    auto slash = text.find('/');
    Int n, d(1);
    if (slash == std::string_view::npos) {
        if (!parse_int(text, n)) throw Error(ErrorCode::ParseError, "bad rational '" + std::string(text) + "'");
    } else {
        if (!parse_int(trim(text.substr(0, slash)), n) || !parse_int(trim(text.substr(slash + 1)), d) || d == 0)
            throw Error(ErrorCode::ParseError, "bad rational '" + std::string(text) + "'");
    }
    return Rat(n, d);
}

Int Rat::floor() const {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

Int Rat::ceil() const {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

std::string Rat::str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string to_string(const Int& v) { return v.get_str(); }

std::string to_string(const VecQ& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s + ")";
}

std::string to_string(const VecZ& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].get_str();
    }
    return s + ")";
}

VecQ parse_vec(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '(') {
        if (text.back() != ')') throw Error(ErrorCode::ParseError, "unbalanced vector '" + std::string(text) + "'");
        text = text.substr(1, text.size() - 2);
    }
    VecQ out;
    while (true) {
        auto comma = text.find(',');
        out.push_back(Rat::parse(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

VecQ to_q(const VecZ& v) {
    VecQ out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

Rat dot(const VecZ& a, const VecQ& x) {
    mpq_class s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += mpq_class(a[i]) * x[i].value();
    return Rat(s);
}

Rat dot(const VecQ& a, const VecQ& x) {
    mpq_class s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i].value() * x[i].value();
    return Rat(s);
}

Int dot(const VecZ& a, const VecZ& b) {
    Int s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool lex_less(const VecQ& a, const VecQ& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MatZ::MatZ(std::initializer_list<std::initializer_list<long>> init) {
    rows = init.size();
    cols = rows ? init.begin()->size() : 0;
    for (const auto& row : init) {
        if (row.size() != cols) throw Error(ErrorCode::ParseError, "ragged matrix literal");
        for (long v : row) a.emplace_back(v);
    }
}

MatZ MatZ::identity(std::size_t n) {
    MatZ m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

MatZ MatZ::transpose() const {
    MatZ t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
}

MatZ operator*(const MatZ& x, const MatZ& y) {
    MatZ z(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            if (x(i, k) == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) z(i, j) += x(i, k) * y(k, j);
        }
    return z;
}

VecZ apply(const MatZ& g, const VecZ& v) {
    VecZ out(g.rows, Int(0));
    for (std::size_t i = 0; i < g.rows; ++i)
        for (std::size_t j = 0; j < g.cols; ++j) out[i] += g(i, j) * v[j];
    return out;
}

VecQ apply(const MatZ& g, const VecQ& v) {
    VecQ out;
    out.reserve(g.rows);
    for (std::size_t i = 0; i < g.rows; ++i) {
        mpq_class s(0);
        for (std::size_t j = 0; j < g.cols; ++j) s += mpq_class(g(i, j)) * v[j].value();
        out.emplace_back(s);
    }
    return out;
}

Int det(const MatZ& m) {
    if (m.rows != m.cols) throw Error(ErrorCode::DegenerateInput, "det of non-square matrix");
    switch (m.rows) {
    case 0: return 1;
    case 1: return m(0, 0);
    case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
        return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
               m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
               m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default: throw Error(ErrorCode::DegenerateInput, "det only implemented up to 3x3");
    }
}

MatZ inverse_unimodular(const MatZ& m) {
    Int d = det(m);
    if (d != 1 && d != -1) throw Error(ErrorCode::DegenerateInput, "matrix is not unimodular");
    if (m.rows == 1) return MatZ{{d.get_si()}};
    MatZ inv(2, 2);
    inv(0, 0) = m(1, 1) * d;
    inv(0, 1) = -m(0, 1) * d;
    inv(1, 0) = -m(1, 0) * d;
    inv(1, 1) = m(0, 0) * d;
    return inv;
}

std::string to_string(const MatZ& m) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (i) os << ",";
        os << "[";
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (j) os << ",";
            os << m(i, j).get_str();
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

} // namespace sphfano
