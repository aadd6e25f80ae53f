#pragma once

/**
 * @file rat.hpp
 * @brief Arbitrary precision integers and rationals, small vectors and matrices.
 *
 * Rat is a thin value wrapper over GMP's mpq_class that keeps the
 * canonical form (reduced, positive denominator) and adds the text
 * format "p/q" (or "p" when q = 1).
 */

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sphfano {

using Int = mpz_class;

class Rat {
public:
    Rat() : q_(0) {}
    Rat(int v) : q_(v) {}
    Rat(long v) : q_(v) {}
    Rat(long long v) : q_(static_cast<long>(v)) {}
    Rat(const Int& v) : q_(v) {}
    Rat(const Int& num, const Int& den);
    explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    /// Parses "p", "-p" or "p/q". Throws Error(ParseError) on malformed text.
    static Rat parse(std::string_view text);

    const mpq_class& value() const { return q_; }
    Int num() const { return q_.get_num(); }
    Int den() const { return q_.get_den(); }

    bool is_integer() const { return q_.get_den() == 1; }
    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }

    Int floor() const;
    Int ceil() const;
    Rat abs() const { return Rat(::abs(q_)); }

    std::string str() const;

    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }

    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    mpq_class q_;
};

using VecQ = std::vector<Rat>;
using VecZ = std::vector<Int>;

std::string to_string(const Int& v);
std::string to_string(const VecQ& v);  // "(p/q,r/s)"
std::string to_string(const VecZ& v);  // "(a,b)"
VecQ parse_vec(std::string_view text); // "(p/q,r/s)" or "p/q,r/s"

VecQ to_q(const VecZ& v);
Rat dot(const VecZ& a, const VecQ& x);
Rat dot(const VecQ& a, const VecQ& x);
Int dot(const VecZ& a, const VecZ& b);
bool lex_less(const VecQ& a, const VecQ& b);

/// Integer matrix, row-major.
struct MatZ {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Int> a;

    MatZ() = default;
    MatZ(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Int(0)) {}
    MatZ(std::initializer_list<std::initializer_list<long>> init);

    static MatZ identity(std::size_t n);

    Int& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    MatZ transpose() const;
    friend bool operator==(const MatZ&, const MatZ&) = default;
};

MatZ operator*(const MatZ& x, const MatZ& y);
VecZ apply(const MatZ& g, const VecZ& v);
VecQ apply(const MatZ& g, const VecQ& v);
Int det(const MatZ& m);                 // square, size <= 3
MatZ inverse_unimodular(const MatZ& m); // square 1x1 or 2x2 with det +-1
std::string to_string(const MatZ& m);   // "[[a,b],[c,d]]"

} // namespace sphfano
