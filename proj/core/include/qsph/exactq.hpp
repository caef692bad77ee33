// Exact arithmetic over Q(q): integer polynomials, Laurent polynomials,
// reduced rational functions, quantum integers and the subring tests
// (A = Z[q,q^-1], A_infinity = regular at q = infinity).
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qsph {

using BigInt = mpz_class;
using BigRat = mpq_class;

// Dense polynomial in q with integer coefficients, ascending exponents,
// no stored leading zeros.  Internal carrier for RatFun.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(long c) { if (c != 0) c_.emplace_back(c); }
    explicit IntPoly(const BigInt& c) { if (c != 0) c_.push_back(c); }
    static IntPoly monomial(const BigInt& c, int exp);

    bool isZero() const { return c_.empty(); }
    int deg() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    int ord() const;  // lowest nonzero exponent, 0 for zero poly
    const BigInt& leading() const;
    const BigInt& coeff(int k) const;
    const std::vector<BigInt>& coeffs() const { return c_; }

    IntPoly operator-() const;
    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

    IntPoly mulScalar(const BigInt& s) const;
    IntPoly shifted(int k) const;  // multiply by q^k, k >= 0
    IntPoly reversed() const;      // q^deg * p(1/q)
    IntPoly divByQpow(int k) const;

    BigInt content() const;     // gcd of coefficients, sign of leading coeff
    IntPoly primitivePart() const;
    BigInt evalOne() const;
    BigRat evalRat(const BigRat& x) const;

    // Exact division; throws if remainder is nonzero.
    static IntPoly divExact(const IntPoly& a, const IntPoly& b);
    // True polynomial gcd over Z[q], positive leading coefficient.
    static IntPoly gcd(const IntPoly& a, const IntPoly& b);

    std::string str() const;

private:
    std::vector<BigInt> c_;
    void trim();
    friend class RatFun;
};

// Laurent polynomial in q over Z, sparse, sorted by exponent, no zeros.
class LaurentPoly {
public:
    LaurentPoly() = default;
    static LaurentPoly fromInt(long c);
    static LaurentPoly monomial(const BigInt& c, int exp);

    bool isZero() const { return t_.empty(); }
    int minExp() const;
    int maxExp() const;
    BigInt coeff(int exp) const;
    const std::vector<std::pair<int, BigInt>>& terms() const { return t_; }

    LaurentPoly operator-() const;
    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.t_ == b.t_; }

    LaurentPoly bar() const;  // q -> q^-1
    BigInt evalOne() const;

    std::string str() const;
    // Parses the output of str(); also accepts "coeff*q^exp" spellings.
    static LaurentPoly parse(const std::string& s);

private:
    std::vector<std::pair<int, BigInt>> t_;  // (exponent, coefficient)
    void insertTerm(int exp, const BigInt& c);
};

// Reduced fraction num/den of integer polynomials in q.  Canonical form:
// gcd(num, den) = 1 including integer content, den has positive leading
// coefficient, and q divides at most one of num, den.
class RatFun {
public:
    RatFun() = default;  // zero
    RatFun(long n) : num_(n), den_(1) { if (n == 0) den_ = IntPoly(); canonicalize(); }
    RatFun(const IntPoly& num, const IntPoly& den);
    static RatFun fromLaurent(const LaurentPoly& p);
    static RatFun q(int exp = 1);  // q^exp
    static RatFun fromInt(const BigInt& c);

    bool isZero() const { return num_.isZero(); }
    bool isOne() const;
    const IntPoly& num() const { return num_; }
    const IntPoly& den() const { return den_; }

    RatFun operator-() const;
    friend RatFun operator+(const RatFun& a, const RatFun& b);
    friend RatFun operator-(const RatFun& a, const RatFun& b);
    friend RatFun operator*(const RatFun& a, const RatFun& b);
    friend RatFun operator/(const RatFun& a, const RatFun& b);
    RatFun& operator+=(const RatFun& o) { *this = *this + o; return *this; }
    RatFun& operator-=(const RatFun& o) { *this = *this - o; return *this; }
    RatFun& operator*=(const RatFun& o) { *this = *this * o; return *this; }
    RatFun& operator/=(const RatFun& o) { *this = *this / o; return *this; }
    friend bool operator==(const RatFun& a, const RatFun& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

    RatFun inverse() const;
    RatFun pow(int k) const;
    RatFun bar() const;  // q -> q^-1

    // Valuation at infinity: deg(den) - deg(num).  Nonnegative iff regular
    // at q = infinity; throws on zero.
    int valuationAtInfinity() const;
    bool isRegularAtInfinity() const;
    bool isStrictlySmallAtInfinity() const;
    BigRat evalAtInfinity() const;  // throws PoleAtInfinity if not regular
    std::optional<LaurentPoly> asLaurent() const;
    bool isALattice() const { return asLaurent().has_value(); }  // member of Z[q,q^-1]
    bool isUnitOfA() const;  // +- q^k

    std::optional<BigRat> evalRat(const BigRat& x) const;  // test oracle

    std::string str() const;         // "num / den" (den omitted when 1)
    std::string laurentStr() const;  // Laurent form when possible, else str()

private:
    IntPoly num_, den_;
    void canonicalize();
};

struct PoleAtInfinity : std::runtime_error {
    PoleAtInfinity() : std::runtime_error("rational function not in A-infinity") {}
};

// Quantum integer [n]_i at q_i = q^d, n may be negative.
LaurentPoly quantumIntLaurent(long n, int d);
RatFun quantumInt(long n, int d);
// [n]_i! for n >= 0.
LaurentPoly quantumFactorialLaurent(long n, int d);
RatFun quantumFactorial(long n, int d);
// Gaussian binomial [n choose k]_i, requires 0 <= k <= n; lies in A.
RatFun quantumBinomial(long n, long k, int d);

}  // namespace qsph
