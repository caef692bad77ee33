#include "qsph/exactq.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qsph {

// ---------------------------------------------------------------- IntPoly

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::monomial(const BigInt& c, int exp) {
    IntPoly p;
    if (c == 0) return p;
    if (exp < 0) throw std::invalid_argument("IntPoly::monomial: negative exponent");
    p.c_.assign(static_cast<size_t>(exp) + 1, BigInt(0));
    p.c_.back() = c;
    return p;
}

int IntPoly::ord() const {
    for (size_t k = 0; k < c_.size(); ++k)
        if (c_[k] != 0) return static_cast<int>(k);
    return 0;
}

const BigInt& IntPoly::leading() const {
    static const BigInt zero(0);
    return c_.empty() ? zero : c_.back();
}

const BigInt& IntPoly::coeff(int k) const {
    static const BigInt zero(0);
    if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
    return c_[static_cast<size_t>(k)];
}

IntPoly IntPoly::operator-() const {
    IntPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    IntPoly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (size_t k = 0; k < r.c_.size(); ++k) {
        if (k < a.c_.size()) r.c_[k] += a.c_[k];
        if (k < b.c_.size()) r.c_[k] += b.c_[k];
    }
    r.trim();
    return r;
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    IntPoly r;
    if (a.isZero() || b.isZero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, BigInt(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j] == 0) continue;
            r.c_[i + j] += a.c_[i] * b.c_[j];
        }
    }
    r.trim();
    return r;
}

IntPoly IntPoly::mulScalar(const BigInt& s) const {
    IntPoly r;
    if (s == 0) return r;
    r.c_ = c_;
    for (auto& x : r.c_) x *= s;
    return r;
}

IntPoly IntPoly::shifted(int k) const {
    if (k < 0) throw std::invalid_argument("IntPoly::shifted: negative shift");
    if (isZero() || k == 0) return *this;
    IntPoly r;
    r.c_.assign(static_cast<size_t>(k), BigInt(0));
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
}

IntPoly IntPoly::reversed() const {
    IntPoly r = *this;
    std::reverse(r.c_.begin(), r.c_.end());
    r.trim();
    return r;
}

IntPoly IntPoly::divByQpow(int k) const {
    if (k == 0 || isZero()) return *this;
    if (ord() < k) throw std::invalid_argument("IntPoly::divByQpow: not divisible");
    IntPoly r;
    r.c_.assign(c_.begin() + k, c_.end());
    return r;
}

BigInt IntPoly::content() const {
    BigInt g(0);
    for (const auto& x : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    if (g == 0) return BigInt(0);
    if (leading() < 0) g = -g;
    return g;
}

IntPoly IntPoly::primitivePart() const {
    if (isZero()) return *this;
    BigInt g = content();
    IntPoly r = *this;
    for (auto& x : r.c_) x /= g;
    return r;
}

BigInt IntPoly::evalOne() const {
    BigInt s(0);
    for (const auto& x : c_) s += x;
    return s;
}

BigRat IntPoly::evalRat(const BigRat& x) const {
    BigRat s(0);
    for (size_t k = c_.size(); k-- > 0;) s = s * x + BigRat(c_[k]);
    return s;
}

IntPoly IntPoly::divExact(const IntPoly& a, const IntPoly& b) {
    if (b.isZero()) throw std::invalid_argument("IntPoly::divExact: division by zero");
    if (a.isZero()) return IntPoly();
    if (a.deg() < b.deg()) throw std::invalid_argument("IntPoly::divExact: not divisible");
    // Synthetic division over Z; exactness implies every step divides.
    std::vector<BigInt> rem = a.c_;
    int db = b.deg();
    int dq = a.deg() - db;
    const BigInt& lb = b.c_.back();
    std::vector<BigInt> quot(static_cast<size_t>(dq) + 1);
    for (int k = dq; k >= 0; --k) {
        BigInt& top = rem[static_cast<size_t>(k + db)];
        if (top == 0) continue;
        BigInt c;
        mpz_tdiv_qr(c.get_mpz_t(), top.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
        if (top != 0) throw std::invalid_argument("IntPoly::divExact: not divisible");
        quot[static_cast<size_t>(k)] = c;
        for (int j = 0; j < db; ++j)
            rem[static_cast<size_t>(k + j)] -= c * b.c_[static_cast<size_t>(j)];
    }
    for (int j = 0; j < db; ++j)
        if (rem[static_cast<size_t>(j)] != 0)
            throw std::invalid_argument("IntPoly::divExact: remainder nonzero");
    IntPoly q;
    q.c_ = std::move(quot);
    q.trim();
    return q;
}

// Pseudo-remainder with the full multiplier: lc(b)^(deg a - deg b + 1) a = q b + r.
static IntPoly pseudoRem(const IntPoly& a, const IntPoly& b) {
    int db = b.deg();
    const BigInt& lb = b.leading();
    IntPoly r = a;
    int e = a.deg() - db + 1;
    while (!r.isZero() && r.deg() >= db) {
        int shift = r.deg() - db;
        BigInt lr = r.leading();
        r = r.mulScalar(lb) - b.mulScalar(lr).shifted(shift);
        --e;
    }
    // Top up so the multiplier is exactly lc(b)^(delta+1).
    BigInt f(1);
    for (int k = 0; k < e; ++k) f *= lb;
    if (e > 0) r = r.mulScalar(f);
    return r;
}

static BigInt intPow(const BigInt& x, int k) {
    BigInt r(1);
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

// Single-term test: q^k times a constant.
static bool isMonomialPoly(const IntPoly& p) {
    return !p.isZero() && p.deg() == p.ord();
}

// Sound coprimality filter: if gcd(a mod p, b mod p) is constant in F_p[q]
// for a prime not dividing both leading coefficients, the true gcd has
// degree zero.  Catches the common coprime case without a subresultant run.
static bool coprimeModularFilter(const IntPoly& a, const IntPoly& b) {
    static const long primes[] = {1000003, 999983};
    for (long p : primes) {
        auto reduce = [&](const IntPoly& f) {
            std::vector<long> out(f.coeffs().size());
            for (size_t k = 0; k < out.size(); ++k)
                out[k] = mpz_fdiv_ui(f.coeffs()[k].get_mpz_t(), static_cast<unsigned long>(p));
            while (!out.empty() && out.back() == 0) out.pop_back();
            return out;
        };
        std::vector<long> fa = reduce(a), fb = reduce(b);
        // The leading coefficient must survive so the degree does not drop.
        if (fa.size() != a.coeffs().size() || fb.size() != b.coeffs().size()) continue;
        auto modpow = [&](long base, long expo) {
            long r = 1, x = base % p;
            while (expo) {
                if (expo & 1) r = static_cast<long>((__int128)r * x % p);
                x = static_cast<long>((__int128)x * x % p);
                expo >>= 1;
            }
            return r;
        };
        while (fa.size() > 1 && fb.size() > 1) {
            if (fa.size() < fb.size()) std::swap(fa, fb);
            // fa <- fa mod fb in F_p.
            long inv = modpow(fb.back(), p - 2);
            for (size_t shift = fa.size() - fb.size() + 1; shift-- > 0;) {
                long c = static_cast<long>((__int128)fa[shift + fb.size() - 1] * inv % p);
                if (c == 0) continue;
                for (size_t j = 0; j < fb.size(); ++j) {
                    long& slot = fa[shift + j];
                    slot = static_cast<long>(((__int128)slot - (__int128)c * fb[j]) % p);
                    if (slot < 0) slot += p;
                }
            }
            while (!fa.empty() && fa.back() == 0) fa.pop_back();
            if (fa.empty()) return false;  // fb divides fa mod p: inconclusive
        }
        return true;  // one side reached a nonzero constant: coprime over Q
    }
    return false;
}

IntPoly IntPoly::gcd(const IntPoly& a0, const IntPoly& b0) {
    if (a0.isZero()) return b0.leading() < 0 ? -b0 : b0;
    if (b0.isZero()) return a0.leading() < 0 ? -a0 : a0;
    BigInt ca = a0.content(), cb = b0.content();
    BigInt cg;
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    if (isMonomialPoly(a0) || isMonomialPoly(b0)) {
        int k = std::min(a0.ord(), b0.ord());
        return monomial(cg, k);
    }
    {
        int k = std::min(a0.ord(), b0.ord());
        if (coprimeModularFilter(a0, b0)) return monomial(cg, k);
    }
    IntPoly a = a0.primitivePart(), b = b0.primitivePart();
    if (a.deg() < b.deg()) std::swap(a, b);
    // Subresultant PRS on primitive parts (Brown-Traub).
    BigInt g(1), h(1);
    while (true) {
        int delta = a.deg() - b.deg();
        IntPoly r = pseudoRem(a, b);
        if (r.isZero()) break;
        if (r.deg() == 0) { b = IntPoly(1); break; }
        a = b;
        BigInt div = g * intPow(h, delta);
        b = r;
        for (auto& x : b.c_) {
            BigInt q;
            mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), div.get_mpz_t());
            x = q;
        }
        g = a.leading();
        if (delta >= 1) {
            BigInt num = intPow(g, delta);
            BigInt den = intPow(h, delta - 1);
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
    }
    IntPoly res = b.primitivePart().mulScalar(cg);
    if (res.leading() < 0) res = -res;
    return res;
}

std::string IntPoly::str() const {
    if (isZero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = deg(); k >= 0; --k) {
        const BigInt& c = c_[static_cast<size_t>(k)];
        if (c == 0) continue;
        BigInt ab = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (k == 0 || ab != 1) os << ab.get_str();
        if (k > 0 && ab != 1) os << "*";
        if (k == 1) os << "q";
        else if (k > 1) os << "q^" << k;
    }
    return os.str();
}

// ------------------------------------------------------------- LaurentPoly

void LaurentPoly::insertTerm(int exp, const BigInt& c) {
    if (c == 0) return;
    auto it = std::lower_bound(t_.begin(), t_.end(), exp,
                               [](const auto& p, int e) { return p.first < e; });
    if (it != t_.end() && it->first == exp) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    } else {
        t_.insert(it, {exp, c});
    }
}

LaurentPoly LaurentPoly::fromInt(long c) {
    LaurentPoly p;
    p.insertTerm(0, BigInt(c));
    return p;
}

LaurentPoly LaurentPoly::monomial(const BigInt& c, int exp) {
    LaurentPoly p;
    p.insertTerm(exp, c);
    return p;
}

int LaurentPoly::minExp() const {
    if (t_.empty()) throw std::logic_error("LaurentPoly::minExp on zero");
    return t_.front().first;
}

int LaurentPoly::maxExp() const {
    if (t_.empty()) throw std::logic_error("LaurentPoly::maxExp on zero");
    return t_.back().first;
}

BigInt LaurentPoly::coeff(int exp) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), exp,
                               [](const auto& p, int e) { return p.first < e; });
    if (it != t_.end() && it->first == exp) return it->second;
    return BigInt(0);
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.t_) c = -c;
    return r;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    for (const auto& [e, c] : b.t_) r.insertTerm(e, c);
    return r;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.t_)
        for (const auto& [eb, cb] : b.t_) r.insertTerm(ea + eb, ca * cb);
    return r;
}

LaurentPoly LaurentPoly::bar() const {
    LaurentPoly r;
    for (const auto& [e, c] : t_) r.insertTerm(-e, c);
    return r;
}

BigInt LaurentPoly::evalOne() const {
    BigInt s(0);
    for (const auto& [e, c] : t_) s += c;
    return s;
}

std::string LaurentPoly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [e, c] = *it;
        BigInt ab = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (e == 0 || ab != 1) os << ab.get_str();
        if (e != 0 && ab != 1) os << "*";
        if (e == 1) os << "q";
        else if (e != 0) os << "q^" << e;
    }
    return os.str();
}

LaurentPoly LaurentPoly::parse(const std::string& s) {
    LaurentPoly out;
    size_t i = 0;
    auto skipws = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
    skipws();
    if (i >= s.size()) throw std::invalid_argument("LaurentPoly::parse: empty");
    bool any = false;
    while (i < s.size()) {
        skipws();
        int sign = 1;
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -sign;
            ++i;
            skipws();
        }
        if (i >= s.size()) {
            if (any) throw std::invalid_argument("LaurentPoly::parse: dangling sign");
            break;
        }
        std::string digits;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
        skipws();
        bool hasCoeff = !digits.empty();
        if (i < s.size() && s[i] == '*') { ++i; skipws(); }
        bool hasQ = false;
        int exp = 0;
        if (i < s.size() && s[i] == 'q') {
            hasQ = true;
            ++i;
            if (i < s.size() && s[i] == '^') {
                ++i;
                int esign = 1;
                if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
                    if (s[i] == '-') esign = -1;
                    ++i;
                }
                std::string ed;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ed += s[i++];
                if (ed.empty()) throw std::invalid_argument("LaurentPoly::parse: bad exponent");
                exp = esign * std::stoi(ed);
            } else {
                exp = 1;
            }
        }
        if (!hasCoeff && !hasQ) throw std::invalid_argument("LaurentPoly::parse: bad term");
        BigInt c = hasCoeff ? BigInt(digits) : BigInt(1);
        if (sign < 0) c = -c;
        if (c == 0 && !hasQ && !any && s.find_first_not_of("0 \t") == std::string::npos) {
            return LaurentPoly();  // literal zero
        }
        out.insertTerm(exp, c);
        any = true;
        skipws();
    }
    if (!any) return LaurentPoly();
    return out;
}

// ----------------------------------------------------------------- RatFun

RatFun::RatFun(const IntPoly& num, const IntPoly& den) : num_(num), den_(den) {
    if (den.isZero()) throw std::invalid_argument("RatFun: zero denominator");
    canonicalize();
}

void RatFun::canonicalize() {
    if (num_.isZero()) {
        den_ = IntPoly(1);
        return;
    }
    int o = std::min(num_.ord(), den_.ord());
    if (o > 0) {
        num_ = num_.divByQpow(o);
        den_ = den_.divByQpow(o);
    }
    // Common case: monomial denominator (Laurent value); only the integer
    // content needs reducing.
    if (isMonomialPoly(den_) || isMonomialPoly(num_)) {
        BigInt cn = num_.content(), cd = den_.content();
        if (cn < 0) cn = -cn;
        if (cd < 0) cd = -cd;
        BigInt g;
        mpz_gcd(g.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
        if (g > 1) {
            for (auto& x : num_.c_) x /= g;
            for (auto& x : den_.c_) x /= g;
        }
    } else {
        IntPoly g = IntPoly::gcd(num_, den_);
        if (!(g.deg() == 0 && g.coeff(0) == 1)) {
            num_ = IntPoly::divExact(num_, g);
            den_ = IntPoly::divExact(den_, g);
        }
    }
    if (den_.leading() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

RatFun RatFun::fromLaurent(const LaurentPoly& p) {
    if (p.isZero()) return RatFun();
    int m = p.minExp();
    IntPoly num;
    if (m >= 0) {
        for (const auto& [e, c] : p.terms()) num = num + IntPoly::monomial(c, e);
        return RatFun(num, IntPoly(1));
    }
    for (const auto& [e, c] : p.terms()) num = num + IntPoly::monomial(c, e - m);
    return RatFun(num, IntPoly::monomial(BigInt(1), -m));
}

RatFun RatFun::q(int exp) {
    if (exp >= 0) return RatFun(IntPoly::monomial(BigInt(1), exp), IntPoly(1));
    return RatFun(IntPoly(1), IntPoly::monomial(BigInt(1), -exp));
}

RatFun RatFun::fromInt(const BigInt& c) { return RatFun(IntPoly(c), IntPoly(1)); }

bool RatFun::isOne() const {
    return num_.deg() == 0 && num_.coeff(0) == 1 && den_.deg() == 0 && den_.coeff(0) == 1;
}

RatFun RatFun::operator-() const {
    RatFun r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.isZero()) return b;
    if (b.isZero()) return a;
    RatFun r;
    if (a.den_ == b.den_) {
        r.num_ = a.num_ + b.num_;
        r.den_ = a.den_;
    } else {
        r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
        r.den_ = a.den_ * b.den_;
    }
    if (r.num_.isZero()) return RatFun();
    r.canonicalize();
    return r;
}

RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

RatFun operator*(const RatFun& a, const RatFun& b) {
    if (a.isZero() || b.isZero()) return RatFun();
    RatFun r;
    r.num_ = a.num_ * b.num_;
    r.den_ = a.den_ * b.den_;
    r.canonicalize();
    return r;
}

RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.isZero()) throw std::invalid_argument("RatFun: division by zero");
    if (a.isZero()) return RatFun();
    RatFun r;
    r.num_ = a.num_ * b.den_;
    r.den_ = a.den_ * b.num_;
    if (r.den_.isZero()) throw std::invalid_argument("RatFun: division by zero");
    r.canonicalize();
    return r;
}

RatFun RatFun::inverse() const {
    if (isZero()) throw std::invalid_argument("RatFun::inverse of zero");
    RatFun r;
    r.num_ = den_;
    r.den_ = num_;
    r.canonicalize();
    return r;
}

RatFun RatFun::pow(int k) const {
    if (k == 0) return RatFun(1);
    RatFun base = k > 0 ? *this : inverse();
    int n = k > 0 ? k : -k;
    RatFun r(1);
    for (int i = 0; i < n; ++i) r = r * base;
    return r;
}

RatFun RatFun::bar() const {
    if (isZero()) return RatFun();
    int dn = num_.deg(), dd = den_.deg();
    int d = std::max(dn, dd);
    RatFun r;
    r.num_ = num_.reversed().shifted(d - dn);
    r.den_ = den_.reversed().shifted(d - dd);
    r.canonicalize();
    return r;
}

int RatFun::valuationAtInfinity() const {
    if (isZero()) throw std::logic_error("valuationAtInfinity of zero");
    return den_.deg() - num_.deg();
}

bool RatFun::isRegularAtInfinity() const {
    return isZero() || valuationAtInfinity() >= 0;
}

bool RatFun::isStrictlySmallAtInfinity() const {
    return isZero() || valuationAtInfinity() >= 1;
}

BigRat RatFun::evalAtInfinity() const {
    if (isZero()) return BigRat(0);
    int v = valuationAtInfinity();
    if (v < 0) throw PoleAtInfinity();
    if (v > 0) return BigRat(0);
    BigRat r(num_.leading(), den_.leading());
    r.canonicalize();
    return r;
}

std::optional<LaurentPoly> RatFun::asLaurent() const {
    if (isZero()) return LaurentPoly();
    // Canonical form: member of Z[q,q^-1] iff den = q^k.
    if (den_.leading() != 1) return std::nullopt;
    int o = den_.ord();
    if (den_.deg() != o) return std::nullopt;
    LaurentPoly p;
    for (int k = 0; k <= num_.deg(); ++k) {
        const BigInt& c = num_.coeff(k);
        if (c != 0) p = p + LaurentPoly::monomial(c, k - o);
    }
    return p;
}

bool RatFun::isUnitOfA() const {
    auto l = asLaurent();
    if (!l || l->isZero()) return false;
    const auto& t = l->terms();
    return t.size() == 1 && (t[0].second == 1 || t[0].second == -1);
}

std::optional<BigRat> RatFun::evalRat(const BigRat& x) const {
    if (isZero()) return BigRat(0);
    BigRat d = den_.evalRat(x);
    if (d == 0) return std::nullopt;
    BigRat r = num_.evalRat(x) / d;
    r.canonicalize();
    return r;
}

std::string RatFun::str() const {
    if (isZero()) return "0";
    if (den_.deg() == 0 && den_.coeff(0) == 1) return num_.str();
    return num_.str() + " / " + den_.str();
}

std::string RatFun::laurentStr() const {
    auto l = asLaurent();
    if (l) return l->str();
    return str();
}

// ------------------------------------------------------ quantum integers

LaurentPoly quantumIntLaurent(long n, int d) {
    if (d <= 0) throw std::invalid_argument("quantumInt: d must be positive");
    LaurentPoly p;
    long a = n < 0 ? -n : n;
    for (long k = 0; k < a; ++k)
        p = p + LaurentPoly::monomial(BigInt(n < 0 ? -1 : 1), static_cast<int>(d * (a - 1 - 2 * k)));
    return p;
}

RatFun quantumInt(long n, int d) { return RatFun::fromLaurent(quantumIntLaurent(n, d)); }

LaurentPoly quantumFactorialLaurent(long n, int d) {
    if (n < 0) throw std::invalid_argument("quantumFactorial: n must be nonnegative");
    LaurentPoly p = LaurentPoly::fromInt(1);
    for (long k = 1; k <= n; ++k) p = p * quantumIntLaurent(k, d);
    return p;
}

RatFun quantumFactorial(long n, int d) {
    return RatFun::fromLaurent(quantumFactorialLaurent(n, d));
}

RatFun quantumBinomial(long n, long k, int d) {
    if (k < 0 || k > n) throw std::invalid_argument("quantumBinomial: need 0 <= k <= n");
    RatFun r = quantumFactorial(n, d) / (quantumFactorial(k, d) * quantumFactorial(n - k, d));
    if (!r.isALattice()) throw std::logic_error("quantumBinomial: not Laurent");
    return r;
}

}  // namespace qsph
