#include "qsph/satake.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace qsph {

std::string hermitianClassName(HermitianClass c) {
    switch (c) {
        case HermitianClass::AIIIa: return "AIIIa";
        case HermitianClass::AIIIb: return "AIIIb";
        case HermitianClass::BI: return "BI";
        case HermitianClass::CI: return "CI";
        case HermitianClass::DI: return "DI";
        case HermitianClass::DIIIb: return "DIIIb";
        case HermitianClass::EIII: return "EIII";
        case HermitianClass::EVII: return "EVII";
    }
    return "?";
}

bool IWeight::isZero() const {
    return std::all_of(canonical.begin(), canonical.end(), [](long x) { return x == 0; });
}

std::string IWeight::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t k = 0; k < canonical.size(); ++k) {
        if (k) os << ",";
        os << canonical[k];
    }
    os << "]";
    return os.str();
}

// ------------------------------------------------- Smith normal form (small)

namespace {

// Computes U, diag for integer matrix M (n x n): U M V = D.  Only U and the
// diagonal are needed to reduce classes mod the column span of M.
void smithNormalForm(std::vector<std::vector<long>> m, std::vector<std::vector<long>>& u,
                     std::vector<long>& diag) {
    size_t n = m.size();
    u.assign(n, std::vector<long>(n, 0));
    for (size_t i = 0; i < n; ++i) u[i][i] = 1;
    auto rowOp = [&](size_t dst, size_t src, long f) {
        for (size_t k = 0; k < n; ++k) {
            m[dst][k] += f * m[src][k];
            u[dst][k] += f * u[src][k];
        }
    };
    auto rowSwap = [&](size_t a, size_t b) {
        std::swap(m[a], m[b]);
        std::swap(u[a], u[b]);
    };
    auto colOp = [&](size_t dst, size_t src, long f) {
        for (size_t k = 0; k < n; ++k) m[k][dst] += f * m[k][src];
    };
    auto colSwap = [&](size_t a, size_t b) {
        for (size_t k = 0; k < n; ++k) std::swap(m[k][a], m[k][b]);
    };
    size_t t = 0;
    while (t < n) {
        // Find a nonzero entry in the submatrix.
        size_t pi = n, pj = n;
        long best = 0;
        for (size_t i = t; i < n; ++i)
            for (size_t j = t; j < n; ++j)
                if (m[i][j] != 0 && (best == 0 || std::abs(m[i][j]) < std::abs(best))) {
                    best = m[i][j];
                    pi = i;
                    pj = j;
                }
        if (pi == n) break;
        rowSwap(t, pi);
        colSwap(t, pj);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < n; ++i) {
                if (m[i][t] == 0) continue;
                long f = m[i][t] / m[t][t];
                rowOp(i, t, -f);
                if (m[i][t] != 0) {  // remainder smaller than pivot: swap up
                    rowSwap(t, i);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (m[t][j] == 0) continue;
                long f = m[t][j] / m[t][t];
                colOp(j, t, -f);
                if (m[t][j] != 0) {
                    colSwap(t, j);
                    clean = false;
                }
            }
        }
        if (m[t][t] < 0) {
            for (size_t k = 0; k < n; ++k) {
                m[t][k] = -m[t][k];
                u[t][k] = -u[t][k];
            }
        }
        ++t;
    }
    diag.assign(n, 0);
    for (size_t i = 0; i < n; ++i) diag[i] = m[i][i];
}

// Integer kernel basis of an n x n matrix via rational elimination and
// clearing denominators (entries are small).
std::vector<std::vector<long>> integerKernel(const std::vector<std::vector<long>>& m) {
    size_t n = m.size();
    std::vector<std::vector<BigRat>> a(n, std::vector<BigRat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    std::vector<int> pivotOfCol(n, -1);
    size_t row = 0;
    for (size_t col = 0; col < n && row < n; ++col) {
        size_t sel = row;
        while (sel < n && a[sel][col] == 0) ++sel;
        if (sel == n) continue;
        std::swap(a[sel], a[row]);
        BigRat p = a[row][col];
        for (size_t k = 0; k < n; ++k) a[row][k] /= p;
        for (size_t i = 0; i < n; ++i) {
            if (i == row || a[i][col] == 0) continue;
            BigRat f = a[i][col];
            for (size_t k = 0; k < n; ++k) a[i][k] -= f * a[row][k];
        }
        pivotOfCol[col] = static_cast<int>(row);
        ++row;
    }
    std::vector<std::vector<long>> kernel;
    for (size_t col = 0; col < n; ++col) {
        if (pivotOfCol[col] >= 0) continue;
        std::vector<BigRat> v(n, BigRat(0));
        v[col] = 1;
        for (size_t c2 = 0; c2 < n; ++c2)
            if (pivotOfCol[c2] >= 0) v[c2] = -a[static_cast<size_t>(pivotOfCol[c2])][col];
        BigInt lcm(1);
        for (const auto& x : v) {
            BigInt den = x.get_den();
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        }
        std::vector<long> w(n);
        for (size_t k = 0; k < n; ++k) {
            BigRat s = v[k] * BigRat(lcm);
            w[k] = s.get_num().get_si();
        }
        kernel.push_back(std::move(w));
    }
    return kernel;
}

}  // namespace

// --------------------------------------------------------- AdmissiblePair

AdmissiblePair::AdmissiblePair(CartanDatum cd, std::set<int> blacks, std::vector<int> tau)
    : cd_(std::move(cd)), blacks_(std::move(blacks)), tau_(std::move(tau)) {
    int n = cd_.rank();
    if (static_cast<int>(tau_.size()) != n)
        throw AdmissibleError(AdmissibleCondition::TauInvolution, "tau has wrong size");
    for (int i = 0; i < n; ++i) {
        int t = tau_[static_cast<size_t>(i)];
        if (t < 0 || t >= n || tau_[static_cast<size_t>(t)] != i)
            throw AdmissibleError(AdmissibleCondition::TauInvolution, "tau is not an involution");
    }
    for (int b : blacks_)
        if (b < 0 || b >= n) throw AdmissibleError(AdmissibleCondition::TauInvolution, "black node out of range");
    checkConditions();
    computeDerived();
}

void AdmissiblePair::checkConditions() const {
    int n = cd_.rank();
    // (1) a_{ij} = a_{tau i, tau j}; tau must preserve blacks and symmetrizer.
    for (int i = 0; i < n; ++i) {
        if (cd_.d(i) != cd_.d(tau(i)))
            throw AdmissibleError(AdmissibleCondition::TauInvolution,
                                  "tau does not preserve the symmetrizer");
        if (blacks_.count(i) != blacks_.count(tau(i)))
            throw AdmissibleError(AdmissibleCondition::TauInvolution,
                                  "tau does not preserve the black nodes");
        for (int j = 0; j < n; ++j)
            if (cd_.a(i, j) != cd_.a(tau(i), tau(j)))
                throw AdmissibleError(AdmissibleCondition::TauInvolution,
                                      "tau is not a diagram automorphism");
    }
    // (2) tau restricted to blacks equals -w_bullet.
    std::vector<int> subset(blacks_.begin(), blacks_.end());
    std::vector<int> word = cd_.longestWordOfParabolic(subset);
    for (int j : blacks_) {
        Weight img = cd_.applyWord(word, cd_.simpleRoot(j));
        Weight expect = cd_.simpleRoot(tau(j));
        for (size_t k = 0; k < img.size(); ++k) expect[k] = -expect[k];
        if (img != expect)
            throw AdmissibleError(AdmissibleCondition::TauBlackCompatible,
                                  "tau restricted to black nodes is not -w_bullet");
    }
    // (3) half-sum condition for tau-fixed white nodes.
    //     rho_bullet^vee pairing: sum over positive black roots beta of
    //     <beta^vee, alpha_i> / 2 must be integral.
    for (int i = 0; i < n; ++i) {
        if (blacks_.count(i) || tau(i) != i) continue;
        // Enumerate positive roots supported on blacks.
        BigRat sum(0);
        for (const auto& root : cd_.positiveRoots()) {
            bool blackSupport = true;
            for (int k = 0; k < n; ++k)
                if (root[static_cast<size_t>(k)] != 0 && !blacks_.count(k)) { blackSupport = false; break; }
            if (!blackSupport) continue;
            bool nonzero = std::any_of(root.begin(), root.end(), [](int x) { return x != 0; });
            if (!nonzero) continue;
            // <beta^vee, alpha_i> = sum_k k_k d_k a(k, i) / d_beta,
            // d_beta = (beta,beta)/2 = (1/2) sum_{k,l} k_k k_l d_k a(k,l).
            long num = 0;
            long dbeta2 = 0;
            for (int k = 0; k < n; ++k) {
                if (root[static_cast<size_t>(k)] == 0) continue;
                num += root[static_cast<size_t>(k)] * cd_.d(k) * cd_.a(k, i);
                for (int l = 0; l < n; ++l)
                    dbeta2 += root[static_cast<size_t>(k)] * root[static_cast<size_t>(l)] * cd_.d(k) *
                              cd_.a(k, l);
            }
            sum += BigRat(num, dbeta2);  // = <beta^vee, alpha_i> / 2
        }
        sum.canonicalize();
        if (sum.get_den() != 1)
            throw AdmissibleError(AdmissibleCondition::HalfSumIntegral,
                                  "half-sum condition fails at node " + std::to_string(i + 1));
    }
    // Irreducibility: connected under edges or tau links.
    std::vector<int> comp(static_cast<size_t>(n), -1);
    std::vector<int> stack{0};
    comp[0] = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w = 0; w < n; ++w) {
            if (comp[static_cast<size_t>(w)] >= 0) continue;
            if (cd_.a(v, w) != 0 || tau(v) == w) {
                comp[static_cast<size_t>(w)] = 0;
                stack.push_back(w);
            }
        }
    }
    for (int v = 0; v < n; ++v)
        if (comp[static_cast<size_t>(v)] < 0)
            throw AdmissibleError(AdmissibleCondition::Irreducible, "pair is not irreducible");
}

void AdmissiblePair::computeDerived() {
    int n = cd_.rank();
    for (int i = 0; i < n; ++i)
        if (!blacks_.count(i)) whites_.push_back(i);
    for (int i : whites_) {
        if (tau(i) != i) continue;
        bool orth = true;
        for (int b : blacks_)
            if (cd_.a(i, b) != 0) { orth = false; break; }
        if (orth) ns_.push_back(i);
    }
    std::vector<int> subset(blacks_.begin(), blacks_.end());
    wBulletWord_ = cd_.longestWordOfParabolic(subset);
    // theta on X: columns are theta(omega_j) = -w_bullet(omega_{tau j}).
    thetaX_.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), 0));
    for (int j = 0; j < n; ++j) {
        Weight img = cd_.applyWord(wBulletWord_, cd_.fundamentalWeight(tau(j)));
        for (int i = 0; i < n; ++i) thetaX_[static_cast<size_t>(i)][static_cast<size_t>(j)] = -img[static_cast<size_t>(i)];
    }
    // Involution sanity.
    for (int j = 0; j < n; ++j) {
        Weight e = cd_.fundamentalWeight(j);
        Weight t2 = thetaAction(thetaAction(e));
        if (t2 != e) throw CartanError("theta is not an involution");
    }
    // SNF of (1 - theta) for the i-weight lattice.
    std::vector<std::vector<long>> m(static_cast<size_t>(n), std::vector<long>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                (i == j ? 1 : 0) - thetaX_[static_cast<size_t>(i)][static_cast<size_t>(j)];
    smithNormalForm(m, snfU_, snfDiag_);
    // Y^i = ker(thetaY - 1), thetaY = thetaX transposed.
    std::vector<std::vector<long>> k(static_cast<size_t>(n), std::vector<long>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            k[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                thetaX_[static_cast<size_t>(j)][static_cast<size_t>(i)] - (i == j ? 1 : 0);
    yiBasis_ = integerKernel(k);
}

Weight AdmissiblePair::thetaAction(const Weight& lambda) const {
    int n = cd_.rank();
    Weight r(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r[static_cast<size_t>(i)] += thetaX_[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                                         lambda[static_cast<size_t>(j)];
    return r;
}

std::vector<long> AdmissiblePair::thetaCoweight(const std::vector<long>& h) const {
    int n = cd_.rank();
    std::vector<long> r(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r[static_cast<size_t>(i)] += thetaX_[static_cast<size_t>(j)][static_cast<size_t>(i)] *
                                         h[static_cast<size_t>(j)];
    return r;
}

IWeight AdmissiblePair::iWeightOf(const Weight& lambda) const {
    int n = cd_.rank();
    IWeight w;
    w.representative = lambda;
    w.canonical.assign(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        long y = 0;
        for (int j = 0; j < n; ++j)
            y += snfU_[static_cast<size_t>(i)][static_cast<size_t>(j)] * lambda[static_cast<size_t>(j)];
        long d = snfDiag_[static_cast<size_t>(i)];
        if (d != 0) {
            y %= d;
            if (y < 0) y += d;
        }
        w.canonical[static_cast<size_t>(i)] = y;
    }
    return w;
}

bool AdmissiblePair::isSpherical(const Weight& lambda) const {
    if (!cd_.isDominant(lambda)) throw CartanError("isSpherical: weight not dominant");
    return iWeightOf(lambda).isZero();
}

long AdmissiblePair::pairCoweight(const std::vector<long>& h, const Weight& lambda) {
    long s = 0;
    for (size_t k = 0; k < h.size(); ++k) s += h[k] * lambda[k];
    return s;
}

std::vector<std::vector<int>> AdmissiblePair::restrictedRoots() const {
    int n = cd_.rank();
    std::set<std::vector<int>> sigma;
    auto addRoot = [&](const std::vector<int>& rootCoords, int sign) {
        // alpha in root coords -> fw coords -> theta -> back is avoided:
        // theta on the root lattice equals -w_bullet tau on roots directly.
        Weight fw(static_cast<size_t>(n), 0);
        for (int j = 0; j < n; ++j) {
            if (rootCoords[static_cast<size_t>(j)] == 0) continue;
            Weight aj = cd_.simpleRoot(j);
            for (int i = 0; i < n; ++i)
                fw[static_cast<size_t>(i)] += sign * rootCoords[static_cast<size_t>(j)] * aj[static_cast<size_t>(i)];
        }
        Weight th = thetaAction(fw);
        // (alpha - theta alpha) in fw coords, then to root coords (doubled).
        Weight diffFw = weightSub(fw, th);
        auto rc = cd_.dominanceDiff(diffFw, Weight(static_cast<size_t>(n), 0));
        std::vector<int> dbl;
        if (rc) {
            dbl = *rc;  // alpha - theta alpha = sum rc_j alpha_j, entries >= 0
        } else {
            // Negative combination: solve for the negated weight.
            Weight neg = diffFw;
            for (auto& x : neg) x = -x;
            auto rc2 = cd_.dominanceDiff(neg, Weight(static_cast<size_t>(n), 0));
            if (!rc2) throw CartanError("restricted root not in root lattice");
            dbl = *rc2;
            for (auto& x : dbl) x = -x;
        }
        bool zero = std::all_of(dbl.begin(), dbl.end(), [](int x) { return x == 0; });
        if (!zero) sigma.insert(dbl);  // doubled restricted root (alpha - theta alpha)
    };
    for (const auto& r : cd_.positiveRoots()) {
        addRoot(r, 1);
        addRoot(r, -1);
    }
    return std::vector<std::vector<int>>(sigma.begin(), sigma.end());
}

bool AdmissiblePair::isReducedRestricted() const {
    if (reducedCache_) return *reducedCache_;
    auto sigma = restrictedRoots();
    std::set<std::vector<int>> s(sigma.begin(), sigma.end());
    bool reduced = true;
    for (const auto& r : sigma) {
        std::vector<int> twice = r;
        for (auto& x : twice) x *= 2;
        if (s.count(twice)) { reduced = false; break; }
    }
    reducedCache_ = reduced;
    return reduced;
}

// ------------------------------------------------ Hermitian classification

namespace {

struct Pattern {
    CartanDatum cd;
    std::set<int> blacks;
    std::vector<int> tau;
    HermitianClass cls;
    std::vector<int> orbit;
};

std::vector<int> flipPerm(int n) {
    std::vector<int> t(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) t[static_cast<size_t>(i)] = n - 1 - i;
    return t;
}

std::vector<int> idPerm(int n) {
    std::vector<int> t(static_cast<size_t>(n));
    std::iota(t.begin(), t.end(), 0);
    return t;
}

std::vector<Pattern> patternsForRank(int n) {
    std::vector<Pattern> out;
    // AIII_a: A_n, tau = flip, blacks = {p+1..n-p} (1-based), p >= 1; the
    // black set may be empty exactly when n = 2p (su(p+1,p)).
    for (int p = 1; 2 * p <= n + 1; ++p) {
        std::set<int> blacks;
        for (int k = p; k < n - p; ++k) blacks.insert(k);  // 0-based p..n-p-1
        if (blacks.empty() && n != 2 * p) continue;
        if (!blacks.empty() || n == 2 * p) {
            Pattern pat{CartanDatum::fromType("A" + std::to_string(n)), blacks, flipPerm(n),
                        HermitianClass::AIIIa,
                        {p - 1, n - p}};
            if (pat.orbit[0] != pat.orbit[1]) out.push_back(std::move(pat));
        }
    }
    // AIII_b: A_n, n odd, no blacks, tau = flip; I_otimes = center node.
    if (n % 2 == 1) {
        out.push_back(Pattern{CartanDatum::fromType("A" + std::to_string(n)),
                              {},
                              flipPerm(n),
                              HermitianClass::AIIIb,
                              {(n - 1) / 2}});
    }
    // BI: B_n, whites {1,2}, blacks {3..n}, tau = id.
    if (n >= 2) {
        std::set<int> blacks;
        for (int k = 2; k < n; ++k) blacks.insert(k);
        out.push_back(Pattern{CartanDatum::fromType("B" + std::to_string(n)), blacks, idPerm(n),
                              HermitianClass::BI,
                              {0}});
    }
    // CI: C_n all white, tau = id; I_otimes = long node.
    if (n >= 2) {
        out.push_back(Pattern{CartanDatum::fromType("C" + std::to_string(n)),
                              {},
                              idPerm(n),
                              HermitianClass::CI,
                              {n - 1}});
    }
    // DI (so(2, 2n-2)): D_n, whites {1,2}, blacks {3..n}; tau swaps the fork
    // nodes when the black component is D_odd, else id.
    if (n >= 4) {
        std::set<int> blacks;
        for (int k = 2; k < n; ++k) blacks.insert(k);
        std::vector<int> tau = idPerm(n);
        int blackRank = n - 2;
        // Black component D_{n-2} (fork at the end): -w0 is nontrivial when
        // n-2 is odd, in which case tau must swap the two fork ends.
        if (blackRank >= 2 && blackRank % 2 == 1) std::swap(tau[static_cast<size_t>(n - 2)], tau[static_cast<size_t>(n - 1)]);
        out.push_back(Pattern{CartanDatum::fromType("D" + std::to_string(n)), blacks, tau,
                              HermitianClass::DI,
                              {0}});
    }
    // DIII_b: D_n with n odd, alternating blacks {1,3,..,n-2}, tau swaps fork.
    if (n >= 5 && n % 2 == 1) {
        std::set<int> blacks;
        for (int k = 0; k + 2 < n; k += 2) blacks.insert(k);
        std::vector<int> tau = idPerm(n);
        std::swap(tau[static_cast<size_t>(n - 2)], tau[static_cast<size_t>(n - 1)]);
        out.push_back(Pattern{CartanDatum::fromType("D" + std::to_string(n)), blacks, tau,
                              HermitianClass::DIIIb,
                              {n - 2, n - 1}});
    }
    // EIII: E6, blacks {3,4,5}, tau = diagram flip (1<->6, 3<->5).
    if (n == 6) {
        std::vector<int> tau = idPerm(6);
        std::swap(tau[0], tau[5]);
        std::swap(tau[2], tau[4]);
        out.push_back(Pattern{CartanDatum::fromType("E6"), {2, 3, 4}, tau, HermitianClass::EIII,
                              {0, 5}});
    }
    // EVII: E7, blacks {2,3,4,5}, tau = id.
    if (n == 7) {
        out.push_back(Pattern{CartanDatum::fromType("E7"), {1, 2, 3, 4}, idPerm(7),
                              HermitianClass::EVII,
                              {6}});
    }
    return out;
}

// Search a diagram isomorphism input -> pattern respecting Cartan entries,
// symmetrizer, blacks and tau.
bool findIso(const CartanDatum& in, const std::set<int>& inBlacks, const std::vector<int>& inTau,
             const Pattern& pat, std::vector<int>& mapOut) {
    int n = in.rank();
    if (pat.cd.rank() != n) return false;
    std::vector<int> map(static_cast<size_t>(n), -1), used(static_cast<size_t>(n), 0);
    std::function<bool(int)> rec = [&](int i) -> bool {
        if (i == n) return true;
        for (int t = 0; t < n; ++t) {
            if (used[static_cast<size_t>(t)]) continue;
            if (in.d(i) != pat.cd.d(t)) continue;
            if ((inBlacks.count(i) != 0) != (pat.blacks.count(t) != 0)) continue;
            bool ok = true;
            for (int j = 0; j < i && ok; ++j) {
                int tj = map[static_cast<size_t>(j)];
                if (in.a(i, j) != pat.cd.a(t, tj) || in.a(j, i) != pat.cd.a(tj, t)) ok = false;
            }
            // tau compatibility for already mapped nodes.
            if (ok) {
                int ti = inTau[static_cast<size_t>(i)];
                if (ti < i || ti == i) {
                    int mapped = ti == i ? t : map[static_cast<size_t>(ti)];
                    if (pat.tau[static_cast<size_t>(t)] != mapped &&
                        !(ti == i && pat.tau[static_cast<size_t>(t)] == t))
                        ok = false;
                    if (ti == i && pat.tau[static_cast<size_t>(t)] != t) ok = false;
                    if (ti < i && pat.tau[static_cast<size_t>(t)] != map[static_cast<size_t>(ti)]) ok = false;
                }
            }
            if (!ok) continue;
            map[static_cast<size_t>(i)] = t;
            used[static_cast<size_t>(t)] = 1;
            if (rec(i + 1)) return true;
            map[static_cast<size_t>(i)] = -1;
            used[static_cast<size_t>(t)] = 0;
        }
        return false;
    };
    if (!rec(0)) return false;
    // Full tau check.
    for (int i = 0; i < n; ++i)
        if (pat.tau[static_cast<size_t>(map[static_cast<size_t>(i)])] != map[static_cast<size_t>(inTau[static_cast<size_t>(i)])])
            return false;
    mapOut = map;
    return true;
}

}  // namespace

std::optional<AdmissiblePair::Hermitian> AdmissiblePair::classifyHermitian() const {
    if (hermitianCache_) return *hermitianCache_;
    std::optional<Hermitian> result;
    for (const auto& pat : patternsForRank(cd_.rank())) {
        std::vector<int> map;
        if (!findIso(cd_, blacks_, tau_, pat, map)) continue;
        Hermitian h;
        h.cls = pat.cls;
        for (int i = 0; i < cd_.rank(); ++i)
            for (int t : pat.orbit)
                if (map[static_cast<size_t>(i)] == t) h.orbit.push_back(i);
        std::sort(h.orbit.begin(), h.orbit.end());
        result = h;
        break;
    }
    hermitianCache_ = result;
    return result;
}

int AdmissiblePair::otimesNode() const {
    auto h = classifyHermitian();
    if (!h) throw CartanError("pair is not of Hermitian type");
    int best = h->orbit.front();
    if (!orderRank_.empty()) {
        for (int i : h->orbit)
            if (orderRank_[static_cast<size_t>(i)] < orderRank_[static_cast<size_t>(best)]) best = i;
    }
    return best;
}

void AdmissiblePair::setNodeOrder(std::vector<int> rank) {
    if (static_cast<int>(rank.size()) != cd_.rank())
        throw CartanError("setNodeOrder: rank vector size mismatch");
    orderRank_ = std::move(rank);
}

Weight AdmissiblePair::muOf(long l) const {
    auto h = classifyHermitian();
    if (!h) throw CartanError("muOf: pair is not of Hermitian type");
    int i = otimesNode();
    int n = cd_.rank();
    Weight mu(static_cast<size_t>(n), 0);
    if (l == 0) return mu;
    if (isReducedRestricted()) {
        mu[static_cast<size_t>(i)] = static_cast<int>(l < 0 ? -l : l);
    } else if (l > 0) {
        mu[static_cast<size_t>(i)] = static_cast<int>(l);
    } else {
        mu[static_cast<size_t>(tau(i))] = static_cast<int>(-l);
    }
    return mu;
}

}  // namespace qsph
