#include "qsph/coideal.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace qsph {

// ----------------------------------------------------------------- parameters

namespace {

// Rank-one diagram type of a white node within the pair, for the default
// parameter table.
enum class RankOneType { LoneA1, SwapPair, AIVFamily, BlackAdjacent };

RankOneType rankOneType(const AdmissiblePair& p, int i) {
    if (p.tau(i) != i) {
        // tau-orbit of size two; with the black nodes in between this is the
        // AIII_a rank-one family, without them a plain swapped pair.
        auto h = p.classifyHermitian();
        if (h && std::find(h->orbit.begin(), h->orbit.end(), i) != h->orbit.end())
            return RankOneType::AIVFamily;
        return RankOneType::SwapPair;
    }
    for (int b : p.blackNodes())
        if (p.cartan().a(i, b) != 0) return RankOneType::BlackAdjacent;
    return RankOneType::LoneA1;
}

}  // namespace

QSPParameters defaultParameters(const AdmissiblePair& pair, long n) {
    auto h = pair.classifyHermitian();
    if (!h) throw CartanError("defaultParameters: pair is not of Hermitian type");
    QSPParameters par;
    par.n = n;
    const CartanDatum& cd = pair.cartan();
    for (int i : pair.whiteNodes()) {
        par.s[i] = RatFun();
        switch (rankOneType(pair, i)) {
            case RankOneType::LoneA1: {
                par.c[i] = RatFun::q(-cd.d(i));
                // The distinguished node of a reduced Hermitian family carries
                // the integer label through s_i = [-n]_i; this is the labeling
                // under which chi_l(B_i) = [l-n]_i holds for the solved
                // rank-one vectors.
                bool otimes = std::find(h->orbit.begin(), h->orbit.end(), i) != h->orbit.end();
                bool evenPairing = true;
                for (int k : pair.nsNodes())
                    if (cd.a(k, i) % 2 != 0) evenPairing = false;
                if (otimes && evenPairing) par.s[i] = quantumInt(-n, cd.d(i));
                break;
            }
            case RankOneType::SwapPair:
                par.c[i] = RatFun(1);
                break;
            case RankOneType::AIVFamily: {
                // c_min = q^n, c_max = (-1)^m q^(m-1-n) with m the rank of the
                // AIII_a rank-one subdiagram.
                int m = static_cast<int>(pair.blackNodes().size()) + 2;
                int lo = std::min(i, pair.tau(i));
                if (i == lo) {
                    par.c[i] = RatFun::q(static_cast<int>(n));
                } else {
                    RatFun c = RatFun::q(static_cast<int>(m - 1 - n));
                    if (m % 2 == 1) c = -c;
                    par.c[i] = c;
                }
                break;
            }
            case RankOneType::BlackAdjacent: {
                // Table values for the remaining rank-one shapes; only the
                // B-type tail (BII) occurs among the Hermitian diagrams we
                // instantiate at module level, the rest are diagram-only.
                int rank = static_cast<int>(pair.blackNodes().size()) + 1;
                char fam = cd.typeLabel().empty() ? '?' : cd.typeLabel()[0];
                int e = 0;
                switch (fam) {
                    case 'B': e = 2 * rank - 3; break;
                    case 'C': e = rank - 1; break;
                    case 'D': e = rank - 2; break;
                    case 'F': e = 5; break;
                    default: e = 0; break;
                }
                par.c[i] = RatFun::q(e);
                break;
            }
        }
    }
    // AIII_a constraint c_i c_{tau i} = (-1)^m q^{m-1}.
    if (h->cls == HermitianClass::AIIIa) {
        int m = static_cast<int>(pair.blackNodes().size()) + 2;
        int i = h->orbit.front();
        RatFun prod = par.c.at(i) * par.c.at(pair.tau(i));
        RatFun expect = RatFun::q(m - 1);
        if (m % 2 == 1) expect = -expect;
        if (prod != expect) throw CartanError("AIII_a parameter constraint violated");
    }
    return par;
}

long familyIndex(const AdmissiblePair& pair, const QSPParameters& par) {
    auto h = pair.classifyHermitian();
    if (!h) throw CartanError("familyIndex: pair is not of Hermitian type");
    int i = pair.otimesNode();
    if (pair.isReducedRestricted()) {
        // s_i = [-n]_i; read n off the Laurent form.
        RatFun s = par.s.at(i);
        if (s.isZero()) return 0;
        auto l = s.asLaurent();
        if (!l) throw CartanError("familyIndex: s-parameter outside the family");
        int top = l->maxExp();
        const BigInt& lead = l->coeff(top);
        int d = pair.cartan().d(i);
        // [-n] = q^-n... - ...: for n > 0 the top term of [-n]_i is -q_i^{n-1}.
        long n = (lead < 0) ? (top / d + 1) : -(top / d + 1);
        if (par.s.at(i) != quantumInt(-n, d))
            throw CartanError("familyIndex: s-parameter outside the family");
        return n;
    }
    RatFun c = par.c.at(i);
    auto l = c.asLaurent();
    if (!l || l->terms().size() != 1 || l->terms()[0].second != 1)
        throw CartanError("familyIndex: c-parameter outside the family");
    return l->maxExp();
}

// -------------------------------------------------------------- CoidealAction

CoidealAction::CoidealAction(std::shared_ptr<const WeightModule> mod,
                             std::shared_ptr<const AdmissiblePair> pair, QSPParameters par)
    : mod_(std::move(mod)), pair_(std::move(pair)), par_(std::move(par)) {
    const CartanDatum& cd = mod_->cartan();
    const auto& word = pair_->wBulletWord();
    for (int i : pair_->whiteNodes()) {
        auto conj = conjugatedEColumns(*mod_, word, pair_->tau(i));
        std::vector<ModVec> cols(static_cast<size_t>(mod_->dim()));
        const RatFun& ci = par_.c.at(i);
        const RatFun& si = par_.s.at(i);
        for (int k = 0; k < mod_->dim(); ++k) {
            ModVec col = mod_->applyF(i, ModVec{{k, RatFun(1)}});
            int e = -cd.d(i) * mod_->weightOf(k)[static_cast<size_t>(i)];
            RatFun kinv = RatFun::q(e);
            mvAddScaled(col, conj[static_cast<size_t>(k)], ci * kinv);
            if (!si.isZero()) mvAddScaled(col, ModVec{{k, RatFun(1)}}, si * kinv);
            cols[static_cast<size_t>(k)] = std::move(col);
        }
        bOp_[i] = std::move(cols);
    }
    for (int k = 0; k < mod_->dim(); ++k)
        blocks_[pair_->iWeightOf(mod_->weightOf(k))].push_back(k);
}

ModVec CoidealAction::applyB(int i, const ModVec& v) const {
    const auto& cols = bOp_.at(i);
    ModVec out;
    for (const auto& [idx, c] : v) mvAddScaled(out, cols[static_cast<size_t>(idx)], c);
    return out;
}

ModVec CoidealAction::projectBlock(const IWeight& zeta, const ModVec& v) const {
    ModVec out;
    for (const auto& [idx, c] : v)
        if (pair_->iWeightOf(mod_->weightOf(idx)) == zeta) out.emplace_back(idx, c);
    return out;
}

bool CoidealAction::inductiveBranch(int i) const {
    if (pair_->tau(i) != i) return false;
    Weight alpha = mod_->cartan().simpleRoot(i);
    const auto& word = pair_->wBulletWord();
    return mod_->cartan().applyWord(word, alpha) == alpha;
}

int CoidealAction::parity(int i, const IWeight& zeta) const {
    if (!inductiveBranch(i))
        throw CartanError("parity: node outside the inductive divided-power branch");
    long p = zeta.representative[static_cast<size_t>(i)];
    // Representative independence: <alpha_i^vee, (1-theta) mu> is even on
    // this branch (theta alpha_i^vee = -alpha_i^vee up to black corrections).
    return static_cast<int>(((p % 2) + 2) % 2);
}

ModVec CoidealAction::iDividedPower(int i, const IWeight& zeta, long a, const ModVec& v) const {
    if (a < 0) throw CartanError("iDividedPower: negative order");
    ModVec cur = projectBlock(zeta, v);
    if (mvIsZero(cur) || a == 0) return cur;
    int d = mod_->cartan().d(i);
    if (!inductiveBranch(i)) {
        // Plain divided power B_i^a / [a]_i!.
        for (long k = 0; k < a; ++k) cur = applyB(i, cur);
        return mvScaled(cur, quantumFactorial(a, d).inverse());
    }
    // Inductive branch: B^(a) = (1/[a]_i!) prod_{k=1}^{a} (B_i - [m_k - n]_i)
    // with the label ladder m_1, m_2, ... of the block's parity:
    //   parity 0: 0, 2, -2, 4, -4, ...
    //   parity 1: 1, -1, 3, -3, ...
    // The first step is (B_i - s_i) 1_zeta and each completed pair multiplies
    // by B_i^2 - (q_i^k + q_i^-k) s_i B_i + (s_i^2 - q_i c_i [k]_i^2), the
    // two-step recursion of the family.  For s = 0 the ladder collapses to
    // the classical products of B_i^2 - [k]_i^2.
    int p = parity(i, zeta);
    long n = par_.n;
    for (long k = 1; k <= a; ++k) {
        long label;
        if (p == 0)
            label = (k == 1) ? 0 : (k % 2 == 0 ? k : -(k - 1));
        else
            label = (k % 2 == 1) ? k : -(k - 1);
        RatFun root = quantumInt(label - n, d);
        ModVec next = applyB(i, cur);
        if (!root.isZero()) mvAddScaled(next, cur, -root);
        cur = std::move(next);
        if (mvIsZero(cur)) return cur;
    }
    return mvScaled(cur, quantumFactorial(a, d).inverse());
}

// -------------------------------------------------------------- PsiInvolution

PsiInvolution::PsiInvolution(const CoidealAction& action) : mod_(&action.module()) {
    const AdmissiblePair& pair = action.pair();
    if (mod_->highestIndex() < 0) {
        failure_ = "module has no highest vector";
        return;
    }
    // Generators used to grow the spanning tree.
    struct Gen {
        char kind;  // 'B', 'E', 'F'
        int node;
    };
    std::vector<Gen> gens;
    for (int i : pair.whiteNodes()) gens.push_back({'B', i});
    for (int j : pair.blackNodes()) {
        gens.push_back({'E', j});
        gens.push_back({'F', j});
    }
    auto applyGen = [&](const Gen& g, const ModVec& v) {
        switch (g.kind) {
            case 'B': return action.applyB(g.node, v);
            case 'E': return mod_->applyE(g.node, v);
            default: return mod_->applyF(g.node, v);
        }
    };
    auto barVec = [&](const ModVec& v) {
        ModVec out;
        out.reserve(v.size());
        for (const auto& [idx, c] : v) out.emplace_back(idx, c.bar());
        return out;
    };
    // Grow the tree.
    ModVec seed{{mod_->highestIndex(), RatFun(1)}};
    treeSpan_.insert(seed);
    tree_.push_back(seed);
    psiTree_.push_back(seed);
    size_t head = 0;
    while (head < tree_.size() && static_cast<int>(tree_.size()) < mod_->dim()) {
        ModVec v = tree_[head];
        ModVec pv = psiTree_[head];
        ++head;
        for (const auto& g : gens) {
            ModVec u = applyGen(g, v);
            if (mvIsZero(u)) continue;
            if (treeSpan_.insert(u)) {
                tree_.push_back(u);
                psiTree_.push_back(applyGen(g, pv));
            }
        }
    }
    if (static_cast<int>(tree_.size()) != mod_->dim()) {
        failure_ = "coideal generators do not span the module from the highest vector";
        return;
    }
    // Basis images: e_j = sum c_k tree_k gives psi(e_j) = sum bar(c_k) psiTree_k.
    psiBasis_.assign(static_cast<size_t>(mod_->dim()), {});
    for (int j = 0; j < mod_->dim(); ++j) {
        auto coords = treeSpan_.solve(ModVec{{j, RatFun(1)}});
        if (!coords) {
            failure_ = "tree span misses a basis vector";
            return;
        }
        ModVec img;
        for (size_t k = 0; k < coords->size(); ++k)
            if (!(*coords)[k].isZero()) mvAddScaled(img, psiTree_[k], (*coords)[k].bar());
        psiBasis_[static_cast<size_t>(j)] = std::move(img);
    }
    // Consistency: psi(g e_j) = g psi(e_j) on every basis vector and
    // generator, K_h anti-compatibility, and involutivity.
    for (int j = 0; j < mod_->dim(); ++j) {
        ModVec e{{j, RatFun(1)}};
        for (const auto& g : gens) {
            ModVec lhs = apply(applyGen(g, e));
            ModVec rhs = applyGen(g, psiBasis_[static_cast<size_t>(j)]);
            mvAddScaled(lhs, rhs, RatFun(-1));
            if (!mvIsZero(lhs)) {
                std::ostringstream os;
                os << "psi inconsistency at generator " << g.kind << (g.node + 1);
                failure_ = os.str();
                return;
            }
        }
        // K_h psi(v) = psi(K_{-h} v): psi preserves the Y^i-eigenvalues.
        for (const auto& h : pair.iCoweightBasis()) {
            long eig = AdmissiblePair::pairCoweight(h, mod_->weightOf(j));
            for (const auto& [r, c] : psiBasis_[static_cast<size_t>(j)]) {
                if (AdmissiblePair::pairCoweight(h, mod_->weightOf(r)) != eig) {
                    failure_ = "psi does not preserve the i-weight eigenvalues";
                    return;
                }
            }
        }
        ModVec twice = apply(psiBasis_[static_cast<size_t>(j)]);
        mvAddScaled(twice, e, RatFun(-1));
        if (!mvIsZero(twice)) {
            failure_ = "psi is not involutive";
            return;
        }
    }
    verified_ = true;
    (void)barVec;
}

ModVec PsiInvolution::apply(const ModVec& v) const {
    ModVec out;
    for (const auto& [j, c] : v) mvAddScaled(out, psiBasis_[static_cast<size_t>(j)], c.bar());
    return out;
}

// ---------------------------------------------------------- shiftOfBasepoint

QSPParameters shiftOfBasepoint(const AdmissiblePair& pair, const QSPParameters& par,
                               const CharacterValues& chi) {
    QSPParameters out = par;
    const CartanDatum& cd = pair.cartan();
    for (int i : pair.whiteNodes()) {
        // chi(K_{tau i} K_i^-1) = q^{<d(alpha_tau^vee - alpha_i^vee), mu>}.
        long e = cd.d(i) * (chi.mu[static_cast<size_t>(pair.tau(i))] - chi.mu[static_cast<size_t>(i)]);
        out.c[i] = par.c.at(i) * RatFun::q(static_cast<int>(e));
        auto it = chi.bValue.find(i);
        out.s[i] = (it == chi.bValue.end()) ? RatFun() : it->second;
    }
    out.n = familyIndex(pair, out);
    return out;
}

}  // namespace qsph
