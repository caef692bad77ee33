#include "qsph/braid.hpp"

namespace qsph {

namespace {

std::map<Weight, ModVec> byWeight(const WeightModule& m, const ModVec& v) {
    std::map<Weight, ModVec> out;
    for (const auto& [idx, c] : v) out[m.weightOf(idx)].emplace_back(idx, c);
    return out;
}

// Steps along +alpha_i (dirUp) or -alpha_i until leaving the weight support.
long stringReach(const WeightModule& m, int i, const Weight& mu, int dirUp) {
    const Weight alpha = m.cartan().simpleRoot(i);
    Weight cur = mu;
    long k = 0;
    while (true) {
        cur = dirUp > 0 ? weightAdd(cur, alpha) : weightSub(cur, alpha);
        if (m.weightSpaces().find(cur) == m.weightSpaces().end()) break;
        ++k;
    }
    return k;
}

}  // namespace

ModVec braidApply(const WeightModule& m, int i, int dir, const ModVec& v) {
    // dir = +1:  T(x) = sum_{-a+b-c = <alpha_i^vee, mu>} (-1)^b q_i^{b-ac}
    //            E^(a) F^(b) E^(c) x      for x of weight mu;
    // dir = -1:  the inverse, F^(a) E^(b) F^(c), exponent -(b-ac), with
    //            a-b+c = <alpha_i^vee, mu>.
    ModVec out;
    int d = m.cartan().d(i);
    for (const auto& [mu, comp] : byWeight(m, v)) {
        long pairing = mu[static_cast<size_t>(i)];
        long up = stringReach(m, i, mu, +1);
        long down = stringReach(m, i, mu, -1);
        long cMax = dir > 0 ? up : down;
        ModVec ec = comp;  // running E^(c) (or F^(c)) chain
        for (long c = 0; c <= cMax && !mvIsZero(ec); ++c) {
            if (c > 0) {
                ec = dir > 0 ? m.applyE(i, ec) : m.applyF(i, ec);
                if (mvIsZero(ec)) break;
                ec = mvScaled(ec, quantumInt(c, d).inverse());
            }
            long bMax = dir > 0 ? c + down : c + up;
            ModVec fb = ec;  // running F^(b) (or E^(b)) chain from ec
            for (long b = 0; b <= bMax && !mvIsZero(fb); ++b) {
                if (b > 0) {
                    fb = dir > 0 ? m.applyF(i, fb) : m.applyE(i, fb);
                    if (mvIsZero(fb)) break;
                    fb = mvScaled(fb, quantumInt(b, d).inverse());
                }
                long a = dir > 0 ? b - c - pairing : b - c + pairing;
                if (a < 0) continue;
                ModVec ea = dir > 0 ? m.applyDividedE(i, a, fb) : m.applyDividedF(i, a, fb);
                if (mvIsZero(ea)) continue;
                long expo = b - a * c;
                RatFun coeff = RatFun::q(static_cast<int>(d * (dir > 0 ? expo : -expo)));
                if (b % 2 == 1) coeff = -coeff;
                mvAddScaled(out, ea, coeff);
            }
        }
    }
    return out;
}

ModVec braidWordApply(const WeightModule& m, const std::vector<int>& word, int dir,
                      const ModVec& v) {
    ModVec out = v;
    if (dir > 0) {
        for (auto it = word.rbegin(); it != word.rend(); ++it) out = braidApply(m, *it, 1, out);
    } else {
        for (int i : word) out = braidApply(m, i, -1, out);
    }
    return out;
}

ModVec conjugatedEApply(const WeightModule& m, const std::vector<int>& word, int j,
                        const ModVec& v) {
    ModVec t = braidWordApply(m, word, -1, v);
    t = m.applyE(j, t);
    return braidWordApply(m, word, 1, t);
}

std::vector<ModVec> conjugatedEColumns(const WeightModule& m, const std::vector<int>& word,
                                       int j) {
    std::vector<ModVec> cols(static_cast<size_t>(m.dim()));
    for (int k = 0; k < m.dim(); ++k)
        cols[static_cast<size_t>(k)] = conjugatedEApply(m, word, j, ModVec{{k, RatFun(1)}});
    return cols;
}

}  // namespace qsph
