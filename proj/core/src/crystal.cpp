#include "qsph/crystal.hpp"

#include <algorithm>
#include <set>

namespace qsph {

std::vector<std::pair<long, ModVec>> sl2StringDecompose(const WeightModule& m, int i,
                                                        const ModVec& v) {
    // Per weight component, assemble the string basis F^(n) u with u running
    // over a kernel basis of E_i at the relevant weights, and solve exactly.
    std::vector<std::pair<long, ModVec>> out;
    std::map<Weight, ModVec> comps;
    for (const auto& [idx, c] : v) comps[m.weightOf(idx)].emplace_back(idx, c);
    const Weight alpha = m.cartan().simpleRoot(i);
    for (const auto& [mu, comp] : comps) {
        // Candidate heights n: u_n lives at mu + n alpha_i and E_i u_n = 0.
        std::vector<ModVec> images;          // stacked: the F^(n)-images
        std::vector<std::pair<long, ModVec>> sources;  // (n, u) per column
        Weight cur = mu;
        long n = 0;
        while (true) {
            auto ws = m.weightSpaces().find(cur);
            if (ws == m.weightSpaces().end() && n > 0) break;
            if (ws != m.weightSpaces().end()) {
                // Kernel of E_i inside this weight space.
                std::vector<ModVec> eimg;
                const auto& members = ws->second;
                for (int b : members) eimg.push_back(m.applyE(i, ModVec{{b, RatFun(1)}}));
                auto ker = kernelOfImages(eimg);
                for (const auto& coeffs : ker) {
                    ModVec u;
                    for (size_t k = 0; k < coeffs.size(); ++k)
                        if (!coeffs[k].isZero())
                            mvAddScaled(u, ModVec{{members[k], RatFun(1)}}, coeffs[k]);
                    ModVec img = m.applyDividedF(i, n, u);
                    if (mvIsZero(img)) continue;
                    images.push_back(img);
                    sources.emplace_back(n, u);
                }
            }
            cur = weightAdd(cur, alpha);
            ++n;
        }
        // Solve comp = sum over columns.
        SpanSolver span;
        std::vector<int> order;
        for (size_t k = 0; k < images.size(); ++k) {
            if (span.insert(images[k])) order.push_back(static_cast<int>(k));
        }
        auto sol = span.solve(comp);
        if (!sol) throw CartanError("sl2StringDecompose: inconsistent string system");
        for (size_t k = 0; k < sol->size(); ++k) {
            if ((*sol)[k].isZero()) continue;
            const auto& [nn, u] = sources[static_cast<size_t>(order[k])];
            out.emplace_back(nn, mvScaled(u, (*sol)[k]));
        }
    }
    // Merge same-n contributions.
    std::map<long, ModVec> merged;
    for (auto& [n, u] : out) mvAddScaled(merged[n], u, RatFun(1));
    out.clear();
    for (auto& [n, u] : merged)
        if (!mvIsZero(u)) out.emplace_back(n, std::move(u));
    return out;
}

ModVec kashiwaraF(const WeightModule& m, int i, const ModVec& v) {
    ModVec out;
    for (const auto& [n, u] : sl2StringDecompose(m, i, v))
        mvAddScaled(out, m.applyDividedF(i, n + 1, u), RatFun(1));
    return out;
}

ModVec kashiwaraE(const WeightModule& m, int i, const ModVec& v) {
    ModVec out;
    for (const auto& [n, u] : sl2StringDecompose(m, i, v)) {
        if (n == 0) continue;
        mvAddScaled(out, m.applyDividedF(i, n - 1, u), RatFun(1));
    }
    return out;
}

// -------------------------------------------------------------- CrystalLattice

CrystalLattice::CrystalLattice(std::shared_ptr<const WeightModule> mod) : mod_(std::move(mod)) {
    if (mod_->highestIndex() < 0)
        throw CartanError("crystal lattice requires a highest weight module");
    // String-parametrization enumeration along a reduced word of w0:
    // vectors Ftilde_{i1}^{a1} ... Ftilde_{iN}^{aN} v_lambda, rightmost
    // applied first.  The nonzero results span the crystal lattice.
    std::vector<int> word = mod_->cartan().longestWord();
    std::vector<ModVec> stage = {ModVec{{mod_->highestIndex(), RatFun(1)}}};
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        std::vector<ModVec> next;
        for (const auto& v : stage) {
            ModVec cur = v;
            next.push_back(cur);
            while (true) {
                cur = kashiwaraF(*mod_, *it, cur);
                if (mvIsZero(cur)) break;
                next.push_back(cur);
            }
        }
        stage = std::move(next);
    }
    for (const auto& v : stage) lat_.addGenerator(v);
    lat_.build();
    if (lat_.rank() != mod_->dim())
        throw CartanError("crystal lattice enumeration did not reach full rank");
}

bool CrystalLattice::equivInfinity(const ModVec& v, const ModVec& w) {
    ModVec diff = v;
    mvAddScaled(diff, w, RatFun(-1));
    return lat_.containsSmall(diff);
}

bool CrystalLattice::membership(LatticeRing ring, const ModVec& v) {
    switch (ring) {
        case LatticeRing::AInfinity:
            return lat_.contains(v);
        case LatticeRing::SmallAInfinity:
            return lat_.containsSmall(v);
        case LatticeRing::ALaurent: {
            auto coords = lat_.coordinates(v);
            if (!coords) return false;
            for (const auto& c : *coords)
                if (!c.isZero() && !c.isALattice()) return false;
            return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------- IntegralForm

IntegralForm::IntegralForm(std::shared_ptr<const WeightModule> mod) : mod_(std::move(mod)) {
    if (mod_->highestIndex() < 0)
        throw CartanError("integral form requires a highest weight module");
    const CartanDatum& cd = mod_->cartan();
    int n = cd.rank();
    // Saturate weight by weight: the A-span at weight mu is generated by
    // F_i^(a) applied to the generators of higher weights (the operators are
    // A-linear, so per-weight saturation is complete).
    std::map<Weight, std::vector<ModVec>> gensAt;
    gensAt[mod_->highestWeight()].push_back(ModVec{{mod_->highestIndex(), RatFun(1)}});
    // Weights in decreasing dominance-compatible order = construction order.
    std::vector<Weight> order;
    for (int k = 0; k < mod_->dim(); ++k)
        if (mod_->ordinalOf(k) == 0) order.push_back(mod_->weightOf(k));
    for (const Weight& mu : order) {
        auto& gens = gensAt[mu];
        for (int i = 0; i < n; ++i) {
            // Pull down F_i^(a)-images from mu + a alpha_i.
            Weight src = mu;
            for (long a = 1;; ++a) {
                src = weightAdd(src, cd.simpleRoot(i));
                auto it = gensAt.find(src);
                if (it == gensAt.end()) {
                    if (mod_->weightSpaces().find(src) == mod_->weightSpaces().end()) break;
                    continue;
                }
                for (const auto& g : it->second) {
                    ModVec img = mod_->applyDividedF(i, a, g);
                    if (!mvIsZero(img)) gens.push_back(img);
                }
            }
        }
        // Reduce this weight space's generator list before it is used as a
        // source further down: a local echelon keeps the saturation small.
        if (!gens.empty()) {
            ALattice local;
            for (const auto& g : gens) local.addGenerator(g);
            local.build();
            std::vector<ModVec> reduced = local.basis();
            for (const auto& g : local.leftoverGenerators()) reduced.push_back(g);
            gens = std::move(reduced);
        }
        for (const auto& g : gens) lat_.addGenerator(g);
    }
    lat_.build();
}

bool IntegralForm::dualContains(const ModVec& v) const {
    for (const auto& g : lat_.spanningSet())
        if (!mod_->pair(v, g).isALattice()) return false;
    return true;
}

}  // namespace qsph
