#include "qsph/module.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>

namespace qsph {

const std::vector<int>& WeightModule::basisAtWeight(const Weight& mu) const {
    static const std::vector<int> empty;
    auto it = atWeight_.find(mu);
    return it == atWeight_.end() ? empty : it->second;
}

const Weight& WeightModule::highestWeight() const {
    if (highest_ < 0) throw CartanError("module has no distinguished highest vector");
    return top_;
}

ModVec WeightModule::applyColumns(const std::vector<std::vector<ModVec>>& op, int i,
                                  const ModVec& v) const {
    ModVec out;
    for (const auto& [idx, c] : v)
        mvAddScaled(out, op[static_cast<size_t>(i)][static_cast<size_t>(idx)], c);
    return out;
}

ModVec WeightModule::applyE(int i, const ModVec& v) const { return applyColumns(eOp_, i, v); }
ModVec WeightModule::applyF(int i, const ModVec& v) const { return applyColumns(fOp_, i, v); }

ModVec WeightModule::applyK(const std::vector<long>& h, const ModVec& v) const {
    ModVec out;
    out.reserve(v.size());
    for (const auto& [idx, c] : v) {
        long e = 0;
        const Weight& mu = weightOf(idx);
        for (size_t j = 0; j < h.size(); ++j) e += h[j] * mu[j];
        out.emplace_back(idx, c * RatFun::q(static_cast<int>(e)));
    }
    return out;
}

ModVec WeightModule::applyKi(int i, int sign, const ModVec& v) const {
    ModVec out;
    out.reserve(v.size());
    int d = cd_->d(i);
    for (const auto& [idx, c] : v) {
        int e = sign * d * weightOf(idx)[static_cast<size_t>(i)];
        out.emplace_back(idx, c * RatFun::q(e));
    }
    return out;
}

ModVec WeightModule::applyDividedE(int i, long a, const ModVec& v) const {
    ModVec out = v;
    for (long k = 0; k < a && !mvIsZero(out); ++k) out = applyE(i, out);
    if (a > 1 && !mvIsZero(out)) out = mvScaled(out, quantumFactorial(a, cd_->d(i)).inverse());
    return out;
}

ModVec WeightModule::applyDividedF(int i, long a, const ModVec& v) const {
    ModVec out = v;
    for (long k = 0; k < a && !mvIsZero(out); ++k) out = applyF(i, out);
    if (a > 1 && !mvIsZero(out)) out = mvScaled(out, quantumFactorial(a, cd_->d(i)).inverse());
    return out;
}

RatFun WeightModule::pairBasis(int r, int s) const {
    const Weight& wr = weightOf(r);
    if (wr != weightOf(s)) return RatFun();
    auto it = gram_.find(wr);
    if (it == gram_.end()) {
        if (!tensor_) throw CartanError("contravariant form unavailable");
        // Product form block, built on demand.
        const auto& members = atWeight_.at(wr);
        size_t m = members.size();
        std::vector<std::vector<RatFun>> block(m, std::vector<RatFun>(m));
        for (size_t x = 0; x < m; ++x)
            for (size_t y = x; y < m; ++y) {
                auto [ra, rb] = tensor_->pairOf[static_cast<size_t>(members[x])];
                auto [sa, sb] = tensor_->pairOf[static_cast<size_t>(members[y])];
                if (tensor_->left->weightOf(ra) != tensor_->left->weightOf(sa)) continue;
                RatFun ga = tensor_->left->pairBasis(ra, sa);
                if (ga.isZero()) continue;
                RatFun gb = tensor_->right->pairBasis(rb, sb);
                if (gb.isZero()) continue;
                block[x][y] = ga * gb;
                if (x != y) block[y][x] = block[x][y];
            }
        it = gram_.emplace(wr, std::move(block)).first;
    }
    return it->second[static_cast<size_t>(ordinalOf(r))][static_cast<size_t>(ordinalOf(s))];
}

RatFun WeightModule::pair(const ModVec& v, const ModVec& w) const {
    RatFun out;
    for (const auto& [r, cv] : v)
        for (const auto& [s, cw] : w) {
            if (weightOf(r) != weightOf(s)) continue;
            RatFun g = pairBasis(r, s);
            if (!g.isZero()) out += cv * cw * g;
        }
    return out;
}

// --------------------------------------------------------------- buildSimple

std::shared_ptr<WeightModule> WeightModule::buildSimple(const CartanDatum& cd,
                                                        const Weight& lambda, long dimCap) {
    if (!cd.isDominant(lambda)) throw CartanError("buildSimple: weight not dominant");
    BigInt predicted = cd.weylDim(lambda);
    if (predicted > dimCap)
        throw DimensionCapExceeded("predicted dimension " + predicted.get_str() +
                                   " exceeds cap " + std::to_string(dimCap));
    if (predicted <= 150) return buildSimpleRadical(cd, lambda, dimCap);
    // Iterated fundamental tensors, top component at each step.
    std::shared_ptr<WeightModule> cur;
    for (int i = 0; i < cd.rank(); ++i) {
        for (int copy = 0; copy < lambda[static_cast<size_t>(i)]; ++copy) {
            auto fund = buildSimpleRadical(cd, cd.fundamentalWeight(i), dimCap);
            if (!cur) {
                cur = fund;
                continue;
            }
            auto t = tensor(cur, fund);
            cur = extractTopComponent(t, dimCap);
        }
    }
    if (!cur) return buildSimpleRadical(cd, lambda, dimCap);  // lambda = 0
    if (BigInt(cur->dim()) != predicted)
        throw CartanError("buildSimple: dimension mismatch against Weyl oracle");
    return cur;
}

std::shared_ptr<WeightModule> WeightModule::buildSimpleRadical(const CartanDatum& cd,
                                                               const Weight& lambda, long dimCap) {
    if (!cd.isDominant(lambda)) throw CartanError("buildSimple: weight not dominant");
    BigInt predicted = cd.weylDim(lambda);
    if (predicted > dimCap)
        throw DimensionCapExceeded("predicted dimension " + predicted.get_str() +
                                   " exceeds cap " + std::to_string(dimCap));
    auto mod = std::make_shared<WeightModule>();
    mod->cd_ = std::make_shared<CartanDatum>(cd);
    int n = cd.rank();
    mod->eOp_.assign(static_cast<size_t>(n), {});
    mod->fOp_.assign(static_cast<size_t>(n), {});
    mod->top_ = lambda;
    mod->highest_ = 0;
    mod->weights_.push_back(lambda);
    mod->ordinals_.push_back(0);
    mod->atWeight_[lambda] = {0};
    mod->gram_[lambda] = {{RatFun(1)}};
    for (int i = 0; i < n; ++i) {
        mod->eOp_[static_cast<size_t>(i)].push_back({});
        mod->fOp_[static_cast<size_t>(i)].push_back({});
    }

    std::vector<Weight> layer = {lambda};
    while (!layer.empty()) {
        std::set<Weight> next;
        for (const Weight& mu : layer)
            for (int i = 0; i < n; ++i) next.insert(weightSub(mu, cd.simpleRoot(i)));
        std::vector<Weight> produced;
        for (const Weight& mu : next) {
            // Candidates F_i b for b in the weight space above.
            struct Cand {
                int i, b;
                std::vector<ModVec> eimg;  // E_j images, global indices
            };
            std::vector<Cand> cands;
            for (int i = 0; i < n; ++i) {
                Weight above = weightAdd(mu, cd.simpleRoot(i));
                auto it = mod->atWeight_.find(above);
                if (it == mod->atWeight_.end()) continue;
                for (int b : it->second) {
                    Cand c;
                    c.i = i;
                    c.b = b;
                    c.eimg.assign(static_cast<size_t>(n), {});
                    for (int j = 0; j < n; ++j) {
                        // E_j F_i b = F_i E_j b + delta_ij [<alpha_i^vee,mu> + 2]_i b
                        ModVec img;
                        const ModVec& ejb = mod->eOp_[static_cast<size_t>(j)][static_cast<size_t>(b)];
                        for (const auto& [k, coeff] : ejb)
                            mvAddScaled(img, mod->fOp_[static_cast<size_t>(i)][static_cast<size_t>(k)],
                                        coeff);
                        if (i == j) {
                            long pairing = mu[static_cast<size_t>(i)] + 2;
                            RatFun bracket = quantumInt(pairing, cd.d(i));
                            if (!bracket.isZero())
                                mvAddScaled(img, ModVec{{b, RatFun(1)}}, bracket);
                        }
                        c.eimg[static_cast<size_t>(j)] = std::move(img);
                    }
                    cands.push_back(std::move(c));
                }
            }
            if (cands.empty()) continue;
            // Gram of candidates: (F_i b, c') = q_i^{-1-<alpha_i^vee,mu>} (b, E_i c');
            // symmetric, so fill the upper triangle only.
            size_t m = cands.size();
            std::vector<std::vector<RatFun>> G(m, std::vector<RatFun>(m));
            for (size_t r = 0; r < m; ++r) {
                int i = cands[r].i;
                RatFun scale =
                    RatFun::q(cd.d(i) * (-1 - static_cast<int>(mu[static_cast<size_t>(cands[r].i)])));
                for (size_t s = r; s < m; ++s) {
                    RatFun acc;
                    for (const auto& [k, coeff] : cands[s].eimg[static_cast<size_t>(i)]) {
                        RatFun g = mod->pairBasis(cands[r].b, k);
                        if (!g.isZero()) acc += coeff * g;
                    }
                    G[r][s] = scale * acc;
                    if (s != r) G[s][r] = G[r][s];
                }
            }
            // Keep candidates with independent Gram rows; they become basis.
            SpanSolver rows;
            std::vector<ModVec> expansion(m);
            std::vector<int> globalOf;
            std::vector<int> selected;
            for (size_t r = 0; r < m; ++r) {
                ModVec row;
                for (size_t s = 0; s < m; ++s)
                    if (!G[r][s].isZero()) row.emplace_back(static_cast<int>(s), G[r][s]);
                auto sol = rows.solve(row);
                if (!sol) {
                    rows.insert(row);
                    int gidx = static_cast<int>(mod->weights_.size());
                    mod->weights_.push_back(mu);
                    mod->ordinals_.push_back(static_cast<int>(selected.size()));
                    mod->atWeight_[mu].push_back(gidx);
                    for (int j = 0; j < n; ++j) {
                        mod->eOp_[static_cast<size_t>(j)].push_back(
                            cands[r].eimg[static_cast<size_t>(j)]);
                        mod->fOp_[static_cast<size_t>(j)].push_back({});
                    }
                    selected.push_back(static_cast<int>(r));
                    globalOf.push_back(gidx);
                    expansion[r] = ModVec{{gidx, RatFun(1)}};
                } else {
                    ModVec combo;
                    for (size_t k = 0; k < sol->size(); ++k)
                        if (!(*sol)[k].isZero())
                            combo.emplace_back(globalOf[k], (*sol)[k]);
                    std::sort(combo.begin(), combo.end(),
                              [](const auto& x, const auto& y) { return x.first < y.first; });
                    expansion[r] = std::move(combo);
                }
            }
            if (selected.empty()) continue;
            for (size_t r = 0; r < m; ++r)
                mod->fOp_[static_cast<size_t>(cands[r].i)][static_cast<size_t>(cands[r].b)] =
                    expansion[r];
            size_t ns = selected.size();
            std::vector<std::vector<RatFun>> block(ns, std::vector<RatFun>(ns));
            for (size_t x = 0; x < ns; ++x)
                for (size_t y = 0; y < ns; ++y)
                    block[x][y] =
                        G[static_cast<size_t>(selected[x])][static_cast<size_t>(selected[y])];
            mod->gram_[mu] = std::move(block);
            produced.push_back(mu);
            if (static_cast<long>(mod->weights_.size()) > dimCap)
                throw DimensionCapExceeded("dimension cap exceeded during construction");
        }
        layer = std::move(produced);
    }
    if (BigInt(mod->dim()) != predicted)
        throw CartanError("buildSimple: dimension mismatch against Weyl oracle");
    return mod;
}

// -------------------------------------------------------------------- tensor

std::shared_ptr<WeightModule> WeightModule::tensor(std::shared_ptr<const WeightModule> a,
                                                   std::shared_ptr<const WeightModule> b) {
    auto mod = std::make_shared<WeightModule>();
    mod->cd_ = std::make_shared<CartanDatum>(a->cartan());
    const CartanDatum& cd = *mod->cd_;
    int n = cd.rank();
    Weight top = weightAdd(a->top_, b->top_);
    mod->top_ = top;
    struct Entry {
        int h;
        Weight mu;
        int ia, ib;
    };
    std::vector<Entry> entries;
    std::map<Weight, int> heightOf;
    for (int ia = 0; ia < a->dim(); ++ia)
        for (int ib = 0; ib < b->dim(); ++ib) {
            Weight mu = weightAdd(a->weightOf(ia), b->weightOf(ib));
            auto it = heightOf.find(mu);
            if (it == heightOf.end()) it = heightOf.emplace(mu, cd.heightFromTop(top, mu)).first;
            entries.push_back({it->second, mu, ia, ib});
        }
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
        if (x.h != y.h) return x.h < y.h;
        if (x.mu != y.mu) return x.mu < y.mu;
        if (x.ia != y.ia) return x.ia < y.ia;
        return x.ib < y.ib;
    });
    auto info = std::make_shared<TensorInfo>();
    info->left = a;
    info->right = b;
    for (size_t k = 0; k < entries.size(); ++k) {
        const auto& e = entries[k];
        int idx = static_cast<int>(k);
        mod->weights_.push_back(e.mu);
        mod->ordinals_.push_back(static_cast<int>(mod->atWeight_[e.mu].size()));
        mod->atWeight_[e.mu].push_back(idx);
        info->pairOf.emplace_back(e.ia, e.ib);
        info->indexOf[{e.ia, e.ib}] = idx;
    }
    mod->eOp_.assign(static_cast<size_t>(n), std::vector<ModVec>(entries.size()));
    mod->fOp_.assign(static_cast<size_t>(n), std::vector<ModVec>(entries.size()));
    for (size_t k = 0; k < entries.size(); ++k) {
        int ia = entries[k].ia, ib = entries[k].ib;
        const Weight& wa = a->weightOf(ia);
        const Weight& wb = b->weightOf(ib);
        for (int i = 0; i < n; ++i) {
            // Delta(E_i) = E_i x 1 + K_i x E_i.
            ModVec e;
            for (const auto& [ja, c] : a->eColumns(i)[static_cast<size_t>(ia)])
                mvAddScaled(e, ModVec{{info->indexOf.at({ja, ib}), RatFun(1)}}, c);
            RatFun ka = RatFun::q(cd.d(i) * wa[static_cast<size_t>(i)]);
            for (const auto& [jb, c] : b->eColumns(i)[static_cast<size_t>(ib)])
                mvAddScaled(e, ModVec{{info->indexOf.at({ia, jb}), RatFun(1)}}, ka * c);
            mod->eOp_[static_cast<size_t>(i)][k] = std::move(e);
            // Delta(F_i) = F_i x K_i^-1 + 1 x F_i.
            ModVec f;
            RatFun kb = RatFun::q(-cd.d(i) * wb[static_cast<size_t>(i)]);
            for (const auto& [ja, c] : a->fColumns(i)[static_cast<size_t>(ia)])
                mvAddScaled(f, ModVec{{info->indexOf.at({ja, ib}), RatFun(1)}}, kb * c);
            for (const auto& [jb, c] : b->fColumns(i)[static_cast<size_t>(ib)])
                mvAddScaled(f, ModVec{{info->indexOf.at({ia, jb}), RatFun(1)}}, c);
            mod->fOp_[static_cast<size_t>(i)][k] = std::move(f);
        }
    }
    if (a->highest_ >= 0 && b->highest_ >= 0)
        mod->highest_ = info->indexOf.at({a->highest_, b->highest_});
    mod->tensor_ = info;  // gram blocks are produced lazily from the factors
    return mod;
}

// --------------------------------------------------------- extractTopComponent

namespace {

// Scales a vector to primitive integral form: clears denominators, divides
// by the integer content and the common q-power, fixes the sign of the
// leading entry.  Keeps echelon rows flat so entry sizes do not cascade.
static ModVec mvPrimitive(const ModVec& v) {
    if (mvIsZero(v)) return v;
    IntPoly lcm(1);
    for (const auto& [i, c] : v) {
        IntPoly g = IntPoly::gcd(lcm, c.den());
        lcm = IntPoly::divExact(lcm * c.den(), g);
    }
    ModVec out = mvScaled(v, RatFun(lcm, IntPoly(1)));
    // All entries are Laurent now; strip content and common q-powers.
    BigInt content(0);
    int minOrd = 0;
    bool first = true;
    for (const auto& [i, c] : out) {
        const IntPoly& num = c.num();
        BigInt cc = num.content();
        if (cc < 0) cc = -cc;
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), cc.get_mpz_t());
        int ord = num.ord() - c.den().deg();  // den is q^k here
        if (first || ord < minOrd) minOrd = ord;
        first = false;
    }
    RatFun scale = RatFun::q(-minOrd) / RatFun::fromInt(content);
    out = mvScaled(out, scale);
    if (out.front().second.num().leading() < 0) out = mvScaled(out, RatFun(-1));
    return out;
}

// Triangular echelon without pivot normalization: rows stay as given up to
// subtraction of multiples of earlier rows and a primitive rescaling.
// Pivot preference: units of A, then entries of minimal size.
class TriangularSpan {
public:
    void build(std::vector<ModVec> active) {
        active.erase(std::remove_if(active.begin(), active.end(),
                                    [](const ModVec& v) { return mvIsZero(v); }),
                     active.end());
        std::set<int> columns;
        for (const auto& v : active)
            for (const auto& [i, c] : v) columns.insert(i);
        bool progress = true;
        while (progress && !active.empty()) {
            progress = false;
            for (int col : columns) {
                bool pivoted = false;
                for (int p : pivots_)
                    if (p == col) { pivoted = true; break; }
                if (pivoted) continue;
                std::vector<size_t> cands;
                for (size_t k = 0; k < active.size(); ++k)
                    if (!mvCoeff(active[k], col).isZero()) cands.push_back(k);
                if (cands.empty()) continue;
                // Prefer units of A, then entries of minimal size; cheap to
                // test and keeps the division coefficients small.
                int chosen = -1;
                long best = 0;
                for (size_t k : cands) {
                    RatFun p = mvCoeff(active[k], col);
                    if (p.isUnitOfA()) {
                        chosen = static_cast<int>(k);
                        break;
                    }
                    long sz = p.num().deg() + p.den().deg();
                    if (chosen < 0 || sz < best) {
                        chosen = static_cast<int>(k);
                        best = sz;
                    }
                }
                ModVec pivotRow = mvPrimitive(active[static_cast<size_t>(chosen)]);
                active.erase(active.begin() + chosen);
                RatFun p = mvCoeff(pivotRow, col);
                for (auto& w : active) {
                    RatFun c = mvCoeff(w, col);
                    if (c.isZero()) continue;
                    // Fraction-free step: w <- p w - c pivotRow, re-primitivized.
                    ModVec scaled = mvScaled(w, p);
                    mvAddScaled(scaled, pivotRow, -c);
                    w = mvIsZero(scaled) ? scaled : mvPrimitive(scaled);
                }
                active.erase(std::remove_if(active.begin(), active.end(),
                                            [](const ModVec& v) { return mvIsZero(v); }),
                             active.end());
                rows_.push_back(std::move(pivotRow));
                pivots_.push_back(col);
                progress = true;
            }
        }
        if (!active.empty())
            throw CartanError("TriangularSpan: nonzero rows without a pivot column");
    }
    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<ModVec>& rows() const { return rows_; }
    // Forward reduction in placement order; exact over Q(q).
    ModVec reduce(const ModVec& v0, std::vector<RatFun>& coeffs) const {
        ModVec v = v0;
        coeffs.assign(rows_.size(), RatFun());
        for (size_t k = 0; k < rows_.size(); ++k) {
            RatFun c = mvCoeff(v, pivots_[k]);
            if (c.isZero()) continue;
            RatFun f = c / mvCoeff(rows_[k], pivots_[k]);
            mvAddScaled(v, rows_[k], -f);
            coeffs[k] = f;
        }
        return v;
    }

private:
    std::vector<ModVec> rows_;
    std::vector<int> pivots_;
};

}  // namespace

std::shared_ptr<WeightModule> WeightModule::extractTopComponent(
    std::shared_ptr<const WeightModule> T, long dimCap) {
    if (T->highestIndex() < 0) throw CartanError("extractTopComponent: no top vector");
    const CartanDatum& cd = T->cartan();
    int n = cd.rank();
    Weight top = T->highestWeight();
    BigInt predicted = cd.weylDim(top);
    if (predicted > dimCap)
        throw DimensionCapExceeded("predicted dimension " + predicted.get_str() +
                                   " exceeds cap " + std::to_string(dimCap));
    auto mod = std::make_shared<WeightModule>();
    mod->cd_ = std::make_shared<CartanDatum>(cd);
    mod->top_ = top;
    mod->highest_ = 0;
    mod->eOp_.assign(static_cast<size_t>(n), {});
    mod->fOp_.assign(static_cast<size_t>(n), {});

    struct Layer {
        TriangularSpan lat;
        std::vector<int> global;  // module index per echelon row
    };
    std::map<Weight, Layer> layers;
    {
        Layer& l0 = layers[top];
        l0.lat.build({ModVec{{T->highestIndex(), RatFun(1)}}});
        l0.global.push_back(0);
        mod->weights_.push_back(top);
        mod->ordinals_.push_back(0);
        mod->atWeight_[top] = {0};
        for (int i = 0; i < n; ++i) {
            mod->eOp_[static_cast<size_t>(i)].push_back({});
            mod->fOp_[static_cast<size_t>(i)].push_back({});
        }
        mod->gram_[top] = {{RatFun(1)}};
    }
    std::vector<Weight> layer = {top};
    while (!layer.empty()) {
        std::set<Weight> next;
        for (const Weight& mu : layer)
            for (int i = 0; i < n; ++i) next.insert(weightSub(mu, cd.simpleRoot(i)));
        std::vector<Weight> produced;
        for (const Weight& mu : next) {
            struct Cand {
                int i, parent;
                ModVec vec;  // T coordinates
            };
            std::vector<Cand> cands;
            for (int i = 0; i < n; ++i) {
                Weight above = weightAdd(mu, cd.simpleRoot(i));
                auto it = layers.find(above);
                if (it == layers.end()) continue;
                const auto& rows = it->second.lat.rows();
                for (size_t r = 0; r < rows.size(); ++r) {
                    ModVec img = T->applyF(i, rows[r]);
                    cands.push_back({i, it->second.global[r], std::move(img)});
                }
            }
            if (cands.empty()) continue;
            Layer& lay = layers[mu];
            {
                std::vector<ModVec> gens;
                gens.reserve(cands.size());
                for (const auto& c : cands) gens.push_back(c.vec);
                lay.lat.build(std::move(gens));
            }
            int rank = lay.lat.rank();
            if (rank == 0) continue;
            for (int r = 0; r < rank; ++r) {
                int gidx = static_cast<int>(mod->weights_.size());
                mod->weights_.push_back(mu);
                mod->ordinals_.push_back(r);
                mod->atWeight_[mu].push_back(gidx);
                lay.global.push_back(gidx);
                for (int i = 0; i < n; ++i) {
                    mod->eOp_[static_cast<size_t>(i)].push_back({});
                    mod->fOp_[static_cast<size_t>(i)].push_back({});
                }
            }
            // F-action expansions of the candidates.
            for (const auto& c : cands) {
                if (mvIsZero(c.vec)) continue;
                std::vector<RatFun> coeffs;
                ModVec residue = lay.lat.reduce(c.vec, coeffs);
                if (!mvIsZero(residue))
                    throw CartanError("extractTopComponent: candidate escaped its span");
                ModVec expansion;
                for (size_t k = 0; k < coeffs.size(); ++k)
                    if (!coeffs[k].isZero()) expansion.emplace_back(lay.global[k], coeffs[k]);
                std::sort(expansion.begin(), expansion.end(),
                          [](const auto& x, const auto& y) { return x.first < y.first; });
                mod->fOp_[static_cast<size_t>(c.i)][static_cast<size_t>(c.parent)] = expansion;
            }
            // E-actions of the new basis rows, expanded in the layers above.
            const auto& rows = lay.lat.rows();
            for (int r = 0; r < rank; ++r) {
                for (int j = 0; j < n; ++j) {
                    ModVec img = T->applyE(j, rows[static_cast<size_t>(r)]);
                    if (mvIsZero(img)) continue;
                    Weight aboveW = weightAdd(mu, cd.simpleRoot(j));
                    auto it = layers.find(aboveW);
                    if (it == layers.end())
                        throw CartanError("extractTopComponent: E-image left the module");
                    std::vector<RatFun> coeffs;
                    ModVec residue = it->second.lat.reduce(img, coeffs);
                    if (!mvIsZero(residue))
                        throw CartanError("extractTopComponent: E-image escaped its span");
                    ModVec expansion;
                    for (size_t k = 0; k < coeffs.size(); ++k)
                        if (!coeffs[k].isZero())
                            expansion.emplace_back(it->second.global[k], coeffs[k]);
                    std::sort(expansion.begin(), expansion.end(),
                              [](const auto& x, const auto& y) { return x.first < y.first; });
                    mod->eOp_[static_cast<size_t>(j)][static_cast<size_t>(lay.global[static_cast<size_t>(r)])] =
                        expansion;
                }
            }
            // Gram block from the ambient product form.
            size_t m = static_cast<size_t>(rank);
            std::vector<std::vector<RatFun>> block(m, std::vector<RatFun>(m));
            for (size_t x = 0; x < m; ++x)
                for (size_t y = x; y < m; ++y) {
                    block[x][y] = T->pair(rows[x], rows[y]);
                    if (x != y) block[y][x] = block[x][y];
                }
            mod->gram_[mu] = std::move(block);
            produced.push_back(mu);
            if (static_cast<long>(mod->weights_.size()) > dimCap)
                throw DimensionCapExceeded("dimension cap exceeded during extraction");
        }
        layer = std::move(produced);
    }
    if (BigInt(mod->dim()) != predicted)
        throw CartanError("extractTopComponent: dimension mismatch against Weyl oracle");
    return mod;
}

// ---------------------------------------------------------------- relations

bool WeightModule::checkRelations() const {
    int n = cd_->rank();
    for (int idx = 0; idx < dim(); ++idx) {
        ModVec v{{idx, RatFun(1)}};
        const Weight& mu = weightOf(idx);
        for (int i = 0; i < n; ++i) {
            Weight up = weightAdd(mu, cd_->simpleRoot(i));
            for (const auto& [k, c] : eOp_[static_cast<size_t>(i)][static_cast<size_t>(idx)])
                if (weightOf(k) != up) return false;
            Weight down = weightSub(mu, cd_->simpleRoot(i));
            for (const auto& [k, c] : fOp_[static_cast<size_t>(i)][static_cast<size_t>(idx)])
                if (weightOf(k) != down) return false;
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                ModVec lhs = applyE(i, applyF(j, v));
                mvAddScaled(lhs, applyF(j, applyE(i, v)), RatFun(-1));
                if (i == j) {
                    RatFun bracket = quantumInt(mu[static_cast<size_t>(i)], cd_->d(i));
                    if (!bracket.isZero()) mvAddScaled(lhs, v, -bracket);
                }
                if (!mvIsZero(lhs)) return false;
            }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j || cd_->a(i, j) == 0) continue;
                long top = 1 - cd_->a(i, j);
                ModVec accE, accF;
                for (long r = 0; r <= top; ++r) {
                    long s = top - r;
                    RatFun sign = (s % 2 == 0) ? RatFun(1) : RatFun(-1);
                    ModVec t = applyDividedE(i, s, v);
                    t = applyE(j, t);
                    t = applyDividedE(i, r, t);
                    mvAddScaled(accE, t, sign);
                    ModVec u = applyDividedF(i, s, v);
                    u = applyF(j, u);
                    u = applyDividedF(i, r, u);
                    mvAddScaled(accF, u, sign);
                }
                if (!mvIsZero(accE) || !mvIsZero(accF)) return false;
            }
    }
    return true;
}

// ------------------------------------------------------------- serialization

void WeightModule::serialize(std::ostream& os) const {
    os << "module v1\n";
    os << "cartan " << cd_->typeLabel() << "\n";
    if (highest_ >= 0) {
        os << "highest";
        for (int x : top_) os << " " << x;
        os << "\n";
    }
    os << "dim " << dim() << "\n";
    for (int k = 0; k < dim(); ++k) {
        os << "basis " << k << " weight";
        for (int x : weightOf(k)) os << " " << x;
        os << " ordinal " << ordinalOf(k) << "\n";
    }
    for (int i = 0; i < cd_->rank(); ++i) {
        for (int k = 0; k < dim(); ++k)
            for (const auto& [row, c] : eOp_[static_cast<size_t>(i)][static_cast<size_t>(k)])
                os << "E " << (i + 1) << " " << row << " " << k << " " << c.str() << "\n";
        for (int k = 0; k < dim(); ++k)
            for (const auto& [row, c] : fOp_[static_cast<size_t>(i)][static_cast<size_t>(k)])
                os << "F " << (i + 1) << " " << row << " " << k << " " << c.str() << "\n";
    }
}

// --------------------------------------------------------- CartanProjection

CartanProjection::CartanProjection(std::shared_ptr<const WeightModule> tensorModule, int topIndex)
    : mod_(std::move(tensorModule)) {
    ModVec seed{{topIndex, RatFun(1)}};
    nSpan_.insert(seed);
    nBasis_.push_back(seed);
    words_.push_back({});
    size_t head = 0;
    int n = mod_->cartan().rank();
    while (head < nBasis_.size()) {
        ModVec v = nBasis_[head];
        std::vector<int> w = words_[head];
        ++head;
        for (int i = 0; i < n; ++i) {
            ModVec u = mod_->applyF(i, v);
            if (mvIsZero(u)) continue;
            if (nSpan_.insert(u)) {
                nBasis_.push_back(u);
                std::vector<int> nw;
                nw.push_back(i);
                nw.insert(nw.end(), w.begin(), w.end());
                words_.push_back(std::move(nw));
            }
        }
    }
    for (size_t k = 0; k < nBasis_.size(); ++k) {
        const Weight& mu = mod_->weightOf(nBasis_[k].front().first);
        blocks_[mu].members.push_back(static_cast<int>(k));
    }
    for (auto& [mu, blk] : blocks_) {
        size_t m = blk.members.size();
        blk.gram.assign(m, std::vector<RatFun>(m));
        for (size_t r = 0; r < m; ++r)
            for (size_t s = 0; s < m; ++s)
                blk.gram[r][s] = mod_->pair(nBasis_[static_cast<size_t>(blk.members[r])],
                                            nBasis_[static_cast<size_t>(blk.members[s])]);
    }
}

ModVec CartanProjection::project(const ModVec& v) const {
    std::map<Weight, ModVec> byWeight;
    for (const auto& [idx, c] : v) byWeight[mod_->weightOf(idx)].emplace_back(idx, c);
    ModVec out;
    for (const auto& [mu, comp] : byWeight) {
        auto it = blocks_.find(mu);
        if (it == blocks_.end()) continue;
        const Block& blk = it->second;
        size_t m = blk.members.size();
        std::vector<RatFun> rhs(m);
        for (size_t r = 0; r < m; ++r)
            rhs[r] = mod_->pair(nBasis_[static_cast<size_t>(blk.members[r])], comp);
        auto x = denseSolve(blk.gram, rhs);
        if (!x) throw CartanError("Cartan projection: singular Gram block");
        for (size_t s = 0; s < m; ++s)
            if (!(*x)[s].isZero())
                mvAddScaled(out, nBasis_[static_cast<size_t>(blk.members[s])], (*x)[s]);
    }
    return out;
}

ModVec CartanProjection::transport(const ModVec& nVector, const WeightModule& target) const {
    auto coords = nSpan_.solve(nVector);
    if (!coords) throw CartanError("transport: vector not in the submodule");
    ModVec out;
    for (size_t k = 0; k < coords->size(); ++k) {
        if ((*coords)[k].isZero()) continue;
        ModVec img{{target.highestIndex(), RatFun(1)}};
        const auto& w = words_[k];
        for (auto it = w.rbegin(); it != w.rend(); ++it) img = target.applyF(*it, img);
        mvAddScaled(out, img, (*coords)[k]);
    }
    return out;
}

bool CartanProjection::checkEquivariant(int samples) const {
    int n = mod_->cartan().rank();
    int step = std::max(1, mod_->dim() / std::max(samples, 1));
    for (int idx = 0; idx < mod_->dim(); idx += step) {
        ModVec v{{idx, RatFun(1)}};
        ModVec pv = project(v);
        for (int i = 0; i < n; ++i) {
            ModVec lhs = project(mod_->applyE(i, v));
            mvAddScaled(lhs, mod_->applyE(i, pv), RatFun(-1));
            if (!mvIsZero(lhs)) return false;
            ModVec lhs2 = project(mod_->applyF(i, v));
            mvAddScaled(lhs2, mod_->applyF(i, pv), RatFun(-1));
            if (!mvIsZero(lhs2)) return false;
        }
    }
    return true;
}

}  // namespace qsph
