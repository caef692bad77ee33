#include "qsph/linalg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qsph {

ModVec mvMake(std::initializer_list<std::pair<int, RatFun>> init) {
    ModVec v(init);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    ModVec out;
    for (auto& [i, c] : v) {
        if (!out.empty() && out.back().first == i) out.back().second += c;
        else out.emplace_back(i, c);
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& p) { return p.second.isZero(); }),
              out.end());
    return out;
}

bool mvIsZero(const ModVec& v) { return v.empty(); }

void mvAddScaled(ModVec& dst, const ModVec& src, const RatFun& c) {
    if (c.isZero() || src.empty()) return;
    ModVec out;
    out.reserve(dst.size() + src.size());
    size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j >= src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(dst[i++]);
        } else if (i >= dst.size() || src[j].first < dst[i].first) {
            RatFun x = c * src[j].second;
            if (!x.isZero()) out.emplace_back(src[j].first, x);
            ++j;
        } else {
            RatFun x = dst[i].second + c * src[j].second;
            if (!x.isZero()) out.emplace_back(dst[i].first, x);
            ++i;
            ++j;
        }
    }
    dst = std::move(out);
}

ModVec mvAdd(const ModVec& a, const ModVec& b) {
    ModVec r = a;
    mvAddScaled(r, b, RatFun(1));
    return r;
}

ModVec mvScaled(const ModVec& v, const RatFun& c) {
    ModVec r;
    if (c.isZero()) return r;
    r.reserve(v.size());
    for (const auto& [i, x] : v) {
        RatFun y = c * x;
        if (!y.isZero()) r.emplace_back(i, y);
    }
    return r;
}

RatFun mvCoeff(const ModVec& v, int idx) {
    auto it = std::lower_bound(v.begin(), v.end(), idx,
                               [](const auto& p, int i) { return p.first < i; });
    if (it != v.end() && it->first == idx) return it->second;
    return RatFun();
}

std::string mvStr(const ModVec& v) {
    std::ostringstream os;
    os << "{";
    for (size_t k = 0; k < v.size(); ++k) {
        if (k) os << ", ";
        os << v[k].first << ": " << v[k].second.laurentStr();
    }
    os << "}";
    return os.str();
}

// ------------------------------------------------------------ SpanSolver

std::optional<int> SpanSolver::insert(const ModVec& v) {
    // Single sweep suffices: rows are mutually reduced (Gauss-Jordan).
    ModVec r = v;
    std::vector<RatFun> comb(rows_.size(), RatFun());
    for (size_t k = 0; k < rows_.size(); ++k) {
        RatFun c = mvCoeff(r, rows_[k].pivot);
        if (c.isZero()) continue;
        mvAddScaled(r, rows_[k].vec, -c);
        comb[k] = c;
    }
    if (mvIsZero(r)) return std::nullopt;
    Row row;
    row.pivot = r.front().first;
    RatFun inv = r.front().second.inverse();
    row.vec = mvScaled(r, inv);
    row.comb.assign(static_cast<size_t>(rank()) + 1, RatFun());
    row.comb.back() = inv;
    for (size_t k = 0; k < rows_.size(); ++k) {
        if (comb[k].isZero()) continue;
        for (size_t j = 0; j < rows_[k].comb.size(); ++j)
            row.comb[j] = row.comb[j] - inv * comb[k] * rows_[k].comb[j];
    }
    // Eliminate the new pivot from existing rows to keep Gauss-Jordan form.
    for (auto& old : rows_) {
        RatFun c = mvCoeff(old.vec, row.pivot);
        if (c.isZero()) continue;
        mvAddScaled(old.vec, row.vec, -c);
        old.comb.resize(row.comb.size(), RatFun());
        for (size_t j = 0; j < row.comb.size(); ++j)
            old.comb[j] = old.comb[j] - c * row.comb[j];
    }
    for (auto& old : rows_) old.comb.resize(static_cast<size_t>(rank()) + 1, RatFun());
    rows_.push_back(std::move(row));
    return rank() - 1;
}

std::optional<std::vector<RatFun>> SpanSolver::solve(const ModVec& v) const {
    ModVec r = v;
    std::vector<RatFun> out(static_cast<size_t>(rank()), RatFun());
    for (size_t k = 0; k < rows_.size(); ++k) {
        RatFun c = mvCoeff(r, rows_[k].pivot);
        if (c.isZero()) continue;
        mvAddScaled(r, rows_[k].vec, -c);
        for (size_t j = 0; j < rows_[k].comb.size(); ++j)
            out[j] = out[j] + c * rows_[k].comb[j];
    }
    if (!mvIsZero(r)) return std::nullopt;
    return out;
}

bool SpanSolver::contains(const ModVec& v) const {
    ModVec r = v;
    for (size_t k = 0; k < rows_.size(); ++k) {
        RatFun c = mvCoeff(r, rows_[k].pivot);
        if (!c.isZero()) mvAddScaled(r, rows_[k].vec, -c);
    }
    return mvIsZero(r);
}

// --------------------------------------------------------------- kernels

namespace {

// Raw Laurent value for fraction-free elimination: poly times q^ord, no
// canonicalization beyond zero detection.
struct LV {
    IntPoly p;
    int ord = 0;
    bool zero() const { return p.isZero(); }
};

LV lvMul(const LV& a, const LV& b) { return {a.p * b.p, a.ord + b.ord}; }

LV lvSub(const LV& a, const LV& b) {
    if (a.zero()) return {-b.p, b.ord};
    if (b.zero()) return a;
    int o = std::min(a.ord, b.ord);
    return {a.p.shifted(a.ord - o) - b.p.shifted(b.ord - o), o};
}

LV lvDivExact(const LV& a, const LV& b) {
    if (a.zero()) return {};
    return {IntPoly::divExact(a.p, b.p), a.ord - b.ord};
}

LV lvOfRatFun(const RatFun& f) {
    if (f.isZero()) return {};
    return {f.num(), -f.den().deg()};  // caller guarantees den = q^k
}

RatFun lvToRatFun(const LV& v) {
    if (v.zero()) return RatFun();
    if (v.ord >= 0) return RatFun(v.p.shifted(v.ord), IntPoly(1));
    return RatFun(v.p, IntPoly::monomial(BigInt(1), -v.ord));
}

}  // namespace

std::vector<std::vector<RatFun>> kernelOfImagesFF(const std::vector<ModVec>& images) {
    size_t C = images.size();
    // Column scaling clears denominators so the Bareiss recurrence stays in
    // the Laurent ring; the kernel transforms diagonally.
    std::vector<RatFun> scale(C, RatFun(1));
    std::map<int, int> rowOf;
    for (const auto& img : images)
        for (const auto& [r, c] : img)
            if (!rowOf.count(r)) {
                int id = static_cast<int>(rowOf.size());
                rowOf[r] = id;
            }
    size_t R = rowOf.size();
    std::vector<std::vector<LV>> M(R, std::vector<LV>(C));
    for (size_t j = 0; j < C; ++j) {
        IntPoly lcm(1);
        for (const auto& [r, c] : images[j]) {
            IntPoly g = IntPoly::gcd(lcm, c.den());
            lcm = IntPoly::divExact(lcm * c.den(), g);
        }
        scale[j] = RatFun(lcm, IntPoly(1));
        for (const auto& [r, c] : images[j]) {
            RatFun v = c * scale[j];
            M[static_cast<size_t>(rowOf[r])][j] = lvOfRatFun(v);
        }
    }
    std::vector<int> pivotColOf;
    std::vector<char> colUsed(C, 0);
    LV prev{IntPoly(1), 0};
    size_t row = 0;
    for (size_t col = 0; col < C && row < R; ++col) {
        size_t sel = R;
        for (size_t i = row; i < R; ++i)
            if (!M[i][col].zero()) { sel = i; break; }
        if (sel == R) continue;
        std::swap(M[sel], M[row]);
        const LV pivot = M[row][col];
        for (size_t i = row + 1; i < R; ++i) {
            if (M[i][col].zero()) {
                for (size_t j = col + 1; j < C; ++j) {
                    if (M[i][j].zero()) continue;
                    M[i][j] = lvDivExact(lvMul(M[i][j], pivot), prev);
                }
                continue;
            }
            for (size_t j = col + 1; j < C; ++j) {
                LV t = lvSub(lvMul(M[i][j], pivot), lvMul(M[i][col], M[row][j]));
                M[i][j] = t.zero() ? LV{} : lvDivExact(t, prev);
            }
            M[i][col] = LV{};
        }
        prev = pivot;
        pivotColOf.push_back(static_cast<int>(col));
        colUsed[col] = 1;
        ++row;
    }
    size_t rank = pivotColOf.size();
    std::vector<std::vector<RatFun>> kernel;
    for (size_t f = 0; f < C; ++f) {
        if (colUsed[f]) continue;
        std::vector<RatFun> x(C, RatFun());
        x[f] = RatFun(1);
        for (size_t k = rank; k-- > 0;) {
            size_t pc = static_cast<size_t>(pivotColOf[k]);
            RatFun acc;
            for (size_t j = pc + 1; j < C; ++j)
                if (!x[j].isZero() && !M[k][j].zero()) acc += lvToRatFun(M[k][j]) * x[j];
            x[pc] = -acc / lvToRatFun(M[k][pc]);
        }
        for (size_t j = 0; j < C; ++j)
            if (!x[j].isZero()) x[j] = x[j] * scale[j];
        kernel.push_back(std::move(x));
    }
    return kernel;
}

std::vector<std::vector<RatFun>> kernelOfImages(const std::vector<ModVec>& images) {
    if (images.size() <= 160) return kernelOfImagesFF(images);
    std::vector<std::vector<RatFun>> kernel;
    SpanSolver span;
    std::vector<std::vector<RatFun>> basisComb;  // echelon basis in column coords
    for (size_t j = 0; j < images.size(); ++j) {
        auto sol = span.solve(images[j]);
        if (sol) {
            std::vector<RatFun> c(images.size(), RatFun());
            c[j] = RatFun(1);
            for (size_t k = 0; k < sol->size(); ++k) {
                if ((*sol)[k].isZero()) continue;
                for (size_t t = 0; t < basisComb[k].size(); ++t)
                    c[t] = c[t] - (*sol)[k] * basisComb[k][t];
            }
            kernel.push_back(std::move(c));
        } else {
            span.insert(images[j]);
            std::vector<RatFun> c(images.size(), RatFun());
            c[j] = RatFun(1);
            basisComb.push_back(std::move(c));
        }
    }
    return kernel;
}

std::optional<std::vector<RatFun>> denseSolve(const std::vector<std::vector<RatFun>>& a,
                                              const std::vector<RatFun>& b) {
    size_t n = a.size();
    if (n == 0) return std::vector<RatFun>();
    size_t m = a[0].size();
    std::vector<std::vector<RatFun>> aug(n);
    for (size_t i = 0; i < n; ++i) {
        aug[i] = a[i];
        aug[i].push_back(b[i]);
    }
    std::vector<int> pivotCol;
    size_t row = 0;
    for (size_t col = 0; col < m && row < n; ++col) {
        size_t sel = row;
        while (sel < n && aug[sel][col].isZero()) ++sel;
        if (sel == n) continue;
        std::swap(aug[sel], aug[row]);
        RatFun inv = aug[row][col].inverse();
        for (size_t k = col; k <= m; ++k) aug[row][k] = aug[row][k] * inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == row || aug[i][col].isZero()) continue;
            RatFun f = aug[i][col];
            for (size_t k = col; k <= m; ++k) aug[i][k] = aug[i][k] - f * aug[row][k];
        }
        pivotCol.push_back(static_cast<int>(col));
        ++row;
    }
    for (size_t i = row; i < n; ++i)
        if (!aug[i][m].isZero()) return std::nullopt;
    if (pivotCol.size() < m) return std::nullopt;
    std::vector<RatFun> x(m, RatFun());
    for (size_t r = 0; r < pivotCol.size(); ++r) x[static_cast<size_t>(pivotCol[r])] = aug[r][m];
    return x;
}

// -------------------------------------------------------------- DvrLattice

void DvrLattice::build() {
    rows_.clear();
    pivots_.clear();
    std::vector<ModVec> active;
    for (const auto& g : gens_)
        if (!mvIsZero(g)) active.push_back(g);
    std::set<int> columns;
    for (const auto& g : active)
        for (const auto& [i, c] : g) columns.insert(i);
    for (int col : columns) {
        int best = -1;
        int bestVal = 0;
        for (size_t k = 0; k < active.size(); ++k) {
            RatFun c = mvCoeff(active[k], col);
            if (c.isZero()) continue;
            int val = c.valuationAtInfinity();
            if (best < 0 || val < bestVal) { best = static_cast<int>(k); bestVal = val; }
        }
        if (best < 0) continue;
        ModVec pivotRow = active[static_cast<size_t>(best)];
        active.erase(active.begin() + best);
        RatFun p = mvCoeff(pivotRow, col);
        for (auto& w : active) {
            RatFun c = mvCoeff(w, col);
            if (c.isZero()) continue;
            mvAddScaled(w, pivotRow, -(c / p));  // c/p regular: p has minimal valuation
        }
        active.erase(std::remove_if(active.begin(), active.end(),
                                    [](const ModVec& v) { return mvIsZero(v); }),
                     active.end());
        rows_.push_back(std::move(pivotRow));
        pivots_.push_back(col);
    }
    // active must now be empty: every nonzero row has some column.
    built_ = true;
}

bool DvrLattice::contains(const ModVec& v0) {
    ensure();
    ModVec v = v0;
    bool allReg = true;
    for (size_t k = 0; k < rows_.size(); ++k) {
        RatFun c = mvCoeff(v, pivots_[k]);
        if (c.isZero()) continue;
        RatFun f = c / mvCoeff(rows_[k], pivots_[k]);
        if (!f.isRegularAtInfinity()) allReg = false;
        mvAddScaled(v, rows_[k], -f);
    }
    return mvIsZero(v) && allReg;
}

bool DvrLattice::containsSmall(const ModVec& v) {
    return contains(mvScaled(v, RatFun::q(1)));
}

std::vector<int> DvrLattice::pivotValuations() {
    ensure();
    std::vector<int> out;
    for (size_t k = 0; k < rows_.size(); ++k)
        out.push_back(mvCoeff(rows_[k], pivots_[k]).valuationAtInfinity());
    return out;
}

std::optional<std::vector<RatFun>> DvrLattice::coordinates(const ModVec& v0) {
    ensure();
    ModVec v = v0;
    std::vector<RatFun> coords(rows_.size(), RatFun());
    for (size_t k = 0; k < rows_.size(); ++k) {
        RatFun c = mvCoeff(v, pivots_[k]);
        if (c.isZero()) continue;
        RatFun f = c / mvCoeff(rows_[k], pivots_[k]);
        mvAddScaled(v, rows_[k], -f);
        coords[k] = f;
    }
    if (!mvIsZero(v)) return std::nullopt;
    return coords;
}

// ---------------------------------------------------------------- ALattice

void ALattice::build() {
    rows_.clear();
    pivots_.clear();
    leftovers_.clear();
    std::vector<ModVec> active;
    for (const auto& g : gens_)
        if (!mvIsZero(g)) active.push_back(g);
    std::set<int> columns;
    for (const auto& g : active)
        for (const auto& [i, c] : g) columns.insert(i);
    bool progress = true;
    while (progress) {
        progress = false;
        for (int col : columns) {
            bool alreadyPivoted = false;
            for (int p : pivots_)
                if (p == col) { alreadyPivoted = true; break; }
            if (alreadyPivoted) continue;
            std::vector<size_t> cands;
            for (size_t k = 0; k < active.size(); ++k)
                if (!mvCoeff(active[k], col).isZero()) cands.push_back(k);
            if (cands.empty()) continue;
            // A pivot row must divide all other candidates at this column.
            int chosen = -1;
            bool chosenUnit = false;
            for (size_t k : cands) {
                RatFun p = mvCoeff(active[k], col);
                bool divides = true;
                for (size_t j : cands) {
                    if (j == k) continue;
                    if (!(mvCoeff(active[j], col) / p).isALattice()) { divides = false; break; }
                }
                if (!divides) continue;
                bool unit = p.isUnitOfA();
                if (chosen < 0 || (unit && !chosenUnit)) {
                    chosen = static_cast<int>(k);
                    chosenUnit = unit;
                    if (unit) break;
                }
            }
            if (chosen < 0) continue;
            ModVec pivotRow = active[static_cast<size_t>(chosen)];
            active.erase(active.begin() + chosen);
            RatFun p = mvCoeff(pivotRow, col);
            for (auto& w : active) {
                RatFun c = mvCoeff(w, col);
                if (c.isZero()) continue;
                mvAddScaled(w, pivotRow, -(c / p));
            }
            active.erase(std::remove_if(active.begin(), active.end(),
                                        [](const ModVec& v) { return mvIsZero(v); }),
                         active.end());
            rows_.push_back(std::move(pivotRow));
            pivots_.push_back(col);
            progress = true;
        }
    }
    leftovers_ = std::move(active);
    // Rows stay in placement order: each row is zero at all previously
    // placed pivots, so a single forward sweep decides membership.
    built_ = true;
}

ModVec ALattice::reduce(const ModVec& v0, std::vector<RatFun>& coeffs) {
    ensure();
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

Decision ALattice::contains(const ModVec& v0) {
    std::vector<RatFun> coeffs;
    ModVec v = reduce(v0, coeffs);
    bool allInA = true;
    for (const auto& c : coeffs)
        if (!c.isZero() && !c.isALattice()) allInA = false;
    if (mvIsZero(v) && allInA) return Decision::Yes;
    return complete() ? Decision::No : Decision::Undecided;
}

}  // namespace qsph
