#include "qsph/cartan.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace qsph {

std::string weightStr(const Weight& w) {
    std::ostringstream os;
    os << "(";
    for (size_t k = 0; k < w.size(); ++k) {
        if (k) os << ",";
        os << w[k];
    }
    os << ")";
    return os.str();
}

Weight weightAdd(const Weight& a, const Weight& b) {
    Weight r(a.size());
    for (size_t k = 0; k < a.size(); ++k) r[k] = a[k] + b[k];
    return r;
}

Weight weightSub(const Weight& a, const Weight& b) {
    Weight r(a.size());
    for (size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
    return r;
}

bool weightIsZero(const Weight& w) {
    return std::all_of(w.begin(), w.end(), [](int x) { return x == 0; });
}

CartanDatum::CartanDatum(std::vector<std::vector<int>> matrix, std::vector<int> symmetrizer)
    : n_(static_cast<int>(matrix.size())), a_(std::move(matrix)), d_(std::move(symmetrizer)) {
    validate();
}

void CartanDatum::validate() const {
    if (n_ == 0) throw CartanError("empty Cartan matrix");
    if (static_cast<int>(d_.size()) != n_) throw CartanError("symmetrizer size mismatch");
    for (int i = 0; i < n_; ++i) {
        if (static_cast<int>(a_[static_cast<size_t>(i)].size()) != n_)
            throw CartanError("Cartan matrix not square");
        if (a(i, i) != 2) throw CartanError("diagonal entry must be 2");
        if (d(i) <= 0) throw CartanError("symmetrizer entries must be positive");
        for (int j = 0; j < n_; ++j) {
            if (i == j) continue;
            if (a(i, j) > 0) throw CartanError("off-diagonal entries must be <= 0");
            if ((a(i, j) == 0) != (a(j, i) == 0)) throw CartanError("zero pattern not symmetric");
            if (d(i) * a(i, j) != d(j) * a(j, i)) throw CartanError("symmetrizer does not symmetrize");
        }
    }
    int g = 0;
    for (int i = 0; i < n_; ++i) g = std::gcd(g, d(i));
    if (g != 1) throw CartanError("gcd of symmetrizer must be 1");
}

CartanDatum CartanDatum::fromType(const std::string& type) {
    if (type.size() < 2) throw CartanError("bad type label: " + type);
    char fam = type[0];
    int n = std::stoi(type.substr(1));
    if (n < 1) throw CartanError("bad rank in type label");
    auto chain = [&](int len) {
        std::vector<std::vector<int>> m(static_cast<size_t>(len),
                                        std::vector<int>(static_cast<size_t>(len), 0));
        for (int i = 0; i < len; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 2;
        for (int i = 0; i + 1 < len; ++i) {
            m[static_cast<size_t>(i)][static_cast<size_t>(i + 1)] = -1;
            m[static_cast<size_t>(i + 1)][static_cast<size_t>(i)] = -1;
        }
        return m;
    };
    std::vector<std::vector<int>> m;
    std::vector<int> d;
    switch (fam) {
        case 'A':
            m = chain(n);
            d.assign(static_cast<size_t>(n), 1);
            break;
        case 'B':  // alpha_n short
            if (n < 2) throw CartanError("B rank >= 2");
            m = chain(n);
            m[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 2)] = -2;
            d.assign(static_cast<size_t>(n), 2);
            d[static_cast<size_t>(n - 1)] = 1;
            break;
        case 'C':  // alpha_n long
            if (n < 2) throw CartanError("C rank >= 2");
            m = chain(n);
            m[static_cast<size_t>(n - 2)][static_cast<size_t>(n - 1)] = -2;
            d.assign(static_cast<size_t>(n), 1);
            d[static_cast<size_t>(n - 1)] = 2;
            break;
        case 'D': {
            if (n < 3) throw CartanError("D rank >= 3");
            m = chain(n - 1);
            for (auto& row : m) row.push_back(0);
            m.push_back(std::vector<int>(static_cast<size_t>(n), 0));
            m[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)] = 2;
            m[static_cast<size_t>(n - 3)][static_cast<size_t>(n - 1)] = -1;
            m[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 3)] = -1;
            d.assign(static_cast<size_t>(n), 1);
            break;
        }
        case 'E': {
            if (n < 6 || n > 8) throw CartanError("E rank in {6,7,8}");
            // Bourbaki: chain 1-3-4-5-6(-7)(-8), node 2 attached to 4.
            m.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), 0));
            for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 2;
            auto link = [&](int i, int j) {
                m[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] = -1;
                m[static_cast<size_t>(j - 1)][static_cast<size_t>(i - 1)] = -1;
            };
            link(1, 3);
            link(3, 4);
            link(4, 5);
            link(5, 6);
            if (n >= 7) link(6, 7);
            if (n >= 8) link(7, 8);
            link(2, 4);
            d.assign(static_cast<size_t>(n), 1);
            break;
        }
        case 'F': {
            if (n != 4) throw CartanError("F rank 4");
            m = chain(4);
            m[2][1] = -2;  // alpha_2 long, alpha_3 short
            d = {2, 2, 1, 1};
            break;
        }
        case 'G': {
            if (n != 2) throw CartanError("G rank 2");
            m = {{2, -3}, {-1, 2}};
            d = {1, 3};
            break;
        }
        default:
            throw CartanError("unknown type family: " + type);
    }
    CartanDatum cd(std::move(m), std::move(d));
    cd.label_ = type;
    return cd;
}

Weight CartanDatum::simpleRoot(int j) const {
    Weight w(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) w[static_cast<size_t>(i)] = a(i, j);
    return w;
}

Weight CartanDatum::fundamentalWeight(int i) const {
    Weight w(static_cast<size_t>(n_), 0);
    w[static_cast<size_t>(i)] = 1;
    return w;
}

bool CartanDatum::isDominant(const Weight& lambda) const {
    return std::all_of(lambda.begin(), lambda.end(), [](int x) { return x >= 0; });
}

Weight CartanDatum::reflect(int i, const Weight& lambda) const {
    Weight r = lambda;
    int c = lambda[static_cast<size_t>(i)];
    if (c == 0) return r;
    Weight ai = simpleRoot(i);
    for (int k = 0; k < n_; ++k) r[static_cast<size_t>(k)] -= c * ai[static_cast<size_t>(k)];
    return r;
}

Weight CartanDatum::applyWord(const std::vector<int>& word, const Weight& lambda) const {
    Weight r = lambda;
    for (auto it = word.rbegin(); it != word.rend(); ++it) r = reflect(*it, r);
    return r;
}

const std::vector<std::vector<int>>& CartanDatum::positiveRoots() const {
    if (!posRoots_.empty()) return posRoots_;
    // Orbit closure of simple roots under simple reflections, positive part.
    std::set<std::vector<int>> roots;
    std::vector<std::vector<int>> queue;
    for (int i = 0; i < n_; ++i) {
        std::vector<int> e(static_cast<size_t>(n_), 0);
        e[static_cast<size_t>(i)] = 1;
        roots.insert(e);
        queue.push_back(e);
    }
    // Reflection in root coordinates: s_i adds -<alpha_i^vee, alpha> to slot i.
    while (!queue.empty()) {
        std::vector<int> r = queue.back();
        queue.pop_back();
        for (int i = 0; i < n_; ++i) {
            int pair = 0;  // <alpha_i^vee, r> = sum_j r_j a(i, j)
            for (int j = 0; j < n_; ++j) pair += r[static_cast<size_t>(j)] * a(i, j);
            std::vector<int> s = r;
            s[static_cast<size_t>(i)] -= pair;
            bool pos = std::all_of(s.begin(), s.end(), [](int x) { return x >= 0; });
            bool neg = std::all_of(s.begin(), s.end(), [](int x) { return x <= 0; });
            if (!pos && neg) continue;
            if (pos && roots.insert(s).second) queue.push_back(s);
        }
    }
    posRoots_.assign(roots.begin(), roots.end());
    return posRoots_;
}

std::optional<std::vector<int>> CartanDatum::dominanceDiff(const Weight& lambda,
                                                           const Weight& mu) const {
    // Solve C x = lambda - mu over the integers with x >= 0.
    Weight diff = weightSub(lambda, mu);
    // Gaussian elimination over rationals on the (invertible) Cartan matrix.
    std::vector<std::vector<BigRat>> m(static_cast<size_t>(n_),
                                       std::vector<BigRat>(static_cast<size_t>(n_) + 1));
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = a(i, j);
        m[static_cast<size_t>(i)][static_cast<size_t>(n_)] = diff[static_cast<size_t>(i)];
    }
    for (int col = 0; col < n_; ++col) {
        int sel = col;
        while (sel < n_ && m[static_cast<size_t>(sel)][static_cast<size_t>(col)] == 0) ++sel;
        if (sel == n_) return std::nullopt;
        std::swap(m[static_cast<size_t>(sel)], m[static_cast<size_t>(col)]);
        BigRat p = m[static_cast<size_t>(col)][static_cast<size_t>(col)];
        for (int k = col; k <= n_; ++k) m[static_cast<size_t>(col)][static_cast<size_t>(k)] /= p;
        for (int i = 0; i < n_; ++i) {
            if (i == col) continue;
            BigRat f = m[static_cast<size_t>(i)][static_cast<size_t>(col)];
            if (f == 0) continue;
            for (int k = col; k <= n_; ++k)
                m[static_cast<size_t>(i)][static_cast<size_t>(k)] -=
                    f * m[static_cast<size_t>(col)][static_cast<size_t>(k)];
        }
    }
    std::vector<int> x(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        BigRat v = m[static_cast<size_t>(i)][static_cast<size_t>(n_)];
        if (v.get_den() != 1) return std::nullopt;
        if (v < 0) return std::nullopt;
        x[static_cast<size_t>(i)] = static_cast<int>(v.get_num().get_si());
    }
    return x;
}

int CartanDatum::heightFromTop(const Weight& top, const Weight& mu) const {
    auto diff = dominanceDiff(top, mu);
    if (!diff) throw CartanError("weight not below top in root lattice");
    int h = 0;
    for (int x : *diff) h += x;
    return h;
}

std::vector<int> CartanDatum::longestWordOfParabolic(const std::vector<int>& subset) const {
    // Greedy descent from a J-dominant regular weight to its antidominant image.
    Weight rho(static_cast<size_t>(n_), 0);
    for (int i : subset) rho[static_cast<size_t>(i)] = 1;
    std::vector<int> word;
    bool moved = true;
    while (moved) {
        moved = false;
        for (int i : subset) {
            if (rho[static_cast<size_t>(i)] > 0) {
                rho = reflect(i, rho);
                word.push_back(i);
                moved = true;
                break;
            }
        }
    }
    // word applied right-to-left maps the original rho to the antidominant
    // image; reversing gives a reduced word read left-to-right.
    std::reverse(word.begin(), word.end());
    return word;
}

std::vector<int> CartanDatum::longestWord() const {
    std::vector<int> all(static_cast<size_t>(n_));
    std::iota(all.begin(), all.end(), 0);
    return longestWordOfParabolic(all);
}

BigInt CartanDatum::weylDim(const Weight& lambda) const {
    if (!isDominant(lambda)) throw CartanError("weylDim: weight not dominant");
    // dim = prod <lambda + rho, alpha^vee> / <rho, alpha^vee>;
    // <alpha^vee, mu> = sum_i k_i d_i mu_i / d_alpha, constant d_alpha cancels.
    BigInt num(1), den(1);
    for (const auto& root : positiveRoots()) {
        BigInt topN(0), topD(0);
        for (int i = 0; i < n_; ++i) {
            BigInt kd = BigInt(root[static_cast<size_t>(i)]) * d(i);
            topN += kd * (lambda[static_cast<size_t>(i)] + 1);
            topD += kd;
        }
        num *= topN;
        den *= topD;
    }
    BigInt dim = num / den;
    if (dim * den != num) throw CartanError("weylDim: non-integral result");
    return dim;
}

}  // namespace qsph
