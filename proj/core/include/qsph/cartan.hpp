// Cartan data, root systems, Weyl-group words, weights in the
// fundamental-weight basis, and the Weyl dimension oracle.
#pragma once

#include "qsph/exactq.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsph {

// Weight in fundamental-weight coordinates; coweights live in the coroot
// basis, which is dual to it.
using Weight = std::vector<int>;

std::string weightStr(const Weight& w);
Weight weightAdd(const Weight& a, const Weight& b);
Weight weightSub(const Weight& a, const Weight& b);
bool weightIsZero(const Weight& w);

struct CartanError : std::runtime_error {
    explicit CartanError(const std::string& m) : std::runtime_error(m) {}
};

class CartanDatum {
public:
    CartanDatum() = default;
    CartanDatum(std::vector<std::vector<int>> matrix, std::vector<int> symmetrizer);
    // Bourbaki-labelled finite types: "A3", "B2", "C3", "D4", "E6", "E7",
    // "E8", "F4", "G2".
    static CartanDatum fromType(const std::string& type);

    int rank() const { return n_; }
    int a(int i, int j) const { return a_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    int d(int i) const { return d_[static_cast<size_t>(i)]; }
    const std::vector<std::vector<int>>& matrix() const { return a_; }
    const std::vector<int>& symmetrizer() const { return d_; }

    // alpha_j in fundamental-weight coordinates (column j of the matrix).
    Weight simpleRoot(int j) const;
    Weight fundamentalWeight(int i) const;
    // <alpha_i^vee, lambda> = lambda_i in this basis.
    static int pairing(int i, const Weight& lambda) { return lambda[static_cast<size_t>(i)]; }
    bool isDominant(const Weight& lambda) const;
    Weight reflect(int i, const Weight& lambda) const;  // s_i * lambda
    Weight applyWord(const std::vector<int>& word, const Weight& lambda) const;

    // Positive roots in simple-root coordinates.
    const std::vector<std::vector<int>>& positiveRoots() const;
    // lambda - mu as a nonneg simple-root combination; nullopt if not >=.
    std::optional<std::vector<int>> dominanceDiff(const Weight& lambda, const Weight& mu) const;
    int heightFromTop(const Weight& top, const Weight& mu) const;

    // Longest-element reduced word of the parabolic W_J by greedy descent.
    std::vector<int> longestWordOfParabolic(const std::vector<int>& subset) const;
    std::vector<int> longestWord() const;

    BigInt weylDim(const Weight& lambda) const;

    std::string typeLabel() const { return label_; }

private:
    int n_ = 0;
    std::vector<std::vector<int>> a_;
    std::vector<int> d_;
    std::string label_;
    mutable std::vector<std::vector<int>> posRoots_;
    void validate() const;
};

}  // namespace qsph
