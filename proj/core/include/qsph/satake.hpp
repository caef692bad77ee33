// Admissible (Satake) pairs: validation, theta involution, i-weight
// lattice X_i and i-coweight lattice Y^i, restricted roots, Hermitian
// classification (the eight diagram families), and the bottom weights mu_l.
#pragma once

#include "qsph/cartan.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qsph {

enum class AdmissibleCondition {
    TauInvolution,       // tau is an involution preserving the Cartan matrix
    TauBlackCompatible,  // tau restricted to blacks equals -w_bullet
    HalfSumIntegral,     // <rho_bullet^vee, alpha_i> integral for tau-fixed white i
    Irreducible,
};

struct AdmissibleError : std::runtime_error {
    AdmissibleCondition condition;
    AdmissibleError(AdmissibleCondition c, const std::string& m)
        : std::runtime_error(m), condition(c) {}
};

enum class HermitianClass { AIIIa, AIIIb, BI, CI, DI, DIIIb, EIII, EVII };
std::string hermitianClassName(HermitianClass c);

// Canonical form of a class in X_i = X / (1 - theta) X, via Smith normal form.
struct IWeight {
    std::vector<long> canonical;  // reduced coordinates in the SNF basis
    Weight representative;        // some lambda mapping to this class
    bool isZero() const;
    friend bool operator==(const IWeight& a, const IWeight& b) { return a.canonical == b.canonical; }
    friend bool operator<(const IWeight& a, const IWeight& b) { return a.canonical < b.canonical; }
    std::string str() const;
};

class AdmissiblePair {
public:
    // Validates all admissibility conditions; throws AdmissibleError.
    AdmissiblePair(CartanDatum cd, std::set<int> blacks, std::vector<int> tau);

    const CartanDatum& cartan() const { return cd_; }
    const std::set<int>& blackNodes() const { return blacks_; }
    int tau(int i) const { return tau_[static_cast<size_t>(i)]; }
    const std::vector<int>& tauPerm() const { return tau_; }
    const std::vector<int>& whiteNodes() const { return whites_; }
    const std::vector<int>& wBulletWord() const { return wBulletWord_; }

    // theta = -w_bullet tau on X (fundamental-weight coords).
    Weight thetaAction(const Weight& lambda) const;
    // theta on Y (coroot coords) is the transpose matrix.
    std::vector<long> thetaCoweight(const std::vector<long>& h) const;

    IWeight iWeightOf(const Weight& lambda) const;
    bool isSpherical(const Weight& lambda) const;  // requires dominant
    // Basis of Y^i = ker(theta - 1) on the coroot lattice.
    const std::vector<std::vector<long>>& iCoweightBasis() const { return yiBasis_; }
    static long pairCoweight(const std::vector<long>& h, const Weight& lambda);

    // Restricted roots (alpha - theta alpha)/2, nonzero, stored doubled so
    // coordinates stay integral; in simple-root coordinates.
    std::vector<std::vector<int>> restrictedRoots() const;
    bool isReducedRestricted() const;

    struct Hermitian {
        HermitianClass cls;
        std::vector<int> orbit;  // I_otimes in input labels, sorted
    };
    std::optional<Hermitian> classifyHermitian() const;

    // Bottom weight mu_l; requires Hermitian.
    Weight muOf(long l) const;
    // Representative node of I_otimes: first under the configured linear
    // order (natural label order by default).
    int otimesNode() const;
    // Override the linear order on nodes: rank[i] = position of node i.
    void setNodeOrder(std::vector<int> rank);

    // Nodes i in I_circ with tau i = i and alpha_i orthogonal to all blacks.
    const std::vector<int>& nsNodes() const { return ns_; }

private:
    CartanDatum cd_;
    std::set<int> blacks_;
    std::vector<int> tau_;
    std::vector<int> whites_;
    std::vector<int> ns_;
    std::vector<int> wBulletWord_;
    std::vector<std::vector<int>> thetaX_;  // n x n, columns = theta(fw basis)
    std::vector<std::vector<long>> yiBasis_;
    std::vector<int> orderRank_;
    // SNF of (1 - theta): U * M * V = D; classes are read through U.
    std::vector<std::vector<long>> snfU_;
    std::vector<long> snfDiag_;
    mutable std::optional<std::optional<Hermitian>> hermitianCache_;
    mutable std::optional<bool> reducedCache_;

    void computeDerived();
    void checkConditions() const;
};

}  // namespace qsph
