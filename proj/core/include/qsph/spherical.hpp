// Characters chi_l of the coideal, the spherical-vector solver, branching
// tables, bottom-vector tensor constructions, and the certificate suites:
// crystal limit, A-form image, based morphism, and integral forms.
#pragma once

#include "qsph/coideal.hpp"

#include <functional>

namespace qsph {

struct Character {
    long l = 0;
    Weight mu;                     // mu_l, carries the K_h values q^<h, mu>
    std::map<int, RatFun> bValue;  // chi(B_i) per i in I_circ
    CharacterValues values() const { return {mu, bValue}; }
};

// chi_l per the Hermitian classification: reduced restricted root system
// gives chi_l(B_i) = [l-n]_i on the distinguished orbit, zero elsewhere;
// nonreduced gives chi_l(B_i) = 0 with K_i K_{tau i}^-1 -> q_i^l.
Character characterChi(const AdmissiblePair& pair, const QSPParameters& par, long l);

struct SphericalSolution {
    int multiplicity = 0;
    std::vector<ModVec> vectors;  // normalized to coefficient 1 on v_lambda
    bool normalized = true;
};

// Exact kernel of the stacked system {(B_i - chi(B_i)) v = 0, E_j v = F_j v
// = 0 for black j, K_h v = q^<h,mu_chi> v for h in the Y^i basis}.
SphericalSolution solveSpherical(const CoidealAction& action, const Character& chi);

// Closed-form branching predicate: lambda = mu_l + mu with mu dominant
// spherical.
bool branchingPredicate(const AdmissiblePair& pair, const Weight& lambda, long l);

struct BranchingCell {
    Weight lambda;
    long l;
    int multiplicity;
    bool predicted;
    bool match;
    bool skipped = false;  // dimension cap
};

std::vector<BranchingCell> branchingTable(const AdmissiblePair& pair, const QSPParameters& par,
                                          const std::vector<Weight>& lambdas, long lmin, long lmax,
                                          long dimCap, int jobs = 1);

// Enumerate dominant weights with Weyl dimension at most cap.
std::vector<Weight> dominantWeightsUpTo(const CartanDatum& cd, long dimCap);

struct SphericalCertificate {
    Weight lambda;       // ambient highest weight (= mu_l + lambda_spherical)
    long l = 0;
    long n = 0;
    int multiplicity = 0;
    ModVec f;            // normalized spherical vector
    std::shared_ptr<const WeightModule> module;
    std::shared_ptr<const AdmissiblePair> pair;
    QSPParameters params;
};

// Solve the bottom vector in L(mu_l) two ways: direct solve, and for |l|>=2
// the iterated tensor/Cartan-projection route with shifted parameters; the
// routes are checked proportional and the scalar is recorded.
struct BottomVector {
    SphericalCertificate cert;
    bool tensorRouteChecked = false;
    RatFun routeScalar;  // tensor route = routeScalar * direct
};
BottomVector bottomVector(std::shared_ptr<const AdmissiblePair> pair, const QSPParameters& par,
                          long l, long dimCap = 3000);

// v tensor v' for v chi-spherical and v' solved against the shifted
// parameters; returns the tensor vector, verified spherical.
ModVec tensorSpherical(const CoidealAction& ambient, const ModVec& v, const ModVec& vShifted,
                       const WeightModule& tensorMod);

struct CrystalLimitReport {
    bool inLattice = false;
    bool limitIsHighest = false;  // f == v_lambda modulo q^-1 L
    std::string detail;
};
CrystalLimitReport crystalLimitCheck(const SphericalCertificate& cert);

struct AFormReport {
    Decision allPairingsInA = Decision::Undecided;
    bool generatesA = false;  // some pairing is a unit
};
AFormReport aFormImageCheck(const SphericalCertificate& cert, IntegralForm& form);

struct BasedMorphismReport {
    bool latticeToLattice = false;   // (i)   pi(L) in A_inf
    bool aFormToAForm = false;       // (ii)  pi(_A L) in A
    Decision aFormDecision = Decision::Undecided;
    bool intertwinesPsi = false;     // (iii) pi psi = bar pi
    bool injectiveAtInfinity = false;  // (iv) exactly one surviving class
    int survivingClasses = 0;
    bool all() const {
        return latticeToLattice && aFormToAForm && intertwinesPsi && injectiveAtInfinity;
    }
    std::string failing() const;
};
BasedMorphismReport basedMorphismCheck(const SphericalCertificate& cert, CrystalLattice& lattice,
                                       IntegralForm& form, const PsiInvolution& psi);

// Dual integral form: all pairings of f against the A-form in A.
bool dualIntegralCertify(const SphericalCertificate& cert, IntegralForm& form);

struct IntegralReport {
    Decision member = Decision::Undecided;
    bool viaTensorRoute = false;
    bool dualPassed = false;
    std::string detail;
};
// For |l| <= 1 certify through the quasi-minuscule route (dual membership
// plus nonzero-weight support); for |l| >= 2 through the tensor route.
IntegralReport integralCertify(const SphericalCertificate& cert, IntegralForm& form);

}  // namespace qsph
