// Kashiwara operators via exact sl2-string decomposition, crystal lattices
// at q = infinity, the integral A-form from divided-power monomials, and
// the dual integral form through the contravariant pairing.
#pragma once

#include "qsph/module.hpp"

namespace qsph {

// v = sum_n F_i^(n) u_n with E_i u_n = 0; returns the nonzero (n, u_n).
std::vector<std::pair<long, ModVec>> sl2StringDecompose(const WeightModule& m, int i,
                                                        const ModVec& v);

ModVec kashiwaraF(const WeightModule& m, int i, const ModVec& v);
ModVec kashiwaraE(const WeightModule& m, int i, const ModVec& v);

enum class LatticeRing { AInfinity, SmallAInfinity, ALaurent };

// Crystal lattice L(lambda): A_infinity span of the Kashiwara monomials on
// the highest vector, enumerated along a fixed reduced word of w0 (string
// parametrization), then triangularized over the valuation ring.
class CrystalLattice {
public:
    explicit CrystalLattice(std::shared_ptr<const WeightModule> mod);

    // Q(q)-basis of the module spanning the lattice over A_infinity.
    const std::vector<ModVec>& basis() { return lat_.basis(); }
    bool contains(const ModVec& v) { return lat_.contains(v); }
    bool containsSmall(const ModVec& v) { return lat_.containsSmall(v); }
    // v == w modulo q^-1 L.
    bool equivInfinity(const ModVec& v, const ModVec& w);
    // Membership with coefficient witness in the triangular basis.
    std::optional<std::vector<RatFun>> coordinates(const ModVec& v) { return lat_.coordinates(v); }
    bool membership(LatticeRing ring, const ModVec& v);

    const WeightModule& module() const { return *mod_; }

private:
    std::shared_ptr<const WeightModule> mod_;
    DvrLattice lat_;
};

// Integral form _A L(lambda): A-span of divided-power F-monomials on the
// highest vector, assembled weight by weight (the generators are linear, so
// the saturation per weight space is complete).
class IntegralForm {
public:
    explicit IntegralForm(std::shared_ptr<const WeightModule> mod);

    ALattice& lattice() { return lat_; }
    bool complete() { return lat_.complete(); }
    Decision contains(const ModVec& v) { return lat_.contains(v); }
    // Dual integral form test: (v, m) in A for every spanning generator m.
    bool dualContains(const ModVec& v) const;
    const std::vector<ModVec>& spanningSet() const { return lat_.spanningSet(); }

    const WeightModule& module() const { return *mod_; }

private:
    std::shared_ptr<const WeightModule> mod_;
    ALattice lat_;
};

}  // namespace qsph
