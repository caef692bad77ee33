// The coideal subalgebra acting on modules: parameter families, generator
// actions B_i = F_i + c_i T_w(E_{tau i}) K_i^-1 + s_i K_i^-1, i-weight
// blocks, i-divided powers, the bar-type involution on L(lambda), and the
// shift-of-basepoint parameter transport.
#pragma once

#include "qsph/braid.hpp"
#include "qsph/crystal.hpp"
#include "qsph/satake.hpp"

namespace qsph {

struct QSPParameters {
    std::map<int, RatFun> c, s;  // per node of I_circ
    long n = 0;                  // family label
    std::string note;            // set when overrides leave the supported table
};

// Parameter table for the supported Hermitian families.  The AI family is
// labelled so that the character values chi_l(B) = [l-n] match the solved
// rank-one eigenvectors v1 + q^-n v2.
QSPParameters defaultParameters(const AdmissiblePair& pair, long n);
// Recover the family label from explicit parameters.
long familyIndex(const AdmissiblePair& pair, const QSPParameters& par);

class CoidealAction {
public:
    CoidealAction(std::shared_ptr<const WeightModule> mod, std::shared_ptr<const AdmissiblePair> pair,
                  QSPParameters par);

    const WeightModule& module() const { return *mod_; }
    const AdmissiblePair& pair() const { return *pair_; }
    const QSPParameters& parameters() const { return par_; }
    std::shared_ptr<const WeightModule> modulePtr() const { return mod_; }
    std::shared_ptr<const AdmissiblePair> pairPtr() const { return pair_; }

    ModVec applyB(int i, const ModVec& v) const;
    const std::vector<ModVec>& bColumns(int i) const { return bOp_.at(i); }

    // i-weight blocks: partition of the basis by the class in X_i.
    const std::map<IWeight, std::vector<int>>& iWeightBlocks() const { return blocks_; }
    ModVec projectBlock(const IWeight& zeta, const ModVec& v) const;  // idempotent 1_zeta

    // Parity p_i(zeta) in Z/2; only defined on the inductive branch
    // (tau i = i and w_bullet fixes alpha_i).
    int parity(int i, const IWeight& zeta) const;
    bool inductiveBranch(int i) const;

    // i-divided power B_{i,zeta}^(a) applied to v.
    ModVec iDividedPower(int i, const IWeight& zeta, long a, const ModVec& v) const;

private:
    std::shared_ptr<const WeightModule> mod_;
    std::shared_ptr<const AdmissiblePair> pair_;
    QSPParameters par_;
    std::map<int, std::vector<ModVec>> bOp_;
    std::map<IWeight, std::vector<int>> blocks_;
};

// Bar-type semilinear involution on L(lambda) fixed by the coideal action:
// psi(v_lambda) = v_lambda, psi(g v) = g psi(v) for the generators
// g in {B_i, E_j, F_j}.  Built by spanning-tree transport and verified.
class PsiInvolution {
public:
    explicit PsiInvolution(const CoidealAction& action);

    ModVec apply(const ModVec& v) const;
    // Full consistency: commutes with every generator on the whole basis,
    // anti-commutes with K_h (h -> -h), and squares to the identity.
    bool verified() const { return verified_; }
    const std::string& failure() const { return failure_; }

private:
    const WeightModule* mod_;
    SpanSolver treeSpan_;
    std::vector<ModVec> tree_;      // spanning tree vectors
    std::vector<ModVec> psiTree_;   // their psi images
    std::vector<ModVec> psiBasis_;  // psi on the module basis
    bool verified_ = false;
    std::string failure_;
};

// Shift of basepoint: parameters of the image coideal under
// b -> chi(b_(1)) b_(2), namely d_i = c_i chi(K_{tau i} K_i^-1),
// t_i = chi(B_i).
struct CharacterValues {
    Weight mu;                    // i-weight representative for the K-part
    std::map<int, RatFun> bValue; // chi(B_i) per i in I_circ
};
QSPParameters shiftOfBasepoint(const AdmissiblePair& pair, const QSPParameters& par,
                               const CharacterValues& chi);

}  // namespace qsph
