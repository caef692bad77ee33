// Finite-dimensional integrable U-modules as sparse operator data:
// simple modules L(lambda) built layer by layer as the radical quotient of
// the divided-power span, tensor products in the fixed coproduct
// convention, the contravariant form, and Cartan projections.
#pragma once

#include "qsph/cartan.hpp"
#include "qsph/linalg.hpp"

#include <iosfwd>
#include <map>
#include <memory>

namespace qsph {

struct DimensionCapExceeded : std::runtime_error {
    explicit DimensionCapExceeded(const std::string& m) : std::runtime_error(m) {}
};

// Coproduct convention, fixed once for the whole library:
//   Delta(E_i) = E_i x 1 + K_i x E_i
//   Delta(F_i) = F_i x K_i^-1 + 1 x F_i
//   Delta(K_h) = K_h x K_h
class WeightModule {
public:
    const CartanDatum& cartan() const { return *cd_; }
    int dim() const { return static_cast<int>(weights_.size()); }
    const Weight& weightOf(int idx) const { return weights_[static_cast<size_t>(idx)]; }
    int ordinalOf(int idx) const { return ordinals_[static_cast<size_t>(idx)]; }
    const std::vector<int>& basisAtWeight(const Weight& mu) const;
    const std::map<Weight, std::vector<int>>& weightSpaces() const { return atWeight_; }
    int highestIndex() const { return highest_; }  // -1 if not highest-weight
    const Weight& highestWeight() const;

    ModVec applyE(int i, const ModVec& v) const;
    ModVec applyF(int i, const ModVec& v) const;
    // K_h for h in coroot coordinates: diagonal q^<h, mu>.
    ModVec applyK(const std::vector<long>& h, const ModVec& v) const;
    ModVec applyKi(int i, int sign, const ModVec& v) const;  // K_i^{sign}
    // Divided powers E_i^(a), F_i^(a).
    ModVec applyDividedE(int i, long a, const ModVec& v) const;
    ModVec applyDividedF(int i, long a, const ModVec& v) const;

    const std::vector<ModVec>& eColumns(int i) const { return eOp_[static_cast<size_t>(i)]; }
    const std::vector<ModVec>& fColumns(int i) const { return fOp_[static_cast<size_t>(i)]; }

    // Contravariant form (v, w); zero across distinct weights.  Available
    // on simple modules and tensor products of simples.
    RatFun pair(const ModVec& v, const ModVec& w) const;
    RatFun pairBasis(int r, int s) const;

    // Tensor structure when this module was built by tensor().
    struct TensorInfo {
        std::shared_ptr<const WeightModule> left, right;
        std::vector<std::pair<int, int>> pairOf;            // basis idx -> (a, b)
        std::map<std::pair<int, int>, int> indexOf;
    };
    const TensorInfo* tensorInfo() const { return tensor_ ? tensor_.get() : nullptr; }

    // Defining relations as matrix identities (including quantum Serre).
    bool checkRelations() const;

    void serialize(std::ostream& os) const;

    // Builds L(lambda).  Small modules are assembled layer by layer as the
    // radical quotient of the divided-power span; larger ones extract the
    // top component of iterated fundamental tensors through A-lattice
    // echelons, which keeps every action coefficient in Z[q,q^-1].  Both
    // routes verify the dimension against the Weyl oracle.
    static std::shared_ptr<WeightModule> buildSimple(const CartanDatum& cd, const Weight& lambda,
                                                     long dimCap = 3000);
    // The radical-quotient construction, exposed for cross-checks.
    static std::shared_ptr<WeightModule> buildSimpleRadical(const CartanDatum& cd,
                                                            const Weight& lambda,
                                                            long dimCap = 3000);
    static std::shared_ptr<WeightModule> tensor(std::shared_ptr<const WeightModule> a,
                                                std::shared_ptr<const WeightModule> b);
    // Top component U * (v_top) of a tensor of simples, rebuilt as a
    // standalone module with integral action coefficients.
    static std::shared_ptr<WeightModule> extractTopComponent(
        std::shared_ptr<const WeightModule> tensorModule, long dimCap);

private:
    std::shared_ptr<const CartanDatum> cd_;
    std::vector<Weight> weights_;
    std::vector<int> ordinals_;  // position within the weight space
    std::map<Weight, std::vector<int>> atWeight_;
    std::vector<std::vector<ModVec>> eOp_, fOp_;  // [i][basis index]
    // Gram blocks of the contravariant form, one dense block per weight;
    // tensor modules fill blocks on first use.
    mutable std::map<Weight, std::vector<std::vector<RatFun>>> gram_;
    int highest_ = -1;
    Weight top_;
    std::shared_ptr<TensorInfo> tensor_;

    ModVec applyColumns(const std::vector<std::vector<ModVec>>& op, int i, const ModVec& v) const;
};

// U-equivariant projection of a tensor product onto the submodule generated
// by the top vector, orthogonal with respect to the product form.
class CartanProjection {
public:
    CartanProjection(std::shared_ptr<const WeightModule> tensorModule, int topIndex);

    // Projection onto N = U * v_top along its orthogonal complement.
    ModVec project(const ModVec& v) const;
    // The submodule basis vectors are F-monomial images of the top vector;
    // wordOf(k) is the generating F-word (applied right to left).
    const std::vector<ModVec>& submoduleBasis() const { return nBasis_; }
    const std::vector<std::vector<int>>& wordOf() const { return words_; }
    // Transport N -> L(top) along v_top -> highest vector, given the
    // standalone simple module of the same highest weight.
    ModVec transport(const ModVec& nVector, const WeightModule& target) const;
    // Runtime equivariance check on a sample of basis vectors.
    bool checkEquivariant(int samples = 16) const;

    const WeightModule& ambient() const { return *mod_; }

private:
    std::shared_ptr<const WeightModule> mod_;
    std::vector<ModVec> nBasis_;
    std::vector<std::vector<int>> words_;  // F-word generating each basis vector
    SpanSolver nSpan_;
    // Per weight: indices of nBasis in that weight, Gram matrix of those.
    struct Block {
        std::vector<int> members;
        std::vector<std::vector<RatFun>> gram;
    };
    std::map<Weight, Block> blocks_;
};

}  // namespace qsph
