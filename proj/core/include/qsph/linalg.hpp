// Sparse exact linear algebra over Q(q) plus lattice reduction over the
// local ring A_infinity (valuation ring at q = infinity) and over
// A = Z[q,q^-1] (fraction-free echelon with divisor pivots, honest
// partiality when no valid pivot exists).
#pragma once

#include "qsph/exactq.hpp"

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace qsph {

// Sparse vector: sorted by index, no zero entries.
using ModVec = std::vector<std::pair<int, RatFun>>;

ModVec mvMake(std::initializer_list<std::pair<int, RatFun>> init);
bool mvIsZero(const ModVec& v);
ModVec mvAdd(const ModVec& a, const ModVec& b);
ModVec mvScaled(const ModVec& v, const RatFun& c);
// dst += c * src
void mvAddScaled(ModVec& dst, const ModVec& src, const RatFun& c);
RatFun mvCoeff(const ModVec& v, int idx);
std::string mvStr(const ModVec& v);

// Incremental Gauss-Jordan echelon over Q(q) with combination tracking.
class SpanSolver {
public:
    // Returns position among independent vectors, or nullopt if dependent.
    std::optional<int> insert(const ModVec& v);
    int rank() const { return static_cast<int>(rows_.size()); }
    // Coefficients c with v = sum c_k * basis_k (basis = inserted
    // independent vectors, insertion order); nullopt if outside the span.
    std::optional<std::vector<RatFun>> solve(const ModVec& v) const;
    bool contains(const ModVec& v) const;

private:
    struct Row {
        ModVec vec;                // pivot coefficient 1, zero at other pivots
        std::vector<RatFun> comb;  // expression in inserted basis vectors
        int pivot;
    };
    std::vector<Row> rows_;
};

// Kernel of the stacked-image map: images[j] is the image of unknown j;
// returns coefficient vectors spanning {c : sum c_j images_j = 0}.
// Small systems run through a fraction-free (Bareiss) elimination that
// keeps intermediate entries in Z[q,q^-1]; larger ones use the sparse
// Gauss-Jordan span.
std::vector<std::vector<RatFun>> kernelOfImages(const std::vector<ModVec>& images);
std::vector<std::vector<RatFun>> kernelOfImagesFF(const std::vector<ModVec>& images);

// Dense solve A x = b over Q(q), A row-major n x m.  Unique solution or
// nullopt (singular or inconsistent).
std::optional<std::vector<RatFun>> denseSolve(const std::vector<std::vector<RatFun>>& a,
                                              const std::vector<RatFun>& b);

// Lattice over A_infinity.  Batch-built from generators; reduction always
// succeeds (local PID).  Basis rows are triangular with distinct pivots.
class DvrLattice {
public:
    void addGenerator(const ModVec& v) { gens_.push_back(v); built_ = false; }
    void build();
    int rank() { ensure(); return static_cast<int>(rows_.size()); }
    bool contains(const ModVec& v);       // v in lattice
    bool containsSmall(const ModVec& v);  // v in q^-1 * lattice
    std::vector<int> pivotValuations();
    const std::vector<ModVec>& basis() { ensure(); return rows_; }
    // Q(q)-coordinates of v in the triangular basis; nullopt outside span.
    std::optional<std::vector<RatFun>> coordinates(const ModVec& v);

private:
    std::vector<ModVec> gens_;
    std::vector<ModVec> rows_;
    std::vector<int> pivots_;
    bool built_ = false;
    void ensure() { if (!built_) build(); }
};

enum class Decision { Yes, No, Undecided };

// A-lattice (Z[q,q^-1]).  Batch echelon; a pivot at a column is a row
// whose entry divides every other active row's entry there (preferring
// +-q^k pivots).  If no column admits such a pivot the remaining rows are
// kept as extra generators and the lattice is marked partial; membership
// then degrades from No to Undecided.
class ALattice {
public:
    void addGenerator(const ModVec& v) { gens_.push_back(v); built_ = false; }
    void build();
    bool complete() { ensure(); return leftovers_.empty(); }
    int rank() { ensure(); return static_cast<int>(rows_.size()) ; }
    Decision contains(const ModVec& v);
    const std::vector<ModVec>& basis() { ensure(); return rows_; }
    const std::vector<ModVec>& leftoverGenerators() { ensure(); return leftovers_; }
    // All generators (spanning set; sound for dual-pairing checks).
    const std::vector<ModVec>& spanningSet() const { return gens_; }
    // Reduce v against the echelon rows; returns the residue and fills the
    // row coefficients (exact, in Q(q); in A exactly when v is in the
    // lattice and the extraction is complete).
    ModVec reduce(const ModVec& v, std::vector<RatFun>& coeffs);

private:
    std::vector<ModVec> gens_;
    std::vector<ModVec> rows_;  // placement order, pivot columns ascending
    std::vector<int> pivots_;
    std::vector<ModVec> leftovers_;
    bool built_ = false;
    void ensure() { if (!built_) build(); }
};

}  // namespace qsph
