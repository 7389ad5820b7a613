#pragma once

#include "chom/algebra.hpp"
#include "chom/cyclic.hpp"
#include "chom/partition.hpp"

#include <set>
#include <vector>

namespace chom {

// Moore complex: alternating face sums b = sum (-1)^i d_i.
ChainComplex moore_complex(const SimplicialModule& m);

// Hochschild cyclic module of an algebra: degree q is spanned by tensor
// words over the algebra basis, encoded mixed-radix with slot 0 least
// significant.  Faces multiply adjacent factors (d_q wraps last into
// first), degeneracies insert the unit, t rotates the factors.
struct HochschildModule {
    Algebra algebra;
    int D = 0;
    CyclicModule mod;

    long long words(int q) const;
    int encode(const std::vector<int>& w) const;
    std::vector<int> decode(int idx, int q) const;
};

inline constexpr long long kDefaultTensorBudget = 2'000'000;

// Throws std::invalid_argument when dim^{D+1} exceeds the budget.
HochschildModule hh(const Algebra& a, int D, long long budget = kDefaultTensorBudget);

// Retraction through a free cyclic module: the map into j_*G, the
// composite back, and the scalar it must equal.
struct RetractData {
    CyclicModule jG;
    CyclicMorphism into_free;   // H -> j_*G
    CyclicMorphism composite;   // H -> H through j_*G
    int scalar = 0;
    bool map_is_cyclic = false; // certificate for into_free
    bool composite_is_scalar = false;
};

// One weight piece H(k) of HH(B |x M) with its simplicial subobject G(k).
struct WeightSummand {
    int k = 0;
    std::vector<std::vector<int>> word_index; // per degree: ambient word ids
    CyclicModule H;
    SimplicialModule G;
    std::vector<std::vector<int>> g_local; // per degree: H-local indices in G
    CyclicMorphism inclusion;              // H(k) -> ambient
    RetractData retract;
};

struct WeightDecomposition {
    Algebra extension; // B |x M on the basis [B | M]
    Subspace square_zero_ideal;
    HochschildModule ambient;
    std::vector<WeightSummand> pieces; // k = 0 .. D+1
};

WeightDecomposition weight_decompose(const Algebra& b, const Bimodule& m, int D,
                                     long long budget = kDefaultTensorBudget);

// H(P) for a partition P inside HH(A0 |x (A1 + ... + Al)); G(P) consists of
// the summands whose label function is nonzero at position 0, and the map
// into j_*G(P) sends the f-summand to the sum over support positions j of
// (t^j, t^{-j} a).  The composite is multiplication by the length of P.
struct PartitionSummand {
    Partition P;
    std::vector<std::vector<int>> word_index;
    CyclicModule H;
    SimplicialModule G;
    CyclicMorphism inclusion;
    RetractData retract;
};

struct PartitionSystem {
    Algebra extension;
    std::vector<int> label_of_basis; // 0 for A0, j for the bimodule A_j
    int num_bimodules = 0;
    HochschildModule ambient;
};

PartitionSystem partition_system(const Algebra& a0, const std::vector<Bimodule>& bimods,
                                 int D, long long budget = kDefaultTensorBudget);

PartitionSummand partition_decompose(const PartitionSystem& sys, const Partition& p);

// The filtration F^k of HH(A) by total ideal level, with subquotients.
struct IdealFiltration {
    FilteredPresentation pres;
    HochschildModule ambient;           // hh(A) in adapted coordinates
    int kmax = 0;                       // F^k = 0 for k >= kmax
    std::vector<CyclicModule> F;        // k = 0 .. kmax
    std::vector<std::vector<int>> level_sum; // per degree: word -> total level

    // dims of F^k in each degree
    std::vector<int> dims(int k) const;
    // F^k / F^{k+1}
    CyclicModule subquotient(int k) const;
};

IdealFiltration ideal_filtration(const Algebra& a, const Ideal& i, int D,
                                 long long budget = kDefaultTensorBudget);

// One stage of the partition chain on F^k/F^{k+1} of a graded algebra.
struct ChainStage {
    Partition P;
    CyclicModule kernel;        // the stage kernel, as a subquotient
    PartitionSummand model;     // H(P)(A_0; A_1, ..., A_k)
    bool kernel_matches_model = false; // identical matrices on identical words
};

struct PartitionChain {
    int k = 0;
    CyclicModule subquotient;   // F^k/F^{k+1} of the graded algebra
    std::vector<ChainStage> stages; // in norm-descending partition order
    std::vector<int> stage_dims;    // dims of X^k(i) in degree D (diagnostic)
    bool ends_at_zero = false;
};

PartitionChain partition_chain(const GradedAlgebra& g, int k, int D,
                               long long budget = kDefaultTensorBudget);

// Compare F^k/F^{k+1}(A, I) with F^k/F^{k+1}(gr(A, I)) as cyclic modules
// on the shared adapted word basis.
struct GradedComparison {
    bool dims_equal = false;
    bool maps_equal = false;
    std::vector<int> dims; // of the subquotient, per degree
};

GradedComparison compare_filtration_with_graded(const Algebra& a, const Ideal& i, int k,
                                                int D,
                                                long long budget = kDefaultTensorBudget);

// Gap set A_f of a function f: Z/(q+1) -> {0,1,2}: the positions j with
// f(j) = 2 reachable from some i with f(i) = 1 through cyclically
// intermediate zeros.
std::set<int> gap_set(const std::vector<int>& f);

// The iterated fiber of HH over a split square, computed both as the
// labeled coordinate span and as degreewise kernels, with its weight
// pieces H(k) graded by |A_f|.
struct IfibSummand {
    int k = 0;
    std::vector<std::vector<int>> word_index; // ifib-local indices
    CyclicModule H;
    SimplicialModule G;
    CyclicMorphism inclusion; // H(k) -> ifib
    RetractData retract;
};

struct SplitSquareIfib {
    HochschildModule ambient; // hh(A0)
    CyclicModule ifib;        // words with both labels 1 and 2 present
    CyclicMorphism ifib_inclusion;
    std::vector<int> ifib_dims;
    std::vector<int> kernel_dims;  // via degreewise kernels of HH(pr1) + HH(pr2)
    bool routes_agree = false;     // the two computations give the same subspace
    std::vector<IfibSummand> pieces; // k = 1 ..
};

SplitSquareIfib split_square_ifib(const SplitSquare& sq, int D,
                                  long long budget = kDefaultTensorBudget);

} // namespace chom
