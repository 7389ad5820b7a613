#pragma once

#include "chom/linalg.hpp"

#include <string>
#include <vector>

namespace chom {

// Finite-dimensional unital associative algebra over the rationals,
// presented by structure constants: table[i][j] = coordinates of e_i * e_j.
struct Algebra {
    int dim = 0;
    std::vector<std::string> basis_labels;
    std::vector<std::vector<SparseVec>> table;
    SparseVec unit;

    std::string name;

    SparseVec mul(const SparseVec& x, const SparseVec& y) const;
    // matrices of left/right multiplication by a vector
    SparseMatrix left_mul_matrix(const SparseVec& x) const;
    SparseMatrix right_mul_matrix(const SparseVec& x) const;
};

struct AlgebraReport {
    bool ok = true;
    std::string what; // first violation, human-readable
};

AlgebraReport validate_algebra(const Algebra& a);

// Bimodule over an algebra: left[i] is the matrix of m -> e_i . m,
// right[i] the matrix of m -> m . e_i.
struct Bimodule {
    int dim = 0;
    std::vector<SparseMatrix> left;
    std::vector<SparseMatrix> right;
};

AlgebraReport validate_bimodule(const Algebra& a, const Bimodule& m);

// An algebra as a bimodule over itself.
Bimodule regular_bimodule(const Algebra& a);

// Two-sided ideal, kept as a subspace of the parent.
struct Ideal {
    const Algebra* parent = nullptr;
    Subspace basis;

    int dim() const { return basis.dim(); }
};

// Span-closure of generator vectors under multiplication by the parent.
Ideal ideal_from_generators(const Algebra& a, const std::vector<SparseVec>& gens);
AlgebraReport validate_ideal(const Ideal& i);

// I^n; n = 0 gives the whole algebra.
Ideal ideal_power(const Ideal& i, int n);
// Smallest n with I^n = 0, or nullopt if none within dim(A)+1 steps.
std::optional<int> nilpotency_degree(const Ideal& i);

// Algebra with basis 1, x, ..., x^{n-1}, x^n = 0, together with the
// subspace (x); wrap it as Ideal{&algebra, subspace} at the use site.
std::pair<Algebra, Subspace> truncated_polynomial(int n);

// The rationals as a one-dimensional algebra.
Algebra rationals();

// B  M with (b,m)(b',m') = (bb', bm' + mb'); returns the extension and
// the square-zero ideal M as a subspace.
std::pair<Algebra, Subspace> square_zero_extension(const Algebra& b, const Bimodule& m);

// Unital algebra map f: A -> B as a dim(B) x dim(A) matrix.
struct AlgebraMap {
    const Algebra* src = nullptr;
    const Algebra* dst = nullptr;
    SparseMatrix mat;
};

AlgebraReport validate_algebra_map(const AlgebraMap& f);
bool is_surjective(const AlgebraMap& f);

struct QuotientResult {
    Algebra algebra;
    SparseMatrix projection;     // parent -> quotient, an algebra map
    SparseMatrix complement;     // parent-coordinates of the chosen lifts
};

QuotientResult quotient_by_ideal(const Algebra& a, const Ideal& i);

// Split square: the pullback corner A0 = A1 x_{A12} A2 assembled on the
// basis I(0) | I(1) | I(2), where I(0) is the image of the chosen
// sections and I(j) = ker f^j.
struct SplitSquare {
    Algebra a0;            // the corner, basis blocks [I(0) | I(1) | I(2)]
    Algebra a1, a2, a12;   // copies of the inputs
    SparseMatrix f1, f2;   // the given surjections A1 -> A12, A2 -> A12
    SparseMatrix s1, s2;   // sections A12 -> A1, A12 -> A2
    SparseMatrix pr1, pr2; // projections A0 -> A1, A0 -> A2
    int dim0 = 0, dim1 = 0, dim2 = 0; // block sizes: I(0), I(1), I(2)

    int label_of(int basis_index) const; // 0, 1 or 2
    // true iff the sections are unital algebra maps, so I(0).I(0) stays in I(0)
    bool sections_multiplicative = false;
};

// f1, f2 must be surjective algebra maps.  Sections may be supplied; when
// absent, linear sections are solved for.  Throws on invalid input.
SplitSquare split_square(const Algebra& a1, const Algebra& a2, const Algebra& a12,
                         const SparseMatrix& f1, const SparseMatrix& f2,
                         std::optional<SparseMatrix> s1 = std::nullopt,
                         std::optional<SparseMatrix> s2 = std::nullopt);

// Graded algebra: an algebra whose basis vectors carry degrees and whose
// multiplication adds degrees exactly.
struct GradedAlgebra {
    Algebra algebra;
    std::vector<int> degree; // per basis vector
    int max_degree = 0;

    std::vector<int> piece_dims() const;
};

AlgebraReport validate_graded(const GradedAlgebra& g);

// Basis of A adapted to the flag A > I > I^2 > ...; level[j] is the largest
// n with basis vector j inside I^n, and the basis is grouped by level.
struct FilteredPresentation {
    Algebra algebra; // A written in the adapted basis
    std::vector<int> level;
    int nilpotency = 0; // I^nilpotency = 0
    SparseMatrix basis; // adapted basis in original coordinates
};

FilteredPresentation filtered_presentation(const Algebra& a, const Ideal& i);

// Associated graded of a nilpotent ideal: piece j is I^j/I^{j+1},
// realized on a basis of A adapted to the power filtration.
GradedAlgebra associated_graded(const Algebra& a, const Ideal& i);

// Change of basis: new_basis columns express the new basis in old
// coordinates; returns the algebra written in the new basis.
Algebra conjugate(const Algebra& a, const SparseMatrix& new_basis);

// 2x2 upper triangular matrices (dim 3), a handy non-commutative example.
Algebra upper_triangular_2x2();

} // namespace chom
