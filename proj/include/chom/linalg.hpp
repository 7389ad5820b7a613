#pragma once

#include "chom/sparse.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace chom {

// Column span with linearly independent basis columns.
struct Subspace {
    int ambient = 0;
    SparseMatrix basis; // ambient x dim, columns independent

    int dim() const { return basis.cols(); }
};

// Column echelon form R = A * T with T invertible, computed by exact
// forward elimination.  Pivot rows are scanned in increasing order and the
// sparsest candidate column wins, so the result is deterministic and
// independent of the thread count.
class Echelon {
public:
    explicit Echelon(const SparseMatrix& a, bool with_transform = true);
    Echelon(const SparseMatrix& a, bool with_transform, Exec mode);

    int rank() const { return static_cast<int>(pivots_.size()); }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    SparseMatrix kernel_basis() const; // cols x (cols - rank)
    SparseMatrix image_basis() const;  // rows x rank (pivot columns of R)

    // Exact solution of A x = b, if one exists.  Requires with_transform.
    std::optional<SparseVec> solve(const SparseVec& b) const;
    // Membership of b in the column span.
    bool in_image(const SparseVec& b) const;
    // Reduces b against the pivot columns; returns (residue, pivot coefficients).
    std::pair<SparseVec, std::vector<Rat>> reduce(const SparseVec& b) const;

private:
    int rows_, cols_;
    bool with_transform_;
    std::vector<SparseVec> r_; // reduced columns
    std::vector<SparseVec> t_; // transform columns, R_j = A * T_j
    std::vector<std::pair<int, int>> pivots_; // (row, column), rows increasing
    std::vector<int> free_cols_;              // columns reduced to zero
};

struct Decomposition {
    int rank = 0;
    Subspace kernel;
    Subspace image;
};

Decomposition decompose(const SparseMatrix& m);
int rank_of(const SparseMatrix& m);

// Exact solve A x = b for matrix right-hand sides (column by column).
std::optional<SparseMatrix> solve(const SparseMatrix& a, const SparseMatrix& b);
// Inverse of a square invertible matrix; throws if singular.
SparseMatrix inverse(const SparseMatrix& a);

// Homology at a node  in --d_in--> here --d_out--> out.
// Representatives are cycle-basis columns chosen complementary to the
// boundaries, and `projection` maps cycle coordinates to homology
// coordinates in the representative basis.
struct HomologyData {
    int ambient = 0;
    int dim = 0;
    SparseMatrix cycles;     // ambient x z
    SparseMatrix boundaries; // ambient x b
    SparseMatrix reps;       // ambient x dim
    SparseMatrix projection; // dim x z, class of each cycle-basis column

    bool is_cycle(const SparseVec& v, const SparseMatrix& d_out) const;
    // Homology class of an ambient cycle; nullopt if v is not a cycle.
    std::optional<SparseVec> class_of(const SparseVec& v) const;

    // internal: echelon of [boundaries | reps] for class_of
    std::shared_ptr<Echelon> expand;
    std::shared_ptr<Echelon> boundary_ech;
};

// Throws std::invalid_argument if d_out * d_in != 0.
HomologyData homology_at(const SparseMatrix& d_in, const SparseMatrix& d_out);

// Map on homology induced by a chain-level map f.  Rejects f unless it
// carries cycles to cycles and boundaries to boundaries (checked exactly).
SparseMatrix induced_map(const SparseMatrix& f, const HomologyData& src,
                         const HomologyData& dst, const SparseMatrix& dst_d_out);

// Bounded chain complex, degrees 0..top: d[n] : C_n -> C_{n-1}.
struct ChainComplex {
    std::vector<int> dims;
    std::vector<SparseMatrix> d; // d[0] unused (zero map out of degree 0)

    int top() const { return static_cast<int>(dims.size()) - 1; }
    const SparseMatrix& diff(int n) const { return d[n]; }
    void validate() const; // shapes and d*d = 0
    HomologyData homology(int n) const;
};

struct ChainMap {
    std::vector<SparseMatrix> f; // f[n] : src_n -> dst_n
};

bool is_chain_map(const ChainMap& f, const ChainComplex& src, const ChainComplex& dst);

// Degreewise short exact sequence 0 -> sub -> mid -> quot -> 0 of bounded
// complexes.  Exactness is verified on construction.
struct ShortExactSeq {
    ChainComplex sub, mid, quot;
    ChainMap incl, proj;
};

void validate_ses(const ShortExactSeq& s); // throws on failure

// Snake-lemma connecting map  H_n(quot) -> H_{n-1}(sub); sections of proj
// are solved for exactly (degreewise splittings exist over a field).
SparseMatrix connecting_map(const ShortExactSeq& s, int n,
                            const HomologyData& hquot_n,
                            const HomologyData& hsub_nm1);

// Inverse system  spaces[0] <- spaces[1] <- ... , maps[i]: i+1 -> i.
struct Tower {
    std::vector<int> dims;
    std::vector<SparseMatrix> maps;

    int stages() const { return static_cast<int>(dims.size()); }
    void validate() const;
};

struct TowerLimit {
    bool stabilized = false;
    int lim_dim = 0;
    bool lim1_zero = false;
    std::vector<int> image_dims;      // dim of image from the deepest stage, per stage
    SparseMatrix eventual_image;      // basis inside stage 0, when stabilized
    std::vector<SparseMatrix> images; // image basis per stage (deepest-stage composites)
};

// Computes images of the composites from the deepest stage.  Stabilized
// means the `window`+1 shallowest image dimensions agree (so `window`
// consecutive equalities); a surjection between equal finite dimensions
// is an isomorphism, hence the image tower is Mittag-Leffler and lim^1 = 0.
// Requires at least window+2 stages.
TowerLimit tower_limit(const Tower& t, int window);

} // namespace chom
