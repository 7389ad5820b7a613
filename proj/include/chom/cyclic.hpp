#pragma once

#include "chom/linalg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace chom {

// Truncated simplicial module: spaces in degrees 0..D with faces
// d_i: M_q -> M_{q-1} and degeneracies s_i: M_q -> M_{q+1} (q < D).
struct SimplicialModule {
    int D = 0;
    std::vector<int> dims;                       // size D+1
    std::vector<std::vector<SparseMatrix>> face; // face[q][i], q >= 1, 0 <= i <= q
    std::vector<std::vector<SparseMatrix>> degen; // degen[q][i], q < D, 0 <= i <= q

    const SparseMatrix& d(int q, int i) const { return face[q][i]; }
    const SparseMatrix& s(int q, int i) const { return degen[q][i]; }
};

// Adds cyclic operators t_q of order q+1.  Identities (all exact):
//   t^{q+1} = 1,  d_i t = t d_{i-1} (i >= 1),  d_0 t = d_q,
//   s_i t = t s_{i-1} (i >= 1),  s_0 t = t^2 s_q.
struct CyclicModule {
    SimplicialModule sim;
    std::vector<SparseMatrix> t; // t[q], square of size dims[q]

    int D() const { return sim.D; }
    int dim(int q) const { return sim.dims[q]; }
    const SparseMatrix& d(int q, int i) const { return sim.face[q][i]; }
    const SparseMatrix& s(int q, int i) const { return sim.degen[q][i]; }
    SparseMatrix t_power(int q, long long k) const; // t_q^k, k may be negative
};

struct IdentityViolation {
    std::string identity; // e.g. "d_i d_j", "t^{q+1}"
    int degree = 0;
    int i = -1, j = -1;
};

struct ValidationReport {
    bool ok = true;
    std::vector<IdentityViolation> violations;
    std::string summary() const;
};

ValidationReport validate_simplicial(const SimplicialModule& m);
ValidationReport validate_cyclic(const CyclicModule& m);

// Constant module: every degree the same space, all structure maps identity.
CyclicModule constant_module(int dim, int D);
SimplicialModule constant_simplicial(int dim, int D);

// Free cyclic module on a simplicial module: degree q is the direct sum of
// q+1 copies of X_q, summand s holding the "t^s" copy.  Structure maps:
//   d_r(t^s, a) = (t^s, d_{r-s} a)        for s <= r,
//               = (t^{s-1}, d_{q+1+r-s} a) for r < s,
//   s_r analogous, t(t^s, a) = (t^{s+1}, a).
CyclicModule free_cyclic(const SimplicialModule& x);

SimplicialModule underlying_simplicial(const CyclicModule& y);

// Degreewise-matrix morphism of cyclic modules, commuting with all
// structure maps (certified by morphism_map).
struct CyclicMorphism {
    std::vector<SparseMatrix> f; // f[q] : src_q -> dst_q
};

// Certifies f as a morphism src -> dst; the report names the first failing
// square if any.
ValidationReport morphism_map(const CyclicMorphism& f, const CyclicModule& src,
                              const CyclicModule& dst);

// Counit j_* j^* Y -> Y, (s, y) -> t^s y.  Surjective in every degree.
CyclicMorphism counit(const CyclicModule& y);

// Composition and elementwise sums of morphisms.
CyclicMorphism compose(const CyclicMorphism& g, const CyclicMorphism& f);

// Coordinate submodule: keep[q] lists the basis indices retained in
// degree q.  Checks that all structure maps preserve the selection.
struct CoordinateSelection {
    std::vector<std::vector<int>> keep;
};

CyclicModule coordinate_submodule(const CyclicModule& m, const CoordinateSelection& sel,
                                  CyclicMorphism* inclusion_out = nullptr);
// Quotient by the selected coordinates (structure maps projected).
CyclicModule coordinate_quotient(const CyclicModule& m, const CoordinateSelection& sel,
                                 CyclicMorphism* projection_out = nullptr);

// Submodule on arbitrary per-degree subspaces; structure maps are solved
// for and must stay inside the spans (throws otherwise).
CyclicModule subspace_submodule(const CyclicModule& m,
                                const std::vector<SparseMatrix>& basis,
                                CyclicMorphism* inclusion_out = nullptr);

// Direct sum.
CyclicModule direct_sum(const CyclicModule& a, const CyclicModule& b);

// Dold-Kan: the simplicial module whose normalized chains are the given
// bounded complex.
SimplicialModule dold_kan(const ChainComplex& c, int D);

// Seeded random bounded complex (dims <= 2 per degree, degrees <= 3) fed
// through Dold-Kan; reproducible across platforms.
SimplicialModule random_simplicial(uint64_t seed, int D);

} // namespace chom
