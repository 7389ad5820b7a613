#pragma once

#include "chom/cyclic.hpp"

#include <map>
#include <string>
#include <vector>

namespace chom {

// Finite window of the periodic bicomplex CP(M).  Row q holds M_q; the
// vertical differential is b on even columns and -b' on odd columns, the
// horizontal differential into an even column is 1 - lambda and into an
// odd column is the norm N = sum lambda^i, with lambda = (-1)^q t on M_q.
// Every window is checked for D*D = 0 on construction.
class BicomplexWindow {
public:
    BicomplexWindow(const CyclicModule& m, int cmin, int cmax);

    int cmin() const { return cmin_; }
    int cmax() const { return cmax_; }
    int rows() const { return D_; }
    const CyclicModule& module() const { return m_; }

    const SparseMatrix& vertical(int c, int q) const;   // (c,q) -> (c,q-1)
    const SparseMatrix& horizontal(int c, int q) const; // (c,q) -> (c-1,q)
    const SparseMatrix& one_minus_lambda(int q) const { return oml_[q]; }
    const SparseMatrix& norm(int q) const { return nrm_[q]; }

    // Total complex of columns [c0, c1]; degrees are shifted so that the
    // chain complex starts at total degree c0.
    struct Total {
        int c0 = 0, c1 = 0, rowD = 0;
        ChainComplex chain;              // index i <-> total degree c0 + i
        std::vector<std::map<int, int>> offset; // per index: column -> block offset

        int index_of(int total_degree) const { return total_degree - c0; }
        int degree_of(int index) const { return index + c0; }
        bool has(int total_degree) const;
        int dim(int total_degree) const;
    };

    Total total(int c0, int c1) const;

    // Homology of one column in certified degrees (odd columns must come
    // out acyclic; column parity decides the differential).
    std::vector<int> column_homology_dims(int c) const;
    // Homology of a row segment [c0, c1] at an interior column (rows of a
    // rational bicomplex are exact away from the segment ends).
    int row_homology_dim(int q, int c0, int c1, int c) const;

private:
    CyclicModule m_;
    int cmin_, cmax_, D_;
    std::vector<SparseMatrix> b_, minus_bp_, oml_, nrm_;
};

// HC/HH/SBI/HP engine for a cyclic module truncated at D.  Every number it
// reports is certified only for degrees <= D - 1; requests beyond that
// range throw std::out_of_range.
class CyclicHomology {
public:
    explicit CyclicHomology(const CyclicModule& m);

    int D() const { return Dv_; }
    int max_certified() const { return Dv_ - 1; }

    int hh_dim(int n);
    int hc_dim(int n);
    const HomologyData& hh_data(int n);
    const HomologyData& hc_data(int n);

    SparseMatrix s_matrix(int n); // HC_n -> HC_{n-2}; zero map for n < 2
    SparseMatrix i_matrix(int n); // HH_n -> HC_n
    SparseMatrix b_matrix(int n); // HC_{n-1} -> HH_n (snake connecting)

    const BicomplexWindow& window() const { return win_; }
    const BicomplexWindow::Total& cc() const { return cc_; }
    const ChainComplex& moore() const { return moore_; }

    // chain-level maps on the CC window (exposed for naturality tests)
    SparseMatrix s_chain(int n); // Tot_n -> Tot_{n-2}, drop columns 0 and 1
    SparseMatrix i_chain(int n); // M_n -> Tot_n, column-0 block

private:
    CyclicModule m_;
    int Dv_, cmax_;
    BicomplexWindow win_;
    BicomplexWindow::Total cc_;   // columns [0, cmax]
    BicomplexWindow::Total quot_; // columns [1, cmax]
    ChainComplex moore_;          // column 0, padded to the cc degree range
    std::map<int, HomologyData> hh_cache_, hc_cache_, quot_cache_;

    const HomologyData& quot_data(int n);
    void check_range(int n) const;
};

struct SBINode {
    int degree = 0;
    std::string node; // "HH", "HC", "HC-2"
    bool composite_zero = false;
    bool rank_exact = false;
};

struct SBIReport {
    int D = 0;
    int max_degree = 0; // checks run for n <= max_degree
    std::vector<int> hh_dims, hc_dims;
    std::vector<int> hcm_dims;   // HC^- dims, indexed from hcm_min
    int hcm_min = 0, hcm_max = 0;
    std::vector<SparseMatrix> S, I, B; // per degree n (index n)
    std::vector<SBINode> nodes;
    bool all_exact = true;
};

SBIReport sbi(const CyclicModule& m);

// Negative cyclic homology from the window of columns [-2W, 0].  The
// certified range guards against the row truncation for this column
// depth; deeper columns would only matter beyond it.
struct HCMinusReport {
    int W = 0, D = 0;
    int min_degree = 0, max_degree = 0;
    std::vector<int> dims;           // degree -> dim, offset by min_degree
    std::vector<int> from_hc_rank;   // rank of HC_{n-1} -> HC^-_n
    std::vector<bool> iso_from_hc;   // the map is an isomorphism
    int dim(int n) const { return dims[n - min_degree]; }
};

HCMinusReport hc_minus(const CyclicModule& m, int depth_w);

struct ParityTower {
    int parity = 0;
    std::vector<int> degrees;  // HC degrees, shallow first
    std::vector<int> hc_dims;
    TowerLimit limit;
    bool enough_stages = false;
    // all image dims equal: the limit is realized inside HC at every stage
    bool flat = false;
};

struct HPReport {
    int D = 0, window = 0;
    ParityTower even, odd;
    bool stabilized() const {
        return even.enough_stages && odd.enough_stages && even.limit.stabilized &&
               odd.limit.stabilized && even.flat && odd.flat;
    }
    int dim(int parity) const { return parity % 2 == 0 ? even.limit.lim_dim : odd.limit.lim_dim; }
};

// HP via the S-tower of HC: eventual images of composites of S.  Reports
// undetermined when the window cannot be honored; never extrapolates.
HPReport hp(CyclicHomology& engine, int window);

// The eventual image of the S-tower realized inside HC_parity; the basis
// columns live in the hc_data(parity) representative coordinates.
struct StabilizedHP {
    int parity = 0;
    int dim = 0;
    SparseMatrix basis; // hc_dim(parity) x dim
};

StabilizedHP stabilized_hp(CyclicHomology& engine, int parity, int window);

// Map on stabilized HP induced by a cyclic morphism.  Requires both
// towers stabilized; checks S-naturality of the induced HC maps.
struct HPMapResult {
    int parity = 0;
    SparseMatrix matrix; // dst.dim x src.dim
    bool s_natural = false;
    bool iso = false;
};

HPMapResult hp_map(CyclicHomology& src_engine, CyclicHomology& dst_engine,
                   const CyclicMorphism& f, int parity, int window);

// Induced map on HC_n (chain map assembled blockwise from f).
SparseMatrix hc_induced(CyclicHomology& src_engine, CyclicHomology& dst_engine,
                        const CyclicMorphism& f, int n);

// Connecting map HC_n(quot) -> HC_{n-1}(sub) of a degreewise short exact
// sequence of cyclic modules (exactness of the window complexes is
// validated).
SparseMatrix hc_connecting(CyclicHomology& sub_engine, CyclicHomology& mid_engine,
                           CyclicHomology& quot_engine, const CyclicMorphism& incl,
                           const CyclicMorphism& proj, int n);

} // namespace chom
