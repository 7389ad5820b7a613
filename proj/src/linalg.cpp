#include "chom/linalg.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace chom {

Echelon::Echelon(const SparseMatrix& a, bool with_transform)
    : Echelon(a, with_transform, exec_mode()) {}

Echelon::Echelon(const SparseMatrix& a, bool with_transform, Exec mode)
    : rows_(a.rows()), cols_(a.cols()), with_transform_(with_transform) {
    r_.resize(cols_);
    for (int j = 0; j < cols_; ++j)
        r_[j] = a.col(j);
    if (with_transform_) {
        t_.resize(cols_);
        for (int j = 0; j < cols_; ++j)
            t_[j].ents.emplace_back(j, Rat(1));
    }

    // row -> candidate columns; may hold stale entries, re-checked on use
    std::vector<std::vector<int>> rowidx(rows_);
    for (int j = 0; j < cols_; ++j)
        for (const auto& [r, v] : r_[j].ents)
            rowidx[r].push_back(j);

    std::vector<char> done(cols_, 0);

    for (int row = 0; row < rows_; ++row) {
        // sparsest live column with an entry in this row
        int pc = -1;
        for (int j : rowidx[row]) {
            if (done[j] || r_[j].get(row) == 0)
                continue;
            if (pc == -1 || r_[j].nnz() < r_[pc].nnz() ||
                (r_[j].nnz() == r_[pc].nnz() && j < pc))
                pc = j;
        }
        if (pc == -1)
            continue;

        done[pc] = 1;
        pivots_.emplace_back(row, pc);
        const Rat pv = r_[pc].get(row);

        std::vector<int> targets;
        for (int j : rowidx[row])
            if (!done[j] && r_[j].get(row) != 0)
                targets.push_back(j);
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

        auto update = [&](int j) {
            Rat c = -r_[j].get(row) / pv;
            r_[j].axpy(c, r_[pc]);
            if (with_transform_)
                t_[j].axpy(c, t_[pc]);
        };

        const int nt = static_cast<int>(targets.size());
        if (mode == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
            for (int k = 0; k < nt; ++k)
                update(targets[k]);
        } else {
            for (int k = 0; k < nt; ++k)
                update(targets[k]);
        }

        // register fill-in created below the pivot row
        for (int j : targets)
            for (const auto& [r, v] : r_[j].ents)
                if (r > row)
                    rowidx[r].push_back(j);
    }

    for (int j = 0; j < cols_; ++j)
        if (!done[j]) {
            if (!r_[j].empty())
                throw std::logic_error("echelon: live column left nonzero");
            free_cols_.push_back(j);
        }
}

SparseMatrix Echelon::kernel_basis() const {
    if (!with_transform_)
        throw std::logic_error("kernel_basis requires the transform");
    SparseMatrix k(cols_, static_cast<int>(free_cols_.size()));
    for (size_t i = 0; i < free_cols_.size(); ++i)
        k.col_mut(static_cast<int>(i)) = t_[free_cols_[i]];
    return k;
}

SparseMatrix Echelon::image_basis() const {
    SparseMatrix im(rows_, rank());
    for (size_t i = 0; i < pivots_.size(); ++i)
        im.col_mut(static_cast<int>(i)) = r_[pivots_[i].second];
    return im;
}

std::pair<SparseVec, std::vector<Rat>> Echelon::reduce(const SparseVec& b) const {
    SparseVec v = b;
    std::vector<Rat> coef(pivots_.size(), Rat(0));
    for (size_t i = 0; i < pivots_.size(); ++i) {
        const auto& [row, col] = pivots_[i];
        Rat e = v.get(row);
        if (e == 0)
            continue;
        Rat c = e / r_[col].get(row);
        v.axpy(-c, r_[col]);
        coef[i] = c;
    }
    return {std::move(v), std::move(coef)};
}

bool Echelon::in_image(const SparseVec& b) const { return reduce(b).first.empty(); }

std::optional<SparseVec> Echelon::solve(const SparseVec& b) const {
    if (!with_transform_)
        throw std::logic_error("solve requires the transform");
    auto [res, coef] = reduce(b);
    if (!res.empty())
        return std::nullopt;
    SparseVec x;
    for (size_t i = 0; i < pivots_.size(); ++i)
        if (coef[i] != 0)
            x.axpy(coef[i], t_[pivots_[i].second]);
    return x;
}

namespace {

// Left-to-right basis builder: add() keeps a vector iff it is independent
// of everything accepted so far.
class IncrementalSpan {
public:
    explicit IncrementalSpan(int ambient) : ambient_(ambient) {}

    bool add(const SparseVec& v) {
        SparseVec w = v;
        for (size_t i = 0; i < basis_.size(); ++i) {
            Rat e = w.get(pivot_rows_[i]);
            if (e != 0)
                w.axpy(-e / basis_[i].get(pivot_rows_[i]), basis_[i]);
        }
        if (w.empty())
            return false;
        pivot_rows_.push_back(w.ents.front().first);
        basis_.push_back(std::move(w));
        return true;
    }

    int dim() const { return static_cast<int>(basis_.size()); }

private:
    int ambient_;
    std::vector<SparseVec> basis_;
    std::vector<int> pivot_rows_;
};

} // namespace

Decomposition decompose(const SparseMatrix& m) {
    Echelon e(m, true);
    Decomposition d;
    d.rank = e.rank();
    d.kernel = Subspace{m.cols(), e.kernel_basis()};
    d.image = Subspace{m.rows(), e.image_basis()};
    return d;
}

int rank_of(const SparseMatrix& m) { return Echelon(m, false).rank(); }

std::optional<SparseMatrix> solve(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("solve: shape mismatch");
    Echelon e(a, true);
    SparseMatrix x(a.cols(), b.cols());
    for (int j = 0; j < b.cols(); ++j) {
        auto xv = e.solve(b.col(j));
        if (!xv)
            return std::nullopt;
        x.col_mut(j) = *xv;
    }
    return x;
}

SparseMatrix inverse(const SparseMatrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("inverse: not square");
    auto x = solve(a, SparseMatrix::identity(a.rows()));
    if (!x)
        throw std::invalid_argument("inverse: singular matrix");
    return *x;
}

bool HomologyData::is_cycle(const SparseVec& v, const SparseMatrix& d_out) const {
    return d_out.apply(v).empty();
}

std::optional<SparseVec> HomologyData::class_of(const SparseVec& v) const {
    auto x = expand->solve(v);
    if (!x)
        return std::nullopt;
    SparseVec out;
    const int b = boundaries.cols();
    for (const auto& [idx, c] : x->ents)
        if (idx >= b)
            out.set(idx - b, c);
    return out;
}

HomologyData homology_at(const SparseMatrix& d_in, const SparseMatrix& d_out) {
    if (d_out.cols() != d_in.rows())
        throw std::invalid_argument("homology_at: shape mismatch");
    if (d_in.cols() > 0 && d_out.rows() > 0 && !(d_out * d_in).is_zero())
        throw std::invalid_argument("homology_at: d_out * d_in != 0");

    HomologyData h;
    h.ambient = d_out.cols();

    Echelon out_ech(d_out, true);
    h.cycles = out_ech.kernel_basis();

    Echelon in_ech(d_in, false);
    h.boundaries = in_ech.image_basis();

    const int z = h.cycles.cols();
    const int b = h.boundaries.cols();
    h.dim = z - b;

    // representatives: cycle columns independent modulo the boundaries
    IncrementalSpan span(h.ambient);
    for (int j = 0; j < b; ++j)
        if (!span.add(h.boundaries.col(j)))
            throw std::logic_error("homology_at: boundary basis not independent");
    h.reps = SparseMatrix(h.ambient, h.dim);
    int k = 0;
    for (int j = 0; j < z && k < h.dim; ++j)
        if (span.add(h.cycles.col(j)))
            h.reps.col_mut(k++) = h.cycles.col(j);
    if (k != h.dim)
        throw std::logic_error("homology_at: representative extraction failed");

    h.expand = std::make_shared<Echelon>(h.boundaries.hcat(h.reps), true);
    h.boundary_ech = std::make_shared<Echelon>(h.boundaries, true);

    h.projection = SparseMatrix(h.dim, z);
    for (int j = 0; j < z; ++j) {
        auto cls = h.class_of(h.cycles.col(j));
        if (!cls)
            throw std::logic_error("homology_at: cycle failed to project");
        h.projection.col_mut(j) = *cls;
    }
    return h;
}

SparseMatrix induced_map(const SparseMatrix& f, const HomologyData& src,
                         const HomologyData& dst, const SparseMatrix& dst_d_out) {
    if (f.cols() != src.ambient || f.rows() != dst.ambient)
        throw std::invalid_argument("induced_map: shape mismatch");
    if (src.cycles.cols() > 0 && dst_d_out.rows() > 0 &&
        !(dst_d_out * (f * src.cycles)).is_zero())
        throw std::invalid_argument("induced_map: image of a cycle is not a cycle");
    for (int j = 0; j < src.boundaries.cols(); ++j)
        if (!dst.boundary_ech->in_image(f.apply(src.boundaries.col(j))))
            throw std::invalid_argument("induced_map: boundary not sent to a boundary");

    SparseMatrix out(dst.dim, src.dim);
    for (int j = 0; j < src.dim; ++j) {
        auto cls = dst.class_of(f.apply(src.reps.col(j)));
        if (!cls)
            throw std::invalid_argument("induced_map: representative image is not a cycle");
        out.col_mut(j) = *cls;
    }
    return out;
}

void ChainComplex::validate() const {
    if (d.size() != dims.size())
        throw std::invalid_argument("chain complex: differential count mismatch");
    for (int n = 1; n <= top(); ++n) {
        if (d[n].cols() != dims[n] || d[n].rows() != dims[n - 1])
            throw std::invalid_argument("chain complex: differential shape at degree " +
                                        std::to_string(n));
        if (n >= 2 && !(d[n - 1] * d[n]).is_zero())
            throw std::invalid_argument("chain complex: d*d != 0 at degree " +
                                        std::to_string(n));
    }
}

HomologyData ChainComplex::homology(int n) const {
    if (n < 0 || n > top())
        throw std::out_of_range("homology degree out of range");
    SparseMatrix din = (n + 1 <= top()) ? d[n + 1] : SparseMatrix(dims[n], 0);
    SparseMatrix dout = (n >= 1) ? d[n] : SparseMatrix(0, dims[n]);
    return homology_at(din, dout);
}

bool is_chain_map(const ChainMap& f, const ChainComplex& src, const ChainComplex& dst) {
    if (f.f.size() != src.dims.size() || src.dims.size() != dst.dims.size())
        return false;
    for (int n = 0; n <= src.top(); ++n)
        if (f.f[n].cols() != src.dims[n] || f.f[n].rows() != dst.dims[n])
            return false;
    for (int n = 1; n <= src.top(); ++n)
        if (dst.d[n] * f.f[n] != f.f[n - 1] * src.d[n])
            return false;
    return true;
}

void validate_ses(const ShortExactSeq& s) {
    s.sub.validate();
    s.mid.validate();
    s.quot.validate();
    if (!is_chain_map(s.incl, s.sub, s.mid))
        throw std::invalid_argument("ses: inclusion is not a chain map");
    if (!is_chain_map(s.proj, s.mid, s.quot))
        throw std::invalid_argument("ses: projection is not a chain map");
    for (int n = 0; n <= s.mid.top(); ++n) {
        if (rank_of(s.incl.f[n]) != s.sub.dims[n])
            throw std::invalid_argument("ses: inclusion not injective at degree " +
                                        std::to_string(n));
        if (rank_of(s.proj.f[n]) != s.quot.dims[n])
            throw std::invalid_argument("ses: projection not surjective at degree " +
                                        std::to_string(n));
        if (!(s.proj.f[n] * s.incl.f[n]).is_zero())
            throw std::invalid_argument("ses: proj * incl != 0 at degree " +
                                        std::to_string(n));
        if (s.mid.dims[n] != s.sub.dims[n] + s.quot.dims[n])
            throw std::invalid_argument("ses: dimensions not exact at degree " +
                                        std::to_string(n));
    }
}

SparseMatrix connecting_map(const ShortExactSeq& s, int n,
                            const HomologyData& hquot_n,
                            const HomologyData& hsub_nm1) {
    if (n < 1 || n > s.mid.top())
        throw std::out_of_range("connecting_map: degree out of range");
    Echelon proj_ech(s.proj.f[n], true);
    Echelon incl_ech(s.incl.f[n - 1], true);
    const SparseMatrix& dmid = s.mid.d[n];

    SparseMatrix out(hsub_nm1.dim, hquot_n.dim);
    for (int j = 0; j < hquot_n.dim; ++j) {
        auto lift = proj_ech.solve(hquot_n.reps.col(j));
        if (!lift)
            throw std::logic_error("connecting_map: projection not surjective");
        SparseVec db = dmid.apply(*lift);
        auto a = incl_ech.solve(db);
        if (!a)
            throw std::logic_error("connecting_map: boundary of lift not in subcomplex");
        auto cls = hsub_nm1.class_of(*a);
        if (!cls)
            throw std::logic_error("connecting_map: connecting image is not a cycle");
        out.col_mut(j) = *cls;
    }
    return out;
}

void Tower::validate() const {
    if (maps.size() + 1 != dims.size())
        throw std::invalid_argument("tower: map count mismatch");
    for (size_t i = 0; i < maps.size(); ++i)
        if (maps[i].rows() != dims[i] || maps[i].cols() != dims[i + 1])
            throw std::invalid_argument("tower: map shape at stage " + std::to_string(i));
}

TowerLimit tower_limit(const Tower& t, int window) {
    t.validate();
    const int n = t.stages();
    if (window < 1)
        throw std::invalid_argument("tower_limit: window must be >= 1");
    if (n < window + 2)
        throw std::invalid_argument("tower_limit: need at least window+2 stages");

    TowerLimit out;
    std::vector<SparseMatrix> comp(n - 1);
    comp[n - 2] = t.maps[n - 2];
    for (int k = n - 3; k >= 0; --k)
        comp[k] = t.maps[k] * comp[k + 1];

    out.image_dims.resize(n - 1);
    out.images.resize(n - 1);
    for (int k = 0; k < n - 1; ++k) {
        Echelon e(comp[k], false);
        out.image_dims[k] = e.rank();
        out.images[k] = e.image_basis();
    }

    // dim Im_k is non-decreasing in k (longer composites can only shrink),
    // and the limit dimension is the eventual deep value, so stabilization
    // is read off the deepest `window`+1 stages
    const int m = n - 1;
    bool stable = true;
    for (int k = m - 1 - window; k < m - 1; ++k)
        if (out.image_dims[k] != out.image_dims[k + 1])
            stable = false;

    out.stabilized = stable;
    if (stable) {
        out.lim_dim = out.image_dims[m - 1];
        out.lim1_zero = true;
        out.eventual_image = out.images[0];
    }
    return out;
}

} // namespace chom
