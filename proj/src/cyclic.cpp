#include "chom/cyclic.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace chom {

SparseMatrix CyclicModule::t_power(int q, long long k) const {
    const int ord = q + 1;
    long long e = ((k % ord) + ord) % ord;
    SparseMatrix out = SparseMatrix::identity(sim.dims[q]);
    for (long long i = 0; i < e; ++i)
        out = t[q] * out;
    return out;
}

std::string ValidationReport::summary() const {
    if (ok)
        return "valid";
    std::string s = "invalid:";
    for (const auto& v : violations) {
        s += " [" + v.identity + " at q=" + std::to_string(v.degree);
        if (v.i >= 0)
            s += " i=" + std::to_string(v.i);
        if (v.j >= 0)
            s += " j=" + std::to_string(v.j);
        s += "]";
    }
    return s;
}

namespace {

void require_shapes(const SimplicialModule& m) {
    if (static_cast<int>(m.dims.size()) != m.D + 1)
        throw std::invalid_argument("simplicial module: dims size mismatch");
    if (static_cast<int>(m.face.size()) != m.D + 1 ||
        static_cast<int>(m.degen.size()) != m.D + 1)
        throw std::invalid_argument("simplicial module: structure map table size");
    for (int q = 1; q <= m.D; ++q) {
        if (static_cast<int>(m.face[q].size()) != q + 1)
            throw std::invalid_argument("simplicial module: face count at q=" +
                                        std::to_string(q));
        for (int i = 0; i <= q; ++i)
            if (m.face[q][i].rows() != m.dims[q - 1] || m.face[q][i].cols() != m.dims[q])
                throw std::invalid_argument("simplicial module: face shape at q=" +
                                            std::to_string(q));
    }
    for (int q = 0; q < m.D; ++q) {
        if (static_cast<int>(m.degen[q].size()) != q + 1)
            throw std::invalid_argument("simplicial module: degeneracy count at q=" +
                                        std::to_string(q));
        for (int i = 0; i <= q; ++i)
            if (m.degen[q][i].rows() != m.dims[q + 1] || m.degen[q][i].cols() != m.dims[q])
                throw std::invalid_argument("simplicial module: degeneracy shape at q=" +
                                            std::to_string(q));
    }
}

} // namespace

ValidationReport validate_simplicial(const SimplicialModule& m) {
    require_shapes(m);
    ValidationReport rep;
    auto fail = [&](const std::string& id, int q, int i, int j) {
        rep.ok = false;
        rep.violations.push_back({id, q, i, j});
    };

    // d_i d_j = d_{j-1} d_i  (i < j), on M_q, q >= 2
    for (int q = 2; q <= m.D; ++q)
        for (int j = 1; j <= q; ++j)
            for (int i = 0; i < j; ++i)
                if (m.d(q - 1, i) * m.d(q, j) != m.d(q - 1, j - 1) * m.d(q, i))
                    fail("d_i d_j = d_{j-1} d_i", q, i, j);

    // s_i s_j = s_{j+1} s_i  (i <= j), on M_q, q+2 <= D
    for (int q = 0; q + 2 <= m.D; ++q)
        for (int j = 0; j <= q; ++j)
            for (int i = 0; i <= j; ++i)
                if (m.s(q + 1, i) * m.s(q, j) != m.s(q + 1, j + 1) * m.s(q, i))
                    fail("s_i s_j = s_{j+1} s_i", q, i, j);

    // mixed identities on M_q, q < D (s_j raises to q+1, faces come back)
    for (int q = 0; q < m.D; ++q)
        for (int j = 0; j <= q; ++j)
            for (int i = 0; i <= q + 1; ++i) {
                const SparseMatrix lhs = m.d(q + 1, i) * m.s(q, j);
                if (i < j) {
                    if (q >= 1 && lhs != m.s(q - 1, j - 1) * m.d(q, i))
                        fail("d_i s_j = s_{j-1} d_i", q, i, j);
                } else if (i == j || i == j + 1) {
                    if (!lhs.is_identity())
                        fail("d_i s_j = id", q, i, j);
                } else { // i > j + 1
                    if (q >= 1 && lhs != m.s(q - 1, j) * m.d(q, i - 1))
                        fail("d_i s_j = s_j d_{i-1}", q, i, j);
                }
            }
    return rep;
}

ValidationReport validate_cyclic(const CyclicModule& m) {
    ValidationReport rep = validate_simplicial(m.sim);
    if (static_cast<int>(m.t.size()) != m.D() + 1)
        throw std::invalid_argument("cyclic module: t table size mismatch");
    auto fail = [&](const std::string& id, int q, int i) {
        rep.ok = false;
        rep.violations.push_back({id, q, i, -1});
    };
    for (int q = 0; q <= m.D(); ++q) {
        if (m.t[q].rows() != m.dim(q) || m.t[q].cols() != m.dim(q))
            throw std::invalid_argument("cyclic module: t shape at q=" + std::to_string(q));
        // the literal (q+1)-fold product, not the reduced power
        SparseMatrix pw = SparseMatrix::identity(m.dim(q));
        for (int i = 0; i <= q; ++i)
            pw = m.t[q] * pw;
        if (!pw.is_identity())
            fail("t^{q+1} = 1", q, -1);
    }
    for (int q = 1; q <= m.D(); ++q) {
        for (int i = 1; i <= q; ++i)
            if (m.d(q, i) * m.t[q] != m.t[q - 1] * m.d(q, i - 1))
                fail("d_i t = t d_{i-1}", q, i);
        if (m.d(q, 0) * m.t[q] != m.d(q, q))
            fail("d_0 t = d_q", q, 0);
    }
    for (int q = 0; q < m.D(); ++q) {
        for (int i = 1; i <= q; ++i)
            if (m.s(q, i) * m.t[q] != m.t[q + 1] * m.s(q, i - 1))
                fail("s_i t = t s_{i-1}", q, i);
        if (m.s(q, 0) * m.t[q] != m.t[q + 1] * m.t[q + 1] * m.s(q, q))
            fail("s_0 t = t^2 s_q", q, 0);
    }
    return rep;
}

SimplicialModule constant_simplicial(int dim, int D) {
    SimplicialModule m;
    m.D = D;
    m.dims.assign(D + 1, dim);
    m.face.resize(D + 1);
    m.degen.resize(D + 1);
    for (int q = 1; q <= D; ++q)
        m.face[q].assign(q + 1, SparseMatrix::identity(dim));
    for (int q = 0; q < D; ++q)
        m.degen[q].assign(q + 1, SparseMatrix::identity(dim));
    return m;
}

CyclicModule constant_module(int dim, int D) {
    CyclicModule m;
    m.sim = constant_simplicial(dim, D);
    m.t.assign(D + 1, SparseMatrix::identity(dim));
    return m;
}

CyclicModule free_cyclic(const SimplicialModule& x) {
    require_shapes(x);
    CyclicModule out;
    out.sim.D = x.D;
    out.sim.dims.resize(x.D + 1);
    for (int q = 0; q <= x.D; ++q)
        out.sim.dims[q] = (q + 1) * x.dims[q];
    out.sim.face.resize(x.D + 1);
    out.sim.degen.resize(x.D + 1);
    out.t.resize(x.D + 1);

    // basis index in degree q: summand s in 0..q, then X_q index
    for (int q = 1; q <= x.D; ++q) {
        out.sim.face[q].resize(q + 1);
        for (int r = 0; r <= q; ++r) {
            SparseMatrix f(q * x.dims[q - 1], (q + 1) * x.dims[q]);
            for (int s = 0; s <= q; ++s) {
                int tgt_s;
                const SparseMatrix* blk;
                if (s <= r) {
                    tgt_s = s % q; // s = q forces r = q; exponent wraps in C_q
                    blk = &x.face[q][r - s];
                } else {
                    tgt_s = s - 1;
                    blk = &x.face[q][q + 1 + r - s];
                }
                f.insert_block(tgt_s * x.dims[q - 1], s * x.dims[q], *blk);
            }
            out.sim.face[q][r] = std::move(f);
        }
    }
    for (int q = 0; q < x.D; ++q) {
        out.sim.degen[q].resize(q + 1);
        for (int r = 0; r <= q; ++r) {
            SparseMatrix f((q + 2) * x.dims[q + 1], (q + 1) * x.dims[q]);
            for (int s = 0; s <= q; ++s) {
                int tgt_s;
                const SparseMatrix* blk;
                if (s <= r) {
                    tgt_s = s;
                    blk = &x.degen[q][r - s];
                } else {
                    tgt_s = s + 1;
                    blk = &x.degen[q][q + 1 + r - s];
                }
                f.insert_block(tgt_s * x.dims[q + 1], s * x.dims[q], *blk);
            }
            out.sim.degen[q][r] = std::move(f);
        }
    }
    for (int q = 0; q <= x.D; ++q) {
        SparseMatrix tq((q + 1) * x.dims[q], (q + 1) * x.dims[q]);
        for (int s = 0; s <= q; ++s)
            tq.insert_block(((s + 1) % (q + 1)) * x.dims[q], s * x.dims[q],
                            SparseMatrix::identity(x.dims[q]));
        out.t[q] = std::move(tq);
    }
    return out;
}

SimplicialModule underlying_simplicial(const CyclicModule& y) { return y.sim; }

ValidationReport morphism_map(const CyclicMorphism& f, const CyclicModule& src,
                              const CyclicModule& dst) {
    ValidationReport rep;
    auto fail = [&](const std::string& id, int q, int i) {
        rep.ok = false;
        rep.violations.push_back({id, q, i, -1});
    };
    if (static_cast<int>(f.f.size()) != src.D() + 1 || src.D() != dst.D())
        throw std::invalid_argument("morphism_map: degree range mismatch");
    for (int q = 0; q <= src.D(); ++q)
        if (f.f[q].cols() != src.dim(q) || f.f[q].rows() != dst.dim(q))
            throw std::invalid_argument("morphism_map: shape mismatch at q=" +
                                        std::to_string(q));
    for (int q = 1; q <= src.D(); ++q)
        for (int i = 0; i <= q; ++i)
            if (dst.d(q, i) * f.f[q] != f.f[q - 1] * src.d(q, i))
                fail("f d_i = d_i f", q, i);
    for (int q = 0; q < src.D(); ++q)
        for (int i = 0; i <= q; ++i)
            if (dst.s(q, i) * f.f[q] != f.f[q + 1] * src.s(q, i))
                fail("f s_i = s_i f", q, i);
    for (int q = 0; q <= src.D(); ++q)
        if (dst.t[q] * f.f[q] != f.f[q] * src.t[q])
            fail("f t = t f", q, -1);
    return rep;
}

CyclicMorphism counit(const CyclicModule& y) {
    CyclicMorphism eps;
    eps.f.resize(y.D() + 1);
    for (int q = 0; q <= y.D(); ++q) {
        SparseMatrix f(y.dim(q), (q + 1) * y.dim(q));
        SparseMatrix pw = SparseMatrix::identity(y.dim(q));
        for (int s = 0; s <= q; ++s) {
            f.insert_block(0, s * y.dim(q), pw);
            pw = y.t[q] * pw;
        }
        eps.f[q] = std::move(f);
    }
    return eps;
}

CyclicMorphism compose(const CyclicMorphism& g, const CyclicMorphism& f) {
    if (g.f.size() != f.f.size())
        throw std::invalid_argument("compose: degree mismatch");
    CyclicMorphism out;
    out.f.resize(f.f.size());
    for (size_t q = 0; q < f.f.size(); ++q)
        out.f[q] = g.f[q] * f.f[q];
    return out;
}

namespace {

SparseMatrix restrict_columns(const SparseMatrix& m, const std::vector<int>& src_keep,
                              const std::vector<int>& dst_keep, bool* escaped) {
    // dst position lookup
    std::vector<int> pos(m.rows(), -1);
    for (size_t i = 0; i < dst_keep.size(); ++i)
        pos[dst_keep[i]] = static_cast<int>(i);
    SparseMatrix out(static_cast<int>(dst_keep.size()), static_cast<int>(src_keep.size()));
    for (size_t j = 0; j < src_keep.size(); ++j)
        for (const auto& [r, v] : m.col(src_keep[j]).ents) {
            if (pos[r] < 0) {
                if (escaped)
                    *escaped = true;
                continue;
            }
            out.set(pos[r], static_cast<int>(j), v);
        }
    return out;
}

std::vector<int> complement_of(const std::vector<int>& keep, int n) {
    std::vector<char> mark(n, 0);
    for (int k : keep)
        mark[k] = 1;
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (!mark[i])
            out.push_back(i);
    return out;
}

} // namespace

CyclicModule coordinate_submodule(const CyclicModule& m, const CoordinateSelection& sel,
                                  CyclicMorphism* inclusion_out) {
    if (static_cast<int>(sel.keep.size()) != m.D() + 1)
        throw std::invalid_argument("coordinate_submodule: selection size mismatch");
    CyclicModule out;
    out.sim.D = m.D();
    out.sim.dims.resize(m.D() + 1);
    for (int q = 0; q <= m.D(); ++q)
        out.sim.dims[q] = static_cast<int>(sel.keep[q].size());
    out.sim.face.resize(m.D() + 1);
    out.sim.degen.resize(m.D() + 1);
    out.t.resize(m.D() + 1);

    bool escaped = false;
    for (int q = 1; q <= m.D(); ++q) {
        out.sim.face[q].resize(q + 1);
        for (int i = 0; i <= q; ++i)
            out.sim.face[q][i] =
                restrict_columns(m.d(q, i), sel.keep[q], sel.keep[q - 1], &escaped);
    }
    for (int q = 0; q < m.D(); ++q) {
        out.sim.degen[q].resize(q + 1);
        for (int i = 0; i <= q; ++i)
            out.sim.degen[q][i] =
                restrict_columns(m.s(q, i), sel.keep[q], sel.keep[q + 1], &escaped);
    }
    for (int q = 0; q <= m.D(); ++q)
        out.t[q] = restrict_columns(m.t[q], sel.keep[q], sel.keep[q], &escaped);
    if (escaped)
        throw std::invalid_argument(
            "coordinate_submodule: structure maps leave the selected coordinates");

    if (inclusion_out) {
        inclusion_out->f.resize(m.D() + 1);
        for (int q = 0; q <= m.D(); ++q) {
            SparseMatrix inc(m.dim(q), out.dim(q));
            for (size_t j = 0; j < sel.keep[q].size(); ++j)
                inc.set(sel.keep[q][j], static_cast<int>(j), Rat(1));
            inclusion_out->f[q] = std::move(inc);
        }
    }
    return out;
}

CyclicModule coordinate_quotient(const CyclicModule& m, const CoordinateSelection& sel,
                                 CyclicMorphism* projection_out) {
    if (static_cast<int>(sel.keep.size()) != m.D() + 1)
        throw std::invalid_argument("coordinate_quotient: selection size mismatch");
    CoordinateSelection comp;
    comp.keep.resize(m.D() + 1);
    for (int q = 0; q <= m.D(); ++q)
        comp.keep[q] = complement_of(sel.keep[q], m.dim(q));

    CyclicModule out;
    out.sim.D = m.D();
    out.sim.dims.resize(m.D() + 1);
    for (int q = 0; q <= m.D(); ++q)
        out.sim.dims[q] = static_cast<int>(comp.keep[q].size());
    out.sim.face.resize(m.D() + 1);
    out.sim.degen.resize(m.D() + 1);
    out.t.resize(m.D() + 1);

    for (int q = 1; q <= m.D(); ++q) {
        out.sim.face[q].resize(q + 1);
        for (int i = 0; i <= q; ++i)
            out.sim.face[q][i] =
                restrict_columns(m.d(q, i), comp.keep[q], comp.keep[q - 1], nullptr);
    }
    for (int q = 0; q < m.D(); ++q) {
        out.sim.degen[q].resize(q + 1);
        for (int i = 0; i <= q; ++i)
            out.sim.degen[q][i] =
                restrict_columns(m.s(q, i), comp.keep[q], comp.keep[q + 1], nullptr);
    }
    for (int q = 0; q <= m.D(); ++q)
        out.t[q] = restrict_columns(m.t[q], comp.keep[q], comp.keep[q], nullptr);

    if (projection_out) {
        projection_out->f.resize(m.D() + 1);
        for (int q = 0; q <= m.D(); ++q) {
            SparseMatrix pr(out.dim(q), m.dim(q));
            for (size_t j = 0; j < comp.keep[q].size(); ++j)
                pr.set(static_cast<int>(j), comp.keep[q][j], Rat(1));
            projection_out->f[q] = std::move(pr);
        }
    }
    return out;
}

CyclicModule subspace_submodule(const CyclicModule& m,
                                const std::vector<SparseMatrix>& basis,
                                CyclicMorphism* inclusion_out) {
    if (static_cast<int>(basis.size()) != m.D() + 1)
        throw std::invalid_argument("subspace_submodule: basis list size mismatch");
    std::vector<Echelon> ech;
    ech.reserve(basis.size());
    for (int q = 0; q <= m.D(); ++q) {
        if (basis[q].rows() != m.dim(q))
            throw std::invalid_argument("subspace_submodule: ambient mismatch at q=" +
                                        std::to_string(q));
        ech.emplace_back(basis[q], true);
        if (ech.back().rank() != basis[q].cols())
            throw std::invalid_argument("subspace_submodule: basis not independent at q=" +
                                        std::to_string(q));
    }

    auto restrict_map = [&](const SparseMatrix& big, int qsrc, int qdst) {
        SparseMatrix out(basis[qdst].cols(), basis[qsrc].cols());
        for (int j = 0; j < basis[qsrc].cols(); ++j) {
            auto x = ech[qdst].solve(big.apply(basis[qsrc].col(j)));
            if (!x)
                throw std::invalid_argument(
                    "subspace_submodule: structure map leaves the subspaces");
            out.col_mut(j) = *x;
        }
        return out;
    };

    CyclicModule out;
    out.sim.D = m.D();
    out.sim.dims.resize(m.D() + 1);
    for (int q = 0; q <= m.D(); ++q)
        out.sim.dims[q] = basis[q].cols();
    out.sim.face.resize(m.D() + 1);
    out.sim.degen.resize(m.D() + 1);
    out.t.resize(m.D() + 1);
    for (int q = 1; q <= m.D(); ++q) {
        out.sim.face[q].resize(q + 1);
        for (int i = 0; i <= q; ++i)
            out.sim.face[q][i] = restrict_map(m.d(q, i), q, q - 1);
    }
    for (int q = 0; q < m.D(); ++q) {
        out.sim.degen[q].resize(q + 1);
        for (int i = 0; i <= q; ++i)
            out.sim.degen[q][i] = restrict_map(m.s(q, i), q, q + 1);
    }
    for (int q = 0; q <= m.D(); ++q)
        out.t[q] = restrict_map(m.t[q], q, q);

    if (inclusion_out) {
        inclusion_out->f.clear();
        for (int q = 0; q <= m.D(); ++q)
            inclusion_out->f.push_back(basis[q]);
    }
    return out;
}

CyclicModule direct_sum(const CyclicModule& a, const CyclicModule& b) {
    if (a.D() != b.D())
        throw std::invalid_argument("direct_sum: degree mismatch");
    CyclicModule out;
    out.sim.D = a.D();
    out.sim.dims.resize(a.D() + 1);
    for (int q = 0; q <= a.D(); ++q)
        out.sim.dims[q] = a.dim(q) + b.dim(q);
    auto blk = [&](const SparseMatrix& x, const SparseMatrix& y) {
        SparseMatrix m(x.rows() + y.rows(), x.cols() + y.cols());
        m.insert_block(0, 0, x);
        m.insert_block(x.rows(), x.cols(), y);
        return m;
    };
    out.sim.face.resize(a.D() + 1);
    out.sim.degen.resize(a.D() + 1);
    out.t.resize(a.D() + 1);
    for (int q = 1; q <= a.D(); ++q) {
        out.sim.face[q].resize(q + 1);
        for (int i = 0; i <= q; ++i)
            out.sim.face[q][i] = blk(a.d(q, i), b.d(q, i));
    }
    for (int q = 0; q < a.D(); ++q) {
        out.sim.degen[q].resize(q + 1);
        for (int i = 0; i <= q; ++i)
            out.sim.degen[q][i] = blk(a.s(q, i), b.s(q, i));
    }
    for (int q = 0; q <= a.D(); ++q)
        out.t[q] = blk(a.t[q], b.t[q]);
    return out;
}

namespace {

// monotone surjections [q] ->> [k], each as its value vector
std::vector<std::vector<int>> monotone_surjections(int q, int k) {
    std::vector<std::vector<int>> out;
    if (k > q)
        return out;
    std::vector<int> cur(q + 1, 0);
    // choose the k positions (among 1..q) where the value steps up by 1
    std::vector<int> steps(k);
    // iterate over k-subsets of {1..q}
    std::function<void(int, int)> rec = [&](int start, int idx) {
        if (idx == k) {
            int v = 0;
            size_t si = 0;
            for (int p = 0; p <= q; ++p) {
                if (si < steps.size() && steps[si] == p) {
                    ++v;
                    ++si;
                }
                cur[p] = v;
            }
            out.push_back(cur);
            return;
        }
        for (int p = start; p <= q; ++p) {
            steps[idx] = p;
            rec(p + 1, idx + 1);
        }
    };
    rec(1, 0);
    return out;
}

std::vector<int> compose_fn(const std::vector<int>& g, const std::vector<int>& f) {
    // (g o f)(x) = g(f(x)); f: [p] -> [q] given by values, g: [q] -> [r]
    std::vector<int> out(f.size());
    for (size_t x = 0; x < f.size(); ++x)
        out[x] = g[f[x]];
    return out;
}

std::vector<int> delta_fn(int q, int i) {
    // injection [q-1] -> [q] missing i
    std::vector<int> v(q);
    for (int x = 0; x < q; ++x)
        v[x] = x < i ? x : x + 1;
    return v;
}

std::vector<int> sigma_fn(int q, int i) {
    // surjection [q+1] -> [q] repeating i
    std::vector<int> v(q + 2);
    for (int x = 0; x <= q + 1; ++x)
        v[x] = x <= i ? x : x - 1;
    return v;
}

} // namespace

SimplicialModule dold_kan(const ChainComplex& c, int D) {
    c.validate();
    const int top = c.top();

    // degree q basis: (k, surjection eta: [q] ->> [k], index into C_k)
    struct Summand {
        int k;
        std::vector<int> eta;
        int offset; // start index in M_q
    };
    std::vector<std::vector<Summand>> summands(D + 1);
    SimplicialModule m;
    m.D = D;
    m.dims.assign(D + 1, 0);
    for (int q = 0; q <= D; ++q) {
        int off = 0;
        for (int k = 0; k <= std::min(q, top); ++k)
            for (auto& eta : monotone_surjections(q, k)) {
                summands[q].push_back({k, eta, off});
                off += c.dims[k];
            }
        m.dims[q] = off;
    }

    auto find_summand = [&](int q, const std::vector<int>& eta) -> const Summand& {
        for (const auto& s : summands[q])
            if (s.eta == eta)
                return s;
        throw std::logic_error("dold_kan: summand lookup failed");
    };

    // epi-mono factorization of a monotone map: values -> (mono, epi)
    auto factor = [&](const std::vector<int>& f) {
        std::vector<int> image;
        for (int v : f)
            if (image.empty() || image.back() != v)
                image.push_back(v);
        // epi: [p] ->> [j]
        std::vector<int> epi(f.size());
        for (size_t x = 0; x < f.size(); ++x) {
            int pos = static_cast<int>(std::lower_bound(image.begin(), image.end(), f[x]) -
                                       image.begin());
            epi[x] = pos;
        }
        return std::make_pair(image, epi); // image = mono values
    };

    auto structure_matrix = [&](int q_src, const std::vector<int>& alpha, int q_dst) {
        // alpha: [q_dst] -> [q_src]; returns the matrix M_src -> M_dst
        SparseMatrix out(m.dims[q_dst], m.dims[q_src]);
        for (const auto& s : summands[q_src]) {
            std::vector<int> comp = compose_fn(s.eta, alpha);
            auto [mono, epi] = factor(comp);
            int j = static_cast<int>(mono.size()) - 1;
            if (j > std::min(q_dst, top))
                throw std::logic_error("dold_kan: factorization out of range");
            bool is_id = (j == s.k);
            bool is_top_face = (j == s.k - 1);
            if (is_top_face)
                for (int x = 0; x <= j; ++x)
                    if (mono[x] != x)
                        is_top_face = false; // must miss exactly the top element k
            if (!is_id && !is_top_face)
                continue;
            const Summand& tgt = find_summand(q_dst, epi);
            if (is_id) {
                for (int x = 0; x < c.dims[s.k]; ++x)
                    out.set(tgt.offset + x, s.offset + x, Rat(1));
            } else {
                const SparseMatrix& dd = c.d[s.k];
                for (int col = 0; col < dd.cols(); ++col)
                    for (const auto& [r, v] : dd.col(col).ents)
                        out.set(tgt.offset + r, s.offset + col, v);
            }
        }
        return out;
    };

    m.face.resize(D + 1);
    m.degen.resize(D + 1);
    for (int q = 1; q <= D; ++q) {
        m.face[q].resize(q + 1);
        for (int i = 0; i <= q; ++i)
            m.face[q][i] = structure_matrix(q, delta_fn(q, i), q - 1);
    }
    for (int q = 0; q < D; ++q) {
        m.degen[q].resize(q + 1);
        for (int i = 0; i <= q; ++i)
            m.degen[q][i] = structure_matrix(q, sigma_fn(q, i), q + 1);
    }
    return m;
}

namespace {

// splitmix64: tiny deterministic generator, stable across platforms
struct SplitMix {
    uint64_t state;
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    int below(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }
};

} // namespace

SimplicialModule random_simplicial(uint64_t seed, int D) {
    SplitMix rng{seed ^ 0xc2b2ae3d27d4eb4fULL};

    // direct sum of elementary complexes: spheres (Q in one degree) and
    // disks (identity Q -> Q); guarantees d*d = 0 with varied homology
    ChainComplex c;
    c.dims.assign(4, 0);
    c.d.assign(4, SparseMatrix());
    std::vector<std::vector<std::pair<int, int>>> gens(4); // (kind, partner col)
    int sphere_budget = 1 + rng.below(3);
    for (int s = 0; s < sphere_budget; ++s) {
        int deg = rng.below(4);
        if (c.dims[deg] < 2)
            ++c.dims[deg];
    }
    std::vector<std::pair<int, std::pair<int, int>>> disks; // degree, (top idx, bottom idx)
    int disk_budget = rng.below(3);
    for (int s = 0; s < disk_budget; ++s) {
        int deg = 1 + rng.below(3);
        if (c.dims[deg] < 2 && c.dims[deg - 1] < 2) {
            disks.push_back({deg, {c.dims[deg], c.dims[deg - 1]}});
            ++c.dims[deg];
            ++c.dims[deg - 1];
        }
    }
    for (int n = 1; n <= 3; ++n)
        c.d[n] = SparseMatrix(c.dims[n - 1], c.dims[n]);
    for (auto& [deg, idx] : disks) {
        int scale = 1 + rng.below(3);
        c.d[deg].set(idx.second, idx.first, Rat(scale));
    }
    if (c.dims[0] == 0)
        c.dims[0] = 1, c.d[1] = SparseMatrix(1, c.dims[1]);
    return dold_kan(c, D);
}

} // namespace chom
