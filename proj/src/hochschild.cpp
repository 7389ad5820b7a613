#include "chom/hochschild.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace chom {

ChainComplex moore_complex(const SimplicialModule& m) {
    ChainComplex c;
    c.dims = m.dims;
    c.d.resize(m.D + 1);
    for (int q = 1; q <= m.D; ++q) {
        SparseMatrix b(m.dims[q - 1], m.dims[q]);
        Rat sign(1);
        for (int i = 0; i <= q; ++i) {
            b = b + m.face[q][i] * sign;
            sign = -sign;
        }
        c.d[q] = std::move(b);
    }
    c.validate();
    return c;
}

namespace {

long long ipow(int base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i)
        r *= base;
    return r;
}

std::vector<int> decode_word(int idx, int q, int dim) {
    std::vector<int> w(q + 1);
    for (int i = 0; i <= q; ++i) {
        w[i] = idx % dim;
        idx /= dim;
    }
    return w;
}

int encode_word(const std::vector<int>& w, int dim) {
    long long idx = 0;
    for (int i = static_cast<int>(w.size()) - 1; i >= 0; --i)
        idx = idx * dim + w[i];
    return static_cast<int>(idx);
}

// t^{-j} rotation: slot i of the result is slot i+j of w
std::vector<int> rotate_left(const std::vector<int>& w, int j) {
    const int n = static_cast<int>(w.size());
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = w[(i + j) % n];
    return out;
}

} // namespace

long long HochschildModule::words(int q) const { return ipow(algebra.dim, q + 1); }

int HochschildModule::encode(const std::vector<int>& w) const {
    return encode_word(w, algebra.dim);
}

std::vector<int> HochschildModule::decode(int idx, int q) const {
    return decode_word(idx, q, algebra.dim);
}

HochschildModule hh(const Algebra& a, int D, long long budget) {
    {
        auto rep = validate_algebra(a);
        if (!rep.ok)
            throw std::invalid_argument("hh: algebra invalid: " + rep.what);
    }
    {
        long long count = 1;
        for (int i = 0; i <= D; ++i) {
            count *= a.dim;
            if (count > budget)
                throw std::invalid_argument(
                    "hh: tensor budget exceeded (dim^" + std::to_string(D + 1) + " > " +
                    std::to_string(budget) + "); lower the maximal degree");
        }
    }

    HochschildModule h;
    h.algebra = a;
    h.D = D;
    CyclicModule& m = h.mod;
    m.sim.D = D;
    m.sim.dims.resize(D + 1);
    for (int q = 0; q <= D; ++q)
        m.sim.dims[q] = static_cast<int>(ipow(a.dim, q + 1));
    m.sim.face.resize(D + 1);
    m.sim.degen.resize(D + 1);
    m.t.resize(D + 1);

    for (int q = 1; q <= D; ++q) {
        m.sim.face[q].resize(q + 1);
        for (int i = 0; i <= q; ++i) {
            SparseMatrix f(m.sim.dims[q - 1], m.sim.dims[q]);
            for (int c = 0; c < m.sim.dims[q]; ++c) {
                std::vector<int> w = decode_word(c, q, a.dim);
                if (i < q) {
                    const SparseVec& prod = a.table[w[i]][w[i + 1]];
                    std::vector<int> nw(w.begin(), w.end());
                    nw.erase(nw.begin() + i + 1);
                    for (const auto& [k, v] : prod.ents) {
                        nw[i] = k;
                        f.set(encode_word(nw, a.dim), c, v);
                    }
                } else {
                    // d_q: last factor multiplies the first from the left
                    const SparseVec& prod = a.table[w[q]][w[0]];
                    std::vector<int> nw(w.begin(), w.begin() + q);
                    for (const auto& [k, v] : prod.ents) {
                        nw[0] = k;
                        f.set(encode_word(nw, a.dim), c, v);
                    }
                }
            }
            m.sim.face[q][i] = std::move(f);
        }
    }
    for (int q = 0; q < D; ++q) {
        m.sim.degen[q].resize(q + 1);
        for (int i = 0; i <= q; ++i) {
            SparseMatrix f(m.sim.dims[q + 1], m.sim.dims[q]);
            for (int c = 0; c < m.sim.dims[q]; ++c) {
                std::vector<int> w = decode_word(c, q, a.dim);
                std::vector<int> nw(w.begin(), w.end());
                nw.insert(nw.begin() + i + 1, 0);
                for (const auto& [k, v] : a.unit.ents) {
                    nw[i + 1] = k;
                    f.set(encode_word(nw, a.dim), c, v);
                }
            }
            m.sim.degen[q][i] = std::move(f);
        }
    }
    for (int q = 0; q <= D; ++q) {
        SparseMatrix f(m.sim.dims[q], m.sim.dims[q]);
        for (int c = 0; c < m.sim.dims[q]; ++c) {
            std::vector<int> w = decode_word(c, q, a.dim);
            std::vector<int> nw(q + 1);
            nw[0] = w[q];
            for (int s = 0; s < q; ++s)
                nw[s + 1] = w[s];
            f.set(encode_word(nw, a.dim), c, Rat(1));
        }
        m.t[q] = std::move(f);
    }
    return h;
}

namespace {

// coordinate subobject of a simplicial module; *closed must come back true
// for the selection to be a subobject
SimplicialModule coordinate_subsimplicial(const SimplicialModule& m,
                                          const std::vector<std::vector<int>>& keep,
                                          bool* closed) {
    SimplicialModule out;
    out.D = m.D;
    out.dims.resize(m.D + 1);
    for (int q = 0; q <= m.D; ++q)
        out.dims[q] = static_cast<int>(keep[q].size());
    out.face.resize(m.D + 1);
    out.degen.resize(m.D + 1);
    if (closed)
        *closed = true;

    auto restrict = [&](const SparseMatrix& big, const std::vector<int>& src,
                        const std::vector<int>& dst) {
        std::vector<int> pos(big.rows(), -1);
        for (size_t i = 0; i < dst.size(); ++i)
            pos[dst[i]] = static_cast<int>(i);
        SparseMatrix outm(static_cast<int>(dst.size()), static_cast<int>(src.size()));
        for (size_t j = 0; j < src.size(); ++j)
            for (const auto& [r, v] : big.col(src[j]).ents) {
                if (pos[r] < 0) {
                    if (closed)
                        *closed = false;
                    continue;
                }
                outm.set(pos[r], static_cast<int>(j), v);
            }
        return outm;
    };

    for (int q = 1; q <= m.D; ++q) {
        out.face[q].resize(q + 1);
        for (int i = 0; i <= q; ++i)
            out.face[q][i] = restrict(m.face[q][i], keep[q], keep[q - 1]);
    }
    for (int q = 0; q < m.D; ++q) {
        out.degen[q].resize(q + 1);
        for (int i = 0; i <= q; ++i)
            out.degen[q][i] = restrict(m.degen[q][i], keep[q], keep[q + 1]);
    }
    return out;
}

// j_* applied to a degreewise map of simplicial modules
CyclicMorphism free_cyclic_on_map(const std::vector<SparseMatrix>& f) {
    CyclicMorphism out;
    out.f.resize(f.size());
    for (size_t q = 0; q < f.size(); ++q) {
        SparseMatrix big(static_cast<int>(q + 1) * f[q].rows(),
                         static_cast<int>(q + 1) * f[q].cols());
        for (size_t s = 0; s <= q; ++s)
            big.insert_block(static_cast<int>(s) * f[q].rows(),
                             static_cast<int>(s) * f[q].cols(), f[q]);
        out.f[q] = std::move(big);
    }
    return out;
}

// Shared construction of the retract through j_*G.
//   hmod        ambient word bookkeeping (for decode/encode)
//   H           the piece, with word_index giving ambient words per degree
//   g_local     H-local indices forming G
//   positions   per degree, per H-local index: the rotation positions
RetractData build_retract(const HochschildModule& hmod, const CyclicModule& H,
                          const std::vector<std::vector<int>>& word_index,
                          const std::vector<std::vector<int>>& g_local,
                          const std::vector<std::vector<std::vector<int>>>& positions,
                          int scalar) {
    const int D = H.D();
    RetractData rd;
    rd.scalar = scalar;

    bool g_closed = true;
    SimplicialModule G = coordinate_subsimplicial(H.sim, g_local, &g_closed);
    if (!g_closed)
        throw std::logic_error("retract: G is not a simplicial subobject");
    rd.jG = free_cyclic(G);

    // H-local index of an ambient word
    std::vector<std::map<int, int>> h_of_word(D + 1);
    for (int q = 0; q <= D; ++q)
        for (size_t l = 0; l < word_index[q].size(); ++l)
            h_of_word[q][word_index[q][l]] = static_cast<int>(l);
    // G-local index of an H-local index
    std::vector<std::map<int, int>> g_of_h(D + 1);
    for (int q = 0; q <= D; ++q)
        for (size_t l = 0; l < g_local[q].size(); ++l)
            g_of_h[q][g_local[q][l]] = static_cast<int>(l);

    rd.into_free.f.resize(D + 1);
    for (int q = 0; q <= D; ++q) {
        const int gdim = static_cast<int>(g_local[q].size());
        SparseMatrix f((q + 1) * gdim, H.dim(q));
        for (int l = 0; l < H.dim(q); ++l) {
            std::vector<int> w = hmod.decode(word_index[q][l], q);
            for (int j : positions[q][l]) {
                int rot = hmod.encode(rotate_left(w, j));
                auto ith = h_of_word[q].find(rot);
                if (ith == h_of_word[q].end())
                    throw std::logic_error("retract: rotated word left the piece");
                auto itg = g_of_h[q].find(ith->second);
                if (itg == g_of_h[q].end())
                    throw std::logic_error("retract: rotated word not in G");
                f.set(j * gdim + itg->second, l, f.get(j * gdim + itg->second, l) + 1);
            }
        }
        rd.into_free.f[q] = std::move(f);
    }

    rd.map_is_cyclic = morphism_map(rd.into_free, H, rd.jG).ok;

    // composite: counit of H after j_* of the inclusion G -> H
    std::vector<SparseMatrix> incl(D + 1);
    for (int q = 0; q <= D; ++q) {
        SparseMatrix inc(H.dim(q), static_cast<int>(g_local[q].size()));
        for (size_t l = 0; l < g_local[q].size(); ++l)
            inc.set(g_local[q][l], static_cast<int>(l), Rat(1));
        incl[q] = std::move(inc);
    }
    CyclicMorphism jincl = free_cyclic_on_map(incl);
    CyclicMorphism eps = counit(H);
    rd.composite = compose(eps, compose(jincl, rd.into_free));
    rd.composite_is_scalar = true;
    for (int q = 0; q <= D; ++q)
        if (!rd.composite.f[q].is_scalar(Rat(scalar)))
            rd.composite_is_scalar = false;
    return rd;
}

} // namespace

WeightDecomposition weight_decompose(const Algebra& b, const Bimodule& m, int D,
                                     long long budget) {
    WeightDecomposition out;
    auto [ext, ideal] = square_zero_extension(b, m);
    out.extension = std::move(ext);
    out.square_zero_ideal = std::move(ideal);
    out.ambient = hh(out.extension, D, budget);

    const int bd = b.dim;
    for (int k = 0; k <= D + 1; ++k) {
        WeightSummand ws;
        ws.k = k;
        ws.word_index.resize(D + 1);
        std::vector<std::vector<std::vector<int>>> positions(D + 1);
        CoordinateSelection sel;
        sel.keep.resize(D + 1);
        for (int q = 0; q <= D; ++q) {
            const int n = out.ambient.mod.dim(q);
            for (int c = 0; c < n; ++c) {
                std::vector<int> w = out.ambient.decode(c, q);
                std::vector<int> ones;
                for (int i = 0; i <= q; ++i)
                    if (w[i] >= bd)
                        ones.push_back(i);
                if (static_cast<int>(ones.size()) == k) {
                    sel.keep[q].push_back(c);
                    ws.word_index[q].push_back(c);
                    positions[q].push_back(std::move(ones));
                }
            }
        }
        ws.H = coordinate_submodule(out.ambient.mod, sel, &ws.inclusion);

        std::vector<std::vector<int>> g_local(D + 1);
        for (int q = 0; q <= D; ++q)
            for (size_t l = 0; l < ws.word_index[q].size(); ++l) {
                std::vector<int> w = out.ambient.decode(ws.word_index[q][l], q);
                if (w[0] >= bd)
                    g_local[q].push_back(static_cast<int>(l));
            }
        ws.g_local = g_local;
        ws.retract = build_retract(out.ambient, ws.H, ws.word_index, g_local, positions, k);
        {
            bool closed = true;
            ws.G = coordinate_subsimplicial(ws.H.sim, g_local, &closed);
            if (!closed)
                throw std::logic_error("weight_decompose: G(k) not simplicial");
        }
        out.pieces.push_back(std::move(ws));
    }
    return out;
}

PartitionSystem partition_system(const Algebra& a0, const std::vector<Bimodule>& bimods,
                                 int D, long long budget) {
    // direct sum of the bimodules, blocks in list order
    Bimodule sum;
    for (const auto& bm : bimods)
        sum.dim += bm.dim;
    for (int i = 0; i < a0.dim; ++i) {
        SparseMatrix l(sum.dim, sum.dim), r(sum.dim, sum.dim);
        int off = 0;
        for (const auto& bm : bimods) {
            l.insert_block(off, off, bm.left[i]);
            r.insert_block(off, off, bm.right[i]);
            off += bm.dim;
        }
        sum.left.push_back(std::move(l));
        sum.right.push_back(std::move(r));
    }

    PartitionSystem sys;
    sys.num_bimodules = static_cast<int>(bimods.size());
    auto [ext, ideal_sub] = square_zero_extension(a0, sum);
    sys.extension = std::move(ext);
    sys.label_of_basis.assign(sys.extension.dim, 0);
    {
        int off = a0.dim;
        for (size_t j = 0; j < bimods.size(); ++j) {
            for (int i = 0; i < bimods[j].dim; ++i)
                sys.label_of_basis[off + i] = static_cast<int>(j) + 1;
            off += bimods[j].dim;
        }
    }
    sys.ambient = hh(sys.extension, D, budget);
    return sys;
}

PartitionSummand partition_decompose(const PartitionSystem& sys, const Partition& p) {
    const int l = sys.num_bimodules;
    for (int part : p.parts)
        if (part > l)
            throw std::invalid_argument("partition_decompose: part " + std::to_string(part) +
                                        " exceeds the number of bimodules " +
                                        std::to_string(l));
    if (p.parts.empty())
        throw std::invalid_argument("partition_decompose: needs a partition of k > 0");

    const int D = sys.ambient.D;
    std::vector<int> target = p.parts; // descending already
    PartitionSummand ps;
    ps.P = p;
    ps.word_index.resize(D + 1);
    std::vector<std::vector<std::vector<int>>> positions(D + 1);
    CoordinateSelection sel;
    sel.keep.resize(D + 1);
    for (int q = 0; q <= D; ++q) {
        const int n = sys.ambient.mod.dim(q);
        for (int c = 0; c < n; ++c) {
            std::vector<int> w = sys.ambient.decode(c, q);
            std::vector<int> support, values;
            for (int i = 0; i <= q; ++i) {
                int lab = sys.label_of_basis[w[i]];
                if (lab != 0) {
                    support.push_back(i);
                    values.push_back(lab);
                }
            }
            std::vector<int> sorted_vals = values;
            std::sort(sorted_vals.begin(), sorted_vals.end(), std::greater<int>());
            if (sorted_vals == target) {
                sel.keep[q].push_back(c);
                ps.word_index[q].push_back(c);
                positions[q].push_back(std::move(support));
            }
        }
    }
    ps.H = coordinate_submodule(sys.ambient.mod, sel, &ps.inclusion);

    std::vector<std::vector<int>> g_local(D + 1);
    for (int q = 0; q <= D; ++q)
        for (size_t i = 0; i < ps.word_index[q].size(); ++i) {
            std::vector<int> w = sys.ambient.decode(ps.word_index[q][i], q);
            if (sys.label_of_basis[w[0]] != 0)
                g_local[q].push_back(static_cast<int>(i));
        }
    ps.retract =
        build_retract(sys.ambient, ps.H, ps.word_index, g_local, positions, p.length());
    {
        bool closed = true;
        ps.G = coordinate_subsimplicial(ps.H.sim, g_local, &closed);
        if (!closed)
            throw std::logic_error("partition_decompose: G(P) not simplicial");
    }
    return ps;
}

std::vector<int> IdealFiltration::dims(int k) const {
    std::vector<int> out;
    for (int q = 0; q <= ambient.D; ++q)
        out.push_back(k < static_cast<int>(F.size()) ? F[k].dim(q) : 0);
    return out;
}

CyclicModule IdealFiltration::subquotient(int k) const {
    // F^k / F^{k+1}: quotient the sum>=k module by its sum>=k+1 words
    const CyclicModule& fk = F[k];
    CoordinateSelection deeper;
    deeper.keep.resize(ambient.D + 1);
    // recover F^k's word list: words with level sum >= k, ambient order
    for (int q = 0; q <= ambient.D; ++q) {
        int local = 0;
        for (int c = 0; c < ambient.mod.dim(q); ++c) {
            if (level_sum[q][c] < k)
                continue;
            if (level_sum[q][c] >= k + 1)
                deeper.keep[q].push_back(local);
            ++local;
        }
    }
    return coordinate_quotient(fk, deeper, nullptr);
}

IdealFiltration ideal_filtration(const Algebra& a, const Ideal& i, int D,
                                 long long budget) {
    IdealFiltration out;
    out.pres = filtered_presentation(a, i);
    out.ambient = hh(out.pres.algebra, D, budget);

    out.level_sum.resize(D + 1);
    for (int q = 0; q <= D; ++q) {
        out.level_sum[q].resize(out.ambient.mod.dim(q));
        for (int c = 0; c < out.ambient.mod.dim(q); ++c) {
            std::vector<int> w = out.ambient.decode(c, q);
            int s = 0;
            for (int x : w)
                s += out.pres.level[x];
            out.level_sum[q][c] = s;
        }
    }

    out.kmax = (out.pres.nilpotency - 1) * (D + 1) + 1;
    for (int k = 0; k <= out.kmax; ++k) {
        CoordinateSelection sel;
        sel.keep.resize(D + 1);
        for (int q = 0; q <= D; ++q)
            for (int c = 0; c < out.ambient.mod.dim(q); ++c)
                if (out.level_sum[q][c] >= k)
                    sel.keep[q].push_back(c);
        out.F.push_back(coordinate_submodule(out.ambient.mod, sel, nullptr));
    }
    return out;
}

namespace {

Partition word_partition(const std::vector<int>& w, const std::vector<int>& degree) {
    Partition p;
    for (int x : w)
        if (degree[x] > 0)
            p.parts.push_back(degree[x]);
    std::sort(p.parts.begin(), p.parts.end(), std::greater<int>());
    return p;
}

// structure matrices of two cyclic modules agree under a word bijection
bool modules_equal_on_words(const CyclicModule& x, const CyclicModule& y,
                            const std::vector<std::vector<int>>& perm /* y idx -> x idx */) {
    auto eq = [&](const SparseMatrix& mx, const SparseMatrix& my, int qsrc, int qdst) {
        for (int j = 0; j < my.cols(); ++j) {
            SparseVec lhs = mx.col(perm[qsrc][j]);
            SparseVec rhs;
            for (const auto& [r, v] : my.col(j).ents)
                rhs.set(perm[qdst][r], v);
            if (!(lhs == rhs))
                return false;
        }
        return true;
    };
    if (x.D() != y.D())
        return false;
    for (int q = 0; q <= x.D(); ++q)
        if (x.dim(q) != y.dim(q))
            return false;
    for (int q = 1; q <= x.D(); ++q)
        for (int i = 0; i <= q; ++i)
            if (!eq(x.d(q, i), y.d(q, i), q, q - 1))
                return false;
    for (int q = 0; q < x.D(); ++q)
        for (int i = 0; i <= q; ++i)
            if (!eq(x.s(q, i), y.s(q, i), q, q + 1))
                return false;
    for (int q = 0; q <= x.D(); ++q)
        if (!eq(x.t[q], y.t[q], q, q))
            return false;
    return true;
}

} // namespace

PartitionChain partition_chain(const GradedAlgebra& g, int k, int D, long long budget) {
    {
        auto rep = validate_graded(g);
        if (!rep.ok)
            throw std::invalid_argument("partition_chain: graded algebra invalid: " +
                                        rep.what);
        if (!std::is_sorted(g.degree.begin(), g.degree.end()))
            throw std::invalid_argument("partition_chain: basis must be grouped by degree");
    }
    if (k < 1)
        throw std::invalid_argument("partition_chain: k must be positive");

    PartitionChain out;
    out.k = k;
    HochschildModule ambient = hh(g.algebra, D, budget);

    // the subquotient F^k/F^{k+1} is the span of words of total degree k
    CoordinateSelection sel;
    sel.keep.resize(D + 1);
    std::vector<std::vector<int>> words(D + 1);
    for (int q = 0; q <= D; ++q)
        for (int c = 0; c < ambient.mod.dim(q); ++c) {
            std::vector<int> w = ambient.decode(c, q);
            int s = 0;
            for (int x : w)
                s += g.degree[x];
            if (s == k) {
                sel.keep[q].push_back(c);
                words[q].push_back(c);
            }
        }
    out.subquotient = coordinate_submodule(ambient.mod, sel, nullptr);

    // the model system: A_0 with the graded pieces A_1..A_k as bimodules
    const std::vector<int> piece_dims = [&] {
        std::vector<int> pd(k + 1, 0);
        for (int d : g.degree)
            if (d <= k)
                ++pd[d];
        return pd;
    }();
    const int dim0 = piece_dims[0];
    Algebra a0;
    a0.dim = dim0;
    a0.name = "degree-0 part";
    a0.table.assign(dim0, std::vector<SparseVec>(dim0));
    for (int i = 0; i < dim0; ++i) {
        a0.basis_labels.push_back("a" + std::to_string(i));
        for (int j = 0; j < dim0; ++j) {
            SparseVec v;
            for (const auto& [r, c] : g.algebra.table[i][j].ents)
                v.ents.emplace_back(r, c); // degree-0 products stay in range
            a0.table[i][j] = v;
        }
    }
    a0.unit = g.algebra.unit;

    std::vector<Bimodule> bimods;
    std::vector<int> offsets(k + 2, 0);
    for (int d = 1; d <= k + 1 && d <= k; ++d)
        offsets[d] = offsets[d - 1] + piece_dims[d - 1];
    for (int d = 1; d <= k; ++d) {
        Bimodule bm;
        bm.dim = piece_dims[d];
        const int off = offsets[d];
        for (int i = 0; i < dim0; ++i) {
            SparseMatrix l(bm.dim, bm.dim), r(bm.dim, bm.dim);
            for (int j = 0; j < bm.dim; ++j) {
                for (const auto& [row, v] : g.algebra.table[i][off + j].ents)
                    l.set(row - off, j, v);
                for (const auto& [row, v] : g.algebra.table[off + j][i].ents)
                    r.set(row - off, j, v);
            }
            bm.left.push_back(std::move(l));
            bm.right.push_back(std::move(r));
        }
        bimods.push_back(std::move(bm));
    }
    PartitionSystem sys = partition_system(a0, bimods, D, budget);

    // the extension basis and the degree<=k part of g share index order;
    // map extension basis indices to graded ones
    std::vector<int> ext_to_graded(sys.extension.dim);
    for (int i = 0; i < sys.extension.dim; ++i)
        ext_to_graded[i] = i; // identical layout by construction

    auto all_parts = partitions(k);
    CyclicModule stage = out.subquotient;
    std::vector<std::vector<int>> stage_words = words; // ambient word ids per degree

    for (const auto& P : all_parts) {
        ChainStage cs;
        cs.P = P;

        // stage kernel: words whose nonzero degree multiset is P
        CoordinateSelection ksel;
        ksel.keep.resize(D + 1);
        std::vector<std::vector<int>> kernel_words(D + 1);
        std::vector<std::vector<int>> rest_local(D + 1);
        for (int q = 0; q <= D; ++q)
            for (size_t l = 0; l < stage_words[q].size(); ++l) {
                std::vector<int> w = ambient.decode(stage_words[q][l], q);
                if (word_partition(w, g.degree) == P) {
                    ksel.keep[q].push_back(static_cast<int>(l));
                    kernel_words[q].push_back(stage_words[q][l]);
                } else {
                    rest_local[q].push_back(static_cast<int>(l));
                }
            }
        cs.kernel = coordinate_submodule(stage, ksel, nullptr);

        // model H(P) over the square-zero extension of the pieces
        cs.model = partition_decompose(sys, P);

        // identify kernel words with model words
        std::vector<std::vector<int>> perm(D + 1); // model local -> kernel local
        bool words_match = true;
        for (int q = 0; q <= D && words_match; ++q) {
            std::map<std::vector<int>, int> lookup;
            for (size_t l = 0; l < kernel_words[q].size(); ++l)
                lookup[ambient.decode(kernel_words[q][l], q)] = static_cast<int>(l);
            perm[q].resize(cs.model.word_index[q].size());
            for (size_t l = 0; l < cs.model.word_index[q].size(); ++l) {
                std::vector<int> w = sys.ambient.decode(cs.model.word_index[q][l], q);
                for (int& x : w)
                    x = ext_to_graded[x];
                auto it = lookup.find(w);
                if (it == lookup.end()) {
                    words_match = false;
                    break;
                }
                perm[q][l] = it->second;
            }
            if (perm[q].size() != kernel_words[q].size())
                words_match = false;
        }
        cs.kernel_matches_model =
            words_match && modules_equal_on_words(cs.kernel, cs.model.H, perm);

        // pass to the quotient stage
        CoordinateSelection qsel;
        qsel.keep = ksel.keep;
        stage = coordinate_quotient(stage, qsel, nullptr);
        std::vector<std::vector<int>> new_words(D + 1);
        for (int q = 0; q <= D; ++q)
            for (int l : rest_local[q])
                new_words[q].push_back(stage_words[q][l]);
        stage_words = std::move(new_words);

        out.stage_dims.push_back(stage.dim(D));
        out.stages.push_back(std::move(cs));
    }

    out.ends_at_zero = true;
    for (int q = 0; q <= D; ++q)
        if (stage.dim(q) != 0)
            out.ends_at_zero = false;
    return out;
}

GradedComparison compare_filtration_with_graded(const Algebra& a, const Ideal& i, int k,
                                                int D, long long budget) {
    GradedComparison out;
    IdealFiltration filt = ideal_filtration(a, i, D, budget);
    CyclicModule lhs = filt.subquotient(k);

    GradedAlgebra gr = associated_graded(a, i);
    HochschildModule grh = hh(gr.algebra, D, budget);
    CoordinateSelection sel;
    sel.keep.resize(D + 1);
    for (int q = 0; q <= D; ++q)
        for (int c = 0; c < grh.mod.dim(q); ++c) {
            std::vector<int> w = grh.decode(c, q);
            int s = 0;
            for (int x : w)
                s += gr.degree[x];
            if (s == k)
                sel.keep[q].push_back(c);
        }
    CyclicModule rhs = coordinate_submodule(grh.mod, sel, nullptr);

    out.dims_equal = true;
    for (int q = 0; q <= D; ++q) {
        out.dims.push_back(lhs.dim(q));
        if (lhs.dim(q) != rhs.dim(q))
            out.dims_equal = false;
    }
    if (out.dims_equal) {
        // same adapted basis on both sides: the word bases align by identity
        std::vector<std::vector<int>> perm(D + 1);
        for (int q = 0; q <= D; ++q) {
            perm[q].resize(lhs.dim(q));
            for (int l = 0; l < lhs.dim(q); ++l)
                perm[q][l] = l;
        }
        out.maps_equal = modules_equal_on_words(lhs, rhs, perm);
    }
    return out;
}

std::set<int> gap_set(const std::vector<int>& f) {
    const int n = static_cast<int>(f.size());
    std::set<int> out;
    for (int v : f)
        if (v < 0 || v > 2)
            throw std::invalid_argument("gap_set: values must lie in {0,1,2}");
    for (int j = 0; j < n; ++j) {
        if (f[j] != 2)
            continue;
        for (int step = 1; step < n; ++step) {
            int i = ((j - step) % n + n) % n;
            if (f[i] == 1) {
                out.insert(j);
                break;
            }
            if (f[i] != 0)
                break;
        }
    }
    return out;
}

SplitSquareIfib split_square_ifib(const SplitSquare& sq, int D, long long budget) {
    if (!sq.sections_multiplicative)
        throw std::invalid_argument(
            "split_square_ifib: splitting inconsistent with the maps (the sections must "
            "be unital algebra maps for the labeled decomposition)");

    SplitSquareIfib out;
    out.ambient = hh(sq.a0, D, budget);

    // labels of each word slot: 0, 1, 2 by basis block
    auto labels_of = [&](const std::vector<int>& w) {
        std::vector<int> f(w.size());
        for (size_t i = 0; i < w.size(); ++i)
            f[i] = sq.label_of(w[i]);
        return f;
    };

    CoordinateSelection sel;
    sel.keep.resize(D + 1);
    std::vector<std::vector<int>> ifib_words(D + 1);
    for (int q = 0; q <= D; ++q)
        for (int c = 0; c < out.ambient.mod.dim(q); ++c) {
            std::vector<int> f = labels_of(out.ambient.decode(c, q));
            bool has1 = false, has2 = false;
            for (int x : f) {
                has1 |= (x == 1);
                has2 |= (x == 2);
            }
            if (has1 && has2) {
                sel.keep[q].push_back(c);
                ifib_words[q].push_back(c);
            }
        }
    out.ifib = coordinate_submodule(out.ambient.mod, sel, &out.ifib_inclusion);
    for (int q = 0; q <= D; ++q)
        out.ifib_dims.push_back(out.ifib.dim(q));

    // independent route: degreewise kernels of HH(pr1) (+) HH(pr2)
    out.routes_agree = true;
    for (int q = 0; q <= D; ++q) {
        const int n = out.ambient.mod.dim(q);
        const long long rows1 = ipow(sq.a1.dim, q + 1);
        const long long rows2 = ipow(sq.a2.dim, q + 1);
        SparseMatrix stacked(static_cast<int>(rows1 + rows2), n);
        for (int c = 0; c < n; ++c) {
            std::vector<int> w = out.ambient.decode(c, q);
            // expand pr^{tensor} of the word into each corner's word basis
            auto expand = [&](const SparseMatrix& pr, int tdim, int row_off) {
                std::vector<std::pair<long long, Rat>> acc{{0, Rat(1)}};
                long long stride = 1;
                for (int i = 0; i <= q; ++i) {
                    std::vector<std::pair<long long, Rat>> next;
                    for (const auto& [idx, coef] : acc)
                        for (const auto& [r, v] : pr.col(w[i]).ents)
                            next.emplace_back(idx + stride * r, coef * v);
                    acc = std::move(next);
                    stride *= tdim;
                }
                for (const auto& [idx, coef] : acc) {
                    int row = row_off + static_cast<int>(idx);
                    stacked.set(row, c, stacked.get(row, c) + coef);
                }
            };
            expand(sq.pr1, sq.a1.dim, 0);
            expand(sq.pr2, sq.a2.dim, static_cast<int>(rows1));
        }
        int kdim = static_cast<int>(n) - rank_of(stacked);
        out.kernel_dims.push_back(kdim);
        if (kdim != out.ifib.dim(q))
            out.routes_agree = false;
        // the labeled span must die under both projections
        for (int c : sel.keep[q])
            if (!stacked.col(c).empty())
                out.routes_agree = false;
    }

    // weight pieces by |A_f|
    int kmaxseen = 0;
    std::vector<std::vector<std::set<int>>> gsets(D + 1);
    for (int q = 0; q <= D; ++q) {
        gsets[q].resize(ifib_words[q].size());
        for (size_t l = 0; l < ifib_words[q].size(); ++l) {
            gsets[q][l] = gap_set(labels_of(out.ambient.decode(ifib_words[q][l], q)));
            kmaxseen = std::max(kmaxseen, static_cast<int>(gsets[q][l].size()));
        }
    }

    for (int k = 1; k <= kmaxseen; ++k) {
        IfibSummand is;
        is.k = k;
        is.word_index.resize(D + 1);
        std::vector<std::vector<std::vector<int>>> positions(D + 1);
        CoordinateSelection hsel;
        hsel.keep.resize(D + 1);
        for (int q = 0; q <= D; ++q)
            for (size_t l = 0; l < ifib_words[q].size(); ++l)
                if (static_cast<int>(gsets[q][l].size()) == k) {
                    hsel.keep[q].push_back(static_cast<int>(l));
                    is.word_index[q].push_back(ifib_words[q][l]);
                    positions[q].push_back(
                        std::vector<int>(gsets[q][l].begin(), gsets[q][l].end()));
                }
        is.H = coordinate_submodule(out.ifib, hsel, &is.inclusion);

        std::vector<std::vector<int>> g_local(D + 1);
        for (int q = 0; q <= D; ++q)
            for (size_t l = 0; l < is.word_index[q].size(); ++l) {
                const auto& gs =
                    gap_set(labels_of(out.ambient.decode(is.word_index[q][l], q)));
                if (gs.count(0))
                    g_local[q].push_back(static_cast<int>(l));
            }
        is.retract = build_retract(out.ambient, is.H, is.word_index, g_local, positions, k);
        {
            bool closed = true;
            is.G = coordinate_subsimplicial(is.H.sim, g_local, &closed);
            if (!closed)
                throw std::logic_error("split_square_ifib: G(k) not simplicial");
        }
        out.pieces.push_back(std::move(is));
    }
    return out;
}

} // namespace chom
