#include "chom/algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace chom {

namespace {

SparseVec unit_vec(int idx) {
    SparseVec v;
    v.ents.emplace_back(idx, Rat(1));
    return v;
}

} // namespace

SparseVec Algebra::mul(const SparseVec& x, const SparseVec& y) const {
    SparseVec out;
    for (const auto& [i, xi] : x.ents)
        for (const auto& [j, yj] : y.ents)
            out.axpy(xi * yj, table[i][j]);
    return out;
}

SparseMatrix Algebra::left_mul_matrix(const SparseVec& x) const {
    SparseMatrix m(dim, dim);
    for (int j = 0; j < dim; ++j)
        m.col_mut(j) = mul(x, unit_vec(j));
    return m;
}

SparseMatrix Algebra::right_mul_matrix(const SparseVec& x) const {
    SparseMatrix m(dim, dim);
    for (int j = 0; j < dim; ++j)
        m.col_mut(j) = mul(unit_vec(j), x);
    return m;
}

AlgebraReport validate_algebra(const Algebra& a) {
    if (a.dim <= 0)
        return {false, "dimension must be positive"};
    if (static_cast<int>(a.table.size()) != a.dim)
        return {false, "structure table has wrong row count"};
    for (int i = 0; i < a.dim; ++i) {
        if (static_cast<int>(a.table[i].size()) != a.dim)
            return {false, "structure table row " + std::to_string(i) + " has wrong size"};
        for (int j = 0; j < a.dim; ++j)
            for (const auto& [k, v] : a.table[i][j].ents)
                if (k < 0 || k >= a.dim)
                    return {false, "structure constant out of range at (" +
                                       std::to_string(i) + "," + std::to_string(j) + ")"};
    }
    for (int i = 0; i < a.dim; ++i) {
        SparseVec ei = unit_vec(i);
        if (!(a.mul(a.unit, ei) == ei))
            return {false, "unit fails on the left of e_" + std::to_string(i)};
        if (!(a.mul(ei, a.unit) == ei))
            return {false, "unit fails on the right of e_" + std::to_string(i)};
    }
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j)
            for (int k = 0; k < a.dim; ++k) {
                SparseVec lhs = a.mul(a.table[i][j], unit_vec(k));
                SparseVec rhs = a.mul(unit_vec(i), a.table[j][k]);
                if (!(lhs == rhs))
                    return {false, "associativity fails on triple (" + std::to_string(i) +
                                       "," + std::to_string(j) + "," + std::to_string(k) + ")"};
            }
    return {true, ""};
}

AlgebraReport validate_bimodule(const Algebra& a, const Bimodule& m) {
    if (static_cast<int>(m.left.size()) != a.dim ||
        static_cast<int>(m.right.size()) != a.dim)
        return {false, "bimodule action tables have wrong size"};
    for (int i = 0; i < a.dim; ++i)
        if (m.left[i].rows() != m.dim || m.left[i].cols() != m.dim ||
            m.right[i].rows() != m.dim || m.right[i].cols() != m.dim)
            return {false, "action matrix shape mismatch at index " + std::to_string(i)};

    auto act_left = [&](const SparseVec& x) {
        SparseMatrix s(m.dim, m.dim);
        for (const auto& [i, c] : x.ents)
            s = s + m.left[i] * c;
        return s;
    };
    auto act_right = [&](const SparseVec& x) {
        SparseMatrix s(m.dim, m.dim);
        for (const auto& [i, c] : x.ents)
            s = s + m.right[i] * c;
        return s;
    };

    if (!act_left(a.unit).is_identity())
        return {false, "unit does not act as identity on the left"};
    if (!act_right(a.unit).is_identity())
        return {false, "unit does not act as identity on the right"};

    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            if (m.left[i] * m.left[j] != act_left(a.table[i][j]))
                return {false, "left action not associative at (" + std::to_string(i) +
                                   "," + std::to_string(j) + ")"};
            if (m.right[j] * m.right[i] != act_right(a.table[i][j]))
                return {false, "right action not associative at (" + std::to_string(i) +
                                   "," + std::to_string(j) + ")"};
            if (m.left[i] * m.right[j] != m.right[j] * m.left[i])
                return {false, "left and right actions do not commute at (" +
                                   std::to_string(i) + "," + std::to_string(j) + ")"};
        }
    return {true, ""};
}

Bimodule regular_bimodule(const Algebra& a) {
    Bimodule m;
    m.dim = a.dim;
    for (int i = 0; i < a.dim; ++i) {
        m.left.push_back(a.left_mul_matrix(unit_vec(i)));
        m.right.push_back(a.right_mul_matrix(unit_vec(i)));
    }
    return m;
}

namespace {

// Span closure under left/right multiplication by all basis elements.
Subspace ideal_closure(const Algebra& a, std::vector<SparseVec> gens) {
    std::vector<SparseVec> basis;
    std::vector<int> pivot_rows;
    auto try_add = [&](SparseVec v) {
        for (size_t i = 0; i < basis.size(); ++i) {
            Rat e = v.get(pivot_rows[i]);
            if (e != 0)
                v.axpy(-e / basis[i].get(pivot_rows[i]), basis[i]);
        }
        if (v.empty())
            return false;
        pivot_rows.push_back(v.ents.front().first);
        basis.push_back(std::move(v));
        return true;
    };

    std::vector<SparseVec> work = std::move(gens);
    while (!work.empty()) {
        SparseVec v = std::move(work.back());
        work.pop_back();
        if (!try_add(v))
            continue;
        const SparseVec& added = basis.back();
        for (int i = 0; i < a.dim; ++i) {
            work.push_back(a.mul(unit_vec(i), added));
            work.push_back(a.mul(added, unit_vec(i)));
        }
    }

    SparseMatrix b(a.dim, static_cast<int>(basis.size()));
    for (size_t i = 0; i < basis.size(); ++i)
        b.col_mut(static_cast<int>(i)) = basis[i];
    return Subspace{a.dim, b};
}

} // namespace

Ideal ideal_from_generators(const Algebra& a, const std::vector<SparseVec>& gens) {
    return Ideal{&a, ideal_closure(a, gens)};
}

AlgebraReport validate_ideal(const Ideal& i) {
    const Algebra& a = *i.parent;
    Echelon e(i.basis.basis, true);
    if (e.rank() != i.dim())
        return {false, "ideal basis not independent"};
    for (int j = 0; j < i.dim(); ++j) {
        const SparseVec v = i.basis.basis.col(j);
        for (int k = 0; k < a.dim; ++k) {
            if (!e.in_image(a.mul(unit_vec(k), v)))
                return {false, "not closed under left multiplication by e_" +
                                   std::to_string(k)};
            if (!e.in_image(a.mul(v, unit_vec(k))))
                return {false, "not closed under right multiplication by e_" +
                                   std::to_string(k)};
        }
    }
    return {true, ""};
}

Ideal ideal_power(const Ideal& i, int n) {
    if (n < 0)
        throw std::invalid_argument("ideal_power: negative exponent");
    const Algebra& a = *i.parent;
    if (n == 0) {
        std::vector<SparseVec> all;
        for (int k = 0; k < a.dim; ++k)
            all.push_back(unit_vec(k));
        return Ideal{&a, ideal_closure(a, all)};
    }
    Ideal cur = i;
    for (int step = 2; step <= n; ++step) {
        std::vector<SparseVec> prods;
        for (int p = 0; p < cur.dim(); ++p)
            for (int q = 0; q < i.dim(); ++q)
                prods.push_back(a.mul(cur.basis.basis.col(p), i.basis.basis.col(q)));
        // a product of two-sided ideals is already two-sided; closure is
        // still taken through the same span builder for a canonical basis
        cur = Ideal{&a, ideal_closure(a, prods)};
        if (cur.dim() == 0)
            break;
    }
    return cur;
}

std::optional<int> nilpotency_degree(const Ideal& i) {
    Ideal cur = i;
    for (int n = 1; n <= i.parent->dim + 1; ++n) {
        if (cur.dim() == 0)
            return n;
        int before = cur.dim();
        cur = ideal_power(i, n + 1);
        if (cur.dim() == before)
            return std::nullopt; // I^{n+1} = I^n != 0: never reaches zero
    }
    return std::nullopt;
}

std::pair<Algebra, Subspace> truncated_polynomial(int n) {
    if (n < 1)
        throw std::invalid_argument("truncated_polynomial: n must be >= 1");
    Algebra a;
    a.dim = n;
    a.name = "Q[x]/(x^" + std::to_string(n) + ")";
    for (int i = 0; i < n; ++i)
        a.basis_labels.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)));
    a.table.assign(n, std::vector<SparseVec>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i + j < n)
                a.table[i][j] = unit_vec(i + j);
    a.unit = unit_vec(0);

    std::vector<SparseVec> gens;
    if (n > 1)
        gens.push_back(unit_vec(1));
    Subspace sub = ideal_from_generators(a, gens).basis;
    return {std::move(a), std::move(sub)};
}

Algebra rationals() {
    Algebra a = truncated_polynomial(1).first;
    a.name = "Q";
    return a;
}

std::pair<Algebra, Subspace> square_zero_extension(const Algebra& b, const Bimodule& m) {
    auto rep = validate_bimodule(b, m);
    if (!rep.ok)
        throw std::invalid_argument("square_zero_extension: " + rep.what);
    Algebra e;
    e.dim = b.dim + m.dim;
    e.name = b.name.empty() ? "square-zero extension" : b.name + " |x M";
    for (int i = 0; i < b.dim; ++i)
        e.basis_labels.push_back(i < static_cast<int>(b.basis_labels.size())
                                     ? b.basis_labels[i]
                                     : "b" + std::to_string(i));
    for (int i = 0; i < m.dim; ++i)
        e.basis_labels.push_back("m" + std::to_string(i));
    e.table.assign(e.dim, std::vector<SparseVec>(e.dim));

    auto shift = [&](const SparseVec& v) {
        SparseVec out;
        for (const auto& [r, c] : v.ents)
            out.ents.emplace_back(r + b.dim, c);
        return out;
    };

    for (int i = 0; i < b.dim; ++i)
        for (int j = 0; j < b.dim; ++j)
            e.table[i][j] = b.table[i][j];
    for (int i = 0; i < b.dim; ++i)
        for (int j = 0; j < m.dim; ++j)
            e.table[i][b.dim + j] = shift(m.left[i].col(j));
    for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < b.dim; ++j)
            e.table[b.dim + i][j] = shift(m.right[j].col(i));
    // M * M = 0

    e.unit = b.unit;

    std::vector<SparseVec> gens;
    for (int i = 0; i < m.dim; ++i)
        gens.push_back(unit_vec(b.dim + i));
    Subspace sub = ideal_from_generators(e, gens).basis;
    return {std::move(e), std::move(sub)};
}

AlgebraReport validate_algebra_map(const AlgebraMap& f) {
    const Algebra& a = *f.src;
    const Algebra& b = *f.dst;
    if (f.mat.rows() != b.dim || f.mat.cols() != a.dim)
        return {false, "map matrix shape mismatch"};
    if (!(f.mat.apply(a.unit) == b.unit))
        return {false, "map does not preserve the unit"};
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            SparseVec lhs = f.mat.apply(a.table[i][j]);
            SparseVec rhs = b.mul(f.mat.col(i), f.mat.col(j));
            if (!(lhs == rhs))
                return {false, "map not multiplicative on (e_" + std::to_string(i) +
                                   ", e_" + std::to_string(j) + ")"};
        }
    return {true, ""};
}

bool is_surjective(const AlgebraMap& f) { return rank_of(f.mat) == f.dst->dim; }

QuotientResult quotient_by_ideal(const Algebra& a, const Ideal& i) {
    auto rep = validate_ideal(i);
    if (!rep.ok)
        throw std::invalid_argument("quotient_by_ideal: " + rep.what);

    // extend the ideal basis by standard vectors
    Echelon ideal_ech(i.basis.basis, true);
    std::vector<SparseVec> comp;
    {
        std::vector<SparseVec> basis;
        std::vector<int> pivot_rows;
        auto reduce_add = [&](SparseVec v) {
            for (size_t k = 0; k < basis.size(); ++k) {
                Rat e = v.get(pivot_rows[k]);
                if (e != 0)
                    v.axpy(-e / basis[k].get(pivot_rows[k]), basis[k]);
            }
            if (v.empty())
                return false;
            pivot_rows.push_back(v.ents.front().first);
            basis.push_back(std::move(v));
            return true;
        };
        for (int j = 0; j < i.dim(); ++j)
            reduce_add(i.basis.basis.col(j));
        for (int k = 0; k < a.dim; ++k)
            if (reduce_add(unit_vec(k)))
                comp.push_back(unit_vec(k));
    }

    const int qdim = a.dim - i.dim();
    SparseMatrix complement(a.dim, qdim);
    for (int j = 0; j < qdim; ++j)
        complement.col_mut(j) = comp[j];

    // express x = ideal part + complement part; proj takes the latter
    SparseMatrix big = i.basis.basis.hcat(complement);
    SparseMatrix biginv = inverse(big);
    SparseMatrix proj = biginv.block(i.dim(), 0, qdim, a.dim);

    QuotientResult out;
    out.algebra.dim = qdim;
    out.algebra.name = a.name.empty() ? "quotient" : a.name + " / I";
    for (int j = 0; j < qdim; ++j) {
        int idx = comp[j].ents.front().first;
        out.algebra.basis_labels.push_back(
            idx < static_cast<int>(a.basis_labels.size()) ? a.basis_labels[idx]
                                                          : "q" + std::to_string(j));
    }
    out.algebra.table.assign(qdim, std::vector<SparseVec>(qdim));
    for (int p = 0; p < qdim; ++p)
        for (int q = 0; q < qdim; ++q)
            out.algebra.table[p][q] = proj.apply(a.mul(comp[p], comp[q]));
    out.algebra.unit = proj.apply(a.unit);
    out.complement = complement;
    out.projection = proj;

    auto qrep = validate_algebra(out.algebra);
    if (!qrep.ok)
        throw std::logic_error("quotient_by_ideal: quotient invalid: " + qrep.what);
    return out;
}

int SplitSquare::label_of(int basis_index) const {
    if (basis_index < dim0)
        return 0;
    if (basis_index < dim0 + dim1)
        return 1;
    return 2;
}

SplitSquare split_square(const Algebra& a1, const Algebra& a2, const Algebra& a12,
                         const SparseMatrix& f1, const SparseMatrix& f2,
                         std::optional<SparseMatrix> s1_opt,
                         std::optional<SparseMatrix> s2_opt) {
    AlgebraMap m1{&a1, &a12, f1}, m2{&a2, &a12, f2};
    for (auto* m : {&m1, &m2}) {
        auto rep = validate_algebra_map(*m);
        if (!rep.ok)
            throw std::invalid_argument("split_square: " + rep.what);
        if (!is_surjective(*m))
            throw std::invalid_argument("split_square: map not surjective");
    }

    auto section = [&](const SparseMatrix& f, const std::optional<SparseMatrix>& given,
                       int src_dim) {
        if (given) {
            if (given->rows() != src_dim || given->cols() != a12.dim)
                throw std::invalid_argument("split_square: section shape mismatch");
            if (!(f * *given).is_identity())
                throw std::invalid_argument("split_square: section is not a section");
            return *given;
        }
        auto s = solve(f, SparseMatrix::identity(a12.dim));
        if (!s)
            throw std::logic_error("split_square: failed to solve for a section");
        return *s;
    };
    SparseMatrix s1 = section(f1, s1_opt, a1.dim);
    SparseMatrix s2 = section(f2, s2_opt, a2.dim);

    SparseMatrix k1 = Echelon(f1, true).kernel_basis(); // I(1) in A1
    SparseMatrix k2 = Echelon(f2, true).kernel_basis(); // I(2) in A2

    SplitSquare sq;
    sq.a1 = a1;
    sq.a2 = a2;
    sq.a12 = a12;
    sq.f1 = f1;
    sq.f2 = f2;
    sq.s1 = s1;
    sq.s2 = s2;
    sq.dim0 = a12.dim;
    sq.dim1 = k1.cols();
    sq.dim2 = k2.cols();

    const int dim = sq.dim0 + sq.dim1 + sq.dim2;

    // basis of A0 inside A1 + A2: columns are (x, y) pairs
    SparseMatrix emb(a1.dim + a2.dim, dim);
    for (int j = 0; j < sq.dim0; ++j) {
        for (const auto& [r, v] : s1.col(j).ents)
            emb.set(r, j, v);
        for (const auto& [r, v] : s2.col(j).ents)
            emb.set(a1.dim + r, j, v);
    }
    for (int j = 0; j < sq.dim1; ++j)
        for (const auto& [r, v] : k1.col(j).ents)
            emb.set(r, sq.dim0 + j, v);
    for (int j = 0; j < sq.dim2; ++j)
        for (const auto& [r, v] : k2.col(j).ents)
            emb.set(a1.dim + r, sq.dim0 + sq.dim1 + j, v);

    if (rank_of(emb) != dim)
        throw std::logic_error("split_square: corner basis not independent");

    Echelon emb_ech(emb, true);
    auto coords_of = [&](const SparseVec& x_in_a1, const SparseVec& y_in_a2) {
        SparseVec big;
        for (const auto& [r, v] : x_in_a1.ents)
            big.ents.emplace_back(r, v);
        for (const auto& [r, v] : y_in_a2.ents)
            big.ents.emplace_back(a1.dim + r, v);
        auto c = emb_ech.solve(big);
        if (!c)
            throw std::logic_error("split_square: product left the fiber product");
        return *c;
    };

    Algebra& a0 = sq.a0;
    a0.dim = dim;
    a0.name = "fiber product";
    for (int j = 0; j < dim; ++j) {
        std::string lbl = j < sq.dim0 ? "c" + std::to_string(j)
                          : j < sq.dim0 + sq.dim1
                              ? "u" + std::to_string(j - sq.dim0)
                              : "v" + std::to_string(j - sq.dim0 - sq.dim1);
        a0.basis_labels.push_back(lbl);
    }
    a0.table.assign(dim, std::vector<SparseVec>(dim));
    auto component = [&](int j) {
        // (x, y) pair of basis vector j
        SparseVec x, y;
        for (const auto& [r, v] : emb.col(j).ents)
            if (r < a1.dim)
                x.ents.emplace_back(r, v);
            else
                y.ents.emplace_back(r - a1.dim, v);
        return std::make_pair(x, y);
    };
    for (int p = 0; p < dim; ++p)
        for (int q = 0; q < dim; ++q) {
            auto [xp, yp] = component(p);
            auto [xq, yq] = component(q);
            a0.table[p][q] = coords_of(a1.mul(xp, xq), a2.mul(yp, yq));
        }
    a0.unit = coords_of(a1.unit, a2.unit);

    auto rep = validate_algebra(a0);
    if (!rep.ok)
        throw std::logic_error("split_square: corner invalid: " + rep.what);

    // I(1) /\ I(2) = 0 holds by construction (disjoint blocks); the
    // cartesian property is the completeness of the assembled basis,
    // which rank checking above established.

    // projections: read off the components of each basis vector
    sq.pr1 = SparseMatrix(a1.dim, dim);
    sq.pr2 = SparseMatrix(a2.dim, dim);
    for (int j = 0; j < dim; ++j) {
        auto [x, y] = component(j);
        sq.pr1.col_mut(j) = x;
        sq.pr2.col_mut(j) = y;
    }

    // are the sections unital algebra maps?
    AlgebraMap sm1{&a12, &a1, s1}, sm2{&a12, &a2, s2};
    sq.sections_multiplicative =
        validate_algebra_map(sm1).ok && validate_algebra_map(sm2).ok;

    return sq;
}

std::vector<int> GradedAlgebra::piece_dims() const {
    std::vector<int> out(max_degree + 1, 0);
    for (int d : degree)
        ++out[d];
    return out;
}

AlgebraReport validate_graded(const GradedAlgebra& g) {
    auto rep = validate_algebra(g.algebra);
    if (!rep.ok)
        return rep;
    if (static_cast<int>(g.degree.size()) != g.algebra.dim)
        return {false, "degree list has wrong length"};
    for (int i = 0; i < g.algebra.dim; ++i)
        for (int j = 0; j < g.algebra.dim; ++j)
            for (const auto& [k, v] : g.algebra.table[i][j].ents)
                if (g.degree[k] != g.degree[i] + g.degree[j])
                    return {false, "multiplication does not add degrees at (" +
                                       std::to_string(i) + "," + std::to_string(j) + ")"};
    for (const auto& [k, v] : g.algebra.unit.ents)
        if (g.degree[k] != 0)
            return {false, "unit has a component of positive degree"};
    return {true, ""};
}

Algebra conjugate(const Algebra& a, const SparseMatrix& new_basis) {
    SparseMatrix inv = inverse(new_basis);
    Algebra out;
    out.dim = a.dim;
    out.name = a.name;
    for (int j = 0; j < a.dim; ++j)
        out.basis_labels.push_back("f" + std::to_string(j));
    out.table.assign(a.dim, std::vector<SparseVec>(a.dim));
    for (int p = 0; p < a.dim; ++p)
        for (int q = 0; q < a.dim; ++q)
            out.table[p][q] = inv.apply(a.mul(new_basis.col(p), new_basis.col(q)));
    out.unit = inv.apply(a.unit);
    return out;
}

FilteredPresentation filtered_presentation(const Algebra& a, const Ideal& i) {
    FilteredPresentation fp;
    auto nd = nilpotency_degree(i);
    if (!nd)
        throw std::invalid_argument(
            "filtered_presentation: ideal is not nilpotent within dim(A)+1 powers");
    fp.nilpotency = *nd;

    if (i.dim() == 0) {
        fp.algebra = a;
        fp.level.assign(a.dim, 0);
        fp.basis = SparseMatrix::identity(a.dim);
        return fp;
    }

    std::vector<Subspace> powers(fp.nilpotency);
    for (int k = 0; k < fp.nilpotency; ++k)
        powers[k] = ideal_power(i, k).basis;

    std::vector<SparseVec> basis;
    std::vector<int> pivot_rows;
    std::vector<SparseVec> cols;
    std::vector<int> level;
    auto reduce_add = [&](SparseVec v) {
        for (size_t k = 0; k < basis.size(); ++k) {
            Rat e = v.get(pivot_rows[k]);
            if (e != 0)
                v.axpy(-e / basis[k].get(pivot_rows[k]), basis[k]);
        }
        if (v.empty())
            return false;
        pivot_rows.push_back(v.ents.front().first);
        basis.push_back(std::move(v));
        return true;
    };
    for (int k = fp.nilpotency - 1; k >= 0; --k)
        for (int j = 0; j < powers[k].dim(); ++j)
            if (reduce_add(powers[k].basis.col(j))) {
                cols.push_back(powers[k].basis.col(j));
                level.push_back(k);
            }
    if (static_cast<int>(cols.size()) != a.dim)
        throw std::logic_error("filtered_presentation: adapted basis does not span");

    std::vector<int> order(cols.size());
    for (size_t j = 0; j < order.size(); ++j)
        order[j] = static_cast<int>(j);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return level[x] < level[y]; });

    fp.basis = SparseMatrix(a.dim, a.dim);
    fp.level.resize(a.dim);
    for (int j = 0; j < a.dim; ++j) {
        fp.basis.col_mut(j) = cols[order[j]];
        fp.level[j] = level[order[j]];
    }
    fp.algebra = conjugate(a, fp.basis);
    return fp;
}

GradedAlgebra associated_graded(const Algebra& a, const Ideal& i) {
    GradedAlgebra g;
    FilteredPresentation fp = filtered_presentation(a, i);

    // keep only the degree-additive part of each product
    g.algebra = fp.algebra;
    g.degree = fp.level;
    g.max_degree = fp.nilpotency - 1;
    for (int p = 0; p < fp.algebra.dim; ++p)
        for (int q = 0; q < fp.algebra.dim; ++q) {
            SparseVec filtered;
            const int want = fp.level[p] + fp.level[q];
            for (const auto& [k, v] : fp.algebra.table[p][q].ents) {
                if (fp.level[k] < want)
                    throw std::logic_error(
                        "associated_graded: product dropped below its level");
                if (fp.level[k] == want)
                    filtered.ents.emplace_back(k, v);
            }
            g.algebra.table[p][q] = filtered;
        }
    // unit components above level 0 are corrections; drop them
    SparseVec u;
    for (const auto& [k, v] : g.algebra.unit.ents)
        if (fp.level[k] == 0)
            u.ents.emplace_back(k, v);
    g.algebra.unit = u;

    auto rep = validate_graded(g);
    if (!rep.ok)
        throw std::logic_error("associated_graded: invalid result: " + rep.what);
    return g;
}

Algebra upper_triangular_2x2() {
    // basis: e11, e22, e12
    Algebra a;
    a.dim = 3;
    a.name = "upper triangular 2x2";
    a.basis_labels = {"e11", "e22", "e12"};
    a.table.assign(3, std::vector<SparseVec>(3));
    auto e = [](int i) { return unit_vec(i); };
    a.table[0][0] = e(0);
    a.table[1][1] = e(1);
    a.table[0][2] = e(2); // e11 e12 = e12
    a.table[2][1] = e(2); // e12 e22 = e12
    a.unit.ents.emplace_back(0, Rat(1));
    a.unit.ents.emplace_back(1, Rat(1));
    return a;
}

} // namespace chom
