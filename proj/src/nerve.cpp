#include "chom/nerve.hpp"

#include <algorithm>
#include <stdexcept>

namespace chom {

namespace {

int popcount_bits(unsigned w, int len) {
    int c = 0;
    for (int i = 0; i < len; ++i)
        if (w & (1u << i))
            ++c;
    return c;
}

// bit i of the mask holds the letter in slot i
int letter(unsigned w, int i) { return (w >> i) & 1u; }

} // namespace

PointedMonoidNerve nerve_of_q(int D) {
    if (D > 29)
        throw std::invalid_argument("nerve_of_q: truncation too deep for word masks");
    PointedMonoidNerve n;
    n.D = D;
    n.words.resize(D + 1);
    n.weight.resize(D + 1);
    for (int q = 0; q <= D; ++q)
        for (unsigned w = 0; w < (1u << (q + 1)); ++w) {
            n.words[q].push_back(w);
            n.weight[q].push_back(popcount_bits(w, q + 1));
        }
    return n;
}

WeightPiece nerve_weight_piece(int k, int D) {
    if (k < 0)
        throw std::invalid_argument("nerve_weight_piece: negative weight");
    if (D > 29)
        throw std::invalid_argument("nerve_weight_piece: truncation too deep");

    WeightPiece p;
    p.k = k;
    p.D = D;
    p.words.resize(D + 1);
    for (int q = 0; q <= D; ++q)
        for (unsigned w = 0; w < (1u << (q + 1)); ++w)
            if (popcount_bits(w, q + 1) == k)
                p.words[q].push_back(w);

    auto index_of = [&](int q, unsigned w) {
        const auto& v = p.words[q];
        auto it = std::lower_bound(v.begin(), v.end(), w);
        if (it == v.end() || *it != w)
            throw std::logic_error("nerve_weight_piece: word lookup failed");
        return static_cast<int>(it - v.begin());
    };

    CyclicModule& m = p.linearization;
    m.sim.D = D;
    m.sim.dims.resize(D + 1);
    for (int q = 0; q <= D; ++q)
        m.sim.dims[q] = static_cast<int>(p.words[q].size());
    m.sim.face.resize(D + 1);
    m.sim.degen.resize(D + 1);
    m.t.resize(D + 1);

    // faces add adjacent letters in Q (1+1 = basepoint kills the word),
    // d_q wraps with the rotation; degeneracies insert the unit 0;
    // t rotates the word
    for (int q = 1; q <= D; ++q) {
        m.sim.face[q].resize(q + 1);
        for (int i = 0; i <= q; ++i) {
            SparseMatrix f(m.sim.dims[q - 1], m.sim.dims[q]);
            for (size_t c = 0; c < p.words[q].size(); ++c) {
                unsigned w = p.words[q][c];
                int a, b; // letters to add
                unsigned rest;
                if (i < q) {
                    a = letter(w, i);
                    b = letter(w, i + 1);
                    // drop slot i+1, write a+b into slot i
                    rest = 0;
                    int pos = 0;
                    for (int s = 0; s <= q; ++s) {
                        if (s == i + 1)
                            continue;
                        int bit = (s == i) ? 0 : letter(w, s);
                        rest |= static_cast<unsigned>(bit) << pos;
                        ++pos;
                    }
                    if (a + b >= 2)
                        continue; // basepoint
                    rest |= static_cast<unsigned>(a + b) << i;
                } else {
                    // d_q: (n_q + n_0, n_1, ..., n_{q-1})
                    a = letter(w, q);
                    b = letter(w, 0);
                    if (a + b >= 2)
                        continue;
                    rest = 0;
                    for (int s = 1; s < q; ++s)
                        rest |= static_cast<unsigned>(letter(w, s)) << s;
                    rest |= static_cast<unsigned>(a + b);
                }
                f.set(index_of(q - 1, rest), static_cast<int>(c), Rat(1));
            }
            m.sim.face[q][i] = std::move(f);
        }
    }
    for (int q = 0; q < D; ++q) {
        m.sim.degen[q].resize(q + 1);
        for (int i = 0; i <= q; ++i) {
            SparseMatrix f(m.sim.dims[q + 1], m.sim.dims[q]);
            for (size_t c = 0; c < p.words[q].size(); ++c) {
                unsigned w = p.words[q][c];
                // insert the unit 0 after slot i
                unsigned nw = 0;
                for (int s = 0; s <= q + 1; ++s) {
                    int bit;
                    if (s <= i)
                        bit = letter(w, s);
                    else if (s == i + 1)
                        bit = 0;
                    else
                        bit = letter(w, s - 1);
                    nw |= static_cast<unsigned>(bit) << s;
                }
                f.set(index_of(q + 1, nw), static_cast<int>(c), Rat(1));
            }
            m.sim.degen[q][i] = std::move(f);
        }
    }
    for (int q = 0; q <= D; ++q) {
        SparseMatrix f(m.sim.dims[q], m.sim.dims[q]);
        for (size_t c = 0; c < p.words[q].size(); ++c) {
            unsigned w = p.words[q][c];
            // t(n_0,...,n_q) = (n_q, n_0, ..., n_{q-1})
            unsigned nw = static_cast<unsigned>(letter(w, q));
            for (int s = 0; s < q; ++s)
                nw |= static_cast<unsigned>(letter(w, s)) << (s + 1);
            f.set(index_of(q, nw), static_cast<int>(c), Rat(1));
        }
        m.t[q] = std::move(f);
    }
    return p;
}

} // namespace chom
