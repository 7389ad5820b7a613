#include "chom/lambda.hpp"

#include <functional>
#include <stdexcept>

namespace chom {

namespace {

struct NormalState {
    // operator t^power o O(alpha) from degree src to degree tgt;
    // alpha: [tgt] -> [src] monotone, power mod tgt+1
    int src, tgt;
    std::vector<int> alpha;
    int power;
};

NormalState identity_state(int degree) {
    NormalState st;
    st.src = st.tgt = degree;
    st.alpha.resize(degree + 1);
    for (int i = 0; i <= degree; ++i)
        st.alpha[i] = i;
    st.power = 0;
    return st;
}

// one step of g . t = t^e . g' for a face/degeneracy generator acting on
// degree q (the relations d_i t = t d_{i-1}, d_0 t = d_q, s_i t = t s_{i-1},
// s_0 t = t^2 s_q)
std::pair<int, LambdaGen> push_past_t(const LambdaGen& g, int q) {
    if (g.kind == LambdaGen::Face) {
        if (g.index >= 1)
            return {1, LambdaGen{LambdaGen::Face, g.index - 1}};
        return {0, LambdaGen{LambdaGen::Face, q}};
    }
    if (g.kind == LambdaGen::Degeneracy) {
        if (g.index >= 1)
            return {1, LambdaGen{LambdaGen::Degeneracy, g.index - 1}};
        return {2, LambdaGen{LambdaGen::Degeneracy, q}};
    }
    throw std::logic_error("push_past_t: cyclic generator");
}

std::vector<int> delta_values(int q, int i) {
    // [q-1] -> [q] missing i
    std::vector<int> v(q);
    for (int x = 0; x < q; ++x)
        v[x] = x < i ? x : x + 1;
    return v;
}

std::vector<int> sigma_values(int q, int i) {
    // [q+1] -> [q] repeating i
    std::vector<int> v(q + 2);
    for (int x = 0; x <= q + 1; ++x)
        v[x] = x <= i ? x : x - 1;
    return v;
}

std::vector<int> compose_values(const std::vector<int>& outer,
                                const std::vector<int>& inner) {
    std::vector<int> r(inner.size());
    for (size_t x = 0; x < inner.size(); ++x)
        r[x] = outer[inner[x]];
    return r;
}

void apply_generator(NormalState& st, LambdaGen g) {
    const int q = st.tgt; // generator acts on the current output degree
    if (g.kind == LambdaGen::Cyclic) {
        st.power = (st.power + 1) % (q + 1);
        return;
    }
    if (g.kind == LambdaGen::Face && (q < 1 || g.index < 0 || g.index > q))
        throw std::invalid_argument("ill-typed face in word");
    if (g.kind == LambdaGen::Degeneracy && (g.index < 0 || g.index > q))
        throw std::invalid_argument("ill-typed degeneracy in word");

    // move g past t^power
    int emitted = 0;
    for (int step = 0; step < st.power; ++step) {
        auto [e, g2] = push_past_t(g, q);
        emitted += e;
        g = g2;
    }
    // compose the simplicial parts: alpha o (delta|sigma)
    if (g.kind == LambdaGen::Face) {
        st.alpha = compose_values(st.alpha, delta_values(q, g.index));
        st.tgt = q - 1;
    } else {
        st.alpha = compose_values(st.alpha, sigma_values(q, g.index));
        st.tgt = q + 1;
    }
    st.power = emitted % (st.tgt + 1);
}

LambdaMorphism to_morphism(const NormalState& st) {
    LambdaMorphism m;
    m.source = st.src;
    m.target = st.tgt;
    m.simplicial_part = st.alpha;
    m.power = st.power;
    return m;
}

} // namespace

int LambdaWord::target_degree() const {
    int q = source_degree;
    for (const auto& g : gens) {
        if (g.kind == LambdaGen::Face)
            --q;
        else if (g.kind == LambdaGen::Degeneracy)
            ++q;
    }
    return q;
}

void LambdaWord::check_typed() const {
    int q = source_degree;
    if (q < 0)
        throw std::invalid_argument("negative source degree");
    for (const auto& g : gens) {
        switch (g.kind) {
        case LambdaGen::Face:
            if (q < 1 || g.index < 0 || g.index > q)
                throw std::invalid_argument("ill-typed face d_" + std::to_string(g.index) +
                                            " at degree " + std::to_string(q));
            --q;
            break;
        case LambdaGen::Degeneracy:
            if (g.index < 0 || g.index > q)
                throw std::invalid_argument("ill-typed degeneracy s_" +
                                            std::to_string(g.index) + " at degree " +
                                            std::to_string(q));
            ++q;
            break;
        case LambdaGen::Cyclic:
            break;
        }
    }
}

LambdaMorphism lambda_identity(int degree) {
    return to_morphism(identity_state(degree));
}

LambdaMorphism lambda_factorize(const LambdaWord& w) {
    w.check_typed();
    NormalState st = identity_state(w.source_degree);
    for (const auto& g : w.gens)
        apply_generator(st, g);
    return to_morphism(st);
}

std::vector<LambdaGen> simplicial_generator_word(int source, const std::vector<int>& values) {
    // operator word for the monotone map alpha: [t] -> [source]: faces for
    // the missed elements (largest first), then degeneracies for repeats
    const int t = static_cast<int>(values.size()) - 1;
    for (int x = 0; x < t; ++x)
        if (values[x] > values[x + 1])
            throw std::invalid_argument("simplicial_generator_word: not monotone");
    for (int v : values)
        if (v < 0 || v > source)
            throw std::invalid_argument("simplicial_generator_word: value out of range");

    std::vector<int> image;
    for (int v : values)
        if (image.empty() || image.back() != v)
            image.push_back(v);
    std::vector<LambdaGen> word;
    // faces: remove the missing elements of [source], largest first
    std::vector<int> missing;
    {
        size_t ii = 0;
        for (int v = 0; v <= source; ++v) {
            if (ii < image.size() && image[ii] == v)
                ++ii;
            else
                missing.push_back(v);
        }
    }
    for (auto it = missing.rbegin(); it != missing.rend(); ++it)
        word.push_back(LambdaGen{LambdaGen::Face, *it});
    // degeneracies: duplicate positions of the epi part, ascending
    for (int x = 0; x < t; ++x)
        if (values[x] == values[x + 1])
            word.push_back(LambdaGen{LambdaGen::Degeneracy, x});
    return word;
}

LambdaMorphism lambda_compose(const LambdaMorphism& g, const LambdaMorphism& f) {
    if (g.source != f.target)
        throw std::invalid_argument("lambda_compose: degrees do not match");
    NormalState st;
    st.src = f.source;
    st.tgt = f.target;
    st.alpha = f.simplicial_part;
    st.power = f.power;
    for (const auto& gen : simplicial_generator_word(g.source, g.simplicial_part))
        apply_generator(st, gen);
    st.power = (st.power + g.power) % (st.tgt + 1);
    return to_morphism(st);
}

SparseMatrix lambda_evaluate(const LambdaMorphism& m, const CyclicModule& mod) {
    if (m.source > mod.D() || m.target > mod.D())
        throw std::out_of_range("lambda_evaluate: degree beyond truncation");
    SparseMatrix out = SparseMatrix::identity(mod.dim(m.source));
    int q = m.source;
    for (const auto& g : simplicial_generator_word(m.source, m.simplicial_part)) {
        if (g.kind == LambdaGen::Face) {
            out = mod.d(q, g.index) * out;
            --q;
        } else {
            out = mod.s(q, g.index) * out;
            ++q;
        }
    }
    if (q != m.target)
        throw std::logic_error("lambda_evaluate: degree bookkeeping failed");
    return mod.t_power(m.target, m.power) * out;
}

SparseMatrix lambda_evaluate_word(const LambdaWord& w, const CyclicModule& mod) {
    w.check_typed();
    if (w.source_degree > mod.D())
        throw std::out_of_range("lambda_evaluate_word: degree beyond truncation");
    int q = w.source_degree;
    SparseMatrix out = SparseMatrix::identity(mod.dim(q));
    for (const auto& g : w.gens) {
        switch (g.kind) {
        case LambdaGen::Face:
            out = mod.d(q, g.index) * out;
            --q;
            break;
        case LambdaGen::Degeneracy:
            if (q + 1 > mod.D())
                throw std::out_of_range("lambda_evaluate_word: degeneracy beyond truncation");
            out = mod.s(q, g.index) * out;
            ++q;
            break;
        case LambdaGen::Cyclic:
            out = mod.t[q] * out;
            break;
        }
    }
    return out;
}

std::vector<std::vector<int>> enumerate_monotone(int s, int t) {
    // monotone maps [s] -> [t]
    std::vector<std::vector<int>> out;
    std::vector<int> cur(s + 1, 0);
    std::function<void(int, int)> rec = [&](int pos, int minv) {
        if (pos == s + 1) {
            out.push_back(cur);
            return;
        }
        for (int v = minv; v <= t; ++v) {
            cur[pos] = v;
            rec(pos + 1, v);
        }
    };
    rec(0, 0);
    return out;
}

std::vector<LambdaMorphism> enumerate_lambda(int s, int t) {
    // operators M_s -> M_t: simplicial part [t] -> [s], power mod t+1
    std::vector<LambdaMorphism> out;
    for (const auto& alpha : enumerate_monotone(t, s))
        for (int j = 0; j <= t; ++j) {
            LambdaMorphism m;
            m.source = s;
            m.target = t;
            m.simplicial_part = alpha;
            m.power = j;
            out.push_back(std::move(m));
        }
    return out;
}

} // namespace chom
