#pragma once

#include "chom/cyclic.hpp"

#include <string>
#include <vector>

namespace chom {

// Generator of the operator monoid acting on cyclic modules:
// Face i (degree q -> q-1), Degeneracy i (q -> q+1), Cyclic (q -> q).
struct LambdaGen {
    enum Kind { Face, Degeneracy, Cyclic } kind;
    int index = 0; // unused for Cyclic
};

// Word of generators applied left-to-right: word[0] acts first.
struct LambdaWord {
    int source_degree = 0;
    std::vector<LambdaGen> gens;

    int target_degree() const;
    void check_typed() const; // throws on an ill-typed word
};

// Normal form of a morphism in the cyclic category, acting as the operator
//   t_{target}^power  o  (simplicial operator of `simplicial_part`).
// `simplicial_part` is the monotone map [target] -> [source] in the simplex
// category, stored by its values; power is reduced mod target+1.
struct LambdaMorphism {
    int source = 0; // operator acts out of degree `source`
    int target = 0;
    std::vector<int> simplicial_part; // size target+1, values in [0, source]
    int power = 0;

    bool operator==(const LambdaMorphism& o) const = default;
};

LambdaMorphism lambda_identity(int degree);

// Unique normal form of a generator word, via the cyclic category's
// factorization: every operator word equals t^j o (simplicial word).
LambdaMorphism lambda_factorize(const LambdaWord& w);

// Composition g o f of normal forms (f acts first).
LambdaMorphism lambda_compose(const LambdaMorphism& g, const LambdaMorphism& f);

// The operator's matrix on a cyclic module (degrees must fit under D).
SparseMatrix lambda_evaluate(const LambdaMorphism& m, const CyclicModule& mod);
SparseMatrix lambda_evaluate_word(const LambdaWord& w, const CyclicModule& mod);

// Epi-mono factorization data of a monotone map, as generator words.
std::vector<LambdaGen> simplicial_generator_word(int source, const std::vector<int>& values);

// All morphisms [s] -> [t] of the cyclic category, by normal form.
std::vector<LambdaMorphism> enumerate_lambda(int s, int t);
// Monotone maps [s] -> [t] (the simplex category hom set).
std::vector<std::vector<int>> enumerate_monotone(int s, int t);

} // namespace chom
