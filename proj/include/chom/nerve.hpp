#pragma once

#include "chom/cyclic.hpp"

#include <vector>

namespace chom {

// Cyclic nerve of the pointed monoid Q = {*, 0, 1} (0+0=0, 0+1=1, 1+1=*),
// truncated at degree D.  Non-basepoint q-simplices are the 0/1 words of
// length q+1; the weight of a word is the number of 1s.
struct PointedMonoidNerve {
    int D = 0;
    // words[q] lists the 0/1 words as bitmasks, grouped by weight
    std::vector<std::vector<unsigned>> words;
    std::vector<std::vector<int>> weight; // weight per word
};

PointedMonoidNerve nerve_of_q(int D);

// The weight-k piece Q(k): a cyclic set plus its linearization as a
// cyclic module.  In degree q the non-basepoint simplices are the
// weight-k words, C(q+1, k) of them.
struct WeightPiece {
    int k = 0;
    int D = 0;
    std::vector<std::vector<unsigned>> words; // per degree, sorted
    CyclicModule linearization;
};

WeightPiece nerve_weight_piece(int k, int D);

} // namespace chom
