#pragma once

#include "chom/bicomplex.hpp"
#include "chom/hochschild.hpp"
#include "chom/reports.hpp"

namespace chom {

struct RunOptions {
    int max_degree = 6;
    int window = 3;
    long long budget = kDefaultTensorBudget;
    uint64_t seed = 17;
};

// HP(A) -> HP(A/I) for a nilpotent ideal: runs the map in both parities
// and replays the filtration argument (vanishing bound, graded
// comparison, almost-free subquotients with their scalar retracts).
ScenarioReport check_nilpotent_invariance(const Algebra& a, const Ideal& i,
                                          const RunOptions& opt);

// The HP Mayer-Vietoris sequence of a split square, with the boundary
// built through the iterated fiber, plus the engine lemma HP(ifib) = 0.
ScenarioReport check_mayer_vietoris(const SplitSquare& sq, const RunOptions& opt);

// Free cyclic vanishing for j_*N: HH ->> HC per degree, S = 0, HP = 0.
ScenarioReport check_free_vanishing(const SimplicialModule& n, const RunOptions& opt,
                                    const std::string& label = "");
// The bundled family: constant Q and `count` seeded random modules.
ScenarioReport check_free_vanishing_suite(int count, const RunOptions& opt);

// The bundled lemma corpus: partition order, gap sets, all retraction
// scalars, the partition chain, the graded-subquotient isomorphism.
ScenarioReport run_lemma_suite(const RunOptions& opt);

// Helpers shared with the CLI.
CyclicMorphism algebra_map_on_hh(const HochschildModule& src, const HochschildModule& dst,
                                 const SparseMatrix& f);
ScenarioReport report_hp(const Algebra& a, const RunOptions& opt);

} // namespace chom
