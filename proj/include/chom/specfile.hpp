#pragma once

#include "chom/algebra.hpp"
#include "chom/cyclic.hpp"

#include <map>
#include <string>

#include <json.hpp>

namespace chom {

// A parsed input file.  Rationals are strings like "2/3" so that
// exactness survives serialization; see docs/format.md for the schema.
struct ParsedInput {
    enum class Kind { Algebra, SquareZero, System, Square, Simplicial };
    Kind kind = Kind::Algebra;
    std::string name;

    Algebra algebra;                      // Algebra / SquareZero / System base
    std::map<std::string, Subspace> ideals;
    Bimodule bimodule;                    // SquareZero
    std::vector<Bimodule> bimodules;      // System
    SplitSquare square;                   // Square
    SimplicialModule simplicial;          // Simplicial
};

// Throws std::invalid_argument with the offending entry's path on any
// malformed value; validation (associativity, surjectivity, sections,
// simplicial identities) runs before returning.
ParsedInput parse_spec(const nlohmann::json& j);
ParsedInput parse_spec_file(const std::string& path);

// Serialization helpers used by the CLI corpus.
nlohmann::json algebra_to_json(const Algebra& a,
                               const std::map<std::string, Subspace>& ideals = {});

} // namespace chom
