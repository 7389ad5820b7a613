#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace chom {

struct Claim {
    enum class Verdict { Pass, Fail, Undetermined };
    std::string id;
    std::string statement;
    Verdict verdict = Verdict::Undetermined;
    std::string witness; // minimal failing detail, empty on pass
    std::string note;    // certified ranges, caveats

    static Claim pass(std::string id, std::string statement, std::string note = "");
    static Claim fail(std::string id, std::string statement, std::string witness,
                      std::string note = "");
    static Claim undetermined(std::string id, std::string statement, std::string why);
};

struct ScenarioReport {
    std::string scenario;
    std::string inputs;
    std::vector<Claim> claims;
    long long ms = 0;
    bool has_seed = false;
    uint64_t seed = 0;

    bool pass() const;
    int passed() const;
    std::string to_text() const;
    nlohmann::json to_json() const;
};

} // namespace chom
