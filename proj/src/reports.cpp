#include "chom/reports.hpp"

#include <sstream>

namespace chom {

Claim Claim::pass(std::string id, std::string statement, std::string note) {
    Claim c;
    c.id = std::move(id);
    c.statement = std::move(statement);
    c.verdict = Verdict::Pass;
    c.note = std::move(note);
    return c;
}

Claim Claim::fail(std::string id, std::string statement, std::string witness,
                  std::string note) {
    Claim c;
    c.id = std::move(id);
    c.statement = std::move(statement);
    c.verdict = Verdict::Fail;
    c.witness = std::move(witness);
    c.note = std::move(note);
    return c;
}

Claim Claim::undetermined(std::string id, std::string statement, std::string why) {
    Claim c;
    c.id = std::move(id);
    c.statement = std::move(statement);
    c.verdict = Verdict::Undetermined;
    c.witness = std::move(why);
    return c;
}

bool ScenarioReport::pass() const {
    for (const auto& c : claims)
        if (c.verdict != Claim::Verdict::Pass)
            return false;
    return true;
}

int ScenarioReport::passed() const {
    int n = 0;
    for (const auto& c : claims)
        if (c.verdict == Claim::Verdict::Pass)
            ++n;
    return n;
}

std::string ScenarioReport::to_text() const {
    std::ostringstream os;
    os << "scenario: " << scenario << "\n";
    if (!inputs.empty())
        os << "  inputs: " << inputs << "\n";
    if (has_seed)
        os << "  seed: " << seed << "\n";
    for (const auto& c : claims) {
        const char* tag = c.verdict == Claim::Verdict::Pass          ? "[PASS]"
                          : c.verdict == Claim::Verdict::Fail        ? "[FAIL]"
                                                                     : "[UNDETERMINED]";
        os << "  " << tag << " " << c.id << ": " << c.statement;
        if (!c.witness.empty())
            os << "  -- " << c.witness;
        if (!c.note.empty())
            os << "  (" << c.note << ")";
        os << "\n";
    }
    os << "  result: " << (pass() ? "PASS" : "FAIL") << " (" << passed() << "/"
       << claims.size() << " claims) in " << ms << " ms\n";
    return os.str();
}

nlohmann::json ScenarioReport::to_json() const {
    nlohmann::json j;
    j["scenario"] = scenario;
    j["inputs"] = inputs;
    j["ms"] = ms;
    if (has_seed)
        j["seed"] = seed;
    j["pass"] = pass();
    j["claims"] = nlohmann::json::array();
    for (const auto& c : claims) {
        nlohmann::json cj;
        cj["id"] = c.id;
        cj["statement"] = c.statement;
        cj["verdict"] = c.verdict == Claim::Verdict::Pass          ? "pass"
                        : c.verdict == Claim::Verdict::Fail        ? "fail"
                                                                   : "undetermined";
        if (!c.witness.empty())
            cj["witness"] = c.witness;
        if (!c.note.empty())
            cj["note"] = c.note;
        j["claims"].push_back(cj);
    }
    return j;
}

} // namespace chom
