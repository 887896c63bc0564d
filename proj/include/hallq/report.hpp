#pragma once

#include <string>
#include <vector>

namespace hallq {

struct CaseResult {
    std::string key;
    bool pass = true;
    std::string lhs, rhs;
};

struct Report {
    std::string suite;
    std::string relation;
    std::vector<CaseResult> cases;

    bool all_pass() const {
        for (auto& c : cases)
            if (!c.pass) return false;
        return true;
    }
    int failures() const {
        int n = 0;
        for (auto& c : cases) n += !c.pass;
        return n;
    }
    void add(std::string key, bool pass, std::string lhs = "", std::string rhs = "") {
        cases.push_back({std::move(key), pass, std::move(lhs), std::move(rhs)});
    }
    // first failing case, for minimal counterexamples
    const CaseResult* first_failure() const {
        for (auto& c : cases)
            if (!c.pass) return &c;
        return nullptr;
    }
};

} // namespace hallq
