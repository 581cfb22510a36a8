#pragma once

#include <string>
#include <vector>

namespace ikl {

struct RelationCheck {
    std::string relation;
    std::string family;
    std::string shape;
    // "pass", "fail" or "skipped" (degenerate index set at this rank)
    std::string status;
    std::string witness;
};

struct RelationReport {
    std::vector<RelationCheck> items;

    bool all_pass() const {
        for (const auto& it : items)
            if (it.status == "fail") return false;
        return true;
    }
    size_t failures() const {
        size_t n = 0;
        for (const auto& it : items)
            if (it.status == "fail") ++n;
        return n;
    }
};

} // namespace ikl
