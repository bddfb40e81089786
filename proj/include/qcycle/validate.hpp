#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace qcycle {

struct PropertyResult {
    bool passed = false;
    std::string detail;
};

struct PropertyCheck {
    std::string module;
    std::string name;
    std::function<PropertyResult()> run;
};

/// Every model invariant as an executable check. The validate CLI command
/// and the test suite both consume this list, so a property missing here is
/// missing everywhere, which keeps the checklist honest.
std::vector<PropertyCheck> property_registry(int threads = 0);

/// Run all checks, print one PASS/FAIL line per property, return the number
/// of failures.
int run_validation(std::ostream& out, int threads = 0);

} // namespace qcycle
