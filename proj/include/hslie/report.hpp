#pragma once

#include <functional>
#include <string>
#include <vector>

namespace hslie {

enum class CheckStatus { pass, fail, heuristic, asserted_not_verified };

const char* status_name(CheckStatus s);

struct ReportEntry {
    std::string check_id;
    CheckStatus status = CheckStatus::fail;
    std::string witness;
};

struct Report {
    std::vector<ReportEntry> entries;

    bool all_passing() const;  // heuristics and noted assertions do not fail a run
    std::string to_text() const;
};

struct Check {
    std::string check_id;
    std::function<ReportEntry()> run;  // must return an entry with the same check_id
};

/// Runs the checks on a small worker pool; the report order is the input
/// order regardless of completion order. An exception inside a check becomes
/// a fail entry carrying the message.
Report run_checks(const std::vector<Check>& checks, std::size_t workers = 0);

}  // namespace hslie
