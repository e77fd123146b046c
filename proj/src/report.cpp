#include "hslie/report.hpp"

#include <atomic>
#include <sstream>
#include <thread>

namespace hslie {

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::heuristic: return "heuristic";
        case CheckStatus::asserted_not_verified: return "asserted-not-verified";
    }
    return "?";
}

bool Report::all_passing() const {
    for (const auto& e : entries)
        if (e.status == CheckStatus::fail) return false;
    return true;
}

std::string Report::to_text() const {
    std::size_t width = 0;
    for (const auto& e : entries) width = std::max(width, e.check_id.size());
    std::ostringstream os;
    for (const auto& e : entries) {
        os << e.check_id << std::string(width - e.check_id.size() + 2, ' ')
           << status_name(e.status);
        if (!e.witness.empty()) os << "  [" << e.witness << "]";
        os << "\n";
    }
    return os.str();
}

Report run_checks(const std::vector<Check>& checks, std::size_t workers) {
    if (workers == 0) {
        workers = std::thread::hardware_concurrency();
        if (workers == 0) workers = 2;
    }
    workers = std::min(workers, checks.size() ? checks.size() : std::size_t(1));

    Report report;
    report.entries.resize(checks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= checks.size()) return;
            try {
                report.entries[i] = checks[i].run();
            } catch (const std::exception& e) {
                report.entries[i] = {checks[i].check_id, CheckStatus::fail, e.what()};
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return report;
}

}  // namespace hslie
