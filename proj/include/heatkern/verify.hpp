#ifndef HEATKERN_VERIFY_HPP
#define HEATKERN_VERIFY_HPP

#include <string>
#include <vector>

namespace heatkern::verify {

/// One property suite outcome. worst_margin is the suite's binding signed
/// margin: nonnegative means the property held with room to spare.
struct CheckResult {
    std::string name;
    bool pass = false;
    double worst_margin = 0.0;
    std::string detail;
    double seconds = 0.0;
};

struct Options {
    int threads = 0;    // 0 = serial; otherwise caps worker threads
    int fejer_n = 200;  // partial-sum order for the fejer suite
};

/// Registered suite names, in execution order.
std::vector<std::string> suite_names();

/// Runs one suite; throws std::invalid_argument for unknown names.
CheckResult run_suite(const std::string& name, const Options& opts = {});

/// Runs every suite in order.
std::vector<CheckResult> run_all(const Options& opts = {});

/// {"suites": [{check, parameters, worst_margin, pass}...], "pass": bool}
std::string results_json(const std::vector<CheckResult>& results);

/// Reads HEATKERN_THREADS (0 = serial) with a hardware fallback.
int thread_cap_from_env();

}  // namespace heatkern::verify

#endif
