#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "fvdsr/validation.hpp"

int main() {
    const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    int failed = 0;
    int index = 0;
    for (const auto& check : fvdsr::acceptance_checks(threads)) {
        const fvdsr::CheckResult r = fvdsr::run_check(check);
        ++index;
        if (!r.passed) ++failed;
        std::printf("[%s] %2d %-28s %.3fs / %.0fs  %s\n", r.passed ? "PASS" : "FAIL", index, r.name.c_str(),
                    r.seconds, r.budget_seconds, r.detail.c_str());
    }
    std::printf("%d / %d acceptance criteria passed\n", index - failed, index);
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
