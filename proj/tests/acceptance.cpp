// Acceptance suite: runs every gallery scenario and prints one pass/fail line
// per criterion. Exit code is nonzero if any criterion fails.

#include <cstdio>

#include "diffalg/gallery.hpp"

int main() {
    auto result = diffalg::run_gallery();
    for (const auto& s : result.scenarios)
        std::printf("[%s] %-22s %s (%.2fs) %s\n", s.pass ? "PASS" : "FAIL", s.id.c_str(),
                    s.name.c_str(), s.seconds, s.pass ? "" : s.details.c_str());
    std::printf("%s\n", result.all_pass ? "acceptance: all criteria pass"
                                        : "acceptance: FAILURES present");
    return result.all_pass ? 0 : 1;
}
