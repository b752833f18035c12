// Runs every acceptance criterion once and prints one line per criterion.
#include <cstdlib>
#include <iostream>
#include <string>

#include "nildiag_tools/acceptance.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 20240601;
    if (argc > 1) seed = std::stoull(argv[1]);
    const auto results = nildiag::tools::run_acceptance(seed);
    bool all = true;
    for (const auto& r : results) {
        std::cout << nildiag::tools::format_result(r) << "\n";
        all = all && r.pass;
    }
    std::cout << (all ? "ALL PASS" : "FAILURES") << std::endl;
    return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
