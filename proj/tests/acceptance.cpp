// Runs every verification criterion once and prints one line per result.
// Exit status is the number of failed criteria.

#include <iostream>

#include "fss/verify.hpp"

int main() {
    auto results = fss::run_verification(fss::seed_from_env());
    fss::print_verification_table(std::cout, results);
    int failed = 0;
    for (const auto& res : results)
        if (!res.verdict.ok) ++failed;
    return failed;
}
