#include "cuntzlab/acceptance.hpp"
#include "cuntzlab/random.hpp"

#include <iostream>

int main() {
    const auto results = cuntzlab::run_acceptance(cuntzlab::env_seed());
    std::cout << cuntzlab::format_acceptance(results);
    for (const auto& r : results)
        if (!r.pass)
            return 1;
    return 0;
}
