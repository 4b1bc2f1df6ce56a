#pragma once

#include "algpaths/complex_matrix.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace algpaths {

/**
 * One run of the command-line driver. The seed fully determines all
 * randomized behavior; the tolerance is echoed into every report.
 * Exit codes: 0 success, 2 validation failure, 3 parse error.
 */
struct RunConfig {
    std::string command;                 // decompose | path | distance | lift | check
    std::vector<cplx> roots{cplx(0.0), cplx(1.0)};
    bool selfadjoint = false;
    double tol = 1e-9;
    uint64_t seed = 1;
    int dim = 4;
    int trials = 1000;
    int grid = 101;
    std::string input_path;
    std::string output_path;
    std::string kind = "exp";            // path sub-kind
};

int run(const RunConfig& config, std::ostream& out);

} // namespace algpaths
