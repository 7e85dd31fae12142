#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "invcalc/rootdata.hpp"

namespace invcalc::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kInputError = 2 };

/// Runs `invcalc` with the given arguments (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker count from INVCALC_WORKERS, defaulting to the hardware concurrency.
std::size_t worker_count();

struct EnumerateRow {
    std::string r;  // "<e1+e2>", "0"
    std::size_t order = 0;
    std::string inv_ind;
    std::string inv_red;
    int theorem_rank = 0;
    std::string verdict;  // pass, warn, fail, error
    std::string detail;
};

/// One row per subgroup of the center of prod(type, ranks), in enumeration order.
std::vector<EnumerateRow> enumerate_rows(rootdata::DynkinType type, const std::vector<int>& ranks, int height,
                                         std::size_t workers);

}  // namespace invcalc::cli
