#pragma once

#include <string>
#include <vector>

namespace rsm::tools {

struct ReproduceOptions {
    std::string out_dir = ".";
    unsigned threads = 0;
    double mean_resolution = 0.02;  // grid step of the n = 3 search, in units of vbar
    std::size_t mean_inf_grid = 400;
    std::size_t ec_inf_grid = 200;
};

const std::vector<std::string>& reproduce_targets();

// Writes <target>.csv into out_dir and returns its path.  Throws std::invalid_argument on an unknown target.
std::string reproduce(const std::string& target, const ReproduceOptions& opts);

}  // namespace rsm::tools
