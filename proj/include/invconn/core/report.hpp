#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace invconn {

// Aggregated outcome of one sampled check.
struct CheckSummary {
    std::string name;
    bool pass = true;
    double max_residual = 0.0;
    long samples = 0;
    std::vector<long> failures;  // sample ids
    std::string note;

    void record(long id, double residual, bool ok) {
        ++samples;
        max_residual = std::max(max_residual, residual);
        if (!ok) {
            pass = false;
            if (std::find(failures.begin(), failures.end(), id) == failures.end()) failures.push_back(id);
        }
    }

    void merge(const CheckSummary& o) {
        samples += o.samples;
        max_residual = std::max(max_residual, o.max_residual);
        pass = pass && o.pass;
        for (long f : o.failures)
            if (std::find(failures.begin(), failures.end(), f) == failures.end()) failures.push_back(f);
    }
};

} // namespace invconn
