#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bideconv/types.hpp"

namespace bideconv {

// Dense n-patients x p-features matrix of paired observations, indexed
// (i, j) with i patient-major. Feature order is whatever the producer
// fixed (loaders canonicalise by feature id), and all index-ordered
// reductions refer to this layout.
struct Dataset {
    std::vector<std::string> patient_ids;
    std::vector<std::string> feature_ids;
    std::vector<double> y0;  // size n*p, index i*p + j
    std::vector<double> y1;

    std::size_t n_patients() const { return patient_ids.size(); }
    std::size_t n_features() const { return feature_ids.size(); }

    PairedObservation obs(std::size_t i, std::size_t j) const {
        const std::size_t k = i * n_features() + j;
        return {y0[k], y1[k]};
    }

    void set(std::size_t i, std::size_t j, double v0, double v1) {
        const std::size_t k = i * n_features() + j;
        y0[k] = v0;
        y1[k] = v1;
    }

    static Dataset zeros(std::vector<std::string> patients, std::vector<std::string> features) {
        Dataset d;
        d.patient_ids = std::move(patients);
        d.feature_ids = std::move(features);
        d.y0.assign(d.n_patients() * d.n_features(), 0.0);
        d.y1.assign(d.n_patients() * d.n_features(), 0.0);
        return d;
    }
};

// Replaces any zero count by the given pseudo-count so every pair can be
// gridded (log-normal support excludes 0). Returns how many values were
// floored; callers report that in the run manifest.
std::size_t apply_pseudocount(Dataset &d, double pseudo_count);

}  // namespace bideconv
