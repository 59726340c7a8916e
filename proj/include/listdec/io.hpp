#pragma once

#include "listdec/datagen.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace listdec {

inline constexpr const char* kArtifactVersion = "listdec 0.1.0";

// Dataset container: 16-byte magic, u64 n, u64 d, u32 version, u32 flags,
// then n*d little-endian doubles, row-major. The truth sidecar lives next to
// the dataset under the same stem with a ".truth" suffix.

void write_dataset(const std::string& path, const Dataset& data);
Dataset read_dataset(const std::string& path);

struct TruthSidecar {
    int64_t n = 0;
    int d = 0;
    uint64_t seed = 0;
    std::vector<std::pair<uint64_t, double>> mean_entries; // sparse true mean
    std::vector<bool> inlier_mask;

    Eigen::VectorXd dense_mean() const;
};

std::string truth_path(const std::string& dataset_path);
void write_truth(const std::string& path, const LabeledDataset& labeled);
TruthSidecar read_truth(const std::string& path);

/// Serializes a double with 17 significant digits.
std::string format_double(double v);

} // namespace listdec
