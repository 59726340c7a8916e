#include "listdec/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace listdec {

namespace {

constexpr char kDatasetMagic[16] = {'L', 'I', 'S', 'T', 'D', 'E', 'C', '-',
                                    'D', 'A', 'T', 'A', 'S', 'E', 'T', '\0'};
constexpr char kTruthMagic[16] = {'L', 'I', 'S', 'T', 'D', 'E', 'C', '-',
                                  'T', 'R', 'U', 'T', 'H', '\0', '\0', '\0'};
constexpr uint32_t kFormatVersion = 1;

template <typename T>
void write_pod(std::ofstream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::ifstream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw std::invalid_argument("truncated file");
    return v;
}

std::ifstream open_checked(const std::string& path, const char expected_magic[16]) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    char magic[16];
    in.read(magic, 16);
    if (!in || std::memcmp(magic, expected_magic, 16) != 0)
        throw std::invalid_argument("bad magic in file: " + path);
    return in;
}

} // namespace

void write_dataset(const std::string& path, const Dataset& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out.write(kDatasetMagic, 16);
    write_pod<uint64_t>(out, static_cast<uint64_t>(data.n()));
    write_pod<uint64_t>(out, static_cast<uint64_t>(data.d()));
    write_pod<uint32_t>(out, kFormatVersion);
    write_pod<uint32_t>(out, 0); // flags
    out.write(reinterpret_cast<const char*>(data.points().data()),
              static_cast<std::streamsize>(sizeof(double) * static_cast<size_t>(data.n()) *
                                           static_cast<size_t>(data.d())));
    if (!out) throw std::runtime_error("write failed: " + path);
}

Dataset read_dataset(const std::string& path) {
    std::ifstream in = open_checked(path, kDatasetMagic);
    const auto n = static_cast<int64_t>(read_pod<uint64_t>(in));
    const auto d = static_cast<int64_t>(read_pod<uint64_t>(in));
    const auto version = read_pod<uint32_t>(in);
    read_pod<uint32_t>(in); // flags
    if (version != kFormatVersion)
        throw std::invalid_argument("unsupported dataset version in " + path);
    if (n < 1 || d < 1 || n > (int64_t{1} << 40) || d > (int64_t{1} << 32))
        throw std::invalid_argument("implausible dataset header in " + path);
    RowMatrixXd points(n, d);
    in.read(reinterpret_cast<char*>(points.data()),
            static_cast<std::streamsize>(sizeof(double) * static_cast<size_t>(n) *
                                         static_cast<size_t>(d)));
    if (!in) throw std::invalid_argument("truncated dataset file: " + path);
    return Dataset(std::move(points));
}

Eigen::VectorXd TruthSidecar::dense_mean() const {
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(d);
    for (const auto& [idx, val] : mean_entries) mu[static_cast<Eigen::Index>(idx)] = val;
    return mu;
}

std::string truth_path(const std::string& dataset_path) { return dataset_path + ".truth"; }

void write_truth(const std::string& path, const LabeledDataset& labeled) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out.write(kTruthMagic, 16);
    const int64_t n = labeled.dataset.n();
    write_pod<uint64_t>(out, static_cast<uint64_t>(n));
    write_pod<uint64_t>(out, static_cast<uint64_t>(labeled.dataset.d()));
    write_pod<uint32_t>(out, kFormatVersion);
    uint32_t k_count = 0;
    for (Eigen::Index i = 0; i < labeled.true_mean.size(); ++i)
        if (labeled.true_mean[i] != 0.0) ++k_count;
    write_pod<uint32_t>(out, k_count);
    write_pod<uint64_t>(out, labeled.seed);
    for (Eigen::Index i = 0; i < labeled.true_mean.size(); ++i) {
        if (labeled.true_mean[i] == 0.0) continue;
        write_pod<uint64_t>(out, static_cast<uint64_t>(i));
        write_pod<double>(out, labeled.true_mean[i]);
    }
    std::vector<uint8_t> bitmap(static_cast<size_t>((n + 7) / 8), 0);
    for (int64_t i = 0; i < n; ++i)
        if (labeled.inlier_mask[static_cast<size_t>(i)])
            bitmap[static_cast<size_t>(i >> 3)] |= static_cast<uint8_t>(1u << (i & 7));
    out.write(reinterpret_cast<const char*>(bitmap.data()),
              static_cast<std::streamsize>(bitmap.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

TruthSidecar read_truth(const std::string& path) {
    std::ifstream in = open_checked(path, kTruthMagic);
    TruthSidecar truth;
    truth.n = static_cast<int64_t>(read_pod<uint64_t>(in));
    truth.d = static_cast<int>(read_pod<uint64_t>(in));
    const auto version = read_pod<uint32_t>(in);
    if (version != kFormatVersion)
        throw std::invalid_argument("unsupported truth version in " + path);
    const auto k_count = read_pod<uint32_t>(in);
    truth.seed = read_pod<uint64_t>(in);
    for (uint32_t i = 0; i < k_count; ++i) {
        const auto idx = read_pod<uint64_t>(in);
        const auto val = read_pod<double>(in);
        truth.mean_entries.emplace_back(idx, val);
    }
    std::vector<uint8_t> bitmap(static_cast<size_t>((truth.n + 7) / 8));
    in.read(reinterpret_cast<char*>(bitmap.data()), static_cast<std::streamsize>(bitmap.size()));
    if (!in) throw std::invalid_argument("truncated truth file: " + path);
    truth.inlier_mask.resize(static_cast<size_t>(truth.n));
    for (int64_t i = 0; i < truth.n; ++i)
        truth.inlier_mask[static_cast<size_t>(i)] =
            (bitmap[static_cast<size_t>(i >> 3)] >> (i & 7)) & 1;
    return truth;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace listdec
