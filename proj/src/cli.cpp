#include "listdec/cli.hpp"

#include "listdec/halfspace.hpp"
#include "listdec/io.hpp"
#include "listdec/orchestrator.hpp"
#include "listdec/rng.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace listdec {

namespace {

std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_double(v[i]);
    }
    return out;
}

std::string join_seeds(const std::vector<uint64_t>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

void log_run(const ExperimentConfig& config, uint64_t seed, const RunTrace& trace) {
    std::cerr << "[" << kArtifactVersion << "] " << config.to_text() << " seed=" << seed
              << " nodes=" << trace.nodes_processed << " branches=c:"
              << trace.branch_counts.candidate << ",l:" << trace.branch_counts.linear
              << ",q:" << trace.branch_counts.quadratic << ",reject:"
              << trace.branch_counts.reject << ",s1:" << trace.branch_counts.split1
              << ",s2:" << trace.branch_counts.split2 << " depth=" << trace.max_depth << "\n";
}

struct EstimateRow {
    uint64_t seed;
    int candidate;
    bool has_error;
    double error_l2;
    int64_t list_size;
    RunTrace trace;
};

const char* kEstimateHeader =
    "seed,candidate,error_l2,list_size,nodes,candidate_branch,linear_branch,quadratic_branch,"
    "reject_count,split1_count,split2_count,max_depth,wall_ms\n";

void write_estimate_row(std::ostream& out, const EstimateRow& row) {
    out << row.seed << ',' << row.candidate << ','
        << (row.has_error ? format_double(row.error_l2) : std::string()) << ',' << row.list_size
        << ',' << row.trace.nodes_processed << ',' << row.trace.branch_counts.candidate << ','
        << row.trace.branch_counts.linear << ',' << row.trace.branch_counts.quadratic << ','
        << row.trace.branch_counts.reject << ',' << row.trace.branch_counts.split1 << ','
        << row.trace.branch_counts.split2 << ',' << row.trace.max_depth << ','
        << format_double(row.trace.wall_time.count() * 1000.0) << '\n';
}

} // namespace

std::string ExperimentConfig::to_text() const {
    std::ostringstream out;
    out << "command=" << command << " dataset=" << dataset_path << " alpha="
        << join_doubles(alphas) << " tau=" << format_double(tau) << " k=" << k << " d=" << d
        << " n=" << n << " big_c=" << format_double(big_c) << " scale=" << format_double(scale)
        << " mu_mag=" << format_double(mu_magnitude) << " model=" << model << " seeds="
        << join_seeds(seeds) << " out=" << out_path << " budget=" << budget;
    return out.str();
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig config;
    config.alphas.clear();
    config.seeds.clear();
    for (const std::string& token : split(text, ' ')) {
        if (token.empty()) continue;
        const auto eq = token.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config token without '=': " + token);
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "command") config.command = value;
        else if (key == "dataset") config.dataset_path = value;
        else if (key == "alpha") {
            for (const auto& p : split(value, ',')) config.alphas.push_back(std::stod(p));
        } else if (key == "tau") config.tau = std::stod(value);
        else if (key == "k") config.k = std::stoi(value);
        else if (key == "d") config.d = std::stoi(value);
        else if (key == "n") config.n = std::stoll(value);
        else if (key == "big_c") config.big_c = std::stod(value);
        else if (key == "scale") config.scale = std::stod(value);
        else if (key == "mu_mag") config.mu_magnitude = std::stod(value);
        else if (key == "model") config.model = value;
        else if (key == "seeds") {
            for (const auto& p : split(value, ',')) config.seeds.push_back(std::stoull(p));
        } else if (key == "out") config.out_path = value;
        else if (key == "budget") config.budget = std::stoll(value);
        else throw std::invalid_argument("unknown config key: " + key);
    }
    if (config.alphas.empty()) config.alphas.push_back(0.5);
    if (config.seeds.empty()) config.seeds.push_back(0);
    return config;
}

CorruptionModel parse_model(const std::string& spec, int d, int k, uint64_t seed) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (name == "mirrored") return MirroredMean{};
    if (name == "pointmass") {
        Eigen::VectorXd loc = Eigen::VectorXd::Zero(d);
        loc[0] = std::stod(args);
        return PointMass{std::move(loc)};
    }
    if (name == "decoy") {
        const auto parts = split(args, ',');
        if (parts.size() != 3) throw std::invalid_argument("decoy:<count>,<cov_scale>,<magnitude>");
        const int count = std::stoi(parts[0]);
        if (count < 1) throw std::invalid_argument("decoy count must be positive");
        return DecoyClusters{make_decoy_means(d, k, count, std::stod(parts[2]), seed),
                             std::stod(parts[1])};
    }
    if (name == "hypercube") return HypercubeNoise{std::stod(args)};
    if (name == "paircorr") {
        const auto parts = split(args, ',');
        if (parts.size() != 3) throw std::invalid_argument("paircorr:<i>,<j>,<rho>");
        return PairCorrelation{std::stoi(parts[0]), std::stoi(parts[1]), std::stod(parts[2])};
    }
    throw std::invalid_argument("unknown model: " + spec);
}

int worker_pool_size(int64_t jobs) {
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (const char* env = std::getenv("LISTDEC_THREADS")) {
        try {
            threads = std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            threads = 1;
        }
    }
    if (threads < 1) threads = 1;
    return static_cast<int>(std::min<int64_t>(threads, std::max<int64_t>(jobs, 1)));
}

int cmd_gen(const ExperimentConfig& config) {
    try {
        const double alpha = config.alphas.front();
        const uint64_t seed = config.seeds.front();
        CorruptionModel model = parse_model(config.model, config.d, config.k, seed);
        int64_t n = config.n;
        if (n <= 0) {
            EstimationParams params(alpha, config.tau, config.k, config.d, config.big_c);
            n = required_sample_size(params, config.scale);
            std::cerr << "gen: n=0 requested, using required sample size " << n << " at scale "
                      << config.scale << "\n";
        }
        LabeledDataset labeled = generate(config.d, config.k, n, alpha,
                                          config.mu_magnitude, model, seed);
        write_dataset(config.out_path, labeled.dataset);
        write_truth(truth_path(config.out_path), labeled);
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "gen: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "gen: " << e.what() << "\n";
        return 1;
    }
}

int cmd_estimate(const ExperimentConfig& config) {
    try {
        Dataset data = read_dataset(config.dataset_path);
        bool has_truth = false;
        TruthSidecar truth;
        if (std::filesystem::exists(truth_path(config.dataset_path))) {
            truth = read_truth(truth_path(config.dataset_path));
            has_truth = true;
        }
        EstimationParams params(config.alphas.front(), config.tau, config.k,
                                static_cast<int>(data.d()), config.big_c);
        RunOptions options;
        options.master_seed = config.seeds.front();
        options.node_budget = config.budget;
        auto [list, trace] = run_list_decode(data, params, options);
        log_run(config, options.master_seed, trace);

        std::ofstream out(config.out_path, std::ios::trunc);
        if (!out) throw std::invalid_argument("cannot write output: " + config.out_path);
        out << kEstimateHeader;
        Eigen::VectorXd mu = has_truth ? truth.dense_mean() : Eigen::VectorXd();
        for (size_t i = 0; i < list.post.size(); ++i) {
            EstimateRow row{config.seeds.front(), static_cast<int>(i), has_truth,
                            has_truth ? (list.post[i] - mu).norm() : 0.0,
                            static_cast<int64_t>(list.post.size()), trace};
            write_estimate_row(out, row);
        }
        return 0;
    } catch (const BudgetExhausted& e) {
        std::cerr << "estimate: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "estimate: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "estimate: " << e.what() << "\n";
        return 1;
    }
}

int cmd_halfspace(const ExperimentConfig& config) {
    try {
        const double alpha = config.alphas.front();
        const uint64_t seed = config.seeds.front();
        const int d = config.d;
        const int64_t n = config.n;

        Eigen::VectorXd w_star = Eigen::VectorXd::Zero(d);
        {
            auto mus = make_decoy_means(d, config.k, 1, 1.0, hash_counter(seed, 0x77, 0));
            w_star = mus.front().normalized();
        }
        const int64_t n_good = static_cast<int64_t>(std::ceil(2.0 * alpha * n));
        std::vector<LabeledSample> samples;
        samples.reserve(static_cast<size_t>(n));
        for (int64_t i = 0; i < n; ++i) {
            Eigen::VectorXd x(d);
            for (int j = 0; j < d; ++j)
                x[j] = gaussian(seed, static_cast<uint64_t>(i) + (1ULL << 32),
                                static_cast<uint64_t>(j));
            int y = w_star.dot(x) >= 0.0 ? 1 : -1;
            if (i >= n_good) {
                if (config.model == "flip") y = -y;
                else if (config.model == "const") y = 1;
                else y = (hash_counter(seed, 0x78, static_cast<uint64_t>(i)) & 1) ? 1 : -1;
            }
            samples.push_back({std::move(x), y});
        }

        EstimationParams params(alpha, config.tau, config.k, d, config.big_c);
        RunOptions options;
        options.master_seed = seed;
        options.node_budget = config.budget;
        auto hypotheses = learn_halfspaces(samples, params, options);

        std::ofstream out(config.out_path, std::ios::trunc);
        if (!out) throw std::invalid_argument("cannot write output: " + config.out_path);
        out << "seed,hypothesis,disagreement,list_size\n";
        for (size_t i = 0; i < hypotheses.size(); ++i) {
            const double dis = hypotheses[i].w.norm() == 0.0
                                   ? 0.5
                                   : disagreement(hypotheses[i].w, w_star);
            out << seed << ',' << i << ',' << format_double(dis) << ',' << hypotheses.size()
                << '\n';
        }
        return 0;
    } catch (const BudgetExhausted& e) {
        std::cerr << "halfspace: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "halfspace: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "halfspace: " << e.what() << "\n";
        return 1;
    }
}

int cmd_sweep(const ExperimentConfig& config) {
    try {
        struct Job {
            double alpha;
            uint64_t seed;
        };
        std::vector<Job> jobs;
        for (double alpha : config.alphas)
            for (uint64_t seed : config.seeds) jobs.push_back({alpha, seed});

        struct Result {
            int64_t list_size = 0;
            double min_error = 0.0;
            int64_t nodes = 0;
            double wall_ms = 0.0;
            std::string error;
        };
        std::vector<Result> results(jobs.size());
        std::atomic<size_t> next{0};

        auto run_one = [&](size_t idx) {
            const Job& job = jobs[idx];
            Result& res = results[idx];
            try {
                CorruptionModel model = parse_model(config.model, config.d, config.k, job.seed);
                LabeledDataset labeled = generate(config.d, config.k, config.n, job.alpha,
                                                  config.mu_magnitude, model, job.seed);
                EstimationParams params(job.alpha, config.tau, config.k, config.d, config.big_c);
                RunOptions options;
                options.master_seed = job.seed;
                options.node_budget = config.budget;
                auto [list, trace] = run_list_decode(labeled.dataset, params, options);
                res.list_size = static_cast<int64_t>(list.post.size());
                double best = std::numeric_limits<double>::infinity();
                for (const auto& mu : list.post)
                    best = std::min(best, (mu - labeled.true_mean).norm());
                res.min_error = list.post.empty() ? std::numeric_limits<double>::quiet_NaN()
                                                  : best;
                res.nodes = trace.nodes_processed;
                res.wall_ms = trace.wall_time.count() * 1000.0;
            } catch (const std::exception& e) {
                res.error = e.what();
            }
        };

        const int pool = worker_pool_size(static_cast<int64_t>(jobs.size()));
        std::vector<std::thread> workers;
        for (int t = 0; t < pool; ++t) {
            workers.emplace_back([&]() {
                while (true) {
                    const size_t idx = next.fetch_add(1);
                    if (idx >= jobs.size()) return;
                    run_one(idx);
                }
            });
        }
        for (auto& w : workers) w.join();

        std::ofstream out(config.out_path, std::ios::trunc);
        if (!out) throw std::invalid_argument("cannot write output: " + config.out_path);
        out << "alpha,seed,n,d,k,model,list_size,min_error,nodes,wall_ms\n";
        for (size_t i = 0; i < jobs.size(); ++i) {
            if (!results[i].error.empty())
                throw std::runtime_error("sweep job failed: " + results[i].error);
            out << format_double(jobs[i].alpha) << ',' << jobs[i].seed << ',' << config.n << ','
                << config.d << ',' << config.k << ',' << config.model << ','
                << results[i].list_size << ',' << format_double(results[i].min_error) << ','
                << results[i].nodes << ',' << format_double(results[i].wall_ms) << '\n';
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "sweep: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "sweep: " << e.what() << "\n";
        return 1;
    }
}

} // namespace listdec
