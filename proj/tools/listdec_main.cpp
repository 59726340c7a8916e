#include "listdec/cli.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"List-decodable sparse mean estimation"};
    app.require_subcommand(1);

    listdec::ExperimentConfig config;
    config.alphas.clear();
    config.seeds.clear();

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--alpha", config.alphas, "inlier fraction(s) in (0, 1/2]")->delimiter(',');
        cmd->add_option("--tau", config.tau, "failure probability in (0, 1)");
        cmd->add_option("--k", config.k, "sparsity of the true mean");
        cmd->add_option("--d", config.d, "ambient dimension");
        cmd->add_option("--n", config.n, "sample count");
        cmd->add_option("--big-c", config.big_c, "universal filter constant C");
        cmd->add_option("--scale", config.scale, "sample-size scale multiplier");
        cmd->add_option("--mu-mag", config.mu_magnitude, "magnitude of true mean entries");
        cmd->add_option("--seed", config.seeds, "master seed(s)")->delimiter(',');
        cmd->add_option("--seeds", config.seeds, "master seed list (sweep)")->delimiter(',');
        cmd->add_option("--model", config.model, "corruption model spec");
        cmd->add_option("--out", config.out_path, "output path")->required();
        cmd->add_option("--budget", config.budget, "node budget override (0 = default)");
    };

    CLI::App* gen = app.add_subcommand("gen", "generate a labeled synthetic dataset");
    add_common(gen);

    CLI::App* estimate = app.add_subcommand("estimate", "run the estimator on a dataset file");
    estimate->add_option("dataset", config.dataset_path, "dataset file")->required();
    add_common(estimate);

    CLI::App* halfspace = app.add_subcommand("halfspace", "halfspace learning experiment");
    add_common(halfspace);

    CLI::App* sweep = app.add_subcommand("sweep", "alpha x seed sweep with aggregate CSV");
    add_common(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (config.alphas.empty()) config.alphas.push_back(0.5);
    if (config.seeds.empty()) config.seeds.push_back(0);

    if (gen->parsed()) {
        config.command = "gen";
        return listdec::cmd_gen(config);
    }
    if (estimate->parsed()) {
        config.command = "estimate";
        return listdec::cmd_estimate(config);
    }
    if (halfspace->parsed()) {
        config.command = "halfspace";
        return listdec::cmd_halfspace(config);
    }
    config.command = "sweep";
    return listdec::cmd_sweep(config);
}
