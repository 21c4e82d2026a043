#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "semacc/error.hpp"
#include "semacc/pipeline.hpp"

namespace {

struct CliState {
    semacc::PipelineOptions opt;
    std::string real;
    std::string synthetic;
    std::string out;
    std::string probs;
    double perplexity = 0.0;
    long clusters = 0;
    CLI::Option* perplexity_flag = nullptr;
    CLI::Option* clusters_flag = nullptr;
    CLI::Option* probs_flag = nullptr;
};

void add_input_flags(CLI::App* cmd, CliState& state) {
    cmd->add_option("--real", state.real, "Real feature CSV (id,label,f0,...)")->required();
    cmd->add_option("--synthetic", state.synthetic, "Synthetic feature CSV")->required();
    cmd->add_option("--max-points", state.opt.max_points,
                    "Refuse joint embeddings larger than this");
}

void add_out_flag(CLI::App* cmd, CliState& state) {
    cmd->add_option("--out", state.out, "Output directory")->required();
}

void add_embed_flags(CLI::App* cmd, CliState& state) {
    cmd->add_option("--pca-dims", state.opt.pca_dims, "PCA dimensions before the embedding");
    cmd->add_option("--pca-fit", state.opt.pca_fit, "Rows the PCA basis is fit on")
        ->check(CLI::IsMember({"combined", "real"}));
    state.perplexity_flag = cmd->add_option(
        "--perplexity", state.perplexity,
        "Target perplexity (default: synthetic count / class count)");
    cmd->add_option("--tsne-iters", state.opt.tsne_iters, "Gradient descent iterations");
    cmd->add_flag("--kl-trace", state.opt.record_kl_trace,
                  "Record per-iteration KL divergence to kl_trace.csv");
}

void add_cluster_flags(CLI::App* cmd, CliState& state) {
    cmd->add_option("--fuzzifier", state.opt.fuzzifier, "Fuzzy C-means exponent m (> 1)");
    state.clusters_flag = cmd->add_option(
        "--clusters", state.clusters, "Cluster count (default: distinct real classes)");
}

void add_plot_flags(CLI::App* cmd, CliState& state) {
    cmd->add_option("--plot-modes", state.opt.plot_modes,
                    "Comma-separated plot modes: correct, source, class")
        ->delimiter(',');
    cmd->add_option("--width", state.opt.plot_width, "Plot width in pixels");
    cmd->add_option("--height", state.opt.plot_height, "Plot height in pixels");
    cmd->add_option("--point-radius", state.opt.point_radius, "Circle radius in pixels");
}

void add_score_flags(CLI::App* cmd, CliState& state, bool required) {
    auto* probs = cmd->add_option("--probs", state.probs,
                                  "Class-probability CSV (id,label,p0,...)");
    if (required) {
        probs->required();
    } else {
        state.probs_flag = probs;
    }
    cmd->add_option("--splits", state.opt.splits, "Split count for the score");
    cmd->add_flag("--shuffle-splits", state.opt.shuffle_splits,
                  "Shuffle rows (seeded) before splitting");
}

void add_seed_flag(CLI::App* cmd, CliState& state) {
    cmd->add_option("--seed", state.opt.seed, "Master seed; stage seeds derive from it");
}

void print_report_summary(const semacc::EvaluationReport& report) {
    std::cout << "clustering accuracy (real):      " << report.clustering_accuracy_real << "\n";
    std::cout << "clustering accuracy (synthetic): " << report.clustering_accuracy_synthetic
              << "\n";
    if (report.inception) {
        std::cout << "inception score:                 " << report.inception->mean << " +/- "
                  << report.inception->std_dev << "\n";
    }
    if (report.direct_acc) {
        std::cout << "direct accuracy:                 " << *report.direct_acc << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semantic accuracy evaluation for conditional image synthesis"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "semacc 0.1.0");

    CliState state;

    auto* evaluate = app.add_subcommand(
        "evaluate", "Full pipeline: PCA, joint t-SNE, fuzzy C-means, report");
    add_input_flags(evaluate, state);
    add_out_flag(evaluate, state);
    add_embed_flags(evaluate, state);
    add_cluster_flags(evaluate, state);
    add_plot_flags(evaluate, state);
    add_score_flags(evaluate, state, /*required=*/false);
    add_seed_flag(evaluate, state);

    auto* embed = app.add_subcommand("embed", "PCA + joint t-SNE to embedding.csv");
    add_input_flags(embed, state);
    add_out_flag(embed, state);
    add_embed_flags(embed, state);
    add_seed_flag(embed, state);

    auto* cluster = app.add_subcommand(
        "cluster", "Fuzzy C-means on an existing embedding.csv");
    add_out_flag(cluster, state);
    add_cluster_flags(cluster, state);
    add_seed_flag(cluster, state);

    auto* plot = app.add_subcommand("plot", "Render SVG scatter plots from artifacts");
    add_out_flag(plot, state);
    add_plot_flags(plot, state);

    auto* score = app.add_subcommand(
        "score", "Inception score and direct accuracy from a probability CSV");
    add_out_flag(score, state);
    add_score_flags(score, state, /*required=*/true);
    add_seed_flag(score, state);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    state.opt.real_csv = state.real;
    state.opt.synthetic_csv = state.synthetic;
    state.opt.out_dir = state.out;
    if (state.perplexity_flag && state.perplexity_flag->count() > 0) {
        state.opt.perplexity = state.perplexity;
    }
    if (state.clusters_flag && state.clusters_flag->count() > 0) {
        state.opt.clusters = static_cast<Eigen::Index>(state.clusters);
    }
    if (!state.probs.empty()) state.opt.probs_csv = state.probs;

    try {
        if (*evaluate) {
            semacc::EvaluationReport report = semacc::cmd_evaluate(state.opt);
            print_report_summary(report);
            std::cout << "report: " << (state.opt.out_dir / "report.json").string() << "\n";
        } else if (*embed) {
            semacc::cmd_embed(state.opt);
            std::cout << "embedding: " << (state.opt.out_dir / "embedding.csv").string() << "\n";
        } else if (*cluster) {
            semacc::cmd_cluster(state.opt);
            std::cout << "classification: "
                      << (state.opt.out_dir / "classification.csv").string() << "\n";
        } else if (*plot) {
            semacc::cmd_plot(state.opt);
            for (const auto& mode : state.opt.plot_modes) {
                std::cout << "plot: " << (state.opt.out_dir / ("plot_" + mode + ".svg")).string()
                          << "\n";
            }
        } else if (*score) {
            semacc::cmd_score(state.opt);
            std::cout << "score: " << (state.opt.out_dir / "score.json").string() << "\n";
        }
    } catch (const semacc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
