#include "semacc/pipeline.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "csv.hpp"
#include "semacc/digest.hpp"
#include "semacc/error.hpp"
#include "semacc/pca.hpp"
#include "semacc/rng.hpp"
#include "semacc/svg_plot.hpp"
#include "semacc/tsne.hpp"

namespace semacc {

namespace {

using Clock = std::chrono::steady_clock;

/// Accumulates wall time into a named slot, exception-safe.
class StageTimer {
public:
    StageTimer(std::map<std::string, double>& sink, std::string name)
        : sink_(sink), name_(std::move(name)), start_(Clock::now()) {}
    ~StageTimer() {
        sink_[name_] += std::chrono::duration<double>(Clock::now() - start_).count();
    }

private:
    std::map<std::string, double>& sink_;
    std::string name_;
    Clock::time_point start_;
};

/// Rethrows stage failures with the stage name prepended.
template <typename F>
decltype(auto) run_stage(const char* name, F&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(e.code(), std::string(name) + " stage: " + e.detail());
    }
}

/// Collects files written by one command and removes them all if the command
/// does not reach commit().
class ArtifactSink {
public:
    explicit ArtifactSink(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) {
            throw Error(Errc::IoError, "cannot create output directory " + dir_.string() + ": " +
                                           ec.message());
        }
    }

    ~ArtifactSink() {
        if (committed_) return;
        for (const auto& path : written_) {
            std::error_code ec;
            std::filesystem::remove(path, ec);
        }
    }

    std::filesystem::path path(const std::string& name) const { return dir_ / name; }

    void write(const std::string& name, const std::string& content) {
        const auto target = path(name);
        {
            std::ofstream out(target, std::ios::binary);
            if (!out) throw Error(Errc::IoError, "cannot open " + target.string() + " for writing");
            out << content;
            if (!out) throw Error(Errc::IoError, "failed writing " + target.string());
        }
        written_.push_back(target);
    }

    void commit() { committed_ = true; }

private:
    std::filesystem::path dir_;
    std::vector<std::filesystem::path> written_;
    bool committed_ = false;
};

void validate_common(const PipelineOptions& opt) {
    if (opt.out_dir.empty()) throw Error(Errc::InvalidConfig, "output directory is required");
    if (opt.pca_dims < 1) throw Error(Errc::InvalidConfig, "pca dims must be >= 1");
    if (opt.pca_fit != "combined" && opt.pca_fit != "real") {
        throw Error(Errc::InvalidConfig, "pca fit set must be 'combined' or 'real'");
    }
    if (opt.tsne_iters < 1) throw Error(Errc::InvalidConfig, "tsne iters must be >= 1");
    if (!(opt.fuzzifier > 1.0)) throw Error(Errc::InvalidConfig, "fuzzifier must be > 1");
    if (opt.clusters && *opt.clusters < 1) {
        throw Error(Errc::InvalidConfig, "cluster count must be >= 1");
    }
    if (opt.splits < 1) throw Error(Errc::InvalidConfig, "splits must be >= 1");
    if (opt.max_points < 3) throw Error(Errc::InvalidConfig, "max points must be >= 3");
    if (opt.perplexity && !(*opt.perplexity > 0.0)) {
        throw Error(Errc::InvalidConfig, "perplexity must be positive");
    }
    for (const auto& mode : opt.plot_modes) parse_plot_mode(mode);
}

double resolve_perplexity(const PipelineOptions& opt, Eigen::Index n_total,
                          Eigen::Index n_synthetic, std::size_t n_classes) {
    if (opt.perplexity) return *opt.perplexity;
    double value = static_cast<double>(n_synthetic) / static_cast<double>(n_classes);
    double lower = 2.0;
    double upper = static_cast<double>(n_total) - 1.0;
    double clamped = std::clamp(value, lower, std::max(lower, upper));
    if (clamped != value) {
        std::cerr << "warning: default perplexity " << csv::format_double(value) << " clamped to "
                  << csv::format_double(clamped) << "\n";
    }
    return clamped;
}

struct EmbedOutcome {
    CombinedDataset data;
    Embedding2D embedding;
    std::vector<double> kl_trace;
    long calibration_failures = 0;
    std::string real_digest;
    std::string synthetic_digest;
    Eigen::Index pca_dims_used = 0;
    double perplexity_used = 0.0;
};

EmbedOutcome run_embed_stages(const PipelineOptions& opt, std::map<std::string, double>& timings) {
    EmbedOutcome out;
    {
        StageTimer timer(timings, "load");
        run_stage("load", [&] {
            if (opt.real_csv.empty() || opt.synthetic_csv.empty()) {
                throw Error(Errc::InvalidConfig, "real and synthetic input files are required");
            }
            out.real_digest = file_digest(opt.real_csv.string());
            out.synthetic_digest = file_digest(opt.synthetic_csv.string());
            auto real = load_feature_csv(opt.real_csv.string(), Source::Real);
            auto synthetic = load_feature_csv(opt.synthetic_csv.string(), Source::Synthetic);
            out.data = combine(std::move(real), std::move(synthetic));
            if (out.data.total() > opt.max_points) {
                throw Error(Errc::MaxPointsExceeded,
                            std::to_string(out.data.total()) + " points exceed the limit of " +
                                std::to_string(opt.max_points) +
                                " (raise --max-points to embed anyway)");
            }
        });
    }

    Matrix reduced;
    {
        StageTimer timer(timings, "pca");
        run_stage("pca", [&] {
            Matrix stacked = out.data.stacked_features();
            const Matrix& fit_data = opt.pca_fit == "real" ? out.data.real.features : stacked;
            Eigen::Index limit = std::min(fit_data.rows(), fit_data.cols());
            Eigen::Index k = opt.pca_dims;
            if (k > limit) {
                std::cerr << "warning: pca dims " << k << " clamped to " << limit << "\n";
                k = limit;
            }
            out.pca_dims_used = k;
            PcaModel model = pca_fit(fit_data, k);
            reduced = pca_transform(model, stacked);
        });
    }

    {
        StageTimer timer(timings, "tsne");
        run_stage("tsne", [&] {
            TsneConfig config;
            config.perplexity = resolve_perplexity(opt, out.data.total(), out.data.synthetic.size(),
                                                   out.data.real.label_set().size());
            config.n_iter = opt.tsne_iters;
            config.seed = derive_seed(opt.seed, seed_tag::tsne_init);
            config.record_kl_trace = opt.record_kl_trace;
            out.perplexity_used = config.perplexity;

            TsneResult result = tsne_embed(reduced, config);
            out.kl_trace = std::move(result.kl_trace);
            out.calibration_failures = static_cast<long>(result.calibration_failures.size());
            if (out.calibration_failures > 0) {
                std::cerr << "warning: " << out.calibration_failures
                          << " affinity rows missed the perplexity tolerance\n";
            }

            Embedding2D& emb = out.embedding;
            emb.coords = std::move(result.coords);
            emb.ids = out.data.real.ids;
            emb.ids.insert(emb.ids.end(), out.data.synthetic.ids.begin(),
                           out.data.synthetic.ids.end());
            emb.labels = out.data.real.labels;
            emb.labels.insert(emb.labels.end(), out.data.synthetic.labels.begin(),
                              out.data.synthetic.labels.end());
            emb.sources.assign(static_cast<std::size_t>(out.data.real.size()), Source::Real);
            emb.sources.insert(emb.sources.end(),
                               static_cast<std::size_t>(out.data.synthetic.size()),
                               Source::Synthetic);
            emb.validate();
        });
    }
    return out;
}

std::string embedding_csv_text(const EmbedOutcome& out, const PipelineOptions& opt) {
    std::ostringstream text;
    text << "# artifact embedding\n";
    text << "# schema_version 1\n";
    text << "# real_digest " << out.real_digest << "\n";
    text << "# synthetic_digest " << out.synthetic_digest << "\n";
    text << "# pca_dims " << out.pca_dims_used << "\n";
    text << "# pca_fit " << opt.pca_fit << "\n";
    text << "# perplexity " << csv::format_double(out.perplexity_used) << "\n";
    text << "# tsne_iters " << opt.tsne_iters << "\n";
    text << "# seed " << opt.seed << "\n";
    text << "# calibration_failures " << out.calibration_failures << "\n";
    text << "id,label,source,x,y\n";
    const Embedding2D& emb = out.embedding;
    for (Eigen::Index i = 0; i < emb.size(); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        text << emb.ids[idx] << ',' << emb.labels[idx] << ',' << to_string(emb.sources[idx]) << ','
             << csv::format_double(emb.coords(i, 0)) << ',' << csv::format_double(emb.coords(i, 1))
             << '\n';
    }
    return text.str();
}

std::string kl_trace_csv_text(const std::vector<double>& trace) {
    std::ostringstream text;
    text << "# artifact kl_trace\n";
    text << "# schema_version 1\n";
    text << "iteration,kl\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        text << (i + 1) << ',' << csv::format_double(trace[i]) << '\n';
    }
    return text.str();
}

struct ClusterOutcome {
    FuzzyClusterModel model;
    ClassificationResult classification;
    double accuracy_real = 0.0;
    Eigen::Index clusters_used = 0;
    std::vector<std::string> real_labels;
};

ClusterOutcome run_cluster_stages(const Embedding2D& embedding, const PipelineOptions& opt,
                                  std::map<std::string, double>& timings) {
    StageTimer timer(timings, "fcm");
    return run_stage("fcm", [&] {
        ClusterOutcome out;
        std::vector<Eigen::Index> real_rows;
        std::vector<Eigen::Index> synth_rows;
        for (Eigen::Index i = 0; i < embedding.size(); ++i) {
            (embedding.sources[static_cast<std::size_t>(i)] == Source::Real ? real_rows
                                                                            : synth_rows)
                .push_back(i);
        }
        if (real_rows.empty()) throw Error(Errc::TooFewRows, "no real rows in embedding");
        if (synth_rows.empty()) throw Error(Errc::TooFewRows, "no synthetic rows in embedding");

        Matrix real_coords(static_cast<Eigen::Index>(real_rows.size()), 2);
        out.real_labels.reserve(real_rows.size());
        for (std::size_t r = 0; r < real_rows.size(); ++r) {
            real_coords.row(static_cast<Eigen::Index>(r)) = embedding.coords.row(real_rows[r]);
            out.real_labels.push_back(embedding.labels[static_cast<std::size_t>(real_rows[r])]);
        }
        Matrix synth_coords(static_cast<Eigen::Index>(synth_rows.size()), 2);
        std::vector<std::string> synth_ids;
        std::vector<std::string> synth_labels;
        synth_ids.reserve(synth_rows.size());
        synth_labels.reserve(synth_rows.size());
        for (std::size_t r = 0; r < synth_rows.size(); ++r) {
            synth_coords.row(static_cast<Eigen::Index>(r)) = embedding.coords.row(synth_rows[r]);
            synth_ids.push_back(embedding.ids[static_cast<std::size_t>(synth_rows[r])]);
            synth_labels.push_back(embedding.labels[static_cast<std::size_t>(synth_rows[r])]);
        }

        std::set<std::string> distinct(out.real_labels.begin(), out.real_labels.end());
        out.clusters_used =
            opt.clusters ? *opt.clusters : static_cast<Eigen::Index>(distinct.size());

        FcmOptions fcm_options;
        fcm_options.fuzzifier = opt.fuzzifier;
        fcm_options.seed = derive_seed(opt.seed, seed_tag::fcm_init);
        out.model = fcm_fit(real_coords, out.clusters_used, fcm_options);
        out.model.labels = assign_cluster_labels(out.model, out.real_labels);
        out.accuracy_real = clustering_accuracy_real(out.model, out.real_labels);
        out.classification = classify_synthetic(out.model, synth_coords, synth_ids, synth_labels);
        return out;
    });
}

std::string classification_csv_text(const ClusterOutcome& out, const std::string& embedding_digest,
                                    const PipelineOptions& opt) {
    std::ostringstream text;
    text << "# artifact classification\n";
    text << "# schema_version 1\n";
    text << "# embedding_digest " << embedding_digest << "\n";
    text << "# clusters " << out.clusters_used << "\n";
    text << "# fuzzifier " << csv::format_double(opt.fuzzifier) << "\n";
    text << "# seed " << opt.seed << "\n";
    text << "# accuracy_real " << csv::format_double(out.accuracy_real) << "\n";
    text << "# accuracy_synthetic " << csv::format_double(out.classification.accuracy) << "\n";
    text << "id,label,predicted,correct";
    for (Eigen::Index j = 0; j < out.clusters_used; ++j) text << ",m" << j;
    text << '\n';
    for (const auto& point : out.classification.points) {
        text << point.id << ',' << point.true_label << ',' << point.predicted_label << ','
             << (point.correct ? '1' : '0');
        for (Eigen::Index j = 0; j < point.memberships.size(); ++j) {
            text << ',' << csv::format_double(point.memberships(j));
        }
        text << '\n';
    }
    return text.str();
}

std::string clusters_json_text(const ClusterOutcome& out, const std::string& embedding_digest) {
    nlohmann::json doc;
    doc["schema_version"] = 1;
    doc["embedding_digest"] = embedding_digest;
    doc["fuzzifier"] = out.model.fuzzifier;
    doc["seed_used"] = out.model.seed_used;
    doc["iterations"] = out.model.iterations;
    nlohmann::json centroids = nlohmann::json::array();
    for (Eigen::Index j = 0; j < out.model.cluster_count(); ++j) {
        centroids.push_back({out.model.centroids(j, 0), out.model.centroids(j, 1)});
    }
    doc["centroids"] = centroids;
    doc["labels"] = out.model.labels;
    doc["objective_trace"] = out.model.objective_trace;
    doc["accuracy_real"] = out.accuracy_real;
    doc["accuracy_synthetic"] = out.classification.accuracy;
    return doc.dump(2) + "\n";
}

void render_plots(const Embedding2D& embedding, const ClassificationResult* classification,
                  const PipelineOptions& opt, ArtifactSink& sink,
                  std::map<std::string, double>& timings) {
    StageTimer timer(timings, "plot");
    run_stage("plot", [&] {
        for (const auto& mode_name : opt.plot_modes) {
            PlotSpec spec;
            spec.mode = parse_plot_mode(mode_name);
            spec.width = opt.plot_width;
            spec.height = opt.plot_height;
            spec.point_radius = opt.point_radius;
            const ClassificationResult* cls =
                spec.mode == PlotMode::CorrectIncorrect ? classification : nullptr;
            sink.write("plot_" + mode_name + ".svg", render_scatter(embedding, cls, spec));
            sink.write("plot_" + mode_name + "_legend.json",
                       legend_json(embedding, cls, spec));
        }
    });
}

struct ScoreOutcome {
    InceptionScoreResult inception;
    std::optional<double> direct;
    std::string probs_digest;
    long rows = 0;
    std::vector<std::string> class_names;
};

ScoreOutcome run_score_stage(const PipelineOptions& opt, std::map<std::string, double>& timings) {
    StageTimer timer(timings, "score");
    return run_stage("score", [&] {
        ScoreOutcome out;
        out.probs_digest = file_digest(opt.probs_csv->string());
        ProbabilityMatrix probs = load_probability_csv(*opt.probs_csv);
        out.rows = static_cast<long>(probs.rows.rows());
        out.class_names = probs.class_names;
        std::optional<std::uint64_t> shuffle_seed;
        if (opt.shuffle_splits) shuffle_seed = derive_seed(opt.seed, seed_tag::shuffle);
        out.inception = inception_score(probs, opt.splits, shuffle_seed);

        std::set<std::string> known(probs.class_names.begin(), probs.class_names.end());
        bool covered = std::all_of(probs.labels.begin(), probs.labels.end(),
                                   [&](const std::string& l) { return known.count(l) > 0; });
        if (covered) {
            out.direct = direct_accuracy(probs, probs.labels);
        } else {
            std::cerr << "warning: probability labels are not class names; "
                         "direct accuracy omitted\n";
        }
        return out;
    });
}

std::map<std::string, std::string> string_metadata(const csv::Metadata& meta) {
    return meta.entries;
}

}  // namespace

nlohmann::json EvaluationReport::to_json() const {
    nlohmann::json doc;
    doc["schema_version"] = 1;
    doc["config"] = config;
    doc["n_real"] = n_real;
    doc["n_synthetic"] = n_synthetic;
    doc["feature_dim"] = feature_dim;
    doc["classes"] = classes;
    doc["clustering_accuracy_real"] = clustering_accuracy_real;
    doc["clustering_accuracy_synthetic"] = clustering_accuracy_synthetic;
    nlohmann::json per_class;
    for (const auto& [cls, accuracy] : per_class_accuracy) {
        per_class[cls] = {{"n", per_class_count.at(cls)}, {"accuracy", accuracy}};
    }
    doc["per_class"] = per_class;
    doc["confusion"] = confusion;
    if (inception) {
        doc["inception_score"] = {{"mean", inception->mean}, {"std", inception->std_dev}};
    }
    if (direct_acc) doc["direct_accuracy"] = *direct_acc;
    doc["calibration_failures"] = calibration_failures;
    doc["timings"] = timings_s;
    return doc;
}

EvaluationReport cmd_evaluate(const PipelineOptions& options) {
    validate_common(options);
    ArtifactSink sink(options.out_dir);
    EvaluationReport report;
    const auto total_start = Clock::now();

    EmbedOutcome emb = run_embed_stages(options, report.timings_s);
    sink.write("embedding.csv", embedding_csv_text(emb, options));
    if (options.record_kl_trace) sink.write("kl_trace.csv", kl_trace_csv_text(emb.kl_trace));
    const std::string embedding_digest =
        file_digest(sink.path("embedding.csv").string());

    ClusterOutcome cluster = run_cluster_stages(emb.embedding, options, report.timings_s);
    sink.write("classification.csv", classification_csv_text(cluster, embedding_digest, options));
    sink.write("clusters.json", clusters_json_text(cluster, embedding_digest));

    render_plots(emb.embedding, &cluster.classification, options, sink, report.timings_s);

    report.config = {
        {"real", options.real_csv.string()},
        {"synthetic", options.synthetic_csv.string()},
        {"real_digest", emb.real_digest},
        {"synthetic_digest", emb.synthetic_digest},
        {"pca_dims", emb.pca_dims_used},
        {"pca_fit", options.pca_fit},
        {"perplexity", emb.perplexity_used},
        {"tsne_iters", options.tsne_iters},
        {"fuzzifier", options.fuzzifier},
        {"clusters", cluster.clusters_used},
        {"seed", options.seed},
        {"plot_modes", options.plot_modes},
        {"max_points", options.max_points},
    };
    report.n_real = static_cast<long>(emb.data.real.size());
    report.n_synthetic = static_cast<long>(emb.data.synthetic.size());
    report.feature_dim = static_cast<long>(emb.data.real.dim());
    report.classes = emb.data.real.label_set();
    report.clustering_accuracy_real = cluster.accuracy_real;
    report.clustering_accuracy_synthetic = cluster.classification.accuracy;
    report.calibration_failures = emb.calibration_failures;

    std::map<std::string, long> correct_per_class;
    for (const auto& point : cluster.classification.points) {
        ++report.confusion[point.true_label][point.predicted_label];
        ++report.per_class_count[point.true_label];
        if (point.correct) ++correct_per_class[point.true_label];
    }
    for (const auto& [cls, count] : report.per_class_count) {
        report.per_class_accuracy[cls] =
            static_cast<double>(correct_per_class[cls]) / static_cast<double>(count);
    }

    if (options.probs_csv) {
        report.config["probs"] = options.probs_csv->string();
        report.config["splits"] = options.splits;
        ScoreOutcome score = run_score_stage(options, report.timings_s);
        report.config["probs_digest"] = score.probs_digest;
        report.inception = score.inception;
        report.direct_acc = score.direct;
    }

    report.timings_s["total"] = std::chrono::duration<double>(Clock::now() - total_start).count();
    sink.write("report.json", report.to_json().dump(2) + "\n");
    sink.commit();
    return report;
}

void cmd_embed(const PipelineOptions& options) {
    validate_common(options);
    ArtifactSink sink(options.out_dir);
    std::map<std::string, double> timings;
    EmbedOutcome emb = run_embed_stages(options, timings);
    sink.write("embedding.csv", embedding_csv_text(emb, options));
    if (options.record_kl_trace) sink.write("kl_trace.csv", kl_trace_csv_text(emb.kl_trace));
    sink.commit();
}

void cmd_cluster(const PipelineOptions& options) {
    validate_common(options);
    ArtifactSink sink(options.out_dir);
    std::map<std::string, double> timings;
    const auto embedding_path = sink.path("embedding.csv");
    EmbeddingArtifact artifact = load_embedding_artifact(embedding_path);
    const std::string embedding_digest =
        file_digest(embedding_path.string());
    ClusterOutcome cluster = run_cluster_stages(artifact.embedding, options, timings);
    sink.write("classification.csv", classification_csv_text(cluster, embedding_digest, options));
    sink.write("clusters.json", clusters_json_text(cluster, embedding_digest));
    sink.commit();
}

void cmd_plot(const PipelineOptions& options) {
    validate_common(options);
    ArtifactSink sink(options.out_dir);
    std::map<std::string, double> timings;
    const auto embedding_path = sink.path("embedding.csv");
    EmbeddingArtifact artifact = load_embedding_artifact(embedding_path);

    bool needs_classification = false;
    for (const auto& mode : options.plot_modes) {
        if (parse_plot_mode(mode) == PlotMode::CorrectIncorrect) needs_classification = true;
    }

    std::optional<ClassificationArtifact> classification;
    if (needs_classification) {
        const auto classification_path = sink.path("classification.csv");
        if (!std::filesystem::exists(classification_path)) {
            throw Error(Errc::MissingClassification,
                        "no classification artifact at " + classification_path.string());
        }
        classification = load_classification_artifact(classification_path);
        const std::string current_digest =
            file_digest(embedding_path.string());
        auto recorded = classification->metadata.find("embedding_digest");
        if (recorded == classification->metadata.end() || recorded->second != current_digest) {
            throw Error(Errc::StaleArtifact,
                        "classification.csv was produced from a different embedding.csv; "
                        "rerun the cluster step");
        }
    }

    render_plots(artifact.embedding, classification ? &classification->result : nullptr, options,
                 sink, timings);
    sink.commit();
}

void cmd_score(const PipelineOptions& options) {
    validate_common(options);
    if (!options.probs_csv) {
        throw Error(Errc::InvalidConfig, "score needs a probability CSV (--probs)");
    }
    ArtifactSink sink(options.out_dir);
    std::map<std::string, double> timings;
    ScoreOutcome score = run_score_stage(options, timings);

    nlohmann::json doc;
    doc["schema_version"] = 1;
    doc["probs"] = options.probs_csv->string();
    doc["probs_digest"] = score.probs_digest;
    doc["splits"] = options.splits;
    doc["shuffled"] = options.shuffle_splits;
    doc["n"] = score.rows;
    doc["classes"] = score.class_names;
    doc["inception_score"] = {{"mean", score.inception.mean}, {"std", score.inception.std_dev}};
    if (score.direct) doc["direct_accuracy"] = *score.direct;
    sink.write("score.json", doc.dump(2) + "\n");
    sink.commit();
}

EmbeddingArtifact load_embedding_artifact(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::MissingFile, path.string());

    EmbeddingArtifact artifact;
    csv::Metadata meta;
    std::string line;
    bool have_header = false;
    std::vector<std::array<double, 2>> coords;
    long data_row = 0;

    while (std::getline(in, line)) {
        csv::strip_cr(line);
        if (!have_header && csv::parse_metadata_line(line, meta)) continue;
        if (line.empty()) continue;
        auto fields = csv::split(line);
        if (!have_header) {
            if (fields.size() != 5 || fields[0] != "id" || fields[1] != "label" ||
                fields[2] != "source" || fields[3] != "x" || fields[4] != "y") {
                throw Error(Errc::MalformedHeader,
                            path.string() + ": expected id,label,source,x,y header");
            }
            have_header = true;
            continue;
        }
        ++data_row;
        if (fields.size() != 5) {
            throw Error(Errc::RaggedRow, path.string() + ": data row " + std::to_string(data_row) +
                                             " has " + std::to_string(fields.size()) + " fields");
        }
        artifact.embedding.ids.emplace_back(fields[0]);
        artifact.embedding.labels.emplace_back(fields[1]);
        if (fields[2] == "real") {
            artifact.embedding.sources.push_back(Source::Real);
        } else if (fields[2] == "synthetic") {
            artifact.embedding.sources.push_back(Source::Synthetic);
        } else {
            throw Error(Errc::InvalidLabel, path.string() + ": data row " +
                                                std::to_string(data_row) +
                                                " has unknown source value");
        }
        std::array<double, 2> xy{};
        for (int k = 0; k < 2; ++k) {
            if (!csv::parse_double(fields[static_cast<std::size_t>(3 + k)], xy[k]) ||
                !std::isfinite(xy[static_cast<std::size_t>(k)])) {
                throw Error(Errc::NonFiniteValue, path.string() + ": data row " +
                                                      std::to_string(data_row) +
                                                      " has an unparseable coordinate");
            }
        }
        coords.push_back(xy);
    }
    if (!have_header) throw Error(Errc::MalformedHeader, path.string() + ": missing header");
    if (coords.empty()) throw Error(Errc::EmptyEmbedding, path.string() + ": no data rows");

    artifact.embedding.coords = Matrix(static_cast<Eigen::Index>(coords.size()), 2);
    for (std::size_t i = 0; i < coords.size(); ++i) {
        artifact.embedding.coords(static_cast<Eigen::Index>(i), 0) = coords[i][0];
        artifact.embedding.coords(static_cast<Eigen::Index>(i), 1) = coords[i][1];
    }
    artifact.embedding.validate();
    artifact.metadata = string_metadata(meta);
    return artifact;
}

ClassificationArtifact load_classification_artifact(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::MissingFile, path.string());

    ClassificationArtifact artifact;
    csv::Metadata meta;
    std::string line;
    bool have_header = false;
    Eigen::Index clusters = 0;
    long data_row = 0;
    long correct = 0;

    while (std::getline(in, line)) {
        csv::strip_cr(line);
        if (!have_header && csv::parse_metadata_line(line, meta)) continue;
        if (line.empty()) continue;
        auto fields = csv::split(line);
        if (!have_header) {
            if (fields.size() < 5 || fields[0] != "id" || fields[1] != "label" ||
                fields[2] != "predicted" || fields[3] != "correct") {
                throw Error(Errc::MalformedHeader,
                            path.string() + ": expected id,label,predicted,correct,m0,... header");
            }
            clusters = static_cast<Eigen::Index>(fields.size()) - 4;
            for (Eigen::Index j = 0; j < clusters; ++j) {
                if (fields[static_cast<std::size_t>(j) + 4] != "m" + std::to_string(j)) {
                    throw Error(Errc::MalformedHeader,
                                path.string() + ": membership columns must be m0,m1,...");
                }
            }
            have_header = true;
            continue;
        }
        ++data_row;
        if (static_cast<Eigen::Index>(fields.size()) != clusters + 4) {
            throw Error(Errc::RaggedRow, path.string() + ": data row " + std::to_string(data_row) +
                                             " has " + std::to_string(fields.size()) + " fields");
        }
        PointClassification point;
        point.id = std::string(fields[0]);
        point.true_label = std::string(fields[1]);
        point.predicted_label = std::string(fields[2]);
        if (fields[3] == "1") {
            point.correct = true;
        } else if (fields[3] == "0") {
            point.correct = false;
        } else {
            throw Error(Errc::MalformedHeader, path.string() + ": data row " +
                                                   std::to_string(data_row) +
                                                   " has a non-binary correct flag");
        }
        point.memberships = Vector(clusters);
        for (Eigen::Index j = 0; j < clusters; ++j) {
            double value = 0.0;
            if (!csv::parse_double(fields[static_cast<std::size_t>(j) + 4], value) ||
                !std::isfinite(value)) {
                throw Error(Errc::NonFiniteValue, path.string() + ": data row " +
                                                      std::to_string(data_row) +
                                                      " has an unparseable membership");
            }
            point.memberships(j) = value;
        }
        if (point.correct) ++correct;
        artifact.result.points.push_back(std::move(point));
    }
    if (!have_header) throw Error(Errc::MalformedHeader, path.string() + ": missing header");
    if (artifact.result.points.empty()) {
        throw Error(Errc::TooFewRows, path.string() + ": no data rows");
    }
    artifact.result.accuracy =
        static_cast<double>(correct) / static_cast<double>(artifact.result.points.size());
    artifact.metadata = string_metadata(meta);
    return artifact;
}

}  // namespace semacc
