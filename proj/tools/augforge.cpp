// augforge command-line interface: library construction, pool synthesis,
// active-learning selection, evaluation, and feature export over JSON Lines
// manifests. Commands never mutate their inputs and write outputs
// atomically, so identical inputs and seeds give byte-identical outputs.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "augforge/augforge.hpp"
#include "augforge/gateway_http.hpp"

namespace fs = std::filesystem;
using namespace augforge;

namespace {

struct AppConfig {
    ALConfig al;
    LinearDetectorConfig detector;
    int detector_epochs = 100;
    GatewayPolicy policy;
    std::string backend = "mock";
    std::size_t embed_dim = 32;
    std::string fixtures_path;
    std::optional<std::uint64_t> mock_seed;  // defaults to a stream derived from al.seed
    PromptTemplates templates = PromptTemplates::defaults();
    SynthesisConfig synthesis;
    double min_duration_s = 1.0;
    int min_score_sum = 6;
};

void apply_template(PromptTemplate& t, const json& j) {
    if (j.contains("id")) t.id = j["id"].get<std::string>();
    if (j.contains("text")) t.text = j["text"].get<std::string>();
}

AppConfig load_app_config(const std::string& path) {
    AppConfig cfg;
    if (path.empty()) return cfg;
    json j = read_json_file(path);
    if (j.contains("al")) {
        const json& a = j["al"];
        cfg.al.alpha = a.value("alpha", cfg.al.alpha);
        cfg.al.k = a.value("k", cfg.al.k);
        cfg.al.t_iterations = a.value("t_iterations", cfg.al.t_iterations);
        cfg.al.folds = a.value("folds", cfg.al.folds);
        cfg.al.retention_threshold = a.value("retention_threshold", cfg.al.retention_threshold);
        cfg.al.target_duration_s = a.value("target_duration_s", cfg.al.target_duration_s);
        cfg.al.seed = a.value("seed", cfg.al.seed);
    }
    if (j.contains("detector")) {
        const json& d = j["detector"];
        cfg.detector.learning_rate = d.value("learning_rate", cfg.detector.learning_rate);
        cfg.detector.l2 = d.value("l2", cfg.detector.l2);
        cfg.detector_epochs = d.value("epochs", cfg.detector_epochs);
    }
    if (j.contains("gateway")) {
        const json& g = j["gateway"];
        cfg.policy.max_retries = g.value("max_retries", cfg.policy.max_retries);
        cfg.policy.backoff_base_ms = g.value("backoff_base_ms", cfg.policy.backoff_base_ms);
        cfg.policy.max_in_flight = g.value("max_in_flight", cfg.policy.max_in_flight);
        cfg.policy.timeout_ms = g.value("timeout_ms", cfg.policy.timeout_ms);
        cfg.backend = g.value("backend", cfg.backend);
        cfg.embed_dim = g.value("embed_dim", cfg.embed_dim);
        cfg.fixtures_path = g.value("fixtures", cfg.fixtures_path);
        if (g.contains("mock_seed")) cfg.mock_seed = g["mock_seed"].get<std::uint64_t>();
    }
    if (j.contains("templates")) {
        const json& t = j["templates"];
        if (t.contains("judge_text")) apply_template(cfg.templates.judge_text, t["judge_text"]);
        if (t.contains("annotate_clip")) apply_template(cfg.templates.annotate_clip, t["annotate_clip"]);
        if (t.contains("fabricate_narrative")) {
            apply_template(cfg.templates.fabricate_narrative, t["fabricate_narrative"]);
        }
        if (t.contains("distort_text")) apply_template(cfg.templates.distort_text, t["distort_text"]);
    }
    if (j.contains("synthesis")) {
        const json& s = j["synthesis"];
        cfg.synthesis.target_duration_s = s.value("target_duration_s", cfg.synthesis.target_duration_s);
        cfg.synthesis.replace_fraction = s.value("replace_fraction", cfg.synthesis.replace_fraction);
    }
    if (j.contains("filters")) {
        const json& f = j["filters"];
        cfg.min_duration_s = f.value("min_duration_s", cfg.min_duration_s);
        cfg.min_score_sum = f.value("min_score_sum", cfg.min_score_sum);
    }
    return cfg;
}

std::unique_ptr<ModelGateway> make_gateway(const AppConfig& cfg) {
    std::shared_ptr<ModelGateway> backend;
    if (cfg.backend == "mock") {
        MockFixtures fixtures;
        if (!cfg.fixtures_path.empty()) fixtures = MockFixtures::load(cfg.fixtures_path);
        std::uint64_t seed =
            cfg.mock_seed ? *cfg.mock_seed : derive_seed(cfg.al.seed, "mock_gateway");
        backend = std::make_shared<MockGateway>(seed, cfg.embed_dim, std::move(fixtures));
    } else if (cfg.backend == "http") {
        backend = HttpGateway::from_env(cfg.policy.timeout_ms);
    } else {
        throw ValidationError("unknown gateway backend '" + cfg.backend + "'");
    }
    return std::make_unique<RetryingGateway>(std::move(backend), cfg.policy);
}

void require_file(const std::string& path) {
    if (!fs::is_regular_file(path)) throw LoadError("file not found", path);
}

void require_dir(const std::string& path) {
    if (!fs::is_directory(path)) throw LoadError("directory not found", path);
}

void require_features(const std::vector<NewsSample>& samples, const std::string& what) {
    for (const NewsSample& s : samples) {
        if (s.feature_cache.empty()) {
            throw ValidationError(what + ": sample " + s.id +
                                  " has no feature_cache; run export-features --emit-manifest "
                                  "or synthesize with features enabled");
        }
    }
}

json metrics_to_json(const DetectorModel& model, const std::vector<NewsSample>& data) {
    ConfusionCounts c = confusion(model, data);
    Metrics m = metrics_from_confusion(c);
    return {{"accuracy", m.accuracy},
            {"macro_f1", m.macro_f1},
            {"macro_precision", m.macro_precision},
            {"macro_recall", m.macro_recall},
            {"fake_f1", fake_f1_from_confusion(c)}};
}

void print_metrics(const std::string& name, const json& m) {
    std::printf("%-10s acc %.4f  macro_f1 %.4f  macro_prec %.4f  macro_rec %.4f  fake_f1 %.4f\n",
                name.c_str(), m["accuracy"].get<double>(), m["macro_f1"].get<double>(),
                m["macro_precision"].get<double>(), m["macro_recall"].get<double>(),
                m["fake_f1"].get<double>());
}

std::map<std::string, std::size_t> clip_type_counts(const Library& lib) {
    std::map<std::string, std::size_t> counts;
    for (const VisualClip& c : lib.clips) ++counts[c.clip_type.str()];
    return counts;
}

void print_type_table(const std::map<std::string, std::size_t>& counts) {
    std::size_t width = 9;
    for (const auto& [name, n] : counts) width = std::max(width, name.size());
    std::printf("%-*s  count\n", static_cast<int>(width), "clip type");
    for (const auto& [name, n] : counts) {
        std::printf("%-*s  %zu\n", static_cast<int>(width), name.c_str(), n);
    }
}

DetectorFactory detector_factory(const AppConfig& cfg) {
    LinearDetectorConfig det = cfg.detector;
    return {[det] { return std::make_unique<LinearDetector>(det); }, cfg.detector_epochs};
}

// --- subcommand bodies ------------------------------------------------------

struct LibraryBuildArgs {
    std::string texts_path, clips_path, out_dir, tag = "library";
    int jobs = 4;
};

void cmd_library_build(const LibraryBuildArgs& a, const AppConfig& cfg) {
    require_file(a.texts_path);
    require_file(a.clips_path);
    auto gateway = make_gateway(cfg);

    std::vector<RawText> raw_texts;
    for (const json& j : read_jsonl(a.texts_path)) {
        raw_texts.push_back({j.at("id").get<std::string>(),
                             j.value("language", std::string("und")),
                             j.at("body").get<std::string>(),
                             j.value("source_id", std::string{})});
    }
    std::vector<VisualClip> raw_clips =
        parse_jsonl_records<VisualClip>(a.clips_path, visual_clip_from_json);
    for (const VisualClip& c : raw_clips) c.validate_timestamps();

    Library lib;
    lib.provenance_tag = a.tag;
    lib.texts = filter_texts(raw_texts, *gateway, cfg.templates, a.jobs);
    std::vector<VisualClip> annotated = annotate_clips(raw_clips, *gateway, cfg.templates, a.jobs);
    lib.clips = filter_clips(annotated, cfg.min_duration_s, cfg.min_score_sum);

    for (const TextMaterial& t : lib.texts) {
        if (!t.embedding.empty()) {
            lib.embedding_dim = t.embedding.size();
            break;
        }
    }
    if (lib.embedding_dim == 0 && !lib.clips.empty()) {
        lib.embedding_dim = lib.clips.front().embedding.size();
    }

    save_library(lib, a.out_dir);

    std::size_t kept = 0;
    for (const TextMaterial& t : lib.texts) kept += t.kept ? 1 : 0;
    auto counts = clip_type_counts(lib);
    print_type_table(counts);
    std::printf("texts: %zu (%zu kept)  clips: %zu of %zu retained\n", lib.texts.size(), kept,
                lib.clips.size(), annotated.size());

    json report;
    report["embedding_dim"] = lib.embedding_dim;
    report["texts"] = {{"total", lib.texts.size()}, {"kept", kept}};
    report["clips"] = {{"annotated", annotated.size()}, {"retained", lib.clips.size()}};
    report["clip_types"] = counts;
    atomic_write_text(fs::path(a.out_dir) / "build_report.json", report.dump(2) + "\n");
}

void cmd_library_stats(const std::string& lib_dir, const std::string& json_out) {
    require_dir(lib_dir);
    Library lib = load_library(lib_dir);
    auto counts = clip_type_counts(lib);
    print_type_table(counts);
    std::size_t kept = 0;
    for (const TextMaterial& t : lib.texts) kept += t.kept ? 1 : 0;
    std::printf("texts: %zu (%zu kept)  clips: %zu  dim: %zu  tag: %s\n", lib.texts.size(), kept,
                lib.clips.size(), lib.embedding_dim, lib.provenance_tag.c_str());
    if (!json_out.empty()) {
        json report;
        report["texts"] = {{"total", lib.texts.size()}, {"kept", kept}};
        report["clips"] = {{"total", lib.clips.size()}};
        report["clip_types"] = counts;
        report["embedding_dim"] = lib.embedding_dim;
        report["provenance_tag"] = lib.provenance_tag;
        atomic_write_text(json_out, report.dump(2) + "\n");
    }
}

struct SynthArgs {
    std::string pipeline = "all";
    int count = 0;
    std::string lib_dir, out_file, human_path;
    bool no_features = false;
};

void cmd_synth_run(const SynthArgs& a, const AppConfig& cfg) {
    require_dir(a.lib_dir);
    if (!a.human_path.empty()) require_file(a.human_path);
    if (a.count < 0) throw ValidationError("--count must be >= 0");

    PoolCounts counts;
    if (a.pipeline == "all") {
        int base = a.count / 4, extra = a.count % 4;
        int i = 0;
        for (FabricationType t : kAllFabricationTypes) {
            counts.of(t) = base + (i++ < extra ? 1 : 0);
        }
    } else {
        counts.of(parse_fabrication_type(a.pipeline)) = a.count;
    }

    Library lib = load_library(a.lib_dir);
    std::vector<NewsSample> human;
    if (!a.human_path.empty()) human = load_samples(a.human_path);
    if ((counts.fact_distortion > 0 || counts.selective_editing > 0) && human.empty()) {
        throw ValidationError("pipelines tv2tv/tv2ttv need --human FILE with source samples");
    }

    auto gateway = make_gateway(cfg);
    SynthesisConfig synth = cfg.synthesis;
    synth.seed = cfg.al.seed;
    synth.compute_features = !a.no_features;
    synth.templates = cfg.templates;

    PoolResult pool = synthesize_pool(lib, human, counts, synth, *gateway);
    save_pool_manifest(a.out_file, pool);

    std::printf("synthesized %zu of %d requested samples -> %s\n", pool.samples.size(), counts.total(),
                a.out_file.c_str());
    for (const Shortfall& s : pool.shortfalls) {
        std::fprintf(stderr, "warning: %s: produced %d of %d (%s)\n",
                     fabrication_key(s.type).c_str(), s.produced, s.requested, s.reason.c_str());
    }
}

struct ALRunArgs {
    std::string train_path, pool_path, test_path, out_dir;
};

struct LoadedRun {
    std::vector<NewsSample> train, pool, test;
};

LoadedRun load_run_inputs(const ALRunArgs& a) {
    require_file(a.train_path);
    require_file(a.pool_path);
    if (!a.test_path.empty()) require_file(a.test_path);
    LoadedRun r;
    r.train = load_samples(a.train_path);
    r.pool = load_samples(a.pool_path);
    if (!a.test_path.empty()) r.test = load_samples(a.test_path);
    require_features(r.train, "train");
    require_features(r.pool, "pool");
    require_features(r.test, "test");
    return r;
}

void write_selection(const fs::path& out_dir, const std::set<std::string>& selected,
                     const ALConfig& cfg) {
    json sel;
    sel["retention_threshold"] = cfg.retention_threshold;
    sel["folds"] = cfg.folds;
    sel["selected_count"] = selected.size();
    sel["selected_ids"] = std::vector<std::string>(selected.begin(), selected.end());
    atomic_write_text(out_dir / "selection.json", sel.dump(2) + "\n");
}

// Trains the human-only baseline and the final model, writes model, metrics
// and selection, and prints the comparison.
void finalize_run(const fs::path& out_dir, const LoadedRun& data,
                  const std::set<std::string>& selected, const AppConfig& cfg) {
    DetectorFactory det = detector_factory(cfg);
    FinalTrainResult baseline = final_train(data.train, {}, data.pool, cfg.al, det, data.test);
    FinalTrainResult final_model =
        final_train(data.train, selected, data.pool, cfg.al, det, data.test);

    write_selection(out_dir, selected, cfg.al);
    atomic_write_text(out_dir / "final_model.json", final_model.model->state().dump(2) + "\n");

    json metrics;
    metrics["selected_count"] = selected.size();
    metrics["baseline"] = nullptr;
    metrics["final"] = nullptr;
    if (!data.test.empty()) {
        metrics["baseline"] = metrics_to_json(*baseline.model, data.test);
        metrics["final"] = metrics_to_json(*final_model.model, data.test);
    }
    atomic_write_text(out_dir / "metrics.json", metrics.dump(2) + "\n");

    std::printf("selected %zu pool samples\n", selected.size());
    if (!data.test.empty()) {
        print_metrics("baseline", metrics["baseline"]);
        print_metrics("final", metrics["final"]);
    }
}

void cmd_al_run(const ALRunArgs& a, const AppConfig& cfg) {
    LoadedRun data = load_run_inputs(a);
    fs::create_directories(a.out_dir);

    ALResult result = run_active_learning(data.train, data.pool, cfg.al, detector_factory(cfg));
    save_ledger(fs::path(a.out_dir) / "ledger.jsonl", result.ledger);
    finalize_run(a.out_dir, data, result.ledger.final_selected, cfg);
}

void cmd_al_ablate(const ALRunArgs& a, const std::string& strategy, int n_override,
                   const AppConfig& cfg) {
    LoadedRun data = load_run_inputs(a);
    fs::create_directories(a.out_dir);

    std::set<std::string> selected;
    if (strategy == "al") {
        ALResult result = run_active_learning(data.train, data.pool, cfg.al, detector_factory(cfg));
        save_ledger(fs::path(a.out_dir) / "ledger.jsonl", result.ledger);
        selected = result.ledger.final_selected;
    } else {
        std::size_t n;
        if (n_override >= 0) {
            n = static_cast<std::size_t>(n_override);
        } else {
            std::printf("no --n given; running the selection loop to size the draw\n");
            ALResult result =
                run_active_learning(data.train, data.pool, cfg.al, detector_factory(cfg));
            n = result.ledger.final_selected.size();
        }
        selected = baseline_sampler(data.pool, n, parse_sampling_mode(strategy), cfg.al.seed);
        if (selected.size() < n) {
            std::fprintf(stderr, "warning: sampler returned %zu of %zu requested samples\n",
                         selected.size(), n);
        }
    }
    finalize_run(a.out_dir, data, selected, cfg);
}

void cmd_al_ablate_types(const ALRunArgs& a, const std::string& drop_key, const AppConfig& cfg) {
    FabricationType drop = parse_fabrication_type(drop_key);
    LoadedRun data = load_run_inputs(a);
    fs::create_directories(a.out_dir);

    std::vector<NewsSample> pool;
    for (const NewsSample& s : data.pool) {
        if (s.provenance.is_synthesized() && *s.provenance.fabrication == drop) continue;
        pool.push_back(s);
    }
    std::printf("pool without %s: %zu of %zu samples\n", drop_key.c_str(), pool.size(),
                data.pool.size());
    data.pool = std::move(pool);

    ALResult result = run_active_learning(data.train, data.pool, cfg.al, detector_factory(cfg));
    save_ledger(fs::path(a.out_dir) / "ledger.jsonl", result.ledger);
    finalize_run(a.out_dir, data, result.ledger.final_selected, cfg);
}

struct TuneKArgs {
    ALRunArgs run;  // test_path doubles as --val here
    int k_min = 100, k_max = 1000, k_step = 100;
};

void cmd_al_tune_k(const TuneKArgs& a, const AppConfig& cfg) {
    LoadedRun data = load_run_inputs(a.run);
    fs::create_directories(a.run.out_dir);
    if (a.k_min < 1 || a.k_step < 1 || a.k_max < a.k_min) {
        throw ValidationError("bad K grid");
    }

    DetectorFactory det = detector_factory(cfg);
    json rows = json::array();
    int best_k = 0;
    double best_score = -1.0;
    std::printf("%6s  %8s  %10s\n", "k", "selected", "val_score");
    for (int k = a.k_min; k <= a.k_max; k += a.k_step) {
        ALConfig al = cfg.al;
        al.k = k;
        ALResult result = run_active_learning(data.train, data.pool, al, det);
        double score;
        if (!data.test.empty()) {
            FinalTrainResult ft =
                final_train(data.train, result.ledger.final_selected, data.pool, al, det, data.test);
            score = ft.test_metrics->macro_f1;
        } else {
            double sum = 0.0;
            for (double f1 : result.fold_validation_f1) sum += f1;
            score = result.fold_validation_f1.empty()
                        ? 0.0
                        : sum / static_cast<double>(result.fold_validation_f1.size());
        }
        rows.push_back({{"k", k},
                        {"selected_count", result.ledger.final_selected.size()},
                        {"score", score}});
        std::printf("%6d  %8zu  %10.4f\n", k, result.ledger.final_selected.size(), score);
        if (score > best_score) {
            best_score = score;
            best_k = k;
        }
    }
    json out;
    out["grid"] = rows;
    out["best_k"] = best_k;
    out["metric"] = data.test.empty() ? "mean_fold_validation_macro_f1" : "validation_macro_f1";
    atomic_write_text(fs::path(a.run.out_dir) / "tune_k.json", out.dump(2) + "\n");
    std::printf("best k: %d\n", best_k);
}

void cmd_eval(const std::string& model_path, const std::string& data_path,
              const std::string& json_out) {
    require_file(model_path);
    require_file(data_path);
    LinearDetector model = LinearDetector::from_state(read_json_file(model_path));
    std::vector<NewsSample> data = load_samples(data_path);
    require_features(data, "data");
    json m = metrics_to_json(model, data);
    print_metrics("eval", m);
    if (!json_out.empty()) atomic_write_text(json_out, m.dump(2) + "\n");
}

struct ExportArgs {
    std::string data_path, out_path, lib_dir, emit_manifest;
};

void cmd_export_features(const ExportArgs& a, const AppConfig& cfg) {
    require_file(a.data_path);
    std::vector<NewsSample> data = load_samples(a.data_path);

    bool missing = false;
    for (const NewsSample& s : data) missing |= s.feature_cache.empty();
    if (missing) {
        if (a.lib_dir.empty()) {
            throw ValidationError("some samples lack feature_cache; pass --lib DIR to compute them");
        }
        require_dir(a.lib_dir);
        Library lib = load_library(a.lib_dir);
        auto gateway = make_gateway(cfg);
        ensure_feature_caches(data, lib, *gateway);
    }

    std::string rows;
    char buf[64];
    for (const NewsSample& s : data) {
        rows += s.id;
        rows += '\t';
        rows += s.provenance.str();
        rows += '\t';
        for (std::size_t i = 0; i < s.feature_cache.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", s.feature_cache[i]);
            if (i) rows += ',';
            rows += buf;
        }
        rows += '\n';
    }
    atomic_write_text(a.out_path, rows);
    std::printf("wrote %zu feature rows -> %s\n", data.size(), a.out_path.c_str());

    if (!a.emit_manifest.empty()) {
        save_samples(a.emit_manifest, data);
        std::printf("wrote manifest with caches -> %s\n", a.emit_manifest.c_str());
    }
}

struct QueryArgs {
    std::string lib_dir, text, target = "clips";
    int k = 10;
};

void cmd_query(const QueryArgs& a, const AppConfig& cfg) {
    require_dir(a.lib_dir);
    Library lib = load_library(a.lib_dir);
    auto gateway = make_gateway(cfg);
    Vec q = gateway->embed(a.text);

    std::vector<IndexEntry> index;
    if (a.target == "clips") {
        index = lib.clip_index();
    } else if (a.target == "texts") {
        for (const TextMaterial& t : lib.texts) {
            if (t.kept && !t.embedding.empty()) index.push_back({t.id, t.embedding, 0.0, {}});
        }
    } else {
        throw ValidationError("--target must be clips or texts");
    }
    for (const ScoredId& s : top_k(q, index, a.k)) {
        std::printf("%s\t%.6f\n", s.id.c_str(), s.score);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"data augmentation and active-learning toolkit for fake-news video detection"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed_flag;
    std::string gateway_flag;
    app.add_option("--config", config_path, "JSON config file")->expected(1);
    app.add_option("--seed", seed_flag, "override the configured seed");
    app.add_option("--gateway", gateway_flag, "gateway backend: mock or http")
        ->check(CLI::IsMember({"mock", "http"}));

    // library
    auto* library = app.add_subcommand("library", "build or inspect a material library");
    library->require_subcommand(1);
    LibraryBuildArgs lb;
    auto* lib_build = library->add_subcommand("build", "filter, annotate, and persist materials");
    lib_build->add_option("--texts", lb.texts_path, "raw texts JSONL")->required();
    lib_build->add_option("--clips", lb.clips_path, "pre-segmented clip manifest JSONL")->required();
    lib_build->add_option("--out", lb.out_dir, "output library directory")->required();
    lib_build->add_option("--tag", lb.tag, "provenance tag");
    lib_build->add_option("--jobs", lb.jobs, "concurrent annotation workers");
    std::string stats_lib, stats_json;
    auto* lib_stats = library->add_subcommand("stats", "print clip-type distribution");
    lib_stats->add_option("--lib", stats_lib, "library directory")->required();
    lib_stats->add_option("--json", stats_json, "also write a JSON report");

    // synth
    auto* synth = app.add_subcommand("synth", "synthesize fake-news samples");
    synth->require_subcommand(1);
    SynthArgs sy;
    auto* synth_run = synth->add_subcommand("run", "run fabrication pipelines");
    synth_run->add_option("--pipeline", sy.pipeline, "t2tv|v2tv|tv2tv|tv2ttv|all")
        ->check(CLI::IsMember({"t2tv", "v2tv", "tv2tv", "tv2ttv", "all"}));
    synth_run->add_option("--count", sy.count, "total samples to synthesize")->required();
    synth_run->add_option("--lib", sy.lib_dir, "material library directory")->required();
    synth_run->add_option("--out", sy.out_file, "pool manifest output")->required();
    synth_run->add_option("--human", sy.human_path, "human samples JSONL (for tv2tv/tv2ttv)");
    synth_run->add_flag("--no-features", sy.no_features, "skip feature-cache computation");

    // al
    auto* al = app.add_subcommand("al", "active-learning selection and ablations");
    al->require_subcommand(1);
    auto add_run_options = [](CLI::App* c, ALRunArgs& args, const char* test_name,
                              const char* test_help) {
        c->add_option("--train", args.train_path, "human training samples JSONL")->required();
        c->add_option("--pool", args.pool_path, "synthesized pool JSONL")->required();
        c->add_option(test_name, args.test_path, test_help);
        c->add_option("--out", args.out_dir, "output directory")->required();
    };
    ALRunArgs al_run_args;
    auto* al_run = al->add_subcommand("run", "entropy-anchored five-fold selection");
    add_run_options(al_run, al_run_args, "--test", "held-out test samples JSONL");

    ALRunArgs ablate_args;
    std::string ablate_strategy;
    int ablate_n = -1;
    auto* al_ablate = al->add_subcommand("ablate", "compare sampling strategies");
    add_run_options(al_ablate, ablate_args, "--test", "held-out test samples JSONL");
    al_ablate->add_option("--strategy", ablate_strategy, "al|random|balanced")
        ->required()
        ->check(CLI::IsMember({"al", "random", "balanced"}));
    al_ablate->add_option("--n", ablate_n, "sample count for random/balanced (default: AL size)");

    ALRunArgs ablate_types_args;
    std::string drop_key;
    auto* al_ablate_types = al->add_subcommand("ablate-types", "leave one fabrication type out");
    add_run_options(al_ablate_types, ablate_types_args, "--test", "held-out test samples JSONL");
    al_ablate_types->add_option("--drop", drop_key, "fabrication type to drop")
        ->required()
        ->check(CLI::IsMember({"t2tv", "v2tv", "tv2tv", "tv2ttv"}));

    TuneKArgs tune_args;
    auto* al_tune = al->add_subcommand("tune-k", "sweep K and report validation scores");
    add_run_options(al_tune, tune_args.run, "--val", "validation samples JSONL");
    al_tune->add_option("--k-min", tune_args.k_min, "grid start");
    al_tune->add_option("--k-max", tune_args.k_max, "grid end");
    al_tune->add_option("--k-step", tune_args.k_step, "grid step");

    // eval / export / query
    std::string eval_model, eval_data, eval_json;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a model checkpoint on labeled samples");
    eval_cmd->add_option("--model", eval_model, "model checkpoint JSON")->required();
    eval_cmd->add_option("--data", eval_data, "labeled samples JSONL")->required();
    eval_cmd->add_option("--json", eval_json, "also write metrics JSON");

    ExportArgs export_args;
    auto* export_cmd = app.add_subcommand("export-features", "dump (id, provenance, vector) rows");
    export_cmd->add_option("--data", export_args.data_path, "samples JSONL")->required();
    export_cmd->add_option("--out", export_args.out_path, "output TSV")->required();
    export_cmd->add_option("--lib", export_args.lib_dir, "library for computing missing caches");
    export_cmd->add_option("--emit-manifest", export_args.emit_manifest,
                           "write a copy of the input manifest with caches filled");

    QueryArgs query_args;
    auto* query_cmd = app.add_subcommand("query", "debug similarity search over a library");
    query_cmd->add_option("--lib", query_args.lib_dir, "library directory")->required();
    query_cmd->add_option("--text", query_args.text, "query text")->required();
    query_cmd->add_option("--k", query_args.k, "results to print");
    query_cmd->add_option("--target", query_args.target, "clips|texts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        AppConfig cfg = load_app_config(config_path);
        if (seed_flag) cfg.al.seed = *seed_flag;
        if (!gateway_flag.empty()) cfg.backend = gateway_flag;

        if (lib_build->parsed()) cmd_library_build(lb, cfg);
        else if (lib_stats->parsed()) cmd_library_stats(stats_lib, stats_json);
        else if (synth_run->parsed()) cmd_synth_run(sy, cfg);
        else if (al_run->parsed()) cmd_al_run(al_run_args, cfg);
        else if (al_ablate->parsed()) cmd_al_ablate(ablate_args, ablate_strategy, ablate_n, cfg);
        else if (al_ablate_types->parsed()) cmd_al_ablate_types(ablate_types_args, drop_key, cfg);
        else if (al_tune->parsed()) cmd_al_tune_k(tune_args, cfg);
        else if (eval_cmd->parsed()) cmd_eval(eval_model, eval_data, eval_json);
        else if (export_cmd->parsed()) cmd_export_features(export_args, cfg);
        else if (query_cmd->parsed()) cmd_query(query_args, cfg);
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const LoadError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
