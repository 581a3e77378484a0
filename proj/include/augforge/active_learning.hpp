#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "augforge/detector.hpp"
#include "augforge/errors.hpp"
#include "augforge/json_io.hpp"
#include "augforge/rng.hpp"
#include "augforge/sample.hpp"
#include "augforge/vec.hpp"

namespace augforge {

// --- configuration --------------------------------------------------------

struct ALConfig {
    double alpha = 0.30;        // anchor fraction of the validation fold
    int k = 300;                // candidates retrieved per iteration
    int t_iterations = 0;       // 0 = ceil(|pool| / k), the minimum covering count
    int folds = 5;
    int retention_threshold = 3;
    double target_duration_s = 15.0;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(alpha > 0.0 && alpha <= 1.0)) throw ValidationError("alpha must be in (0, 1]");
        if (k < 1) throw ValidationError("k must be >= 1");
        if (t_iterations < 0) throw ValidationError("t_iterations must be >= 0");
        if (folds < 1) throw ValidationError("folds must be >= 1");
        if (retention_threshold < 1 || retention_threshold > folds) {
            throw ValidationError("retention_threshold must be in 1..folds");
        }
        if (target_duration_s <= 0.0) throw ValidationError("target_duration_s must be > 0");
    }

    int resolve_t_iterations(std::size_t pool_size) const {
        if (t_iterations > 0) return t_iterations;
        if (pool_size == 0) return 0;
        return static_cast<int>((pool_size + static_cast<std::size_t>(k) - 1) /
                                static_cast<std::size_t>(k));
    }
};

// --- ledger -----------------------------------------------------------------

struct IterationRecord {
    int fold = 0;
    int iteration = 0;  // 1-based within the fold
    std::vector<std::string> anchor_ids;     // in selection order
    std::vector<std::string> candidate_ids;  // in retrieval order
    double anchor_f1_before = 0.0;
    double anchor_f1_after = 0.0;
    bool accepted = false;

    bool operator==(const IterationRecord&) const = default;
};

// Full audit trail of a run: every iteration, the per-fold retained sets,
// and the final cross-fold selection.
struct SelectionLedger {
    std::vector<IterationRecord> iterations;
    std::map<int, std::set<std::string>> fold_retained;
    std::set<std::string> final_selected;
    int retention_threshold = 0;

    bool operator==(const SelectionLedger&) const = default;
};

inline std::vector<json> ledger_to_jsonl(const SelectionLedger& ledger) {
    std::vector<json> lines;
    for (const IterationRecord& r : ledger.iterations) {
        lines.push_back({{"type", "iteration"},
                         {"fold", r.fold},
                         {"iteration", r.iteration},
                         {"anchor_ids", r.anchor_ids},
                         {"candidate_ids", r.candidate_ids},
                         {"anchor_f1_before", r.anchor_f1_before},
                         {"anchor_f1_after", r.anchor_f1_after},
                         {"accepted", r.accepted}});
    }
    for (const auto& [fold, retained] : ledger.fold_retained) {
        lines.push_back({{"type", "fold_summary"},
                         {"fold", fold},
                         {"retained_ids", std::vector<std::string>(retained.begin(), retained.end())}});
    }
    lines.push_back({{"type", "final_selection"},
                     {"retention_threshold", ledger.retention_threshold},
                     {"selected_ids", std::vector<std::string>(ledger.final_selected.begin(),
                                                               ledger.final_selected.end())}});
    return lines;
}

inline SelectionLedger ledger_from_jsonl(const std::vector<json>& lines) {
    SelectionLedger ledger;
    for (const json& j : lines) {
        std::string type = j.at("type").get<std::string>();
        if (type == "iteration") {
            IterationRecord r;
            r.fold = j.at("fold").get<int>();
            r.iteration = j.at("iteration").get<int>();
            r.anchor_ids = j.at("anchor_ids").get<std::vector<std::string>>();
            r.candidate_ids = j.at("candidate_ids").get<std::vector<std::string>>();
            r.anchor_f1_before = j.at("anchor_f1_before").get<double>();
            r.anchor_f1_after = j.at("anchor_f1_after").get<double>();
            r.accepted = j.at("accepted").get<bool>();
            ledger.iterations.push_back(std::move(r));
        } else if (type == "fold_summary") {
            auto ids = j.at("retained_ids").get<std::vector<std::string>>();
            ledger.fold_retained[j.at("fold").get<int>()] = {ids.begin(), ids.end()};
        } else if (type == "final_selection") {
            ledger.retention_threshold = j.at("retention_threshold").get<int>();
            auto ids = j.at("selected_ids").get<std::vector<std::string>>();
            ledger.final_selected = {ids.begin(), ids.end()};
        } else {
            throw ValidationError("unknown ledger record type '" + type + "'");
        }
    }
    return ledger;
}

inline SelectionLedger load_ledger(const std::filesystem::path& path) {
    return ledger_from_jsonl(read_jsonl(path));
}

inline void save_ledger(const std::filesystem::path& path, const SelectionLedger& ledger) {
    write_jsonl_atomic(path, ledger_to_jsonl(ledger));
}

// --- primitives ---------------------------------------------------------

// Binary prediction entropy in nats, with the 0 * log 0 = 0 convention.
inline double entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError("entropy: p must be in [0, 1]");
    }
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log(p) - (1.0 - p) * std::log(1.0 - p);
}

// Top ceil(alpha * n) ids by prediction entropy, ties broken by ascending
// id. The ordering is the same in any logarithm base, and identical to
// ordering by -|p - 0.5|.
inline std::vector<std::string> select_anchors(
    const std::vector<std::pair<std::string, double>>& val_probs, double alpha) {
    if (val_probs.empty()) throw ValidationError("select_anchors: empty validation set");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ValidationError("alpha must be in (0, 1]");

    std::vector<std::pair<std::string, double>> scored;
    scored.reserve(val_probs.size());
    for (const auto& [id, p] : val_probs) scored.emplace_back(id, entropy(p));
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    std::size_t count = static_cast<std::size_t>(
        std::ceil(alpha * static_cast<double>(val_probs.size())));
    count = std::min(count, scored.size());
    std::vector<std::string> anchors;
    anchors.reserve(count);
    for (std::size_t i = 0; i < count; ++i) anchors.push_back(scored[i].first);
    return anchors;
}

// Scores every eligible pool sample by its maximum cosine similarity to any
// anchor in the model's feature space, then returns the top-k ids (ties by
// ascending id). Returns fewer than k when the eligible pool is small, and
// an empty list when it is empty.
inline std::vector<std::string> retrieve_candidates(
    const std::vector<const NewsSample*>& anchors, const std::vector<NewsSample>& pool,
    const DetectorModel& model, int k, const std::set<std::string>& exclude) {
    if (anchors.empty()) throw ValidationError("retrieve_candidates: no anchors");
    if (k < 1) throw ValidationError("retrieve_candidates: k must be >= 1");

    std::vector<Vec> anchor_features;
    anchor_features.reserve(anchors.size());
    for (const NewsSample* a : anchors) anchor_features.push_back(model.features(*a));

    std::vector<std::pair<std::string, double>> scored;
    for (const NewsSample& s : pool) {
        if (exclude.count(s.id)) continue;
        Vec f = model.features(s);
        double best = -2.0;
        for (const Vec& af : anchor_features) best = std::max(best, cosine(f, af));
        scored.emplace_back(s.id, best);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (scored.size() > static_cast<std::size_t>(k)) scored.resize(static_cast<std::size_t>(k));

    std::vector<std::string> ids;
    ids.reserve(scored.size());
    for (const auto& [id, score] : scored) ids.push_back(id);
    return ids;
}

// --- fold loop --------------------------------------------------------------

struct DetectorFactory {
    std::function<std::unique_ptr<DetectorModel>()> make;
    int epochs = 100;
};

struct FoldState {
    int fold = 0;
    std::unique_ptr<DetectorModel> model;
    std::vector<NewsSample> training;
    std::vector<NewsSample> validation;
    std::set<std::string> retained;  // candidates kept by accepted iterations
    std::set<std::string> rejected;  // candidates burned by rejected iterations
};

namespace detail {

inline double anchor_macro_f1(const DetectorModel& model,
                              const std::vector<const NewsSample*>& anchors) {
    return metrics_from_confusion(confusion(model, anchors)).macro_f1;
}

inline const NewsSample* find_sample(const std::vector<NewsSample>& samples,
                                     const std::string& id) {
    for (const NewsSample& s : samples) {
        if (s.id == id) return &s;
    }
    return nullptr;
}

}  // namespace detail

// One uncertainty-driven retraining step. Anchors are recomputed from the
// current model, candidates retrieved by feature similarity, and the
// candidate batch is kept only when one retraining epoch strictly improves
// macro-F1 on the anchors; otherwise model and training set are restored
// exactly as they were. Rejected candidates stay out of retrieval for the
// rest of the fold.
inline IterationRecord al_iteration(FoldState& state, const std::vector<NewsSample>& pool,
                                    const ALConfig& cfg, int iteration) {
    IterationRecord rec;
    rec.fold = state.fold;
    rec.iteration = iteration;

    std::vector<std::pair<std::string, double>> val_probs;
    val_probs.reserve(state.validation.size());
    for (const NewsSample& s : state.validation) {
        val_probs.emplace_back(s.id, state.model->predict_proba(s));
    }
    rec.anchor_ids = select_anchors(val_probs, cfg.alpha);

    std::vector<const NewsSample*> anchors;
    anchors.reserve(rec.anchor_ids.size());
    for (const std::string& id : rec.anchor_ids) {
        anchors.push_back(detail::find_sample(state.validation, id));
    }

    std::set<std::string> exclude = state.retained;
    exclude.insert(state.rejected.begin(), state.rejected.end());
    rec.candidate_ids = retrieve_candidates(anchors, pool, *state.model, cfg.k, exclude);

    rec.anchor_f1_before = detail::anchor_macro_f1(*state.model, anchors);
    if (rec.candidate_ids.empty()) {
        rec.anchor_f1_after = rec.anchor_f1_before;
        rec.accepted = false;
        return rec;
    }

    std::unique_ptr<DetectorModel> snapshot = state.model->clone();
    std::size_t training_size_before = state.training.size();

    for (const std::string& id : rec.candidate_ids) {
        const NewsSample* s = detail::find_sample(pool, id);
        state.training.push_back(*s);
    }
    state.model->fit_epoch(
        state.training,
        derive_seed(cfg.seed, "retrain",
                    static_cast<std::uint64_t>(state.fold) * 1000003u +
                        static_cast<std::uint64_t>(iteration)));

    rec.anchor_f1_after = detail::anchor_macro_f1(*state.model, anchors);
    rec.accepted = rec.anchor_f1_after > rec.anchor_f1_before;

    if (rec.accepted) {
        state.retained.insert(rec.candidate_ids.begin(), rec.candidate_ids.end());
    } else {
        state.model = std::move(snapshot);
        state.training.resize(training_size_before);
        state.rejected.insert(rec.candidate_ids.begin(), rec.candidate_ids.end());
    }
    return rec;
}

// Seeded shuffle, then round-robin assignment into `folds` parts.
inline std::vector<std::vector<NewsSample>> split_folds(const std::vector<NewsSample>& data,
                                                        int folds, std::uint64_t seed) {
    if (folds < 1) throw ValidationError("split_folds: folds must be >= 1");
    if (data.size() < static_cast<std::size_t>(folds)) {
        throw ValidationError("split_folds: fewer samples than folds");
    }
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    rng.shuffle(order);
    std::vector<std::vector<NewsSample>> out(static_cast<std::size_t>(folds));
    for (std::size_t i = 0; i < order.size(); ++i) {
        out[i % static_cast<std::size_t>(folds)].push_back(data[order[i]]);
    }
    return out;
}

// Runs t_iterations of al_iteration on one fold; records go to the ledger
// and the fold's retained set is returned.
inline std::set<std::string> run_fold(FoldState& state, const std::vector<NewsSample>& pool,
                                      const ALConfig& cfg, int t_iterations,
                                      SelectionLedger& ledger) {
    for (int t = 1; t <= t_iterations; ++t) {
        ledger.iterations.push_back(al_iteration(state, pool, cfg, t));
    }
    ledger.fold_retained[state.fold] = state.retained;
    return state.retained;
}

// Cross-fold consistency vote: a pool sample enters the final selection iff
// it was retained in at least retention_threshold distinct folds.
inline std::set<std::string> aggregate_folds(const SelectionLedger& ledger,
                                             int retention_threshold) {
    std::map<std::string, int> votes;
    for (const auto& [fold, retained] : ledger.fold_retained) {
        for (const std::string& id : retained) ++votes[id];
    }
    std::set<std::string> selected;
    for (const auto& [id, n] : votes) {
        if (n >= retention_threshold) selected.insert(id);
    }
    return selected;
}

struct ALResult {
    SelectionLedger ledger;
    std::vector<double> fold_validation_f1;  // fold-end model on its own validation fold
};

// The full procedure: split into folds, train a fresh detector per fold,
// run T uncertainty-driven iterations per fold, then vote across folds.
inline ALResult run_active_learning(const std::vector<NewsSample>& human,
                                    const std::vector<NewsSample>& pool, const ALConfig& cfg,
                                    const DetectorFactory& detector) {
    cfg.validate();
    ALResult result;
    result.ledger.retention_threshold = cfg.retention_threshold;
    const int t_iterations = cfg.resolve_t_iterations(pool.size());

    std::vector<std::vector<NewsSample>> folds =
        split_folds(human, cfg.folds, derive_seed(cfg.seed, "fold_split"));

    for (int f = 0; f < cfg.folds; ++f) {
        FoldState state;
        state.fold = f;
        state.validation = folds[static_cast<std::size_t>(f)];
        for (int g = 0; g < cfg.folds; ++g) {
            if (g == f) continue;
            const auto& part = folds[static_cast<std::size_t>(g)];
            state.training.insert(state.training.end(), part.begin(), part.end());
        }
        state.model = detector.make();
        state.model->fit(state.training, detector.epochs,
                         derive_seed(cfg.seed, "fold_init", static_cast<std::uint64_t>(f)));

        run_fold(state, pool, cfg, t_iterations, result.ledger);
        result.fold_validation_f1.push_back(
            metrics_from_confusion(confusion(*state.model, state.validation)).macro_f1);
    }

    result.ledger.final_selected = aggregate_folds(result.ledger, cfg.retention_threshold);
    return result;
}

// --- final training and baseline samplers ---------------------------------

struct FinalTrainResult {
    std::unique_ptr<DetectorModel> model;
    std::optional<Metrics> test_metrics;
};

// Trains from scratch on human data plus the selected pool samples; when a
// test set is given, evaluates on it.
inline FinalTrainResult final_train(const std::vector<NewsSample>& human,
                                    const std::set<std::string>& selected,
                                    const std::vector<NewsSample>& pool, const ALConfig& cfg,
                                    const DetectorFactory& detector,
                                    const std::vector<NewsSample>& test = {}) {
    for (const std::string& id : selected) {
        if (detail::find_sample(pool, id) == nullptr) {
            throw ValidationError("selected id " + id + " is not in the pool");
        }
    }
    std::vector<NewsSample> data = human;
    for (const NewsSample& s : pool) {
        if (selected.count(s.id)) data.push_back(s);
    }
    FinalTrainResult out;
    out.model = detector.make();
    out.model->fit(data, detector.epochs, cfg.seed);
    if (!test.empty()) out.test_metrics = evaluate(*out.model, test);
    return out;
}

enum class SamplingMode { Random, ClassBalanced };

inline SamplingMode parse_sampling_mode(const std::string& key) {
    if (key == "random") return SamplingMode::Random;
    if (key == "balanced" || key == "class_balanced") return SamplingMode::ClassBalanced;
    throw ValidationError("unknown sampling mode '" + key + "'");
}

// Unguided selection baselines. Random draws n pool ids uniformly;
// class-balanced draws floor(n/4) per fabrication type (shortfalls reported
// by the smaller returned set) and fills the remainder by a seeded draw over
// what is left.
inline std::set<std::string> baseline_sampler(const std::vector<NewsSample>& pool, std::size_t n,
                                              SamplingMode mode, std::uint64_t seed) {
    n = std::min(n, pool.size());
    std::set<std::string> picked;
    if (mode == SamplingMode::Random) {
        std::vector<const NewsSample*> all;
        for (const NewsSample& s : pool) all.push_back(&s);
        Rng rng(derive_seed(seed, "sampler_random"));
        rng.shuffle(all);
        for (std::size_t i = 0; i < n; ++i) picked.insert(all[i]->id);
        return picked;
    }

    std::map<FabricationType, std::vector<const NewsSample*>> by_type;
    for (const NewsSample& s : pool) {
        if (s.provenance.is_synthesized()) {
            by_type[*s.provenance.fabrication].push_back(&s);
        }
    }
    const std::size_t quota = n / kAllFabricationTypes.size();
    Rng rng(derive_seed(seed, "sampler_balanced"));
    for (FabricationType t : kAllFabricationTypes) {
        auto& group = by_type[t];
        rng.shuffle(group);
        for (std::size_t i = 0; i < std::min(quota, group.size()); ++i) {
            picked.insert(group[i]->id);
        }
    }
    // Only the n mod 4 remainder slots are filled across types; a type with
    // too few samples shows up as a smaller returned set, never as extra
    // draws from the other types.
    std::size_t remainder = n - quota * kAllFabricationTypes.size();
    std::vector<const NewsSample*> rest;
    for (const NewsSample& s : pool) {
        if (!picked.count(s.id)) rest.push_back(&s);
    }
    rng.shuffle(rest);
    for (std::size_t i = 0; i < rest.size() && remainder > 0; ++i, --remainder) {
        picked.insert(rest[i]->id);
    }
    return picked;
}

}  // namespace augforge
