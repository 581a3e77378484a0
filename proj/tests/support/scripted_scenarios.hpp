#pragma once

// Hand-built fold scenario for exercising the selection loop with exactly
// known accept/reject outcomes.
//
// Validation samples v0..v9 (even ids Fake, odd Real) with all features
// equal, so anchor ties and candidate ties always resolve by ascending id;
// alpha 0.3 selects three anchors, k=2 walks the pool two ids at a time.
// Prediction tables (step 0 is the freshly fitted model):
//   iteration 1 anchors are v0,v1,v2 with macro-F1 0.25 at step 0;
//   a table that fixes v0,v1 and misses v2 scores 2/3, a perfect table 1.0,
//   missing entries predict 0.5.

#include <memory>
#include <string>
#include <vector>

#include "augforge/active_learning.hpp"
#include "augforge/sample.hpp"

#include "test_data.hpp"
#include "test_doubles.hpp"

namespace augforge::testing {

enum class FoldPattern {
    AcceptFirst,          // iteration 1 accepted, 2 drops, 3 ties
    AcceptFirstAndThird,  // iterations 1 and 3 accepted, 2 drops
    RejectAll,            // every iteration rejected
};

inline std::vector<NewsSample> scripted_validation() {
    std::vector<NewsSample> val;
    for (int i = 0; i < 10; ++i) {
        val.push_back(feature_sample("v" + std::to_string(i),
                                     i % 2 == 0 ? Label::Fake : Label::Real,
                                     Provenance::human(), {1.0}));
    }
    return val;
}

inline std::vector<NewsSample> scripted_training() {
    std::vector<NewsSample> train;
    for (int i = 0; i < 4; ++i) {
        train.push_back(feature_sample("w" + std::to_string(i),
                                       i % 2 == 0 ? Label::Fake : Label::Real,
                                       Provenance::human(), {1.0}));
    }
    return train;
}

inline std::vector<NewsSample> scripted_pool() {
    std::vector<NewsSample> pool;
    for (int i = 0; i < 6; ++i) {
        pool.push_back(feature_sample(
            "p" + std::to_string(i), Label::Fake,
            Provenance::synthesized(kAllFabricationTypes[static_cast<std::size_t>(i) % 4]),
            {1.0}));
    }
    return pool;
}

inline std::shared_ptr<ScriptedDetector::Script> make_script(FoldPattern pattern) {
    using Table = std::map<std::string, double>;
    const Table initial = {};                                      // everything 0.5
    const Table lift_two_of_three = {{"v0", 0.9}, {"v1", 0.1}, {"v2", 0.45}};  // macro 2/3
    const Table break_everything = {{"v0", 0.1}, {"v1", 0.9}, {"v2", 0.1}};    // macro 0
    const Table spoil_later_anchors = {{"v3", 0.9}, {"v4", 0.1}};              // macro 0.25
    const Table fix_later_anchors = {{"v3", 0.1}, {"v4", 0.9}, {"v5", 0.1}};   // macro 1.0

    auto script = std::make_shared<ScriptedDetector::Script>();
    switch (pattern) {
        case FoldPattern::AcceptFirst:
            script->tables = {initial, lift_two_of_three, spoil_later_anchors, initial};
            break;
        case FoldPattern::AcceptFirstAndThird:
            script->tables = {initial, lift_two_of_three, spoil_later_anchors, fix_later_anchors};
            break;
        case FoldPattern::RejectAll:
            script->tables = {initial, break_everything, initial, initial};
            break;
    }
    return script;
}

inline ALConfig scripted_config() {
    ALConfig cfg;
    cfg.alpha = 0.3;
    cfg.k = 2;
    cfg.t_iterations = 3;
    cfg.folds = 5;
    cfg.retention_threshold = 3;
    cfg.seed = 1;
    return cfg;
}

inline FoldState scripted_fold_state(int fold, std::shared_ptr<ScriptedDetector::Script> script) {
    FoldState state;
    state.fold = fold;
    state.model = std::make_unique<ScriptedDetector>(std::move(script));
    state.model->fit({}, 0, 0);
    state.training = scripted_training();
    state.validation = scripted_validation();
    return state;
}

}  // namespace augforge::testing
