// Minimal end-to-end walkthrough against the deterministic mock gateway:
// build a tiny material library, synthesize a pool with all four fabrication
// pipelines, then let the selection loop pick what helps a small detector.

#include <cstdio>
#include <memory>

#include "augforge/augforge.hpp"

using namespace augforge;

int main() {
    GatewayPolicy policy;
    policy.backoff_base_ms = 1;
    RetryingGateway gateway(std::make_shared<MockGateway>(/*seed=*/7, /*embed_dim=*/16), policy);
    PromptTemplates templates = PromptTemplates::defaults();

    // Raw materials: a handful of captions and pre-segmented clips.
    std::vector<RawText> raw_texts;
    std::vector<VisualClip> raw_clips;
    for (int i = 0; i < 12; ++i) {
        RawText t;
        t.id = "text-" + std::to_string(i);
        t.language = "en";
        t.body = "caption " + std::to_string(i) + ": flooding reported near the river district";
        t.source_id = "video-" + std::to_string(i % 6);
        raw_texts.push_back(t);

        VisualClip c;
        c.id = "clip-" + std::to_string(i);
        c.source_video_id = "video-" + std::to_string(i % 6);
        c.start_s = 0.0;
        c.end_s = 4.0 + i;
        raw_clips.push_back(c);
    }

    Library lib;
    lib.provenance_tag = "quickstart";
    lib.texts = filter_texts(raw_texts, gateway, templates);
    lib.clips = filter_clips(annotate_clips(raw_clips, gateway, templates), 1.0, 6);
    lib.embedding_dim = 16;
    lib.validate();
    std::printf("library: %zu texts, %zu clips\n", lib.texts.size(), lib.clips.size());

    // Human samples the manipulation pipelines start from.
    std::vector<NewsSample> human;
    for (int i = 0; i < 6; ++i) {
        NewsSample s;
        s.id = "human-" + std::to_string(i);
        s.text = "verified report " + std::to_string(i) + " about the river district";
        s.source_video_id = "video-" + std::to_string(i);
        for (const VisualClip& c : lib.clips) {
            if (c.source_video_id == *s.source_video_id) s.clips.push_back({c.id, c.duration_s()});
        }
        if (s.clips.empty()) s.clips.push_back({lib.clips.front().id, lib.clips.front().duration_s()});
        s.label = i % 2 == 0 ? Label::Real : Label::Fake;
        s.provenance = Provenance::human();
        human.push_back(s);
    }
    ensure_feature_caches(human, lib, gateway);

    PoolCounts counts;
    counts.misleading_substitution = 3;
    counts.groundless_fabrication = 3;
    counts.fact_distortion = 3;
    counts.selective_editing = 3;
    SynthesisConfig synth;
    synth.seed = 7;
    synth.target_duration_s = 10.0;
    PoolResult pool = synthesize_pool(lib, human, counts, synth, gateway);
    std::printf("pool: %zu synthesized samples (%zu shortfalls)\n", pool.samples.size(),
                pool.shortfalls.size());

    ALConfig cfg;
    cfg.alpha = 0.5;
    cfg.k = 4;
    cfg.folds = 3;
    cfg.retention_threshold = 2;
    cfg.seed = 7;
    DetectorFactory det{[] { return std::make_unique<LinearDetector>(); }, 40};

    ALResult result = run_active_learning(human, pool.samples, cfg, det);
    std::printf("selected %zu of %zu pool samples across %d folds\n",
                result.ledger.final_selected.size(), pool.samples.size(), cfg.folds);

    FinalTrainResult final_model =
        final_train(human, result.ledger.final_selected, pool.samples, cfg, det, human);
    std::printf("final training-set macro-F1: %.3f\n", final_model.test_metrics->macro_f1);
    return 0;
}
