#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "augforge/errors.hpp"
#include "augforge/features.hpp"
#include "augforge/gateway.hpp"
#include "augforge/index.hpp"
#include "augforge/json_io.hpp"
#include "augforge/materials.hpp"
#include "augforge/rng.hpp"
#include "augforge/sample.hpp"
#include "augforge/templates.hpp"

namespace augforge {

namespace detail {

inline std::vector<ClipSlot> slots_from_ids(const std::vector<std::string>& ids,
                                            const Library& lib) {
    std::vector<ClipSlot> slots;
    slots.reserve(ids.size());
    for (const std::string& id : ids) {
        const VisualClip* c = lib.find_clip(id);
        if (c == nullptr) throw ValidationError("clip " + id + " not found in library");
        slots.push_back({id, c->duration_s()});
    }
    return slots;
}

}  // namespace detail

// T -> TV~: keep the text, substitute retrieved visuals. Clips are pulled by
// text/visual-description similarity and appended until the target duration
// is reached.
inline NewsSample misleading_substitution(const TextMaterial& text, const Library& lib,
                                          double target_duration_s, std::string sample_id = {}) {
    if (!text.kept) throw ValidationError("text " + text.id + " was filtered out");
    if (text.embedding.empty()) throw ValidationError("text " + text.id + " has no embedding");
    if (lib.clips.empty()) throw ValidationError("library has no clips");

    std::vector<std::string> ids = assemble_clips(text.embedding, lib.clip_index(), target_duration_s);

    NewsSample s;
    s.id = sample_id.empty() ? "t2tv-" + text.id : std::move(sample_id);
    s.text = text.body;
    s.clips = detail::slots_from_ids(ids, lib);
    s.label = Label::Fake;
    s.provenance = Provenance::synthesized(FabricationType::MisleadingSubstitution);
    return s;
}

// V -> T~V: keep the visuals, fabricate a fictional narrative over their
// descriptions.
inline NewsSample groundless_fabrication(const std::vector<VisualClip>& clips, ModelGateway& llm,
                                         const PromptTemplates& templates,
                                         std::string sample_id = {}) {
    if (clips.empty()) throw ValidationError("groundless_fabrication: no clips");
    std::string descriptions;
    for (const VisualClip& c : clips) {
        if (!c.annotated()) throw ValidationError("clip " + c.id + " is not annotated");
        descriptions += "- " + c.description + "\n";
    }

    GatewayRequest req;
    req.kind = RequestKind::Complete;
    req.params.template_id = templates.fabricate_narrative.id;
    req.prompt = render_template(templates.fabricate_narrative.text,
                                 {{"descriptions", descriptions}});
    std::string narrative = llm.complete(req);

    NewsSample s;
    s.id = sample_id.empty() ? "v2tv-" + clips.front().id : std::move(sample_id);
    s.text = std::move(narrative);
    s.clips.reserve(clips.size());
    for (const VisualClip& c : clips) s.clips.push_back({c.id, c.duration_s()});
    s.label = Label::Fake;
    s.provenance = Provenance::synthesized(FabricationType::GroundlessFabrication);
    return s;
}

// TV -> T~V: keep the visuals, prompt the model to change factual details of
// the text. A completion identical to the input means the distortion failed.
inline NewsSample fact_distortion(const NewsSample& sample, ModelGateway& llm,
                                  const PromptTemplates& templates, std::string sample_id = {}) {
    if (sample.text.empty()) throw ValidationError("sample " + sample.id + " has no text");

    GatewayRequest req;
    req.kind = RequestKind::Complete;
    req.params.template_id = templates.distort_text.id;
    req.prompt = render_template(templates.distort_text.text, {{"text", sample.text}});
    std::string distorted = llm.complete(req);
    if (distorted == sample.text) {
        throw DistortionError("sample " + sample.id + ": completion is identical to the input");
    }

    NewsSample s = sample;
    s.id = sample_id.empty() ? "tv2tv-" + sample.id : std::move(sample_id);
    s.text = std::move(distorted);
    s.label = Label::Fake;
    s.provenance = Provenance::synthesized(FabricationType::FactDistortion);
    s.feature_cache.clear();
    return s;
}

// TV -> TV~: replace the lowest-scored fraction of the sample's clips with
// strictly higher-scored library clips that neither come from the sample's
// own source video nor already appear in the sample. Positions are
// preserved. The r strongest candidates are paired to the r weakest slots in
// ascending score order on both sides, which admits an assignment whenever
// any strict one exists; every pair must be strict.
inline NewsSample selective_editing(const NewsSample& sample, const Library& lib,
                                    double replace_fraction, std::string sample_id = {}) {
    if (sample.clips.size() < 2) {
        throw ValidationError("sample " + sample.id + " has fewer than 2 clips");
    }
    if (!(replace_fraction > 0.0 && replace_fraction < 1.0)) {
        throw ValidationError("replace_fraction must be in (0, 1)");
    }

    struct Slot {
        std::size_t position;
        const VisualClip* clip;
    };
    std::vector<Slot> slots;
    std::set<std::string> in_sample;
    for (std::size_t i = 0; i < sample.clips.size(); ++i) {
        const VisualClip* c = lib.find_clip(sample.clips[i].clip_id);
        if (c == nullptr) {
            throw ValidationError("sample " + sample.id + ": clip " + sample.clips[i].clip_id +
                                  " not found in library");
        }
        slots.push_back({i, c});
        in_sample.insert(c->id);
    }

    const std::size_t r = std::max<std::size_t>(
        1, static_cast<std::size_t>(replace_fraction * static_cast<double>(slots.size())));

    // Weakest slots first.
    std::vector<Slot> by_score = slots;
    std::sort(by_score.begin(), by_score.end(), [](const Slot& a, const Slot& b) {
        if (a.clip->score_sum() != b.clip->score_sum()) {
            return a.clip->score_sum() < b.clip->score_sum();
        }
        return a.clip->id < b.clip->id;
    });
    by_score.resize(r);

    // Strongest eligible candidates first.
    std::vector<const VisualClip*> candidates;
    for (const VisualClip& c : lib.clips) {
        if (sample.source_video_id && c.source_video_id == *sample.source_video_id) continue;
        if (in_sample.count(c.id)) continue;
        candidates.push_back(&c);
    }
    std::sort(candidates.begin(), candidates.end(), [](const VisualClip* a, const VisualClip* b) {
        if (a->score_sum() != b->score_sum()) return a->score_sum() > b->score_sum();
        return a->id < b->id;
    });

    // Largest m such that the top-m candidates, taken in ascending score
    // order, strictly beat the m weakest slots pairwise.
    auto assignable = [&](std::size_t m) {
        if (m > candidates.size()) return false;
        for (std::size_t i = 0; i < m; ++i) {
            if (!(candidates[m - 1 - i]->score_sum() > by_score[i].clip->score_sum())) return false;
        }
        return true;
    };
    std::size_t eligible = r;
    while (eligible > 0 && !assignable(eligible)) --eligible;
    if (eligible < r) {
        throw ReplacementError("sample " + sample.id + ": only " + std::to_string(eligible) +
                                   " eligible replacement clips for " + std::to_string(r) +
                                   " slots",
                               static_cast<int>(eligible));
    }

    NewsSample s = sample;
    s.id = sample_id.empty() ? "tv2ttv-" + sample.id : std::move(sample_id);
    for (std::size_t i = 0; i < r; ++i) {
        const VisualClip* repl = candidates[r - 1 - i];
        s.clips[by_score[i].position] = {repl->id, repl->duration_s()};
    }
    s.label = Label::Fake;
    s.provenance = Provenance::synthesized(FabricationType::SelectiveEditing);
    s.feature_cache.clear();
    return s;
}

// --- pool synthesis --------------------------------------------------------

struct PoolCounts {
    int misleading_substitution = 0;
    int groundless_fabrication = 0;
    int fact_distortion = 0;
    int selective_editing = 0;

    int total() const {
        return misleading_substitution + groundless_fabrication + fact_distortion +
               selective_editing;
    }

    int& of(FabricationType t) {
        switch (t) {
            case FabricationType::MisleadingSubstitution: return misleading_substitution;
            case FabricationType::GroundlessFabrication: return groundless_fabrication;
            case FabricationType::FactDistortion: return fact_distortion;
            case FabricationType::SelectiveEditing: return selective_editing;
        }
        throw ValidationError("invalid fabrication type");
    }

    int of(FabricationType t) const { return const_cast<PoolCounts*>(this)->of(t); }
};

struct Shortfall {
    FabricationType type;
    int requested = 0;
    int produced = 0;
    std::string reason;
};

struct PoolResult {
    std::vector<NewsSample> samples;
    std::vector<Shortfall> shortfalls;
};

struct SynthesisConfig {
    double target_duration_s = 15.0;
    double replace_fraction = 0.25;
    std::uint64_t seed = 0;
    bool compute_features = true;
    PromptTemplates templates = PromptTemplates::defaults();
};

// Runs the four pipelines until the requested per-type counts are met or the
// materials are exhausted. Exhaustion is reported, not fatal. Under the mock
// gateway the whole pool is a pure function of (library, humans, counts,
// seed).
inline PoolResult synthesize_pool(const Library& lib, const std::vector<NewsSample>& human_samples,
                                  const PoolCounts& counts, const SynthesisConfig& cfg,
                                  ModelGateway& gateway) {
    PoolResult result;
    int serial = 0;
    auto next_id = [&serial](FabricationType t) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "-%06d", serial++);
        return "syn-" + fabrication_key(t) + buf;
    };
    auto note_shortfall = [&](FabricationType t, int requested, int produced, std::string reason) {
        if (produced < requested) {
            result.shortfalls.push_back({t, requested, produced, std::move(reason)});
        }
    };

    // T -> TV~: one sample per kept text, in seeded order.
    {
        const FabricationType t = FabricationType::MisleadingSubstitution;
        const int want = counts.of(t);
        std::vector<const TextMaterial*> texts;
        for (const TextMaterial& tm : lib.texts) {
            if (tm.kept && !tm.embedding.empty()) texts.push_back(&tm);
        }
        Rng rng(derive_seed(cfg.seed, "t2tv"));
        rng.shuffle(texts);
        int made = 0;
        for (const TextMaterial* tm : texts) {
            if (made >= want) break;
            try {
                result.samples.push_back(misleading_substitution(*tm, lib, cfg.target_duration_s,
                                                                 next_id(t)));
                ++made;
            } catch (const AssemblyError&) {
                // not enough footage for this text; try the next one
            }
        }
        note_shortfall(t, want, made, "kept texts exhausted or clip assembly fell short");
    }

    // V -> T~V: seeded starting clip, footage assembled around it, narrative
    // on top.
    {
        const FabricationType t = FabricationType::GroundlessFabrication;
        const int want = counts.of(t);
        std::vector<const VisualClip*> seeds;
        for (const VisualClip& c : lib.clips) seeds.push_back(&c);
        Rng rng(derive_seed(cfg.seed, "v2tv"));
        rng.shuffle(seeds);
        int made = 0;
        for (const VisualClip* seed_clip : seeds) {
            if (made >= want) break;
            try {
                std::vector<std::string> ids =
                    assemble_clips(seed_clip->embedding, lib.clip_index(), cfg.target_duration_s);
                std::vector<VisualClip> sequence;
                for (const std::string& id : ids) sequence.push_back(*lib.find_clip(id));
                result.samples.push_back(
                    groundless_fabrication(sequence, gateway, cfg.templates, next_id(t)));
                ++made;
            } catch (const AssemblyError&) {
            }
        }
        note_shortfall(t, want, made, "clip library exhausted");
    }

    // TV -> T~V: one distortion per human sample with text.
    {
        const FabricationType t = FabricationType::FactDistortion;
        const int want = counts.of(t);
        std::vector<const NewsSample*> humans;
        for (const NewsSample& h : human_samples) {
            if (!h.text.empty()) humans.push_back(&h);
        }
        Rng rng(derive_seed(cfg.seed, "tv2tv"));
        rng.shuffle(humans);
        int made = 0;
        for (const NewsSample* h : humans) {
            if (made >= want) break;
            try {
                result.samples.push_back(fact_distortion(*h, gateway, cfg.templates, next_id(t)));
                ++made;
            } catch (const DistortionError&) {
            }
        }
        note_shortfall(t, want, made, "human samples with text exhausted");
    }

    // TV -> TV~: one edit per human sample with enough clips.
    {
        const FabricationType t = FabricationType::SelectiveEditing;
        const int want = counts.of(t);
        std::vector<const NewsSample*> humans;
        for (const NewsSample& h : human_samples) {
            if (h.clips.size() >= 2) humans.push_back(&h);
        }
        Rng rng(derive_seed(cfg.seed, "tv2ttv"));
        rng.shuffle(humans);
        int made = 0;
        for (const NewsSample* h : humans) {
            if (made >= want) break;
            try {
                result.samples.push_back(
                    selective_editing(*h, lib, cfg.replace_fraction, next_id(t)));
                ++made;
            } catch (const ReplacementError&) {
            } catch (const ValidationError&) {
            }
        }
        note_shortfall(t, want, made, "human samples with eligible replacements exhausted");
    }

    if (cfg.compute_features) {
        ensure_feature_caches(result.samples, lib, gateway);
    }
    return result;
}

inline void save_pool_manifest(const std::filesystem::path& path, const PoolResult& pool) {
    save_samples(path, pool.samples);
}

}  // namespace augforge
