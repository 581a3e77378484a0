#pragma once

#include <string>
#include <vector>

#include "augforge/errors.hpp"
#include "augforge/gateway.hpp"
#include "augforge/material_ops.hpp"
#include "augforge/materials.hpp"
#include "augforge/sample.hpp"
#include "augforge/vec.hpp"

namespace augforge {

// Reference feature map: mean of the sample's clip embeddings concatenated
// with the embedding of its text (dimension 2D). Labels never enter.
inline Vec compute_feature_vector(const NewsSample& sample, const Library& lib,
                                  ModelGateway& embedder) {
    if (sample.clips.empty()) {
        throw ValidationError("sample " + sample.id + ": no clips to featurize");
    }
    Vec mean(lib.embedding_dim, 0.0);
    for (const ClipSlot& slot : sample.clips) {
        const VisualClip* clip = lib.find_clip(slot.clip_id);
        if (clip == nullptr) {
            throw ValidationError("sample " + sample.id + ": clip " + slot.clip_id +
                                  " not found in library");
        }
        if (clip->embedding.size() != lib.embedding_dim) {
            throw ValidationError("clip " + clip->id + ": embedding dim mismatch");
        }
        for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += clip->embedding[j];
    }
    for (double& x : mean) x /= static_cast<double>(sample.clips.size());

    Vec text_emb = embedder.embed(sample.text.empty() ? std::string(" ") : sample.text);
    if (text_emb.size() != lib.embedding_dim) {
        throw ValidationError("text embedding dim " + std::to_string(text_emb.size()) +
                              " does not match library dim " + std::to_string(lib.embedding_dim));
    }

    Vec out;
    out.reserve(2 * lib.embedding_dim);
    out.insert(out.end(), mean.begin(), mean.end());
    out.insert(out.end(), text_emb.begin(), text_emb.end());
    return out;
}

// Fills missing feature caches in place; samples that already carry one are
// left untouched.
inline void ensure_feature_caches(std::vector<NewsSample>& samples, const Library& lib,
                                  ModelGateway& embedder, int jobs = 1) {
    detail::parallel_for_indexed(samples.size(), jobs, [&](std::size_t i) {
        if (samples[i].feature_cache.empty()) {
            samples[i].feature_cache = compute_feature_vector(samples[i], lib, embedder);
        }
    });
}

}  // namespace augforge
