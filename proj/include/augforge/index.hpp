#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "augforge/errors.hpp"
#include "augforge/vec.hpp"

namespace augforge {

// One searchable library entry. duration_s is 0 for text entries.
struct IndexEntry {
    std::string id;
    Vec vector;
    double duration_s = 0.0;
    std::string source_video_id;
};

struct ScoredId {
    std::string id;
    double score = 0.0;

    bool operator==(const ScoredId&) const = default;
};

// Exact top-k cosine retrieval: full scan, sorted by score descending with
// ties broken by ascending id. Pools here are tens of thousands of entries
// at most, so exhaustive scan is both fast enough and trivially auditable.
inline std::vector<ScoredId> top_k(const Vec& query, const std::vector<IndexEntry>& index,
                                   int k, const std::set<std::string>& exclude = {}) {
    if (k < 1) throw ValidationError("top_k: k must be >= 1");
    std::vector<ScoredId> scored;
    scored.reserve(index.size());
    for (const IndexEntry& e : index) {
        if (exclude.count(e.id)) continue;
        scored.push_back({e.id, cosine(query, e.vector)});
    }
    std::sort(scored.begin(), scored.end(), [](const ScoredId& a, const ScoredId& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.id < b.id;
    });
    if (scored.size() > static_cast<std::size_t>(k)) scored.resize(static_cast<std::size_t>(k));
    return scored;
}

// Greedy duration-constrained assembly: repeatedly append the most similar
// unused clip until the cumulative duration reaches the target. Overshoot is
// allowed; clips are never repeated within one assembly. Throws
// AssemblyError (carrying the achieved duration) when the index runs out
// first.
inline std::vector<std::string> assemble_clips(const Vec& query,
                                               const std::vector<IndexEntry>& index,
                                               double target_duration_s) {
    if (target_duration_s <= 0.0) throw ValidationError("assemble_clips: target duration must be > 0");
    if (index.empty()) throw ValidationError("assemble_clips: empty index");

    // With a fixed query the greedy loop is exactly the ranked prefix.
    std::vector<const IndexEntry*> ranked;
    ranked.reserve(index.size());
    for (const IndexEntry& e : index) ranked.push_back(&e);
    std::vector<double> score(index.size());
    for (std::size_t i = 0; i < index.size(); ++i) score[i] = cosine(query, index[i].vector);
    std::sort(ranked.begin(), ranked.end(), [&](const IndexEntry* a, const IndexEntry* b) {
        double sa = score[static_cast<std::size_t>(a - index.data())];
        double sb = score[static_cast<std::size_t>(b - index.data())];
        if (sa != sb) return sa > sb;
        return a->id < b->id;
    });

    std::vector<std::string> picked;
    double total = 0.0;
    for (const IndexEntry* e : ranked) {
        picked.push_back(e->id);
        total += e->duration_s;
        if (total >= target_duration_s) return picked;
    }
    throw AssemblyError("assemble_clips: index exhausted at " + std::to_string(total) +
                            " s before reaching target",
                        total);
}

}  // namespace augforge
