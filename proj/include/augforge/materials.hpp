#pragma once

#include <cctype>
#include <set>
#include <string>
#include <vector>

#include "augforge/errors.hpp"
#include "augforge/index.hpp"
#include "augforge/vec.hpp"

namespace augforge {

// Clip category as labelled by the vision model. The taxonomy is open-ended:
// the four named kinds are recognized, anything else is kept verbatim under
// Other.
struct ClipType {
    enum class Kind { RealShotVideo, RealShotPhoto, Interview, Screenshot, Other };

    Kind kind = Kind::Other;
    std::string label;  // raw label, only meaningful for Other

    bool operator==(const ClipType&) const = default;

    static ClipType real_shot_video() { return {Kind::RealShotVideo, {}}; }
    static ClipType real_shot_photo() { return {Kind::RealShotPhoto, {}}; }
    static ClipType interview() { return {Kind::Interview, {}}; }
    static ClipType screenshot() { return {Kind::Screenshot, {}}; }
    static ClipType other(std::string raw) { return {Kind::Other, std::move(raw)}; }

    // Tolerant parse: case, spaces, hyphens and underscores are ignored when
    // matching the known kinds; unrecognized labels become Other(raw).
    static ClipType parse(const std::string& raw) {
        std::string norm;
        for (char c : raw) {
            if (c == ' ' || c == '-' || c == '_') continue;
            norm.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
        if (norm == "realshotvideo") return real_shot_video();
        if (norm == "realshotphoto") return real_shot_photo();
        if (norm == "interview") return interview();
        if (norm == "screenshot") return screenshot();
        return other(raw);
    }

    std::string str() const {
        switch (kind) {
            case Kind::RealShotVideo: return "real_shot_video";
            case Kind::RealShotPhoto: return "real_shot_photo";
            case Kind::Interview: return "interview";
            case Kind::Screenshot: return "screenshot";
            case Kind::Other: return label;
        }
        return label;
    }
};

struct TextMaterial {
    std::string id;
    std::string language;  // ISO-639 code
    std::string body;
    Vec embedding;  // unit-norm, dim D; empty means "not embedded"
    std::string source_id;
    bool kept = false;

    bool operator==(const TextMaterial&) const = default;
};

struct VisualClip {
    std::string id;
    std::string source_video_id;
    double start_s = 0.0;
    double end_s = 0.0;
    std::string description;
    ClipType clip_type;
    int score_quality = 0;       // 1..5 once annotated
    int score_newsworthiness = 0;
    int score_impact = 0;
    std::string justification;
    Vec embedding;  // unit-norm embedding of the description

    bool operator==(const VisualClip&) const = default;

    double duration_s() const { return end_s - start_s; }
    int score_sum() const { return score_quality + score_newsworthiness + score_impact; }
    bool annotated() const { return !description.empty(); }

    void validate_timestamps() const {
        if (!(start_s < end_s)) {
            throw ValidationError("clip " + id + ": start_s must be < end_s");
        }
    }

    void validate_annotation() const {
        validate_timestamps();
        if (description.empty()) throw ValidationError("clip " + id + ": empty description");
        for (int s : {score_quality, score_newsworthiness, score_impact}) {
            if (s < 1 || s > 5) {
                throw ValidationError("clip " + id + ": score " + std::to_string(s) +
                                      " outside 1..5");
            }
        }
    }
};

// The archived material pool: filtered texts plus annotated clips, all
// embedded in one D-dimensional space. Immutable after construction; safe
// for concurrent reads.
struct Library {
    std::vector<TextMaterial> texts;
    std::vector<VisualClip> clips;
    std::size_t embedding_dim = 0;
    std::string provenance_tag;

    bool operator==(const Library&) const = default;

    const VisualClip* find_clip(const std::string& id) const {
        for (const VisualClip& c : clips) {
            if (c.id == id) return &c;
        }
        return nullptr;
    }

    std::vector<IndexEntry> clip_index() const {
        std::vector<IndexEntry> idx;
        idx.reserve(clips.size());
        for (const VisualClip& c : clips) {
            idx.push_back({c.id, c.embedding, c.duration_s(), c.source_video_id});
        }
        return idx;
    }

    void validate() const {
        std::set<std::string> ids;
        for (const TextMaterial& t : texts) {
            if (!ids.insert(t.id).second) throw ValidationError("duplicate id " + t.id);
            check_dim(t.embedding, t.id);
        }
        for (const VisualClip& c : clips) {
            if (!ids.insert(c.id).second) throw ValidationError("duplicate id " + c.id);
            c.validate_annotation();
            if (c.embedding.empty()) throw ValidationError("clip " + c.id + ": missing embedding");
            check_dim(c.embedding, c.id);
        }
    }

private:
    void check_dim(const Vec& v, const std::string& id) const {
        if (v.empty()) return;
        if (v.size() != embedding_dim) {
            throw ValidationError("entry " + id + ": embedding dim " + std::to_string(v.size()) +
                                  " != library dim " + std::to_string(embedding_dim));
        }
        if (!is_unit_norm(v)) {
            throw ValidationError("entry " + id + ": embedding is not unit-norm");
        }
    }
};

}  // namespace augforge
