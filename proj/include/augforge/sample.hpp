#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "augforge/errors.hpp"
#include "augforge/vec.hpp"

namespace augforge {

// The four fabrication signatures. Wire keys encode the modality edit:
// t2tv keeps the text and substitutes visuals, v2tv keeps the visuals and
// fabricates text, tv2tv distorts the text of a full sample, tv2ttv edits
// the visuals of a full sample.
enum class FabricationType {
    MisleadingSubstitution,  // t2tv
    GroundlessFabrication,   // v2tv
    FactDistortion,          // tv2tv
    SelectiveEditing,        // tv2ttv
};

constexpr std::array<FabricationType, 4> kAllFabricationTypes = {
    FabricationType::MisleadingSubstitution,
    FabricationType::GroundlessFabrication,
    FabricationType::FactDistortion,
    FabricationType::SelectiveEditing,
};

inline std::string fabrication_key(FabricationType t) {
    switch (t) {
        case FabricationType::MisleadingSubstitution: return "t2tv";
        case FabricationType::GroundlessFabrication: return "v2tv";
        case FabricationType::FactDistortion: return "tv2tv";
        case FabricationType::SelectiveEditing: return "tv2ttv";
    }
    throw ValidationError("invalid fabrication type");
}

inline FabricationType parse_fabrication_type(const std::string& key) {
    if (key == "t2tv") return FabricationType::MisleadingSubstitution;
    if (key == "v2tv") return FabricationType::GroundlessFabrication;
    if (key == "tv2tv") return FabricationType::FactDistortion;
    if (key == "tv2ttv") return FabricationType::SelectiveEditing;
    throw ValidationError("unknown fabrication type '" + key + "'");
}

enum class Label { Real, Fake };

inline std::string label_key(Label l) { return l == Label::Fake ? "fake" : "real"; }

inline Label parse_label(const std::string& key) {
    if (key == "real") return Label::Real;
    if (key == "fake") return Label::Fake;
    throw ValidationError("unknown label '" + key + "'");
}

struct Provenance {
    enum class Origin { Human, Synthesized };

    Origin origin = Origin::Human;
    std::optional<FabricationType> fabrication;  // set iff Synthesized

    bool operator==(const Provenance&) const = default;

    static Provenance human() { return {Origin::Human, std::nullopt}; }
    static Provenance synthesized(FabricationType t) { return {Origin::Synthesized, t}; }

    bool is_synthesized() const { return origin == Origin::Synthesized; }

    std::string str() const {
        return is_synthesized() ? fabrication_key(*fabrication) : std::string("human");
    }
};

// One edit-decision-list slot: a clip reference plus the duration it
// occupies in the assembled sample.
struct ClipSlot {
    std::string clip_id;
    double duration_s = 0.0;

    bool operator==(const ClipSlot&) const = default;
};

// A news sample is text plus an ordered clip sequence; no media is ever
// rendered. Synthesized samples are always Fake.
struct NewsSample {
    std::string id;
    std::string text;
    std::vector<ClipSlot> clips;
    Label label = Label::Real;
    Provenance provenance;
    std::optional<std::string> source_video_id;
    Vec feature_cache;  // empty means "not computed"

    bool operator==(const NewsSample&) const = default;

    void validate() const {
        if (id.empty()) throw ValidationError("sample with empty id");
        if (provenance.is_synthesized() && label != Label::Fake) {
            throw ValidationError("sample " + id + ": synthesized samples must be labeled fake");
        }
        if (clips.empty()) throw ValidationError("sample " + id + ": no clips");
        for (const ClipSlot& s : clips) {
            if (s.clip_id.empty()) throw ValidationError("sample " + id + ": empty clip id");
        }
    }
};

}  // namespace augforge
