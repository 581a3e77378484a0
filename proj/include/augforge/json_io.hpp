#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "augforge/errors.hpp"
#include "augforge/materials.hpp"
#include "augforge/sample.hpp"

namespace augforge {

using json = nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ValidationError(std::string("missing field '") + key + "'");
    return *it;
}

inline Vec vec_from_json(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return {};
    if (!it->is_array()) throw ValidationError(std::string("field '") + key + "' must be an array");
    Vec v;
    v.reserve(it->size());
    for (const auto& x : *it) {
        if (!x.is_number()) throw ValidationError(std::string("field '") + key + "' must be numeric");
        v.push_back(x.get<double>());
    }
    return v;
}

}  // namespace detail

// --- material library records ------------------------------------------

inline json to_json(const TextMaterial& t) {
    json j;
    j["id"] = t.id;
    j["language"] = t.language;
    j["body"] = t.body;
    j["embedding"] = t.embedding;
    j["source_id"] = t.source_id;
    j["kept"] = t.kept;
    return j;
}

inline TextMaterial text_material_from_json(const json& j) {
    TextMaterial t;
    t.id = detail::field(j, "id").get<std::string>();
    t.language = detail::field(j, "language").get<std::string>();
    t.body = detail::field(j, "body").get<std::string>();
    t.embedding = detail::vec_from_json(j, "embedding");
    t.source_id = detail::field(j, "source_id").get<std::string>();
    t.kept = detail::field(j, "kept").get<bool>();
    return t;
}

inline json to_json(const VisualClip& c) {
    json j;
    j["id"] = c.id;
    j["source_video_id"] = c.source_video_id;
    j["start_s"] = c.start_s;
    j["end_s"] = c.end_s;
    j["duration_s"] = c.duration_s();
    j["description"] = c.description;
    j["clip_type"] = c.clip_type.str();
    j["score_quality"] = c.score_quality;
    j["score_newsworthiness"] = c.score_newsworthiness;
    j["score_impact"] = c.score_impact;
    j["justification"] = c.justification;
    j["embedding"] = c.embedding;
    return j;
}

inline VisualClip visual_clip_from_json(const json& j) {
    VisualClip c;
    c.id = detail::field(j, "id").get<std::string>();
    c.source_video_id = detail::field(j, "source_video_id").get<std::string>();
    c.start_s = detail::field(j, "start_s").get<double>();
    c.end_s = detail::field(j, "end_s").get<double>();
    c.description = j.value("description", std::string{});
    c.clip_type = ClipType::parse(j.value("clip_type", std::string{}));
    c.score_quality = j.value("score_quality", 0);
    c.score_newsworthiness = j.value("score_newsworthiness", 0);
    c.score_impact = j.value("score_impact", 0);
    c.justification = j.value("justification", std::string{});
    c.embedding = detail::vec_from_json(j, "embedding");
    return c;
}

// --- news samples --------------------------------------------------------

inline json to_json(const NewsSample& s) {
    json j;
    j["id"] = s.id;
    j["text"] = s.text;
    json clips = json::array();
    for (const ClipSlot& slot : s.clips) {
        clips.push_back({{"clip_id", slot.clip_id}, {"duration_s", slot.duration_s}});
    }
    j["clips"] = std::move(clips);
    j["label"] = label_key(s.label);
    j["provenance"] = s.provenance.is_synthesized() ? "synthesized" : "human";
    if (s.provenance.is_synthesized()) {
        j["fabrication_type"] = fabrication_key(*s.provenance.fabrication);
    }
    if (s.source_video_id) j["source_video_id"] = *s.source_video_id;
    if (!s.feature_cache.empty()) j["feature_cache"] = s.feature_cache;
    return j;
}

inline NewsSample news_sample_from_json(const json& j) {
    NewsSample s;
    s.id = detail::field(j, "id").get<std::string>();
    s.text = detail::field(j, "text").get<std::string>();
    const json& clips = detail::field(j, "clips");
    if (!clips.is_array()) throw ValidationError("field 'clips' must be an array");
    for (const auto& c : clips) {
        s.clips.push_back({detail::field(c, "clip_id").get<std::string>(),
                           detail::field(c, "duration_s").get<double>()});
    }
    s.label = parse_label(detail::field(j, "label").get<std::string>());
    std::string prov = detail::field(j, "provenance").get<std::string>();
    if (prov == "human") {
        s.provenance = Provenance::human();
    } else if (prov == "synthesized") {
        s.provenance = Provenance::synthesized(
            parse_fabrication_type(detail::field(j, "fabrication_type").get<std::string>()));
    } else {
        throw ValidationError("unknown provenance '" + prov + "'");
    }
    if (j.contains("source_video_id") && !j["source_video_id"].is_null()) {
        s.source_video_id = j["source_video_id"].get<std::string>();
    }
    s.feature_cache = detail::vec_from_json(j, "feature_cache");
    s.validate();
    return s;
}

// --- JSON Lines and atomic files -----------------------------------------

// Writes content to path atomically (temp file in the same directory, then
// rename), so interrupted runs never leave half-written manifests.
inline void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) throw Error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline void write_jsonl_atomic(const std::filesystem::path& path, const std::vector<json>& lines) {
    std::string content;
    for (const json& j : lines) {
        content += j.dump();
        content += '\n';
    }
    atomic_write_text(path, content);
}

// Parses a JSON Lines file; errors cite path and 1-based line number. Blank
// lines are rejected (a truncated manifest should not pass silently).
inline std::vector<json> read_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot open file", path.string());
    std::vector<json> out;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) throw LoadError("blank line in manifest", path.string(), line_no);
        try {
            out.push_back(json::parse(line));
        } catch (const json::exception& e) {
            throw LoadError(std::string("invalid JSON: ") + e.what(), path.string(), line_no);
        }
    }
    return out;
}

template <typename T, typename FromJson>
std::vector<T> parse_jsonl_records(const std::filesystem::path& path, FromJson&& from) {
    std::vector<json> lines = read_jsonl(path);
    std::vector<T> out;
    out.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        try {
            out.push_back(from(lines[i]));
        } catch (const ValidationError& e) {
            throw LoadError(e.what(), path.string(), static_cast<long>(i + 1));
        }
    }
    return out;
}

inline std::vector<NewsSample> load_samples(const std::filesystem::path& path) {
    return parse_jsonl_records<NewsSample>(path, news_sample_from_json);
}

inline void save_samples(const std::filesystem::path& path, const std::vector<NewsSample>& samples) {
    std::vector<json> lines;
    lines.reserve(samples.size());
    for (const NewsSample& s : samples) lines.push_back(to_json(s));
    write_jsonl_atomic(path, lines);
}

inline json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open file", path.string());
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::exception& e) {
        throw LoadError(std::string("invalid JSON: ") + e.what(), path.string());
    }
}

}  // namespace augforge
