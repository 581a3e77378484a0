#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "augforge/json_io.hpp"
#include "augforge/materials.hpp"

namespace augforge {

// A persisted library is a directory with texts.jsonl, clips.jsonl and
// meta.json. Embeddings are stored as JSON arrays of decimal floats; the
// serializer emits shortest round-trip representations, so save/load is
// value-exact.

inline void save_library(const Library& lib, const std::filesystem::path& dir) {
    lib.validate();
    std::filesystem::create_directories(dir);

    std::vector<json> text_lines;
    text_lines.reserve(lib.texts.size());
    for (const TextMaterial& t : lib.texts) text_lines.push_back(to_json(t));
    write_jsonl_atomic(dir / "texts.jsonl", text_lines);

    std::vector<json> clip_lines;
    clip_lines.reserve(lib.clips.size());
    for (const VisualClip& c : lib.clips) clip_lines.push_back(to_json(c));
    write_jsonl_atomic(dir / "clips.jsonl", clip_lines);

    json meta;
    meta["embedding_dim"] = lib.embedding_dim;
    meta["provenance_tag"] = lib.provenance_tag;
    meta["text_count"] = lib.texts.size();
    meta["clip_count"] = lib.clips.size();
    atomic_write_text(dir / "meta.json", meta.dump(2) + "\n");
}

inline Library load_library(const std::filesystem::path& dir) {
    const auto meta_path = dir / "meta.json";
    json meta = read_json_file(meta_path);

    Library lib;
    try {
        lib.embedding_dim = detail::field(meta, "embedding_dim").get<std::size_t>();
        lib.provenance_tag = detail::field(meta, "provenance_tag").get<std::string>();
    } catch (const ValidationError& e) {
        throw LoadError(e.what(), meta_path.string());
    }

    lib.texts = parse_jsonl_records<TextMaterial>(dir / "texts.jsonl", text_material_from_json);
    lib.clips = parse_jsonl_records<VisualClip>(dir / "clips.jsonl", visual_clip_from_json);

    if (meta.value("text_count", lib.texts.size()) != lib.texts.size()) {
        throw LoadError("text_count in meta.json does not match texts.jsonl", meta_path.string());
    }
    if (meta.value("clip_count", lib.clips.size()) != lib.clips.size()) {
        throw LoadError("clip_count in meta.json does not match clips.jsonl", meta_path.string());
    }

    try {
        lib.validate();
    } catch (const ValidationError& e) {
        throw LoadError(e.what(), dir.string());
    }
    return lib;
}

}  // namespace augforge
