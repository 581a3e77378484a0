#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <string_view>

#include "json.hpp"

#include "augforge/errors.hpp"
#include "augforge/gateway.hpp"
#include "augforge/rng.hpp"
#include "augforge/vec.hpp"

namespace augforge {

inline std::string prompt_hash_hex(std::string_view prompt) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(prompt)));
    return buf;
}

inline std::string fixture_key(const std::string& template_id, std::string_view prompt) {
    return template_id + ":" + prompt_hash_hex(prompt);
}

// Canned responses keyed by "<template_id>:<prompt-hash-hex>". A JSON object
// file; values are the raw completion strings.
struct MockFixtures {
    std::map<std::string, std::string> responses;

    static MockFixtures load(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw LoadError("cannot open fixtures file", path.string());
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw LoadError(std::string("bad fixtures JSON: ") + e.what(), path.string());
        }
        if (!j.is_object()) throw LoadError("fixtures file must hold a JSON object", path.string());
        MockFixtures f;
        for (const auto& [k, v] : j.items()) {
            if (!v.is_string()) throw LoadError("fixture value for '" + k + "' must be a string",
                                                path.string());
            f.responses[k] = v.get<std::string>();
        }
        return f;
    }
};

// Deterministic stand-in for the live completion/embedding service. Every
// response is a pure function of (seed, request): fixture lookup first, then
// a template-aware synthesized fallback. Tests and full pipeline runs under
// this backend are bit-reproducible.
class MockGateway : public ModelGateway {
public:
    explicit MockGateway(std::uint64_t seed = 0, std::size_t embed_dim = 32,
                         MockFixtures fixtures = {})
        : seed_(seed), embed_dim_(embed_dim), fixtures_(std::move(fixtures)) {
        if (embed_dim_ == 0) throw ValidationError("mock gateway: embed_dim must be > 0");
    }

    std::string complete(const GatewayRequest& req) override {
        if (req.prompt.empty()) throw ValidationError("complete: empty prompt");
        auto it = fixtures_.responses.find(fixture_key(req.params.template_id, req.prompt));
        if (it != fixtures_.responses.end()) return it->second;
        return synthesize(req);
    }

    Vec embed(const std::string& text) override {
        if (text.empty()) throw ValidationError("embed: empty text");
        std::uint64_t s = derive_seed(seed_, fnv1a64(text));
        Vec v(embed_dim_);
        Rng rng(s);
        for (double& x : v) x = rng.next_unit() * 2.0 - 1.0;
        return normalized(std::move(v));
    }

private:
    std::string synthesize(const GatewayRequest& req) const {
        std::uint64_t h = derive_seed(seed_, fnv1a64(req.prompt));
        Rng rng(h);
        const std::string& tid = req.params.template_id;
        if (tid == "judge_text") return "keep";
        if (tid == "annotate_clip") return synth_annotation(rng);
        if (tid == "fabricate_narrative") return synth_narrative(rng);
        if (tid == "distort_text") {
            return "Contrary to earlier reports, " + synth_narrative(rng);
        }
        return "mock-completion-" + prompt_hash_hex(req.prompt);
    }

    static const char* pick(Rng& rng, const char* const* words, std::size_t n) {
        return words[rng.next_below(n)];
    }

    static std::string synth_phrase(Rng& rng) {
        static constexpr std::array<const char*, 12> subjects = {
            "rescue crews",   "local officials", "residents",      "firefighters",
            "a delegation",   "volunteers",      "investigators",  "emergency teams",
            "farmers",        "commuters",       "engineers",      "medical staff"};
        static constexpr std::array<const char*, 12> actions = {
            "gather near",   "inspect",      "evacuate",     "surround",
            "document",      "repair",       "search",       "monitor",
            "block",         "clear",        "survey",       "assist at"};
        static constexpr std::array<const char*, 12> scenes = {
            "a flooded street",   "a collapsed bridge", "a market square",
            "a burning warehouse","a rail crossing",    "an airport terminal",
            "a coastal village",  "a grain field",      "a power station",
            "a mountain road",    "a river embankment", "a construction site"};
        std::string s = pick(rng, subjects.data(), subjects.size());
        s += " ";
        s += pick(rng, actions.data(), actions.size());
        s += " ";
        s += pick(rng, scenes.data(), scenes.size());
        return s;
    }

    static std::string synth_narrative(Rng& rng) {
        std::string s = "In a developing story, ";
        s += synth_phrase(rng);
        s += " while ";
        s += synth_phrase(rng);
        s += ".";
        return s;
    }

    static std::string synth_annotation(Rng& rng) {
        static constexpr std::array<const char*, 6> types = {
            "real-shot video", "real-shot photo", "interview",
            "screenshot",      "map animation",   "drone footage"};
        nlohmann::json j;
        j["description"] = synth_phrase(rng);
        j["type"] = pick(rng, types.data(), types.size());
        j["quality"] = static_cast<int>(1 + rng.next_below(5));
        j["newsworthiness"] = static_cast<int>(1 + rng.next_below(5));
        j["impact"] = static_cast<int>(1 + rng.next_below(5));
        j["justification"] = std::string("clear framing of ") + synth_phrase(rng);
        return j.dump();
    }

    std::uint64_t seed_;
    std::size_t embed_dim_;
    MockFixtures fixtures_;
};

}  // namespace augforge
