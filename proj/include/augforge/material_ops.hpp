#pragma once

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "augforge/errors.hpp"
#include "augforge/gateway.hpp"
#include "augforge/materials.hpp"
#include "augforge/templates.hpp"

namespace augforge {

struct RawText {
    std::string id;
    std::string language;
    std::string body;
    std::string source_id;
};

namespace detail {

inline std::string trimmed(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::string lowered(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Runs fn(i) for i in [0, n) on up to `jobs` worker threads. Results land in
// pre-sized slots, so output order never depends on scheduling; when several
// items fail, the lowest-index error is rethrown.
template <typename Fn>
void parallel_for_indexed(std::size_t n, int jobs, Fn&& fn) {
    if (n == 0) return;
    if (jobs <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (std::thread& t : threads) t.join();
    for (const std::exception_ptr& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace detail

// Judges every raw text through the gateway and embeds the kept ones.
// Returns one TextMaterial per input: kept=true iff the verdict starts with
// "keep" and the body is non-empty after trimming. Empty bodies are dropped
// without consuming a gateway call.
inline std::vector<TextMaterial> filter_texts(const std::vector<RawText>& raw,
                                              ModelGateway& judge,
                                              const PromptTemplates& templates,
                                              int jobs = 1) {
    std::vector<TextMaterial> out(raw.size());
    detail::parallel_for_indexed(raw.size(), jobs, [&](std::size_t i) {
        const RawText& r = raw[i];
        TextMaterial t;
        t.id = r.id;
        t.language = r.language;
        t.body = r.body;
        t.source_id = r.source_id;
        t.kept = false;
        if (!detail::trimmed(r.body).empty()) {
            GatewayRequest req;
            req.kind = RequestKind::Complete;
            req.params.template_id = templates.judge_text.id;
            req.prompt = render_template(templates.judge_text.text,
                                         {{"language", r.language}, {"body", r.body}});
            try {
                std::string verdict = detail::lowered(detail::trimmed(judge.complete(req)));
                t.kept = verdict.rfind("keep", 0) == 0;
                if (t.kept) t.embedding = judge.embed(r.body);
            } catch (const GatewayError& e) {
                throw GatewayError("text " + r.id + ": " + e.what(), e.attempts(), e.timed_out());
            }
        }
        out[i] = std::move(t);
    });
    return out;
}

// Annotates one clip: description, type, three 1..5 scores, justification,
// and an embedding of the description. Unrecognized type labels fall back to
// Other(label); scores outside 1..5 are rejected rather than clamped, since
// silent clamping would mask prompt regressions.
inline VisualClip annotate_clip(const VisualClip& clip, ModelGateway& vlm,
                                const PromptTemplates& templates) {
    clip.validate_timestamps();

    GatewayRequest req;
    req.kind = RequestKind::Complete;
    req.params.template_id = templates.annotate_clip.id;
    req.prompt = render_template(templates.annotate_clip.text,
                                 {{"id", clip.id},
                                  {"source_video_id", clip.source_video_id},
                                  {"start_s", std::to_string(clip.start_s)},
                                  {"end_s", std::to_string(clip.end_s)}});
    std::string raw;
    try {
        raw = vlm.complete(req);
    } catch (const GatewayError& e) {
        throw GatewayError("clip " + clip.id + ": " + e.what(), e.attempts(), e.timed_out());
    }

    nlohmann::json j;
    try {
        j = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::exception&) {
        throw AnnotationError("clip " + clip.id + ": annotation response is not valid JSON", raw);
    }
    if (!j.is_object() || !j.contains("description") || !j["description"].is_string() ||
        !j.contains("type") || !j["type"].is_string()) {
        throw AnnotationError("clip " + clip.id + ": annotation response missing fields", raw);
    }

    VisualClip annotated = clip;
    annotated.description = j["description"].get<std::string>();
    if (annotated.description.empty()) {
        throw AnnotationError("clip " + clip.id + ": empty description", raw);
    }
    annotated.clip_type = ClipType::parse(j["type"].get<std::string>());

    auto read_score = [&](const char* key) {
        if (!j.contains(key) || !j[key].is_number_integer()) {
            throw AnnotationError("clip " + clip.id + ": missing integer score '" +
                                      std::string(key) + "'",
                                  raw);
        }
        int v = j[key].get<int>();
        if (v < 1 || v > 5) {
            throw ValidationError("clip " + clip.id + ": score '" + key + "' = " +
                                  std::to_string(v) + " outside 1..5");
        }
        return v;
    };
    annotated.score_quality = read_score("quality");
    annotated.score_newsworthiness = read_score("newsworthiness");
    annotated.score_impact = read_score("impact");
    annotated.justification = j.value("justification", std::string{});
    annotated.embedding = vlm.embed(annotated.description);
    return annotated;
}

inline std::vector<VisualClip> annotate_clips(const std::vector<VisualClip>& clips,
                                              ModelGateway& vlm,
                                              const PromptTemplates& templates, int jobs = 1) {
    std::vector<VisualClip> out(clips.size());
    detail::parallel_for_indexed(clips.size(), jobs,
                                 [&](std::size_t i) { out[i] = annotate_clip(clips[i], vlm, templates); });
    return out;
}

// Drops short or low-value clips: a clip survives iff its duration is at
// least min_duration_s and its three scores sum to at least min_score_sum.
// Input order is preserved; the result is a subsequence of the input.
inline std::vector<VisualClip> filter_clips(const std::vector<VisualClip>& clips,
                                            double min_duration_s, int min_score_sum) {
    std::vector<VisualClip> out;
    for (const VisualClip& c : clips) {
        if (c.duration_s() >= min_duration_s && c.score_sum() >= min_score_sum) {
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace augforge
