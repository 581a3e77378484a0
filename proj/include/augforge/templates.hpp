#pragma once

#include <map>
#include <string>

namespace augforge {

// Prompts live in configuration, not in pipeline code. A template is plain
// text with {placeholder} slots.
struct PromptTemplate {
    std::string id;
    std::string text;
};

struct PromptTemplates {
    PromptTemplate judge_text;
    PromptTemplate annotate_clip;
    PromptTemplate fabricate_narrative;
    PromptTemplate distort_text;

    static PromptTemplates defaults() {
        PromptTemplates t;
        t.judge_text = {"judge_text",
                        "You curate a news-text library. Answer 'keep' if the text below "
                        "carries enough information to present a news event, otherwise "
                        "answer 'drop'.\n\nText ({language}):\n{body}"};
        t.annotate_clip = {"annotate_clip",
                           "Describe the video clip objectively, focusing on key visual "
                           "elements. Classify its type and rate visual quality, "
                           "newsworthiness, and visual impact from 1 to 5 (higher is "
                           "better), with a short justification. Reply as JSON with keys "
                           "description, type, quality, newsworthiness, impact, "
                           "justification.\n\nClip {id} from video {source_video_id}, "
                           "{start_s}s to {end_s}s."};
        t.fabricate_narrative = {"fabricate_narrative",
                                 "Invent a fictional but news-style event description that "
                                 "the following footage could plausibly depict. Write one "
                                 "coherent paragraph.\n\nFootage:\n{descriptions}"};
        t.distort_text = {"distort_text",
                          "Rewrite the news text below, changing factual details (places, "
                          "numbers, outcomes) while keeping it consistent with the same "
                          "footage. The rewrite must differ from the original.\n\n"
                          "Original:\n{text}"};
        return t;
    }
};

// Replaces every "{key}" occurrence with its value. Unknown placeholders are
// left as-is.
inline std::string render_template(const std::string& text,
                                   const std::map<std::string, std::string>& values) {
    std::string out = text;
    for (const auto& [key, value] : values) {
        const std::string needle = "{" + key + "}";
        std::size_t pos = 0;
        while ((pos = out.find(needle, pos)) != std::string::npos) {
            out.replace(pos, needle.size(), value);
            pos += value.size();
        }
    }
    return out;
}

}  // namespace augforge
