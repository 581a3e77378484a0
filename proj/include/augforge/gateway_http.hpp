#pragma once

#include <cstdlib>
#include <memory>
#include <string>

#include "httplib.h"
#include "json.hpp"

#include "augforge/errors.hpp"
#include "augforge/gateway.hpp"

namespace augforge {

// Live HTTP+JSON backend. POST {prompt, params} to <base>/complete and
// {input} to <base>/embed. Endpoint and key come from AUGFORGE_GATEWAY_URL
// and AUGFORGE_GATEWAY_KEY unless given explicitly.
class HttpGateway : public ModelGateway {
public:
    HttpGateway(std::string base_url, std::string api_key, int timeout_ms = 30000)
        : api_key_(std::move(api_key)) {
        split_url(base_url, origin_, path_prefix_);
        client_ = std::make_unique<httplib::Client>(origin_);
        client_->set_connection_timeout(0, timeout_ms * 1000LL);
        client_->set_read_timeout(timeout_ms / 1000, (timeout_ms % 1000) * 1000);
        client_->set_write_timeout(timeout_ms / 1000, (timeout_ms % 1000) * 1000);
        if (!api_key_.empty()) {
            client_->set_default_headers({{"Authorization", "Bearer " + api_key_}});
        }
    }

    static std::unique_ptr<HttpGateway> from_env(int timeout_ms = 30000) {
        const char* url = std::getenv("AUGFORGE_GATEWAY_URL");
        if (url == nullptr || *url == '\0') {
            throw ValidationError("AUGFORGE_GATEWAY_URL is not set; use --gateway mock or export it");
        }
        const char* key = std::getenv("AUGFORGE_GATEWAY_KEY");
        return std::make_unique<HttpGateway>(url, key ? key : "", timeout_ms);
    }

    std::string complete(const GatewayRequest& req) override {
        nlohmann::json body;
        body["prompt"] = req.prompt;
        body["params"] = {{"max_tokens", req.params.max_tokens},
                          {"temperature", req.params.temperature},
                          {"template_id", req.params.template_id}};
        nlohmann::json resp = post_json("/complete", body);
        if (!resp.contains("text") || !resp["text"].is_string()) {
            throw GatewayError("gateway /complete response missing 'text'");
        }
        return resp["text"].get<std::string>();
    }

    Vec embed(const std::string& text) override {
        nlohmann::json body;
        body["input"] = text;
        nlohmann::json resp = post_json("/embed", body);
        if (!resp.contains("embedding") || !resp["embedding"].is_array()) {
            throw GatewayError("gateway /embed response missing 'embedding'");
        }
        Vec v;
        v.reserve(resp["embedding"].size());
        for (const auto& x : resp["embedding"]) {
            if (!x.is_number()) throw GatewayError("gateway /embed returned non-numeric values");
            v.push_back(x.get<double>());
        }
        return v;
    }

private:
    nlohmann::json post_json(const std::string& route, const nlohmann::json& body) {
        auto res = client_->Post(path_prefix_ + route, body.dump(), "application/json");
        if (!res) {
            bool timeout = res.error() == httplib::Error::ConnectionTimeout ||
                           res.error() == httplib::Error::Read ||
                           res.error() == httplib::Error::Write;
            throw GatewayError("gateway request failed: " + httplib::to_string(res.error()), 1,
                               timeout);
        }
        if (res->status >= 500) {
            throw GatewayError("gateway returned status " + std::to_string(res->status));
        }
        if (res->status != 200) {
            throw ValidationError("gateway rejected request with status " +
                                  std::to_string(res->status) + ": " + res->body);
        }
        try {
            return nlohmann::json::parse(res->body);
        } catch (const nlohmann::json::exception& e) {
            throw GatewayError(std::string("gateway returned invalid JSON: ") + e.what());
        }
    }

    // "http://host:port/some/prefix" -> origin + path prefix.
    static void split_url(const std::string& url, std::string& origin, std::string& prefix) {
        std::size_t scheme_end = url.find("://");
        std::size_t path_start =
            url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
        if (path_start == std::string::npos) {
            origin = url;
            prefix.clear();
        } else {
            origin = url.substr(0, path_start);
            prefix = url.substr(path_start);
            while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
        }
    }

    std::string api_key_;
    std::string origin_;
    std::string path_prefix_;
    std::unique_ptr<httplib::Client> client_;
};

}  // namespace augforge
