#pragma once

#include <chrono>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "augforge/errors.hpp"
#include "augforge/vec.hpp"

namespace augforge {

enum class RequestKind { Complete, Embed };

struct GatewayParams {
    int max_tokens = 512;
    double temperature = 0.7;
    std::string template_id;
};

struct GatewayRequest {
    RequestKind kind = RequestKind::Complete;
    std::string prompt;
    GatewayParams params;
};

struct GatewayPolicy {
    int max_retries = 3;
    int backoff_base_ms = 100;
    int max_in_flight = 4;
    int timeout_ms = 30000;

    void validate() const {
        if (max_retries <= 0 || backoff_base_ms <= 0 || max_in_flight <= 0 || timeout_ms <= 0) {
            throw ValidationError("gateway policy fields must all be positive");
        }
    }
};

// Uniform protocol for text completion and text embedding. Vision inputs are
// passed as textual clip descriptions; no backend ever touches pixels.
class ModelGateway {
public:
    virtual ~ModelGateway() = default;

    // Returns non-empty completion text or throws GatewayError.
    virtual std::string complete(const GatewayRequest& req) = 0;

    // Returns a unit-norm embedding of the text.
    virtual Vec embed(const std::string& text) = 0;
};

// Counting gate on concurrent backend calls.
class RequestLimiter {
public:
    explicit RequestLimiter(int max_in_flight) : available_(max_in_flight) {}

    class Guard {
    public:
        explicit Guard(RequestLimiter& limiter) : limiter_(&limiter) { limiter_->acquire(); }
        ~Guard() {
            if (limiter_) limiter_->release();
        }
        Guard(const Guard&) = delete;
        Guard& operator=(const Guard&) = delete;

    private:
        RequestLimiter* limiter_;
    };

private:
    void acquire() {
        std::unique_lock lock(mu_);
        cv_.wait(lock, [this] { return available_ > 0; });
        --available_;
    }

    void release() {
        {
            std::lock_guard lock(mu_);
            ++available_;
        }
        cv_.notify_one();
    }

    std::mutex mu_;
    std::condition_variable cv_;
    int available_;
};

// Retry, backoff, and in-flight limiting around any backend. Requests are
// idempotent, so a retry never duplicates side effects. The in-flight slot
// is held only while a backend call is outstanding, not during backoff
// sleeps.
class RetryingGateway : public ModelGateway {
public:
    RetryingGateway(std::shared_ptr<ModelGateway> backend, GatewayPolicy policy)
        : backend_(std::move(backend)), policy_(policy), limiter_(policy.max_in_flight) {
        policy_.validate();
    }

    std::string complete(const GatewayRequest& req) override {
        if (req.kind != RequestKind::Complete) {
            throw ValidationError("complete: request kind must be Complete");
        }
        if (req.prompt.empty()) throw ValidationError("complete: empty prompt");
        std::string text = with_retries([&] {
            RequestLimiter::Guard guard(limiter_);
            return backend_->complete(req);
        });
        if (text.empty()) {
            throw GatewayError("complete: backend returned an empty completion", 1);
        }
        return text;
    }

    Vec embed(const std::string& text) override {
        if (text.empty()) throw ValidationError("embed: empty text");
        Vec v = with_retries([&] {
            RequestLimiter::Guard guard(limiter_);
            return backend_->embed(text);
        });
        if (l2_norm(v) == 0.0) throw GatewayError("embed: backend returned a zero vector", 1);
        return normalized(std::move(v));
    }

    const GatewayPolicy& policy() const { return policy_; }

private:
    template <typename Fn>
    auto with_retries(Fn&& fn) -> decltype(fn()) {
        int attempts = 0;
        for (;;) {
            ++attempts;
            try {
                return fn();
            } catch (const GatewayError& e) {
                if (attempts > policy_.max_retries) {
                    throw GatewayError(std::string(e.what()) + " (after " +
                                           std::to_string(attempts) + " attempts)",
                                       attempts, e.timed_out());
                }
                std::this_thread::sleep_for(std::chrono::milliseconds(
                    static_cast<long long>(policy_.backoff_base_ms) << (attempts - 1)));
            }
        }
    }

    std::shared_ptr<ModelGateway> backend_;
    GatewayPolicy policy_;
    RequestLimiter limiter_;
};

}  // namespace augforge
