#pragma once

// Test doubles: programmable gateway backends and a scripted detector whose
// prediction tables are fixed per retraining step.

#include <atomic>
#include <chrono>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "augforge/detector.hpp"
#include "augforge/gateway.hpp"
#include "augforge/gateway_mock.hpp"
#include "augforge/sample.hpp"

namespace augforge::testing {

// Gateway whose behavior is supplied by the test; defaults fall back to the
// deterministic mock.
class HookGateway : public ModelGateway {
public:
    explicit HookGateway(std::uint64_t seed = 1, std::size_t dim = 8) : fallback_(seed, dim) {}

    std::function<std::string(const GatewayRequest&)> on_complete;
    std::function<Vec(const std::string&)> on_embed;
    int complete_calls = 0;
    int embed_calls = 0;

    std::string complete(const GatewayRequest& req) override {
        ++complete_calls;
        if (on_complete) return on_complete(req);
        return fallback_.complete(req);
    }

    Vec embed(const std::string& text) override {
        ++embed_calls;
        if (on_embed) return on_embed(text);
        return fallback_.embed(text);
    }

private:
    MockGateway fallback_;
};

// Fails the first `failures` calls with a retryable error, then delegates.
class FlakyBackend : public ModelGateway {
public:
    FlakyBackend(int failures, std::uint64_t seed = 1, std::size_t dim = 8)
        : failures_(failures), inner_(seed, dim) {}

    int calls = 0;

    std::string complete(const GatewayRequest& req) override {
        if (++calls <= failures_) throw GatewayError("scripted transient failure");
        return inner_.complete(req);
    }

    Vec embed(const std::string& text) override {
        if (++calls <= failures_) throw GatewayError("scripted transient failure");
        return inner_.embed(text);
    }

private:
    int failures_;
    MockGateway inner_;
};

// Records the high-water mark of concurrent calls.
class InstrumentedBackend : public ModelGateway {
public:
    explicit InstrumentedBackend(std::uint64_t seed = 1, std::size_t dim = 8) : inner_(seed, dim) {}

    std::atomic<int> in_flight{0};
    std::atomic<int> peak{0};

    std::string complete(const GatewayRequest& req) override {
        Track t(*this);
        return inner_.complete(req);
    }

    Vec embed(const std::string& text) override {
        Track t(*this);
        return inner_.embed(text);
    }

private:
    struct Track {
        explicit Track(InstrumentedBackend& b) : backend(b) {
            int now = ++backend.in_flight;
            int old = backend.peak.load();
            while (now > old && !backend.peak.compare_exchange_weak(old, now)) {
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(3));
        }
        ~Track() { --backend.in_flight; }
        InstrumentedBackend& backend;
    };

    MockGateway inner_;
};

// Detector with prediction tables indexed by retraining step. fit() starts a
// model at table 0; every fit_epoch advances a shared step counter so a
// rolled-back model re-trains onto a fresh table. Features come from the
// sample's cache; missing ids predict 0.5.
class ScriptedDetector : public DetectorModel {
public:
    struct Script {
        std::vector<std::map<std::string, double>> tables;  // step -> id -> p
        int steps_taken = 0;
    };

    explicit ScriptedDetector(std::shared_ptr<Script> script) : script_(std::move(script)) {}

    void fit(const std::vector<NewsSample>&, int, std::uint64_t) override { table_ = 0; }

    void fit_epoch(const std::vector<NewsSample>&, std::uint64_t) override {
        table_ = ++script_->steps_taken;
    }

    double predict_proba(const NewsSample& s) const override {
        std::size_t t = std::min<std::size_t>(static_cast<std::size_t>(table_),
                                              script_->tables.empty() ? 0 : script_->tables.size() - 1);
        if (script_->tables.empty()) return 0.5;
        auto it = script_->tables[t].find(s.id);
        return it == script_->tables[t].end() ? 0.5 : it->second;
    }

    Vec features(const NewsSample& s) const override { return sample_features(s); }

    std::unique_ptr<DetectorModel> clone() const override {
        return std::make_unique<ScriptedDetector>(*this);
    }

    nlohmann::json state() const override { return {{"table", table_}}; }

    int table() const { return table_; }

private:
    std::shared_ptr<Script> script_;
    int table_ = 0;
};

}  // namespace augforge::testing
