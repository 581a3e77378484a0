#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "json.hpp"

#include "augforge/errors.hpp"
#include "augforge/rng.hpp"
#include "augforge/sample.hpp"
#include "augforge/vec.hpp"

namespace augforge {

// --- metrics ---------------------------------------------------------------

struct Metrics {
    double accuracy = 0.0;
    double macro_f1 = 0.0;
    double macro_precision = 0.0;
    double macro_recall = 0.0;

    bool operator==(const Metrics&) const = default;
};

// Confusion counts with Fake as the positive class.
struct ConfusionCounts {
    long tp = 0, fp = 0, fn = 0, tn = 0;

    long total() const { return tp + fp + fn + tn; }
};

// Decision rule: p > 0.5 is Fake; exactly 0.5 counts as Real.
inline bool predicted_fake(double p) { return p > 0.5; }

namespace detail {
// Per-class precision/recall with the 0/0 := 0 convention.
inline double safe_div(double num, double den) { return den == 0.0 ? 0.0 : num / den; }
inline double f1_of(double prec, double rec) {
    return (prec + rec) == 0.0 ? 0.0 : 2.0 * prec * rec / (prec + rec);
}
}  // namespace detail

inline Metrics metrics_from_confusion(const ConfusionCounts& c) {
    double fake_prec = detail::safe_div(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fp));
    double fake_rec = detail::safe_div(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fn));
    double real_prec = detail::safe_div(static_cast<double>(c.tn), static_cast<double>(c.tn + c.fn));
    double real_rec = detail::safe_div(static_cast<double>(c.tn), static_cast<double>(c.tn + c.fp));
    Metrics m;
    m.accuracy = detail::safe_div(static_cast<double>(c.tp + c.tn), static_cast<double>(c.total()));
    m.macro_precision = 0.5 * (fake_prec + real_prec);
    m.macro_recall = 0.5 * (fake_rec + real_rec);
    m.macro_f1 = 0.5 * (detail::f1_of(fake_prec, fake_rec) + detail::f1_of(real_prec, real_rec));
    return m;
}

inline double fake_f1_from_confusion(const ConfusionCounts& c) {
    double prec = detail::safe_div(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fp));
    double rec = detail::safe_div(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fn));
    return detail::f1_of(prec, rec);
}

// --- detector protocol -------------------------------------------------

// Any learnable classifier that predicts fake-probabilities and exposes a
// feature space works here. Implementations must be deterministic given
// (dataset order, steps, seed).
class DetectorModel {
public:
    virtual ~DetectorModel() = default;

    // Train from scratch.
    virtual void fit(const std::vector<NewsSample>& data, int epochs, std::uint64_t seed) = 0;

    // One retraining pass continuing from the current parameters.
    virtual void fit_epoch(const std::vector<NewsSample>& data, std::uint64_t seed) = 0;

    // Probability of the sample being Fake, in (0, 1).
    virtual double predict_proba(const NewsSample& s) const = 0;

    // Feature vector used for similarity retrieval. Never depends on the
    // sample's label.
    virtual Vec features(const NewsSample& s) const = 0;

    virtual std::unique_ptr<DetectorModel> clone() const = 0;

    // Full parameter state; equal JSON means bit-equal models.
    virtual nlohmann::json state() const = 0;
};

template <typename SampleRange>
ConfusionCounts confusion(const DetectorModel& model, const SampleRange& samples) {
    ConfusionCounts c;
    for (const NewsSample* s : samples) {
        bool fake = predicted_fake(model.predict_proba(*s));
        bool truly_fake = s->label == Label::Fake;
        if (fake && truly_fake) ++c.tp;
        else if (fake && !truly_fake) ++c.fp;
        else if (!fake && truly_fake) ++c.fn;
        else ++c.tn;
    }
    return c;
}

inline ConfusionCounts confusion(const DetectorModel& model, const std::vector<NewsSample>& samples) {
    ConfusionCounts c;
    for (const NewsSample& s : samples) {
        bool fake = predicted_fake(model.predict_proba(s));
        bool truly_fake = s.label == Label::Fake;
        if (fake && truly_fake) ++c.tp;
        else if (fake && !truly_fake) ++c.fp;
        else if (!fake && truly_fake) ++c.fn;
        else ++c.tn;
    }
    return c;
}

inline Metrics evaluate(const DetectorModel& model, const std::vector<NewsSample>& samples) {
    if (samples.empty()) throw ValidationError("evaluate: no samples");
    return metrics_from_confusion(confusion(model, samples));
}

// --- logistic regression reference detector ------------------------------

// Numerically stable sigmoid, clamped into the open interval (0, 1).
inline double sigmoid(double z) {
    double p;
    if (z >= 0.0) {
        p = 1.0 / (1.0 + std::exp(-z));
    } else {
        double e = std::exp(z);
        p = e / (1.0 + e);
    }
    if (p <= 0.0) p = 1e-15;
    if (p >= 1.0) p = 1.0 - 1e-15;
    return p;
}

inline const Vec& sample_features(const NewsSample& s) {
    if (s.feature_cache.empty()) {
        throw ValidationError("sample " + s.id + " has no feature cache");
    }
    return s.feature_cache;
}

// Mean logistic loss plus (l2/2)|w|^2. The bias is not regularized.
inline double logistic_loss(const Vec& w, double b, const std::vector<NewsSample>& data,
                            double l2) {
    if (data.empty()) throw ValidationError("logistic_loss: no data");
    double loss = 0.0;
    for (const NewsSample& s : data) {
        const Vec& x = sample_features(s);
        double z = dot(w, x) + b;
        double y = s.label == Label::Fake ? 1.0 : 0.0;
        // log(1 + exp(-m)) with m = z for y=1, -z for y=0, computed stably.
        double m = y == 1.0 ? z : -z;
        loss += m >= 0.0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
    }
    loss /= static_cast<double>(data.size());
    double reg = 0.0;
    for (double wj : w) reg += wj * wj;
    return loss + 0.5 * l2 * reg;
}

// Analytic gradient of logistic_loss. Matches central finite differences;
// the acceptance suite checks this to 1e-5 relative error.
inline std::pair<Vec, double> logistic_gradient(const Vec& w, double b,
                                                const std::vector<NewsSample>& data, double l2) {
    if (data.empty()) throw ValidationError("logistic_gradient: no data");
    Vec gw(w.size(), 0.0);
    double gb = 0.0;
    for (const NewsSample& s : data) {
        const Vec& x = sample_features(s);
        double z = dot(w, x) + b;
        double y = s.label == Label::Fake ? 1.0 : 0.0;
        double g = sigmoid(z) - y;
        for (std::size_t j = 0; j < w.size(); ++j) gw[j] += g * x[j];
        gb += g;
    }
    double inv_n = 1.0 / static_cast<double>(data.size());
    for (std::size_t j = 0; j < w.size(); ++j) gw[j] = gw[j] * inv_n + l2 * w[j];
    gb *= inv_n;
    return {std::move(gw), gb};
}

struct LinearDetectorConfig {
    double learning_rate = 0.1;
    double l2 = 1e-4;
};

// Logistic regression over cached sample features. Stands in for deep
// multimodal detectors at desk scale: it is learnable, probabilistic, and
// deterministic, which is all the selection loop requires.
class LinearDetector : public DetectorModel {
public:
    explicit LinearDetector(LinearDetectorConfig cfg = {}) : cfg_(cfg) {}

    void fit(const std::vector<NewsSample>& data, int epochs, std::uint64_t seed) override {
        validate_training_set(data);
        feature_dim_ = sample_features(data.front()).size();
        weights_.assign(feature_dim_, 0.0);
        bias_ = 0.0;
        seed_ = seed;
        epochs_ = epochs;

        // Each epoch must not increase the full training loss; when a raw
        // SGD pass overshoots, it is rerun from the pre-epoch parameters at
        // half the step size (at worst the epoch becomes a no-op).
        double loss = logistic_loss(weights_, bias_, data, cfg_.l2);
        for (int e = 0; e < epochs; ++e) {
            Vec w_before = weights_;
            double b_before = bias_;
            double lr = cfg_.learning_rate;
            bool improved = false;
            for (int attempt = 0; attempt < 12; ++attempt) {
                sgd_epoch(data, derive_seed(seed, static_cast<std::uint64_t>(e)), lr);
                double next = logistic_loss(weights_, bias_, data, cfg_.l2);
                if (next <= loss) {
                    loss = next;
                    improved = true;
                    break;
                }
                weights_ = w_before;
                bias_ = b_before;
                lr *= 0.5;
            }
            if (!improved) break;  // parameters already at a stationary point for this data
        }
    }

    void fit_epoch(const std::vector<NewsSample>& data, std::uint64_t seed) override {
        if (weights_.empty()) throw ValidationError("fit_epoch: model is untrained");
        if (data.empty()) throw ValidationError("fit_epoch: no data");
        sgd_epoch(data, seed, cfg_.learning_rate);
    }

    double predict_proba(const NewsSample& s) const override {
        return sigmoid(margin(s));
    }

    Vec features(const NewsSample& s) const override { return sample_features(s); }

    std::unique_ptr<DetectorModel> clone() const override {
        return std::make_unique<LinearDetector>(*this);
    }

    nlohmann::json state() const override {
        nlohmann::json j;
        j["weights"] = weights_;
        j["bias"] = bias_;
        j["feature_dim"] = feature_dim_;
        j["seed"] = seed_;
        j["epochs"] = epochs_;
        return j;
    }

    static LinearDetector from_state(const nlohmann::json& j, LinearDetectorConfig cfg = {}) {
        LinearDetector d(cfg);
        d.weights_ = detail_state_vec(j, "weights");
        d.bias_ = j.at("bias").get<double>();
        d.feature_dim_ = j.at("feature_dim").get<std::size_t>();
        d.seed_ = j.at("seed").get<std::uint64_t>();
        d.epochs_ = j.at("epochs").get<int>();
        if (d.weights_.size() != d.feature_dim_) {
            throw ValidationError("checkpoint: weights length does not match feature_dim");
        }
        return d;
    }

    const Vec& weights() const { return weights_; }
    double bias() const { return bias_; }
    std::size_t feature_dim() const { return feature_dim_; }
    const LinearDetectorConfig& config() const { return cfg_; }

private:
    static Vec detail_state_vec(const nlohmann::json& j, const char* key) {
        Vec v;
        for (const auto& x : j.at(key)) v.push_back(x.get<double>());
        return v;
    }

    static void validate_training_set(const std::vector<NewsSample>& data) {
        if (data.empty()) throw ValidationError("fit: empty training set");
        bool has_real = false, has_fake = false;
        for (const NewsSample& s : data) {
            (s.label == Label::Fake ? has_fake : has_real) = true;
        }
        if (!has_real || !has_fake) {
            throw ValidationError("fit: training set must contain both labels");
        }
    }

    double margin(const NewsSample& s) const {
        if (weights_.empty()) throw ValidationError("predict: model is untrained");
        const Vec& x = sample_features(s);
        if (x.size() != feature_dim_) {
            throw ValidationError("predict: feature dim " + std::to_string(x.size()) +
                                  " does not match model dim " + std::to_string(feature_dim_));
        }
        return dot(weights_, x) + bias_;
    }

    void sgd_epoch(const std::vector<NewsSample>& data, std::uint64_t seed, double lr) {
        std::vector<std::size_t> order(data.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        Rng rng(seed);
        rng.shuffle(order);
        for (std::size_t i : order) {
            const NewsSample& s = data[i];
            const Vec& x = sample_features(s);
            if (x.size() != feature_dim_) {
                throw ValidationError("fit: sample " + s.id + " has feature dim " +
                                      std::to_string(x.size()) + ", expected " +
                                      std::to_string(feature_dim_));
            }
            double g = sigmoid(dot(weights_, x) + bias_) - (s.label == Label::Fake ? 1.0 : 0.0);
            for (std::size_t j = 0; j < feature_dim_; ++j) {
                weights_[j] -= lr * (g * x[j] + cfg_.l2 * weights_[j]);
            }
            bias_ -= lr * g;
        }
    }

    LinearDetectorConfig cfg_;
    Vec weights_;
    double bias_ = 0.0;
    std::size_t feature_dim_ = 0;
    std::uint64_t seed_ = 0;
    int epochs_ = 0;
};

// Trains a reference detector; fails on single-class data.
inline LinearDetector train_detector(const std::vector<NewsSample>& data, int epochs,
                                     std::uint64_t seed, LinearDetectorConfig cfg = {}) {
    LinearDetector d(cfg);
    d.fit(data, epochs, seed);
    return d;
}

}  // namespace augforge
