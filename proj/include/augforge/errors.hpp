#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace augforge {

// Base of every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad input, broken invariant, or out-of-range value.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Manifest, config, or checkpoint parsing failure. Carries the offending
// file and line when known (line 0 means "whole file").
class LoadError : public Error {
public:
    LoadError(const std::string& msg, std::string path = {}, long line = 0)
        : Error(format(msg, path, line)), path_(std::move(path)), line_(line) {}

    const std::string& path() const { return path_; }
    long line() const { return line_; }

private:
    static std::string format(const std::string& msg, const std::string& path, long line) {
        if (path.empty()) return msg;
        if (line <= 0) return path + ": " + msg;
        return path + ":" + std::to_string(line) + ": " + msg;
    }

    std::string path_;
    long line_;
};

// Completion/embedding backend failure after the retry budget was spent.
class GatewayError : public Error {
public:
    GatewayError(const std::string& msg, int attempts = 1, bool timed_out = false)
        : Error(msg), attempts_(attempts), timed_out_(timed_out) {}

    int attempts() const { return attempts_; }
    bool timed_out() const { return timed_out_; }

private:
    int attempts_;
    bool timed_out_;
};

// Model response that could not be parsed into a clip annotation.
// Keeps the raw response text for audit.
class AnnotationError : public Error {
public:
    AnnotationError(const std::string& msg, std::string raw_response)
        : Error(msg), raw_response_(std::move(raw_response)) {}

    const std::string& raw_response() const { return raw_response_; }

private:
    std::string raw_response_;
};

// Clip assembly ran out of material before reaching the target duration.
class AssemblyError : public Error {
public:
    AssemblyError(const std::string& msg, double achieved_s)
        : Error(msg), achieved_s_(achieved_s) {}

    double achieved_s() const { return achieved_s_; }

private:
    double achieved_s_;
};

// Not enough eligible library clips to perform a selective edit.
class ReplacementError : public Error {
public:
    ReplacementError(const std::string& msg, int eligible_count)
        : Error(msg), eligible_count_(eligible_count) {}

    int eligible_count() const { return eligible_count_; }

private:
    int eligible_count_;
};

// The distortion pipeline produced text identical to its input.
class DistortionError : public Error {
public:
    using Error::Error;
};

}  // namespace augforge
