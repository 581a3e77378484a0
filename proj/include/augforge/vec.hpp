#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "augforge/errors.hpp"

namespace augforge {

using Vec = std::vector<double>;

inline double dot(const Vec& u, const Vec& v) {
    if (u.size() != v.size()) {
        throw ValidationError("dot: dimension mismatch (" + std::to_string(u.size()) +
                              " vs " + std::to_string(v.size()) + ")");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

inline double l2_norm(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline bool is_unit_norm(const Vec& v, double tol = 1e-6) {
    return std::fabs(l2_norm(v) - 1.0) <= tol;
}

inline Vec normalized(Vec v) {
    double n = l2_norm(v);
    if (n == 0.0) throw ValidationError("cannot normalize a zero vector");
    for (double& x : v) x /= n;
    return v;
}

// Cosine similarity in [-1, 1]. Rejects zero vectors and mismatched
// dimensions.
inline double cosine(const Vec& u, const Vec& v) {
    if (u.size() != v.size()) {
        throw ValidationError("cosine: dimension mismatch (" + std::to_string(u.size()) +
                              " vs " + std::to_string(v.size()) + ")");
    }
    double uu = 0.0, vv = 0.0, uv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        uu += u[i] * u[i];
        vv += v[i] * v[i];
        uv += u[i] * v[i];
    }
    if (uu == 0.0 || vv == 0.0) throw ValidationError("cosine: zero vector");
    double c = uv / (std::sqrt(uu) * std::sqrt(vv));
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    return c;
}

}  // namespace augforge
