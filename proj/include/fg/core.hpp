#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fg {

using Scalar = std::complex<double>;

// All evaluation errors derive from EvalError so callers can treat a failed
// sample uniformly (resample, reject, or surface as a structured failure).
struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PoleError : EvalError {
    using EvalError::EvalError;
};

struct BaseNotContracting : EvalError {
    using EvalError::EvalError;
};

struct TruncationInsufficient : EvalError {
    using EvalError::EvalError;
};

struct ZeroArgument : EvalError {
    using EvalError::EvalError;
};

struct IndexOutOfWindow : EvalError {
    using EvalError::EvalError;
};

struct ZeroPivot : EvalError {
    using EvalError::EvalError;
};

struct NotSelfOrthogonal : EvalError {
    using EvalError::EvalError;
};

struct NonconvergentLimit : EvalError {
    using EvalError::EvalError;
};

struct UnknownTarget : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncation policy for infinite products and bilateral series.
struct Truncation {
    int product_terms = 120;   // factors kept in (a;q)_inf
    int series_terms = 60;     // symmetric range for bilateral sums
    double tail_tol = 1e-12;   // bound on the last retained factor/term

    void validate() const {
        if (product_terms < 1 || series_terms < 1 || tail_tol <= 0.0)
            throw std::invalid_argument("truncation fields must be positive");
    }
};

// Deterministic RNG: splitmix64 stream with an explicit uniform mapping so
// residuals are reproducible bit-for-bit across runs and platforms (we never
// rely on std::uniform_real_distribution, which is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // magnitude in [lo,hi], phase uniform on the circle
    Scalar annulus(double lo, double hi) {
        const double r = uniform(lo, hi);
        const double phi = uniform(0.0, 6.283185307179586476925286766559);
        return Scalar(r * std::cos(phi), r * std::sin(phi));
    }

private:
    std::uint64_t state_;
};

// Relative residual with the scale convention used throughout: compare
// against the larger side, fall back to absolute when both sides are tiny.
inline double rel_residual(const Scalar& lhs, const Scalar& rhs) {
    const double diff = std::abs(lhs - rhs);
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    if (scale < 1e-14) return diff;
    return diff / scale;
}

}  // namespace fg
