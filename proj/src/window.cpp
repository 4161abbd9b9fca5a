#include "awb/window.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "awb/error.hpp"

namespace awb {

namespace {

constexpr double kPi = std::numbers::pi;

double weight_at(WindowKind kind, std::size_t n, std::size_t length) {
    const double denom = static_cast<double>(length - 1);
    const double phase = 2.0 * kPi * static_cast<double>(n) / denom;
    // Distance from the centre, 0 at the peak and 1 at either edge.
    const double x = std::abs(2.0 * static_cast<double>(n) / denom - 1.0);
    switch (kind) {
        case WindowKind::rectangular:
            return 1.0;
        case WindowKind::triangular:
            return 1.0 - x;
        case WindowKind::hamming:
            return 0.54 - 0.46 * std::cos(phase);
        case WindowKind::hann:
            return 0.5 - 0.5 * std::cos(phase);
        case WindowKind::blackman:
            return 0.42 - 0.5 * std::cos(phase) + 0.08 * std::cos(2.0 * phase);
        case WindowKind::bohman:
            if (x >= 1.0) {
                return 0.0;
            }
            return (1.0 - x) * std::cos(kPi * x) + std::sin(kPi * x) / kPi;
    }
    return 0.0;
}

}  // namespace

std::string_view to_string(WindowKind kind) noexcept {
    switch (kind) {
        case WindowKind::rectangular: return "rectangular";
        case WindowKind::triangular: return "triangular";
        case WindowKind::hamming: return "hamming";
        case WindowKind::hann: return "hann";
        case WindowKind::blackman: return "blackman";
        case WindowKind::bohman: return "bohman";
    }
    return "unknown";
}

WindowKind parse_window_kind(std::string_view name) {
    for (WindowKind kind : kAllWindowKinds) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    throw Error(Errc::unknown_window_kind, "unknown window kind '" + std::string(name) + "'");
}

std::vector<double> generate_window(const WindowSpec& spec) {
    if (spec.length == 0) {
        throw Error(Errc::zero_length, "window length must be >= 1");
    }
    if (spec.length == 1) {
        return {1.0};
    }
    std::vector<double> weights(spec.length);
    // Compute the first half and mirror it so symmetry is exact.
    const std::size_t half = (spec.length + 1) / 2;
    for (std::size_t n = 0; n < half; ++n) {
        const double w = std::clamp(weight_at(spec.kind, n, spec.length), 0.0, 1.0);
        weights[n] = w;
        weights[spec.length - 1 - n] = w;
    }
    // Only reachable at length 2, where tapered shapes vanish at both samples.
    if (std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; })) {
        std::fill(weights.begin(), weights.end(), 1.0);
    }
    return weights;
}

}  // namespace awb
