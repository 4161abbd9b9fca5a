#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace awb {

enum class WindowKind { rectangular, triangular, hamming, hann, blackman, bohman };

inline constexpr std::array<WindowKind, 6> kAllWindowKinds = {
    WindowKind::rectangular, WindowKind::triangular, WindowKind::hamming,
    WindowKind::hann,        WindowKind::blackman,   WindowKind::bohman,
};

/// Lowercase name used in CLI flags, API payloads and manifests.
std::string_view to_string(WindowKind kind) noexcept;

/// Throws Errc::unknown_window_kind for anything outside the closed set.
WindowKind parse_window_kind(std::string_view name);

struct WindowSpec {
    WindowKind kind = WindowKind::rectangular;
    std::size_t length = 1;

    friend bool operator==(const WindowSpec&, const WindowSpec&) = default;
};

/// Symmetric window weights, N = spec.length, n = 0..N-1:
///
///   rectangular  1
///   triangular   1 - |2n/(N-1) - 1|
///   hamming      0.54 - 0.46 cos(2 pi n/(N-1))
///   hann         0.5 - 0.5 cos(2 pi n/(N-1))
///   blackman     0.42 - 0.5 cos(2 pi n/(N-1)) + 0.08 cos(4 pi n/(N-1))
///   bohman       (1 - x) cos(pi x) + sin(pi x)/pi,  x = |2n/(N-1) - 1|
///
/// Length 1 yields [1.0] for every kind. A shape whose weights are all zero
/// (triangular, hann, blackman and bohman at length 2) falls back to the
/// rectangular window so the total mass stays positive. Weights are clamped
/// into [0, 1] to absorb rounding at the zero endpoints and the unit peak.
///
/// Throws Errc::zero_length when spec.length == 0.
std::vector<double> generate_window(const WindowSpec& spec);

}  // namespace awb
