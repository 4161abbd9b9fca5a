#include "awb/decimate.hpp"

#include <algorithm>
#include <string>

#include "awb/error.hpp"

namespace awb {

DecimatedChannel decimate_minmax(std::span<const double> values, std::size_t max_points) {
    if (max_points < kMinPlotPoints) {
        throw Error(Errc::validation_error, "max_points must be >= " + std::to_string(kMinPlotPoints));
    }
    DecimatedChannel out;
    const std::size_t n = values.size();
    auto keep = [&](std::size_t i) {
        out.index.push_back(i);
        out.value.push_back(values[i]);
    };
    if (n <= max_points) {
        out.index.reserve(n);
        out.value.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            keep(i);
        }
        return out;
    }

    const std::size_t interior = n - 2;
    const std::size_t buckets = (max_points - 2) / 2;
    out.factor = (interior + buckets - 1) / buckets;
    out.index.reserve(max_points);
    out.value.reserve(max_points);

    keep(0);
    for (std::size_t b = 0; b < buckets; ++b) {
        const std::size_t lo = 1 + b * interior / buckets;
        const std::size_t hi = 1 + (b + 1) * interior / buckets;
        if (lo >= hi) {
            continue;
        }
        const auto first = values.begin() + static_cast<std::ptrdiff_t>(lo);
        const auto last = values.begin() + static_cast<std::ptrdiff_t>(hi);
        const auto [mn, mx] = std::minmax_element(first, last);
        const auto i_min = static_cast<std::size_t>(mn - values.begin());
        const auto i_max = static_cast<std::size_t>(mx - values.begin());
        keep(std::min(i_min, i_max));
        if (i_min != i_max) {
            keep(std::max(i_min, i_max));
        }
    }
    keep(n - 1);
    return out;
}

}  // namespace awb
