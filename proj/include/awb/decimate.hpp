#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace awb {

struct DecimatedChannel {
    std::vector<std::size_t> index;
    std::vector<double> value;
    std::size_t factor = 1;
};

inline constexpr std::size_t kMinPlotPoints = 4;
inline constexpr std::size_t kDefaultMaxPoints = 4000;

/// Min-max bucket decimation. Keeps the first and last samples, splits the
/// interior into (max_points - 2) / 2 equal buckets and keeps each bucket's
/// minimum and maximum in index order, so spikes survive and the channel's
/// global extremes are preserved. Series that already fit are returned whole
/// with factor 1. Throws validation_error when max_points < kMinPlotPoints.
DecimatedChannel decimate_minmax(std::span<const double> values, std::size_t max_points);

}  // namespace awb
