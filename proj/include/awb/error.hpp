#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace awb {

/// Domain error codes. The snake_case names returned by `code_name` are part
/// of the wire contract: they appear in HTTP error bodies and CLI stderr.
enum class Errc {
    io_error,
    malformed_record,
    length_mismatch,
    invalid_label,
    empty_series,
    empty_anomaly_set,
    zero_length,
    unknown_window_kind,
    window_too_long,
    threshold_out_of_range,
    empty_input,
    missing_manifest,
    malformed_manifest,
    duplicate_model_name,
    dangling_analysis_path,
    no_matching_model,
    invalid_grid,
    no_feasible_config,
    no_model_selected,
    validation_error,
    busy,
};

std::string_view code_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }
    std::string_view code_name() const noexcept { return awb::code_name(code_); }

private:
    Errc code_;
};

}  // namespace awb
