#include "awb/error.hpp"

namespace awb {

std::string_view code_name(Errc code) noexcept {
    switch (code) {
        case Errc::io_error: return "io_error";
        case Errc::malformed_record: return "malformed_record";
        case Errc::length_mismatch: return "length_mismatch";
        case Errc::invalid_label: return "invalid_label";
        case Errc::empty_series: return "empty_series";
        case Errc::empty_anomaly_set: return "empty_anomaly_set";
        case Errc::zero_length: return "zero_length";
        case Errc::unknown_window_kind: return "unknown_window_kind";
        case Errc::window_too_long: return "window_too_long";
        case Errc::threshold_out_of_range: return "threshold_out_of_range";
        case Errc::empty_input: return "empty_input";
        case Errc::missing_manifest: return "missing_manifest";
        case Errc::malformed_manifest: return "malformed_manifest";
        case Errc::duplicate_model_name: return "duplicate_model_name";
        case Errc::dangling_analysis_path: return "dangling_analysis_path";
        case Errc::no_matching_model: return "no_matching_model";
        case Errc::invalid_grid: return "invalid_grid";
        case Errc::no_feasible_config: return "no_feasible_config";
        case Errc::no_model_selected: return "no_model_selected";
        case Errc::validation_error: return "validation_error";
        case Errc::busy: return "busy";
    }
    return "unknown";
}

}  // namespace awb
