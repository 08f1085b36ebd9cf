#pragma once

#include "stratobs/certify.hpp"
#include "stratobs/constructions.hpp"
#include "stratobs/modal.hpp"
#include "stratobs/reconstruct.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace stratobs {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kToolName = "stratobs";
inline constexpr const char* kToolVersion = "0.1.0";

/// Malformed or unreadable artifact.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File that cannot be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal that round-trips the double.
std::string format_double(double v);

/// Adds format_version and generator {tool, version, config} ahead of `body`.
Json with_header(const Json& body, const Json& config);

Json system_to_json(const WaveSystem& sys);
WaveSystem system_from_json(const Json& j);

Json snapshot_to_json(const CoefficientVector& v, const std::optional<ExactReal>& gap_over_pi = std::nullopt);
CoefficientVector snapshot_from_json(const Json& j);

Json certificate_to_json(const StrategicCertificate& c);
Json report_to_json(const ReconstructionReport& r);
Json gap_certificate_to_json(const RationalGapCertificate& c);
Json noise_to_json(const NoiseReport& n);
Json loaded_gap_to_json(const LoadedGapResult& r);

/// Columns k, distance, scaled_floor.
std::string certify_csv(const std::vector<double>& distance, const std::vector<double>& scaled);
/// Columns k, abs_det, cond, err_a, err_b; errors against `reference` when given, else nan.
std::string reconstruct_csv(const ReconstructionReport& r, const ModalState* reference = nullptr);
/// Columns k, factor, bound.
std::string sensitivity_csv(const SensitivityProfile& p);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace stratobs
