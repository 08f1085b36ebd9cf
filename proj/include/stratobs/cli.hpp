#pragma once

#include "stratobs/serialize.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stratobs::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kSingular = 3, kIo = 4 };

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "STRATOBS_OUT_DIR";

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::string command;
  std::string system = "string";  // string | beam | plate
  std::string q = "0";            // ExactReal syntax
  std::string plate = "pi,pi";    // plate sides a,b ("pi" allowed)
  std::string theta;              // plate: theta1,theta2 in ExactReal syntax
  std::string gap;                // (t0 - t1)/pi in ExactReal syntax
  std::vector<double> times;
  std::string kinds = "position,position";
  double r = 1.0;
  double s = 0.0;
  std::string modes = "16";  // N, or MxN for plates
  std::uint64_t kmax = 1000;
  std::string box = "50x50";
  double sigma = 0.0;
  std::uint64_t trials = 1;
  std::uint64_t seed = 1;
  double tau = 1.0;
  double delta = 0.01;
  std::uint64_t nmax = 0;  // construct: > 0 runs the loaded-gap search instead
  std::string precision = "128";
  bool serial = false;
  std::string out;
  std::string reference;  // reconstruct: initial position,velocity files
  std::vector<std::string> inputs;

  Json to_json() const;
};

/// Parses argv (command first). Throws ValidationError on bad flags.
ExperimentConfig parse_args(int argc, const char* const* argv);

/// Output directory: --out, else $STRATOBS_OUT_DIR, else ".".
std::string output_dir(const ExperimentConfig& cfg);

int cmd_simulate(const ExperimentConfig& cfg);
int cmd_certify(const ExperimentConfig& cfg);
int cmd_reconstruct(const ExperimentConfig& cfg);
int cmd_construct(const ExperimentConfig& cfg);
int cmd_scan(const ExperimentConfig& cfg);

/// Dispatches on cfg.command and maps failures to exit codes, printing a
/// one-line diagnostic to stderr.
int run(const ExperimentConfig& cfg);
int main_entry(int argc, const char* const* argv);

}  // namespace stratobs::cli
