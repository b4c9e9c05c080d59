#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include "lsiib/config.hpp"

namespace lsiib {

inline constexpr const char* kToolName = "lsiib";
inline constexpr const char* kToolVersion = "0.1.0";

/// Command-line overrides applied on top of a parsed config.
struct CliOverrides {
  std::string out_dir;    ///< empty = keep config value.
  std::string format;     ///< "csv"/"json"; empty = keep config value.
  unsigned threads = 0;   ///< sweep parallelism cap; 0 = hardware concurrency.
  std::string config_path;  ///< recorded in the manifest.
};

/// Execute a run scenario: computes everything in memory, then writes the
/// scenario's data files plus report.json and manifest.json into the output
/// directory. All data files are deterministic for a given config; run
/// metadata (timestamp etc.) lives only in manifest.json. Files are written
/// via a temporary name and renamed, and any already-written outputs are
/// removed if a later step fails. Returns 0; throws on error.
int execute_run(const RunConfig& cfg, const CliOverrides& overrides = {});

/// Print the derived light-shift quantities for the config's parameters as
/// JSON on `out`. Returns 0; throws on error.
int execute_derive(const RunConfig& cfg, std::ostream& out);

/// Run `body`, mapping exceptions to the CLI exit contract: config_error and
/// std::invalid_argument exit 2, regime_error exits 3, anything else exits 1,
/// each with a one-line diagnostic on stderr.
int guarded_main(const std::function<int()>& body);

/// Render a double with 12 significant digits ("%.12g"), the fixed format of
/// all CSV and trajectory output.
std::string format_significant(double value);

}  // namespace lsiib
