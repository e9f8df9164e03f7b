#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "drpkit/coverage/normalization.hpp"
#include "drpkit/coverage/types.hpp"
#include "drpkit/error.hpp"

namespace drpkit::io {

namespace fs = std::filesystem;

/// A file violates its declared schema. line() is 1-based, 0 for whole-file problems.
class SchemaError : public Error {
 public:
  SchemaError(const fs::path& file, std::size_t line, const std::string& invariant);
  const fs::path& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  fs::path file_;
  std::size_t line_;
};

/// Writes to a sibling temp file, then renames over `path`.
void write_file_atomic(const fs::path& path, const std::string& content);

std::string read_file(const fs::path& path);

/// Shortest exact round-trip form (17 significant digits).
std::string format_double(double v);

// ---- coverage curves ----

struct CoverageMeta {
  std::string method;
  std::size_t n_sims = 0;
  std::size_t n_post = 0;
  std::uint64_t seed = 0;
  std::string policy;
  std::string metric;
  std::string label;  ///< optional, used as legend text by plots
};

/// Header `credibility,alpha,ecp,band_lo,band_hi`, one row per level, then
/// `# key=value` metadata rows. The band is ecp +- half-width, clipped to [0, 1].
std::string format_coverage_csv(const coverage::CoverageCurve& curve, const CoverageMeta& meta);

struct CoverageTable {
  std::vector<double> credibility;
  std::vector<double> alpha;
  std::vector<double> ecp;
  std::vector<double> band_lo;
  std::vector<double> band_hi;
  std::map<std::string, std::string> meta;
};

/// Parses and validates a coverage CSV; throws SchemaError.
CoverageTable read_coverage_csv(const fs::path& path);

// ---- sample files ----

/// sim_id,theta_0..theta_{D-1}. Rows are written in sim_id order.
std::string format_joint_csv(const coverage::JointSampleSet& dataset);
/// sim_id,x_0..x_{M-1}.
std::string format_observation_csv(const coverage::JointSampleSet& dataset);
/// sim_id,sample_id,theta_0..theta_{D-1}; samples[i] belongs to sim i.
std::string format_posterior_csv(const std::vector<coverage::DenseMatrix>& samples);

struct JointRows {
  std::size_t dim = 0;
  std::vector<coverage::Vector> theta;  ///< indexed by sim_id
};

/// Requires sim_ids dense in [0, N) without duplicates and finite values.
JointRows read_joint_csv(const fs::path& path);

/// Observation rows indexed by sim_id; must cover exactly `n_sims` ids.
std::vector<coverage::Observation> read_observation_csv(const fs::path& path, std::size_t n_sims);

/// Posterior draws grouped by sim_id. Every sim in [0, n_sims) needs at least
/// one sample; the theta width must equal `dim`.
std::vector<coverage::DenseMatrix> read_posterior_csv(const fs::path& path, std::size_t n_sims,
                                                      std::size_t dim);

/// Generic numeric table with a theta_* header, e.g. prior draws.
std::vector<coverage::Vector> read_theta_table(const fs::path& path, std::size_t dim);

/// One `lo:hi` per line (blank lines and `#` comments ignored).
std::vector<coverage::Bounds> read_bounds_file(const fs::path& path);
std::string format_bounds_file(const std::vector<coverage::Bounds>& bounds);

/// One weight per line or comma-separated; values are not range-checked here.
std::vector<double> read_weights_file(const fs::path& path);

// ---- config echo ----

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// key=value lines in the given order.
std::string format_config(const KeyValues& entries);
/// Ignores blank lines and `#` comments; throws SchemaError on a line without '='.
KeyValues read_config(const fs::path& path);

}  // namespace drpkit::io
