#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "srweyl/abnormal/abnormal.hpp"
#include "srweyl/error.hpp"
#include "srweyl/geometry/structure.hpp"

namespace srweyl::cli {

using Document = nlohmann::ordered_json;

/// Bad command-line input (exit code 2).
class UsageError : public Error {
 public:
  using Error::Error;
};

struct AnalyzeOptions {
  std::optional<std::size_t> layers;
  std::size_t depth = 1;
  std::uint64_t seed = 1;
  std::size_t samples = 4;  ///< coarsest minimal-order net
  double horizon = 1.0;
  std::size_t steps = 20;
};

/// Growth vector, rigidity verdict with its evidence, and the abnormal
/// stratification of the model used for the verdict.
Document analyze(const geometry::SubRiemannianStructure& s, const AnalyzeOptions& options);

struct AbnormalOptions {
  std::size_t scan = 0;  ///< random initial points of W_D; ignored when `from` is set
  std::optional<abnormal::CovectorPoint> from;
  double horizon = 1.0;
  std::size_t steps = 20;
  std::uint64_t seed = 1;
};

struct AbnormalRun {
  Document report;
  std::vector<abnormal::AbnormalTrajectory> trajectories;
};

AbnormalRun abnormal_scan(const geometry::SubRiemannianStructure& s, const AbnormalOptions& options);

/// CSV with header trajectory,t,x1..xn,u_{m+1}..u_n,locus,in_w.
void write_abnormal_csv(std::ostream& out, const geometry::SubRiemannianStructure& s,
                        const std::vector<abnormal::AbnormalTrajectory>& trajectories);

/// Plain structured text (YAML) of a report document.
std::string render_text(const Document& doc);

/// Entry point of the srweyl executable; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace srweyl::cli
