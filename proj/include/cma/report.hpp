#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "cma/barriers.hpp"
#include "cma/config.hpp"
#include "cma/inequalities.hpp"
#include "cma/moser.hpp"
#include "cma/sobolev.hpp"
#include "cma/sweep.hpp"

namespace cma {

/// %.17g, or an empty string for a non-finite value.
std::string format_number(double v);

nlohmann::json to_json(const SolveConfig& cfg);
nlohmann::json to_json(const RhsSpec& spec, int n);
nlohmann::json to_json(const SolveReport& report);
nlohmann::json to_json(const MoserLadder& ladder);
nlohmann::json to_json(const YauFit& fit);
nlohmann::json to_json(const GradientFit& fit);
nlohmann::json to_json(const SuiteStats& stats);
nlohmann::json to_json(const SobolevProbe& probe);
nlohmann::json to_json(const KahlerBackground& bg);

/// Per-step convergence history: stage,step,t,residual,damping.
std::string history_csv(const SolveReport& report);
/// k,p_k,norm.
std::string ladder_csv(const MoserLadder& ladder);
/// Fixed sweep header; failed rows keep the status and leave numerics empty.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Collects the files of one run. finish() writes manifest.txt with a
/// SHA-256 per artifact; discard() deletes everything written so far.
class ArtifactWriter {
 public:
  explicit ArtifactWriter(std::filesystem::path dir);

  void text(const std::string& name, const std::string& content);
  void json(const std::string& name, const nlohmann::json& doc);
  void field(const std::string& name, const ScalarField& f, const std::string& label);
  void finish();
  void discard();

  const std::filesystem::path& dir() const { return dir_; }

 private:
  void record(const std::string& name);

  std::filesystem::path dir_;
  std::vector<std::string> files_;
};

std::string sha256_hex(const std::filesystem::path& path);

}  // namespace cma
