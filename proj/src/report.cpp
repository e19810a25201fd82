#include "cma/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "cma/errors.hpp"
#include "cma/field_io.hpp"

namespace cma {

using nlohmann::json;

std::string format_number(double v) {
  if (!std::isfinite(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const SolveConfig& cfg) {
  return {{"continuation_steps", cfg.continuation_steps},
          {"newton_tol", cfg.newton_tol},
          {"max_newton", cfg.max_newton},
          {"linear_tol", cfg.linear_tol},
          {"damping_min_eig", cfg.damping_min_eig},
          {"max_halvings", cfg.max_halvings},
          {"p0", cfg.p0}};
}

json to_json(const RhsSpec& spec, int n) {
  json j = {{"kind", to_string(spec.kind)}, {"amplitude", spec.amplitude}, {"p0", spec.p0}};
  switch (spec.kind) {
    case RhsKind::Smooth:
      j["seed"] = spec.seed;
      j["bandwidth"] = spec.bandwidth;
      break;
    case RhsKind::Cusp:
      j["center"] = std::vector<double>(spec.center.begin(), spec.center.begin() + 2 * n);
      j["beta"] = spec.beta;
      j["cutoff_radius"] = spec.cutoff_radius;
      j["mollification"] = spec.mollification;
      break;
    case RhsKind::Manufactured: {
      json terms = json::array();
      for (const TrigTerm& t : spec.potential)
        terms.push_back({{"amplitude", t.amplitude},
                         {"function", t.sine ? "sin" : "cos"},
                         {"axis", t.axis},
                         {"frequency", t.frequency}});
      j["terms"] = terms;
      break;
    }
  }
  return j;
}

json to_json(const SolveReport& r) {
  json stages = json::array();
  for (const StageHistory& s : r.stages)
    stages.push_back({{"t", s.t}, {"residuals", s.residuals}, {"damping", s.damping},
                      {"linear_iterations", s.linear_iterations}});
  return {{"continuation_steps_used", r.continuation_steps_used},
          {"retried", r.retried},
          {"newton_steps", r.newton_steps},
          {"final_residual", r.final_residual},
          {"final_min_eig", r.final_min_eig},
          {"sup_phi", r.sup_phi},
          {"sup_grad_phi", r.sup_grad_phi},
          {"sup_n_plus_lap", r.sup_n_plus_lap},
          {"min_n_plus_lap", r.min_n_plus_lap},
          {"w3p", r.w3p},
          {"p0", r.p0},
          {"discrete_shift", r.discrete_shift},
          {"stages", stages}};
}

json to_json(const MoserLadder& l) {
  return {{"mode", to_string(l.mode)},   {"q0", l.q0},
          {"b", l.b},                    {"exponents", l.exponents},
          {"norms", l.norms},            {"fitted_C", l.fitted_C},
          {"sup", l.sup},                {"limit_ratio", l.limit_ratio},
          {"monotone", l.monotone()}};
}

json to_json(const YauFit& f) {
  return {{"C2", f.C2}, {"C3", f.C3}, {"worst_margin", f.worst_margin}, {"yau_margin", f.yau_margin}};
}

json to_json(const GradientFit& f) {
  return {{"eps0", f.eps0}, {"C", f.C}, {"worst_margin", f.worst_margin}};
}

json to_json(const SuiteStats& s) {
  return {{"check", s.name},
          {"n", s.n},
          {"samples", s.samples},
          {"min_margin", s.min_margin},
          {"max_relative_error", s.max_relative_error},
          {"passed", s.passed}};
}

json to_json(const SobolevProbe& p) {
  return {{"variant", to_string(p.variant)},
          {"trials", p.trials},
          {"lower_bound", p.lower_bound},
          {"best_class", p.best_class}};
}

json to_json(const KahlerBackground& bg) {
  return {{"mode", bg.flat() ? "flat" : "perturbed"},
          {"min_eig", bg.min_eig},
          {"bisectional_bound", bg.bisectional_bound},
          {"inf_bisectional", bg.inf_bisectional},
          {"volume", bg.volume}};
}

std::string history_csv(const SolveReport& report) {
  std::string out = "stage,step,t,residual,damping\n";
  for (std::size_t s = 0; s < report.stages.size(); ++s) {
    const StageHistory& h = report.stages[s];
    for (std::size_t k = 0; k < h.residuals.size(); ++k) {
      out += std::to_string(s) + "," + std::to_string(k) + "," + format_number(h.t) + "," +
             format_number(h.residuals[k]) + "," +
             (k == 0 ? std::string() : format_number(h.damping[k - 1])) + "\n";
    }
  }
  return out;
}

std::string ladder_csv(const MoserLadder& ladder) {
  std::string out = "k,p_k,norm\n";
  for (std::size_t k = 0; k < ladder.norms.size(); ++k)
    out += std::to_string(k) + "," + format_number(ladder.exponents[k]) + "," +
           format_number(ladder.norms[k]) + "\n";
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "w1p_norm,sup_lap_F,sup_phi,sup_grad_phi,sup_n_plus_lap,w3p,ladder_ratio_delta,"
      "ladder_ratio_grad,status\n";
  for (const SweepRow& r : rows) {
    if (!r.ok()) {
      out += ",,,,,,,," + r.status + "\n";
      continue;
    }
    const double delta = r.delta_ladder ? r.delta_ladder->limit_ratio : NAN;
    const double grad = r.gradient_ladder ? r.gradient_ladder->limit_ratio : NAN;
    for (double v : {r.w1p_norm, r.sup_lap_F, r.sup_phi, r.sup_grad_phi, r.sup_n_plus_lap, r.w3p,
                     delta, grad})
      out += format_number(v) + ",";
    out += r.status + "\n";
  }
  return out;
}

ArtifactWriter::ArtifactWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir_.string() + ": " + ec.message());
}

void ArtifactWriter::record(const std::string& name) {
  if (std::find(files_.begin(), files_.end(), name) == files_.end()) files_.push_back(name);
}

void ArtifactWriter::text(const std::string& name, const std::string& content) {
  record(name);
  std::ofstream out(dir_ / name, std::ios::binary);
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + (dir_ / name).string());
}

void ArtifactWriter::json(const std::string& name, const nlohmann::json& doc) {
  text(name, doc.dump(2) + "\n");
}

void ArtifactWriter::field(const std::string& name, const ScalarField& f, const std::string& label) {
  record(name);
  write_field_binary(dir_ / name, f, label);
}

void ArtifactWriter::finish() {
  std::vector<std::string> names = files_;
  std::sort(names.begin(), names.end());
  std::string manifest;
  for (const std::string& name : names) manifest += sha256_hex(dir_ / name) + "  " + name + "\n";
  text("manifest.txt", manifest);
}

void ArtifactWriter::discard() {
  for (const std::string& name : files_) {
    std::error_code ec;
    std::filesystem::remove(dir_ / name, ec);
  }
  files_.clear();
}

std::string sha256_hex(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0)
    EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

}  // namespace cma
