#include "cma/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "cma/errors.hpp"

namespace cma {
namespace {

struct Located {
  std::string_view text;
  int line = 0;
  int column = 0;  // 1-based column of text[0]
};

[[noreturn]] void parse_fail(const Located& at, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(at.line) + ", column " +
                                         std::to_string(at.column) + ": " + what);
}

[[noreturn]] void invalid(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ValidationError, field + ": " + what);
}

Located trim(Located v) {
  while (!v.text.empty() && (v.text.front() == ' ' || v.text.front() == '\t')) {
    v.text.remove_prefix(1);
    ++v.column;
  }
  while (!v.text.empty() && (v.text.back() == ' ' || v.text.back() == '\t' || v.text.back() == '\r'))
    v.text.remove_suffix(1);
  return v;
}

double to_double(const Located& v) {
  double out = 0.0;
  const char* end = v.text.data() + v.text.size();
  auto [ptr, ec] = std::from_chars(v.text.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out))
    parse_fail(v, "expected a number, got '" + std::string(v.text) + "'");
  return out;
}

long long to_integer(const Located& v) {
  long long out = 0;
  const char* end = v.text.data() + v.text.size();
  auto [ptr, ec] = std::from_chars(v.text.data(), end, out);
  if (ec != std::errc() || ptr != end)
    parse_fail(v, "expected an integer, got '" + std::string(v.text) + "'");
  return out;
}

bool to_bool(const Located& v) {
  if (v.text == "true") return true;
  if (v.text == "false") return false;
  parse_fail(v, "expected true or false");
}

std::vector<Located> split(const Located& v, char sep) {
  std::vector<Located> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = v.text.find(sep, start);
    const std::size_t len = (pos == std::string_view::npos ? v.text.size() : pos) - start;
    parts.push_back(trim({v.text.substr(start, len), v.line, v.column + static_cast<int>(start)}));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

TrigTerm to_term(const Located& v) {
  const auto parts = split(v, ':');
  if (parts.size() != 4) parse_fail(v, "expected amplitude:cos|sin:axis:frequency");
  TrigTerm t;
  t.amplitude = to_double(parts[0]);
  if (parts[1].text == "cos") t.sine = false;
  else if (parts[1].text == "sin") t.sine = true;
  else parse_fail(parts[1], "expected cos or sin");
  t.axis = static_cast<int>(to_integer(parts[2]));
  t.frequency = static_cast<int>(to_integer(parts[3]));
  return t;
}

void validate(RunConfig& cfg) {
  if (cfg.n != 1 && cfg.n != 2) invalid("grid.n", "must be 1 or 2");
  const int max_m = cfg.n == 1 ? 512 : 48;
  int rest = cfg.m;
  for (int f : {2, 3, 5})
    while (rest > 1 && rest % f == 0) rest /= f;
  if (cfg.m < 8 || cfg.m > max_m || cfg.m % 2 != 0 || rest != 1)
    invalid("grid.m", "must be even, 2-3-5 smooth and within [8, " + std::to_string(max_m) + "]");
  for (const TrigTerm& t : cfg.background_terms)
    if (t.axis < 0 || t.axis >= 2 * cfg.n) invalid("background.term", "axis out of range");
  if (cfg.lambda != -1.0 && cfg.lambda != 0.0 && cfg.lambda != 1.0)
    invalid("equation.lambda", "must be -1, 0 or 1");
  if (!(cfg.p0 > 2.0 * cfg.n)) invalid("run.p0", "must satisfy p0 > 2n");
  if (cfg.samples < 1) invalid("run.samples", "must be positive");
  if (cfg.trials < 100) invalid("run.trials", "must be at least 100");
  if (cfg.variant == SobolevVariant::TwoNorm && cfg.n < 2)
    invalid("run.variant", "two-norm needs n >= 2");
  cfg.solver.validate();

  const bool needs_rhs = cfg.command == Command::Solve || cfg.command == Command::Sweep ||
                         cfg.command == Command::Moser;
  if (needs_rhs && cfg.rhs.empty()) invalid("rhs", "at least one [rhs] section is required");
  if ((cfg.command == Command::Solve || cfg.command == Command::Moser) && cfg.rhs.size() != 1)
    invalid("rhs", "this command takes exactly one [rhs] section");
  for (const RhsSpec& r : cfg.rhs) {
    try {
      r.validate(cfg.n);
    } catch (const Error& e) {
      invalid("rhs", e.what());
    }
    if (r.kind == RhsKind::Smooth && 2 * r.bandwidth >= cfg.m)
      invalid("rhs.bandwidth", "must stay below m/2");
    if (r.kind == RhsKind::Cusp && r.mollification > 0.0 && r.mollification < 1.0 / cfg.m)
      invalid("rhs.mollification", "must be at least the grid spacing 1/m");
    for (const TrigTerm& t : r.potential)
      if (t.axis < 0 || t.axis >= 2 * cfg.n) invalid("rhs.term", "axis out of range");
  }
}

}  // namespace

const char* to_string(Command c) {
  switch (c) {
    case Command::Solve: return "solve";
    case Command::Sweep: return "sweep";
    case Command::CheckInequalities: return "check-inequalities";
    case Command::Moser: return "moser";
    case Command::Sobolev: return "sobolev";
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view name) {
  for (Command c : {Command::Solve, Command::Sweep, Command::CheckInequalities, Command::Moser,
                    Command::Sobolev})
    if (name == to_string(c)) return c;
  return std::nullopt;
}

void RunConfig::apply_seed(std::uint64_t new_seed) {
  seed = new_seed;
  for (std::size_t i = 0; i < rhs.size(); ++i)
    if (!rhs_seed_explicit[i]) rhs[i].seed = seed + i;
}

RunConfig parse_config(std::string_view text, Command command) {
  RunConfig cfg;
  cfg.command = command;
  std::string section;
  std::vector<bool> rhs_p0_explicit;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t len = (nl == std::string_view::npos ? text.size() : nl) - pos;
    std::string_view raw = text.substr(pos, len);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const std::size_t hash = raw.find('#'); hash != std::string_view::npos)
      raw = raw.substr(0, hash);
    const Located line = trim({raw, line_no, 1});
    if (line.text.empty()) continue;

    if (line.text.front() == '[') {
      if (line.text.back() != ']') parse_fail(line, "unterminated section header");
      section = std::string(line.text.substr(1, line.text.size() - 2));
      static const char* known[] = {"grid", "background", "equation", "solver", "rhs", "run"};
      if (std::find(std::begin(known), std::end(known), section) == std::end(known))
        parse_fail(line, "unknown section [" + section + "]");
      if (section == "rhs") {
        cfg.rhs.emplace_back();
        cfg.rhs.back().seed = 0;
        cfg.rhs_seed_explicit.push_back(false);
        rhs_p0_explicit.push_back(false);
      }
      continue;
    }

    const std::size_t eq = line.text.find('=');
    if (eq == std::string_view::npos) parse_fail(line, "expected key = value");
    const Located key = trim({line.text.substr(0, eq), line.line, line.column});
    const Located value =
        trim({line.text.substr(eq + 1), line.line, line.column + static_cast<int>(eq) + 1});
    if (section.empty()) parse_fail(key, "key outside of any section");
    if (value.text.empty()) parse_fail(value, "missing value");
    const std::string_view k = key.text;
    auto unknown = [&] { parse_fail(key, "unknown key '" + std::string(k) + "' in [" + section + "]"); };

    if (section == "grid") {
      if (k == "n") cfg.n = static_cast<int>(to_integer(value));
      else if (k == "m") cfg.m = static_cast<int>(to_integer(value));
      else unknown();
    } else if (section == "background") {
      if (k == "mode") {
        if (value.text == "flat") cfg.perturbed = false;
        else if (value.text == "perturbed") cfg.perturbed = true;
        else parse_fail(value, "expected flat or perturbed");
      } else if (k == "term") {
        cfg.background_terms.push_back(to_term(value));
      } else {
        unknown();
      }
    } else if (section == "equation") {
      if (k == "lambda") cfg.lambda = to_double(value);
      else unknown();
    } else if (section == "solver") {
      SolveConfig& s = cfg.solver;
      if (k == "continuation_steps") s.continuation_steps = static_cast<int>(to_integer(value));
      else if (k == "newton_tol") s.newton_tol = to_double(value);
      else if (k == "max_newton") s.max_newton = static_cast<int>(to_integer(value));
      else if (k == "linear_tol") s.linear_tol = to_double(value);
      else if (k == "damping_min_eig") s.damping_min_eig = to_double(value);
      else if (k == "max_halvings") s.max_halvings = static_cast<int>(to_integer(value));
      else unknown();
    } else if (section == "rhs") {
      RhsSpec& r = cfg.rhs.back();
      if (k == "kind") {
        if (value.text == "smooth") r.kind = RhsKind::Smooth;
        else if (value.text == "cusp") r.kind = RhsKind::Cusp;
        else if (value.text == "manufactured") r.kind = RhsKind::Manufactured;
        else parse_fail(value, "expected smooth, cusp or manufactured");
      } else if (k == "seed") {
        r.seed = static_cast<std::uint64_t>(to_integer(value));
        cfg.rhs_seed_explicit.back() = true;
      } else if (k == "amplitude") {
        r.amplitude = to_double(value);
      } else if (k == "bandwidth") {
        r.bandwidth = static_cast<int>(to_integer(value));
      } else if (k == "center") {
        const auto parts = split(value, ',');
        if (parts.size() > TorusGrid::kMaxAxes) parse_fail(value, "too many coordinates");
        for (std::size_t a = 0; a < parts.size(); ++a) r.center[a] = to_double(parts[a]);
      } else if (k == "beta") {
        r.beta = to_double(value);
      } else if (k == "cutoff_radius") {
        r.cutoff_radius = to_double(value);
      } else if (k == "mollification") {
        r.mollification = to_double(value);
      } else if (k == "p0") {
        r.p0 = to_double(value);
        rhs_p0_explicit.back() = true;
      } else if (k == "term") {
        r.potential.push_back(to_term(value));
      } else {
        unknown();
      }
    } else if (section == "run") {
      if (k == "seed") cfg.seed = static_cast<std::uint64_t>(to_integer(value));
      else if (k == "p0") cfg.p0 = to_double(value);
      else if (k == "samples") cfg.samples = static_cast<long>(to_integer(value));
      else if (k == "trials") cfg.trials = static_cast<int>(to_integer(value));
      else if (k == "variant") {
        if (value.text == "two-norm") cfg.variant = SobolevVariant::TwoNorm;
        else if (value.text == "one-norm") cfg.variant = SobolevVariant::OneNorm;
        else parse_fail(value, "expected two-norm or one-norm");
      } else if (k == "save_fields") {
        cfg.save_fields = to_bool(value);
      } else {
        unknown();
      }
    }
  }

  for (std::size_t i = 0; i < cfg.rhs.size(); ++i)
    if (!rhs_p0_explicit[i]) cfg.rhs[i].p0 = cfg.p0;
  cfg.solver.p0 = cfg.p0;
  cfg.apply_seed(cfg.seed);
  validate(cfg);
  return cfg;
}

}  // namespace cma
