#include "superres/sweep_config.hpp"

#include "superres/errors.hpp"
#include "superres/pixels.hpp"
#include "superres/text_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace superres {

std::string_view to_string(SweepMethod method) noexcept {
  return method == SweepMethod::Projection ? "projection" : "direct";
}

SweepMethod parse_sweep_method(std::string_view name) {
  if (name == "projection") return SweepMethod::Projection;
  if (name == "direct") return SweepMethod::Direct;
  throw ConfigError("unknown method '" + std::string(name) + "'");
}

SweepConfig SweepConfig::defaults_for(PsfKind kind) {
  SweepConfig c;
  c.psf_kind = kind;
  if (kind == PsfKind::Sinc) {
    c.delta_start = 0.067;
    c.delta_stop = 0.67;
    c.delta_step = 0.067;
    c.ccd_pixels = 2560;
    c.ccd_half_width = 128.0;
  }
  return c;
}

PsfModel SweepConfig::make_psf() const {
  switch (psf_kind) {
  case PsfKind::Gaussian:
    return make_gaussian(width);
  case PsfKind::Sinc:
    return make_sinc(width, sinc_truncation);
  case PsfKind::Tabulated: {
    const auto rows = read_two_column_file(psf_file);
    return make_tabulated(rows);
  }
  }
  throw ConfigError("unsupported psf kind");
}

double unit_grid_point(double start, double step, std::size_t k) {
  const double v = start + static_cast<double>(k) * step;
  return std::round(v * 1e12) / 1e12;
}

std::vector<double> SweepConfig::deltas() const {
  std::vector<double> out;
  for (std::size_t k = 0;; ++k) {
    const double d = unit_grid_point(delta_start, delta_step, k);
    if (d > delta_stop + 1e-9 * delta_step) break;
    out.push_back(d * width);
  }
  return out;
}

std::vector<double> SweepConfig::pixel_edges() const {
  const double pitch = 2.0 * ccd_half_width * width / static_cast<double>(ccd_pixels);
  return uniform_pixel_edges(pitch, ccd_pixels);
}

bool SweepConfig::has_method(SweepMethod m) const noexcept {
  return std::find(methods.begin(), methods.end(), m) != methods.end();
}

void SweepConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("sweep config: " + what); };
  if (!(width > 0.0) || !std::isfinite(width)) fail("width must be positive");
  if (psf_kind == PsfKind::Tabulated && psf_file.empty()) fail("tabulated psf needs psf_file");
  if (!(sinc_truncation > 0.0)) fail("sinc_truncation must be positive");
  if (!(delta_start > 0.0) || !std::isfinite(delta_start)) fail("delta_start must be positive");
  if (!(delta_step > 0.0) || !std::isfinite(delta_step)) fail("delta_step must be positive");
  if (!(delta_stop >= delta_start) || !std::isfinite(delta_stop))
    fail("delta_stop must be >= delta_start");
  if (n_trials < 2) fail("n_trials must be >= 2");
  if (photon_budget == 0) fail("photon_budget must be positive");
  if (methods.empty()) fail("methods must name at least one of projection, direct");
  if (ccd_pixels < 2) fail("ccd_pixels must be >= 2");
  if (!(ccd_half_width > 0.0)) fail("ccd_half_width must be positive");
  if (emccd) {
    try {
      emccd->validate();
    } catch (const ParameterError& e) {
      fail(e.what());
    }
  }
}

std::vector<std::pair<std::string, std::string>> SweepConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("psf", std::string(to_string(psf_kind)));
  out.emplace_back("width", format_double(width));
  if (psf_kind == PsfKind::Tabulated) out.emplace_back("psf_file", psf_file);
  if (psf_kind == PsfKind::Sinc) out.emplace_back("sinc_truncation", format_double(sinc_truncation));
  out.emplace_back("delta_start", format_double(delta_start));
  out.emplace_back("delta_stop", format_double(delta_stop));
  out.emplace_back("delta_step", format_double(delta_step));
  out.emplace_back("n_trials", std::to_string(n_trials));
  out.emplace_back("photon_budget", std::to_string(photon_budget));
  out.emplace_back("photon_model", std::string(to_string(photon_model)));
  std::string m;
  for (auto method : methods) {
    if (!m.empty()) m += ',';
    m += to_string(method);
  }
  out.emplace_back("methods", m);
  out.emplace_back("seed", std::to_string(seed));
  out.emplace_back("ccd_pixels", std::to_string(ccd_pixels));
  out.emplace_back("ccd_half_width", format_double(ccd_half_width));
  out.emplace_back("emccd", emccd ? "true" : "false");
  if (emccd) {
    out.emplace_back("emccd_gain", format_double(emccd->gain));
    out.emplace_back("emccd_readout_sigma", format_double(emccd->readout_sigma));
    out.emplace_back("emccd_pixel_capacity", format_double(emccd->pixel_capacity));
  }
  out.emplace_back("dump_trials", dump_trials ? "true" : "false");
  return out;
}

namespace {

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::string unquote(const std::string& v, std::size_t lineno) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
  if (!v.empty() && (v.front() == '"' || v.back() == '"'))
    throw ConfigError("line " + std::to_string(lineno) + ": unbalanced quote");
  return v;
}

struct Entry {
  std::string value;
  std::size_t line;
};

[[noreturn]] void bad_value(const std::string& key, const Entry& e, const char* expected) {
  throw ConfigError("line " + std::to_string(e.line) + ": " + key + " expects " + expected +
                    ", got '" + e.value + "'");
}

double as_double(const std::string& key, const Entry& e) {
  try {
    return parse_double(e.value);
  } catch (const DataError&) {
    bad_value(key, e, "a number");
  }
}

std::uint64_t as_uint(const std::string& key, const Entry& e) {
  std::uint64_t v = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec == std::errc{} && res.ptr == last) return v;
  // Allow integral values written as 1e5.
  double d = 0.0;
  try {
    d = parse_double(e.value);
  } catch (const DataError&) {
    bad_value(key, e, "a non-negative integer");
  }
  if (!(d >= 0.0) || d != std::floor(d) || d > 1.8e19) bad_value(key, e, "a non-negative integer");
  return static_cast<std::uint64_t>(d);
}

bool as_bool(const std::string& key, const Entry& e) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  bad_value(key, e, "true or false");
}

} // namespace

SweepConfig parse_sweep_config(std::istream& in) {
  std::map<std::string, Entry> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    if (body.front() == '[')
      throw ConfigError("line " + std::to_string(lineno) + ": tables are not supported");
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = unquote(trim(body.substr(eq + 1)), lineno);
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (value.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty value for " + key);
    if (!entries.emplace(key, Entry{value, lineno}).second)
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key " + key);
  }

  PsfKind kind = PsfKind::Gaussian;
  if (auto it = entries.find("psf"); it != entries.end()) {
    try {
      kind = parse_psf_kind(it->second.value);
    } catch (const Error&) {
      throw ConfigError("line " + std::to_string(it->second.line) + ": unknown psf kind '" +
                        it->second.value + "'");
    }
  }
  SweepConfig c = SweepConfig::defaults_for(kind);
  bool emccd_on = false;
  EmccdParams emccd;
  bool emccd_keys = false;

  for (const auto& [key, e] : entries) {
    if (key == "psf") {
    } else if (key == "width") {
      c.width = as_double(key, e);
    } else if (key == "psf_file") {
      c.psf_file = e.value;
    } else if (key == "sinc_truncation") {
      c.sinc_truncation = as_double(key, e);
    } else if (key == "delta_start") {
      c.delta_start = as_double(key, e);
    } else if (key == "delta_stop") {
      c.delta_stop = as_double(key, e);
    } else if (key == "delta_step") {
      c.delta_step = as_double(key, e);
    } else if (key == "n_trials") {
      c.n_trials = as_uint(key, e);
    } else if (key == "photon_budget") {
      c.photon_budget = as_uint(key, e);
    } else if (key == "photon_model") {
      try {
        c.photon_model = parse_photon_model(e.value);
      } catch (const Error&) {
        bad_value(key, e, "fixed or poisson");
      }
    } else if (key == "methods") {
      c.methods.clear();
      std::stringstream ss(e.value);
      std::string item;
      std::set<SweepMethod> seen;
      while (std::getline(ss, item, ',')) {
        const auto m = parse_sweep_method(trim(item));
        if (seen.insert(m).second) c.methods.push_back(m);
      }
      std::sort(c.methods.begin(), c.methods.end());
    } else if (key == "seed") {
      c.seed = as_uint(key, e);
    } else if (key == "ccd_pixels") {
      c.ccd_pixels = as_uint(key, e);
    } else if (key == "ccd_half_width") {
      c.ccd_half_width = as_double(key, e);
    } else if (key == "emccd") {
      emccd_on = as_bool(key, e);
    } else if (key == "emccd_gain") {
      emccd.gain = as_double(key, e);
      emccd_keys = true;
    } else if (key == "emccd_readout_sigma") {
      emccd.readout_sigma = as_double(key, e);
      emccd_keys = true;
    } else if (key == "emccd_pixel_capacity") {
      emccd.pixel_capacity = e.value == "inf" ? std::numeric_limits<double>::infinity()
                                              : as_double(key, e);
      emccd_keys = true;
    } else if (key == "workers") {
      c.workers = as_uint(key, e);
    } else if (key == "dump_trials") {
      c.dump_trials = as_bool(key, e);
    } else {
      throw ConfigError("line " + std::to_string(e.line) + ": unknown key '" + key + "'");
    }
  }
  if (emccd_keys && !emccd_on) throw ConfigError("emccd_* keys given but emccd is not true");
  if (emccd_on) c.emccd = emccd;
  c.validate();
  return c;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  return parse_sweep_config(in);
}

std::size_t effective_workers(const SweepConfig& config) {
  if (const char* env = std::getenv("SUPERRES_WORKERS"); env && *env) {
    std::size_t v = 0;
    const std::string_view s(env);
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
      throw ConfigError("SUPERRES_WORKERS must be a non-negative integer");
    if (v > 0) return v;
  }
  if (config.workers > 0) return config.workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace superres
