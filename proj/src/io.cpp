#include "mhd2d/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace mhd2d {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line;
};

[[noreturn]] void fail_at(int line, const std::string& what) {
  throw Error("line " + std::to_string(line) + ": " + what);
}

std::map<std::string, Entry> split_lines(std::string_view text) {
  std::map<std::string, Entry> out;
  int line = 0;
  while (!text.empty()) {
    ++line;
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (raw.empty()) continue;
    const auto eq = raw.find('=');
    if (eq == std::string_view::npos) fail_at(line, "expected key = value");
    const std::string key(trim(raw.substr(0, eq)));
    const std::string value(trim(raw.substr(eq + 1)));
    if (key.empty()) fail_at(line, "missing key");
    if (value.empty()) fail_at(line, "missing value for '" + key + "'");
    if (out.count(key)) fail_at(line, "duplicate key '" + key + "'");
    out.emplace(key, Entry{value, line});
  }
  return out;
}

template <typename Int>
Int parse_int(const Entry& e, const std::string& key) {
  Int v{};
  const char* end = e.value.data() + e.value.size();
  auto [p, ec] = std::from_chars(e.value.data(), end, v);
  if (ec != std::errc() || p != end) fail_at(e.line, "'" + key + "' must be an integer, got '" + e.value + "'");
  return v;
}

double parse_real(const Entry& e, const std::string& key) {
  try {
    return parse_double(e.value);
  } catch (const Error&) {
    fail_at(e.line, "'" + key + "' must be a number, got '" + e.value + "'");
  }
}

const std::array<const char*, 13> kConfigKeys = {
    "alpha", "beta", "nu", "eta", "n", "dt", "t_end", "output_every",
    "integrator", "seed", "init", "amplitude", "band"};

// Any entry left over after the known keys are taken is an error.
SolverConfig build_config(std::map<std::string, Entry> entries,
                          bool need_exponents) {
  SolverConfig c;
  auto take = [&](const char* key) -> std::optional<Entry> {
    auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    Entry e = it->second;
    entries.erase(it);
    return e;
  };
  auto real = [&](const char* key, double& dst, bool required) {
    if (auto e = take(key)) {
      dst = parse_real(*e, key);
    } else if (required) {
      throw Error(std::string("missing required key '") + key + "'");
    }
  };
  real("alpha", c.alpha, need_exponents);
  real("beta", c.beta, need_exponents);
  real("nu", c.nu, true);
  real("eta", c.eta, true);
  real("dt", c.dt, false);
  real("t_end", c.t_end, false);
  real("amplitude", c.amplitude, false);
  if (auto e = take("n")) c.n = parse_int<int>(*e, "n");
  if (auto e = take("output_every")) c.output_every = parse_int<int>(*e, "output_every");
  if (auto e = take("band")) c.band = parse_int<int>(*e, "band");
  if (auto e = take("seed")) c.seed = parse_int<std::uint64_t>(*e, "seed");
  if (auto e = take("integrator")) {
    if (e->value != to_string(Integrator::kIntegratingFactorRK4)) {
      fail_at(e->line, "unknown integrator '" + e->value + "' (expected ifrk4)");
    }
  }
  if (auto e = take("init")) {
    if (e->value == to_string(InitialKind::kOrszagTang)) {
      c.init = InitialKind::kOrszagTang;
    } else if (e->value == to_string(InitialKind::kRandomBand)) {
      c.init = InitialKind::kRandomBand;
    } else {
      fail_at(e->line, "unknown init '" + e->value + "' (expected orszag-tang or random-band)");
    }
  }
  if (!entries.empty()) {
    const auto& [key, e] = *entries.begin();
    fail_at(e.line, "unknown key '" + key + "'");
  }
  return c;
}

void validate_at(const SolverConfig& c, const std::map<std::string, Entry>& entries) {
  try {
    c.validate();
  } catch (const Error& err) {
    // Point at the line of the offending key when it can be named.
    const std::string msg = err.what();
    for (const char* key : kConfigKeys) {
      const std::string k = key;
      if (msg.find(": " + k + " ") != std::string::npos) {
        if (auto it = entries.find(k); it != entries.end()) fail_at(it->second.line, msg);
      }
    }
    throw;
  }
}

std::vector<double> parse_list(const Entry& e, const std::string& key) {
  std::vector<double> out;
  std::string s = e.value;
  for (char& ch : s) {
    if (ch == ',') ch = ' ';
  }
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(parse_real(Entry{tok, e.line}, key));
  if (out.empty()) fail_at(e.line, "'" + key + "' needs at least one value");
  return out;
}

void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = char((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

void put_f64(std::ostream& out, double x) {
  const auto v = std::bit_cast<std::uint64_t>(x);
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = char((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

std::uint64_t get_le(std::istream& in, int bytes) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), bytes)) throw Error("checkpoint: truncated file");
  std::uint64_t v = 0;
  for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_le(in, 8)); }

void put_field(std::ostream& out, const SpectralField& f) {
  const ComplexArray& c = f.coeffs();
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index k = 0; k < c.cols(); ++k) {
      put_f64(out, c(i, k).real());
      put_f64(out, c(i, k).imag());
    }
  }
}

SpectralField get_field(std::istream& in, const TorusGrid& grid) {
  SpectralField f(grid);
  ComplexArray& c = f.coeffs();
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index k = 0; k < c.cols(); ++k) {
      const double re = get_f64(in);
      c(i, k) = {re, get_f64(in)};
    }
  }
  f.set_dealiased(is_dealiased(f));
  return f;
}

constexpr std::array<const char*, 16> kCsvColumns = {
    "t", "energy_u", "energy_b", "X", "diss_u", "diff_b", "hbeta_b", "h2beta_b",
    "lp2_w", "lp4_w", "lp8_w", "linf_w", "linf_grad_u", "int_diss_u",
    "int_diff_b", "int_hbeta_j"};

std::array<double, 16> csv_values(const DiagnosticsRecord& r) {
  return {r.t, r.energy_u, r.energy_b, r.X, r.diss_u, r.diff_b, r.hbeta_b,
          r.h2beta_b, r.lp_w[0], r.lp_w[1], r.lp_w[2], r.linf_w,
          r.linf_grad_u, r.int_diss_u, r.int_diff_b, r.int_hbeta_j};
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw Error("format_double failed");
  return std::string(buf, p);
}

double parse_double(std::string_view token) {
  double v = 0.0;
  const char* end = token.data() + token.size();
  auto [p, ec] = std::from_chars(token.data(), end, v);
  if (token.empty() || ec != std::errc() || p != end) {
    throw Error("not a number: '" + std::string(token) + "'");
  }
  return v;
}

SolverConfig parse_config_text(std::string_view text) {
  const auto entries = split_lines(text);
  SolverConfig c = build_config(entries, true);
  validate_at(c, entries);
  return c;
}

SolverConfig parse_config(const std::filesystem::path& path) {
  try {
    return parse_config_text(read_text_file(path));
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

std::string emit_config(const SolverConfig& c) {
  std::ostringstream out;
  out << "alpha = " << format_double(c.alpha) << '\n'
      << "beta = " << format_double(c.beta) << '\n'
      << "nu = " << format_double(c.nu) << '\n'
      << "eta = " << format_double(c.eta) << '\n'
      << "n = " << c.n << '\n'
      << "dt = " << format_double(c.dt) << '\n'
      << "t_end = " << format_double(c.t_end) << '\n'
      << "output_every = " << c.output_every << '\n'
      << "integrator = " << to_string(c.integrator) << '\n'
      << "seed = " << c.seed << '\n'
      << "init = " << to_string(c.init) << '\n'
      << "amplitude = " << format_double(c.amplitude) << '\n'
      << "band = " << c.band << '\n';
  return out.str();
}

std::vector<SweepPoint> SweepSpec::points() const {
  std::vector<SweepPoint> out;
  for (double a : alphas) {
    for (double b : betas) {
      SolverConfig c = base;
      c.alpha = a;
      c.beta = b;
      out.push_back({c, classify_regime(c)});
    }
  }
  return out;
}

SweepSpec parse_sweep_text(std::string_view text) {
  auto entries = split_lines(text);
  SweepSpec spec;
  for (const char* key : {"alphas", "betas"}) {
    auto it = entries.find(key);
    if (it == entries.end()) throw Error(std::string("missing required key '") + key + "'");
    (std::string(key) == "alphas" ? spec.alphas : spec.betas) = parse_list(it->second, key);
    entries.erase(it);
  }
  for (const char* key : {"alpha", "beta"}) {
    if (auto it = entries.find(key); it != entries.end()) {
      fail_at(it->second.line, std::string("'") + key + "' is set per point; use '" + key + "s'");
    }
  }
  spec.base = build_config(entries, false);
  // Exponents are checked per point; the shared keys must be valid as is.
  SolverConfig probe = spec.base;
  probe.alpha = 0.0;
  validate_at(probe, entries);
  return spec;
}

SweepSpec parse_sweep(const std::filesystem::path& path) {
  try {
    return parse_sweep_text(read_text_file(path));
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void write_checkpoint(const std::filesystem::path& path, const MHDState& state,
                      const SolverConfig& config) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write checkpoint " + path.string());
  out.write("MHD2", 4);
  put_u32(out, 1);
  put_u32(out, std::uint32_t(state.grid().n()));
  put_f64(out, state.t);
  put_f64(out, config.alpha);
  put_f64(out, config.beta);
  put_f64(out, config.nu);
  put_f64(out, config.eta);
  put_field(out, state.w);
  put_field(out, state.j);
  if (!out.flush()) throw Error("error writing checkpoint " + path.string());
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open checkpoint " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "MHD2", 4) != 0) {
    throw Error("checkpoint: bad magic in " + path.string());
  }
  const auto version = get_le(in, 4);
  if (version != 1) throw Error("checkpoint: unsupported version " + std::to_string(version));
  const auto n = get_le(in, 4);
  if (n < 8 || n > (1u << 16) || (n & (n - 1)) != 0) {
    throw Error("checkpoint: invalid grid size " + std::to_string(n));
  }
  const double t = get_f64(in);
  const double alpha = get_f64(in), beta = get_f64(in), nu = get_f64(in), eta = get_f64(in);
  const TorusGrid grid{int(n)};
  SpectralField w = get_field(in, grid);
  SpectralField j = get_field(in, grid);
  if (in.peek() != std::char_traits<char>::eof()) throw Error("checkpoint: trailing bytes");
  return Checkpoint{alpha, beta, nu, eta, MHDState(t, std::move(w), std::move(j))};
}

std::string csv_header() {
  std::string out;
  for (const char* c : kCsvColumns) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

std::string csv_row(const DiagnosticsRecord& r) {
  std::string out;
  for (double v : csv_values(r)) {
    if (!out.empty()) out += ',';
    out += format_double(v);
  }
  return out;
}

std::vector<DiagnosticsRecord> read_csv(const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  if (!std::getline(in, line) || line != csv_header()) {
    throw Error(path.string() + ": unexpected CSV header");
  }
  std::vector<DiagnosticsRecord> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::array<double, 16> v{};
    std::size_t pos = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto comma = line.find(',', pos);
      if ((comma == std::string::npos) != (i + 1 == v.size())) {
        fail_at(lineno, "expected " + std::to_string(v.size()) + " columns");
      }
      v[i] = parse_double(std::string_view(line).substr(pos, comma - pos));
      pos = comma + 1;
    }
    DiagnosticsRecord r;
    r.t = v[0];
    r.energy_u = v[1];
    r.energy_b = v[2];
    r.X = v[3];
    r.diss_u = v[4];
    r.diff_b = v[5];
    r.hbeta_b = v[6];
    r.h2beta_b = v[7];
    r.lp_w = {v[8], v[9], v[10], v[11]};
    r.linf_w = v[11];
    r.linf_grad_u = v[12];
    r.int_diss_u = v[13];
    r.int_diff_b = v[14];
    r.int_hbeta_j = v[15];
    out.push_back(r);
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(text.data(), std::streamsize(text.size()));
  if (!out.flush()) throw Error("error writing " + path.string());
}

}  // namespace mhd2d
