#include "fom/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <variant>

#include "fom/error.hpp"

namespace fom {

namespace {

using RealRef = std::function<double&(ExperimentSpec&)>;
using IntRef = std::function<int&(ExperimentSpec&)>;
using BoolRef = std::function<bool&(ExperimentSpec&)>;
using TextRef = std::function<std::string&(ExperimentSpec&)>;
using ListRef = std::function<std::vector<double>&(ExperimentSpec&)>;

struct Field {
  const char* key;
  std::variant<RealRef, IntRef, BoolRef, TextRef, ListRef> ref;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"name", TextRef([](ExperimentSpec& s) -> std::string& { return s.name; })},
      {"d1", RealRef([](ExperimentSpec& s) -> double& { return s.params.d1; })},
      {"d2", RealRef([](ExperimentSpec& s) -> double& { return s.params.d2; })},
      {"a11", RealRef([](ExperimentSpec& s) -> double& { return s.params.a11; })},
      {"a12", RealRef([](ExperimentSpec& s) -> double& { return s.params.a12; })},
      {"a22", RealRef([](ExperimentSpec& s) -> double& { return s.params.a22; })},
      {"delta1", RealRef([](ExperimentSpec& s) -> double& { return s.params.delta1; })},
      {"delta2", RealRef([](ExperimentSpec& s) -> double& { return s.params.delta2; })},
      {"mu1", RealRef([](ExperimentSpec& s) -> double& { return s.params.mu1; })},
      {"mu2", RealRef([](ExperimentSpec& s) -> double& { return s.params.mu2; })},
      {"tau", RealRef([](ExperimentSpec& s) -> double& { return s.params.tau; })},
      {"T", RealRef([](ExperimentSpec& s) -> double& { return s.params.T; })},
      {"s0", RealRef([](ExperimentSpec& s) -> double& { return s.params.s0; })},
      {"growth", TextRef([](ExperimentSpec& s) -> std::string& { return s.growth_kind; })},
      {"growth.m", RealRef([](ExperimentSpec& s) -> double& { return s.growth_m; })},
      {"growth.a", RealRef([](ExperimentSpec& s) -> double& { return s.growth_a; })},
      {"impulse", TextRef([](ExperimentSpec& s) -> std::string& { return s.impulse_kind; })},
      {"impulse.theta", RealRef([](ExperimentSpec& s) -> double& { return s.impulse_theta; })},
      {"impulse.c", RealRef([](ExperimentSpec& s) -> double& { return s.impulse_c; })},
      {"impulse.d", RealRef([](ExperimentSpec& s) -> double& { return s.impulse_d; })},
      {"init.u_amp", RealRef([](ExperimentSpec& s) -> double& { return s.init_u_amp; })},
      {"init.v_amp", RealRef([](ExperimentSpec& s) -> double& { return s.init_v_amp; })},
      {"eigen.l", RealRef([](ExperimentSpec& s) -> double& { return s.eigen_l; })},
      {"eigen.l1", RealRef([](ExperimentSpec& s) -> double& { return s.eigen_l1; })},
      {"eigen.l2", RealRef([](ExperimentSpec& s) -> double& { return s.eigen_l2; })},
      {"eigen.N", IntRef([](ExperimentSpec& s) -> int& { return s.eigen_N; })},
      {"eigen.dt", RealRef([](ExperimentSpec& s) -> double& { return s.eigen_dt; })},
      {"sim.N", IntRef([](ExperimentSpec& s) -> int& { return s.sim.N; })},
      {"sim.dt", RealRef([](ExperimentSpec& s) -> double& { return s.sim.dt; })},
      {"sim.horizon", RealRef([](ExperimentSpec& s) -> double& { return s.sim.horizon; })},
      {"sim.vanish_eps", RealRef([](ExperimentSpec& s) -> double& { return s.sim.vanish_eps; })},
      {"sim.spread_width",
       RealRef([](ExperimentSpec& s) -> double& { return s.sim.spread_width; })},
      {"sim.snap_every", RealRef([](ExperimentSpec& s) -> double& { return s.sim.snap_every; })},
      {"sim.record_every", IntRef([](ExperimentSpec& s) -> int& { return s.sim.record_every; })},
      {"sim.impulse_at_zero",
       BoolRef([](ExperimentSpec& s) -> bool& { return s.sim.impulse_at_zero; })},
      {"sim.stop_on_outcome",
       BoolRef([](ExperimentSpec& s) -> bool& { return s.sim.stop_on_outcome; })},
      {"sim.dt_min", RealRef([](ExperimentSpec& s) -> double& { return s.sim.dt_min; })},
      {"sim.probe_x", RealRef([](ExperimentSpec& s) -> double& { return s.sim.probe_x; })},
      {"iterate.N", IntRef([](ExperimentSpec& s) -> int& { return s.iterate.N; })},
      {"iterate.dt", RealRef([](ExperimentSpec& s) -> double& { return s.iterate.dt; })},
      {"iterate.tol", RealRef([](ExperimentSpec& s) -> double& { return s.iterate.tol; })},
      {"iterate.max_iter", IntRef([](ExperimentSpec& s) -> int& { return s.iterate.max_iter; })},
      {"classify.rho", RealRef([](ExperimentSpec& s) -> double& { return s.rho; })},
      {"classify.mu_lo", RealRef([](ExperimentSpec& s) -> double& { return s.mu_lo; })},
      {"classify.mu_hi", RealRef([](ExperimentSpec& s) -> double& { return s.mu_hi; })},
      {"classify.resolution",
       RealRef([](ExperimentSpec& s) -> double& { return s.mu_resolution; })},
      {"sweep.key", TextRef([](ExperimentSpec& s) -> std::string& { return s.sweep_key; })},
      {"sweep.values",
       ListRef([](ExperimentSpec& s) -> std::vector<double>& { return s.sweep_values; })},
      {"output.dir", TextRef([](ExperimentSpec& s) -> std::string& { return s.output_dir; })},
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& key, const std::string& value, int line,
                       const std::string& what) {
  std::ostringstream os;
  if (line > 0) os << "line " << line << ": ";
  os << key << " = " << value << ": " << what;
  throw ConfigError(os.str());
}

double parse_real(const std::string& key, const std::string& text, int line) {
  double x = 0.0;
  const char* b = text.data();
  const char* e = b + text.size();
  if (!text.empty() && *b == '+') ++b;
  const auto [ptr, ec] = std::from_chars(b, e, x);
  if (ec != std::errc() || ptr != e || !std::isfinite(x)) fail(key, text, line, "expected a finite number");
  return x;
}

int parse_int(const std::string& key, const std::string& text, int line) {
  const double x = parse_real(key, text, line);
  if (x != std::floor(x) || std::abs(x) > 2e9) fail(key, text, line, "expected an integer");
  return static_cast<int>(x);
}

bool parse_bool(const std::string& key, const std::string& text, int line) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  fail(key, text, line, "expected true or false");
}

std::vector<double> parse_list(const std::string& key, const std::string& text, int line) {
  std::string body = text;
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') fail(key, text, line, "unterminated list");
    body = body.substr(1, body.size() - 2);
  }
  std::vector<double> out;
  if (trim(body).empty()) return out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(key, trim(item), line));
  return out;
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

InitialData ExperimentSpec::initial_data() const {
  return InitialData::cosine(params.s0, init_u_amp, init_v_amp);
}

void ExperimentSpec::sync() {
  if (growth_kind == "beverton_holt") {
    params.growth = GrowthFunction::beverton_holt(growth_m, growth_a);
  } else {
    throw ConfigError("growth: unknown kind '" + growth_kind + "' (expected beverton_holt)");
  }
  if (impulse_kind == "identity") {
    params.impulse = ImpulseFunction::identity();
  } else if (impulse_kind == "linear") {
    params.impulse = ImpulseFunction::linear(impulse_theta);
  } else if (impulse_kind == "saturating") {
    params.impulse = ImpulseFunction::saturating(impulse_c, impulse_d);
  } else {
    throw ConfigError("impulse: unknown kind '" + impulse_kind +
                      "' (expected identity, linear or saturating)");
  }
}

void set_value(ExperimentSpec& spec, const std::string& key, const std::string& raw, int line) {
  const std::string value = trim(raw);
  const auto& table = fields();
  const auto it = std::find_if(table.begin(), table.end(),
                               [&](const Field& f) { return key == f.key; });
  if (it == table.end()) fail(key, value, line, "unknown key");
  std::visit(
      [&](const auto& ref) {
        using R = std::decay_t<decltype(ref)>;
        if constexpr (std::is_same_v<R, RealRef>) {
          ref(spec) = parse_real(key, value, line);
        } else if constexpr (std::is_same_v<R, IntRef>) {
          ref(spec) = parse_int(key, value, line);
        } else if constexpr (std::is_same_v<R, BoolRef>) {
          ref(spec) = parse_bool(key, value, line);
        } else if constexpr (std::is_same_v<R, TextRef>) {
          ref(spec) = unquote(value);
        } else {
          ref(spec) = parse_list(key, value, line);
        }
      },
      it->ref);
  if (key == "growth" || key == "impulse" || key.rfind("growth.", 0) == 0 ||
      key.rfind("impulse.", 0) == 0) {
    try {
      spec.sync();
    } catch (const ConfigError& e) {
      fail(key, value, line, e.what());
    }
  }
}

ExperimentSpec parse_config(std::istream& in, const std::string& source) {
  ExperimentSpec spec;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto hash = text.find('#');
    if (hash != std::string::npos) text.erase(hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ": line " + std::to_string(line) + ": expected 'key = value'");
    }
    try {
      set_value(spec, trim(text.substr(0, eq)), text.substr(eq + 1), line);
    } catch (const ConfigError& e) {
      throw ConfigError(source + ": " + e.what());
    }
  }
  return spec;
}

ExperimentSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

void write_config(std::ostream& out, const ExperimentSpec& spec_in) {
  ExperimentSpec spec = spec_in;
  for (const Field& f : fields()) {
    out << f.key << " = ";
    std::visit(
        [&](const auto& ref) {
          using R = std::decay_t<decltype(ref)>;
          if constexpr (std::is_same_v<R, RealRef>) {
            out << fmt(ref(spec));
          } else if constexpr (std::is_same_v<R, IntRef>) {
            out << ref(spec);
          } else if constexpr (std::is_same_v<R, BoolRef>) {
            out << (ref(spec) ? "true" : "false");
          } else if constexpr (std::is_same_v<R, TextRef>) {
            out << '"' << ref(spec) << '"';
          } else {
            out << '[';
            const auto& v = ref(spec);
            for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << fmt(v[i]);
            out << ']';
          }
        },
        f.ref);
    out << '\n';
  }
}

std::vector<std::string> numeric_keys() {
  std::vector<std::string> keys;
  for (const Field& f : fields()) {
    if (std::holds_alternative<RealRef>(f.ref) || std::holds_alternative<IntRef>(f.ref)) {
      keys.emplace_back(f.key);
    }
  }
  return keys;
}

std::vector<std::string> preset_names() {
  return {"fig2a", "fig2b", "fig2c", "fig3-left", "fig3-right", "fig4-left", "fig4-right"};
}

ExperimentSpec preset(const std::string& name) {
  ExperimentSpec s;
  s.name = name;
  s.sim.snap_every = 5.0;
  if (name.rfind("fig2", 0) == 0) {
    ModelParams& p = s.params;
    p.d1 = 5.0;
    p.d2 = 40.0;
    p.delta1 = 0.6;
    p.delta2 = 0.9;
    p.a11 = 0.2;
    p.a12 = 0.8;
    p.a22 = 0.3;
    p.T = 10.0;
    p.tau = 5.0;
    s.growth_m = 1.5;
    s.growth_a = 1.0;
    s.impulse_kind = "linear";
    s.impulse_theta = 0.9;
    s.eigen_l = 10.0;
    s.eigen_N = 64;
    if (name == "fig2a") {
      s.sweep_key = "eigen.l";
      s.sweep_values = {5, 10, 15, 20, 25, 30};
    } else if (name == "fig2b") {
      s.sweep_key = "impulse.theta";
      s.sweep_values = {0.01, 0.11, 0.21, 0.31, 0.41, 0.51, 0.61, 0.71, 0.81, 0.91};
    } else if (name == "fig2c") {
      s.sweep_key = "tau";
      s.sweep_values = {2, 3, 4, 5, 6, 7, 8};
    } else {
      throw ConfigError("unknown preset '" + name + "'");
    }
  } else if (name == "fig3-left" || name == "fig3-right") {
    // ModelParams defaults are this experiment's rates.
    s.sim.horizon = 700.0;
    if (name == "fig3-left") {
      s.eigen_l = 45.0;
    } else {
      s.impulse_kind = "saturating";
      s.impulse_c = 4.0;
      s.impulse_d = 10.0;
      s.eigen_l = 2.65;
    }
  } else if (name == "fig4-left" || name == "fig4-right") {
    ModelParams& p = s.params;
    p.a12 = 1.7;
    p.delta1 = 0.9;
    p.delta2 = 0.9;
    p.T = 10.0;
    s.sim.horizon = 700.0;
    if (name == "fig4-left") {
      p.tau = 3.0;
      s.eigen_l = 50.0;
    } else {
      p.tau = 4.7;
      s.eigen_l = 3.1;
    }
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  s.sync();
  return s;
}

}  // namespace fom
