#pragma once

// Command-line front end: bound, sweep, broadcast, verify.
//
// Exit codes: 0 ok, 1 verification failure, 2 invalid arguments or domain,
// 3 I/O failure. Errors go to the error stream as one-line JSON.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bb/bounds.hpp"
#include "bb/broadcast.hpp"
#include "bb/error.hpp"
#include "bb/parallel.hpp"
#include "bb/verify.hpp"

namespace bb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitIo = 3;

using Json = nlohmann::ordered_json;

enum class Method { dsw18, gew16, limit, plob, pure_amp, pure_loss };

// Alphabetical, which is also the row order of sweeps.
inline const std::map<std::string, Method>& method_table() {
  static const std::map<std::string, Method> table{{"dsw18", Method::dsw18}, {"gew16", Method::gew16},
                                                   {"limit", Method::limit}, {"plob", Method::plob},
                                                   {"pure_amp", Method::pure_amp}, {"pure_loss", Method::pure_loss}};
  return table;
}

inline std::string to_string(Method m) {
  for (const auto& [name, value] : method_table())
    if (value == m) return name;
  return "unknown";
}

inline Method parse_method(const std::string& name) {
  const auto it = method_table().find(name);
  if (it == method_table().end()) fail(ErrorCode::invalid_argument, "unknown method '" + name + "'");
  return it->second;
}

struct Params {
  std::optional<double> eta, nb, ns, gain, xi;
  std::string channel = "thermal";
};

// Parameters a method reads, given the channel kind. nb defaults to 0 when absent.
inline std::vector<std::string> parameters_used(Method m, const std::string& channel) {
  switch (m) {
    case Method::dsw18: return {"eta", "nb", "ns"};
    case Method::limit:
    case Method::plob: return {"eta", "nb"};
    case Method::pure_loss: return {"eta", "ns"};
    case Method::pure_amp: return {"gain", "ns"};
    case Method::gew16:
      if (channel == "amplifier") return {"gain", "nb", "ns"};
      if (channel == "additive_noise") return {"xi", "ns"};
      return {"eta", "nb", "ns"};
  }
  return {};
}

struct Evaluation {
  double bits = 0;
  std::vector<std::string> flags;
};

namespace detail {

inline double need(const std::optional<double>& v, const char* flag, Method m) {
  if (!v) fail(ErrorCode::invalid_argument, to_string(m) + " requires " + flag);
  return *v;
}

inline bounds::ChannelSpec channel_of(const Params& p, Method m) {
  if (p.channel == "thermal") return bounds::ChannelSpec::thermal(need(p.eta, "--eta", m), p.nb.value_or(0));
  if (p.channel == "amplifier") return bounds::ChannelSpec::amplifier(need(p.gain, "--gain", m), p.nb.value_or(0));
  if (p.channel == "additive_noise") return bounds::ChannelSpec::additive_noise(need(p.xi, "--xi", m));
  fail(ErrorCode::invalid_argument, "unknown channel '" + p.channel + "'");
}

inline void require_thermal(const Params& p, Method m) {
  if (p.channel != "thermal") fail(ErrorCode::unsupported, to_string(m) + " supports thermal channels only");
}

inline std::optional<double> param(const Params& p, const std::string& name) {
  if (name == "eta") return p.eta;
  if (name == "nb") return p.nb;
  if (name == "ns") return p.ns;
  if (name == "gain") return p.gain;
  if (name == "xi") return p.xi;
  return std::nullopt;
}

inline void set_param(Params& p, const std::string& name, double v) {
  if (name == "eta") p.eta = v;
  else if (name == "nb") p.nb = v;
  else if (name == "ns") p.ns = v;
  else if (name == "gain") p.gain = v;
  else if (name == "xi") p.xi = v;
  else fail(ErrorCode::invalid_argument, "unknown parameter '" + name + "'");
}

}  // namespace detail

// Throws bb::Error on domain violations (entanglement_breaking for dsw18/limit
// on entanglement-breaking channels).
inline Evaluation evaluate(Method m, const Params& p) {
  using namespace bounds;
  Evaluation ev;
  switch (m) {
    case Method::dsw18: {
      detail::require_thermal(p, m);
      const auto ch = detail::channel_of(p, m);
      if (is_entanglement_breaking(ch))
        fail(ErrorCode::entanglement_breaking, "dsw18: channel is entanglement breaking (eta <= (1-eta) N_B)");
      ev.bits = dsw18_bound(ch, detail::need(p.ns, "--ns", m));
      break;
    }
    case Method::gew16: ev.bits = gew16_bound(detail::channel_of(p, m), detail::need(p.ns, "--ns", m)); break;
    case Method::limit: {
      detail::require_thermal(p, m);
      const auto d = decompose_amp_then_loss(detail::channel_of(p, m));
      ev.bits = limit_bound(static_cast<double>(d.transmissivity), static_cast<double>(d.gain));
      break;
    }
    case Method::plob: {
      detail::require_thermal(p, m);
      const auto b = plob_bound(detail::need(p.eta, "--eta", m), p.nb.value_or(0));
      ev.bits = b.bits;
      if (b.clipped) ev.flags.push_back("clipped");
      break;
    }
    case Method::pure_loss:
      ev.bits = pure_loss_bound(detail::need(p.eta, "--eta", m), detail::need(p.ns, "--ns", m));
      break;
    case Method::pure_amp:
      ev.bits = pure_amp_bound(detail::need(p.gain, "--gain", m), detail::need(p.ns, "--ns", m));
      break;
  }
  return ev;
}

// %.{precision}g; non-finite values print as inf / -inf / nan.
inline std::string format_number(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

inline Json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v, 1);
}

// ---------------------------------------------------------------- sweep ----

struct SweepSpec {
  std::vector<Method> methods;
  std::string vary = "eta";
  double start = 0, stop = 0, step = 0;
  Params fixed;
};

struct SweepRow {
  Method method;
  Params point;
  std::optional<double> bits;
  std::string flag;
};

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig3", "fig4a", "fig4b", "fig4c"};
  return names;
}

inline SweepSpec preset(const std::string& name) {
  const std::vector<Method> three{Method::dsw18, Method::gew16, Method::plob};
  SweepSpec s;
  s.methods = three;
  if (name == "fig3") {
    s.vary = "eta";
    s.start = 0.5, s.stop = 1, s.step = 0.005;
    s.fixed.ns = 0.1, s.fixed.nb = 1;
    return s;
  }
  const std::map<std::string, double> nb{{"fig4a", 3e-7}, {"fig4b", 1e-3}, {"fig4c", 0.1}};
  const auto it = nb.find(name);
  if (it == nb.end()) fail(ErrorCode::invalid_argument, "unknown preset '" + name + "'");
  s.vary = "ns";
  s.start = 0, s.stop = 1, s.step = 0.01;
  s.fixed.eta = 0.1, s.fixed.nb = it->second;
  return s;
}

// start, start + step, ..., stop (inclusive up to rounding).
inline std::vector<double> grid_points(double start, double stop, double step) {
  require(std::isfinite(start) && std::isfinite(stop) && std::isfinite(step), "sweep: range must be finite");
  require(step > 0, "sweep: step must be positive");
  require(stop >= start, "sweep: stop must be >= start");
  const double span = (stop - start) / step;
  require(span < 1e6, "sweep: too many grid points");
  const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = start + static_cast<double>(i) * step;
  if (std::abs(out.back() - stop) < 1e-9 * step) out.back() = stop;
  return out;
}

inline void validate(const SweepSpec& s) {
  require(!s.methods.empty(), "sweep: method set must be non-empty");
  require(s.vary == "eta" || s.vary == "ns", "sweep: --vary must be eta or ns");
  for (auto m : s.methods) {
    if (m == Method::dsw18 || m == Method::limit || m == Method::plob) detail::require_thermal(s.fixed, m);
    for (const auto& name : parameters_used(m, s.fixed.channel)) {
      if (name == s.vary || name == "nb") continue;
      if (!detail::param(s.fixed, name))
        fail(ErrorCode::invalid_argument, "sweep: method " + to_string(m) + " needs --" + name);
    }
  }
}

// Rows sorted by (method, sweep variable). Entanglement-breaking points are
// flagged EB and points outside a method's parameter domain are flagged
// domain; both carry no value.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  validate(spec);
  std::set<Method> methods(spec.methods.begin(), spec.methods.end());
  std::vector<Method> ordered(methods.begin(), methods.end());
  std::sort(ordered.begin(), ordered.end(), [](Method a, Method b) { return to_string(a) < to_string(b); });
  const auto xs = grid_points(spec.start, spec.stop, spec.step);

  std::vector<SweepRow> rows;
  for (auto m : ordered)
    for (double x : xs) {
      SweepRow r{m, spec.fixed, std::nullopt, ""};
      detail::set_param(r.point, spec.vary, x);
      rows.push_back(std::move(r));
    }
  const auto results = parallel_map<SweepRow>(rows.size(), [&](std::size_t i) {
    SweepRow r = rows[i];
    try {
      const auto ev = evaluate(r.method, r.point);
      r.bits = ev.bits;
      if (!ev.flags.empty()) r.flag = ev.flags.front();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::entanglement_breaking) r.flag = "EB";
      else if (e.code() == ErrorCode::invalid_argument) r.flag = "domain";
      else throw;
    }
    return r;
  });
  return results;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows, int precision) {
  const auto cell = [&](const std::optional<double>& v) { return v ? format_number(*v, precision) : std::string(); };
  std::string out = "method,eta,nb,ns,bound_bits,flag\n";
  for (const auto& r : rows) {
    out += to_string(r.method) + ',' + cell(r.point.eta) + ',' + cell(r.point.nb) + ',' + cell(r.point.ns) + ',' +
           cell(r.bits) + ',' + r.flag + '\n';
  }
  return out;
}

inline std::string sweep_json(const std::vector<SweepRow>& rows, int precision) {
  const auto num = [&](const std::optional<double>& v) -> Json {
    if (!v) return nullptr;
    if (!std::isfinite(*v)) return json_number(*v);
    return std::stod(format_number(*v, precision));
  };
  std::string out;
  for (const auto& r : rows) {
    Json j;
    j["method"] = to_string(r.method);
    j["eta"] = num(r.point.eta);
    j["nb"] = num(r.point.nb);
    j["ns"] = num(r.point.ns);
    if (r.point.gain) j["gain"] = num(r.point.gain);
    if (r.point.xi) j["xi"] = num(r.point.xi);
    j["bound_bits"] = num(r.bits);
    j["flag"] = r.flag;
    out += j.dump() + '\n';
  }
  return out;
}

// ------------------------------------------------------------ broadcast ----

// "B=0.3" -> {B, 0.3}
inline broadcast::Receiver parse_receiver(const std::string& arg) {
  const auto eq = arg.find('=');
  require(eq != std::string::npos && eq > 0 && eq + 1 < arg.size(), "broadcast: expected NAME=ETA, got '" + arg + "'");
  const std::string value = arg.substr(eq + 1);
  std::size_t used = 0;
  double eta = 0;
  try {
    eta = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == value.size(), "broadcast: invalid transmissivity '" + value + "'");
  return {arg.substr(0, eq), eta};
}

inline Json broadcast_region_json(const broadcast::BroadcastSpec& spec, double ns) {
  Json j = Json::object();
  for (const auto& entry : broadcast::broadcast_region(spec, ns)) {
    Json e;
    e["bound_bits"] = json_number(entry.bound_bits);
    e["limit_bits"] = json_number(broadcast::broadcast_bound_limit(spec, entry.mask));
    e["gaussian_check_bits"] = json_number(broadcast::broadcast_gaussian_check(spec, entry.mask, ns));
    j[entry.subset] = std::move(e);
  }
  return j;
}

// --------------------------------------------------------------- driver ----

namespace detail {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void emit_error(std::ostream& err, const std::string& code, const std::string& message) {
  Json j;
  j["error"] = code;
  j["message"] = message;
  err << j.dump() << '\n';
}

inline void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.flush();
  if (!f) throw IoError("failed writing '" + path + "'");
}

inline CLI::Option* add_number(CLI::App* app, const std::string& name, std::optional<double>& target,
                               const std::string& help) {
  return app->add_option_function<double>(name, [&target](const double& v) { target = v; }, help);
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Upper bounds on secret-key rates of bosonic Gaussian channels", "bb"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  // bound
  auto* bound = app.add_subcommand("bound", "Evaluate one bound and print a JSON record");
  std::string bound_method;
  Params bp;
  bound->add_option("--method", bound_method, "dsw18 | gew16 | plob | pure_loss | pure_amp | limit")->required();
  bound->add_option("--channel", bp.channel, "thermal | amplifier | additive_noise (default thermal)");
  detail::add_number(bound, "--eta", bp.eta, "Transmissivity");
  detail::add_number(bound, "--nb", bp.nb, "Environment thermal photon number (default 0)");
  detail::add_number(bound, "--ns", bp.ns, "Mean input photon number");
  detail::add_number(bound, "--gain", bp.gain, "Amplifier gain");
  detail::add_number(bound, "--xi", bp.xi, "Additive noise variance");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Evaluate bounds on a parameter grid (CSV or JSON lines)");
  std::string preset_name, vary = "eta", out_path, format = "csv";
  std::vector<std::string> sweep_methods;
  Params sp;
  std::optional<double> start, stop, step;
  int precision = 12;
  std::uint64_t sweep_seed = 0;
  auto* preset_opt = sweep->add_option("--preset", preset_name, "fig3 | fig4a | fig4b | fig4c");
  std::vector<CLI::Option*> grid_opts{
      sweep->add_option("--method", sweep_methods, "Methods (repeat or comma separate)")->delimiter(','),
      sweep->add_option("--vary", vary, "Swept parameter: eta | ns"),
      sweep->add_option("--channel", sp.channel, "thermal | amplifier | additive_noise"),
      detail::add_number(sweep, "--start", start, "First grid value"),
      detail::add_number(sweep, "--stop", stop, "Last grid value (inclusive)"),
      detail::add_number(sweep, "--step", step, "Grid spacing"),
      detail::add_number(sweep, "--eta", sp.eta, "Fixed transmissivity"),
      detail::add_number(sweep, "--nb", sp.nb, "Fixed environment photon number"),
      detail::add_number(sweep, "--ns", sp.ns, "Fixed input photon number"),
      detail::add_number(sweep, "--gain", sp.gain, "Fixed amplifier gain"),
      detail::add_number(sweep, "--xi", sp.xi, "Fixed additive noise"),
  };
  sweep->add_option("--out", out_path, "Output path (default standard output)");
  sweep->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--precision", precision, "Significant digits (default 12)")->check(CLI::Range(1, 17));
  sweep->add_option("--seed", sweep_seed, "Accepted for symmetry with verify; sweeps are deterministic");

  // broadcast
  auto* bcast = app.add_subcommand("broadcast", "Rate-sum bounds for every receiver subset of a pure-loss broadcast");
  std::vector<std::string> receivers;
  double bcast_ns = 0;
  bcast->add_option("--eta", receivers, "Receiver as NAME=ETA (repeatable)")->required();
  bcast->add_option("--ns", bcast_ns, "Mean input photon number")->required();

  // verify
  auto* ver = app.add_subcommand("verify", "Run seeded invariant suites");
  std::string suite = "all";
  std::uint64_t seed = 0;
  std::size_t trials = 200;
  ver->add_option("--suite", suite, "gaussian | bounds | findim | broadcast | all");
  ver->add_option("--seed", seed, "Base seed");
  ver->add_option("--trials", trials, "Random trials per check")->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    detail::emit_error(err, "invalid_argument", e.what());
    return kExitInvalid;
  }

  try {
    if (*bound) {
      const Method m = parse_method(bound_method);
      const auto ev = evaluate(m, bp);
      const auto used = parameters_used(m, bp.channel);
      const auto uses = [&](const char* n) { return std::find(used.begin(), used.end(), n) != used.end(); };
      const auto field = [&](const char* n) -> Json {
        if (!uses(n)) return nullptr;
        if (std::string(n) == "nb") return bp.nb.value_or(0);
        return *detail::param(bp, n);
      };
      Json j;
      j["method"] = bound_method;
      j["eta"] = field("eta");
      j["nb"] = field("nb");
      j["ns"] = field("ns");
      if (uses("gain")) j["gain"] = field("gain");
      if (uses("xi")) j["xi"] = field("xi");
      j["bound_bits"] = json_number(ev.bits);
      j["flags"] = ev.flags;
      out << j.dump() << '\n';
      return kExitOk;
    }

    if (*sweep) {
      SweepSpec spec;
      if (preset_opt->count() > 0) {
        for (auto* o : grid_opts)
          require(o->count() == 0, "sweep: --preset cannot be combined with " + o->get_name());
        spec = preset(preset_name);
      } else {
        for (const auto& name : sweep_methods)
          if (!name.empty()) spec.methods.push_back(parse_method(name));
        require(start && stop && step, "sweep: --start, --stop and --step are required without --preset");
        spec.vary = vary;
        spec.start = *start, spec.stop = *stop, spec.step = *step;
        spec.fixed = sp;
      }
      const auto rows = run_sweep(spec);
      detail::write_output(format == "csv" ? sweep_csv(rows, precision) : sweep_json(rows, precision), out_path, out);
      return kExitOk;
    }

    if (*bcast) {
      std::vector<broadcast::Receiver> rs;
      for (const auto& r : receivers) rs.push_back(parse_receiver(r));
      const broadcast::BroadcastSpec spec(std::move(rs));
      out << broadcast_region_json(spec, bcast_ns).dump() << '\n';
      return kExitOk;
    }

    if (*ver) {
      std::vector<std::string> suites;
      if (suite == "all") suites = verify::suite_names();
      else {
        const auto& known = verify::suite_names();
        require(std::find(known.begin(), known.end(), suite) != known.end(), "verify: unknown suite '" + suite + "'");
        suites = {suite};
      }
      std::size_t total = 0, failed = 0;
      for (const auto& name : suites) {
        const auto report = verify::run_suite(name, {seed, trials});
        for (const auto& c : report.checks) {
          Json j;
          j["suite"] = report.suite;
          j["check"] = c.name;
          j["max_violation"] = json_number(c.max_violation);
          j["tolerance"] = c.tolerance;
          j["trials"] = c.trials;
          j["passed"] = c.passed;
          out << j.dump() << '\n';
          ++total;
          if (!c.passed) ++failed;
        }
      }
      Json summary;
      summary["suite"] = suite;
      summary["seed"] = seed;
      summary["checks"] = total;
      summary["failed"] = failed;
      summary["passed"] = failed == 0;
      out << summary.dump() << '\n';
      return failed == 0 ? kExitOk : kExitVerifyFailed;
    }
  } catch (const Error& e) {
    detail::emit_error(err, to_string(e.code()), e.what());
    return kExitInvalid;
  } catch (const detail::IoError& e) {
    detail::emit_error(err, "io", e.what());
    return kExitIo;
  }
  return kExitInvalid;
}

}  // namespace bb::cli
