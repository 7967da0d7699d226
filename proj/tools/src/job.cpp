#include "job.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <radspec/asymptotics.hpp>
#include <radspec/errors.hpp>
#include <radspec/ordering.hpp>
#include <radspec/quadrature.hpp>
#include <radspec/spectrum_io.hpp>
#include <radspec/symbol.hpp>
#include <radspec/version.hpp>

#include "json.hpp"

namespace radspec::cli {

namespace {

using nlohmann::json;

constexpr std::pair<Command, const char*> kCommands[] = {
    {Command::Spectrum, "spectrum"},
    {Command::Counting, "counting"},
    {Command::Compare, "compare"},
    {Command::Counterexample, "counterexample"},
    {Command::Periphery, "periphery"},
};

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

json log_real(const LogReal& x) {
  return {{"sign", x.sign()}, {"log_abs", x.is_zero() ? json(nullptr) : json(x.log_abs())}};
}

json assertions_json(const std::vector<Assertion>& as) {
  json out = json::array();
  for (const auto& a : as) out.push_back({{"name", a.name}, {"passed", a.passed}, {"value", a.value}, {"detail", a.detail}});
  return out;
}

void csv_header(std::ostream& os, const JobConfig& c) {
  os << "# radspec " << kVersion << '\n' << "# config " << config_to_json(c) << '\n';
}

json envelope(const JobConfig& c, json result) {
  return {{"radspec_version", kVersion}, {"config", json::parse(config_to_json(c))}, {"result", std::move(result)}};
}

std::vector<double> grid_of(const JobConfig& c) {
  return log_grid(c.lambda_min_log10, c.lambda_max_log10, c.grid_points);
}

SpectrumTable counting_table(const JobConfig& c, const RadialSymbol& v) {
  const double lambda_min = std::pow(10.0, c.lambda_min_log10);
  SpectrumTable t = spectrum(c.space_spec(), v, c.k_max, c.tol);
  if (*t.tail_bound < LogReal(lambda_min)) return t;
  return spectrum_until(c.space_spec(), v, lambda_min, c.tol, std::max(1u, 2 * c.k_max));
}

int job_spectrum(const JobConfig& c, const RadialSymbol& v, std::ostream& os) {
  const SpectrumTable t = spectrum(c.space_spec(), v, c.k_max, c.tol);
  if (c.format == Format::Json) {
    os << envelope(c, json::parse(to_json(t))).dump(2) << '\n';
  } else {
    csv_header(os, c);
    os << to_csv(t);
  }
  return kExitOk;
}

int job_counting(const JobConfig& c, const RadialSymbol& v, std::ostream& os) {
  const SpectrumTable t = counting_table(c, v);
  const auto grid = grid_of(c);
  const auto samples = counting(t, grid);
  if (c.format == Format::Json) {
    json rows = json::array();
    for (const auto& s : samples)
      rows.push_back({{"lambda", s.lambda}, {"n", s.counts.n}, {"n_plus", s.counts.n_plus}, {"n_minus", s.counts.n_minus}});
    os << envelope(c, {{"k_max", t.k_max}, {"tol", t.tol}, {"samples", rows}}).dump(2) << '\n';
  } else {
    csv_header(os, c);
    os << "# k_max " << t.k_max << " tol " << num(t.tol) << '\n';
    os << "lambda,n,n_plus,n_minus\n";
    for (const auto& s : samples)
      os << num(s.lambda) << ',' << s.counts.n << ',' << s.counts.n_plus << ',' << s.counts.n_minus << '\n';
  }
  return kExitOk;
}

int job_compare(const JobConfig& c, const RadialSymbol& v, std::ostream& os) {
  const AsymptoticLaw law = predicted_law(c.space_spec(), classify_decay(v));
  const SpectrumTable t = counting_table(c, v);
  const auto grid = grid_of(c);
  const ComparisonReport r = compare(t, law, grid);
  if (c.format == Format::Json) {
    json rows = json::array();
    for (std::size_t i = 0; i < r.lambdas.size(); ++i)
      rows.push_back({{"lambda", r.lambdas[i]}, {"n", r.computed[i]}, {"predicted", r.predicted[i]}, {"ratio", r.ratios[i]}});
    json law_j{{"coefficient", law.coefficient}, {"log_power", law.log_power}, {"loglog_power", law.loglog_power}};
    os << envelope(c, {{"k_max", t.k_max}, {"tol", t.tol}, {"law", law_j}, {"rows", rows}, {"max_ratio", r.max_ratio},
                       {"final_ratio", r.final_ratio}})
              .dump(2)
       << '\n';
  } else {
    csv_header(os, c);
    os << "# k_max " << t.k_max << " tol " << num(t.tol) << " max_ratio " << num(r.max_ratio) << " final_ratio "
       << num(r.final_ratio) << '\n';
    os << "lambda,n,predicted,ratio\n";
    for (std::size_t i = 0; i < r.lambdas.size(); ++i)
      os << num(r.lambdas[i]) << ',' << r.computed[i] << ',' << num(r.predicted[i]) << ',' << num(r.ratios[i]) << '\n';
  }
  return kExitOk;
}

int job_counterexample(const JobConfig& c, std::ostream& os, std::ostream& err) {
  CounterexampleOptions o;
  o.tol = c.tol;
  const CounterexampleReport r = run_counterexample(c.p, c.q, c.k_max, o);
  if (c.format == Format::Json) {
    json vs = json::array();
    for (unsigned k = 0; k <= r.k_max; ++k) {
      json row{{"k", k}, {"lambda_v", log_real(r.lambda_v[k])}, {"lambda_abs", log_real(r.lambda_abs[k])}};
      vs.push_back(std::move(row));
    }
    json res{{"experiment", "counterexample"},
             {"p", r.p},
             {"q", r.q},
             {"k_max", r.k_max},
             {"tol", r.tol},
             {"fit_range", {r.fit_range.first, r.fit_range.second}},
             {"slope_v", {{"a", r.fit_v.a}, {"b", r.fit_v.b}}},
             {"slope_abs", {{"a", r.fit_abs.a}, {"b", r.fit_abs.b}}},
             {"max_bound_ratio", r.max_bound_ratio},
             {"assertions", assertions_json(r.assertions)},
             {"passed", r.passed()},
             {"eigenvalues", vs}};
    os << envelope(c, res).dump(2) << '\n';
  } else {
    csv_header(os, c);
    os << "# slope_v " << num(r.fit_v.a) << " slope_abs " << num(r.fit_abs.a) << " max_bound_ratio "
       << num(r.max_bound_ratio) << '\n';
    for (const auto& a : r.assertions) os << "# " << (a.passed ? "PASS " : "FAIL ") << a.name << ' ' << num(a.value) << '\n';
    os << "k,sign_v,log_abs_v,sign_abs,log_abs_abs\n";
    for (unsigned k = 0; k <= r.k_max; ++k)
      os << k << ',' << r.lambda_v[k].sign() << ',' << num(r.lambda_v[k].log_abs()) << ',' << r.lambda_abs[k].sign()
         << ',' << num(r.lambda_abs[k].log_abs()) << '\n';
  }
  for (const auto& a : r.assertions)
    if (!a.passed) err << "assertion failed: " << a.name << " (" << a.detail << ", value " << num(a.value) << ")\n";
  return r.passed() ? kExitOk : kExitAssertion;
}

int job_periphery(const JobConfig& c, const RadialSymbol& v, std::ostream& os, std::ostream& err) {
  PeripheryOptions o;
  o.tol = c.tol;
  o.lambda = std::pow(10.0, c.lambda_min_log10);
  const PeripheryReport r = run_periphery(v, c.space_spec(), c.k_max, o);
  const json res{{"experiment", "periphery"},
                 {"symbol", r.symbol},
                 {"support_radius", r.support_radius},
                 {"k_max", r.k_max},
                 {"tol", c.tol},
                 {"largest_negative_k", r.largest_negative_k},
                 {"negative_count", r.negative_count},
                 {"lambda", r.lambda},
                 {"n_plus", r.n_plus},
                 {"predicted", r.predicted},
                 {"ratio", r.ratio},
                 {"assertions", assertions_json(r.assertions)},
                 {"passed", r.passed()}};
  if (c.format == Format::Json) {
    os << envelope(c, res).dump(2) << '\n';
  } else {
    csv_header(os, c);
    os << "key,value\n";
    for (const auto& [key, value] : res.items())
      if (!value.is_array()) os << key << ',' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    for (const auto& a : r.assertions) os << "assertion_" << a.name << ',' << (a.passed ? "PASS" : "FAIL") << '\n';
  }
  for (const auto& a : r.assertions)
    if (!a.passed) err << "assertion failed: " << a.name << " (" << a.detail << ", value " << num(a.value) << ")\n";
  return r.passed() ? kExitOk : kExitAssertion;
}

}  // namespace

std::string to_string(Command c) {
  for (const auto& [k, n] : kCommands)
    if (k == c) return n;
  return "?";
}

Command parse_command(const std::string& s) {
  for (const auto& [k, n] : kCommands)
    if (s == n) return k;
  throw ConfigError("unknown command '" + s + "'");
}

std::string to_string(Format f) { return f == Format::Csv ? "csv" : "json"; }

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw ConfigError("unknown format '" + s + "' (expected csv or json)");
}

void JobConfig::validate() const {
  if (!(tol > 1e-14 && tol < 1e-2)) throw ConfigError("tol must lie in (1e-14, 1e-2)");
  if (!(lambda_min_log10 < lambda_max_log10) || lambda_max_log10 > 0)
    throw ConfigError("lambda grid needs lambda-min-log10 < lambda-max-log10 <= 0");
  if (grid_points < 2) throw ConfigError("grid-points must be at least 2");
  if (command == Command::Counterexample) {
    if (!(p > 1.0) || !(q > p)) throw ConfigError("counterexample needs 1 < p < q");
    return;
  }
  try {
    space_spec().validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

SpaceSpec JobConfig::space_spec() const { return SpaceSpec{space, d, is_bergman(space) ? R : std::nullopt}; }

std::string config_to_json(const JobConfig& c) {
  json j{{"command", to_string(c.command)},
         {"space", radspec::to_string(c.space)},
         {"d", c.d},
         {"symbol", c.symbol},
         {"kmax", c.k_max},
         {"tol", c.tol},
         {"lambda-min-log10", c.lambda_min_log10},
         {"lambda-max-log10", c.lambda_max_log10},
         {"grid-points", c.grid_points},
         {"out", c.out},
         {"format", to_string(c.format)},
         {"p", c.p},
         {"q", c.q}};
  j["R"] = c.R ? json(*c.R) : json(nullptr);
  return j.dump();
}

JobConfig config_from_json(const std::string& text, JobConfig c) {
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (key == "command") c.command = parse_command(value.get<std::string>());
      else if (key == "space") c.space = parse_space_kind(value.get<std::string>());
      else if (key == "d") c.d = value.get<int>();
      else if (key == "R") c.R = value.is_null() ? std::nullopt : std::optional<double>(value.get<double>());
      else if (key == "symbol") c.symbol = value.get<std::string>();
      else if (key == "kmax") c.k_max = value.get<unsigned>();
      else if (key == "tol") c.tol = value.get<double>();
      else if (key == "lambda-min-log10") c.lambda_min_log10 = value.get<double>();
      else if (key == "lambda-max-log10") c.lambda_max_log10 = value.get<double>();
      else if (key == "grid-points") c.grid_points = value.get<int>();
      else if (key == "out") c.out = value.get<std::string>();
      else if (key == "format") c.format = parse_format(value.get<std::string>());
      else if (key == "p") c.p = value.get<double>();
      else if (key == "q") c.q = value.get<double>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

int run(const JobConfig& c, std::ostream& out, std::ostream& err) {
  try {
    c.validate();
    if (c.command == Command::Counterexample) return job_counterexample(c, out, err);
    const RadialSymbol v = parse_symbol(c.symbol);
    switch (c.command) {
      case Command::Spectrum: return job_spectrum(c, v, out);
      case Command::Counting: return job_counting(c, v, out);
      case Command::Compare: return job_compare(c, v, out);
      case Command::Periphery: return job_periphery(c, v, out, err);
      case Command::Counterexample: break;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParseError& e) {
    err << "symbol error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace radspec::cli
