#include "radspec/spectrum_io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "radspec/errors.hpp"

namespace radspec {

namespace {

using nlohmann::json;

json log_real_json(const LogReal& x) {
  return {{"sign", x.sign()}, {"log_abs", x.is_zero() ? json(nullptr) : json(x.log_abs())}};
}

LogReal log_real_from(const json& j) {
  const int sign = j.at("sign").get<int>();
  if (sign == 0 || j.at("log_abs").is_null()) return LogReal::zero();
  return LogReal::from_log(sign, j.at("log_abs").get<double>());
}

std::string shortest(double x) {
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

}  // namespace

std::string to_json(const SpectrumTable& t, int indent) {
  json space{{"kind", to_string(t.space.kind)}, {"d", t.space.d}};
  if (t.space.R) space["R"] = *t.space.R;
  json entries = json::array();
  for (const auto& e : t.entries) {
    json row = log_real_json(e.value);
    row["k"] = e.k;
    row["multiplicity"] = e.multiplicity;
    entries.push_back(std::move(row));
  }
  json doc{{"space", space}, {"symbol", t.symbol_text}, {"tol", t.tol}, {"k_max", t.k_max}, {"entries", entries}};
  if (t.tail_bound) doc["tail_bound"] = log_real_json(*t.tail_bound);
  return doc.dump(indent);
}

SpectrumTable spectrum_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    SpectrumTable t;
    const json& space = doc.at("space");
    t.space.kind = parse_space_kind(space.at("kind").get<std::string>());
    t.space.d = space.at("d").get<int>();
    if (space.contains("R") && !space.at("R").is_null()) t.space.R = space.at("R").get<double>();
    t.space.validate();
    t.symbol_text = doc.at("symbol").get<std::string>();
    t.tol = doc.at("tol").get<double>();
    for (const json& row : doc.at("entries")) {
      EigenvalueEntry e;
      e.k = row.at("k").get<unsigned>();
      e.value = log_real_from(row);
      e.multiplicity = row.at("multiplicity").get<std::uint64_t>();
      e.tol = t.tol;
      if (e.k != t.entries.size()) throw DomainError("entries must be contiguous in k from 0");
      t.entries.push_back(e);
    }
    t.k_max = doc.contains("k_max") ? doc.at("k_max").get<unsigned>()
                                    : static_cast<unsigned>(t.entries.empty() ? 0 : t.entries.size() - 1);
    if (doc.contains("tail_bound")) t.tail_bound = log_real_from(doc.at("tail_bound"));
    return t;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed spectrum JSON: ") + e.what());
  }
}

std::string to_csv(const SpectrumTable& t) {
  std::ostringstream os;
  os << "k,sign,log_abs,multiplicity\n";
  for (const auto& e : t.entries)
    os << e.k << ',' << e.value.sign() << ',' << shortest(e.value.log_abs()) << ',' << e.multiplicity << '\n';
  return os.str();
}

}  // namespace radspec
