#include "chamber/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <type_traits>

#include "chamber/errors.hpp"

namespace chamber {

namespace {

Json integer_json(const BigInt& z) { return z.get_str(); }

BigInt integer_from_json(const Json& j, const char* field) {
  if (j.is_number_integer()) return BigInt(j.get<long>());
  if (j.is_string()) {
    BigInt z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw SchemaError(std::string("malformed integer in ") + field);
    return z;
  }
  throw SchemaError(std::string(field) + " must be an integer or an integer string");
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw SchemaError(std::string("missing field '") + name + "'");
  return j.at(name);
}

template <class T>
T typed(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
    if (!v.is_number_integer()) throw SchemaError(std::string("field '") + name + "' must be an integer");
  }
  try {
    return v.get<T>();
  } catch (const Json::exception&) {
    throw SchemaError(std::string("field '") + name + "' has the wrong type");
  }
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

bool is_exact_leaf(const Json& j) {
  return j.is_object() && j.contains("num") && j.contains("den") && j.contains("pi_half_power");
}

bool is_mc_leaf(const Json& j) { return j.is_object() && j.contains("mean") && j.contains("stderr"); }

void flatten(const OutputEnvelope& env, const Json& node, const std::string& key, std::vector<CsvRow>& out) {
  CsvRow row{env.command, env.m ? std::to_string(*env.m) : "", env.exact, key, "", "", "", "", ""};
  if (is_exact_leaf(node)) {
    const PiScaledRational x = pi_scaled_from_json(node);
    row.num = x.coeff().get_num().get_str();
    row.den = x.coeff().get_den().get_str();
    row.pi_half_power = std::to_string(x.pi_half_power());
    row.approx = format_double(node.at("approx").get<double>());
    out.push_back(std::move(row));
  } else if (is_mc_leaf(node)) {
    row.approx = format_double(node.at("mean").get<double>());
    row.std_error = format_double(node.at("stderr").get<double>());
    out.push_back(std::move(row));
  } else if (node.is_number()) {
    row.approx = format_double(node.get<double>());
    out.push_back(std::move(row));
  } else if (node.is_boolean()) {
    row.approx = node.get<bool>() ? "1" : "0";
    out.push_back(std::move(row));
  } else if (node.is_object()) {
    for (const auto& [k, v] : node.items()) flatten(env, v, key.empty() ? k : key + "." + k, out);
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i) flatten(env, node[i], key + "." + std::to_string(i), out);
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Rational rational_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const Error&) {
      throw SchemaError(std::string("field '") + name + "' is not a rational");
    }
  }
  throw SchemaError(std::string("field '") + name + "' must be an integer or a rational string like \"3/2\"");
}

Rational rational_or_zero(const Json& j, const char* name) {
  return j.contains(name) ? rational_field(j, name) : Rational(0);
}

std::optional<double> optional_double(const Json& j, const char* name) {
  if (!j.contains(name) || j.at(name).is_null()) return std::nullopt;
  if (!j.at(name).is_number()) throw SchemaError(std::string("field '") + name + "' must be a number");
  return j.at(name).get<double>();
}

ExpansionInput input_from_json(const Json& j, bool override_bounds) {
  if (!j.is_object()) throw SchemaError("expansion input must be an object");
  static const char* known[] = {"m", "N", "c1L_m", "c1M_c1L", "c1M2_c1L", "c2M_c1L", "calabi", "coeffs"};
  for (const auto& [k, v] : j.items()) {
    if (std::find(std::begin(known), std::end(known), k) == std::end(known)) {
      throw SchemaError("unknown field '" + k + "'");
    }
  }
  ExpansionInput in;
  in.m = typed<int>(j, "m");
  const long n = typed<long>(j, "N");
  if (n < 1) throw SchemaError("N must be >= 1");
  in.N = static_cast<std::uint64_t>(n);
  in.c1L_m = rational_field(j, "c1L_m");
  in.c1M_c1L = rational_or_zero(j, "c1M_c1L");
  in.c1M2_c1L = rational_or_zero(j, "c1M2_c1L");
  in.c2M_c1L = rational_or_zero(j, "c2M_c1L");
  in.calabi = j.contains("calabi") ? typed<double>(j, "calabi") : 0.0;
  const Json& c = field(j, "coeffs");
  if (!c.is_object()) throw SchemaError("coeffs must be an object");
  if (c.contains("beta2")) throw SchemaError("beta2 is computed by the beta engine and may not be supplied");
  if (c.contains("n_of_m")) in.coeffs.n_of_m = rational_field(c, "n_of_m");
  in.coeffs.beta1 = optional_double(c, "beta1");
  in.coeffs.beta2_prime_top = optional_double(c, "beta2_prime_top");
  in.coeffs.beta2_dblprime_top = optional_double(c, "beta2_dblprime_top");
  in.validate();
  if (in.coeffs.n_of_m && !override_bounds) check_leading_bounds(in.m, *in.coeffs.n_of_m);
  return in;
}

}  // namespace

Json to_json(const PiScaledRational& x) {
  return {{"num", integer_json(x.coeff().get_num())},
          {"den", integer_json(x.coeff().get_den())},
          {"pi_half_power", x.pi_half_power()},
          {"approx", x.to_double()}};
}

PiScaledRational pi_scaled_from_json(const Json& j) {
  const BigInt num = integer_from_json(field(j, "num"), "num");
  const BigInt den = integer_from_json(field(j, "den"), "den");
  if (den == 0) throw SchemaError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return PiScaledRational(q, typed<int>(j, "pi_half_power"));
}

Json to_json(const CrossCheck& c) {
  return {{"name", c.name},          {"passed", c.passed},          {"lhs", c.lhs},
          {"rhs", c.rhs},            {"lhs_approx", c.lhs_approx}, {"rhs_approx", c.rhs_approx}};
}

CrossCheck crosscheck_from_json(const Json& j) {
  return {typed<std::string>(j, "name"),  typed<bool>(j, "passed"),       typed<std::string>(j, "lhs"),
          typed<std::string>(j, "rhs"),   typed<double>(j, "lhs_approx"), typed<double>(j, "rhs_approx")};
}

Json to_json(const McEstimate& e) {
  return {{"mean", e.mean},       {"stderr", e.std_error}, {"samples", e.samples},
          {"target", e.target},   {"lower_3sigma", e.lower(3.0)}};
}

Json OutputEnvelope::to_json() const {
  Json j;
  j["command"] = command;
  j["m"] = m ? Json(*m) : Json(nullptr);
  j["results"] = results;
  j["exact"] = exact;
  j["checks"] = Json::array();
  for (const auto& c : checks) j["checks"].push_back(chamber::to_json(c));
  j["version"] = version;
  return j;
}

OutputEnvelope OutputEnvelope::from_json(const Json& j) {
  OutputEnvelope e;
  e.command = typed<std::string>(j, "command");
  const Json& m = field(j, "m");
  if (!m.is_null()) e.m = typed<int>(j, "m");
  e.results = field(j, "results");
  if (!e.results.is_object()) throw SchemaError("results must be an object");
  e.exact = typed<bool>(j, "exact");
  const Json& checks = field(j, "checks");
  if (!checks.is_array()) throw SchemaError("checks must be an array");
  for (const auto& c : checks) e.checks.push_back(crosscheck_from_json(c));
  e.version = typed<std::string>(j, "version");
  return e;
}

OutputEnvelope beta_envelope(const BetaReport& r) {
  OutputEnvelope e;
  e.command = "beta2";
  e.m = r.m;
  e.exact = r.exact;
  e.checks = r.crosschecks;
  Json& res = e.results;
  res["beta2m_closed"] = to_json(r.beta2m_closed);
  if (!r.beta2q.empty()) {
    Json q = Json::object();
    for (const auto& [k, v] : r.beta2q) q[std::to_string(k)] = to_json(v);
    res["beta2q"] = q;
  }
  if (r.beta2_prime) res["beta2_prime"] = to_json(*r.beta2_prime);
  if (r.beta2_total) res["beta2_total"] = to_json(*r.beta2_total);
  if (r.mc) res["mc"] = to_json(*r.mc);
  res["provenance"] = r.provenance;
  return e;
}

std::vector<CsvRow> csv_rows(const OutputEnvelope& env) {
  std::vector<CsvRow> rows;
  flatten(env, env.results, "", rows);
  return rows;
}

std::string csv_header() { return "command,m,exact,key,num,den,pi_half_power,approx,stderr"; }

std::string to_csv_line(const CsvRow& r) {
  return csv_escape(r.command) + "," + r.m + "," + (r.exact ? "true" : "false") + "," + csv_escape(r.key) + "," +
         r.num + "," + r.den + "," + r.pi_half_power + "," + r.approx + "," + r.std_error;
}

ExpansionRequest expansion_request_from_json(const Json& j, bool override_bounds) {
  if (!j.is_object()) throw SchemaError("expansion document must be a JSON object");
  ExpansionRequest req;
  if (j.contains("n_max")) {
    const long n = typed<long>(j, "n_max");
    if (n < 1) throw SchemaError("n_max must be >= 1");
    req.n_max = static_cast<std::uint64_t>(n);
  }
  if (j.contains("a")) {
    for (const auto& [k, v] : j.items()) {
      if (k != "a" && k != "b" && k != "n_max") throw SchemaError("unknown field '" + k + "'");
    }
    req.a = input_from_json(j.at("a"), override_bounds);
    if (!j.contains("b")) throw SchemaError("comparison document needs both 'a' and 'b'");
    req.b = input_from_json(j.at("b"), override_bounds);
    return req;
  }
  Json single = j;
  single.erase("n_max");
  req.a = input_from_json(single, override_bounds);
  return req;
}

}  // namespace chamber
