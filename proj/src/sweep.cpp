#include "inclab/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "inclab/constructions.hpp"
#include "inclab/energy.hpp"
#include "inclab/error.hpp"

namespace inclab {

using nlohmann::json;

namespace {

[[noreturn]] void bad_config(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::config_error, where + ": " + what);
}

std::vector<std::uint64_t> uint_list(const json& obj, const char* key, const std::string& where) {
  std::vector<std::uint64_t> out;
  auto it = obj.find(key);
  if (it == obj.end()) return out;
  if (!it->is_array()) bad_config(where + "." + key, "expected an array of non-negative integers");
  for (const auto& v : *it) {
    if (!v.is_number_unsigned()) bad_config(where + "." + key, "expected an array of non-negative integers");
    out.push_back(v.get<std::uint64_t>());
  }
  return out;
}

void require(const std::vector<std::uint64_t>& v, const char* key, const std::string& where) {
  if (v.empty()) bad_config(where, std::string("family needs a non-empty '") + key + "' list");
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string params_of(std::initializer_list<std::pair<const char*, std::uint64_t>> kv) {
  std::string out;
  for (const auto& [k, v] : kv) {
    if (!out.empty()) out += ' ';
    out += std::string(k) + "=" + std::to_string(v);
  }
  return out;
}

}  // namespace

SweepConfig parse_sweep_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad_config("config", std::string("malformed JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) bad_config("config", "expected an object");
  SweepConfig cfg;
  if (auto it = doc.find("seed"); it != doc.end()) {
    if (!it->is_number_unsigned()) bad_config("seed", "expected a non-negative integer");
    cfg.seed = it->get<std::uint64_t>();
  }
  if (auto it = doc.find("constant"); it != doc.end()) {
    try {
      cfg.constant = it->is_string() ? parse_rational(it->get<std::string>())
                                     : parse_rational(it->dump());
    } catch (const Error& e) {
      bad_config("constant", e.what());
    }
    if (cfg.constant <= 0) bad_config("constant", "must be positive");
  }
  if (auto it = doc.find("engine"); it != doc.end()) {
    try {
      cfg.engine = parse_engine(it->get<std::string>());
    } catch (const std::exception& e) {
      bad_config("engine", e.what());
    }
  }
  if (auto it = doc.find("checks"); it != doc.end()) {
    cfg.check_general = cfg.check_cartesian = cfg.check_point_plane = false;
    for (const auto& c : *it) {
      const std::string name = c.is_string() ? c.get<std::string>() : c.dump();
      if (name == "general_incidence") cfg.check_general = true;
      else if (name == "cartesian_product") cfg.check_cartesian = true;
      else if (name == "point_plane") cfg.check_point_plane = true;
      else bad_config("checks", "unknown check '" + name + "'");
    }
  }
  for (const char* key : {"energy_limit", "collinear_limit"}) {
    if (auto it = doc.find(key); it != doc.end()) {
      if (!it->is_number_unsigned()) bad_config(key, "expected a non-negative integer");
      (std::string(key) == "energy_limit" ? cfg.energy_limit : cfg.collinear_limit) = it->get<std::uint64_t>();
    }
  }
  if (auto it = doc.find("output"); it != doc.end()) {
    if (!it->is_object()) bad_config("output", "expected an object");
    cfg.csv_output = it->value("csv", "");
    cfg.json_output = it->value("json", "");
  }

  auto fams = doc.find("families");
  if (fams == doc.end() || !fams->is_array() || fams->empty())
    bad_config("families", "expected a non-empty array");
  for (std::size_t i = 0; i < fams->size(); ++i) {
    const json& f = (*fams)[i];
    const std::string where = "families[" + std::to_string(i) + "]";
    if (!f.is_object() || !f.contains("family") || !f["family"].is_string())
      bad_config(where, "missing 'family'");
    FamilySpec spec;
    spec.family = f["family"].get<std::string>();
    spec.primes = uint_list(f, "p", where);
    spec.a = uint_list(f, "a", where);
    spec.b = uint_list(f, "b", where);
    spec.c = uint_list(f, "c", where);
    spec.m = uint_list(f, "m", where);
    spec.n = uint_list(f, "n", where);
    spec.sizes = uint_list(f, "sizes", where);
    require(spec.primes, "p", where);
    for (auto p : spec.primes) {
      if (p > static_cast<std::uint64_t>(INT32_MAX) || !is_prime(p) || p < 3)
        bad_config(where + ".p", std::to_string(p) + " is not an odd prime below 2^31");
    }
    if (spec.family == "elekes") {
      require(spec.a, "a", where);
      require(spec.c, "c", where);
    } else if (spec.family == "full_plane") {
    } else if (spec.family == "random") {
      if (spec.sizes.empty()) {
        require(spec.m, "m", where);
        require(spec.n, "n", where);
      }
    } else if (spec.family == "cartesian") {
      require(spec.a, "a", where);
      require(spec.b, "b", where);
      require(spec.n, "n", where);
    } else {
      bad_config(where + ".family", "unknown family '" + spec.family + "'");
    }
    cfg.families.push_back(std::move(spec));
  }
  return cfg;
}

SweepRecord measure_instance(const Instance& inst, const std::string& family, const SweepConfig& config) {
  SweepRecord r;
  r.family = family;
  r.p = inst.modulus().value();
  r.m = inst.m();
  r.n = inst.n();
  const std::uint64_t I = count_incidences(inst, config.engine);
  r.I = I;
  const HypothesisSizes sizes = sizes_of(inst);
  r.a = sizes.a;
  r.b = sizes.b;

  if (r.m > 0 && r.n > 0) {
    r.bound_table1 = reference_bound(r.m, r.n, r.p, BoundKind::table1).value;
    r.bound_comb = reference_bound(r.m, r.n, r.p, BoundKind::combinatorial).value;
    r.bound_vinh = reference_bound(r.m, r.n, r.p, BoundKind::vinh).value;
    r.ratio_main = static_cast<double>(I) / std::pow(static_cast<double>(r.m) * static_cast<double>(r.n), 11.0 / 15.0);
    r.within_comb = within_combinatorial_bound(I, r.m, r.n);
    if (config.check_general)
      r.hyp_general = check_hypotheses(sizes, Theorem::general_incidence, config.constant).overall;
  }

  // The energy pipeline applies when P is a full Cartesian product and L is dualizable.
  const bool cartesian = sizes.a * sizes.b == r.m && r.m > 0 && !inst.has_vertical_lines();
  if (cartesian) {
    if (config.check_cartesian)
      r.hyp_cartesian = check_hypotheses(sizes, Theorem::cartesian_product, config.constant).overall;
    if (config.check_point_plane)
      r.hyp_point_plane = check_hypotheses(sizes, Theorem::point_plane, config.constant).overall;
    std::vector<Scalar> A;
    for (const auto& q : inst.points())
      if (A.empty() || !(A.back() == q.x)) A.push_back(q.x);
    const std::uint64_t an = sizes.a * r.n;
    if (an <= config.energy_limit) r.E = line_energy(A, inst.lines()).value;
    if (an <= config.collinear_limit) {
      const PlaneInstance3D red = energy_reduction(A, inst.lines());
      r.k = max_collinear_3d(red.points(), red.modulus());
    }
  }
  return r;
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
  std::vector<SweepRecord> out;
  std::uint64_t cell = 0;
  auto run_cell = [&](const std::string& family, const std::string& params, std::uint64_t p, auto make) {
    const std::uint64_t seed = config.seed + 0x9e3779b97f4a7c15ULL * ++cell;
    try {
      const Instance inst = make(PrimeModulus::make(static_cast<std::int64_t>(p)), seed);
      SweepRecord r = measure_instance(inst, family, config);
      r.params = params;
      out.push_back(std::move(r));
    } catch (const Error& e) {
      SweepRecord r;
      r.family = family;
      r.params = params;
      r.p = p;
      r.error = e.what();
      out.push_back(std::move(r));
    }
  };

  for (const auto& f : config.families) {
    for (auto p : f.primes) {
      if (f.family == "elekes") {
        for (auto a : f.a)
          for (auto c : f.c)
            run_cell(f.family, params_of({{"a", a}, {"c", c}}), p,
                     [&](PrimeModulus mod, std::uint64_t) { return elekes_construction(a, c, mod); });
      } else if (f.family == "full_plane") {
        run_cell(f.family, "", p, [](PrimeModulus mod, std::uint64_t) { return full_plane(mod); });
      } else if (f.family == "random") {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> shapes;
        for (auto s : f.sizes) shapes.emplace_back(s, s);
        for (auto m : f.m)
          for (auto n : f.n) shapes.emplace_back(m, n);
        for (auto [m, n] : shapes)
          run_cell(f.family, params_of({{"m", m}, {"n", n}}), p,
                   [&](PrimeModulus mod, std::uint64_t seed) { return random_instance(mod, m, n, seed); });
      } else if (f.family == "cartesian") {
        for (auto a : f.a)
          for (auto b : f.b)
            for (auto n : f.n)
              run_cell(f.family, params_of({{"a", a}, {"b", b}, {"n", n}}), p,
                       [&](PrimeModulus mod, std::uint64_t seed) { return random_cartesian(mod, a, b, n, seed); });
      } else {
        throw Error(ErrorCode::config_error, "unknown family '" + f.family + "'");
      }
    }
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  auto u = [](const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string(); };
  auto d = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string(); };
  auto h = [](const std::optional<bool>& v) { return v ? std::string(*v ? "pass" : "fail") : std::string(); };
  for (const auto& r : records) {
    const bool ok = r.error.empty();
    out += r.family + ',' + std::to_string(r.p) + ',' + (ok ? std::to_string(r.m) : "") + ',' +
           (ok ? std::to_string(r.n) : "") + ',' + u(r.a) + ',' + u(r.b) + ',' + u(r.I) + ',' + u(r.E) + ',' +
           u(r.k) + ',' + h(r.hyp_general) + ',' + h(r.hyp_cartesian) + ',' + h(r.hyp_point_plane) + ',' +
           d(r.bound_table1) + ',' + d(r.bound_comb) + ',' + d(r.bound_vinh) + ',' + d(r.ratio_main) + '\n';
  }
  return out;
}

json sweep_json(const std::vector<SweepRecord>& records) {
  json arr = json::array();
  for (const auto& r : records) {
    json j{{"family", r.family}, {"params", r.params}, {"p", r.p}};
    if (!r.error.empty()) {
      j["error"] = r.error;
      arr.push_back(std::move(j));
      continue;
    }
    j["m"] = r.m;
    j["n"] = r.n;
    auto put = [&](const char* k, const auto& v) {
      if (v) j[k] = *v;
    };
    put("a", r.a);
    put("b", r.b);
    put("I", r.I);
    put("E", r.E);
    put("k", r.k);
    put("hyp_general_incidence", r.hyp_general);
    put("hyp_cartesian_product", r.hyp_cartesian);
    put("hyp_point_plane", r.hyp_point_plane);
    put("bound_table1", r.bound_table1);
    put("bound_comb", r.bound_comb);
    put("bound_vinh", r.bound_vinh);
    put("ratio_main", r.ratio_main);
    put("within_comb", r.within_comb);
    arr.push_back(std::move(j));
  }
  return arr;
}

std::vector<SweepRecord> parse_sweep_csv(std::string_view text) {
  std::vector<SweepRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader)
    throw Error(ErrorCode::parse_error, "line 1: expected the sweep header");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
      auto pos = line.find(',', start);
      cells.push_back(line.substr(start, pos - start));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    const std::string where = "line " + std::to_string(lineno);
    if (cells.size() != 16) throw Error(ErrorCode::parse_error, where + ": expected 16 fields");
    auto u = [&](const std::string& s, const char* name) -> std::optional<std::uint64_t> {
      if (s.empty()) return std::nullopt;
      try {
        std::size_t used = 0;
        auto v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
      } catch (const std::exception&) {
        throw Error(ErrorCode::parse_error, where + ": field " + name + " is not an integer");
      }
    };
    auto d = [&](const std::string& s, const char* name) -> std::optional<double> {
      if (s.empty()) return std::nullopt;
      try {
        return std::stod(s);
      } catch (const std::exception&) {
        throw Error(ErrorCode::parse_error, where + ": field " + name + " is not a number");
      }
    };
    auto h = [&](const std::string& s, const char* name) -> std::optional<bool> {
      if (s.empty()) return std::nullopt;
      if (s == "pass") return true;
      if (s == "fail") return false;
      throw Error(ErrorCode::parse_error, where + ": field " + name + " must be pass or fail");
    };
    SweepRecord r;
    r.family = cells[0];
    r.p = u(cells[1], "p").value_or(0);
    r.m = u(cells[2], "m").value_or(0);
    r.n = u(cells[3], "n").value_or(0);
    r.a = u(cells[4], "a");
    r.b = u(cells[5], "b");
    r.I = u(cells[6], "I");
    r.E = u(cells[7], "E");
    r.k = u(cells[8], "k");
    r.hyp_general = h(cells[9], "hyp_1_2");
    r.hyp_cartesian = h(cells[10], "hyp_1_3");
    r.hyp_point_plane = h(cells[11], "hyp_1_4");
    r.bound_table1 = d(cells[12], "bound_table1");
    r.bound_comb = d(cells[13], "bound_comb");
    r.bound_vinh = d(cells[14], "bound_vinh");
    r.ratio_main = d(cells[15], "ratio_main");
    if (!r.I) r.error = "cell failed";
    out.push_back(std::move(r));
  }
  return out;
}

std::optional<double> record_value(const SweepRecord& r, std::string_view field) {
  auto u = [](const std::optional<std::uint64_t>& v) -> std::optional<double> {
    if (!v) return std::nullopt;
    return static_cast<double>(*v);
  };
  const bool ok = r.error.empty();
  if (field == "p") return static_cast<double>(r.p);
  if (field == "m") return ok ? std::optional<double>(static_cast<double>(r.m)) : std::nullopt;
  if (field == "n") return ok ? std::optional<double>(static_cast<double>(r.n)) : std::nullopt;
  if (field == "a") return u(r.a);
  if (field == "b") return u(r.b);
  if (field == "I") return u(r.I);
  if (field == "E") return u(r.E);
  if (field == "k") return u(r.k);
  if (field == "mn") return ok ? std::optional<double>(static_cast<double>(r.m) * static_cast<double>(r.n)) : std::nullopt;
  if (field == "bound_table1") return r.bound_table1;
  if (field == "bound_comb") return r.bound_comb;
  if (field == "bound_vinh") return r.bound_vinh;
  if (field == "ratio_main") return r.ratio_main;
  throw Error(ErrorCode::config_error, "unknown record field '" + std::string(field) + "'");
}

}  // namespace inclab
