#include "cli.hpp"

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "inclab/constructions.hpp"
#include "inclab/cover.hpp"
#include "inclab/distances.hpp"
#include "inclab/energy.hpp"
#include "inclab/error.hpp"
#include "inclab/fit.hpp"
#include "inclab/incidence.hpp"
#include "inclab/instance_io.hpp"
#include "inclab/sweep.hpp"

namespace inclab {

using nlohmann::json;

namespace {

struct Options {
  std::string input, output, format, config;
  std::int64_t p = 0;
  std::uint64_t seed = 0;
  std::string engine = "auto";
  std::string c1, c2, stop, llconstant = "1";
  bool desk = false, normalize = false;
  std::string family;
  std::uint64_t a = 0, b = 0, c = 0, m = 0, n = 0;
  std::string kind, setA, setB, setC;
  std::string xfield = "m", yfield = "I";
};

class Usage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.output.empty()) {
    out << text;
  } else {
    write_text(o.output, text);
  }
}

void emit_json(const Options& o, std::ostream& out, const json& j) { emit(o, out, j.dump(2) + "\n"); }

std::string format_or(const Options& o, const std::string& fallback,
                      std::initializer_list<const char*> allowed) {
  const std::string f = o.format.empty() ? fallback : o.format;
  for (const char* a : allowed)
    if (f == a) return f;
  throw Usage("unsupported --format '" + f + "'");
}

Rational rational_flag(const std::string& text, const Rational& fallback) {
  return text.empty() ? fallback : parse_rational(text);
}

std::vector<Scalar> scalar_list(const std::string& text, PrimeModulus mod) {
  std::vector<Scalar> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.emplace_back(std::stoll(item), mod);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::parse_error, "'" + item + "' is not an integer");
    }
  }
  return out;
}

json scalars_json(const std::vector<Scalar>& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(s.value());
  return a;
}

json points_json(const std::vector<AffinePoint>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_json(q));
  return a;
}

json lines_json(const std::vector<AffineLine>& v) {
  json a = json::array();
  for (const auto& l : v) a.push_back(to_json(l));
  return a;
}

json hypotheses_json(const HypothesisReport& h) {
  json conds = json::array();
  for (const auto& c : h.conditions)
    conds.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}});
  return {{"theorem", to_string(h.theorem)}, {"overall", h.overall}, {"constant", to_string(h.constant)},
          {"conditions", std::move(conds)}};
}

json grid_json(const PencilGrid& g) {
  const auto& t = g.trace;
  return {{"p1", to_json(g.p1)},
          {"q1", to_json(g.q1)},
          {"size", g.G.size()},
          {"G", points_json(g.G)},
          {"pencil_p1", lines_json(g.pencil_p1)},
          {"pencil_q1", lines_json(g.pencil_q1)},
          {"trace",
           {{"K", to_string(t.K)},
            {"incidences", t.incidences},
            {"L1", t.rich_lines.size()},
            {"Q", t.first_fan.size()},
            {"L2", t.fan_lines.size()},
            {"regular", t.regular},
            {"preconditions_held", t.preconditions_held},
            {"size_lower_bound", to_string(t.size_lower_bound)}}}};
}

CoverParameters cover_params(const Options& o) {
  CoverParameters base = o.desk ? CoverParameters::desk_scale() : CoverParameters::asymptotic();
  return {rational_flag(o.c1, base.c1), rational_flag(o.c2, base.c2), rational_flag(o.stop, base.stop_fraction)};
}

// --- subcommands --------------------------------------------------------------------------------

void cmd_count(const Options& o, std::ostream& out, std::ostream& err) {
  const Instance inst = read_instance(o.input);
  if (inst.duplicates_removed() > 0)
    err << "warning: " << inst.duplicates_removed() << " duplicate entries dropped\n";
  const Engine engine = parse_engine(o.engine);
  const std::uint64_t I = count_incidences(inst, engine);
  const std::string f = format_or(o, "text", {"text", "json", "csv"});
  if (f == "text") {
    emit(o, out, std::to_string(I) + "\n");
    return;
  }
  if (f == "csv") {
    emit(o, out, "p,m,n,I\n" + std::to_string(inst.modulus().value()) + "," + std::to_string(inst.m()) + "," +
                     std::to_string(inst.n()) + "," + std::to_string(I) + "\n");
    return;
  }
  json j{{"p", inst.modulus().value()},
         {"m", inst.m()},
         {"n", inst.n()},
         {"I", I},
         {"engine", to_string(engine)},
         {"duplicates_removed", inst.duplicates_removed()}};
  if (inst.m() > 0 && inst.n() > 0) {
    json bounds;
    for (auto [name, kind] : {std::pair{"table1", BoundKind::table1}, std::pair{"combinatorial", BoundKind::combinatorial},
                              std::pair{"vinh", BoundKind::vinh}}) {
      auto rb = reference_bound(inst.m(), inst.n(), inst.modulus().value(), kind);
      bounds[name] = {{"regime", rb.regime}, {"value", rb.value}};
    }
    j["bounds"] = bounds;
    j["within_combinatorial"] = within_combinatorial_bound(I, inst.m(), inst.n());
    const Rational c = parse_rational(o.llconstant);
    const auto sizes = sizes_of(inst);
    json hyps = json::array();
    for (auto t : {Theorem::general_incidence, Theorem::cartesian_product, Theorem::point_plane})
      hyps.push_back(hypotheses_json(check_hypotheses(sizes, t, c)));
    j["hypotheses"] = hyps;
  }
  emit_json(o, out, j);
}

void cmd_count3d(const Options& o, std::ostream& out) {
  const PlaneInstance3D inst = read_instance3d(o.input);
  const std::uint64_t I = count_point_plane(inst);
  const std::size_t k = max_collinear_3d(inst.points(), inst.modulus());
  const std::string f = format_or(o, "json", {"json", "csv"});
  if (f == "csv") {
    emit(o, out, "p,r,s,I,k\n" + std::to_string(inst.modulus().value()) + "," + std::to_string(inst.r()) + "," +
                     std::to_string(inst.s()) + "," + std::to_string(I) + "," + std::to_string(k) + "\n");
    return;
  }
  emit_json(o, out, {{"p", inst.modulus().value()}, {"r", inst.r()}, {"s", inst.s()}, {"I", I}, {"k", k}});
}

void cmd_construct(const Options& o, std::ostream& out) {
  if (o.p == 0) throw Usage("construct needs --p");
  const PrimeModulus mod = PrimeModulus::make(o.p);
  Instance inst(mod);
  if (o.family == "elekes") {
    inst = elekes_construction(o.a, o.c, mod);
  } else if (o.family == "full_plane") {
    inst = full_plane(mod);
  } else if (o.family == "random") {
    inst = random_instance(mod, o.m, o.n, o.seed);
  } else if (o.family == "cartesian") {
    inst = random_cartesian(mod, o.a, o.b, o.n, o.seed);
  } else {
    throw Usage("unknown family '" + o.family + "' (elekes, full_plane, random, cartesian)");
  }
  emit(o, out, serialize_instance(inst));
}

void cmd_extract(const Options& o, std::ostream& out) {
  const Instance inst = read_instance(o.input);
  const CoverParameters prm = cover_params(o);
  try {
    const PencilGrid g = two_pencil_extract(inst.points(), inst.lines(), prm.c1, prm.c2);
    json j = grid_json(g);
    j["outcome"] = "grid";
    emit_json(o, out, j);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::empty_grid) throw;
    emit_json(o, out, {{"outcome", "empty_grid"}, {"detail", e.what()}});
  }
}

void cmd_cover(const Options& o, std::ostream& out) {
  const Instance inst = read_instance(o.input);
  const CoverParameters prm = cover_params(o);
  const GridCertificate cert = grid_cover(inst, prm);
  const VerificationReport rep = verify_certificate(inst, cert);
  json steps = json::array();
  for (const auto& st : cert.steps) {
    json g = grid_json(st.grid);
    g["remaining_before"] = st.remaining_before;
    if (o.normalize) {
      const NormalizedGrid ng = normalize_grid(st.grid, inst.lines());
      g["normalized"] = {{"X", scalars_json(ng.X)}, {"Y", scalars_json(ng.Y)}, {"H", points_json(ng.H)},
                         {"dropped_apex_line", ng.dropped_apex_line}};
    }
    steps.push_back(std::move(g));
  }
  json violations = json::array();
  for (const auto& v : rep.violations) violations.push_back({{"kind", to_string(v.kind)}, {"detail", v.detail}});
  const auto& part = cert.partition;
  emit_json(o, out,
            {{"params", {{"c1", to_string(prm.c1)}, {"c2", to_string(prm.c2)}, {"stop_fraction", to_string(prm.stop_fraction)}}},
             {"K", to_string(cert.K)},
             {"m", cert.m},
             {"n", cert.n},
             {"partition", {{"D", points_json(part.D)}, {"E", points_json(part.E)}, {"A_size", part.A.size()}}},
             {"s", cert.s()},
             {"steps", std::move(steps)},
             {"leftover", points_json(cert.leftover)},
             {"termination", cert.termination},
             {"verification", {{"ok", rep.ok()}, {"checks", rep.checks}, {"violations", std::move(violations)}}}});
}

void cmd_energy(const Options& o, std::ostream& out) {
  const Instance inst = read_instance(o.input);
  std::vector<Scalar> A, B;
  for (const auto& q : inst.points()) {
    A.push_back(q.x);
    B.push_back(q.y);
  }
  std::sort(A.begin(), A.end());
  A.erase(std::unique(A.begin(), A.end()), A.end());
  std::sort(B.begin(), B.end());
  B.erase(std::unique(B.begin(), B.end()), B.end());
  const EnergyCount E = line_energy(A, inst.lines());
  const BridgeCheck bridge = cs_bridge_check(A, B, inst.lines());
  json j{{"p", inst.modulus().value()},
         {"a", A.size()},
         {"b", B.size()},
         {"n", inst.n()},
         {"E", E.value},
         {"bridge", {{"I", bridge.incidences}, {"I_squared", to_string(bridge.lhs)}, {"b_times_E", to_string(bridge.rhs)},
                     {"holds", bridge.holds}}}};
  if (A.size() * inst.n() <= 4096) {
    const PlaneInstance3D red = energy_reduction(A, inst.lines());
    j["reduction"] = {{"r", red.r()}, {"s", red.s()}, {"I", count_point_plane(red)},
                      {"k", max_collinear_3d(red.points(), red.modulus())}};
  }
  if (inst.m() != A.size() * B.size())
    j["note"] = "points are not the full product of their coordinate sets; the bridge uses the product";
  emit_json(o, out, j);
}

void cmd_sumprod(const Options& o, std::ostream& out) {
  if (o.p == 0) throw Usage("sumprod needs --p");
  const PrimeModulus mod = PrimeModulus::make(o.p);
  const auto A = scalar_list(o.setA, mod), B = scalar_list(o.setB, mod), C = scalar_list(o.setC, mod);
  const SumProdReport r = sumproduct_report(parse_sumprod_kind(o.kind), A, B, C, parse_rational(o.llconstant));
  json images = json::array();
  for (const auto& im : r.images) images.push_back({{"expr", to_string(im.expr)}, {"size", im.size}, {"ratio", im.ratio}});
  json j{{"kind", to_string(r.kind)},
         {"p", mod.value()},
         {"sizes", {{"A", r.a}, {"B", r.b}, {"C", r.c}}},
         {"images", std::move(images)},
         {"main_term", r.main_term},
         {"condition", {{"name", r.condition.name}, {"lhs", r.condition.lhs}, {"rhs", r.condition.rhs}, {"pass", r.condition.pass}}}};
  if (r.kind == SumProdKind::sum_product) {
    j["M_min"] = r.m_min;
    j["M_max"] = r.m_max;
  }
  emit_json(o, out, j);
}

void cmd_distances(const Options& o, std::ostream& out) {
  const Instance inst = read_instance(o.input);
  const DistanceReport r = distance_sets(inst.points());
  json j{{"p", inst.modulus().value()},
         {"m", r.points.size()},
         {"delta", scalars_json(r.all)},
         {"delta_size", r.all.size()},
         {"best_pin", to_json(r.points[r.best_pin])},
         {"max_pinned", r.max_pinned},
         {"degenerate", r.degenerate},
         {"isosceles_triples", isosceles_triples(r.points)}};
  if (r.points.size() <= 512) j["bisector_incidences"] = bisector_incidences(r.points);
  emit_json(o, out, j);
}

void cmd_beck(const Options& o, std::ostream& out) {
  const Instance inst = read_instance(o.input);
  const BeckReport r = determined_lines(inst.points());
  json classes = json::array();
  for (const auto& c : r.classes)
    classes.push_back({{"j", c.j}, {"min_points", 1ULL << c.j}, {"max_points_exclusive", 1ULL << (c.j + 1)},
                       {"lines", c.lines}, {"pairs", c.pairs}});
  emit_json(o, out, {{"p", inst.modulus().value()},
                     {"m", inst.m()},
                     {"determined_lines", r.lines.size()},
                     {"classes", std::move(classes)},
                     {"pairs_covered", r.pairs_covered},
                     {"pairs_total", r.pairs_total}});
}

void cmd_sweep(const Options& o, std::ostream& out) {
  SweepConfig cfg = parse_sweep_config(read_text(o.config));
  if (!o.engine.empty() && o.engine != "auto") cfg.engine = parse_engine(o.engine);
  const auto records = run_sweep(cfg);
  const std::string csv = sweep_csv(records);
  const std::string js = sweep_json(records).dump(2) + "\n";
  if (!cfg.csv_output.empty()) write_text(cfg.csv_output, csv);
  if (!cfg.json_output.empty()) write_text(cfg.json_output, js);
  const std::string f = format_or(o, "csv", {"csv", "json"});
  emit(o, out, f == "csv" ? csv : js);
}

void cmd_fit(const Options& o, std::ostream& out) {
  const auto records = parse_sweep_csv(read_text(o.input));
  std::vector<double> x, y;
  for (const auto& r : records) {
    auto vx = record_value(r, o.xfield), vy = record_value(r, o.yfield);
    if (vx && vy) {
      x.push_back(*vx);
      y.push_back(*vy);
    }
  }
  const FitResult fit = fit_exponent(x, y);
  const std::string f = format_or(o, "json", {"json", "svg"});
  if (f == "svg") {
    emit(o, out, fit_svg(x, y, fit, o.xfield, o.yfield));
    return;
  }
  emit_json(o, out, {{"x", o.xfield}, {"y", o.yfield}, {"slope", fit.slope}, {"intercept", fit.intercept},
                     {"r_squared", fit.r_squared}, {"samples", fit.samples}});
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact point-line incidence experiments over prime fields", "inclab"};
  app.require_subcommand(1);
  Options o;

  auto input = [&](CLI::App* s, bool required = true) {
    auto* opt = s->add_option("--input", o.input, "Instance file");
    if (required) opt->required();
  };
  auto output = [&](CLI::App* s) {
    s->add_option("--output", o.output, "Write the result here instead of stdout");
    s->add_option("--format", o.format, "Output format");
  };
  auto cover_flags = [&](CLI::App* s) {
    s->add_option("--c1", o.c1, "Lower regularity constant (default 2^-11)");
    s->add_option("--c2", o.c2, "Upper regularity constant (default 2^15)");
    s->add_flag("--desk", o.desk, "Use c1 = 1/2, c2 = 2, stop = 1/4");
  };

  std::map<CLI::App*, std::function<void()>> actions;
  auto* count = app.add_subcommand("count", "Exact I(P, L) for an instance");
  input(count);
  output(count);
  count->add_option("--engine", o.engine, "naive | hash_join | auto");
  count->add_option("--llconstant", o.llconstant, "Constant c reading X << Y as X <= c Y");
  actions[count] = [&] { cmd_count(o, out, err); };

  auto* count3d = app.add_subcommand("count3d", "Exact point-plane incidences");
  input(count3d);
  output(count3d);
  actions[count3d] = [&] { cmd_count3d(o, out); };

  auto* construct = app.add_subcommand("construct", "Generate an instance");
  construct->add_option("family", o.family, "elekes | full_plane | random | cartesian")->required();
  construct->add_option("--p", o.p, "Field characteristic")->required();
  construct->add_option("--a", o.a, "elekes: a; cartesian: |A|");
  construct->add_option("--b", o.b, "cartesian: |B|");
  construct->add_option("--c", o.c, "elekes: c");
  construct->add_option("--m", o.m, "random: number of points");
  construct->add_option("--n", o.n, "random, cartesian: number of lines");
  construct->add_option("--seed", o.seed, "Generator seed");
  construct->add_option("--output", o.output, "Instance file to write");
  actions[construct] = [&] { cmd_construct(o, out); };

  auto* extract = app.add_subcommand("extract", "Two-pencil grid extraction on a whole instance");
  input(extract);
  output(extract);
  cover_flags(extract);
  actions[extract] = [&] { cmd_extract(o, out); };

  auto* cover = app.add_subcommand("cover", "Richness partition, grid covering and certificate check");
  input(cover);
  output(cover);
  cover_flags(cover);
  cover->add_option("--stop", o.stop, "Stop fraction (default 2^-15)");
  cover->add_flag("--normalize", o.normalize, "Include the projectively normalized grids");
  actions[cover] = [&] { cmd_cover(o, out); };

  auto* energy = app.add_subcommand("energy", "Line energy over the x-coordinates, with the bridge check");
  input(energy);
  output(energy);
  actions[energy] = [&] { cmd_energy(o, out); };

  auto* sumprod = app.add_subcommand("sumprod", "Sum-product and expander set sizes");
  sumprod->add_option("--kind", o.kind, "sum_product | shifted_product | three_variable | expander")->required();
  sumprod->add_option("--p", o.p, "Field characteristic")->required();
  sumprod->add_option("--A", o.setA, "Comma-separated residues")->required();
  sumprod->add_option("--B", o.setB, "Comma-separated residues");
  sumprod->add_option("--C", o.setC, "Comma-separated residues");
  sumprod->add_option("--llconstant", o.llconstant, "Constant c reading X << Y as X <= c Y");
  output(sumprod);
  actions[sumprod] = [&] { cmd_sumprod(o, out); };

  auto* distances = app.add_subcommand("distances", "Distance sets and isosceles triples of the points");
  input(distances);
  output(distances);
  actions[distances] = [&] { cmd_distances(o, out); };

  auto* beck = app.add_subcommand("beck", "Determined lines and their dyadic classes");
  input(beck);
  output(beck);
  actions[beck] = [&] { cmd_beck(o, out); };

  auto* sweep = app.add_subcommand("sweep", "Run a sweep configuration");
  sweep->add_option("--config", o.config, "Sweep configuration file")->required();
  sweep->add_option("--engine", o.engine, "Override the configured engine");
  output(sweep);
  actions[sweep] = [&] { cmd_sweep(o, out); };

  auto* fit = app.add_subcommand("fit", "Log-log exponent fit over a sweep CSV");
  input(fit);
  output(fit);
  fit->add_option("--x", o.xfield, "Column for x (default m)");
  fit->add_option("--y", o.yfield, "Column for y (default I)");
  actions[fit] = [&] { cmd_fit(o, out); };

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    for (auto& [sub, action] : actions) {
      if (sub->parsed()) action();
    }
  } catch (const Usage& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace inclab
