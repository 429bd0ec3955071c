#include "inclab/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "inclab/error.hpp"

namespace inclab {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::parse_error, where + ": " + what);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse_error, std::string("malformed JSON (") + e.what() + ")");
  }
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

std::int64_t integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<std::int64_t>();
}

PrimeModulus read_modulus(const json& doc) {
  const std::int64_t p = integer(field(doc, "p", "root"), "p");
  try {
    return PrimeModulus::make(p);
  } catch (const Error& e) {
    fail("p", e.what());
  }
}

std::int64_t residue(const json& v, std::uint32_t p, const std::string& where) {
  const std::int64_t x = integer(v, where);
  if (x < 0 || x >= static_cast<std::int64_t>(p))
    fail(where, std::to_string(x) + " is not a residue in [0, " + std::to_string(p) + ")");
  return x;
}

const json& array(const json& v, const std::string& where, std::size_t len = 0) {
  if (!v.is_array()) fail(where, "expected an array");
  if (len != 0 && v.size() != len) fail(where, "expected " + std::to_string(len) + " entries");
  return v;
}

std::string at(const char* name, std::size_t i) { return std::string(name) + "[" + std::to_string(i) + "]"; }

}  // namespace

Instance parse_instance(std::string_view text) {
  const json doc = parse_json(text);
  const PrimeModulus mod = read_modulus(doc);
  const std::uint32_t p = mod.value();

  std::vector<AffinePoint> points;
  const json& pts = array(field(doc, "points", "root"), "points");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string w = at("points", i);
    const json& q = array(pts[i], w, 2);
    points.push_back(AffinePoint::of(residue(q[0], p, w + "[0]"), residue(q[1], p, w + "[1]"), mod));
  }

  std::vector<AffineLine> lines;
  const json& ls = array(field(doc, "lines", "root"), "lines");
  for (std::size_t i = 0; i < ls.size(); ++i) {
    const std::string w = at("lines", i);
    const json& kind = field(ls[i], "kind", w);
    if (kind == "sl") {
      lines.push_back(AffineLine::non_vertical(Scalar(residue(field(ls[i], "s", w), p, w + ".s"), mod),
                                               Scalar(residue(field(ls[i], "t", w), p, w + ".t"), mod)));
    } else if (kind == "v") {
      lines.push_back(AffineLine::vertical(Scalar(residue(field(ls[i], "x", w), p, w + ".x"), mod)));
    } else {
      fail(w + ".kind", "expected \"sl\" or \"v\"");
    }
  }
  return Instance(mod, std::move(points), std::move(lines));
}

json to_json(const AffinePoint& q) { return json::array({q.x.value(), q.y.value()}); }

json to_json(const AffineLine& l) {
  if (l.is_vertical()) return {{"kind", "v"}, {"x", l.raw_a()}};
  return {{"kind", "sl"}, {"s", l.raw_a()}, {"t", l.raw_b()}};
}

json to_json(const Instance& inst) {
  json pts = json::array(), ls = json::array();
  for (const auto& q : inst.points()) pts.push_back(to_json(q));
  for (const auto& l : inst.lines()) ls.push_back(to_json(l));
  return {{"p", inst.modulus().value()}, {"points", std::move(pts)}, {"lines", std::move(ls)}};
}

std::string serialize_instance(const Instance& inst) { return to_json(inst).dump() + "\n"; }

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::parse_error, "cannot write '" + path.string() + "'");
  out << text;
}

Instance read_instance(const std::filesystem::path& path) { return parse_instance(read_text(path)); }

void write_instance(const Instance& inst, const std::filesystem::path& path) {
  write_text(path, serialize_instance(inst));
}

PlaneInstance3D parse_instance3d(std::string_view text) {
  const json doc = parse_json(text);
  const PrimeModulus mod = read_modulus(doc);
  const std::uint32_t p = mod.value();

  std::vector<Point3> points;
  const json& pts = array(field(doc, "points", "root"), "points");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string w = at("points", i);
    const json& q = array(pts[i], w, 3);
    Point3 r{};
    for (std::size_t k = 0; k < 3; ++k)
      r.c[k] = static_cast<std::uint32_t>(residue(q[k], p, w + "[" + std::to_string(k) + "]"));
    points.push_back(r);
  }

  std::vector<Plane3> planes;
  const json& pls = array(field(doc, "planes", "root"), "planes");
  for (std::size_t i = 0; i < pls.size(); ++i) {
    const std::string w = at("planes", i);
    const json& c = array(pls[i], w, 4);
    std::int64_t k[4];
    for (std::size_t j = 0; j < 4; ++j) k[j] = residue(c[j], p, w + "[" + std::to_string(j) + "]");
    try {
      planes.push_back(Plane3::make(k[0], k[1], k[2], k[3], mod));
    } catch (const Error& e) {
      fail(w, e.what());
    }
  }
  return PlaneInstance3D(mod, std::move(points), std::move(planes));
}

PlaneInstance3D read_instance3d(const std::filesystem::path& path) {
  return parse_instance3d(read_text(path));
}

std::string serialize_instance3d(const PlaneInstance3D& inst) {
  json pts = json::array(), pls = json::array();
  for (const auto& q : inst.points()) pts.push_back(q.c);
  for (const auto& pl : inst.planes()) pls.push_back(pl.coef);
  return json{{"p", inst.modulus().value()}, {"points", std::move(pts)}, {"planes", std::move(pls)}}.dump() +
         "\n";
}

}  // namespace inclab
