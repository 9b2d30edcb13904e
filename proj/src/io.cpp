#include "inrs/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace inrs {

using nlohmann::json;

namespace {

std::string side_ctx(std::size_t k, const char* field) {
  return "sides[" + std::to_string(k) + "]." + field;
}

double as_number(const json& j, const std::string& ctx) {
  if (!j.is_number()) throw InputError(ctx + ": expected a number");
  return j.get<double>();
}

std::vector<double> number_array(const json& j, const std::string& ctx) {
  if (!j.is_array()) throw InputError(ctx + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_number(j[i], ctx + "[" + std::to_string(i) + "]"));
  return out;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

std::vector<NurbsSide> parse_domain_sides(std::string_view text, std::string* name) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError("domain JSON, line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  if (!doc.is_object()) throw InputError("domain JSON: top level must be an object");
  if (!doc.contains("format_version")) throw InputError("domain JSON: missing format_version");
  if (!doc["format_version"].is_number_integer() || doc["format_version"].get<int>() != kDomainFormatVersion)
    throw InputError("domain JSON: unsupported format_version (expected 1)");
  if (name) {
    name->clear();
    if (doc.contains("name")) {
      if (!doc["name"].is_string()) throw InputError("domain JSON: name must be a string");
      *name = doc["name"].get<std::string>();
    }
  }
  if (!doc.contains("sides") || !doc["sides"].is_array()) throw InputError("domain JSON: missing sides array");

  std::vector<NurbsSide> sides;
  const json& js = doc["sides"];
  for (std::size_t k = 0; k < js.size(); ++k) {
    const json& s = js[k];
    if (!s.is_object()) throw InputError("sides[" + std::to_string(k) + "]: expected an object");
    for (const char* f : {"degree", "knots", "control_points", "weights"})
      if (!s.contains(f)) throw InputError(side_ctx(k, f) + ": missing");
    NurbsSide side;
    if (!s["degree"].is_number_integer()) throw InputError(side_ctx(k, "degree") + ": expected an integer");
    side.degree = s["degree"].get<int>();
    side.knots = number_array(s["knots"], side_ctx(k, "knots"));
    side.weights = number_array(s["weights"], side_ctx(k, "weights"));
    const json& cp = s["control_points"];
    if (!cp.is_array()) throw InputError(side_ctx(k, "control_points") + ": expected an array");
    for (std::size_t i = 0; i < cp.size(); ++i) {
      const std::string ctx = side_ctx(k, "control_points") + "[" + std::to_string(i) + "]";
      const auto xy = number_array(cp[i], ctx);
      if (xy.size() != 2) throw InputError(ctx + ": expected [x, y]");
      side.control_points.push_back({xy[0], xy[1]});
    }
    sides.push_back(std::move(side));
  }
  return sides;
}

BoundaryCurve parse_domain(std::string_view text) {
  std::string name;
  auto sides = parse_domain_sides(text, &name);
  return BoundaryCurve(std::move(sides), name);
}

std::string serialize_domain(const BoundaryCurve& curve) {
  json doc;
  doc["format_version"] = kDomainFormatVersion;
  if (!curve.name().empty()) doc["name"] = curve.name();
  json sides = json::array();
  for (const auto& s : curve.sides()) {
    json js;
    js["degree"] = s.degree;
    js["knots"] = s.knots;
    json cps = json::array();
    for (const auto& p : s.control_points) cps.push_back({p.x, p.y});
    js["control_points"] = cps;
    js["weights"] = s.weights;
    sides.push_back(js);
  }
  doc["sides"] = sides;
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw InputError("write failed: " + path);
}

BoundaryCurve load_domain(const std::string& path) {
  try {
    return parse_domain(read_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void save_domain(const BoundaryCurve& curve, const std::string& path) { write_file(path, serialize_domain(curve)); }

BoundaryCurve resolve_domain(const std::string& s) {
  return is_builtin_domain(s) ? builtin_domain(s) : load_domain(s);
}

std::vector<Point2> parse_points_text(std::string_view text) {
  std::vector<Point2> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t comma = line.find(',');
    auto fail = [&] { throw InputError("points line " + std::to_string(line_no) + ": expected \"x,y\""); };
    if (comma == std::string_view::npos) fail();
    auto num = [&](std::string_view f) {
      while (!f.empty() && (f.front() == ' ' || f.front() == '\t' || f.front() == '+')) f.remove_prefix(1);
      while (!f.empty() && (f.back() == ' ' || f.back() == '\t')) f.remove_suffix(1);
      double v = 0.0;
      const auto r = std::from_chars(f.data(), f.data() + f.size(), v);
      if (f.empty() || r.ec != std::errc{} || r.ptr != f.data() + f.size()) fail();
      if (!std::isfinite(v)) throw InputError("points line " + std::to_string(line_no) + ": non-finite coordinate");
      return v;
    };
    out.push_back({num(line.substr(0, comma)), num(line.substr(comma + 1))});
  }
  return out;
}

std::string format_points_text(std::span<const Point2> pts) {
  std::string out;
  char buf[64];
  for (const auto& p : pts) {
    auto r = std::to_chars(buf, buf + sizeof buf, p.x);
    *r.ptr++ = ',';
    r = std::to_chars(r.ptr, buf + sizeof buf, p.y);
    *r.ptr++ = '\n';
    out.append(buf, r.ptr);
  }
  return out;
}

namespace {

template <class T>
void put_le(std::string& out, T v) {
  static_assert(std::endian::native == std::endian::little, "little-endian host required");
  char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  out.append(b, sizeof(T));
}

template <class T>
T get_le(const char* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;
}

}  // namespace

std::vector<Point2> parse_points_binary(std::string_view bytes) {
  constexpr std::size_t header = 4 + 1 + 8;
  if (bytes.size() < header || bytes.substr(0, 4) != "INRS") throw InputError("binary points: bad magic");
  if (static_cast<std::uint8_t>(bytes[4]) != kPointFormatVersion)
    throw InputError("binary points: unsupported version " + std::to_string(static_cast<int>(bytes[4])));
  const auto count = get_le<std::uint64_t>(bytes.data() + 5);
  if (count > (bytes.size() - header) / 16 || bytes.size() - header != count * 16)
    throw InputError("binary points: count " + std::to_string(count) + " does not match payload of " +
                     std::to_string(bytes.size() - header) + " bytes");
  std::vector<Point2> out(count);
  const char* p = bytes.data() + header;
  for (std::size_t i = 0; i < count; ++i, p += 16) {
    out[i] = {get_le<double>(p), get_le<double>(p + 8)};
    if (!is_finite(out[i])) throw InputError("binary points: non-finite coordinate in point " + std::to_string(i));
  }
  return out;
}

std::string format_points_binary(std::span<const Point2> pts) {
  std::string out = "INRS";
  out.push_back(static_cast<char>(kPointFormatVersion));
  put_le<std::uint64_t>(out, pts.size());
  for (const auto& p : pts) {
    put_le(out, p.x);
    put_le(out, p.y);
  }
  return out;
}

std::vector<Point2> load_points(const std::string& path) {
  const std::string data = read_file(path);
  try {
    if (data.size() >= 4 && data.compare(0, 4, "INRS") == 0) return parse_points_binary(data);
    return parse_points_text(data);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string format_labels_text(std::span<const Label> labels) {
  std::string out;
  out.reserve(labels.size() * 2);
  for (Label l : labels) {
    out.push_back(static_cast<char>('0' + static_cast<int>(l)));
    out.push_back('\n');
  }
  return out;
}

std::string format_labels_binary(std::span<const Label> labels) {
  std::string out(labels.size(), '\0');
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = static_cast<char>(labels[i]);
  return out;
}

}  // namespace inrs
