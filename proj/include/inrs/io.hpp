#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "inrs/classifier.hpp"
#include "inrs/curve_model.hpp"
#include "inrs/domains.hpp"

namespace inrs {

/// Malformed input file or value.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDomainFormatVersion = 1;

/// JSON domain text -> sides. Field errors carry the side index and field name.
std::vector<NurbsSide> parse_domain_sides(std::string_view json_text, std::string* name = nullptr);
BoundaryCurve parse_domain(std::string_view json_text);
/// Sides -> JSON text. Doubles are written with 17 significant digits so a reload is bitwise exact.
std::string serialize_domain(const BoundaryCurve& curve);

BoundaryCurve load_domain(const std::string& path);
void save_domain(const BoundaryCurve& curve, const std::string& path);

/// Builtin name or path to a JSON domain file.
BoundaryCurve resolve_domain(const std::string& name_or_path);

/// Text points: one "x,y" per line; blank lines and lines starting with '#' are skipped.
std::vector<Point2> parse_points_text(std::string_view text);
std::string format_points_text(std::span<const Point2> pts);

/// Binary points: "INRS", version byte 1, u64 LE count, then count (x, y) f64 LE pairs.
inline constexpr std::uint8_t kPointFormatVersion = 1;
std::vector<Point2> parse_points_binary(std::string_view bytes);
std::string format_points_binary(std::span<const Point2> pts);

/// Reads either format, chosen by the magic bytes.
std::vector<Point2> load_points(const std::string& path);

std::string format_labels_text(std::span<const Label> labels);
std::string format_labels_binary(std::span<const Label> labels);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view data);

/// First m terms (from index 1) of the base-(2, 3) Halton sequence mapped into rect.
std::vector<Point2> halton(std::size_t m, const Rect& rect);
double radical_inverse(std::uint64_t index, std::uint32_t base);

/// n x n cell-centred grid over rect.
std::vector<Point2> grid(std::size_t n, const Rect& rect);

}  // namespace inrs
