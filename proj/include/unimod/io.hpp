#pragma once

// Text serialization for Gram matrices, form classes, surfaces, point counts
// and reports. All objects are JSON with alphabetically ordered keys and no
// floating point, so dump(parse(s)) == s for everything emitted here.

#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "unimod/classification.hpp"
#include "unimod/error.hpp"
#include "unimod/lattice.hpp"
#include "unimod/surfaces.hpp"
#include "unimod/zeta.hpp"

namespace unimod {

using Json = nlohmann::json;

inline constexpr int kCatalogFormatVersion = 1;
inline constexpr int kGoldenFormatVersion = 1;

namespace detail {

[[noreturn]] inline void malformed(const std::string& what) {
  throw DomainError(ErrorCode::MalformedInput, what);
}

inline bool is_integer_literal(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  return !s.empty() && s.find_first_not_of("0123456789") == std::string_view::npos;
}

// SAX consumer for {"n": int, "entries": [[int, ...], ...]}. Integers too
// wide for 64 bits reach number_float with their source text, which is
// parsed exactly here instead of going through double.
class GramSaxReader final : public nlohmann::json_sax<Json> {
 public:
  static constexpr std::size_t kMaxRank = 4096;

  std::optional<std::size_t> n;
  std::optional<std::vector<std::vector<Integer>>> rows;
  std::string error;

  bool null() override { return fail("unexpected null"); }
  bool boolean(bool) override { return fail("unexpected boolean"); }
  bool number_integer(number_integer_t v) override { return value(Integer(v)); }
  bool number_unsigned(number_unsigned_t v) override { return value(Integer(v)); }
  bool number_float(number_float_t, const string_t& text) override {
    if (!is_integer_literal(text)) return fail("non-integer number " + text);
    return value(Integer(text));
  }
  bool string(string_t&) override { return fail("unexpected string"); }
  bool binary(binary_t&) override { return fail("unexpected binary value"); }

  bool start_object(std::size_t) override {
    if (ctx_ != Ctx::Start) return fail("unexpected object");
    ctx_ = Ctx::Object;
    return true;
  }
  bool key(string_t& k) override {
    if (k != "n" && k != "entries") return fail("unknown field \"" + k + "\"");
    if ((k == "n" && n) || (k == "entries" && rows)) return fail("duplicate field \"" + k + "\"");
    key_ = k;
    return true;
  }
  bool end_object() override {
    ctx_ = Ctx::Done;
    return true;
  }
  bool start_array(std::size_t) override {
    if (ctx_ == Ctx::Object && key_ == "entries") {
      rows.emplace();
      ctx_ = Ctx::Entries;
      return true;
    }
    if (ctx_ == Ctx::Entries) {
      if (rows->size() >= kMaxRank) return fail("too many rows");
      rows->emplace_back();
      ctx_ = Ctx::Row;
      return true;
    }
    return fail("unexpected array");
  }
  bool end_array() override {
    ctx_ = ctx_ == Ctx::Row ? Ctx::Entries : Ctx::Object;
    return true;
  }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception& ex) override {
    return fail(ex.what());
  }

 private:
  enum class Ctx { Start, Object, Entries, Row, Done };

  bool value(const Integer& v) {
    if (ctx_ == Ctx::Object && key_ == "n") {
      if (v < 0 || v > Integer(kMaxRank)) return fail("\"n\" must be in 0.." + std::to_string(kMaxRank));
      n = static_cast<std::size_t>(v);
      return true;
    }
    if (ctx_ == Ctx::Row) {
      if (rows->back().size() >= kMaxRank) return fail("row too long");
      rows->back().push_back(v);
      return true;
    }
    return fail("unexpected number");
  }
  bool fail(const std::string& why) {
    if (error.empty()) error = why;
    return false;
  }

  Ctx ctx_ = Ctx::Start;
  std::string key_;
};

inline Json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

template <typename T>
T required(const Json& j, const char* field) {
  if (!j.is_object() || !j.contains(field)) malformed(std::string("missing field \"") + field + "\"");
  try {
    return j.at(field).get<T>();
  } catch (const Json::exception&) {
    malformed(std::string("field \"") + field + "\" has the wrong type");
  }
}

}  // namespace detail

/// Parses a Gram matrix document. Integers are read exactly at any size.
/// Throws MalformedInput on syntax errors, unknown fields, shape mismatch or
/// asymmetry.
inline GramMatrix gram_from_json(std::string_view text) {
  detail::GramSaxReader reader;
  const bool ok = Json::sax_parse(text, &reader);
  if (!ok) detail::malformed("Gram matrix: " + (reader.error.empty() ? "parse error" : reader.error));
  if (!reader.n) detail::malformed("Gram matrix: missing field \"n\"");
  if (!reader.rows) detail::malformed("Gram matrix: missing field \"entries\"");
  if (reader.rows->size() != *reader.n)
    detail::malformed("Gram matrix: \"n\" is " + std::to_string(*reader.n) + " but there are " +
                      std::to_string(reader.rows->size()) + " rows");
  try {
    return GramMatrix::from_rows(*reader.rows);
  } catch (const std::invalid_argument& e) {
    detail::malformed(std::string("Gram matrix: ") + e.what());
  }
}

/// Canonical text: {"entries":[[...],...],"n":N} with no whitespace.
inline std::string gram_to_json(const GramMatrix& m) {
  std::ostringstream out;
  out << "{\"entries\":[";
  for (std::size_t i = 0; i < m.rank(); ++i) {
    out << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.rank(); ++j) out << (j ? "," : "") << m(i, j).str();
    out << ']';
  }
  out << "],\"n\":" << m.rank() << '}';
  return out.str();
}

inline Json to_json(const FormInvariants& inv) {
  return {{"rank", inv.rank},     {"b_plus", inv.b_plus},         {"b_minus", inv.b_minus},
          {"signature", inv.signature}, {"parity", to_string(inv.parity)},
          {"determinant", detail::integer_json(inv.determinant)}};
}

inline Json to_json(const FormClass& c) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IndefiniteOdd>)
          return {{"variant", "IndefiniteOdd"}, {"n_plus", v.n_plus}, {"n_minus", v.n_minus}};
        else if constexpr (std::is_same_v<T, IndefiniteEven>)
          return {{"variant", "IndefiniteEven"},
                  {"e8_signed_count", v.e8_signed_count},
                  {"h_count", v.h_count}};
        else
          return {{"variant", "DefiniteDiagonal"}, {"sign", v.sign}, {"rank", v.rank}};
      },
      c);
}

/// Inverse of to_json(FormClass); rejects unknown variants and values that
/// violate the per-variant constraints.
inline FormClass form_class_from_json(const Json& j) {
  using detail::required;
  const auto variant = required<std::string>(j, "variant");
  if (variant == "IndefiniteOdd") {
    IndefiniteOdd c{required<std::int64_t>(j, "n_plus"), required<std::int64_t>(j, "n_minus")};
    if (c.n_plus < 1 || c.n_minus < 1) detail::malformed("IndefiniteOdd counts must be >= 1");
    return c;
  }
  if (variant == "IndefiniteEven") {
    IndefiniteEven c{required<std::int64_t>(j, "e8_signed_count"), required<std::int64_t>(j, "h_count")};
    if (c.h_count < 1) detail::malformed("IndefiniteEven h_count must be >= 1");
    return c;
  }
  if (variant == "DefiniteDiagonal") {
    DefiniteDiagonal c{required<int>(j, "sign"), required<std::int64_t>(j, "rank")};
    if ((c.sign != 1 && c.sign != -1) || c.rank < 1)
      detail::malformed("DefiniteDiagonal needs sign +-1 and rank >= 1");
    return c;
  }
  detail::malformed("unknown FormClass variant \"" + variant + "\"");
}

inline Json to_json(const SurfaceData& s) {
  return {{"name", s.name}, {"c1_sq", s.c1_sq}, {"c2", s.c2}, {"spin", s.spin}};
}

inline SurfaceData surface_from_json(const Json& j) {
  using detail::required;
  return {required<std::string>(j, "name"), required<std::int64_t>(j, "c1_sq"),
          required<std::int64_t>(j, "c2"), required<bool>(j, "spin")};
}

inline Json to_json(const SurfaceInvariants& s) {
  return {{"b2", s.b2},         {"sigma", s.sigma},     {"parity", to_string(s.parity)},
          {"b_plus", s.b_plus}, {"b_minus", s.b_minus}, {"chi_holo", s.chi_holo}};
}

inline Json to_json(const PointCount& c) {
  return {{"variety", c.variety}, {"q", c.q}, {"count", c.count}};
}

inline PointCount point_count_from_json(const Json& j) {
  using detail::required;
  return {required<std::string>(j, "variety"), required<std::uint64_t>(j, "q"),
          required<std::uint64_t>(j, "count")};
}

inline Json to_json(const CounterexampleReport& r) {
  Json counts = Json::array();
  for (const auto& row : r.rows)
    counts.push_back({{"prime", row.p},
                      {"k", row.k},
                      {"q", row.q},
                      {"counts", {{r.first.name, row.count_p1xp1}, {r.second.name, row.count_blowup}}}});
  return {{"surfaces", Json::array({r.first.name, r.second.name})},
          {"primes", r.primes},
          {"counts", counts},
          {"counts_equal", r.counts_equal},
          {"homeomorphic", r.homeomorphic},
          {"form_classes", {{r.first.name, to_json(r.first_class)}, {r.second.name, to_json(r.second_class)}}},
          {"conclusion", r.conclusion}};
}

namespace detail {

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    malformed(path + ": " + e.what());
  }
}

inline void check_version(const Json& j, int expected, const std::string& path) {
  const int v = required<int>(j, "version");
  if (v != expected)
    malformed(path + ": format version " + std::to_string(v) + ", expected " + std::to_string(expected));
}

}  // namespace detail

/// Reads a catalog data file: {"version": 1, "surfaces": [SurfaceData...]}.
inline std::vector<SurfaceData> load_catalog(const std::string& path) {
  const Json j = detail::read_json_file(path);
  detail::check_version(j, kCatalogFormatVersion, path);
  std::vector<SurfaceData> out;
  for (const Json& s : detail::required<Json>(j, "surfaces")) out.push_back(surface_from_json(s));
  return out;
}

inline Json catalog_to_json(const std::vector<SurfaceData>& surfaces) {
  Json list = Json::array();
  for (const auto& s : surfaces) list.push_back(to_json(s));
  return {{"version", kCatalogFormatVersion}, {"surfaces", list}};
}

/// Reads frozen regression counts: {"version": 1, "point_counts": [...]}.
inline std::vector<PointCount> load_golden_counts(const std::string& path) {
  const Json j = detail::read_json_file(path);
  detail::check_version(j, kGoldenFormatVersion, path);
  std::vector<PointCount> out;
  for (const Json& c : detail::required<Json>(j, "point_counts")) out.push_back(point_count_from_json(c));
  return out;
}

}  // namespace unimod
