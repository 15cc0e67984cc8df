#pragma once

// JSON-lines family files: one record {"a": [int, ...], "b": "p/q"} per line. Integers that do not
// fit in 64 bits are written as decimal strings; the reader accepts both forms.

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hypercover/family.hpp"
#include "hypercover/reduction.hpp"
#include "hypercover/search/search.hpp"
#include "hypercover/witness.hpp"

namespace hypercover {

using Json = nlohmann::json;

inline Json integer_to_json(const BigInt& z) {
  if (auto v = to_int64(z)) return *v;
  return z.str();
}

inline Json to_json(const Hyperplane& h) {
  Json a = Json::array();
  for (const auto& c : h.normal()) a.push_back(integer_to_json(c));
  return Json{{"a", std::move(a)}, {"b", format_fraction(h.offset())}};
}

inline Hyperplane hyperplane_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("record must be a JSON object");
  if (!j.contains("a") || !j.at("a").is_array() || j.at("a").empty())
    throw InputError("record needs a non-empty array field \"a\"");
  if (!j.contains("b") || !j.at("b").is_string()) throw InputError("record needs a fraction string field \"b\"");
  std::vector<BigInt> a;
  for (const auto& x : j.at("a")) {
    if (x.is_number_integer()) a.emplace_back(x.get<std::int64_t>());
    else if (x.is_number_unsigned()) a.emplace_back(x.get<std::uint64_t>());
    else if (x.is_string()) a.push_back(parse_integer(x.get<std::string>()));
    else throw InputError("normal entries must be integers");
  }
  return Hyperplane(std::move(a), parse_fraction(j.at("b").get<std::string>()));
}

struct FamilyFile {
  Family family{1};
  std::size_t records = 0;
  std::size_t duplicates = 0;
};

/// Reads a JSON-lines family. Blank lines are skipped. `dim` is required when the file has no
/// records. Errors carry the 1-based line number.
inline FamilyFile read_family(std::istream& in, std::optional<int> dim = std::nullopt) {
  FamilyFile out;
  std::optional<Family> fam;
  if (dim) fam.emplace(*dim);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const Json j = Json::parse(line);
      Hyperplane h = hyperplane_from_json(j);
      if (!fam) fam.emplace(h.dim());
      ++out.records;
      if (!fam->add(std::move(h))) ++out.duplicates;
    } catch (const Json::exception& e) {
      throw InputError("line " + std::to_string(line_no) + ": invalid JSON: " + e.what());
    } catch (const std::invalid_argument& e) {
      throw InputError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!fam) throw InputError("empty family file: pass the dimension explicitly");
  out.family = std::move(*fam);
  return out;
}

inline void write_family(std::ostream& os, const Family& f) {
  for (const auto& h : f) os << to_json(h).dump() << '\n';
}

inline std::string family_to_string(const Family& f) {
  std::ostringstream os;
  write_family(os, f);
  return os.str();
}

inline Json family_to_json(const Family& f) {
  Json arr = Json::array();
  for (const auto& h : f) arr.push_back(to_json(h));
  return arr;
}

// ---------------------------------------------------------------------------
// Report fragments. Every number is an exact decimal or "p/q" string.

template <typename T>
std::string num(const T& x) {
  if constexpr (std::is_same_v<T, BigInt>) return x.str();
  else return std::to_string(x);
}

inline std::string vertex_string(const Vertex& v) {
  std::string s;
  for (int i = 1; i <= v.dim(); ++i) s += static_cast<char>('0' + v.coordinate(i));
  return s;
}

inline Json to_json(const Vertex& v) { return vertex_string(v); }

inline Json to_json(const Edge& e) { return Json{{"base", vertex_string(e.base())}, {"direction", num(e.direction())}}; }

inline Json to_json(const Violation& v) {
  return Json{{"vertex", vertex_string(v.vertex)}, {"direction", num(v.direction)}, {"uncovered", v.uncovered}};
}

inline Json mask_to_json(CoordMask m) {
  Json arr = Json::array();
  for (int i : mask_to_indices(m)) arr.push_back(num(i));
  return arr;
}

inline Json to_json(const WitnessReport& r) {
  Json j;
  j["dim"] = num(r.dim);
  j["family_size"] = num(r.family_size);
  j["w"] = vertex_string(r.w);
  j["flip_mask"] = mask_to_json(r.flip_mask);
  j["min_incidence"] = num(r.min_incidence);
  j["flipped_family"] = family_to_json(r.flipped);
  Json h0 = Json::array();
  for (auto i : r.h0_indices) h0.push_back(num(i + 1));
  j["H0_indices"] = h0;
  Json part = Json::array(), refined = Json::array();
  for (std::size_t k = 0; k < r.partition.size(); ++k) {
    part.push_back(mask_to_json(r.partition[k]));
    refined.push_back(Json{{"block", mask_to_json(r.refined[k].refined)},
                           {"sign", r.refined[k].sign > 0 ? "+" : r.refined[k].sign < 0 ? "-" : "0"}});
  }
  j["partition"] = part;
  j["refined"] = refined;
  j["S"] = mask_to_json(r.s);
  j["S_size"] = num(r.s_size());
  Json qs = Json::array();
  for (const auto& v : r.qs.to_vector()) qs.push_back(vertex_string(v));
  j["QS"] = qs;
  j["claim_qs_ok"] = r.claim_qs_ok;
  j["claim_qs_mechanism_ok"] = r.claim_qs_mechanism_ok;
  j["claim_subcube_ok"] = r.claim_subcube_ok;
  Json outside = Json::array();
  for (auto i : r.outside_indices) outside.push_back(num(i + 1));
  j["outside_indices"] = outside;
  Json restricted = Json::array();
  for (const auto& t : r.restricted) restricted.push_back(t.plane ? to_json(*t.plane) : Json("empty"));
  j["restricted"] = restricted;
  j["restricted_cover_ok"] = r.restricted_cover_ok;
  j["lower_bound"] = num(r.lower_bound);
  j["certified"] = r.certified;
  return j;
}

inline Json to_json(const SearchResult& r) {
  Json j;
  j["mode"] = std::string(to_string(r.mode));
  j["n"] = num(r.dim);
  j["C"] = r.box ? Json(num(*r.box)) : Json(nullptr);
  j["minimum"] = num(r.minimum);
  j["optimal"] = family_to_json(r.optimal);
  j["candidates_considered"] = num(r.candidates_considered);
  j["candidates_kept"] = num(r.candidates_kept);
  j["certified"] = r.certified;
  j["scope"] = r.certified ? "all hyperplanes" : "normals in the C-box";
  return j;
}

inline Json to_json(const ReductionResult& r, const Family& source) {
  Json j;
  j["source_size"] = num(source.size());
  j["produced_size"] = num(r.cover.size());
  j["size_bound"] = num(r.size_bound);
  j["family"] = family_to_json(r.cover);
  return j;
}

/// FNV-1a 64-bit, hex.
inline std::string digest(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

}  // namespace hypercover
