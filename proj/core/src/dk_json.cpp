#include "dk/dk_json.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "dk/errors.hpp"
#include "json.hpp"

namespace dk {

namespace {

using nlohmann::json;

std::string join(std::initializer_list<Degree> parts) {
  std::string out;
  for (Degree k : parts) {
    if (!out.empty()) out += ',';
    out += std::to_string(k);
  }
  return out;
}

std::vector<Degree> split_key(const std::string& key, std::size_t expected) {
  std::vector<Degree> parts;
  std::string_view rest = key;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view token = rest.substr(0, comma);
    Degree value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      throw ParseError("bad degree key '" + key + "'", 0);
    }
    parts.push_back(value);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (parts.size() != expected) {
    throw ParseError("key '" + key + "' should have " + std::to_string(expected) + " degrees", 0);
  }
  return parts;
}

Count read_count(const json& value, const std::string& key) {
  if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
    throw ParseError("count for '" + key + "' must be a non-negative integer", 0);
  }
  return value.get<Count>();
}

const json& require(const json& doc, const char* field) {
  auto it = doc.find(field);
  if (it == doc.end()) throw ParseError(std::string("missing field '") + field + "'", 0);
  return *it;
}

const json& require_object(const json& doc, const char* field) {
  const json& value = require(doc, field);
  if (!value.is_object()) throw ParseError(std::string("field '") + field + "' must be an object", 0);
  return value;
}

}  // namespace

std::string to_json(const DkDistribution& dist) {
  json doc;
  doc["d"] = order(dist);
  std::visit(
      [&doc](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        doc["n"] = d.n;
        if constexpr (std::is_same_v<T, ZeroK>) {
          doc["kbar"] = d.kbar;
        } else if constexpr (std::is_same_v<T, OneK>) {
          json counts = json::object();
          for (const auto& [k, c] : d.counts) counts[std::to_string(k)] = c;
          doc["degree_counts"] = std::move(counts);
        } else if constexpr (std::is_same_v<T, TwoK>) {
          json counts = json::object();
          for (const auto& [key, c] : d.counts) counts[join({key.low, key.high})] = c;
          doc["jdd_counts"] = std::move(counts);
        } else {
          json wedges = json::object();
          json triangles = json::object();
          for (const auto& [key, c] : d.wedges) wedges[join({key.end_low, key.center, key.end_high})] = c;
          for (const auto& [key, c] : d.triangles) triangles[join({key.k1, key.k2, key.k3})] = c;
          doc["wedge_counts"] = std::move(wedges);
          doc["triangle_counts"] = std::move(triangles);
        }
      },
      dist);
  return doc.dump(2) + "\n";
}

DkDistribution distribution_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
  }
  if (!doc.is_object()) throw ParseError("distribution must be a JSON object", 0);
  const json& d_field = require(doc, "d");
  const json& n_field = require(doc, "n");
  if (!d_field.is_number_integer()) throw ParseError("field 'd' must be an integer", 0);
  const std::uint64_t n = read_count(n_field, "n");

  switch (d_field.get<int>()) {
    case 0: {
      const json& kbar = require(doc, "kbar");
      if (!kbar.is_number() || kbar.get<double>() < 0) throw ParseError("'kbar' must be a non-negative number", 0);
      return ZeroK{n, kbar.get<double>()};
    }
    case 1: {
      OneK out{n, {}};
      for (const auto& [key, value] : require_object(doc, "degree_counts").items()) {
        out.counts[split_key(key, 1)[0]] = read_count(value, key);
      }
      return out;
    }
    case 2: {
      TwoK out{n, {}};
      for (const auto& [key, value] : require_object(doc, "jdd_counts").items()) {
        const auto k = split_key(key, 2);
        if (k[0] > k[1]) throw ParseError("jdd key '" + key + "' is not canonical (k1 <= k2)", 0);
        out.counts[JointDegree{k[0], k[1]}] = read_count(value, key);
      }
      return out;
    }
    case 3: {
      ThreeK out{n, {}, {}};
      for (const auto& [key, value] : require_object(doc, "wedge_counts").items()) {
        const auto k = split_key(key, 3);
        if (k[0] > k[2]) throw ParseError("wedge key '" + key + "' is not canonical (end_low first)", 0);
        out.wedges[WedgeKey{k[0], k[1], k[2]}] = read_count(value, key);
      }
      for (const auto& [key, value] : require_object(doc, "triangle_counts").items()) {
        const auto k = split_key(key, 3);
        if (k[0] > k[1] || k[1] > k[2]) throw ParseError("triangle key '" + key + "' is not sorted", 0);
        out.triangles[TriangleKey{k[0], k[1], k[2]}] = read_count(value, key);
      }
      return out;
    }
    default:
      throw ParseError("field 'd' must be 0, 1, 2 or 3", 0);
  }
}

void write_distribution(const std::filesystem::path& path, const DkDistribution& dist) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json(dist);
}

DkDistribution read_distribution(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return distribution_from_json(buffer.str());
}

}  // namespace dk
