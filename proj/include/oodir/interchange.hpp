// Copyright 2026 The ooDir Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "oodir/core.hpp"
#include "oodir/hsh.hpp"
#include "oodir/raw.hpp"
#include "oodir/sh.hpp"

namespace oodir {

// Format tags and descriptors. Readers reject anything unknown; writers emit
// exactly these, so fitted models stay self-describing.
inline constexpr const char* kDifFormatTag = "oodir-dif";
inline constexpr const char* kModelFormatTag = "oodir-model";
inline constexpr int kFormatVersion = 1;
inline constexpr const char* kShConvention = "sh-real-orthonormal-csphase-off";
inline constexpr const char* kFreqMappingLinear = "linear-0-pi";

using Document = std::variant<RawDirectivity, ShModel, HshModel>;

namespace detail {

// --- canonical JSON emission -----------------------------------------------

inline void json_escape_to(std::string& out, std::string_view s) {
  static const char* hex = "0123456789abcdef";
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          out += "\\u00";
          out += hex[(c >> 4) & 0xf];
          out += hex[c & 0xf];
        } else {
          out += static_cast<char>(c);
        }
    }
  }
}

inline void append_quoted(std::string& out, std::string_view s) {
  out += '"';
  json_escape_to(out, s);
  out += '"';
}

inline void append_number_list(std::string& out, const std::vector<double>& v) {
  out += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v[i]);
  }
  out += ']';
}

// --- validated JSON access --------------------------------------------------

inline const nlohmann::json& require_key(const nlohmann::json& obj,
                                         const char* key) {
  auto it = obj.find(key);
  if (it == obj.end())
    fail(ErrorKind::format, std::string("missing required field \"") + key + '"');
  return *it;
}

inline void reject_unknown_keys(const nlohmann::json& obj,
                                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known)
      fail(ErrorKind::format, "unknown field \"" + it.key() + '"');
  }
}

inline double as_number(const nlohmann::json& v, const char* what) {
  if (!v.is_number())
    fail(ErrorKind::parse, std::string(what) + " must be a number");
  return v.get<double>();
}

inline int as_int(const nlohmann::json& v, const char* what) {
  if (!v.is_number_integer())
    fail(ErrorKind::parse, std::string(what) + " must be an integer");
  return v.get<int>();
}

inline std::string as_string(const nlohmann::json& v, const char* what) {
  if (!v.is_string())
    fail(ErrorKind::parse, std::string(what) + " must be a string");
  return v.get<std::string>();
}

inline std::vector<double> as_number_list(const nlohmann::json& v,
                                          const char* what) {
  if (!v.is_array())
    fail(ErrorKind::parse, std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(as_number(e, what));
  return out;
}

inline nlohmann::json parse_json(std::string_view bytes) {
  try {
    return nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::parse, e.what());  // message carries the byte position
  }
}

inline void check_header(const nlohmann::json& doc, const char* tag) {
  if (!doc.is_object()) fail(ErrorKind::parse, "document must be a JSON object");
  if (as_string(require_key(doc, "format"), "format") != tag)
    fail(ErrorKind::format, std::string("format tag is not \"") + tag + '"');
  const int version = as_int(require_key(doc, "version"), "version");
  if (version != kFormatVersion)
    fail(ErrorKind::format, "unsupported version " + std::to_string(version));
}

// Angles are validated strictly on ingest: a reader repairs nothing, so an
// azimuth outside [0, 360) is rejected rather than normalized.
inline Direction read_direction(const nlohmann::json& v) {
  if (!v.is_array() || v.size() != 2)
    fail(ErrorKind::parse, "each direction must be an [azimuth, elevation] pair");
  const double az = as_number(v[0], "azimuth");
  const double el = as_number(v[1], "elevation");
  if (!(az >= 0.0) || !(az < 360.0))
    fail(ErrorKind::domain, "azimuth " + format_double(az) + " outside [0, 360)");
  return Direction(az, el);  // rejects elevation outside [-90, 90]
}

}  // namespace detail

// ---------------------------------------------------------------------------
// DIF: raw directivity interchange
// ---------------------------------------------------------------------------

/// Canonical serialization: fixed key order, shortest round-trip decimals,
/// the distances field (and the per-distance nesting level in "values")
/// omitted when the data carries no distances. Two writes of the same object
/// are byte-identical.
inline std::string write_dif(const RawDirectivity& raw) {
  const Coordinates& c = raw.coords();
  const bool has_dists = !c.dists().empty();
  std::string out;
  out += "{\n  \"format\": \"";
  out += kDifFormatTag;
  out += "\",\n  \"version\": ";
  out += std::to_string(kFormatVersion);
  out += ",\n  \"info\": ";
  detail::append_quoted(out, raw.info());
  out += ",\n  \"directions\": [";
  for (std::size_t i = 0; i < c.dirs().size(); ++i) {
    if (i) out += ',';
    out += '[';
    out += detail::format_double(c.dirs()[i].azimuth_deg());
    out += ',';
    out += detail::format_double(c.dirs()[i].elevation_deg());
    out += ']';
  }
  out += "],\n  \"frequencies\": ";
  detail::append_number_list(out, c.freqs());
  if (has_dists) {
    out += ",\n  \"distances\": ";
    detail::append_number_list(out, c.dists());
  }
  out += ",\n  \"values\": [";
  for (std::size_t i = 0; i < c.dir_count(); ++i) {
    if (i) out += ',';
    out += "\n    [";
    for (std::size_t j = 0; j < c.freq_count(); ++j) {
      if (j) out += ',';
      if (has_dists) {
        out += '[';
        for (std::size_t k = 0; k < c.dist_count(); ++k) {
          if (k) out += ',';
          out += detail::format_double(raw.grid().at(i, j, k));
        }
        out += ']';
      } else {
        out += detail::format_double(raw.grid().at(i, j, 0));
      }
    }
    out += ']';
  }
  out += "\n  ]\n}\n";
  return out;
}

inline RawDirectivity read_dif(std::string_view bytes) {
  const nlohmann::json doc = detail::parse_json(bytes);
  detail::check_header(doc, kDifFormatTag);
  detail::reject_unknown_keys(doc, {"format", "version", "info", "directions",
                                    "frequencies", "distances", "values"});

  const std::string info =
      detail::as_string(detail::require_key(doc, "info"), "info");

  const auto& jdirs = detail::require_key(doc, "directions");
  if (!jdirs.is_array()) fail(ErrorKind::parse, "directions must be an array");
  std::vector<Direction> dirs;
  dirs.reserve(jdirs.size());
  for (const auto& jd : jdirs) dirs.push_back(detail::read_direction(jd));

  std::vector<double> freqs = detail::as_number_list(
      detail::require_key(doc, "frequencies"), "frequencies");
  std::vector<double> dists;
  if (doc.contains("distances"))
    dists = detail::as_number_list(doc["distances"], "distances");

  Coordinates coords(std::move(dirs), std::move(freqs), std::move(dists));
  require_increasing(coords);

  const bool has_dists = !coords.dists().empty();
  const auto& jvals = detail::require_key(doc, "values");
  if (!jvals.is_array() || jvals.size() != coords.dir_count())
    fail(ErrorKind::shape, "values must hold one row per direction");
  std::vector<double> values;
  values.reserve(coords.dir_count() * coords.freq_count() * coords.dist_count());
  for (const auto& jrow : jvals) {
    if (!jrow.is_array() || jrow.size() != coords.freq_count())
      fail(ErrorKind::shape, "each values row must hold one entry per frequency");
    for (const auto& jcell : jrow) {
      if (has_dists) {
        if (!jcell.is_array() || jcell.size() != coords.dist_count())
          fail(ErrorKind::shape,
               "each values cell must hold one entry per distance");
        for (const auto& jv : jcell)
          values.push_back(detail::as_number(jv, "value"));
      } else {
        values.push_back(detail::as_number(jcell, "value"));
      }
    }
  }
  DataGrid grid(coords.dir_count(), coords.freq_count(), coords.dist_count(),
                std::move(values));
  return RawDirectivity(info, std::move(coords), std::move(grid));
}

// ---------------------------------------------------------------------------
// CSV ingest
// ---------------------------------------------------------------------------

/// One sample per row under the header az_deg,el_deg,freq_hz,mag_db (with an
/// optional dist_m column before mag_db). Rows must cover a complete
/// Cartesian grid of the distinct directions, frequencies and distances; row
/// order is irrelevant. Directions order canonically by (azimuth, elevation),
/// frequencies and distances ascending.
inline RawDirectivity read_csv(std::string_view bytes) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= bytes.size()) {
    std::size_t nl = bytes.find('\n', start);
    if (nl == std::string_view::npos) nl = bytes.size();
    std::string_view line = bytes.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) fail(ErrorKind::parse, "empty CSV document");

  bool has_dist_col = false;
  if (lines[0] == "az_deg,el_deg,freq_hz,mag_db")
    has_dist_col = false;
  else if (lines[0] == "az_deg,el_deg,freq_hz,dist_m,mag_db")
    has_dist_col = true;
  else
    fail(ErrorKind::parse, "line 1: unrecognized CSV header");

  struct Cell {
    double az, el, freq, dist, value;
  };
  std::vector<Cell> cells;
  cells.reserve(lines.size() - 1);
  const std::size_t n_fields = has_dist_col ? 5 : 4;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    std::string_view line = lines[ln];
    const std::string where = "line " + std::to_string(ln + 1) + ": ";
    if (line.empty()) fail(ErrorKind::parse, where + "empty row");
    double fields[5] = {0, 0, 0, 0, 0};
    std::size_t field = 0, pos = 0;
    while (true) {
      std::size_t comma = line.find(',', pos);
      std::string_view tok = line.substr(
          pos, comma == std::string_view::npos ? line.size() - pos : comma - pos);
      if (field >= n_fields)
        fail(ErrorKind::parse, where + "too many fields");
      const auto v = detail::parse_double(tok);
      if (!v) fail(ErrorKind::parse, where + "malformed number \"" +
                                         std::string(tok) + '"');
      fields[field++] = *v;
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (field != n_fields) fail(ErrorKind::parse, where + "too few fields");
    Cell cell{};
    cell.az = fields[0];
    cell.el = fields[1];
    cell.freq = fields[2];
    cell.dist = has_dist_col ? fields[3] : 1.0;
    cell.value = fields[has_dist_col ? 4 : 3];
    if (!(cell.az >= 0.0) || !(cell.az < 360.0))
      fail(ErrorKind::domain,
           where + "azimuth " + detail::format_double(cell.az) + " outside [0, 360)");
    if (!(cell.el >= -90.0) || !(cell.el <= 90.0))
      fail(ErrorKind::domain, where + "elevation " +
                                  detail::format_double(cell.el) +
                                  " outside [-90, 90]");
    cells.push_back(cell);
  }
  if (cells.empty()) fail(ErrorKind::parse, "CSV document has no data rows");

  std::map<std::pair<double, double>, std::size_t> dir_index;
  std::map<double, std::size_t> freq_index;
  std::map<double, std::size_t> dist_index;
  for (const Cell& c : cells) {
    dir_index.emplace(std::make_pair(c.az, c.el), 0);
    freq_index.emplace(c.freq, 0);
    dist_index.emplace(c.dist, 0);
  }
  std::size_t n = 0;
  for (auto& [k, v] : dir_index) v = n++;
  n = 0;
  for (auto& [k, v] : freq_index) v = n++;
  n = 0;
  for (auto& [k, v] : dist_index) v = n++;

  const std::size_t nd = dir_index.size();
  const std::size_t nf = freq_index.size();
  const std::size_t nk = dist_index.size();
  if (cells.size() != nd * nf * nk)
    fail(ErrorKind::non_grid,
         "rows do not cover the full " + std::to_string(nd) + "x" +
             std::to_string(nf) + "x" + std::to_string(nk) + " grid (" +
             std::to_string(cells.size()) + " rows)");

  std::vector<double> values(nd * nf * nk);
  std::vector<bool> seen(nd * nf * nk, false);
  for (const Cell& c : cells) {
    const std::size_t i = dir_index[{c.az, c.el}];
    const std::size_t j = freq_index[c.freq];
    const std::size_t k = dist_index[c.dist];
    const std::size_t flat = (i * nf + j) * nk + k;
    if (seen[flat])
      fail(ErrorKind::duplicate, "duplicate sample at azimuth " +
                                     detail::format_double(c.az) + ", elevation " +
                                     detail::format_double(c.el) + ", frequency " +
                                     detail::format_double(c.freq));
    seen[flat] = true;
    values[flat] = c.value;
  }
  // seen is all-true here: counts match and every cell is distinct.

  std::vector<Direction> dirs(nd, Direction(0, 0));
  for (const auto& [key, i] : dir_index) dirs[i] = Direction(key.first, key.second);
  std::vector<double> freqs(nf);
  for (const auto& [key, j] : freq_index) freqs[j] = key;
  std::vector<double> dists;
  if (!(nk == 1 && dist_index.begin()->first == 1.0 && !has_dist_col)) {
    dists.resize(nk);
    for (const auto& [key, k] : dist_index) dists[k] = key;
  }

  Coordinates coords(std::move(dirs), std::move(freqs), std::move(dists));
  DataGrid grid(nd, nf, nk, std::move(values));
  return RawDirectivity("", std::move(coords), std::move(grid));
}

// ---------------------------------------------------------------------------
// Model documents
// ---------------------------------------------------------------------------

inline std::string write_model(const ShModel& model) {
  const Coordinates& c = model.coords();
  const bool has_dists = !c.dists().empty();
  std::string out;
  out += "{\n  \"format\": \"";
  out += kModelFormatTag;
  out += "\",\n  \"version\": ";
  out += std::to_string(kFormatVersion);
  out += ",\n  \"kind\": \"sh\",\n  \"info\": ";
  detail::append_quoted(out, model.info());
  out += ",\n  \"convention\": \"";
  out += kShConvention;
  out += "\",\n  \"lmax\": ";
  out += std::to_string(model.lmax());
  out += ",\n  \"mmax\": ";
  out += std::to_string(model.mmax());
  out += ",\n  \"min_elev\": ";
  out += detail::format_double(model.min_elev_deg());
  out += ",\n  \"frequencies\": ";
  detail::append_number_list(out, c.freqs());
  if (has_dists) {
    out += ",\n  \"distances\": ";
    detail::append_number_list(out, c.dists());
  }
  out += ",\n  \"coeffs\": [";
  const Eigen::MatrixXd& coeffs = model.coeffs();
  for (Eigen::Index b = 0; b < coeffs.rows(); ++b) {
    if (b) out += ',';
    out += "\n    [";
    for (std::size_t j = 0; j < c.freq_count(); ++j) {
      if (j) out += ',';
      if (has_dists) {
        out += '[';
        for (std::size_t k = 0; k < c.dist_count(); ++k) {
          if (k) out += ',';
          out += detail::format_double(
              coeffs(b, static_cast<Eigen::Index>(j * c.dist_count() + k)));
        }
        out += ']';
      } else {
        out += detail::format_double(coeffs(b, static_cast<Eigen::Index>(j)));
      }
    }
    out += ']';
  }
  out += "\n  ]\n}\n";
  return out;
}

inline std::string write_model(const HshModel& model) {
  const bool has_dists = !model.dists().empty();
  const std::size_t nk = has_dists ? model.dists().size() : 1;
  std::string out;
  out += "{\n  \"format\": \"";
  out += kModelFormatTag;
  out += "\",\n  \"version\": ";
  out += std::to_string(kFormatVersion);
  out += ",\n  \"kind\": \"hsh\",\n  \"info\": ";
  detail::append_quoted(out, model.info());
  out += ",\n  \"convention\": \"";
  out += kShConvention;
  out += "\",\n  \"freq_mapping\": \"";
  out += kFreqMappingLinear;
  out += "\",\n  \"nmax\": ";
  out += std::to_string(model.nmax());
  out += ",\n  \"mmax\": ";
  out += std::to_string(model.mmax());
  out += ",\n  \"max_freq\": ";
  out += detail::format_double(model.max_freq());
  out += ",\n  \"min_elev\": ";
  out += detail::format_double(model.min_elev_deg());
  if (has_dists) {
    out += ",\n  \"distances\": ";
    detail::append_number_list(out, model.dists());
  }
  out += ",\n  \"coeffs\": [";
  const Eigen::MatrixXd& coeffs = model.coeffs();
  for (Eigen::Index b = 0; b < coeffs.rows(); ++b) {
    if (b) out += ',';
    out += "\n    ";
    if (has_dists) {
      out += '[';
      for (std::size_t k = 0; k < nk; ++k) {
        if (k) out += ',';
        out += detail::format_double(coeffs(b, static_cast<Eigen::Index>(k)));
      }
      out += ']';
    } else {
      out += detail::format_double(coeffs(b, 0));
    }
  }
  out += "\n  ]\n}\n";
  return out;
}

namespace detail {

inline ShModel read_sh_model(const nlohmann::json& doc) {
  reject_unknown_keys(doc, {"format", "version", "kind", "info", "convention",
                            "lmax", "mmax", "min_elev", "frequencies",
                            "distances", "coeffs"});
  const std::string info = as_string(require_key(doc, "info"), "info");
  const int lmax = as_int(require_key(doc, "lmax"), "lmax");
  const int mmax = as_int(require_key(doc, "mmax"), "mmax");
  const double min_elev = as_number(require_key(doc, "min_elev"), "min_elev");
  std::vector<double> freqs =
      as_number_list(require_key(doc, "frequencies"), "frequencies");
  std::vector<double> dists;
  if (doc.contains("distances"))
    dists = as_number_list(doc["distances"], "distances");
  Coordinates coords({}, std::move(freqs), std::move(dists));
  require_increasing(coords);
  const bool has_dists = !coords.dists().empty();

  const int nb = sh_basis_count(lmax, mmax);
  const auto& jc = require_key(doc, "coeffs");
  if (!jc.is_array() || static_cast<int>(jc.size()) != nb)
    fail(ErrorKind::shape, "coeffs must hold " + std::to_string(nb) +
                               " rows for lmax " + std::to_string(lmax) +
                               ", mmax " + std::to_string(mmax));
  Eigen::MatrixXd coeffs(
      nb, static_cast<Eigen::Index>(coords.freq_count() * coords.dist_count()));
  for (int b = 0; b < nb; ++b) {
    const auto& jrow = jc[static_cast<std::size_t>(b)];
    if (!jrow.is_array() || jrow.size() != coords.freq_count())
      fail(ErrorKind::shape, "each coeffs row must hold one entry per frequency");
    for (std::size_t j = 0; j < coords.freq_count(); ++j) {
      const auto& jcell = jrow[j];
      if (has_dists) {
        if (!jcell.is_array() || jcell.size() != coords.dist_count())
          fail(ErrorKind::shape,
               "each coeffs cell must hold one entry per distance");
        for (std::size_t k = 0; k < coords.dist_count(); ++k)
          coeffs(b, static_cast<Eigen::Index>(j * coords.dist_count() + k)) =
              as_number(jcell[k], "coefficient");
      } else {
        coeffs(b, static_cast<Eigen::Index>(j)) = as_number(jcell, "coefficient");
      }
    }
  }
  return ShModel(info, lmax, mmax, min_elev, std::move(coords), std::move(coeffs));
}

inline HshModel read_hsh_model(const nlohmann::json& doc) {
  reject_unknown_keys(doc, {"format", "version", "kind", "info", "convention",
                            "freq_mapping", "nmax", "mmax", "max_freq",
                            "min_elev", "distances", "coeffs"});
  const std::string mapping =
      as_string(require_key(doc, "freq_mapping"), "freq_mapping");
  if (mapping != kFreqMappingLinear)
    fail(ErrorKind::format, "unknown freq_mapping \"" + mapping + '"');
  const std::string info = as_string(require_key(doc, "info"), "info");
  const int nmax = as_int(require_key(doc, "nmax"), "nmax");
  const int mmax = as_int(require_key(doc, "mmax"), "mmax");
  const double max_freq = as_number(require_key(doc, "max_freq"), "max_freq");
  const double min_elev = as_number(require_key(doc, "min_elev"), "min_elev");
  std::vector<double> dists;
  if (doc.contains("distances"))
    dists = as_number_list(doc["distances"], "distances");
  const std::size_t nk = dists.empty() ? 1 : dists.size();
  const bool has_dists = !dists.empty();

  const int nb = hsh_basis_count(nmax, mmax);
  const auto& jc = require_key(doc, "coeffs");
  if (!jc.is_array() || static_cast<int>(jc.size()) != nb)
    fail(ErrorKind::shape, "coeffs must hold " + std::to_string(nb) +
                               " rows for nmax " + std::to_string(nmax) +
                               ", mmax " + std::to_string(mmax));
  Eigen::MatrixXd coeffs(nb, static_cast<Eigen::Index>(nk));
  for (int b = 0; b < nb; ++b) {
    const auto& jrow = jc[static_cast<std::size_t>(b)];
    if (has_dists) {
      if (!jrow.is_array() || jrow.size() != nk)
        fail(ErrorKind::shape, "each coeffs row must hold one entry per distance");
      for (std::size_t k = 0; k < nk; ++k)
        coeffs(b, static_cast<Eigen::Index>(k)) =
            as_number(jrow[k], "coefficient");
    } else {
      coeffs(b, 0) = as_number(jrow, "coefficient");
    }
  }
  return HshModel(info, nmax, mmax, max_freq, min_elev, std::move(dists),
                  std::move(coeffs));
}

}  // namespace detail

using AnyModel = std::variant<ShModel, HshModel>;

inline AnyModel read_model(std::string_view bytes) {
  const nlohmann::json doc = detail::parse_json(bytes);
  detail::check_header(doc, kModelFormatTag);
  const std::string convention = detail::as_string(
      detail::require_key(doc, "convention"), "convention");
  if (convention != kShConvention)
    fail(ErrorKind::format, "unknown convention \"" + convention + '"');
  const std::string kind =
      detail::as_string(detail::require_key(doc, "kind"), "kind");
  if (kind == "sh") return detail::read_sh_model(doc);
  if (kind == "hsh") return detail::read_hsh_model(doc);
  fail(ErrorKind::format, "unknown model kind \"" + kind + '"');
}

/// Reads either document format, dispatching on the format tag.
inline Document read_document(std::string_view bytes) {
  const nlohmann::json doc = detail::parse_json(bytes);
  if (!doc.is_object()) fail(ErrorKind::parse, "document must be a JSON object");
  const std::string tag =
      detail::as_string(detail::require_key(doc, "format"), "format");
  if (tag == kDifFormatTag) return read_dif(bytes);
  if (tag == kModelFormatTag)
    return std::visit([](auto&& m) -> Document { return std::move(m); },
                      read_model(bytes));
  fail(ErrorKind::format, "unknown format tag \"" + tag + '"');
}

}  // namespace oodir
