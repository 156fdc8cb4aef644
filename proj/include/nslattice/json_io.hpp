#pragma once

// JSON readers and writers for the exchange formats:
//   lattice  {"k": int, "a": int, "kappa": int, "l": int}
//   class    [X_0, ..., X_l]
//   form     {"nvars": int, "degree": int, "terms": [[[exponents...], coeff], ...]}
//   matrix   [[row 0], [row 1], ...]
//   map      {"k": int, "comps": [[int, ...], ...]}
//   poly     [c_0, c_1, ..., c_n]
// Integers too large for int64 are written as decimal strings; readers accept both.

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "nslattice/cremona.hpp"
#include "nslattice/forms.hpp"
#include "nslattice/integer.hpp"
#include "nslattice/lattice.hpp"
#include "nslattice/matrix.hpp"
#include "nslattice/spectral.hpp"

namespace nslattice::io {

using json = nlohmann::json;

inline json integer_to_json(const Integer& z) {
  if (fits_int64(z)) return json(static_cast<std::int64_t>(z.get_si()));
  return json(z.get_str());
}

inline Integer integer_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw ValidationError(where + ": not a decimal integer");
    return z;
  }
  throw ValidationError(where + ": expected integer");
}

inline long small_int_from_json(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ValidationError(where + ": expected integer");
  return static_cast<long>(j.get<std::int64_t>());
}

inline const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + ": expected object");
  auto it = obj.find(name);
  if (it == obj.end()) throw ValidationError(where + ": missing field '" + name + "'");
  return *it;
}

inline std::string sub(const std::string& where, const std::string& name) {
  return where.empty() ? name : where + "." + name;
}

inline std::string idx(const std::string& where, std::size_t i) {
  return where + "[" + std::to_string(i) + "]";
}

inline const json& array(const json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + ": expected array");
  return j;
}

// lattice

inline json to_json(const BlowupLattice& lat) {
  return json{{"k", lat.k}, {"a", integer_to_json(lat.a)}, {"kappa", integer_to_json(lat.kappa)}, {"l", lat.l}};
}

inline BlowupLattice lattice_from_json(const json& j, const std::string& where = "lattice") {
  long k = small_int_from_json(field(j, "k", where), sub(where, "k"));
  Integer a = integer_from_json(field(j, "a", where), sub(where, "a"));
  Integer kappa = integer_from_json(field(j, "kappa", where), sub(where, "kappa"));
  long l = small_int_from_json(field(j, "l", where), sub(where, "l"));
  if (k < 2 || k > 64) throw ValidationError(sub(where, "k") + ": must lie in [2, 64]");
  if (l < 0 || l > 4096) throw ValidationError(sub(where, "l") + ": must lie in [0, 4096]");
  if (a == 0) throw ValidationError(sub(where, "a") + ": must be nonzero");
  return BlowupLattice(static_cast<int>(k), a, kappa, static_cast<int>(l));
}

// classes

inline json to_json(const NSClass& u) {
  json arr = json::array();
  for (const auto& x : u.coords) arr.push_back(integer_to_json(x));
  return arr;
}

inline NSClass class_from_json(const json& j, const std::string& where = "class") {
  array(j, where);
  NSClass u;
  for (std::size_t i = 0; i < j.size(); ++i) u.coords.push_back(integer_from_json(j[i], idx(where, i)));
  return u;
}

// forms

inline json to_json(const SymmetricForm& f) {
  json terms = json::array();
  for (const auto& t : f.terms()) terms.push_back(json::array({t.exps, integer_to_json(t.coeff)}));
  return json{{"nvars", f.nvars()}, {"degree", f.degree()}, {"terms", terms}};
}

inline SymmetricForm form_from_json(const json& j, const std::string& where = "form") {
  long nvars = small_int_from_json(field(j, "nvars", where), sub(where, "nvars"));
  long degree = small_int_from_json(field(j, "degree", where), sub(where, "degree"));
  if (nvars < 1 || nvars > 4096) throw ValidationError(sub(where, "nvars") + ": out of range");
  if (degree < 0 || degree > 4096) throw ValidationError(sub(where, "degree") + ": out of range");
  const json& terms = array(field(j, "terms", where), sub(where, "terms"));
  SymmetricForm f(static_cast<int>(nvars), static_cast<int>(degree));
  std::vector<std::vector<int>> seen;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::string w = idx(sub(where, "terms"), i);
    const json& t = array(terms[i], w);
    if (t.size() != 2) throw ValidationError(w + ": expected [exponents, coeff]");
    const json& e = array(t[0], w + "[0]");
    std::vector<int> exps;
    for (std::size_t s = 0; s < e.size(); ++s) exps.push_back(static_cast<int>(small_int_from_json(e[s], idx(w + "[0]", s))));
    Integer c = integer_from_json(t[1], w + "[1]");
    if (c == 0) throw ValidationError(w + ": zero coefficient");
    if (std::find(seen.begin(), seen.end(), exps) != seen.end()) throw ValidationError(w + ": duplicate exponent vector");
    seen.push_back(exps);
    try {
      f.add(exps, c);
    } catch (const ValidationError& err) {
      throw ValidationError(w + ": " + err.what());
    }
  }
  return f;
}

// matrices

inline json to_json(const IntegerMatrix& m) {
  json rows = json::array();
  for (const auto& r : m.rows()) {
    json row = json::array();
    for (const auto& x : r) row.push_back(integer_to_json(x));
    rows.push_back(row);
  }
  return rows;
}

inline IntegerMatrix matrix_from_json(const json& j, const std::string& where = "matrix") {
  array(j, where);
  std::vector<std::vector<Integer>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& r = array(j[i], idx(where, i));
    if (r.size() != j.size()) throw ValidationError(idx(where, i) + ": matrix must be square");
    rows.emplace_back();
    for (std::size_t c = 0; c < r.size(); ++c) rows.back().push_back(integer_from_json(r[c], idx(idx(where, i), c)));
  }
  return IntegerMatrix::from_rows(rows);
}

// monomial maps

inline json to_json(const MonomialMap& f) { return json{{"k", f.k()}, {"comps", f.components()}}; }

inline MonomialMap map_from_json(const json& j, const std::string& where = "map") {
  long k = small_int_from_json(field(j, "k", where), sub(where, "k"));
  if (k < 1 || k > 62) throw ValidationError(sub(where, "k") + ": must lie in [1, 62]");
  const json& comps = array(field(j, "comps", where), sub(where, "comps"));
  std::vector<ExponentRow> rows;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const json& r = array(comps[i], idx(sub(where, "comps"), i));
    rows.emplace_back();
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (!r[c].is_number_integer())
        throw ValidationError(idx(idx(sub(where, "comps"), i), c) + ": expected integer");
      rows.back().push_back(r[c].get<std::int64_t>());
    }
  }
  try {
    return MonomialMap::normalize(static_cast<int>(k), std::move(rows));
  } catch (const ValidationError& err) {
    throw ValidationError(where + ": " + err.what());
  }
}

// polynomials

inline json to_json(const IntPoly& p) {
  json arr = json::array();
  for (const auto& c : p.coeffs()) arr.push_back(integer_to_json(c));
  return arr;
}

inline IntPoly poly_from_json(const json& j, const std::string& where = "poly") {
  array(j, where);
  std::vector<Integer> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(integer_from_json(j[i], idx(where, i)));
  return IntPoly(std::move(c));
}

inline json rational_to_json(const Rational& q) { return json(q.get_str()); }

/// Parses a document, turning syntax errors into line/column diagnostics.
inline json parse_document(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream msg;
    msg << source << ":" << line << ":" << col << ": malformed JSON";
    throw ValidationError(msg.str());
  }
}

}  // namespace nslattice::io
