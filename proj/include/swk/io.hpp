#pragma once

/// JSON encoding of rings, ring elements, weights, tables, Hecke elements and
/// module matrices. Every integer that may exceed 64 bits is written as a
/// decimal string. Symbolic elements are objects mapping the comma-joined
/// exponent vector over (v, c1, .., cn) to a coefficient string; prime-field
/// elements are decimal strings.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "swk/affperm.hpp"
#include "swk/errors.hpp"
#include "swk/hecke.hpp"
#include "swk/laurent.hpp"
#include "swk/ring.hpp"
#include "swk/unramified.hpp"
#include "swk/whittaker.hpp"

namespace swk::io {

using Json = nlohmann::ordered_json;

inline Integer parse_integer(const Json& j, const std::string& what) {
  try {
    if (j.is_string()) {
      std::string s = j.get<std::string>();
      if (s.empty()) throw InputError(what + ": empty integer string");
      if (s.front() == '+') s.erase(0, 1);
      return Integer(s, 10);
    }
    if (j.is_number_integer()) return Integer(j.dump(), 10);
  } catch (const std::invalid_argument&) {
  }
  throw InputError(what + ": expected a decimal integer, got " + j.dump());
}

inline int parse_int(const Json& j, const std::string& what) {
  const Integer v = parse_integer(j, what);
  if (!v.fits_sint_p()) throw InputError(what + ": integer out of range");
  return static_cast<int>(v.get_si());
}

inline const Json& field(const Json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw InputError("missing field '" + key + "'");
  return j.at(key);
}

inline std::vector<int> parse_int_list(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": expected an array");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(parse_int(x, what));
  return out;
}

inline Json int_list(const std::vector<int>& v) {
  Json out = Json::array();
  for (int x : v) out.push_back(x);
  return out;
}

// ---- rings -----------------------------------------------------------------

inline RingDescriptor parse_ring(const Json& j) {
  RingDescriptor d;
  const std::string kind = field(j, "kind").is_string() ? field(j, "kind").get<std::string>() : "";
  d.n = parse_int(field(j, "n"), "ring.n");
  if (d.n < 1) throw InputError("ring.n must be positive");
  if (kind == "symbolic") {
    d.kind = RingDescriptor::Kind::symbolic;
    return d;
  }
  if (kind != "prime-field") throw InputError("ring.kind must be 'symbolic' or 'prime-field'");
  d.kind = RingDescriptor::Kind::prime_field;
  const Integer ell = parse_integer(field(j, "ell"), "ring.ell");
  if (ell < 2 || !ell.fits_ulong_p() || ell >= (Integer(1) << 62)) throw InputError("ring.ell must be a prime below 2^62");
  d.ell = ell.get_ui();
  d.q = parse_integer(field(j, "q"), "ring.q");
  if (j.contains("sqrt_q") && !j.at("sqrt_q").is_null()) d.sqrt_q = parse_integer(j.at("sqrt_q"), "ring.sqrt_q");
  const Json& c = field(j, "c");
  if (!c.is_array()) throw InputError("ring.c must be an array");
  for (const auto& x : c) d.c.push_back(parse_integer(x, "ring.c"));
  return d;
}

inline Json encode_ring(const RingDescriptor& d) {
  Json out;
  if (d.kind == RingDescriptor::Kind::symbolic) {
    out["kind"] = "symbolic";
    out["n"] = d.n;
    return out;
  }
  out["kind"] = "prime-field";
  out["n"] = d.n;
  out["ell"] = std::to_string(d.ell);
  out["q"] = d.q.get_str();
  if (d.sqrt_q) out["sqrt_q"] = d.sqrt_q->get_str();
  Json c = Json::array();
  for (const auto& x : d.c) c.push_back(x.get_str());
  out["c"] = c;
  return out;
}

// ---- elements --------------------------------------------------------------

inline Json encode_elem(const SymbolicRing&, const SymElem& a) {
  Json out = Json::object();
  for (const auto& [e, c] : a.terms()) {
    std::string key;
    for (std::size_t i = 0; i < e.size(); ++i) key += (i ? "," : "") + std::to_string(e[i]);
    out[key] = c.get_str();
  }
  return out;
}

inline Json encode_elem(const PrimeField&, const Fp& a) { return std::to_string(a.value()); }

/// Accepts the exponent-map form, or a decimal string / integer for a
/// constant.
inline SymElem decode_elem(const SymbolicRing& ring, const Json& j) {
  if (j.is_string() || j.is_number_integer()) return ring.from_integer(parse_integer(j, "element"));
  if (!j.is_object()) throw InputError("symbolic element must be an object or integer string");
  SymElem out = ring.zero();
  const std::size_t width = static_cast<std::size_t>(ring.n()) + 1;
  for (const auto& [key, value] : j.items()) {
    Exponent e;
    std::size_t start = 0;
    while (start <= key.size()) {
      const std::size_t comma = std::min(key.find(',', start), key.size());
      try {
        std::size_t used = 0;
        const std::string part = key.substr(start, comma - start);
        e.push_back(std::stoi(part, &used));
        if (used != part.size()) throw std::invalid_argument(part);
      } catch (const std::exception&) {
        throw InputError("bad exponent key '" + key + "'");
      }
      start = comma + 1;
    }
    if (e.size() != width) throw InputError("exponent key '" + key + "' needs " + std::to_string(width) + " entries");
    for (std::size_t k = 1; k + 1 < width; ++k)
      if (e[k] < 0) throw InputError("negative power of c" + std::to_string(k) + " is not in the ring");
    out.add_term(e, parse_integer(value, "coefficient"));
  }
  return out;
}

inline Fp decode_elem(const PrimeField& ring, const Json& j) { return ring.from_integer(parse_integer(j, "element")); }

template <class R>
std::vector<typename R::Elem> decode_vector(const R& ring, const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of ring elements");
  std::vector<typename R::Elem> out;
  for (const auto& x : j) out.push_back(decode_elem(ring, x));
  return out;
}

// ---- Whittaker tables ------------------------------------------------------

template <CoeffRing R>
Json encode_table(const WhittakerTable<R>& t) {
  Json entries = Json::array();
  for (const auto& [mu, value] : t.entries()) {
    Json e;
    e["weight"] = int_list(mu);
    e["value"] = encode_elem(t.character().ring(), value);
    entries.push_back(e);
  }
  return entries;
}

// ---- Hecke elements --------------------------------------------------------

template <class R>
Json encode_poly(const R& ring, const LaurentPoly<typename R::Elem>& f) {
  Json out = Json::array();
  for (const auto& [e, c] : f.terms()) {
    Json t;
    t["exp"] = int_list(e);
    t["coeff"] = encode_elem(ring, c);
    out.push_back(t);
  }
  return out;
}

template <class R>
LaurentPoly<typename R::Elem> decode_poly(const R& ring, const Variables& vars, const Json& j) {
  if (!j.is_array()) throw InputError("polynomial must be an array of {exp, coeff} terms");
  LaurentPoly<typename R::Elem> out(vars);
  for (const auto& t : j) {
    const auto e = parse_int_list(field(t, "exp"), "exp");
    if (e.size() != vars.size()) throw DimensionError("exponent length differs from rank");
    out.add_term(e, decode_elem(ring, field(t, "coeff")));
  }
  return out;
}

template <CoeffRing R>
Json encode_im(const R& ring, const HeckeIM<typename R::Elem>& a) {
  Json terms = Json::array();
  for (const auto& [w, c] : a.terms()) {
    Json t;
    t["window"] = int_list(w.window());
    t["coeff"] = encode_elem(ring, c);
    terms.push_back(t);
  }
  Json out;
  out["basis"] = "im";
  out["terms"] = terms;
  return out;
}

template <CoeffRing R>
Json encode_bern(const R& ring, const HeckeB<typename R::Elem>& a) {
  Json terms = Json::array();
  for (const auto& [sigma, f] : a.terms()) {
    Json t;
    t["perm"] = int_list(sigma.window());
    t["poly"] = encode_poly(ring, f);
    terms.push_back(t);
  }
  Json out;
  out["basis"] = "bernstein";
  out["terms"] = terms;
  return out;
}

template <CoeffRing R>
HeckeIM<typename R::Elem> decode_im(const AffineHecke<R>& h, const Json& j) {
  HeckeIM<typename R::Elem> out(h.n());
  for (const auto& t : field(j, "terms")) {
    const auto window = parse_int_list(field(t, "window"), "window");
    if (static_cast<int>(window.size()) != h.n()) throw DimensionError("window length differs from rank");
    out.add_term(ExtAffPerm(window), decode_elem(h.ring(), field(t, "coeff")));
  }
  return out;
}

template <CoeffRing R>
HeckeB<typename R::Elem> decode_bern(const AffineHecke<R>& h, const Json& j) {
  HeckeB<typename R::Elem> out = h.bern_zero();
  for (const auto& t : field(j, "terms")) {
    const auto perm = parse_int_list(field(t, "perm"), "perm");
    if (static_cast<int>(perm.size()) != h.n()) throw DimensionError("permutation length differs from rank");
    out.add_term(ExtAffPerm::finite(perm), decode_poly(h.ring(), h.variables(), field(t, "poly")));
  }
  return out;
}

inline std::string element_basis(const Json& j) {
  const Json& b = field(j, "basis");
  const std::string s = b.is_string() ? b.get<std::string>() : "";
  if (s != "im" && s != "bernstein") throw InputError("element basis must be 'im' or 'bernstein'");
  return s;
}

// ---- matrices --------------------------------------------------------------

template <class R>
Json encode_matrix(const R& ring, const Matrix<typename R::Elem>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(encode_elem(ring, m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

template <class R>
Json encode_matrices(const R& ring, const std::vector<Matrix<typename R::Elem>>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(encode_matrix(ring, m));
  return out;
}

}  // namespace swk::io
