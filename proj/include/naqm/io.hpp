#pragma once

// File formats and deterministic serialization.
//
// Algebra files (JSON):
//   {
//     "dim": n,
//     "unit_index": u,                  // or "unit_vector": [[re,im], ...]
//     "labels": ["e0", ...],            // optional
//     "structure_constants": [[mu,nu,rho,re,im], ...],   // sparse; omitted = 0
//     "star": {"matrix": [[[re,im], ...], ...]},         // n rows of n pairs
//     "trace": [[re,im], ...]           // optional covector
//   }
//
// Words (weighted generator strings):
//   [ [ {"gen":"L"|"R", "index":mu, "weight":[re,im]}, ... ], ... ]
// where a term's weight is the product of its factors' weights (weight
// defaults to 1), and the factors compose left to right.
//
// Parsing goes through the vendored nlohmann header; emission goes through a
// small canonical writer: insertion-ordered keys and %.12g floats, so that
// identical inputs produce byte-identical outputs.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "naqm/dynamics.hpp"
#include "naqm/instances.hpp"

namespace naqm {

// --- canonical JSON emission -------------------------------------------------

class JsonValue {
 public:
  enum class Type { null, boolean, integer, number, string, array, object };
  Type type = Type::null;
  bool b = false;
  long long i = 0;
  double num = 0.0;
  std::string str;
  std::vector<JsonValue> arr;
  std::vector<std::pair<std::string, JsonValue>> obj;

  static JsonValue boolean(bool v) { JsonValue j; j.type = Type::boolean; j.b = v; return j; }
  static JsonValue integer(long long v) { JsonValue j; j.type = Type::integer; j.i = v; return j; }
  static JsonValue number(double v) { JsonValue j; j.type = Type::number; j.num = v; return j; }
  static JsonValue string(std::string v) {
    JsonValue j; j.type = Type::string; j.str = std::move(v); return j;
  }
  static JsonValue array() { JsonValue j; j.type = Type::array; return j; }
  static JsonValue object() { JsonValue j; j.type = Type::object; return j; }

  JsonValue& push(JsonValue v) {
    arr.push_back(std::move(v));
    return arr.back();
  }
  JsonValue& set(const std::string& key, JsonValue v) {
    obj.emplace_back(key, std::move(v));
    return obj.back().second;
  }

  static JsonValue complex(const Complex& z) {
    JsonValue j = array();
    j.push(number(z.real()));
    j.push(number(z.imag()));
    return j;
  }
  template <class S>
  static JsonValue complex_s(const S& z) {
    return complex(ScalarTraits<S>::to_complex(z));
  }
  template <class S>
  static JsonValue complex_vec(const Vec<S>& v) {
    JsonValue j = array();
    for (const S& z : v) j.push(complex_s(z));
    return j;
  }

  void dump(std::ostream& os, int indent = 0) const {
    switch (type) {
      case Type::null: os << "null"; break;
      case Type::boolean: os << (b ? "true" : "false"); break;
      case Type::integer: os << i; break;
      case Type::number: os << format_number(num); break;
      case Type::string: os << quoted(str); break;
      case Type::array: {
        if (arr.empty()) { os << "[]"; break; }
        os << "[";
        for (size_t k = 0; k < arr.size(); ++k) {
          if (k) os << ",";
          os << "\n" << std::string(static_cast<size_t>(indent) + 2, ' ');
          arr[k].dump(os, indent + 2);
        }
        os << "\n" << std::string(static_cast<size_t>(indent), ' ') << "]";
        break;
      }
      case Type::object: {
        if (obj.empty()) { os << "{}"; break; }
        os << "{";
        for (size_t k = 0; k < obj.size(); ++k) {
          if (k) os << ",";
          os << "\n" << std::string(static_cast<size_t>(indent) + 2, ' ')
             << quoted(obj[k].first) << ": ";
          obj[k].second.dump(os, indent + 2);
        }
        os << "\n" << std::string(static_cast<size_t>(indent), ' ') << "}";
        break;
      }
    }
  }
  std::string dump_string() const {
    std::ostringstream os;
    dump(os);
    os << "\n";
    return os.str();
  }

  static std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
  }

 private:
  static std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
      }
    }
    out += "\"";
    return out;
  }
};

// --- parsing helpers -----------------------------------------------------------

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // convert the byte offset into a line/column for a friendlier message
    size_t line = 1, col = 1;
    for (size_t k = 0; k < text.size() && k + 1 < e.byte; ++k) {
      if (text[k] == '\n') { ++line; col = 1; } else { ++col; }
    }
    throw ValidationError(path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": " + e.what());
  }
}

template <class S>
S parse_complex_pair(const nlohmann::json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError(what + ": expected a [re, im] pair");
  return ScalarTraits<S>::from_parts(j[0].get<double>(), j[1].get<double>());
}

// --- algebra files ---------------------------------------------------------------

template <class S>
struct LoadedAlgebra {
  AlgebraPtr<S> alg;
  bool has_trace = false;
  TraceFunctional<S> trace;
};

template <class S>
LoadedAlgebra<S> parse_algebra(const nlohmann::json& j, const std::string& what) {
  if (!j.is_object()) throw ValidationError(what + ": expected an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw ValidationError(what + ": missing integer field \"dim\"");
  const int n = j["dim"].get<int>();
  if (n < 1) throw ValidationError(what + ": dim must be >= 1");

  auto A = std::make_shared<AlgebraSpec<S>>();
  A->n = n;
  A->c.assign(static_cast<size_t>(n) * n * n, ScalarTraits<S>::zero());

  if (!j.contains("structure_constants") || !j["structure_constants"].is_array())
    throw ValidationError(what + ": missing array field \"structure_constants\"");
  std::vector<bool> seen(static_cast<size_t>(n) * n * n, false);
  for (const auto& row : j["structure_constants"]) {
    if (!row.is_array() || row.size() != 5)
      throw ValidationError(what + ": structure constant rows are [mu,nu,rho,re,im]");
    int mu = row[0].get<int>(), nu = row[1].get<int>(), rho = row[2].get<int>();
    if (mu < 0 || mu >= n || nu < 0 || nu >= n || rho < 0 || rho >= n)
      throw ValidationError(what + ": structure constant index out of range");
    size_t flat = (static_cast<size_t>(mu) * n + nu) * n + rho;
    if (seen[flat]) throw ValidationError(what + ": duplicate structure constant entry");
    seen[flat] = true;
    A->sc(mu, nu, rho) = ScalarTraits<S>::from_parts(row[3].get<double>(), row[4].get<double>());
  }

  if (!j.contains("star") || !j["star"].is_object() || !j["star"].contains("matrix"))
    throw ValidationError(what + ": missing \"star\": {\"matrix\": ...}");
  const auto& sm = j["star"]["matrix"];
  if (!sm.is_array() || sm.size() != static_cast<size_t>(n))
    throw ValidationError(what + ": star matrix needs n rows");
  A->star_m = Mat<S>(n, n);
  for (int r = 0; r < n; ++r) {
    if (!sm[static_cast<size_t>(r)].is_array() || sm[static_cast<size_t>(r)].size() != static_cast<size_t>(n))
      throw ValidationError(what + ": star matrix rows need n [re,im] pairs");
    for (int c2 = 0; c2 < n; ++c2)
      A->star_m(r, c2) = parse_complex_pair<S>(sm[static_cast<size_t>(r)][static_cast<size_t>(c2)],
                                               what + ": star matrix entry");
  }

  if (j.contains("unit_index")) {
    int u = j["unit_index"].get<int>();
    if (u < 0 || u >= n) throw ValidationError(what + ": unit_index out of range");
    A->unit.assign(static_cast<size_t>(n), ScalarTraits<S>::zero());
    A->unit[static_cast<size_t>(u)] = ScalarTraits<S>::one();
    A->unit_index = u;
  } else if (j.contains("unit_vector")) {
    const auto& uv = j["unit_vector"];
    if (!uv.is_array() || uv.size() != static_cast<size_t>(n))
      throw ValidationError(what + ": unit_vector needs n [re,im] pairs");
    A->unit.clear();
    for (const auto& e : uv) A->unit.push_back(parse_complex_pair<S>(e, what + ": unit_vector"));
  } else {
    throw ValidationError(what + ": need \"unit_index\" or \"unit_vector\"");
  }

  if (j.contains("labels")) {
    const auto& ls = j["labels"];
    if (!ls.is_array() || ls.size() != static_cast<size_t>(n))
      throw ValidationError(what + ": labels must list n strings");
    for (const auto& l : ls) A->labels.push_back(l.get<std::string>());
  }
  if (j.contains("label")) A->label = j["label"].get<std::string>();
  A->finalize();

  LoadedAlgebra<S> out;
  out.alg = A;
  if (j.contains("trace")) {
    const auto& tv = j["trace"];
    if (!tv.is_array() || tv.size() != static_cast<size_t>(n))
      throw ValidationError(what + ": trace needs n [re,im] pairs");
    out.trace.alg = A;
    for (const auto& e : tv) out.trace.t.push_back(parse_complex_pair<S>(e, what + ": trace"));
    out.has_trace = true;
  }
  return out;
}

template <class S>
LoadedAlgebra<S> load_algebra(const std::string& path) {
  return parse_algebra<S>(load_json_file(path), path);
}

template <class S>
JsonValue algebra_to_json(const AlgebraSpec<S>& A, const TraceFunctional<S>* tr = nullptr) {
  JsonValue j = JsonValue::object();
  j.set("dim", JsonValue::integer(A.n));
  if (A.unit_index) {
    j.set("unit_index", JsonValue::integer(*A.unit_index));
  } else {
    j.set("unit_vector", JsonValue::complex_vec(A.unit));
  }
  JsonValue labels = JsonValue::array();
  for (const auto& l : A.labels) labels.push(JsonValue::string(l));
  j.set("labels", std::move(labels));
  JsonValue sc = JsonValue::array();
  for (int mu = 0; mu < A.n; ++mu)
    for (int nu = 0; nu < A.n; ++nu)
      for (int rho = 0; rho < A.n; ++rho) {
        const S& v = A.sc(mu, nu, rho);
        if (is_zero_s(v, 0.0)) continue;
        Complex z = ScalarTraits<S>::to_complex(v);
        JsonValue row = JsonValue::array();
        row.push(JsonValue::integer(mu));
        row.push(JsonValue::integer(nu));
        row.push(JsonValue::integer(rho));
        row.push(JsonValue::number(z.real()));
        row.push(JsonValue::number(z.imag()));
        sc.push(std::move(row));
      }
  j.set("structure_constants", std::move(sc));
  JsonValue star = JsonValue::object();
  JsonValue rows = JsonValue::array();
  for (int r = 0; r < A.n; ++r) {
    JsonValue row = JsonValue::array();
    for (int c2 = 0; c2 < A.n; ++c2) row.push(JsonValue::complex_s(A.star_m(r, c2)));
    rows.push(std::move(row));
  }
  star.set("matrix", std::move(rows));
  j.set("star", std::move(star));
  if (!A.label.empty()) j.set("label", JsonValue::string(A.label));
  if (tr) j.set("trace", JsonValue::complex_vec(tr->t));
  return j;
}

// --- words ------------------------------------------------------------------------

template <class S>
Word<S> parse_word(const nlohmann::json& j, int dim, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + ": a word is an array of terms");
  Word<S> w;
  for (const auto& term : j) {
    if (!term.is_array()) throw ValidationError(what + ": each term is an array of factors");
    WordTerm<S> t{ScalarTraits<S>::one(), {}};
    for (const auto& f : term) {
      if (!f.is_object() || !f.contains("gen") || !f.contains("index"))
        throw ValidationError(what + ": factors are {\"gen\":\"L\"|\"R\",\"index\":mu,\"weight\":[re,im]}");
      std::string g = f["gen"].get<std::string>();
      if (g != "L" && g != "R") throw ValidationError(what + ": gen must be \"L\" or \"R\"");
      int idx = f["index"].get<int>();
      if (idx < 0 || idx >= dim) throw ValidationError(what + ": generator index out of range");
      if (f.contains("weight"))
        t.weight = t.weight * parse_complex_pair<S>(f["weight"], what + ": weight");
      t.factors.push_back({g == "L" ? Gen::L : Gen::R, idx});
    }
    w.push_back(std::move(t));
  }
  if (w.empty()) throw ValidationError(what + ": word has no terms");
  return w;
}

template <class S>
MultOp<S> word_op(const AlgebraPtr<S>& alg, const Word<S>& w) {
  return {alg, evaluate_word(alg, w), w};
}

// --- complex vectors from command line ----------------------------------------------

// "1, -0.5+0.25i, 2i, -i" -> coefficients
inline Vec<Complex> parse_complex_list(const std::string& text) {
  Vec<Complex> out;
  std::string tok;
  std::stringstream ss(text);
  while (std::getline(ss, tok, ',')) {
    // strip blanks
    std::string s;
    for (char c : tok)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ValidationError("empty entry in complex list");
    double re = 0, im = 0;
    size_t pos = 0;
    auto read_num = [&](double& target) {
      size_t start = pos;
      if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
      size_t digits = pos;
      while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) ||
                                s[pos] == '.' || s[pos] == 'e' || s[pos] == 'E' ||
                                ((s[pos] == '+' || s[pos] == '-') &&
                                 (s[pos - 1] == 'e' || s[pos - 1] == 'E'))))
        ++pos;
      bool is_imag = pos < s.size() && s[pos] == 'i';
      std::string numtxt = s.substr(start, pos - start);
      double v;
      if (pos == digits)  // bare "i" or "+i"/"-i"
        v = (numtxt == "-" ? -1.0 : 1.0);
      else
        v = std::stod(numtxt);
      if (is_imag) { ++pos; im += v; } else { target = v; }
      return is_imag;
    };
    try {
      bool first_imag = read_num(re);
      if (pos < s.size()) {
        if (first_imag) throw ValidationError("imaginary part must come last: " + s);
        double dummy = 0;
        bool second_imag = read_num(dummy);
        if (!second_imag || pos != s.size())
          throw ValidationError("expected re+imi form, got: " + s);
      }
    } catch (const std::invalid_argument&) {
      throw ValidationError("cannot parse complex number: " + s);
    }
    out.emplace_back(re, im);
  }
  if (out.empty()) throw ValidationError("empty complex list");
  return out;
}

// --- CSV --------------------------------------------------------------------------

inline std::string csv_row(const std::vector<std::string>& cells) {
  std::string row;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ",";
    row += cells[i];
  }
  row += "\n";
  return row;
}

inline std::string fmt12(double v) { return JsonValue::format_number(v); }

}  // namespace naqm
