// Copyright 2026 The qsde-elim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file model_file.hpp
 * JSON model documents.
 *
 * Two forms are accepted. The builtin form names a shipped fixture:
 *
 *   {"builtin": "duan-kimble", "parameters": {"cutoff": 6}, "study": {...}}
 *
 * The explicit form spells out a scaled family:
 *
 *   {
 *     "name": "...",
 *     "parameters": {"g": 2, "alpha": [0.3, 0.4], "cutoff": 4},
 *     "space": [3, "cutoff+1"],
 *     "channels": 1,
 *     "definitions": {"bd": {"op": "creator", "dim": "cutoff+1"}},
 *     "operators": {"Y": expr, "A": expr, "B": expr, "F": [expr], "G": [expr], "W": [[expr]]},
 *     "p0": {"basis": [4, "2*(cutoff+1)"]}   or   {"matrix": operator expression},
 *     "study": {...}
 *   }
 *
 * Scalars are JSON numbers, [re, im] pairs, or strings evaluated as complex
 * arithmetic over the parameters (+ - * / parentheses, i, sqrt, conj, abs,
 * re, im). Operator expressions are dense matrices (rows of [re, im]),
 * {"ref": name}, or {"op": ...} nodes: identity, zero, annihilator, creator,
 * number, basis_matrix, kron, scale, add, mul, adjoint, funcalc.
 *
 * Parsing is total: any problem raises ParseError and no partial model is
 * returned.
 */
#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsde/convergence.hpp"
#include "qsde/io.hpp"
#include "qsde/models.hpp"

namespace qsde {

using Parameters = std::map<std::string, Complex>;

/// Complex arithmetic over named parameters.
class ScalarExpression {
 public:
  static Complex evaluate(std::string_view text, const Parameters& params) {
    ScalarExpression e(text, params);
    const Complex v = e.parse_sum();
    e.skip_space();
    if (e.pos_ != e.text_.size()) e.fail("unexpected '" + std::string(1, e.text_[e.pos_]) + "'");
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) e.fail("value is not finite");
    return v;
  }

 private:
  ScalarExpression(std::string_view text, const Parameters& params) : text_(text), params_(params) {}

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("expression '" + std::string(text_) + "': " + why);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Complex parse_sum() {
    Complex v = parse_product();
    while (true) {
      if (accept('+')) {
        v += parse_product();
      } else if (accept('-')) {
        v -= parse_product();
      } else {
        return v;
      }
    }
  }

  Complex parse_product() {
    Complex v = parse_unary();
    while (true) {
      if (accept('*')) {
        v *= parse_unary();
      } else if (accept('/')) {
        const Complex d = parse_unary();
        if (d == Complex(0.0)) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  Complex parse_unary() {
    if (accept('-')) return -parse_unary();
    if (accept('+')) return parse_unary();
    return parse_primary();
  }

  Complex parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      const Complex v = parse_sum();
      if (!accept(')')) fail("missing ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      if (accept('(')) {
        const Complex arg = parse_sum();
        if (!accept(')')) fail("missing ')' after " + name + "(");
        if (name == "sqrt") return std::sqrt(arg);
        if (name == "conj") return std::conj(arg);
        if (name == "abs") return std::abs(arg);
        if (name == "re") return arg.real();
        if (name == "im") return arg.imag();
        fail("unknown function '" + name + "'");
      }
      if (name == "i") return kI;
      auto it = params_.find(name);
      if (it == params_.end()) fail("unknown parameter '" + name + "'");
      return it->second;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Complex parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    return detail::parse_real(text_.substr(start, pos_ - start), text_);
  }

  std::string_view text_;
  const Parameters& params_;
  std::size_t pos_ = 0;
};

/// Study settings carried by a model document.
struct StudySettings {
  std::map<std::string, FieldAmplitudes> amplitudes;  // keyed by study kind name or "default"
  std::vector<double> k_schedule{2, 4, 8, 16, 32, 64};
  double t_max = 2.0;
  int grid_points = 64;
  std::vector<int> cutoffs;  // truncation study; empty = derive from the reference dimension
  int probe_dim = 1;
  std::optional<std::string> cutoff_parameter;

  /// Amplitudes for a study kind: the kind's entry, else "default", else vacuum.
  FieldAmplitudes amplitudes_for(const std::string& kind, int channels) const {
    if (auto it = amplitudes.find(kind); it != amplitudes.end()) return it->second;
    if (auto it = amplitudes.find("default"); it != amplitudes.end()) return it->second;
    return FieldAmplitudes::vacuum(channels);
  }
};

struct Model {
  Fixture fixture;
  StudySettings study;
  Json document;  // source, kept for re-parsing with other parameters
};

namespace detail {

inline Complex scalar_from_json(const Json& j, const Parameters& params) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_string()) return ScalarExpression::evaluate(j.get<std::string>(), params);
  if (j.is_array() && j.size() == 2) {
    auto part = [&](const Json& x) {
      const Complex v = scalar_from_json(x, params);
      if (v.imag() != 0.0) throw ParseError("[re, im] components must be real: " + j.dump());
      return v.real();
    };
    return {part(j[0]), part(j[1])};
  }
  throw ParseError("expected a scalar (number, expression string or [re, im]), got " + j.dump());
}

inline double real_from_json(const Json& j, const Parameters& params, const std::string& what) {
  const Complex v = scalar_from_json(j, params);
  if (v.imag() != 0.0) throw ParseError(what + " must be real");
  return v.real();
}

inline int int_from_json(const Json& j, const Parameters& params, const std::string& what) {
  const double v = real_from_json(j, params, what);
  if (v != std::floor(v) || std::abs(v) > 1e6) throw ParseError(what + " must be an integer, got " + format_double(v));
  return static_cast<int>(v);
}

inline const Json& require_key(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing '" + key + "'");
  return obj.at(key);
}

inline void check_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) throw ParseError(where + ": unknown key '" + item.key() + "'");
  }
}

// Evaluates operator expressions, resolving {"ref"} through the definitions table.
class OperatorBuilder {
 public:
  OperatorBuilder(const Parameters& params, const Json& definitions) : params_(params), defs_(definitions) {
    if (!defs_.is_null() && !defs_.is_object()) throw ParseError("'definitions' must be an object");
  }

  Operator build(const Json& node, const std::string& where) {
    if (node.is_array()) {
      Matrix m = matrix_from_json(node);
      if (m.rows() != m.cols()) throw ParseError(where + ": dense operator is not square");
      const int d = static_cast<int>(m.rows());
      return {HilbertSpace::single(d), std::move(m)};
    }
    if (!node.is_object()) throw ParseError(where + ": operator expression must be an array or an object");
    if (node.contains("ref")) {
      check_keys(node, {"ref"}, where);
      return resolve(node.at("ref").get<std::string>(), where);
    }
    const std::string op = require_key(node, "op", where).get<std::string>();
    const std::string at = where + " (" + op + ")";
    auto dim = [&] {
      const int d = int_from_json(require_key(node, "dim", at), params_, at + " dim");
      if (d < 1) throw ParseError(at + ": dim must be >= 1");
      return d;
    };
    auto args = [&] {
      const Json& a = require_key(node, "args", at);
      if (!a.is_array() || a.empty()) throw ParseError(at + ": 'args' must be a non-empty array");
      std::vector<Operator> out;
      for (std::size_t i = 0; i < a.size(); ++i) out.push_back(build(a[i], at + "[" + std::to_string(i) + "]"));
      return out;
    };

    if (op == "identity" || op == "zero") {
      check_keys(node, {"op", "dim"}, at);
      const HilbertSpace sp = HilbertSpace::single(dim());
      return op == "identity" ? Operator::identity(sp) : Operator::zero(sp);
    }
    if (op == "annihilator" || op == "creator" || op == "number") {
      check_keys(node, {"op", "dim"}, at);
      const int d = dim();
      if (d == 1) return Operator::zero(HilbertSpace::single(1));
      const FockToolbox f = fock_toolbox(d - 1);
      return op == "annihilator" ? f.b : op == "creator" ? f.b_dag : f.number;
    }
    if (op == "basis_matrix") {
      check_keys(node, {"op", "dim", "i", "j"}, at);
      const int d = dim();
      const int i = int_from_json(require_key(node, "i", at), params_, at + " i");
      const int j = int_from_json(require_key(node, "j", at), params_, at + " j");
      if (i < 0 || j < 0 || i >= d || j >= d) throw ParseError(at + ": index out of range");
      return basis_matrix(d, i, j);
    }
    if (op == "kron") {
      check_keys(node, {"op", "args"}, at);
      auto xs = args();
      Operator acc = xs.front();
      for (std::size_t i = 1; i < xs.size(); ++i) acc = kron(acc, xs[i]);
      return acc;
    }
    if (op == "add" || op == "mul") {
      check_keys(node, {"op", "args"}, at);
      auto xs = args();
      Matrix acc = xs.front().matrix();
      for (std::size_t i = 1; i < xs.size(); ++i) {
        if (xs[i].dim() != xs.front().dim()) throw ParseError(at + ": operand dimensions differ");
        acc = op == "add" ? Matrix(acc + xs[i].matrix()) : Matrix(acc * xs[i].matrix());
      }
      return {xs.front().space(), std::move(acc)};
    }
    if (op == "scale") {
      check_keys(node, {"op", "c", "arg"}, at);
      const Complex c = scalar_from_json(require_key(node, "c", at), params_);
      return c * build(require_key(node, "arg", at), at);
    }
    if (op == "adjoint") {
      check_keys(node, {"op", "arg"}, at);
      return adjoint(build(require_key(node, "arg", at), at));
    }
    if (op == "funcalc") {
      check_keys(node, {"op", "name", "arg", "theta", "gamma"}, at);
      const std::string name = require_key(node, "name", at).get<std::string>();
      const Operator x = build(require_key(node, "arg", at), at);
      const double theta = real_from_json(require_key(node, "theta", at), params_, at + " theta");
      const double gamma = real_from_json(require_key(node, "gamma", at), params_, at + " gamma");
      try {
        if (name == "mirror_scattering") return mirror_scattering(x, theta, gamma);
        if (name == "mirror_resolvent") return mirror_resolvent(x, theta, gamma);
      } catch (const InvalidArgument& e) {
        throw ParseError(at + ": " + e.what());
      }
      throw ParseError(at + ": unknown function '" + name + "'");
    }
    throw ParseError(where + ": unknown operator node '" + op + "'");
  }

 private:
  Operator resolve(const std::string& name, const std::string& where) {
    if (auto it = cache_.find(name); it != cache_.end()) return it->second;
    if (!defs_.is_object() || !defs_.contains(name)) throw ParseError(where + ": undefined reference '" + name + "'");
    if (!active_.insert(name).second) throw ParseError(where + ": cyclic reference through '" + name + "'");
    Operator x = build(defs_.at(name), "definitions." + name);
    active_.erase(name);
    cache_.emplace(name, x);
    return x;
  }

  const Parameters& params_;
  const Json& defs_;
  std::map<std::string, Operator> cache_;
  std::set<std::string> active_;
};

inline Parameters parse_parameters(const Json& j, const Parameters& overrides) {
  Parameters p;
  if (!j.is_null()) {
    if (!j.is_object()) throw ParseError("'parameters' must be an object");
    for (const auto& item : j.items()) {
      if (item.key() == "i" || item.key().empty()) throw ParseError("invalid parameter name '" + item.key() + "'");
      p[item.key()] = scalar_from_json(item.value(), {});
    }
  }
  for (const auto& [key, value] : overrides) {
    if (!p.count(key)) throw ParseError("cannot override unknown parameter '" + key + "'");
    p[key] = value;
  }
  return p;
}

inline FieldAmplitudes amplitudes_from_json(const Json& j, const Parameters& params, const std::string& where) {
  FieldAmplitudes amp;
  check_keys(j, {"alpha", "beta"}, where);
  for (const char* key : {"alpha", "beta"}) {
    const Json& v = require_key(j, key, where);
    if (!v.is_array()) throw ParseError(where + "." + key + " must be an array with one value per channel");
    auto& dst = std::string(key) == "alpha" ? amp.alpha : amp.beta;
    for (const auto& x : v) dst.push_back(scalar_from_json(x, params));
  }
  if (amp.alpha.size() != amp.beta.size()) throw ParseError(where + ": alpha and beta lengths differ");
  return amp;
}

inline StudySettings parse_study(const Json& j, const Parameters& params) {
  StudySettings s;
  if (j.is_null()) return s;
  if (!j.is_object()) throw ParseError("'study' must be an object");
  check_keys(j, {"amplitudes", "k", "T", "grid", "cutoffs", "probe_dim", "cutoff_parameter"}, "study");
  if (j.contains("amplitudes")) {
    const Json& a = j.at("amplitudes");
    if (!a.is_object()) throw ParseError("study.amplitudes must be an object");
    for (const auto& item : a.items()) {
      if (item.key() != "default" && item.key() != "generator" && item.key() != "semigroup" && item.key() != "truncation") {
        throw ParseError("study.amplitudes: unknown study kind '" + item.key() + "'");
      }
      s.amplitudes[item.key()] = amplitudes_from_json(item.value(), params, "study.amplitudes." + item.key());
    }
  }
  if (j.contains("k")) {
    s.k_schedule.clear();
    for (const auto& x : j.at("k")) s.k_schedule.push_back(real_from_json(x, params, "study.k"));
  }
  if (j.contains("T")) s.t_max = real_from_json(j.at("T"), params, "study.T");
  if (j.contains("grid")) s.grid_points = int_from_json(j.at("grid"), params, "study.grid");
  if (j.contains("cutoffs")) {
    for (const auto& x : j.at("cutoffs")) s.cutoffs.push_back(int_from_json(x, params, "study.cutoffs"));
  }
  if (j.contains("probe_dim")) s.probe_dim = int_from_json(j.at("probe_dim"), params, "study.probe_dim");
  if (j.contains("cutoff_parameter")) s.cutoff_parameter = j.at("cutoff_parameter").get<std::string>();
  return s;
}

inline Model load_builtin(const Json& doc, const Parameters& overrides) {
  check_keys(doc, {"builtin", "parameters", "study"}, "model");
  const std::string name = doc.at("builtin").get<std::string>();
  const auto names = builtin_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) throw ParseError("unknown builtin fixture '" + name + "'");
  Parameters p = builtin_defaults(name);
  if (doc.contains("parameters")) {
    for (const auto& [key, value] : parse_parameters(doc.at("parameters"), {})) {
      if (!p.count(key)) throw ParseError("builtin '" + name + "' has no parameter '" + key + "'");
      p[key] = value;
    }
  }
  for (const auto& [key, value] : overrides) {
    if (!p.count(key)) throw ParseError("cannot override unknown parameter '" + key + "'");
    p[key] = value;
  }
  Model m{builtin_fixture(name, p), parse_study(doc.value("study", Json()), p), doc};
  if (!m.study.cutoff_parameter) m.study.cutoff_parameter = name == "mirror" ? "cavity_cutoff" : "cutoff";
  return m;
}

inline Model load_explicit(const Json& doc, const Parameters& overrides) {
  check_keys(doc, {"name", "parameters", "space", "channels", "definitions", "operators", "p0", "study"}, "model");
  const Parameters params = parse_parameters(doc.value("parameters", Json()), overrides);
  const std::string name = doc.value("name", std::string("model"));

  const Json& space_j = require_key(doc, "space", "model");
  if (!space_j.is_array() || space_j.empty()) throw ParseError("'space' must be a non-empty array of factor dimensions");
  std::vector<int> dims;
  for (const auto& x : space_j) {
    dims.push_back(int_from_json(x, params, "space"));
    if (dims.back() < 1) throw ParseError("space factor dimensions must be >= 1");
  }
  const HilbertSpace space(dims);
  const int channels = int_from_json(require_key(doc, "channels", "model"), params, "channels");
  if (channels < 1) throw ParseError("'channels' must be >= 1");
  const auto n = static_cast<std::size_t>(channels);

  const Json& ops = require_key(doc, "operators", "model");
  if (!ops.is_object() || ops.empty()) throw ParseError("'operators' must be a non-empty object");
  check_keys(ops, {"Y", "A", "B", "F", "G", "W"}, "operators");

  const Json definitions = doc.value("definitions", Json());
  OperatorBuilder builder(params, definitions);
  auto role = [&](const Json& node, const std::string& where) {
    Operator x = builder.build(node, where);
    if (x.dim() != space.total_dim()) {
      throw ParseError(where + " has dimension " + std::to_string(x.dim()) + ", model space " + space.describe() + " has " +
                       std::to_string(space.total_dim()));
    }
    return Operator(space, x.matrix());
  };
  auto role_list = [&](const std::string& key) {
    const Json& list = require_key(ops, key, "operators");
    if (!list.is_array() || list.size() != n) throw ParseError("operators." + key + " must list one operator per channel");
    std::vector<Operator> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(role(list[i], "operators." + key + "[" + std::to_string(i) + "]"));
    return out;
  };

  Operator y = role(require_key(ops, "Y", "operators"), "operators.Y");
  Operator a = role(require_key(ops, "A", "operators"), "operators.A");
  Operator b = role(require_key(ops, "B", "operators"), "operators.B");
  std::vector<Operator> f = role_list("F");
  std::vector<Operator> g = role_list("G");
  const Json& w_j = require_key(ops, "W", "operators");
  if (!w_j.is_array() || w_j.size() != n) throw ParseError("operators.W must be an n x n array");
  OperatorGrid w(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!w_j[i].is_array() || w_j[i].size() != n) throw ParseError("operators.W must be an n x n array");
    for (std::size_t j = 0; j < n; ++j) {
      w[i].push_back(role(w_j[i][j], "operators.W[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
    }
  }

  const Json& p0_j = require_key(doc, "p0", "model");
  std::optional<SubspacePair> sub;
  try {
    if (p0_j.is_object() && p0_j.contains("basis")) {
      check_keys(p0_j, {"basis"}, "p0");
      std::vector<int> idx;
      for (const auto& x : p0_j.at("basis")) idx.push_back(int_from_json(x, params, "p0.basis"));
      if (idx.empty()) throw ParseError("p0.basis is empty");
      sub = SubspacePair::from_basis_indices(space, idx);
    } else if (p0_j.is_object() && p0_j.contains("matrix")) {
      check_keys(p0_j, {"matrix"}, "p0");
      sub = SubspacePair(role(p0_j.at("matrix"), "p0.matrix"));
    } else {
      throw ParseError("'p0' must be {\"basis\": [...]} or {\"matrix\": [...]}");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("p0: ") + e.what());
  }

  ScaledFamily fam{channels, space, std::move(y), std::move(a), std::move(b), std::move(f), std::move(g), std::move(w)};
  Model m{Fixture{name, std::move(fam), std::move(*sub), std::nullopt, params}, parse_study(doc.value("study", Json()), params),
          doc};
  if (!m.study.cutoff_parameter && params.count("cutoff")) m.study.cutoff_parameter = "cutoff";
  return m;
}

}  // namespace detail

/// Builds a model from a parsed document; `overrides` replaces declared parameters.
inline Model load_model(const Json& doc, const Parameters& overrides = {}) {
  if (!doc.is_object()) throw ParseError("model document must be a JSON object");
  try {
    Model m = doc.contains("builtin") ? detail::load_builtin(doc, overrides) : detail::load_explicit(doc, overrides);
    for (const auto& [kind, amp] : m.study.amplitudes) {
      if (amp.channels() != m.fixture.family.channels) {
        throw ParseError("study.amplitudes." + kind + " has " + std::to_string(amp.channels()) + " channels, model has " +
                         std::to_string(m.fixture.family.channels));
      }
    }
    return m;
  } catch (const ParseError&) {
    throw;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed model document: ") + e.what());
  } catch (const PreconditionFailed&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("invalid model: ") + e.what());
  }
}

inline Model load_model_text(const std::string& text, const Parameters& overrides = {}) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what());
  }
  return load_model(doc, overrides);
}

/// Reads `path`, or `path + ".json"` when `path` does not exist.
inline Model load_model_file(const std::string& path, const Parameters& overrides = {}) {
  std::ifstream in(path);
  if (!in) in.open(path + ".json");
  if (!in) throw ParseError("cannot open model file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_model_text(ss.str(), overrides);
}

/// The same model with its cutoff parameter raised by `delta`, if it has one.
inline std::optional<Model> with_larger_cutoff(const Model& m, int delta = 2) {
  if (!m.study.cutoff_parameter) return std::nullopt;
  const auto it = m.fixture.params.find(*m.study.cutoff_parameter);
  if (it == m.fixture.params.end()) return std::nullopt;
  return load_model(m.document, {{it->first, it->second + static_cast<double>(delta)}});
}

/// Builtin-form document for a shipped fixture with its default parameters.
inline Json builtin_document(const std::string& name) {
  Json params = Json::object();
  for (const auto& [key, value] : builtin_defaults(name)) {
    params[key] = value.imag() == 0.0 ? Json(value.real()) : complex_to_json(value);
  }
  Json doc;
  doc["builtin"] = name;
  doc["parameters"] = std::move(params);
  auto amp = [](double alpha, double beta) {
    Json a;
    a["alpha"] = Json::array({alpha});
    a["beta"] = Json::array({beta});
    return a;
  };
  Json study;
  if (name == "duan-kimble") {
    study["amplitudes"]["generator"] = amp(0.3, 0.5);
    study["amplitudes"]["semigroup"] = amp(0.0, 0.0);
    study["T"] = 2.0;
    study["grid"] = 64;
  } else if (name == "truncation-demo") {
    study["cutoffs"] = Json::array({2, 4, 8, 16});
    study["T"] = 2.0;
    study["grid"] = 64;
  } else {
    study["amplitudes"]["default"] = amp(0.3, 0.5);
  }
  doc["study"] = std::move(study);
  return doc;
}

}  // namespace qsde
