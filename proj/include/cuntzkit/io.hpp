#pragma once

// JSON file formats:
//   sequence: {"n": int, "preperiod": [vec...], "period": [vec...]},
//             vec = [[re, im], ...] of length n
//   measure:  {"haar": real, "atoms": [{"point": [re, im], "weight": real}...]}
//   tuple:    {"n": int, "lines": [vec...]}
// Loading canonicalizes sequences and validates measures.

#include <fstream>
#include <string>

#include <json.hpp>

#include "cuntzkit/classifier.hpp"
#include "cuntzkit/measure.hpp"
#include "cuntzkit/product_state.hpp"

namespace cuntzkit {

struct file_error : std::runtime_error {
  explicit file_error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw file_error("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw file_error(path + ": " + e.what());
  }
}

inline Eigen::VectorXcd json_to_vector(const nlohmann::json& j, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw file_error("vector entry must be a list of " + std::to_string(n) + " [re, im] pairs");
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) {
    const auto& c = j[i];
    if (!c.is_array() || c.size() != 2)
      throw file_error("complex entries must be [re, im] pairs");
    v(i) = cd(c[0].get<double>(), c[1].get<double>());
  }
  return v;
}

inline nlohmann::json vector_to_json(const Eigen::VectorXcd& v) {
  nlohmann::json j = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    j.push_back({v(i).real(), v(i).imag()});
  return j;
}

}  // namespace detail

inline ProductState load_sequence(const std::string& path) {
  const nlohmann::json j = detail::load_json(path);
  try {
    const int n = j.at("n").get<int>();
    std::vector<Eigen::VectorXcd> pre, block;
    for (const auto& v : j.at("preperiod")) pre.push_back(detail::json_to_vector(v, n));
    for (const auto& v : j.at("period")) block.push_back(detail::json_to_vector(v, n));
    return ProductState(n, std::move(pre), std::move(block));
  } catch (const nlohmann::json::exception& e) {
    throw file_error(path + ": " + e.what());
  }
}

inline CircleMeasure load_measure(const std::string& path) {
  const nlohmann::json j = detail::load_json(path);
  try {
    const double haar = j.value("haar", 0.0);
    std::vector<std::pair<cd, double>> atoms;
    if (j.contains("atoms"))
      for (const auto& a : j.at("atoms")) {
        const auto& pt = a.at("point");
        if (!pt.is_array() || pt.size() != 2)
          throw file_error(path + ": atom point must be [re, im]");
        atoms.emplace_back(cd(pt[0].get<double>(), pt[1].get<double>()),
                           a.at("weight").get<double>());
      }
    return CircleMeasure(haar, std::move(atoms));
  } catch (const nlohmann::json::exception& e) {
    throw file_error(path + ": " + e.what());
  }
}

inline LineTuple load_tuple(const std::string& path) {
  const nlohmann::json j = detail::load_json(path);
  try {
    const int n = j.at("n").get<int>();
    LineTuple t{n, {}};
    for (const auto& v : j.at("lines")) {
      Eigen::VectorXcd u = detail::json_to_vector(v, n);
      require_unit_vector(u);
      t.lines.push_back(canonical_phase(std::move(u)));
    }
    if (t.lines.empty()) throw file_error(path + ": tuple must be nonempty");
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw file_error(path + ": " + e.what());
  }
}

inline nlohmann::json tuple_to_json(const LineTuple& t) {
  nlohmann::json j;
  j["n"] = t.n;
  j["lines"] = nlohmann::json::array();
  for (const auto& v : t.lines) j["lines"].push_back(detail::vector_to_json(v));
  return j;
}

inline nlohmann::json verdict_to_json(const ConjugacyVerdict& v) {
  nlohmann::json j;
  j["verdict"] = verdict_name(v.verdict);
  if (!v.detail.empty()) j["detail"] = v.detail;
  nlohmann::json w = nlohmann::json::object();
  if (v.witness.shift) w["shift"] = *v.witness.shift;
  if (v.witness.unitary) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < v.witness.unitary->rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < v.witness.unitary->cols(); ++c)
        row.push_back({(*v.witness.unitary)(r, c).real(), (*v.witness.unitary)(r, c).imag()});
      rows.push_back(row);
    }
    w["unitary"] = rows;
  }
  if (v.witness.rotation)
    w["rotation"] = {v.witness.rotation->real(), v.witness.rotation->imag()};
  if (!w.empty()) j["witness"] = w;
  j["tolerances"] = {{"gram", tol::gram}, {"unitary", tol::unitary}};
  return j;
}

}  // namespace cuntzkit
