#pragma once

// Fixture and solution files. Polynomials are arrays of [re, im] pairs in
// ascending degree; matrices are arrays of rows. Doubles are written in
// shortest round-trip form, so parse(emit(x)) reproduces every coefficient.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "corona.hpp"
#include "errors.hpp"
#include "poly.hpp"

namespace koszul {

using json = nlohmann::ordered_json;

/// Raised for malformed or inconsistent input files (CLI exit code 2).
class input_error : public std::runtime_error {
public:
  explicit input_error(const std::string &what) : std::runtime_error(what) {}
};

struct GridSpec {
  std::vector<double> radii = DiscGrid::default_radii();
  int angles = 64;

  DiscGrid build() const { return DiscGrid(radii, angles); }
};

struct Fixture {
  std::string id;
  int m = 0;
  int d = 0;
  int degree_cap = kDefaultMaxDegree;
  PolyMatrix f;
  PolyMatrix h;
  std::optional<PolyMatrix> u_known;
  std::optional<GridSpec> grid;
  std::optional<int> k;
  NormMode norm_mode = NormMode::equal;
};

inline json poly_to_json(const ComplexPolynomial &p) {
  json arr = json::array();
  for (const auto &c : p.coeffs())
    arr.push_back(json::array({c.real(), c.imag()}));
  return arr;
}

inline ComplexPolynomial poly_from_json(const json &j) {
  if (!j.is_array() || j.empty())
    throw input_error("polynomial must be a non-empty array of [re, im] pairs");
  std::vector<cd> coeffs;
  for (const auto &c : j) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() ||
        !c[1].is_number())
      throw input_error("coefficient must be a [re, im] pair of numbers");
    coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
  }
  return ComplexPolynomial(std::move(coeffs));
}

inline json matrix_to_json(const PolyMatrix &m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(poly_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline PolyMatrix matrix_from_json(const json &j, Eigen::Index rows,
                                   Eigen::Index cols, const std::string &name) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
    throw input_error(name + ": expected " + std::to_string(rows) + " rows");
  PolyMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto &row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw input_error(name + ": row " + std::to_string(r) + " must have " +
                        std::to_string(cols) + " entries");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = poly_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

inline json fixture_to_json(const Fixture &fx) {
  json j;
  j["id"] = fx.id;
  j["m"] = fx.m;
  j["d"] = fx.d;
  j["degree_cap"] = fx.degree_cap;
  if (fx.k)
    j["k"] = *fx.k;
  j["norm_mode"] = to_string(fx.norm_mode);
  j["F"] = matrix_to_json(fx.f);
  j["H"] = matrix_to_json(fx.h);
  if (fx.u_known)
    j["u_known"] = matrix_to_json(*fx.u_known);
  if (fx.grid)
    j["grid"] = {{"radii", fx.grid->radii}, {"angles", fx.grid->angles}};
  return j;
}

inline Fixture fixture_from_json(const json &j) {
  try {
    Fixture fx;
    fx.id = j.value("id", std::string{});
    fx.m = j.at("m").get<int>();
    fx.d = j.at("d").get<int>();
    fx.degree_cap = j.value("degree_cap", kDefaultMaxDegree);
    if (fx.m < 1 || fx.d < 0 || fx.degree_cap < 0)
      throw input_error("fixture: need m >= 1, d >= 0, degree_cap >= 0");
    if (j.contains("k"))
      fx.k = j["k"].get<int>();
    const auto mode = j.value("norm_mode", std::string("equal"));
    if (mode == "equal")
      fx.norm_mode = NormMode::equal;
    else if (mode == "at_most")
      fx.norm_mode = NormMode::at_most;
    else
      throw input_error("fixture: norm_mode must be 'equal' or 'at_most'");
    fx.f = matrix_from_json(j.at("F"), fx.m, fx.d, "F");
    fx.h = matrix_from_json(j.at("H"), fx.m, 1, "H");
    if (j.contains("u_known"))
      fx.u_known = matrix_from_json(j["u_known"], fx.d, 1, "u_known");
    for (const PolyMatrix *pm : {&fx.f, &fx.h})
      if (pm->max_degree() > fx.degree_cap)
        throw input_error("fixture: entry degree exceeds degree_cap");
    if (j.contains("grid")) {
      GridSpec g;
      g.radii = j["grid"].at("radii").get<std::vector<double>>();
      g.angles = j["grid"].at("angles").get<int>();
      for (double r : g.radii)
        if (!(r >= 0.0 && r < 1.0))
          throw input_error("fixture: grid radii must lie in [0, 1)");
      if (g.angles < 1)
        throw input_error("fixture: grid needs at least one angle");
      fx.grid = g;
    }
    return fx;
  } catch (const nlohmann::json::exception &e) {
    throw input_error(std::string("fixture: ") + e.what());
  }
}

inline json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw input_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw input_error(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw input_error("cannot write " + path);
  out << text;
}

inline Fixture load_fixture(const std::string &path) {
  return fixture_from_json(read_json_file(path));
}

/// A solution file carries G (d x 1) in the fixture polynomial format.
inline json solution_to_json(const std::string &fixture_id, const PolyMatrix &g) {
  json j;
  j["fixture"] = fixture_id;
  j["d"] = g.rows();
  j["G"] = matrix_to_json(g);
  return j;
}

inline PolyMatrix solution_from_json(const json &j) {
  try {
    const auto d = j.at("d").get<Eigen::Index>();
    return matrix_from_json(j.at("G"), d, 1, "G");
  } catch (const nlohmann::json::exception &e) {
    throw input_error(std::string("solution: ") + e.what());
  }
}

/// point index, Re z, Im z, |residual|
inline std::string residual_csv(const DiscGrid &grid,
                                const std::vector<double> &residuals) {
  std::ostringstream os;
  os.precision(17);
  os << "index,re,im,abs_residual\n";
  for (std::size_t i = 0; i < residuals.size(); ++i)
    os << i << ',' << grid.points()[i].real() << ',' << grid.points()[i].imag()
       << ',' << residuals[i] << '\n';
  return os.str();
}

} // namespace koszul
