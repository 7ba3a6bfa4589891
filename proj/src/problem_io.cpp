#include "seqode/problem_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "json.hpp"

namespace seqode {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ProblemFileError(path + ": " + msg);
}

const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) fail(path + "." + key, "missing");
  return j.at(key);
}

double require_number(const json& j, const std::string& key, const std::string& path) {
  const json& v = require(j, key, path);
  if (!v.is_number()) fail(path + "." + key, "expected number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(path + "." + key, "must be finite");
  return d;
}

std::int64_t require_integer(const json& j, const std::string& key,
                             const std::string& path) {
  const json& v = require(j, key, path);
  if (!v.is_number_integer()) fail(path + "." + key, "expected integer");
  return v.get<std::int64_t>();
}

std::string require_string(const json& j, const std::string& key,
                           const std::string& path) {
  const json& v = require(j, key, path);
  if (!v.is_string()) fail(path + "." + key, "expected string");
  return v.get<std::string>();
}

bool optional_bool(const json& j, const std::string& key, bool fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return j.at(key).get<bool>();
}

AnchorSeq parse_anchor(const json& j, const std::string& path) {
  const std::string type = require_string(j, "type", path);
  if (type == "zero") return AnchorSeq::zero();
  if (type == "constant") return AnchorSeq::constant(require_number(j, "value", path));
  if (type == "poly") {
    const double coeff = require_number(j, "coeff", path);
    const std::int64_t degree = require_integer(j, "degree", path);
    if (degree < 0) fail(path + ".degree", "must be >= 0");
    return AnchorSeq::poly(coeff, static_cast<int>(degree));
  }
  fail(path + ".type", "unknown anchor type '" + type + "'");
}

CoeffVec parse_coeffvec(const json& j, const std::string& path) {
  const std::string type = require_string(j, "type", path);
  if (type == "zero") return CoeffVec::zero();
  if (type == "table") {
    const json& vals = require(j, "values", path);
    if (!vals.is_array()) fail(path + ".values", "expected array");
    std::vector<double> prefix;
    for (const auto& v : vals) {
      if (!v.is_number()) fail(path + ".values", "expected numbers");
      prefix.push_back(v.get<double>());
    }
    Tail tail = TailZero{};
    if (j.contains("tail")) tail = TailAnchor{parse_anchor(j.at("tail"), path + ".tail")};
    return CoeffVec(std::move(prefix), std::move(tail));
  }
  if (type == "anchor")
    return CoeffVec::from_anchor(parse_anchor(require(j, "anchor", path), path + ".anchor"));
  fail(path + ".type", "unknown vector type '" + type + "'");
}

PiecewiseConstantFn parse_rho_fn(const json& j, const std::string& path) {
  const std::string type = require_string(j, "type", path);
  if (type == "constant")
    return PiecewiseConstantFn::constant(require_number(j, "value", path));
  if (type == "piecewise") {
    const json& bps = require(j, "breakpoints", path);
    const json& vals = require(j, "values", path);
    if (!bps.is_array() || !vals.is_array())
      fail(path, "breakpoints and values must be arrays");
    std::vector<double> b, v;
    for (const auto& e : bps) b.push_back(e.get<double>());
    for (const auto& e : vals) v.push_back(e.get<double>());
    if (v.size() != b.size() + 1)
      fail(path, "need exactly one more value than breakpoints");
    return PiecewiseConstantFn(std::move(b), std::move(v));
  }
  fail(path + ".type", "unknown rho type '" + type + "'");
}

std::function<PiecewiseConstantFn(std::int64_t)> parse_rho(const json& j,
                                                           const std::string& path) {
  const std::string type = require_string(j, "type", path);
  if (type == "alternating") {
    const double v = require_number(j, "value", path);
    return [v](std::int64_t k) {
      return PiecewiseConstantFn::constant(k % 2 == 0 ? v : -v);
    };
  }
  if (type == "per-coordinate") {
    auto fallback = std::make_shared<PiecewiseConstantFn>(
        parse_rho_fn(require(j, "default", path), path + ".default"));
    auto overrides = std::make_shared<std::map<std::int64_t, PiecewiseConstantFn>>();
    if (j.contains("overrides")) {
      const json& o = j.at("overrides");
      if (!o.is_object()) fail(path + ".overrides", "expected object");
      for (auto it = o.begin(); it != o.end(); ++it) {
        std::int64_t k = 0;
        try {
          k = std::stoll(it.key());
        } catch (...) {
          fail(path + ".overrides", "keys must be coordinate numbers");
        }
        overrides->emplace(k, parse_rho_fn(it.value(), path + ".overrides." + it.key()));
      }
    }
    return [fallback, overrides](std::int64_t k) {
      auto it = overrides->find(k);
      return it != overrides->end() ? it->second : *fallback;
    };
  }
  // constant / piecewise applied to every coordinate
  auto fn = std::make_shared<PiecewiseConstantFn>(parse_rho_fn(j, path));
  return [fn](std::int64_t) { return *fn; };
}

IndexMap parse_index_map(const json& j, const std::string& path) {
  const std::string type = require_string(j, "type", path);
  if (type == "identity") return IndexMap::identity();
  if (type == "half") return IndexMap::half();
  if (type == "table") {
    const json& t = require(j, "table", path);
    if (!t.is_array()) fail(path + ".table", "expected array");
    std::vector<std::int64_t> entries;
    for (const auto& e : t) entries.push_back(e.get<std::int64_t>());
    return IndexMap::table(std::move(entries));
  }
  fail(path + ".type", "unknown index map '" + type + "'");
}

Field parse_field(const json& j, const std::string& path) {
  const std::string type = require_string(j, "type", path);
  if (type == "heaviside") {
    const json& params = require(j, "params", path);
    HeavisideFieldParams hp;
    const std::int64_t p = require_integer(params, "p", path + ".params");
    if (p < 1) fail(path + ".params.p", "must be a positive integer");
    hp.p = static_cast<int>(p);
    hp.n = parse_index_map(require(params, "n", path + ".params"), path + ".params.n");
    hp.rho = parse_rho(require(params, "rho", path + ".params"), path + ".params.rho");
    return heaviside_field(hp);
  }
  if (type == "dieudonne") return dieudonne_field();
  if (type == "scalar-h") return scalar_h_field();
  fail(path + ".type", "unknown field type '" + type + "'");
}

SpaceSpec parse_space(const json& j, const std::string& path) {
  const std::string kind_s = require_string(j, "kind", path);
  SeminormKind kind;
  if (kind_s == "weighted-sum")
    kind = SeminormKind::WeightedSum;
  else if (kind_s == "weighted-sup")
    kind = SeminormKind::WeightedSup;
  else
    fail(path + ".kind", "expected 'weighted-sum' or 'weighted-sup'");
  std::string name = j.contains("name") ? j.at("name").get<std::string>() : "space";
  const json& w = require(j, "weights", path);
  const std::string type = require_string(w, "type", path + ".weights");
  if (type == "power-series") return SpaceSpec::power_series(kind, std::move(name));
  if (type == "table") {
    const json& rows = require(w, "rows", path + ".weights");
    if (!rows.is_array()) fail(path + ".weights.rows", "expected array of arrays");
    std::vector<std::vector<double>> table;
    for (const auto& row : rows) {
      if (!row.is_array()) fail(path + ".weights.rows", "expected array of arrays");
      std::vector<double> r;
      for (const auto& e : row) r.push_back(e.get<double>());
      table.push_back(std::move(r));
    }
    return SpaceSpec::table(std::move(table), kind, std::move(name));
  }
  fail(path + ".weights.type", "unknown weight family '" + type + "'");
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text,
                                                std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

Problem parse_problem(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ProblemFileError(origin + ":" + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + e.what());
  }
  if (!root.is_object()) fail(origin, "top level must be an object");

  const json& prob = require(root, "problem", origin);
  const double T = require_number(prob, "T", origin + ".problem");
  if (!(T > 0.0)) fail(origin + ".problem.T", "must be positive");
  const std::int64_t N = require_integer(prob, "N", origin + ".problem");
  if (N < 1) fail(origin + ".problem.N", "must be >= 1");
  const std::int64_t M = require_integer(prob, "M", origin + ".problem");
  if (M < 1) fail(origin + ".problem.M", "must be >= 1");

  const json& solver_j = require(root, "solver", origin);

  Problem p{parse_space(require(root, "space", origin), origin + ".space"),
            parse_field(require(root, "field", origin), origin + ".field"),
            parse_coeffvec(require(prob, "x_hat", origin + ".problem"),
                           origin + ".problem.x_hat"),
            parse_coeffvec(require(prob, "x_star", origin + ".problem"),
                           origin + ".problem.x_star"),
            parse_coeffvec(require(prob, "C", origin + ".problem"),
                           origin + ".problem.C"),
            T,
            N,
            TimeGrid::uniform(T, M)};
  p.tol_residual = require_number(solver_j, "tol_residual", origin + ".solver");
  if (!(p.tol_residual > 0.0)) fail(origin + ".solver.tol_residual", "must be positive");
  p.max_iters = static_cast<int>(require_integer(solver_j, "max_iters", origin + ".solver"));
  if (p.max_iters < 1) fail(origin + ".solver.max_iters", "must be >= 1");
  p.max_refines =
      static_cast<int>(require_integer(solver_j, "max_refines", origin + ".solver"));
  if (p.max_refines < 0) fail(origin + ".solver.max_refines", "must be >= 0");
  p.override_hypotheses = optional_bool(solver_j, "override_hypotheses", false);
  p.rng_seed = static_cast<std::uint64_t>(
      require_integer(solver_j, "rng_seed", origin + ".solver"));
  if (solver_j.contains("hypothesis_trials"))
    p.hypothesis_trials = require_integer(solver_j, "hypothesis_trials", origin + ".solver");

  // Anchors entering weighted-sum seminorms need summability witnesses.
  for (const CoeffVec* v : {&p.x_hat, &p.x_star, &p.bound_C}) {
    if (!std::holds_alternative<TailZero>(v->tail()) &&
        !p.space.summable(tail_upper(v->tail())))
      fail(origin + ".problem", "tail anchor not summable in the given space");
  }
  try {
    p.validate();
  } catch (const std::exception& e) {
    fail(origin + ".problem", e.what());
  }
  return p;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProblemFileError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str(), path);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& u) {
  os << "t";
  for (std::int64_t k = 0; k < u.n_coords(); ++k) os << ",u" << k;
  os << "\n";
  char buf[64];
  for (std::int64_t j = 0; j < u.n_nodes(); ++j) {
    std::snprintf(buf, sizeof(buf), "%.17g", u.grid().nodes()[static_cast<std::size_t>(j)]);
    os << buf;
    for (std::int64_t k = 0; k < u.n_coords(); ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g", u.value(j, k));
      os << "," << buf;
    }
    os << "\n";
  }
}

void write_trajectory_csv(const std::string& path, const Trajectory& u) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  write_trajectory_csv(out, u);
  out.flush();
  if (!out) throw std::ios_base::failure("write failed for '" + path + "'");
}

Trajectory read_trajectory_csv(const std::string& path, const Tail& beyond) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  std::string header;
  if (!std::getline(in, header))
    throw ProblemFileError(path + ": empty trajectory file");
  std::int64_t n = 0;
  {
    std::stringstream hs(header);
    std::string cell;
    bool first = true;
    while (std::getline(hs, cell, ',')) {
      if (first) {
        if (cell != "t") throw ProblemFileError(path + ": first column must be 't'");
        first = false;
      } else {
        ++n;
      }
    }
  }
  if (n < 1) throw ProblemFileError(path + ": no coordinate columns");
  std::vector<double> nodes;
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string cell;
    std::int64_t col = -1;
    while (std::getline(ls, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str())
        throw ProblemFileError(path + ":" + std::to_string(lineno) + ": bad number '" +
                               cell + "'");
      if (col < 0)
        nodes.push_back(v);
      else
        values.push_back(v);
      ++col;
    }
    if (col != n)
      throw ProblemFileError(path + ":" + std::to_string(lineno) +
                             ": expected " + std::to_string(n + 1) + " columns");
  }
  return Trajectory(TimeGrid(std::move(nodes)), n, std::move(values), beyond);
}

}  // namespace seqode
