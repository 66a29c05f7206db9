#include "groupwalk/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>

namespace groupwalk {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::ConfigError, field + ": " + what);
}

void expect_object(const json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object");
}

void check_keys(const json& j, const std::string& field, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) fail(field + "." + key, "unknown field");
}

Rational parse_prob(const json& j, const std::string& field) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number()) {
    Rational r(j.get<double>());
    return r;
  }
  fail(field, "probability must be a number or a string like \"1/2\"");
}

double require_double(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

long long require_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<long long>();
}

}  // namespace

AnalysisConfig AnalysisConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ConfigError, std::string("config parse error: ") + e.what());
  }
  return from_json(j);
}

AnalysisConfig AnalysisConfig::from_json(const json& j) {
  expect_object(j, "config");
  check_keys(j, "config",
             {"schema_version", "group", "distribution", "matrix_measure", "options"});
  AnalysisConfig config;

  if (j.contains("schema_version") && require_int(j["schema_version"], "schema_version") != kSchemaVersion)
    fail("schema_version", "unsupported version");

  if (j.contains("options")) {
    const json& o = j["options"];
    expect_object(o, "options");
    check_keys(o, "options",
               {"n_max", "matrix_horizon", "spectral_tol", "unitarity_tol", "orbit_tol",
                "atom_threshold", "settle_tol", "norm_threshold", "closure_cap", "lattice_cap",
                "eig_cap", "orbit_cap", "tensor_degree", "samples", "walk_length", "seed",
                "backend", "trace_path"});
    Options& opt = config.options;
    if (o.contains("n_max")) opt.n_max = int(require_int(o["n_max"], "options.n_max"));
    if (o.contains("matrix_horizon"))
      opt.matrix_horizon = int(require_int(o["matrix_horizon"], "options.matrix_horizon"));
    if (o.contains("spectral_tol"))
      opt.spectral_tol = require_double(o["spectral_tol"], "options.spectral_tol");
    if (o.contains("unitarity_tol"))
      opt.unitarity_tol = require_double(o["unitarity_tol"], "options.unitarity_tol");
    if (o.contains("orbit_tol")) opt.orbit_tol = require_double(o["orbit_tol"], "options.orbit_tol");
    if (o.contains("atom_threshold"))
      opt.atom_threshold = require_double(o["atom_threshold"], "options.atom_threshold");
    if (o.contains("settle_tol"))
      opt.settle_tol = require_double(o["settle_tol"], "options.settle_tol");
    if (o.contains("norm_threshold"))
      opt.norm_threshold = require_double(o["norm_threshold"], "options.norm_threshold");
    if (o.contains("closure_cap"))
      opt.closure_cap = int(require_int(o["closure_cap"], "options.closure_cap"));
    if (o.contains("lattice_cap"))
      opt.lattice_cap = int(require_int(o["lattice_cap"], "options.lattice_cap"));
    if (o.contains("eig_cap")) opt.eig_cap = int(require_int(o["eig_cap"], "options.eig_cap"));
    if (o.contains("orbit_cap"))
      opt.orbit_cap = int(require_int(o["orbit_cap"], "options.orbit_cap"));
    if (o.contains("tensor_degree"))
      opt.tensor_degree = int(require_int(o["tensor_degree"], "options.tensor_degree"));
    if (o.contains("samples")) opt.samples = require_int(o["samples"], "options.samples");
    if (o.contains("walk_length"))
      opt.walk_length = int(require_int(o["walk_length"], "options.walk_length"));
    if (o.contains("seed")) {
      if (!o["seed"].is_number_unsigned() && !o["seed"].is_number_integer())
        fail("options.seed", "expected an integer");
      opt.seed = o["seed"].get<unsigned long long>();
    }
    if (o.contains("backend")) {
      if (!o["backend"].is_string()) fail("options.backend", "expected \"float\" or \"rational\"");
      std::string b = o["backend"].get<std::string>();
      if (b == "float") opt.backend = Backend::Float;
      else if (b == "rational") opt.backend = Backend::Rational;
      else fail("options.backend", "expected \"float\" or \"rational\"");
    }
    if (o.contains("trace_path")) {
      if (o["trace_path"].is_null()) opt.trace_path.reset();
      else if (o["trace_path"].is_string()) opt.trace_path = o["trace_path"].get<std::string>();
      else fail("options.trace_path", "expected a string or null");
    }
    if (opt.n_max < 1) fail("options.n_max", "must be >= 1");
    if (opt.samples < 1) fail("options.samples", "must be >= 1");
    if (opt.tensor_degree < 1 || opt.tensor_degree > 3)
      fail("options.tensor_degree", "must be in 1..3");
  }

  const bool has_group = j.contains("group");
  const bool has_matrix = j.contains("matrix_measure");
  if (has_group == has_matrix)
    fail("config", "exactly one of 'group' and 'matrix_measure' is required");

  if (has_group) {
    const json& g = j["group"];
    expect_object(g, "group");
    check_keys(g, "group", {"preset", "cayley_file", "permutations", "degree"});
    int sources = 0;
    if (g.contains("preset")) {
      if (!g["preset"].is_string()) fail("group.preset", "expected a string");
      config.preset = g["preset"].get<std::string>();
      ++sources;
    }
    if (g.contains("cayley_file")) {
      if (!g["cayley_file"].is_string()) fail("group.cayley_file", "expected a string");
      config.cayley_file = g["cayley_file"].get<std::string>();
      ++sources;
    }
    if (g.contains("permutations")) {
      if (!g["permutations"].is_array()) fail("group.permutations", "expected an array");
      std::vector<std::string> perms;
      for (const auto& p : g["permutations"]) {
        if (!p.is_string()) fail("group.permutations", "entries must be cycle strings");
        perms.push_back(p.get<std::string>());
      }
      config.permutations = std::move(perms);
      if (g.contains("degree"))
        config.permutation_degree = int(require_int(g["degree"], "group.degree"));
      ++sources;
    }
    if (sources != 1) fail("group", "exactly one of preset/cayley_file/permutations is required");

    if (!j.contains("distribution")) fail("distribution", "required for finite group sources");
    const json& d = j["distribution"];
    expect_object(d, "distribution");
    check_keys(d, "distribution", {"pairs"});
    if (!d.contains("pairs") || !d["pairs"].is_array() || d["pairs"].empty())
      fail("distribution.pairs", "expected a non-empty array of [element, probability] pairs");
    for (const auto& pair : d["pairs"]) {
      if (!pair.is_array() || pair.size() != 2)
        fail("distribution.pairs", "each entry must be [element, probability]");
      std::string element;
      if (pair[0].is_string()) element = pair[0].get<std::string>();
      else if (pair[0].is_number_integer()) element = std::to_string(pair[0].get<long long>());
      else fail("distribution.pairs", "element must be an index or a label");
      config.pairs.push_back({std::move(element), parse_prob(pair[1], "distribution.pairs")});
    }
  } else {
    const json& m = j["matrix_measure"];
    expect_object(m, "matrix_measure");
    config.matrix_measure = m;
    config.build_matrix_measure();  // validate eagerly
  }

  return config;
}

GroupPtr AnalysisConfig::build_group() const {
  if (preset) return FiniteGroup::preset(*preset, options.closure_cap);
  if (cayley_file) return read_cayley_file(*cayley_file);
  if (permutations) {
    std::vector<Permutation> gens;
    for (const auto& text : *permutations)
      gens.push_back(parse_cycles(text, permutation_degree.value_or(-1)));
    return FiniteGroup::from_permutations(gens, options.closure_cap);
  }
  throw Error(ErrorKind::ConfigError, "config has no finite group source");
}

std::vector<Rational> AnalysisConfig::parse_probs(const GroupPtr& group) const {
  std::vector<Rational> probs(group->order(), Rational(0));
  std::vector<char> seen(group->order(), 0);
  for (const auto& pair : pairs) {
    element_t e = -1;
    bool numeric = !pair.element.empty() &&
                   pair.element.find_first_not_of("0123456789") == std::string::npos;
    if (numeric) {
      long long idx = std::stoll(pair.element);
      if (idx < 0 || idx >= group->order())
        throw Error(ErrorKind::ConfigError,
                    "distribution.pairs: element index " + pair.element + " out of range");
      e = element_t(idx);
    } else {
      e = group->find_label(pair.element);
      if (e < 0)
        throw Error(ErrorKind::ConfigError,
                    "distribution.pairs: unknown element label '" + pair.element + "'");
    }
    if (seen[e]++)
      throw Error(ErrorKind::ConfigError,
                  "distribution.pairs: element " + pair.element + " listed twice");
    if (pair.prob < 0)
      throw Error(ErrorKind::ConfigError,
                  "distribution.pairs: negative probability for element " + pair.element);
    probs[e] = pair.prob;
  }
  Rational sum(0);
  for (const auto& r : probs) sum += r;
  double drift = std::abs(to_double(sum - Rational(1)));
  if (drift > 1e-12)
    throw Error(ErrorKind::ConfigError,
                "distribution.pairs: probabilities sum to " + to_string(sum) + ", expected 1");
  return probs;
}

Distribution AnalysisConfig::float_distribution(const GroupPtr& group) const {
  auto exact = parse_probs(group);
  std::vector<double> probs;
  probs.reserve(exact.size());
  for (const auto& r : exact) probs.push_back(to_double(r));
  return Distribution::make(group, std::move(probs));
}

RationalDistribution AnalysisConfig::rational_distribution(const GroupPtr& group) const {
  auto probs = parse_probs(group);
  Rational sum(0);
  for (const auto& r : probs) sum += r;
  if (sum != 1)
    throw Error(ErrorKind::ConfigError,
                "distribution.pairs: probabilities sum to " + to_string(sum) +
                    ", the rational backend requires exactly 1 (use fractions)");
  return RationalDistribution::make(group, std::move(probs));
}

MatrixMeasure AnalysisConfig::build_matrix_measure() const {
  if (!matrix_measure) throw Error(ErrorKind::ConfigError, "config has no matrix_measure");
  const json& m = *matrix_measure;
  check_keys(m, "matrix_measure", {"dimension", "atoms", "parametric", "tolerance"});
  double tol = options.unitarity_tol;
  if (m.contains("tolerance")) tol = require_double(m["tolerance"], "matrix_measure.tolerance");

  if (m.contains("atoms") == m.contains("parametric"))
    fail("matrix_measure", "exactly one of 'atoms' and 'parametric' is required");

  if (m.contains("atoms")) {
    if (!m.contains("dimension")) fail("matrix_measure.dimension", "required with atoms");
    const int d = int(require_int(m["dimension"], "matrix_measure.dimension"));
    if (!m["atoms"].is_array() || m["atoms"].empty())
      fail("matrix_measure.atoms", "expected a non-empty array");
    std::vector<MatrixAtom> atoms;
    for (size_t ai = 0; ai < m["atoms"].size(); ++ai) {
      const json& a = m["atoms"][ai];
      const std::string field = "matrix_measure.atoms[" + std::to_string(ai) + "]";
      expect_object(a, field);
      check_keys(a, field, {"matrix", "prob"});
      if (!a.contains("matrix") || !a.contains("prob")) fail(field, "needs 'matrix' and 'prob'");
      const json& rows = a["matrix"];
      if (!rows.is_array() || int(rows.size()) != d) fail(field + ".matrix", "expected d rows");
      Eigen::MatrixXcd mat(d, d);
      for (int r = 0; r < d; ++r) {
        if (!rows[r].is_array() || int(rows[r].size()) != d)
          fail(field + ".matrix", "row " + std::to_string(r) + " must have d entries");
        for (int c = 0; c < d; ++c) {
          const json& entry = rows[r][c];
          if (entry.is_number()) {
            mat(r, c) = entry.get<double>();
          } else if (entry.is_array() && entry.size() == 2 && entry[0].is_number() &&
                     entry[1].is_number()) {
            mat(r, c) = std::complex<double>(entry[0].get<double>(), entry[1].get<double>());
          } else {
            fail(field + ".matrix", "entries must be numbers or [re, im] pairs");
          }
        }
      }
      atoms.push_back({std::move(mat), to_double(parse_prob(a["prob"], field + ".prob"))});
    }
    return MatrixMeasure::finite(std::move(atoms), tol);
  }

  // parametric
  std::vector<AxisRotation> factors;
  auto parse_axis_rotation = [&](const json& p, const std::string& field) {
    check_keys(p, field, {"kind", "axis", "angle"});
    if (!p.contains("axis") || !p["axis"].is_array() || p["axis"].size() != 3)
      fail(field + ".axis", "expected [x, y, z]");
    Eigen::Vector3d axis;
    for (int i = 0; i < 3; ++i) axis[i] = require_double(p["axis"][i], field + ".axis");
    if (!p.contains("angle")) fail(field + ".angle", "required");
    const json& angle = p["angle"];
    expect_object(angle, field + ".angle");
    check_keys(angle, field + ".angle", {"fixed", "uniform"});
    if (angle.contains("fixed") == angle.contains("uniform"))
      fail(field + ".angle", "exactly one of 'fixed' and 'uniform' is required");
    std::optional<double> fixed;
    if (angle.contains("fixed")) fixed = require_double(angle["fixed"], field + ".angle.fixed");
    else if (!angle["uniform"].is_boolean() || !angle["uniform"].get<bool>())
      fail(field + ".angle.uniform", "must be true");
    factors.push_back({axis, fixed});
  };

  std::function<void(const json&, const std::string&)> parse_parametric =
      [&](const json& p, const std::string& field) {
        expect_object(p, field);
        if (!p.contains("kind") || !p["kind"].is_string()) fail(field + ".kind", "required");
        std::string kind = p["kind"].get<std::string>();
        if (kind == "axis_rotation") {
          parse_axis_rotation(p, field);
        } else if (kind == "product") {
          check_keys(p, field, {"kind", "factors"});
          if (!p.contains("factors") || !p["factors"].is_array() || p["factors"].empty())
            fail(field + ".factors", "expected a non-empty array");
          for (size_t i = 0; i < p["factors"].size(); ++i)
            parse_parametric(p["factors"][i], field + ".factors[" + std::to_string(i) + "]");
        } else {
          fail(field + ".kind", "unknown kind '" + kind + "'");
        }
      };
  parse_parametric(m["parametric"], "matrix_measure.parametric");
  return MatrixMeasure::parametric(std::move(factors), tol);
}

nlohmann::ordered_json AnalysisConfig::to_json() const {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  if (!is_matrix()) {
    ordered_json g;
    if (preset) g["preset"] = *preset;
    if (cayley_file) g["cayley_file"] = *cayley_file;
    if (permutations) {
      g["permutations"] = *permutations;
      if (permutation_degree) g["degree"] = *permutation_degree;
    }
    j["group"] = std::move(g);
    ordered_json pairs_json = ordered_json::array();
    for (const auto& pair : pairs)
      pairs_json.push_back(ordered_json::array({pair.element, to_string(pair.prob)}));
    j["distribution"] = ordered_json{{"pairs", std::move(pairs_json)}};
  } else {
    j["matrix_measure"] = ordered_json(*matrix_measure);
  }
  ordered_json o;
  o["n_max"] = options.n_max;
  o["matrix_horizon"] = options.matrix_horizon;
  o["spectral_tol"] = options.spectral_tol;
  o["unitarity_tol"] = options.unitarity_tol;
  o["orbit_tol"] = options.orbit_tol;
  o["atom_threshold"] = options.atom_threshold;
  o["settle_tol"] = options.settle_tol;
  o["norm_threshold"] = options.norm_threshold;
  o["closure_cap"] = options.closure_cap;
  o["lattice_cap"] = options.lattice_cap;
  o["eig_cap"] = options.eig_cap;
  o["orbit_cap"] = options.orbit_cap;
  o["tensor_degree"] = options.tensor_degree;
  o["samples"] = options.samples;
  o["walk_length"] = options.walk_length;
  o["seed"] = options.seed;
  o["backend"] = options.backend == Backend::Float ? "float" : "rational";
  if (options.trace_path) o["trace_path"] = *options.trace_path;
  else o["trace_path"] = nullptr;
  j["options"] = std::move(o);
  return j;
}

}  // namespace groupwalk
