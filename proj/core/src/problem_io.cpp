#include "paretosdp/problem_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace paretosdp {

using nlohmann::json;

namespace {

// Uniform in [-1, 1) from the top 53 bits, so the stream is the same on
// every standard library (distributions are implementation-defined).
double uniform_pm1(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument("problem file: " + what);
}

Polynomial parse_terms(const json& terms, std::size_t nvars, const std::string& field) {
  if (!terms.is_array()) fail(field + " must be a list of terms");
  Polynomial p(nvars);
  for (const auto& t : terms) {
    if (!t.is_object() || !t.contains("exps") || !t.contains("coef")) {
      fail(field + ": every term needs \"exps\" and \"coef\"");
    }
    const auto& e = t.at("exps");
    if (!e.is_array() || e.size() != nvars) {
      fail(field + ": exponent list length must equal the number of variables (" +
           std::to_string(nvars) + ")");
    }
    std::vector<int> exps;
    for (const auto& v : e) {
      if (!v.is_number_integer() || v.get<int>() < 0) fail(field + ": exponents must be non-negative integers");
      exps.push_back(v.get<int>());
    }
    if (!t.at("coef").is_number()) fail(field + ": coef must be a number");
    p.add_term(Monomial(std::move(exps)), t.at("coef").get<double>());
  }
  return p;
}

std::vector<std::string> default_names(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

}  // namespace

BicriteriaProblem make_random_box_qp(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("make_random_box_qp: n must be >= 1");
  std::mt19937_64 rng(seed);
  const double nn = static_cast<double>(n);
  BicriteriaProblem prob;
  const std::size_t nv = static_cast<std::size_t>(n);
  Polynomial f[2] = {Polynomial(nv), Polynomial(nv)};
  for (auto& fj : f) {
    for (int i = 0; i < n; ++i) {
      for (int k = i; k < n; ++k) {
        const double q = uniform_pm1(rng);
        // Off-diagonal pairs appear twice in x'Qx.
        const double coef = (i == k ? q : 2.0 * q) / (nn * nn);
        fj.add_term(Monomial::unit(nv, static_cast<std::size_t>(i)) * Monomial::unit(nv, static_cast<std::size_t>(k)), coef);
      }
    }
    for (int i = 0; i < n; ++i) {
      fj.add_term(Monomial::unit(nv, static_cast<std::size_t>(i)), -uniform_pm1(rng) / nn);
    }
  }
  prob.f1 = f[0];
  prob.f2 = f[1];
  for (std::size_t i = 0; i < nv; ++i) {
    const Polynomial xi = Polynomial::variable(nv, i);
    prob.constraints.push_back(Polynomial::constant(nv, 1.0) - xi * xi);
  }
  prob.box_radius_sq = nn;
  return prob;
}

bool ProblemFile::operator==(const ProblemFile& other) const {
  if (variables != other.variables || generator != other.generator) return false;
  const auto& a = problem;
  const auto& b = other.problem;
  return a.f1 == b.f1 && a.f2 == b.f2 && a.constraints == b.constraints &&
         a.box_radius_sq == b.box_radius_sq;
}

ProblemFile parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("top level must be an object");
  ProblemFile file;

  if (j.contains("generator")) {
    const auto& g = j.at("generator");
    GeneratorSpec spec;
    spec.kind = g.value("kind", spec.kind);
    if (spec.kind != "random_box_qp") fail("unknown generator kind '" + spec.kind + "'");
    spec.n = g.value("n", spec.n);
    spec.seed = g.value("seed", spec.seed);
    if (spec.n < 1) fail("generator n must be >= 1");
    file.generator = spec;
    file.problem = make_random_box_qp(spec.n, spec.seed);
    file.variables = j.contains("variables") ? j.at("variables").get<std::vector<std::string>>()
                                             : default_names(spec.n);
    if (file.variables.size() != static_cast<std::size_t>(spec.n)) fail("variables must list n names");
    return file;
  }

  if (!j.contains("variables") || !j.at("variables").is_array()) fail("missing \"variables\" list");
  file.variables = j.at("variables").get<std::vector<std::string>>();
  const std::size_t n = file.variables.size();
  if (n == 0) fail("at least one variable is required");
  for (const char* key : {"f1", "f2", "box_radius_sq"}) {
    if (!j.contains(key)) fail(std::string("missing \"") + key + "\"");
  }
  file.problem.f1 = parse_terms(j.at("f1"), n, "f1");
  file.problem.f2 = parse_terms(j.at("f2"), n, "f2");
  if (j.contains("constraints")) {
    const auto& cs = j.at("constraints");
    if (!cs.is_array()) fail("constraints must be a list of term lists");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      file.problem.constraints.push_back(parse_terms(cs[i], n, "constraints[" + std::to_string(i) + "]"));
    }
  }
  if (!j.at("box_radius_sq").is_number()) fail("box_radius_sq must be a number");
  file.problem.box_radius_sq = j.at("box_radius_sq").get<double>();
  if (!(file.problem.box_radius_sq > 0.0)) fail("box_radius_sq must be positive");
  return file;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open problem file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

// One term per line keeps fixtures diff-friendly.
std::string emit_problem(const ProblemFile& file) {
  std::ostringstream os;
  os << "{\n  \"variables\": " << json(file.variables).dump();
  if (file.generator) {
    const json g = {{"kind", file.generator->kind}, {"n", file.generator->n}, {"seed", file.generator->seed}};
    os << ",\n  \"generator\": " << g.dump() << "\n}\n";
    return os.str();
  }
  auto terms = [&os](const Polynomial& p, const char* indent) {
    os << "[";
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
      os << (first ? "\n" : ",\n") << indent << "  " << json({{"exps", m.exponents}, {"coef", c}}).dump();
      first = false;
    }
    if (!first) os << "\n" << indent;
    os << "]";
  };
  os << ",\n  \"f1\": ";
  terms(file.problem.f1, "  ");
  os << ",\n  \"f2\": ";
  terms(file.problem.f2, "  ");
  os << ",\n  \"constraints\": [";
  for (std::size_t i = 0; i < file.problem.constraints.size(); ++i) {
    os << (i ? ",\n    " : "\n    ");
    terms(file.problem.constraints[i], "    ");
  }
  os << (file.problem.constraints.empty() ? "]" : "\n  ]");
  os << ",\n  \"box_radius_sq\": " << json(file.problem.box_radius_sq).dump() << "\n}\n";
  return os.str();
}

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace paretosdp
