#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "mellinium/applications.hpp"
#include "mellinium/asymptotics.hpp"
#include "mellinium/corpus.hpp"
#include "mellinium/errors.hpp"
#include "mellinium/mellin_core.hpp"
#include "mellinium/operator_calculus.hpp"
#include "mellinium/special.hpp"
#include "mellinium/strip_algebra.hpp"

namespace mellinium::cli {
namespace {

using json = nlohmann::ordered_json;

// ---- text helpers -------------------------------------------------------------

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text) {
  const std::string t = trim(text);
  std::istringstream in(t);
  in.imbue(std::locale::classic());
  double v = 0.0;
  in >> v;
  if (t.empty() || in.fail() || !in.eof())
    fail(ErrorCode::InvalidArgument, "cannot read a number from '" + text + "'");
  return v;
}

long parse_long(const std::string& text) {
  const double v = parse_double(text);
  if (v != std::floor(v) || std::abs(v) > 1e15)
    fail(ErrorCode::InvalidArgument, "expected an integer, got '" + text + "'");
  return static_cast<long>(v);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string complex_text(Complex z) {
  return format_number(z.real()) + "," + format_number(z.imag());
}

// ---- function descriptors ------------------------------------------------------

struct FnDescriptor {
  std::string name;
  std::map<std::string, double> params;
};

double param(const FnDescriptor& d, const std::string& key) {
  const auto it = d.params.find(key);
  if (it == d.params.end())
    fail(ErrorCode::InvalidArgument, "function '" + d.name + "' needs the parameter " + key);
  return it->second;
}

MellinFunction make_function(const FnDescriptor& d) {
  if (d.name == "exp_decay") return corpus::exp_decay(param(d, "beta"));
  if (d.name == "bose") return corpus::bose();
  if (d.name == "fermi") return corpus::fermi();
  if (d.name == "power_log")
    return corpus::power_log(param(d, "eps"), static_cast<int>(param(d, "k")));
  if (d.name == "heat_kernel")
    return corpus::heat_kernel(static_cast<int>(param(d, "n")), param(d, "distance"));
  if (d.name == "rational_bump") return corpus::rational_bump();
  if (d.name == "reciprocal_shift") return corpus::reciprocal_shift();
  fail(ErrorCode::InvalidArgument, "unknown function '" + d.name + "'");
}

// parameters each corpus entry reads, in output order
std::vector<std::string> parameter_names(const std::string& name) {
  if (name == "exp_decay") return {"beta"};
  if (name == "power_log") return {"eps", "k"};
  if (name == "heat_kernel") return {"n", "distance"};
  return {};
}

void add_fn_inputs(ResultRecord& r, const FnDescriptor& d, const std::string& prefix) {
  r.inputs.emplace_back(prefix, d.name);
  for (const auto& key : parameter_names(d.name))
    r.inputs.emplace_back(prefix + "." + key, format_number(param(d, key)));
}

// ---- options ------------------------------------------------------------------

struct Options {
  std::string command;
  std::string fn;
  double beta = 1.0, eps = 0.0, distance = 1.0;
  int k = 0, n = 3;
  std::string fn2;
  std::vector<std::string> fn2_params;
  std::string kind = "mult";
  std::string alpha;
  std::string norm;
  double rel_tol = 1e-10, abs_tol = 1e-12;
  std::string out = "-";
  std::string format;
  bool hankel = false;
  double x = 1.0;
  std::string c;
  double grid_lo = -8.0, grid_hi = 8.0;
  std::string route;
  std::string matrix_path, spectrum, regulator_path;
  int winding = 0;
  std::string z = "0";
  double h = 1e-3;
  std::string xa, xb;
  std::string transform = "gamma";
  std::string poles;
  std::string side = "zero";
  double radius = 0.25;
  int terms = 12;

  QuadratureConfig quadrature() const {
    QuadratureConfig q;
    q.rel_tol = rel_tol;
    q.abs_tol = abs_tol;
    q.validate();
    return q;
  }

  FnDescriptor first() const {
    require(!fn.empty(), ErrorCode::InvalidArgument, "--fn is required");
    return {fn, {{"beta", beta}, {"eps", eps}, {"k", k}, {"n", n}, {"distance", distance}}};
  }

  FnDescriptor second() const {
    require(!fn2.empty(), ErrorCode::InvalidArgument, "--fn2 is required");
    FnDescriptor d{fn2, {}};
    for (const auto& p : fn2_params) {
      const auto eq = p.find('=');
      require(eq != std::string::npos, ErrorCode::InvalidArgument,
              "--fn2-param expects key=value, got '" + p + "'");
      d.params[trim(p.substr(0, eq))] = parse_double(p.substr(eq + 1));
    }
    return d;
  }

  OperatorSpec op() const {
    require(matrix_path.empty() != spectrum.empty(), ErrorCode::InvalidArgument,
            "give exactly one of --matrix and --spectrum");
    if (!spectrum.empty()) return OperatorSpec::from_spectrum(parse_list(spectrum));
    return OperatorSpec::from_matrix(read_matrix_file(matrix_path));
  }

  void operator_inputs(ResultRecord& r) const {
    if (!spectrum.empty())
      r.inputs.emplace_back("spectrum", spectrum);
    else
      r.inputs.emplace_back("matrix", matrix_path);
  }
};

const std::vector<std::string> kCommands = {
    "transform", "invert", "strip", "convolve", "zeta",   "eta",        "det",      "power",
    "resolvent", "log",    "greens", "asymptotic", "reflection", "key-check"};

bool takes_alpha(const std::string& cmd) {
  return cmd == "transform" || cmd == "convolve" || cmd == "zeta" || cmd == "eta" ||
         cmd == "det" || cmd == "power" || cmd == "resolvent" || cmd == "reflection" ||
         cmd == "key-check";
}

// ---- evaluation ---------------------------------------------------------------

Complex need_alpha(const std::optional<Complex>& alpha) {
  if (!alpha) fail(ErrorCode::InvalidArgument, "--alpha is required");
  return *alpha;
}

void push_matrix(std::vector<ResultRecord>& out, const ResultRecord& base,
                 const Eigen::MatrixXcd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      ResultRecord r = base;
      r.inputs.emplace_back("row", std::to_string(i));
      r.inputs.emplace_back("col", std::to_string(j));
      r.value = m(i, j);
      out.push_back(std::move(r));
    }
}

struct Direct {
  ComplexMap transform;
  std::function<double(double)> function;
};

Direct known_transform(const std::string& name) {
  if (name == "gamma")
    return {[](Complex a) { return gamma(a); }, [](double x) { return std::exp(-x); }};
  if (name == "gamma-zeta")
    return {[](Complex a) { return gamma(a) * riemann_zeta(a); },
            [](double x) { return 1.0 / std::expm1(x); }};
  if (name == "pi-csc")
    return {[](Complex a) { return pi_csc_pi(a); }, [](double x) { return 1.0 / (1.0 + x); }};
  if (name == "bump")
    return {[](Complex a) { return 0.5 * gamma(a + 1.0) * gamma(2.0 - a); },
            [](double x) { return x / ((1.0 + x) * (1.0 + x) * (1.0 + x)); }};
  fail(ErrorCode::InvalidArgument,
       "unknown transform '" + name + "' (gamma, gamma-zeta, pi-csc, bump)");
}

// Fills base first so that a skipped sweep point still reports its inputs.
void evaluate(const Options& o, const std::optional<Complex>& alpha, ResultRecord& base,
              std::vector<ResultRecord>& out) {
  const QuadratureConfig cfg = o.quadrature();
  base.operation = o.command;
  base.alpha = alpha;
  const std::string& cmd = o.command;

  if (cmd == "transform") {
    const FnDescriptor d = o.first();
    add_fn_inputs(base, d, "fn");
    const MellinFunction f = make_function(d);
    const Normalization norm = Normalization::parse(
        o.norm.empty() ? (o.hankel ? "gamma-contour" : "haar") : o.norm);
    base.inputs.emplace_back("contour", o.hankel ? "hankel" : "real-line");
    base.normalization = norm.name();
    base.strip = f.strip();
    const Complex a = need_alpha(alpha);
    const TransformValue tv = o.hankel ? hankel_mellin(f, a, {}, norm, cfg)
                                       : forward_mellin(f, a, norm, cfg);
    ResultRecord r = base;
    r.value = tv.value;
    r.error_estimate = tv.abs_error_estimate;
    out.push_back(r);
  } else if (cmd == "invert") {
    const FnDescriptor d = o.first();
    add_fn_inputs(base, d, "fn");
    const MellinFunction f = make_function(d);
    const double c = o.c.empty() ? f.strip().interior_point().real() : parse_double(o.c);
    base.inputs.emplace_back("x", format_number(o.x));
    base.alpha = Complex(c);
    base.strip = f.strip();
    base.normalization = "haar";
    if (!f.strip().contains(c))
      fail(ErrorCode::StripViolation, "abscissa " + format_number(c) + " outside " +
                                          f.strip().to_string());
    auto F = [&](Complex a) { return forward_mellin(f, a, Normalization::haar(), cfg).value; };
    ResultRecord r = base;
    r.value = inverse_mellin(F, c, o.x, cfg);
    const Complex direct = f(o.x);
    r.inputs.emplace_back("direct", complex_text(direct));
    r.error_estimate = std::abs(*r.value - direct);
    out.push_back(r);
  } else if (cmd == "strip") {
    const FnDescriptor d = o.first();
    add_fn_inputs(base, d, "fn");
    const MellinFunction f = make_function(d);
    base.inputs.emplace_back("declared", f.strip().to_string());
    ResultRecord r = base;
    r.strip = infer_strip(f, default_probe_grid(o.grid_lo, o.grid_hi));
    out.push_back(r);
  } else if (cmd == "convolve") {
    const FnDescriptor d1 = o.first(), d2 = o.second();
    add_fn_inputs(base, d1, "fn");
    add_fn_inputs(base, d2, "fn2");
    require(o.kind == "mult" || o.kind == "star", ErrorCode::InvalidArgument,
            "--kind must be mult or star");
    base.inputs.emplace_back("kind", o.kind);
    const MellinFunction f = make_function(d1), g = make_function(d2);
    const MellinFunction conv = o.kind == "mult" ? mult_convolve(f, g, cfg) : star_convolve(f, g, cfg);
    const Normalization norm = Normalization::parse(o.norm.empty() ? "haar" : o.norm);
    base.normalization = norm.name();
    base.strip = conv.strip();
    const TransformValue tv = forward_mellin(conv, need_alpha(alpha), norm, cfg);
    ResultRecord r = base;
    r.value = tv.value;
    r.error_estimate = tv.abs_error_estimate;
    out.push_back(r);
  } else if (cmd == "zeta") {
    const std::string route = o.route.empty() ? "realline" : o.route;
    require(route == "realline" || route == "hankel", ErrorCode::InvalidArgument,
            "--route must be realline or hankel");
    base.inputs.emplace_back("route", route);
    const bool hankel = route == "hankel";
    base.normalization = hankel ? "gamma-contour" : "gamma";
    base.strip = hankel ? FundamentalStrip(0.0, kInf) : FundamentalStrip(1.0, kInf);
    const TransformValue tv = zeta_value(
        need_alpha(alpha), hankel ? ZetaRepresentation::Hankel : ZetaRepresentation::RealLine, cfg);
    ResultRecord r = base;
    r.value = tv.value;
    r.error_estimate = tv.abs_error_estimate;
    out.push_back(r);
  } else if (cmd == "eta") {
    base.normalization = "gamma";
    base.strip = FundamentalStrip(0.0, kInf);
    const TransformValue tv = eta_value(need_alpha(alpha), cfg);
    ResultRecord r = base;
    r.value = tv.value;
    r.error_estimate = tv.abs_error_estimate;
    out.push_back(r);
  } else if (cmd == "det") {
    o.operator_inputs(base);
    base.inputs.emplace_back("winding", std::to_string(o.winding));
    if (!o.regulator_path.empty()) base.inputs.emplace_back("regulator", o.regulator_path);
    const OperatorSpec op = o.op();
    std::optional<Regulator> reg;
    if (!o.regulator_path.empty()) reg.emplace(read_matrix_file(o.regulator_path));
    const Complex a = alpha.value_or(Complex(1.0));
    base.alpha = a;
    ResultRecord r = base;
    r.value = functional_determinant(op, a, {o.winding}, reg);
    out.push_back(r);
  } else if (cmd == "power" || cmd == "resolvent") {
    o.operator_inputs(base);
    base.inputs.emplace_back("winding", std::to_string(o.winding));
    base.normalization = "gamma";
    const OperatorSpec op = o.op();
    const Complex a = need_alpha(alpha);
    if (cmd == "power") {
      push_matrix(out, base, complex_power(op, a, {o.winding}));
    } else {
      const Complex z = parse_complex(o.z);
      base.inputs.emplace_back("z", complex_text(z));
      push_matrix(out, base, resolvent(op, z, a, {o.winding}));
    }
  } else if (cmd == "log") {
    o.operator_inputs(base);
    base.inputs.emplace_back("h", format_number(o.h));
    push_matrix(out, base, functional_log(o.op(), o.h));
  } else if (cmd == "greens") {
    HeatKernelProblem p;
    if (!o.xa.empty() || !o.xb.empty()) {
      p.x_a = parse_list(o.xa);
      p.x_b = parse_list(o.xb);
      p.n = static_cast<int>(p.x_a.size());
      base.inputs.emplace_back("xa", o.xa);
      base.inputs.emplace_back("xb", o.xb);
    } else {
      p = HeatKernelProblem::at_distance(o.n, o.distance);
      base.inputs.emplace_back("n", std::to_string(o.n));
      base.inputs.emplace_back("distance", format_number(o.distance));
    }
    const std::string route = o.route.empty() ? "closed" : o.route;
    require(route == "closed" || route == "quadrature", ErrorCode::InvalidArgument,
            "--route must be closed or quadrature");
    base.inputs.emplace_back("route", route);
    base.alpha = Complex(1.0);
    base.normalization = "haar";
    base.strip = FundamentalStrip(-kInf, 0.5 * p.n);
    ResultRecord r = base;
    r.value = greens_function(p, route == "closed" ? GreensRoute::ClosedForm : GreensRoute::Quadrature,
                              cfg);
    out.push_back(r);
  } else if (cmd == "asymptotic") {
    const Direct known = known_transform(o.transform);
    require(o.side == "zero" || o.side == "infinity", ErrorCode::InvalidArgument,
            "--side must be zero or infinity");
    base.inputs.emplace_back("transform", o.transform);
    base.inputs.emplace_back("poles", o.poles);
    base.inputs.emplace_back("x", format_number(o.x));
    base.inputs.emplace_back("side", o.side);
    std::vector<Complex> poles;
    for (const auto& tok : split(o.poles, ';'))
      if (!trim(tok).empty()) poles.push_back(parse_complex(tok));
    ResidueConfig rc;
    rc.radius = o.radius;
    ResultRecord r = base;
    r.value = residue_asymptotics(known.transform, poles, o.x,
                                  o.side == "zero" ? Side::AtZero : Side::AtInfinity, rc);
    const double direct = known.function(o.x);
    r.inputs.emplace_back("direct", format_number(direct));
    r.error_estimate = std::abs(*r.value - direct);
    out.push_back(r);
  } else if (cmd == "reflection") {
    base.normalization = "haar";
    base.strip = FundamentalStrip(0.0, 1.0);
    const auto [lhs, rhs] = gamma_reflection(need_alpha(alpha), cfg);
    ResultRecord r = base;
    r.value = lhs;
    r.inputs.emplace_back("closed_form", complex_text(rhs));
    r.error_estimate = std::abs(lhs - rhs);
    out.push_back(r);
  } else if (cmd == "key-check") {
    o.operator_inputs(base);
    base.inputs.emplace_back("terms", std::to_string(o.terms));
    base.normalization = "haar";
    base.strip = FundamentalStrip(0.0, kInf);
    const KeyIdentity k = key_identity_check(o.op(), need_alpha(alpha), o.terms, cfg);
    ResultRecord r = base;
    r.value = k.rhs;
    r.inputs.emplace_back("exp_minus_zeta", complex_text(k.lhs));
    r.error_estimate = k.bound;
    out.push_back(r);
  } else {
    fail(ErrorCode::InvalidArgument, "unknown command '" + cmd + "'");
  }
  for (const ResultRecord& r : out)
    if (r.value && !(std::isfinite(r.value->real()) && std::isfinite(r.value->imag())))
      fail(ErrorCode::QuadratureDivergence, "non-finite result");
}

bool skippable(ErrorCode c) {
  return c == ErrorCode::StripViolation || c == ErrorCode::PoleAtOne ||
         c == ErrorCode::NormalizationPole;
}

struct Outcome {
  std::vector<ResultRecord> records;
  std::optional<MellinError> error;
};

Outcome evaluate_point(const Options& o, const std::optional<Complex>& alpha, bool sweeping) {
  Outcome res;
  ResultRecord base;
  try {
    evaluate(o, alpha, base, res.records);
  } catch (const MellinError& e) {
    if (!(sweeping && skippable(e.code()))) {
      res.error = e;
      return res;
    }
    base.skipped = true;
    base.value.reset();
    res.records = {base};
  }
  return res;
}

// Grid points run on a small pool; results keep grid order.
std::vector<Outcome> evaluate_grid(const Options& o, const std::vector<Complex>& grid) {
  std::vector<Outcome> outcomes(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < grid.size();) {
      try {
        outcomes[i] = evaluate_point(o, grid[i], true);
      } catch (const std::exception& e) {
        outcomes[i].error = MellinError(ErrorCode::InvalidArgument, e.what());
      }
    }
  };
  const std::size_t n_threads =
      std::min<std::size_t>(grid.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return outcomes;
}

void add_function_flags(CLI::App* s, Options& o) {
  s->add_option("--fn", o.fn, "corpus function: exp_decay, bose, fermi, power_log, heat_kernel, "
                              "rational_bump, reciprocal_shift");
  s->add_option("--beta", o.beta, "exp_decay rate");
  s->add_option("--eps", o.eps, "power_log exponent");
  s->add_option("--k", o.k, "power_log log power");
  s->add_option("--n", o.n, "heat_kernel dimension");
  s->add_option("--distance", o.distance, "heat_kernel distance");
}

void add_common_flags(CLI::App* s, Options& o, bool alpha) {
  if (alpha) s->add_option("--alpha", o.alpha, "re[,im]");
  s->add_option("--rel-tol", o.rel_tol);
  s->add_option("--abs-tol", o.abs_tol);
  s->add_option("--out", o.out, "output path (.csv) or - for stdout");
  s->add_option("--format", o.format, "jsonl or csv");
}

void add_operator_flags(CLI::App* s, Options& o) {
  s->add_option("--matrix", o.matrix_path, "matrix file");
  s->add_option("--spectrum", o.spectrum, "e1,e2,... (a..b expands integers)");
}

}  // namespace

// ---- records -------------------------------------------------------------------

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // no negative zero in the output
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_json_line(const ResultRecord& r) {
  auto num = [](double v) {
    require(std::isfinite(v), ErrorCode::InvalidArgument, "non-finite number in a record");
    return format_number(v);
  };
  auto pair = [&](const std::optional<Complex>& z) {
    return z ? "[" + num(z->real()) + ", " + num(z->imag()) + "]" : std::string("null");
  };
  auto edge = [](double v) {
    if (std::isinf(v)) return std::string(v < 0 ? "\"-inf\"" : "\"inf\"");
    return format_number(v);
  };
  std::string s = "{\"operation\": " + json(r.operation).dump() + ", \"inputs\": {";
  for (std::size_t i = 0; i < r.inputs.size(); ++i) {
    if (i) s += ", ";
    s += json(r.inputs[i].first).dump() + ": " + json(r.inputs[i].second).dump();
  }
  s += "}, \"alpha\": " + pair(r.alpha) + ", \"value\": " + pair(r.value) +
       ", \"error_estimate\": " + num(r.error_estimate) + ", \"strip\": ";
  s += r.strip ? "[" + edge(r.strip->left()) + ", " + edge(r.strip->right()) + "]" : "null";
  s += ", \"normalization\": " + json(r.normalization).dump() +
       ", \"skipped\": " + (r.skipped ? "true" : "false") + "}";
  return s;
}

ResultRecord record_from_json(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("bad record: ") + e.what());
  }
  auto complex_of = [](const json& v) -> std::optional<Complex> {
    if (v.is_null()) return std::nullopt;
    return Complex(v.at(0).get<double>(), v.at(1).get<double>());
  };
  auto edge = [](const json& v) {
    if (v.is_string()) return v.get<std::string>() == "-inf" ? -kInf : kInf;
    return v.get<double>();
  };
  try {
    ResultRecord r;
    r.operation = j.at("operation").get<std::string>();
    for (const auto& [key, val] : j.at("inputs").items()) r.inputs.emplace_back(key, val.get<std::string>());
    r.alpha = complex_of(j.at("alpha"));
    r.value = complex_of(j.at("value"));
    r.error_estimate = j.at("error_estimate").get<double>();
    if (!j.at("strip").is_null())
      r.strip = FundamentalStrip(edge(j.at("strip").at(0)), edge(j.at("strip").at(1)));
    r.normalization = j.at("normalization").get<std::string>();
    r.skipped = j.at("skipped").get<bool>();
    return r;
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("record does not match the schema: ") + e.what());
  }
}

std::string csv_header() {
  return "operation,inputs,alpha_re,alpha_im,value_re,value_im,error_estimate,strip_left,"
         "strip_right,normalization,skipped";
}

std::string to_csv_row(const ResultRecord& r) {
  json in = json::object();
  for (const auto& [k, v] : r.inputs) in[k] = v;
  std::string inputs = in.dump();
  std::string quoted = "\"";
  for (char ch : inputs) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  quoted += "\"";
  auto opt = [](const std::optional<Complex>& z, bool imag) {
    return z ? format_number(imag ? z->imag() : z->real()) : std::string();
  };
  auto edge = [](double v) {
    if (std::isinf(v)) return std::string(v < 0 ? "-inf" : "inf");
    return format_number(v);
  };
  std::string s = r.operation + "," + quoted + "," + opt(r.alpha, false) + "," + opt(r.alpha, true) +
                  "," + opt(r.value, false) + "," + opt(r.value, true) + "," +
                  format_number(r.error_estimate) + ",";
  s += r.strip ? edge(r.strip->left()) + "," + edge(r.strip->right()) : std::string(",");
  s += "," + r.normalization + "," + (r.skipped ? "true" : "false");
  return s;
}

// ---- parsers -------------------------------------------------------------------

Complex parse_complex(const std::string& text) {
  const std::string t = trim(text);
  require(!t.empty(), ErrorCode::InvalidArgument, "empty complex number");
  const auto comma = t.find(',');
  if (comma != std::string::npos)
    return {parse_double(t.substr(0, comma)), parse_double(t.substr(comma + 1))};
  const char last = t.back();
  if (last != 'j' && last != 'i') return parse_double(t);
  const std::string body = t.substr(0, t.size() - 1);
  std::size_t cut = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;)
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      cut = i;
      break;
    }
  auto imag = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s);
  };
  if (cut == std::string::npos) return {0.0, imag(body)};
  return {parse_double(body.substr(0, cut)), imag(body.substr(cut))};
}

std::vector<Complex> parse_alpha_grid(const std::string& text) {
  std::string spec = trim(text);
  double im = 0.0;
  const auto comma = spec.find(',');
  if (comma != std::string::npos) {
    im = parse_double(spec.substr(comma + 1));
    spec = spec.substr(0, comma);
  }
  const auto parts = split(spec, ':');
  require(parts.size() == 3, ErrorCode::InvalidArgument,
          "alpha grid must read re_start:re_stop:count[,im]");
  const double a = parse_double(parts[0]), b = parse_double(parts[1]);
  const long count = parse_long(parts[2]);
  require(count >= 1 && count <= 100000, ErrorCode::InvalidArgument,
          "alpha grid count must lie in [1, 100000]");
  std::vector<Complex> grid;
  for (long i = 0; i < count; ++i) {
    const double re = count == 1 ? a : a + (b - a) * static_cast<double>(i) / (count - 1);
    grid.emplace_back(re, im);
  }
  return grid;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  for (const auto& tok : split(text, ',')) {
    const std::string t = trim(tok);
    const auto dots = t.find("..");
    if (dots != std::string::npos) {
      const long a = parse_long(t.substr(0, dots)), b = parse_long(t.substr(dots + 2));
      require(a <= b && b - a < 1000000, ErrorCode::InvalidArgument, "bad range '" + t + "'");
      for (long i = a; i <= b; ++i) v.push_back(static_cast<double>(i));
    } else {
      v.push_back(parse_double(t));
    }
  }
  return v;
}

Eigen::MatrixXcd parse_matrix(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (!toks.empty()) rows.push_back(toks);
  }
  require(!rows.empty() && rows[0].size() == 1, ErrorCode::InvalidArgument,
          "matrix text must start with a line holding d");
  const long d = parse_long(rows[0][0]);
  require(d >= 1 && static_cast<long>(rows.size()) == d + 1, ErrorCode::InvalidArgument,
          "matrix text must hold d rows after the size line");
  Eigen::MatrixXcd m(d, d);
  for (long i = 0; i < d; ++i) {
    require(static_cast<long>(rows[i + 1].size()) == d, ErrorCode::InvalidArgument,
            "matrix row " + std::to_string(i + 1) + " does not have d entries");
    for (long j = 0; j < d; ++j) m(i, j) = parse_complex(rows[i + 1][j]);
  }
  return m;
}

Eigen::MatrixXcd read_matrix_file(const std::string& path) {
  std::ifstream f(path);
  require(static_cast<bool>(f), ErrorCode::InvalidArgument, "cannot open matrix file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_matrix(ss.str());
}

// ---- driver --------------------------------------------------------------------

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = args_in;
  bool sweeping = false;
  std::string grid_spec;
  if (!args.empty() && args[0] == "sweep") {
    sweeping = true;
    args.erase(args.begin());
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--alpha-grid" && i + 1 < args.size()) {
        grid_spec = args[i + 1];
        args.erase(args.begin() + i, args.begin() + i + 2);
        break;
      }
      if (args[i].rfind("--alpha-grid=", 0) == 0) {
        grid_spec = args[i].substr(13);
        args.erase(args.begin() + i);
        break;
      }
    }
    if (grid_spec.empty()) {
      err << "mellinium: sweep needs --alpha-grid re_start:re_stop:count[,im]\n";
      return 1;
    }
    if (args.empty() || !takes_alpha(args[0])) {
      err << "mellinium: sweep needs a subcommand that takes --alpha\n";
      return 1;
    }
  }

  Options o;
  CLI::App app{"Mellin transforms, strip algebra and spectral functions", "mellinium"};
  app.require_subcommand(1);
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : kCommands) subs[name] = app.add_subcommand(name);

  add_function_flags(subs["transform"], o);
  add_common_flags(subs["transform"], o, true);
  subs["transform"]->add_option("--norm", o.norm, "haar|gamma|gamma-p:<p>|gamma-contour|gamma-eta");
  subs["transform"]->add_flag("--hankel", o.hankel, "integrate along a Hankel contour");

  add_function_flags(subs["invert"], o);
  add_common_flags(subs["invert"], o, false);
  subs["invert"]->add_option("--x", o.x, "point at which to reconstruct f")->required();
  subs["invert"]->add_option("--c", o.c, "abscissa of the vertical line");

  add_function_flags(subs["strip"], o);
  add_common_flags(subs["strip"], o, false);
  subs["strip"]->add_option("--grid-lo", o.grid_lo, "lowest probe decade");
  subs["strip"]->add_option("--grid-hi", o.grid_hi, "highest probe decade");

  add_function_flags(subs["convolve"], o);
  add_common_flags(subs["convolve"], o, true);
  subs["convolve"]->add_option("--norm", o.norm);
  subs["convolve"]->add_option("--fn2", o.fn2, "second corpus function");
  subs["convolve"]->add_option("--fn2-param", o.fn2_params, "key=value for --fn2");
  subs["convolve"]->add_option("--kind", o.kind, "mult or star");

  add_common_flags(subs["zeta"], o, true);
  subs["zeta"]->add_option("--route", o.route, "realline or hankel");
  add_common_flags(subs["eta"], o, true);

  for (const char* name : {"det", "power", "resolvent", "log", "key-check"}) {
    add_operator_flags(subs[name], o);
    add_common_flags(subs[name], o, std::string(name) != "log");
  }
  for (const char* name : {"det", "power", "resolvent"})
    subs[name]->add_option("--winding", o.winding, "branch winding n");
  subs["det"]->add_option("--regulator", o.regulator_path, "regulator matrix file");
  subs["resolvent"]->add_option("--z", o.z, "shift re[,im]");
  subs["log"]->set_help_flag("--help", "print help");
  subs["log"]->add_option("--h", o.h, "finite-difference step");
  subs["key-check"]->add_option("--terms", o.terms, "series terms");

  add_common_flags(subs["greens"], o, false);
  subs["greens"]->add_option("--n", o.n, "dimension");
  subs["greens"]->add_option("--distance", o.distance, "|x_a' - x_a|");
  subs["greens"]->add_option("--xa", o.xa, "first point, comma separated");
  subs["greens"]->add_option("--xb", o.xb, "second point, comma separated");
  subs["greens"]->add_option("--route", o.route, "closed or quadrature");

  add_common_flags(subs["asymptotic"], o, false);
  subs["asymptotic"]->add_option("--transform", o.transform, "gamma, gamma-zeta, pi-csc, bump");
  subs["asymptotic"]->add_option("--poles", o.poles, "poles separated by ';'")->required();
  subs["asymptotic"]->add_option("--x", o.x, "evaluation point")->required();
  subs["asymptotic"]->add_option("--side", o.side, "zero or infinity");
  subs["asymptotic"]->add_option("--radius", o.radius, "residue circle radius");

  add_common_flags(subs["reflection"], o, true);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "mellinium: " << e.what() << "\n";
    return 1;
  }
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) o.command = name;

  std::vector<ResultRecord> records;
  try {
    if (sweeping) {
      require(o.alpha.empty(), ErrorCode::InvalidArgument, "sweep takes --alpha-grid, not --alpha");
      const auto grid = parse_alpha_grid(grid_spec);
      for (Outcome& oc : evaluate_grid(o, grid)) {
        if (oc.error) throw *oc.error;
        for (auto& r : oc.records) records.push_back(std::move(r));
      }
    } else {
      std::optional<Complex> alpha;
      if (!o.alpha.empty()) alpha = parse_complex(o.alpha);
      Outcome oc = evaluate_point(o, alpha, false);
      if (oc.error) throw *oc.error;
      records = std::move(oc.records);
    }

    std::string format = o.format;
    if (format.empty())
      format = o.out.size() > 4 && o.out.substr(o.out.size() - 4) == ".csv" ? "csv" : "jsonl";
    require(format == "jsonl" || format == "csv", ErrorCode::InvalidArgument,
            "--format must be jsonl or csv");
    std::string text;
    if (format == "csv") text = csv_header() + "\n";
    for (const auto& r : records) text += (format == "csv" ? to_csv_row(r) : to_json_line(r)) + "\n";
    if (o.out == "-") {
      out << text;
    } else {
      std::ofstream f(o.out);
      require(static_cast<bool>(f), ErrorCode::InvalidArgument, "cannot write '" + o.out + "'");
      f << text;
    }
  } catch (const MellinError& e) {
    err << "mellinium: " << e.what() << "\n";
    return e.kind() == ErrorKind::Validation ? 1 : 2;
  } catch (const std::exception& e) {
    err << "mellinium: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace mellinium::cli
