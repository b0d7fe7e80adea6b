// dqk: command line front end.  Every subcommand reads JSON (or flags), writes
// JSON or CSV, and exits with 0 on success, 1 on a domain error and 2 on a
// parse or schema error.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "dqk/dqk.hpp"
#include "dqk/io.hpp"

namespace {

using dqk::io::Json;

enum class ScalarMode { Rational, Gaussian, Float };

struct Options {
  ScalarMode mode = ScalarMode::Gaussian;
  double tolerance = dqk::kDefaultTolerance;
  std::string out;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dqk::ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return dqk::io::parse(buf.str(), path);
}

// Applies --scalar to every scalar string of the input tree.  Strings that are
// not scalars (labels, kinds) pass through untouched.
void apply_scalar_mode(Json& j, const Options& opt, const std::string& where = "") {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) apply_scalar_mode(it.value(), opt, where + "/" + it.key());
  } else if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k) apply_scalar_mode(j[k], opt, where + "/" + std::to_string(k));
  } else if (j.is_string()) {
    dqk::Scalar s;
    try {
      s = dqk::io::scalar_from_json(j, where);
    } catch (const dqk::ParseError&) {
      return;
    }
    if (opt.mode == ScalarMode::Rational && !s.is_real())
      throw dqk::ParseError(where + ": non-real scalar \"" + j.get<std::string>() + "\" with --scalar rational");
    if (opt.mode == ScalarMode::Float) j = dqk::io::to_json(s.promoted(dqk::ScalarKind::Float, opt.tolerance));
  } else if (j.is_number() && opt.mode != ScalarMode::Float) {
    throw dqk::ParseError(where + ": floating point input requires --scalar float");
  }
}

Json load(const std::string& path, const Options& opt) {
  Json j = read_json_file(path);
  apply_scalar_mode(j, opt);
  return j;
}

dqk::Scalar scalar_arg(const std::string& text, const Options& opt, const std::string& name) {
  Json j = text;
  apply_scalar_mode(j, opt, name);
  return dqk::io::scalar_from_json(j, name, opt.tolerance);
}

std::vector<dqk::Scalar> scalar_list_arg(const std::string& text, const Options& opt, const std::string& name) {
  std::vector<dqk::Scalar> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (opt.mode == ScalarMode::Float) {
      try {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used == item.size()) {
          out.push_back(dqk::Scalar::complex_float(v, 0.0, opt.tolerance));
          continue;
        }
      } catch (const std::exception&) {
      }
    }
    out.push_back(scalar_arg(item, opt, name));
  }
  return out;
}

void emit(const std::string& text, const Options& opt) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out);
  if (!f) throw dqk::DomainError("cannot write " + opt.out);
  f << text;
}

void emit_json(const Json& j, const Options& opt) { emit(j.dump(2) + "\n", opt); }

// ---------------------------------------------------------------------------

void cmd_classify(const std::string& file, const Options& opt) {
  Json j = load(file, opt);
  const Json& pts = j.is_object() && j.contains("points") ? j["points"] : j;
  if (!pts.is_array() || pts.size() != 4) throw dqk::ParseError(file + ": expected a list of four points");
  const dqk::Subspace u = dqk::io::subspace_from_json(pts, file, opt.tolerance);
  if (u.ambient() != 8) throw dqk::ParseError(file + ": points must be dual quaternions");
  emit_json(dqk::io::to_json(dqk::classify(u)), opt);
}

void cmd_dyad(const std::string& file, const std::string& kind, const Options& opt) {
  Json j = load(file, opt);
  dqk::DyadSpec spec = dqk::io::dyad_spec_from_json(j, file);
  if (!kind.empty()) spec.kind = dqk::dyad_kind_from_string(kind);
  const dqk::ConstraintVariety v = dqk::build_variety(spec);
  Json out = dqk::io::to_json(v);
  out["classification"] = dqk::io::to_json(dqk::classify(v.space));
  emit_json(out, opt);
}

void cmd_factor(const std::string& file, const Options& opt) {
  const dqk::Matrix t = dqk::io::transform_from_json(load(file, opt), file);
  const auto [l, r] = dqk::factor_transform(t);
  Json out = Json::object();
  out["l"] = dqk::io::to_json(l);
  out["r"] = dqk::io::to_json(r);
  emit_json(out, opt);
}

void cmd_verify(const std::string& file, const Options& opt) {
  const dqk::Matrix t = dqk::io::transform_from_json(load(file, opt), file);
  emit_json(dqk::io::to_json(dqk::verify_admissible(t)), opt);
}

struct TraceArgs {
  std::string darboux, mannheim, motion_file, point;
  std::size_t samples = 9;
  std::string t_min = "-2", t_max = "2";
};

void cmd_trace(const TraceArgs& a, const Options& opt) {
  const int given = !a.darboux.empty() + !a.mannheim.empty() + !a.motion_file.empty();
  if (given != 1) throw dqk::ParseError("trace needs exactly one of --darboux, --mannheim, --motion");
  dqk::MotionPoly m;
  if (!a.motion_file.empty()) {
    m = dqk::io::motion_from_json(load(a.motion_file, opt), a.motion_file);
  } else {
    const auto abc = scalar_list_arg(a.darboux.empty() ? a.mannheim : a.darboux, opt, "motion parameters");
    if (abc.size() != 3) throw dqk::ParseError("motion parameters: expected a,b,c");
    m = a.darboux.empty() ? dqk::mannheim(abc[0], abc[1], abc[2]) : dqk::darboux(abc[0], abc[1], abc[2]);
  }
  const auto coords = scalar_list_arg(a.point, opt, "--point");
  if (coords.size() != 4) throw dqk::ParseError("--point: expected x0,x1,x2,x3");
  if (dqk::is_zero(coords)) throw dqk::ParseError("--point: the zero vector is not a point");
  if (a.samples < 2) throw dqk::ParseError("--samples must be at least 2");
  const dqk::Trajectory tr = dqk::trajectory(m, dqk::ProjPoint(coords));

  const dqk::Scalar lo = scalar_arg(a.t_min, opt, "--t-min"), hi = scalar_arg(a.t_max, opt, "--t-max");
  std::ostringstream csv;
  csv << "t,x0,x1,x2,x3\n";
  for (std::size_t k = 0; k < a.samples; ++k) {
    const dqk::Scalar t = lo + (hi - lo) * dqk::Scalar(static_cast<long>(k)) / dqk::Scalar(static_cast<long>(a.samples - 1));
    dqk::Vector x{tr.components[0](t), tr.components[1](t), tr.components[2](t), tr.components[3](t)};
    if (!x[0].is_zero()) {
      const dqk::Scalar w = x[0];
      for (auto& s : x) s = s / w;
    }
    csv << t.to_string();
    for (const auto& s : x) csv << ',' << s.to_string();
    csv << '\n';
  }
  csv << "# degree=" << tr.degree << '\n';
  emit(csv.str(), opt);
}

void cmd_darboux(const std::string& a, const std::string& b, const std::string& c, bool inverse, const Options& opt) {
  const dqk::DarbouxReport rep =
      dqk::darboux_invariants(scalar_arg(a, opt, "--a"), scalar_arg(b, opt, "--b"), scalar_arg(c, opt, "--c"), inverse);
  emit_json(dqk::io::to_json(rep), opt);
}

void cmd_reconstruct(const std::string& file, const Options& opt) {
  const dqk::ReconstructionProblem p = dqk::io::reconstruction_problem_from_json(load(file, opt), file);
  emit_json(dqk::io::to_json(dqk::reconstruct_quadrilateral(p)), opt);
}

void cmd_example2(const Options& opt) { emit_json(dqk::io::to_json(dqk::example2_checks()), opt); }

int run(int argc, char** argv) {
  CLI::App app{"Dual quaternion kinematics: classification, construction, factorization, tracing and reconstruction"};
  app.require_subcommand(1);
  Options opt;
  std::string scalar = "gaussian";
  app.add_option("--scalar", scalar, "scalar field for inputs")
      ->check(CLI::IsMember({"rational", "gaussian", "float"}))
      ->capture_default_str();
  app.add_option("--tolerance", opt.tolerance, "comparison tolerance of float scalars")->capture_default_str();
  app.add_option("--out", opt.out, "write the result to this file instead of stdout");

  std::function<void()> action;

  std::string file;
  auto* classify = app.add_subcommand("classify", "classify the three-space spanned by four points");
  classify->add_option("file", file, "JSON list of four dual quaternions")->required();
  classify->callback([&] { action = [&] { cmd_classify(file, opt); }; });

  std::string kind;
  auto* dyad = app.add_subcommand("dyad", "build the constraint variety of a dyad");
  dyad->add_option("file", file, "JSON dyad specification {kind, h1, h2, base?}")->required();
  dyad->add_option("--kind", kind, "override the kind of the specification")->check(CLI::IsMember({"RR", "RP", "PR", "C"}));
  dyad->callback([&] { action = [&] { cmd_dyad(file, kind, opt); }; });

  auto* factor = app.add_subcommand("factor-transform", "write an admissible 8x8 matrix as x -> l x r");
  factor->add_option("file", file, "JSON 8x8 matrix")->required();
  factor->callback([&] { action = [&] { cmd_factor(file, opt); }; });

  auto* verify = app.add_subcommand("verify-transform", "check the admissibility conditions of an 8x8 matrix");
  verify->add_option("file", file, "JSON 8x8 matrix")->required();
  verify->callback([&] { action = [&] { cmd_verify(file, opt); }; });

  TraceArgs trace_args;
  auto* trace = app.add_subcommand("trace", "sample the trajectory of a point under a rational motion");
  trace->add_option("--darboux", trace_args.darboux, "Darboux motion a,b,c");
  trace->add_option("--mannheim", trace_args.mannheim, "Mannheim motion a,b,c");
  trace->add_option("--motion", trace_args.motion_file, "JSON motion polynomial {coefficients: [...]}");
  trace->add_option("--point", trace_args.point, "homogeneous point x0,x1,x2,x3")->required();
  trace->add_option("--samples", trace_args.samples, "number of parameter values")->capture_default_str();
  trace->add_option("--t-min", trace_args.t_min, "first parameter value")->capture_default_str();
  trace->add_option("--t-max", trace_args.t_max, "last parameter value")->capture_default_str();
  trace->callback([&] { action = [&] { cmd_trace(trace_args, opt); }; });

  std::string a, b, c;
  bool inverse = false;
  auto* darboux = app.add_subcommand("darboux", "invariants of a Darboux motion");
  darboux->add_option("--a", a)->required();
  darboux->add_option("--b", b)->required();
  darboux->add_option("--c", c)->required();
  darboux->add_flag("--mannheim", inverse, "report the inverse (Mannheim) motion instead");
  darboux->callback([&] { action = [&] { cmd_darboux(a, b, c, inverse, opt); }; });

  auto* reconstruct = app.add_subcommand("reconstruct", "recover a quadrilateral on a quadric from its projection");
  reconstruct->add_option("file", file, "JSON reconstruction problem")->required();
  reconstruct->callback([&] { action = [&] { cmd_reconstruct(file, opt); }; });

  auto* example2 = app.add_subcommand("example2", "check the three claims about the complex C-like three-space");
  example2->callback([&] { action = [&] { cmd_example2(opt); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  opt.mode = scalar == "rational" ? ScalarMode::Rational : scalar == "float" ? ScalarMode::Float : ScalarMode::Gaussian;

  try {
    action();
  } catch (const dqk::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const dqk::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
