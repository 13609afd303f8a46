#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hretract/retraction.hpp"
#include "hretract/serialization.hpp"

namespace hretract::cli {

namespace {

struct HelpRequested {
  std::string text;
};

const std::vector<std::pair<std::string, Command>>& command_names() {
  static const std::vector<std::pair<std::string, Command>> names = {
      {"retract", Command::retract}, {"flow", Command::flow},   {"merge-time", Command::merge_time},
      {"verify", Command::verify},   {"scan", Command::scan}, {"convergence", Command::convergence},
  };
  return names;
}

void add_common(CLI::App& sub, RunSpec& spec, std::size_t& n, double& t) {
  sub.add_option("--space", spec.space, "Backend as kind:dim, e.g. euclidean:2 or hyperboloid:3");
  sub.add_option("--space-file", spec.space_file, "JSON space descriptor (required for trees)");
  sub.add_option("--input", spec.input_file, "JSON file with a set or tuple");
  sub.add_option("--set,--tuple", spec.points, "Inline JSON array of points");
  sub.add_option("--n", n, "Cardinality bound / tuple length");
  sub.add_option("--t", t, "Flow time");
  sub.add_option("--seed", spec.seed, "Sampler seed");
  sub.add_option("--samples", spec.samples, "Samples per check");
  sub.add_option("--k", spec.flow.sweeps, "Sweeps per run");
  sub.add_option("--merge-tol", spec.flow.merge_tolerance, "Merge tolerance relative to delta");
  sub.add_option("--max-doublings", spec.flow.max_doublings, "Maximum doublings of k");
  sub.add_option("--richardson-tol", spec.flow.richardson_tolerance, "Doubling stop tolerance");
  sub.add_option("--perturbation-scale", spec.perturbation_scale, "Near-pair radius as a fraction of delta");
  sub.add_option("--oracle-sweeps", spec.oracle_sweeps, "Oracle powers in the convergence study");
  sub.add_option("--out", spec.out_file, "Write the report here instead of stdout");
  sub.add_option("--trace-csv", spec.trace_csv, "Write the (time,delta,F) trace of a flow");
  sub.add_option("--format", spec.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
}

RunSpec parse_impl(const std::vector<std::string>& args) {
  RunSpec spec;
  std::size_t n = 0;
  double t = -1.0;
  CLI::App app{"Lipschitz retractions of finite subset spaces of Hadamard spaces", "hretract"};
  app.require_subcommand(1);
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (const auto& [name, cmd] : command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    add_common(*sub, spec, n, t);
    subs.emplace_back(sub, cmd);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) throw HelpRequested{app.help()};
    throw ValidationError(e.what());
  }
  for (const auto& [sub, cmd] : subs) {
    if (!sub->parsed()) continue;
    spec.command = cmd;
    if (sub->count("--n") > 0) spec.n = n;
    if (sub->count("--t") > 0) spec.t = t;
  }
  return spec;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path + ": malformed JSON: " + e.what());
  }
}

Json parse_inline(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError("--set: malformed JSON: " + std::string(e.what()));
  }
}

int parse_dim(const std::string& text) {
  std::size_t used = 0;
  int dim = 0;
  try {
    dim = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || used == 0) throw ValidationError("--space: bad dimension '" + text + "'");
  return dim;
}

std::optional<Space> resolve_space(const RunSpec& spec) {
  if (!spec.space_file.empty()) {
    Space s = space_from_json(read_json_file(spec.space_file));
    if (!spec.space.empty() && spec.space.substr(0, spec.space.find(':')) != to_string(s.kind())) {
      throw ValidationError("--space " + spec.space + " disagrees with --space-file");
    }
    return s;
  }
  if (spec.space.empty()) return std::nullopt;
  const auto colon = spec.space.find(':');
  const std::string kind = spec.space.substr(0, colon);
  if (kind == "tree") throw ValidationError("--space tree needs --space-file with the topology");
  if (colon == std::string::npos) throw ValidationError("--space: expected kind:dim, got '" + spec.space + "'");
  const int dim = parse_dim(spec.space.substr(colon + 1));
  if (kind == "euclidean") return Space::euclidean(dim);
  if (kind == "hyperboloid") return Space::hyperboloid(dim);
  throw ValidationError("--space: unknown kind '" + kind + "'");
}

Space require_space(const RunSpec& spec) {
  auto s = resolve_space(spec);
  if (!s) throw ValidationError("missing --space or --space-file");
  return *s;
}

// Input document: a bare points array (space from flags) or an object with
// "space" and "points"/"coords".
struct Input {
  Space space;
  Json points;
};

Input load_input(const RunSpec& spec) {
  if (spec.points.empty() && spec.input_file.empty()) throw ValidationError("missing --set/--tuple or --input");
  if (!spec.points.empty() && !spec.input_file.empty()) throw ValidationError("give either --set or --input, not both");
  const Json doc = spec.input_file.empty() ? parse_inline(spec.points) : read_json_file(spec.input_file);
  if (doc.is_array()) return {require_space(spec), doc};
  if (!doc.is_object()) throw ValidationError("input: expected a points array or an object");
  const auto flag_space = resolve_space(spec);
  Space space = doc.contains("space") ? space_from_json(doc.at("space")) : require_space(spec);
  if (flag_space && !(*flag_space == space)) throw ValidationError("input: space disagrees with --space");
  for (const char* key : {"points", "coords"}) {
    if (doc.contains(key)) return {space, doc.at(key)};
  }
  throw ValidationError("input: missing field 'points'");
}

ScanConfig scan_config(const RunSpec& spec) {
  ScanConfig cfg;
  if (auto s = resolve_space(spec)) cfg.space = *s;
  if (spec.n) cfg.n = *spec.n;
  cfg.samples = spec.samples;
  cfg.seed = spec.seed;
  cfg.flow = spec.flow;
  cfg.perturbation_scale = spec.perturbation_scale;
  cfg.oracle_sweeps = spec.oracle_sweeps;
  cfg.validate();
  return cfg;
}

void write_text(const RunSpec& spec, std::ostream& out, const std::string& text) {
  if (spec.out_file.empty()) {
    out << text;
    return;
  }
  std::ofstream file(spec.out_file);
  if (!file) throw ValidationError("cannot write " + spec.out_file);
  file << text;
}

void write_json(const RunSpec& spec, std::ostream& out, const Json& j) { write_text(spec, out, j.dump(2) + "\n"); }

int finish_scan(const RunSpec& spec, std::ostream& out, std::ostream& err, const ScanReport& report) {
  if (spec.format == "csv") {
    write_text(spec, out, scan_report_to_csv(report));
  } else {
    write_json(spec, out, scan_report_to_json(report));
  }
  if (report.pass()) return kOk;
  for (const auto& c : report.checks) {
    if (!c.pass) err << "FAIL " << c.name << ": worst " << c.worst << " > " << c.threshold << "\n";
  }
  return kVerificationFailed;
}

int execute(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  switch (spec.command) {
    case Command::retract: {
      const Input in = load_input(spec);
      const FiniteSubset a = subset_from_points_json(in.space, in.points);
      const std::size_t n = spec.n.value_or(a.size());
      write_json(spec, out, retract_report_to_json(retract(a, n, spec.flow)));
      return kOk;
    }
    case Command::flow: {
      if (!spec.t) throw ValidationError("flow needs --t");
      const Input in = load_input(spec);
      const Tuple x = tuple_from_points_json(in.space, in.points);
      const FlowReport report = flow_adaptive(x, *spec.t, spec.flow);
      if (!spec.trace_csv.empty()) {
        std::ofstream file(spec.trace_csv);
        if (!file) throw ValidationError("cannot write " + spec.trace_csv);
        file << trace_to_csv(report.trace);
      }
      write_json(spec, out, flow_report_to_json(report));
      return kOk;
    }
    case Command::merge_time: {
      const Input in = load_input(spec);
      const Tuple x = tuple_from_points_json(in.space, in.points);
      const MergeResult m = merge_time(x, spec.flow);
      write_json(spec, out,
                 Json{{"time", m.time}, {"sweeps", m.sweeps}, {"forced", m.forced}, {"merged", tuple_to_json(m.merged)}});
      return kOk;
    }
    case Command::verify:
      return finish_scan(spec, out, err, bound_suite(scan_config(spec)));
    case Command::scan:
      return finish_scan(spec, out, err, lipschitz_scan(scan_config(spec)));
    case Command::convergence: {
      const double t = spec.t.value_or(0.1);
      if (!(t >= 0.0)) throw ValidationError("--t must be >= 0");
      return finish_scan(spec, out, err, convergence_study(scan_config(spec), t));
    }
  }
  return kInvalidInput;
}

}  // namespace

RunSpec parse_args(const std::vector<std::string>& args) {
  try {
    return parse_impl(args);
  } catch (const HelpRequested&) {
    throw ValidationError("help requested");
  }
}

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    return execute(spec, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kInvalidInput;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunSpec spec;
  try {
    spec = parse_impl(args);
  } catch (const HelpRequested& h) {
    out << h.text;
    return kOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return run(spec, out, err);
}

}  // namespace hretract::cli
