// Command-line surface: classify subspaces, run flows, and emit verification
// reports. Exit status discipline: 0 = pass, 1 = verification failure,
// 2 = usage/parse error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tpgrass/tpgrass.hpp"

namespace {

using namespace tpgrass;

enum class Mode { automatic, exact, floating };

Mode parse_mode(const std::string& s) {
  if (s == "auto") return Mode::automatic;
  if (s == "exact") return Mode::exact;
  if (s == "float") return Mode::floating;
  throw std::invalid_argument("mode must be one of auto|exact|float");
}

MatrixText read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  return parse_matrix_text(in);
}

std::string resolve_output(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  if (const char* dir = std::getenv("TPGRASS_OUTPUT_DIR"); dir && *dir)
    return std::string(dir) + "/" + path;
  return path;
}

void emit(const std::string& content, const std::string& output) {
  if (output.empty()) {
    std::cout << content;
  } else {
    write_text_file(resolve_output(output), content);
  }
}

IndexSet parse_index_list(const std::string& s) {
  IndexSet I;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty entry in index set: " + s);
    I.push_back(std::stoi(item));
  }
  return I;
}

std::vector<Rational> parse_node_list(const std::string& s) {
  std::vector<Rational> nodes;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) nodes.emplace_back(item);
  return nodes;
}

struct SamplerFlags {
  std::string kind = "vandermonde";
  int N = 0, k = 0;
  std::uint64_t seed = 0;
  std::string nodes;
  std::string index_set;
  int entry_bound = 5;
  double r = 0.1;
  std::string from_spec;

  SamplerSpec to_spec() const {
    if (!from_spec.empty()) {
      std::ifstream in(from_spec);
      if (!in) throw std::invalid_argument("cannot open spec file: " + from_spec);
      ordered_json j = ordered_json::parse(in);
      return spec_from_json(j);
    }
    SamplerSpec spec;
    spec.kind = sampler_kind_from_string(kind);
    spec.N = N;
    spec.k = k;
    spec.seed = seed;
    if (!nodes.empty()) spec.nodes = parse_node_list(nodes);
    if (!index_set.empty()) spec.index_set = parse_index_list(index_set);
    if (spec.index_set.empty() &&
        (spec.kind == SamplerKind::coordinate || spec.kind == SamplerKind::flowed_coordinate)) {
      // default to the leading interval when no index set is given
      for (int v = 1; v <= spec.k; ++v) spec.index_set.push_back(v);
    }
    spec.entry_bound = entry_bound;
    spec.r = r;
    return spec;
  }
};

void add_sampler_flags(CLI::App* cmd, SamplerFlags& f) {
  cmd->add_option("--sampler", f.kind, "vandermonde|coordinate|random_rational|flowed_coordinate|mixed_sign");
  cmd->add_option("--n", f.N, "ambient dimension N");
  cmd->add_option("--k", f.k, "subspace dimension k");
  cmd->add_option("--seed", f.seed, "sampler seed");
  cmd->add_option("--nodes", f.nodes, "comma-separated vandermonde nodes, e.g. 1,3/2,2");
  cmd->add_option("--index-set", f.index_set, "comma-separated index set, e.g. 1,3");
  cmd->add_option("--bound", f.entry_bound, "entry bound for random samplers");
  cmd->add_option("--r", f.r, "flow time for flowed_coordinate");
  cmd->add_option("--from-spec", f.from_spec, "load a sampler spec JSON (overrides other sampler flags)");
}

int emit_and_exit_status(bool pass, const std::string& content, const std::string& output) {
  emit(content, output);
  return pass ? 0 : 1;
}

int cmd_plucker(const std::string& input, const std::string& mode_str, double tol) {
  const Mode mode = parse_mode(mode_str);
  const MatrixText text = read_matrix_file(input);
  const bool use_float = mode == Mode::floating || (mode == Mode::automatic && text.has_decimal);
  std::string out;
  auto render = [&](const auto& subspace) {
    const auto p = plucker_vector(subspace);
    const std::vector<IndexSet> sets = enumerate_index_sets(subspace.N(), subspace.k());
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (i) out += ' ';
      out += format_index_set(sets[i], subspace.N()) + ":" + scalar_to_string(p.coords[i]);
    }
    out += '\n';
  };
  const int N = text.cols(), k = text.rows();
  if (use_float) {
    render(Subspace<double>(Ambient{N, k}, text.to_floating(), tol));
  } else {
    render(Subspace<Rational>(Ambient{N, k}, text.to_exact()));
  }
  std::cout << out;
  return 0;
}

int cmd_classify(const std::string& input, const std::string& mode_str, double tol, const std::string& output) {
  const Mode mode = parse_mode(mode_str);
  const MatrixText text = read_matrix_file(input);
  const bool use_float = mode == Mode::floating || (mode == Mode::automatic && text.has_decimal);
  const int N = text.cols(), k = text.rows();
  Classification cls;
  if (use_float) {
    cls = classify(Subspace<double>(Ambient{N, k}, text.to_floating(), tol));
  } else {
    cls = classify(Subspace<Rational>(Ambient{N, k}, text.to_exact()));
  }
  emit(to_json(cls).dump(2) + "\n", output);
  return 0;  // the verdict is data, not status
}

int cmd_flow(const std::string& input, int N, int k, const std::string& mode_str, const FlowConfig& cfg,
             double tol, const std::string& format, const std::string& output) {
  if (parse_mode(mode_str) == Mode::exact) throw std::invalid_argument("flow requires floating mode");
  const MatrixText text = read_matrix_file(input);
  if (N != 0 && N != text.cols()) throw std::invalid_argument("--n disagrees with the input file");
  if (k != 0 && k != text.rows()) throw std::invalid_argument("--k disagrees with the input file");
  const Subspace<double> E(Ambient{text.cols(), text.rows()}, text.to_floating(), tol);
  const FlowTrace trace = flow_iterate(E, cfg);
  if (format == "csv") {
    emit(to_csv(trace), output);
  } else {
    ordered_json j;
    j["converged_at"] = trace.converged_at ? ordered_json(*trace.converged_at) : ordered_json(nullptr);
    j["rate_estimate"] = trace.rate_estimate ? ordered_json(*trace.rate_estimate) : ordered_json(nullptr);
    j["gap_ratio"] = trace.gap_ratio;
    emit(j.dump(2) + "\n", output);
  }
  return trace.converged_at ? 0 : 1;
}

int cmd_verify(const SamplerFlags& sampler, const std::string& input, const std::string& mode_str,
               const FlowConfig& cfg, double tol, const std::string& output) {
  if (parse_mode(mode_str) == Mode::exact) throw std::invalid_argument("verify requires floating mode");
  Subspace<double> E = [&]() {
    if (!input.empty()) {
      const MatrixText text = read_matrix_file(input);
      return Subspace<double>(Ambient{text.cols(), text.rows()}, text.to_floating(), tol);
    }
    return generate_floating(sampler.to_spec(), tol);
  }();
  const std::string source =
      input.empty() ? "sampler:" + sampler.kind + " seed=" + std::to_string(sampler.seed) : "file:" + input;
  const ConvergenceCertificate cert = verify_convergence(E, cfg, summarize_input(E, source));
  return emit_and_exit_status(cert.pass, to_json(cert).dump(2) + "\n", output);
}

int cmd_suite(int N, int k, int samples, std::uint64_t seed, int jobs, bool inject_fault,
              const std::string& format, const std::string& output) {
  const SuiteReport rep = run_inclusion_suite(N, k, samples, seed, jobs, inject_fault);
  const std::string content = format == "csv" ? to_csv(rep) : to_json(rep).dump(2) + "\n";
  return emit_and_exit_status(rep.pass, content, output);
}

int cmd_sample(const SamplerFlags& sampler, double tol, const std::string& output, const std::string& emit_spec) {
  const SamplerSpec spec = sampler.to_spec();
  std::string content;
  if (is_floating_kind(spec.kind)) {
    content = format_matrix_text(generate_floating(spec, tol).generators());
  } else {
    content = format_matrix_text(generate_exact(spec).generators());
  }
  emit(content, output);
  if (!emit_spec.empty()) write_text_file(resolve_output(emit_spec), spec_to_json(spec).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"totally positive Grassmannian toolkit"};
  app.require_subcommand(1);

  std::string input, output, mode = "auto", format = "json";
  double tol = kDefaultTolerance;
  FlowConfig cfg;
  int N = 0, k = 0, samples = 200, jobs = 1;
  std::uint64_t seed = 0;
  bool inject_fault = false;
  std::string emit_spec;
  SamplerFlags sampler;

  CLI::App* plucker = app.add_subcommand("plucker", "print the Plucker coordinates of a generator matrix");
  plucker->add_option("input", input, "matrix file")->required();
  plucker->add_option("--mode", mode, "auto|exact|float");
  plucker->add_option("--tol", tol, "floating zero tolerance (relative)");

  CLI::App* classify_cmd = app.add_subcommand("classify", "classify a subspace against the positivity loci");
  classify_cmd->add_option("input", input, "matrix file")->required();
  classify_cmd->add_option("--mode", mode, "auto|exact|float");
  classify_cmd->add_option("--tol", tol, "floating zero tolerance (relative)");
  classify_cmd->add_option("--output", output, "write the JSON record here instead of stdout");

  CLI::App* flow = app.add_subcommand("flow", "iterate the positive flow from a start subspace");
  flow->add_option("--start-file,--input", input, "matrix file with the start subspace")->required();
  flow->add_option("--n", N, "ambient dimension (validated against the file)");
  flow->add_option("--k", k, "subspace dimension (validated against the file)");
  flow->add_option("--mode", mode, "must be auto or float");
  flow->add_option("--epsilon", cfg.epsilon, "convergence threshold");
  flow->add_option("--n-max,--steps", cfg.n_max, "iteration cap");
  flow->add_option("--r-step", cfg.r_step, "path sampling granularity");
  flow->add_option("--tol", tol, "floating zero tolerance (relative)");
  flow->add_option("--format", format, "json|csv");
  flow->add_option("--output", output, "output path");

  CLI::App* verify = app.add_subcommand("verify", "certificate: positive start, convergence, sign-safe path");
  add_sampler_flags(verify, sampler);
  verify->add_option("--input", input, "matrix file start (instead of a sampler)");
  verify->add_option("--mode", mode, "must be auto or float");
  verify->add_option("--epsilon", cfg.epsilon, "convergence threshold");
  verify->add_option("--n-max,--steps", cfg.n_max, "iteration cap");
  verify->add_option("--r-step", cfg.r_step, "path sampling granularity");
  verify->add_option("--tol", tol, "floating zero tolerance (relative)");
  verify->add_option("--output", output, "output path");

  CLI::App* suite = app.add_subcommand("suite", "inclusion suite over a mixed sample battery");
  suite->add_option("--n", N, "ambient dimension")->required();
  suite->add_option("--k", k, "subspace dimension")->required();
  suite->add_option("--samples", samples, "number of samples");
  suite->add_option("--seed", seed, "master seed");
  suite->add_option("--jobs", jobs, "worker threads (output independent of this)");
  suite->add_flag("--inject-fault", inject_fault, "append a synthetic failure (testing aid)");
  suite->add_option("--format", format, "json|csv");
  suite->add_option("--output", output, "output path");

  CLI::App* sample = app.add_subcommand("sample", "generate a subspace and print its matrix");
  add_sampler_flags(sample, sampler);
  sample->add_option("--tol", tol, "floating zero tolerance (relative)");
  sample->add_option("--output", output, "output path");
  sample->add_option("--emit-spec", emit_spec, "also write the sampler spec JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*plucker) return cmd_plucker(input, mode, tol);
    if (*classify_cmd) return cmd_classify(input, mode, tol, output);
    if (*flow) return cmd_flow(input, N, k, mode, cfg, tol, format, output);
    if (*verify) return cmd_verify(sampler, input, mode, cfg, tol, output);
    if (*suite) return cmd_suite(N, k, samples, seed, jobs, inject_fault, format, output);
    if (*sample) return cmd_sample(sampler, tol, output, emit_spec);
  } catch (const matrix_parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const hypothesis_not_met& e) {
    std::cerr << "hypothesis not met: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const boundary_contact_error& e) {
    std::cerr << "boundary contact: " << e.what() << "\n";
    return 1;
  } catch (const internal_check_error& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
