#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "tpgrass/flow.hpp"
#include "tpgrass/matrix_io.hpp"
#include "tpgrass/membership.hpp"
#include "tpgrass/samplers.hpp"

namespace tpgrass {

using ordered_json = nlohmann::ordered_json;

// Where a verified subspace came from, echoed into reports.
struct InputSummary {
  int N = 0, k = 0;
  std::string source;              // "file:...", "sampler:vandermonde seed=7", ...
  std::vector<std::string> rows;   // generator rows in matrix text form
};

template <typename T>
InputSummary summarize_input(const Subspace<T>& E, std::string source) {
  InputSummary s;
  s.N = E.N();
  s.k = E.k();
  s.source = std::move(source);
  for (int i = 0; i < E.k(); ++i) {
    std::string row;
    for (int j = 0; j < E.N(); ++j) {
      if (j) row += ' ';
      row += scalar_to_string(E.generators()(i, j));
    }
    s.rows.push_back(std::move(row));
  }
  return s;
}

struct PathPoint {
  double r = 0.0;
  bool all_nonzero = false;
  double min_margin = 0.0;
};

// Numerical certificate for one flow run: the start classifies strictly
// positive, the iterated flow converges to the fixed subspace, and the sampled
// continuous path r -> g_r E never loses a Plucker sign. The path grid is the
// sampling surrogate for the continuity argument; the grid is recorded so a
// skeptic can refine it.
struct ConvergenceCertificate {
  InputSummary input;
  Classification initial;
  FlowTrace trace;
  int n0 = 0;  // first step with positive classification; 0 when already positive
  std::vector<PathPoint> path_check;
  bool pass = false;
  std::string reason;
};

inline ConvergenceCertificate verify_convergence(const Subspace<double>& E, const FlowConfig& cfg,
                                                 InputSummary input) {
  check_flow_config(cfg);
  ConvergenceCertificate cert;
  cert.input = std::move(input);
  cert.initial = classify(E);
  if (!cert.initial.positive)
    throw hypothesis_not_met("verify_convergence: start must classify strictly positive");
  cert.n0 = 0;

  cert.trace = flow_iterate(E, cfg);

  const double tol = E.tolerance();
  const double r_max = std::max(1.0, static_cast<double>(cert.trace.converged_at.value_or(cfg.n_max)));
  const Matrix<double> g_step_t = flow_matrix(E.N(), cfg.r_step).transpose();
  Matrix<double> cur = detail::orthonormalize_rows(E.generators());
  bool path_ok = true;
  double offending_r = 0.0;
  for (int i = 0;; ++i) {
    const double r = i * cfg.r_step;
    if (r > r_max + 1e-12) break;
    const std::vector<double> minors = maximal_minors(cur);
    const double scale = detail::plucker_scale(minors);
    PathPoint pt;
    pt.r = r;
    pt.min_margin = plucker_margin(PluckerVector<double>{E.ambient(), minors});
    pt.all_nonzero = true;
    for (double c : minors)
      if (detail::coord_is_zero(c, scale, tol)) {
        pt.all_nonzero = false;
        break;
      }
    cert.path_check.push_back(pt);
    if (!pt.all_nonzero && path_ok) {
      path_ok = false;
      offending_r = r;
    }
    cur = detail::orthonormalize_rows(cur * g_step_t);
  }

  if (!cert.trace.converged_at) {
    cert.pass = false;
    cert.reason = "flow did not converge within n_max";
  } else if (!path_ok) {
    cert.pass = false;
    cert.reason = "boundary contact on the path grid at r=" + scalar_to_string(offending_r);
  } else {
    cert.pass = true;
  }
  return cert;
}

struct ClosureItem {
  double r = 0.0;
  bool positive = false;
  double margin = 0.0;
  double distance = 0.0;  // to the unflowed coordinate subspace
};

struct ClosureReport {
  int N = 0, k = 0;
  IndexSet index_set;
  std::vector<ClosureItem> items;
  bool distances_decreasing = false;
  bool pass = false;
};

// Flow a boundary point by each r in a decreasing list: every image must be
// strictly positive, and the images must march back to the boundary point as
// r drops. Classification runs at tolerance 0: these Plucker coordinates span
// magnitudes down to r^(k(N-k)) and are computed cancellation-free, so strict
// floating signs are the right test and a relative threshold would misread the
// graded tail as zero.
inline ClosureReport verify_closure(const IndexSet& I, int N, const std::vector<double>& r_list) {
  ClosureReport rep;
  rep.N = N;
  rep.k = static_cast<int>(I.size());
  rep.index_set = I;
  if (r_list.empty()) throw std::invalid_argument("verify_closure: empty r list");
  for (std::size_t i = 0; i < r_list.size(); ++i) {
    if (!(r_list[i] > 0.0)) throw std::invalid_argument("verify_closure: r values must be positive");
    if (i && !(r_list[i] < r_list[i - 1])) throw std::invalid_argument("verify_closure: r values must decrease");
  }
  const Subspace<double> boundary = coordinate_subspace<double>(I, N, 0.0);
  bool all_positive = true;
  for (double r : r_list) {
    const Subspace<double> flowed = flowed_coordinate_subspace(I, N, r);
    const PluckerVector<double> p = plucker_vector(flowed);
    ClosureItem item;
    item.r = r;
    item.positive = sign_classify(p, 0.0).positive;
    item.margin = plucker_margin(p);
    item.distance = grassmann_distance(flowed, boundary);
    all_positive = all_positive && item.positive;
    rep.items.push_back(item);
  }
  rep.distances_decreasing = true;
  for (std::size_t i = 1; i < rep.items.size(); ++i)
    if (!(rep.items[i].distance < rep.items[i - 1].distance)) rep.distances_decreasing = false;
  rep.pass = all_positive && rep.distances_decreasing;
  return rep;
}

struct SuiteSample {
  int index = 0;
  std::string kind;
  Classification cls;
};

struct SuiteFailure {
  int index = 0;
  std::string kind;
  std::string check;
  std::string detail;
};

struct SuiteCounts {
  int positive_implies_nonzero = 0;  // positive-locus inclusion checks run
  int nonzero_implies_generic = 0;   // genericity inclusion checks run
  int rank_minor_equivalence = 0;    // definition vs minor-criterion comparisons
  int source_contracts = 0;          // per-sampler guaranteed classifications
};

struct SuiteReport {
  int N = 0, k = 0;
  int num_samples = 0;
  std::uint64_t seed = 0;
  SuiteCounts counts;
  std::vector<SuiteSample> samples;
  std::vector<SuiteFailure> failures;
  bool pass = false;
};

namespace detail {

struct SuiteSampleOutcome {
  SuiteSample sample;
  std::vector<SuiteFailure> failures;
};

inline SuiteSampleOutcome run_suite_sample(int N, int k, std::uint64_t seed, int index,
                                           const std::vector<IndexSet>& coordinate_sets) {
  SuiteSampleOutcome out;
  out.sample.index = index;
  const std::uint64_t sample_seed = split_seed(seed, static_cast<std::uint64_t>(index));
  SamplerKind kind;
  switch (index % 4) {
    case 0: kind = SamplerKind::vandermonde; break;
    case 1: kind = SamplerKind::random_rational; break;
    case 2: kind = SamplerKind::mixed_sign; break;
    default: kind = SamplerKind::coordinate; break;
  }
  out.sample.kind = to_string(kind);
  auto fail = [&](const std::string& check, const std::string& detail) {
    out.failures.push_back(SuiteFailure{index, out.sample.kind, check, detail});
  };
  try {
    SamplerSpec spec;
    spec.kind = kind;
    spec.N = N;
    spec.k = k;
    spec.seed = sample_seed;
    if (kind == SamplerKind::coordinate)
      spec.index_set = coordinate_sets[(static_cast<std::size_t>(index) / 4) % coordinate_sets.size()];
    const Subspace<Rational> E = generate_exact(spec);
    const Classification cls = classify(E);
    out.sample.cls = cls;

    if (cls.positive && !cls.all_nonzero) fail("positive_implies_nonzero", "positive sample with a vanishing coordinate");
    if (cls.all_nonzero && !cls.generic)
      fail("nonzero_implies_generic", "all-nonzero sample failed " + (cls.failed_condition ? cls.failed_condition->to_string() : std::string("?")));

    const TransversalityResult tr = transversality_scan(E);
    if (tr.transverse != cls.all_nonzero) fail("rank_minor_equivalence", "rank and minor verdicts disagree");
    if (tr.witness) {
      const PluckerVector<Rational> p = plucker_vector(E);
      if (p.at(complement(*tr.witness, N)) != 0)
        fail("rank_minor_equivalence", "witness does not pair with a vanishing coordinate");
    }

    switch (kind) {
      case SamplerKind::vandermonde:
        if (!cls.positive) fail("source_contract", "vandermonde sample not positive");
        break;
      case SamplerKind::coordinate:
        if (!cls.nonnegative || cls.positive) fail("source_contract", "coordinate sample not boundary-nonnegative");
        break;
      case SamplerKind::mixed_sign:
        if (!cls.all_nonzero || cls.positive) fail("source_contract", "mixed-sign sample has wrong sign pattern");
        break;
      default: break;
    }
  } catch (const std::exception& e) {
    fail("pipeline", e.what());
  }
  return out;
}

}  // namespace detail

// Classify a mixed battery of samples and check the inclusion structure on each:
// positive stays all-nonzero, all-nonzero stays generic, and the rank-based
// transversality verdict matches the minor-based one witness-for-witness.
// Failures are data, not exceptions. `jobs` parallelizes over samples; assembly
// is by sample index, so output does not depend on the job count.
inline SuiteReport run_inclusion_suite(int N, int k, int num_samples, std::uint64_t seed, int jobs = 1,
                                       bool inject_fault = false) {
  check_ambient(Ambient{N, k});
  if (num_samples < 1) throw std::invalid_argument("run_inclusion_suite: num_samples must be >= 1");
  if (jobs < 1) throw std::invalid_argument("run_inclusion_suite: jobs must be >= 1");
  SuiteReport rep;
  rep.N = N;
  rep.k = k;
  rep.num_samples = num_samples;
  rep.seed = seed;

  const std::vector<IndexSet> coordinate_sets = enumerate_index_sets(N, k);
  std::vector<detail::SuiteSampleOutcome> outcomes(static_cast<std::size_t>(num_samples));
  auto worker = [&](int begin, int step) {
    for (int i = begin; i < num_samples; i += step)
      outcomes[static_cast<std::size_t>(i)] = detail::run_suite_sample(N, k, seed, i, coordinate_sets);
  };
  if (jobs == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker, t, jobs);
    for (std::thread& t : threads) t.join();
  }

  for (detail::SuiteSampleOutcome& o : outcomes) {
    rep.counts.positive_implies_nonzero += 1;
    rep.counts.nonzero_implies_generic += 1;
    rep.counts.rank_minor_equivalence += 1;
    if (o.sample.kind != to_string(SamplerKind::random_rational)) rep.counts.source_contracts += 1;
    rep.samples.push_back(std::move(o.sample));
    for (SuiteFailure& f : o.failures) rep.failures.push_back(std::move(f));
  }
  if (inject_fault)
    rep.failures.push_back(SuiteFailure{-1, "injected", "fault_injection", "synthetic failure for pipeline testing"});
  rep.pass = rep.failures.empty();
  return rep;
}

// --- serialization ---------------------------------------------------------

inline ordered_json to_json(const Classification& c) {
  ordered_json j;
  j["positive"] = c.positive;
  j["nonnegative"] = c.nonnegative;
  j["all_nonzero"] = c.all_nonzero;
  j["generic"] = c.generic;
  j["failed_condition"] = c.failed_condition ? ordered_json(c.failed_condition->to_string()) : ordered_json(nullptr);
  j["witness"] = c.witness ? ordered_json(*c.witness) : ordered_json(nullptr);
  j["margin"] = c.margin;
  return j;
}

inline ordered_json to_json(const FlowTrace& t) {
  ordered_json j;
  ordered_json steps = ordered_json::array();
  for (const FlowStep& s : t.steps) {
    ordered_json row;
    row["n"] = s.n;
    row["distance"] = s.distance;
    row["min_margin"] = s.min_margin;
    row["sign_ok"] = s.sign_ok;
    steps.push_back(std::move(row));
  }
  j["steps"] = std::move(steps);
  j["converged_at"] = t.converged_at ? ordered_json(*t.converged_at) : ordered_json(nullptr);
  j["rate_estimate"] = t.rate_estimate ? ordered_json(*t.rate_estimate) : ordered_json(nullptr);
  j["gap_ratio"] = t.gap_ratio;
  return j;
}

inline ordered_json to_json(const ConvergenceCertificate& c) {
  ordered_json j;
  ordered_json input;
  input["n"] = c.input.N;
  input["k"] = c.input.k;
  input["source"] = c.input.source;
  input["rows"] = c.input.rows;
  j["input"] = std::move(input);
  j["classification"] = to_json(c.initial);
  j["trace"] = to_json(c.trace);
  j["n0"] = c.n0;
  ordered_json path = ordered_json::array();
  for (const PathPoint& p : c.path_check) {
    ordered_json row;
    row["r"] = p.r;
    row["all_nonzero"] = p.all_nonzero;
    row["min_margin"] = p.min_margin;
    path.push_back(std::move(row));
  }
  j["path_check"] = std::move(path);
  j["verdict"] = c.pass ? "pass" : "fail";
  j["reason"] = c.reason;
  return j;
}

inline ordered_json to_json(const ClosureReport& r) {
  ordered_json j;
  j["n"] = r.N;
  j["k"] = r.k;
  j["index_set"] = r.index_set;
  ordered_json items = ordered_json::array();
  for (const ClosureItem& it : r.items) {
    ordered_json row;
    row["r"] = it.r;
    row["positive"] = it.positive;
    row["margin"] = it.margin;
    row["distance"] = it.distance;
    items.push_back(std::move(row));
  }
  j["items"] = std::move(items);
  j["distances_decreasing"] = r.distances_decreasing;
  j["verdict"] = r.pass ? "pass" : "fail";
  return j;
}

inline ordered_json to_json(const SuiteReport& r) {
  ordered_json j;
  j["n"] = r.N;
  j["k"] = r.k;
  j["num_samples"] = r.num_samples;
  j["seed"] = r.seed;
  ordered_json counts;
  counts["positive_implies_nonzero"] = r.counts.positive_implies_nonzero;
  counts["nonzero_implies_generic"] = r.counts.nonzero_implies_generic;
  counts["rank_minor_equivalence"] = r.counts.rank_minor_equivalence;
  counts["source_contracts"] = r.counts.source_contracts;
  j["counts"] = std::move(counts);
  ordered_json samples = ordered_json::array();
  for (const SuiteSample& s : r.samples) {
    ordered_json row;
    row["index"] = s.index;
    row["kind"] = s.kind;
    row["classification"] = to_json(s.cls);
    samples.push_back(std::move(row));
  }
  j["samples"] = std::move(samples);
  ordered_json failures = ordered_json::array();
  for (const SuiteFailure& f : r.failures) {
    ordered_json row;
    row["index"] = f.index;
    row["kind"] = f.kind;
    row["check"] = f.check;
    row["detail"] = f.detail;
    failures.push_back(std::move(row));
  }
  j["failures"] = std::move(failures);
  j["verdict"] = r.pass ? "pass" : "fail";
  return j;
}

inline ordered_json spec_to_json(const SamplerSpec& s) {
  ordered_json j;
  j["kind"] = to_string(s.kind);
  j["n"] = s.N;
  j["k"] = s.k;
  j["seed"] = s.seed;
  ordered_json nodes = ordered_json::array();
  for (const Rational& t : s.nodes) nodes.push_back(t.str());
  j["nodes"] = std::move(nodes);
  j["index_set"] = s.index_set;
  j["entry_bound"] = s.entry_bound;
  j["r"] = s.r;
  return j;
}

inline SamplerSpec spec_from_json(const ordered_json& j) {
  SamplerSpec s;
  s.kind = sampler_kind_from_string(j.at("kind").get<std::string>());
  s.N = j.at("n").get<int>();
  s.k = j.at("k").get<int>();
  s.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& t : j.at("nodes")) s.nodes.emplace_back(t.get<std::string>());
  s.index_set = j.at("index_set").get<IndexSet>();
  s.entry_bound = j.at("entry_bound").get<int>();
  s.r = j.at("r").get<double>();
  return s;
}

inline std::string csv_bool(bool b) { return b ? "1" : "0"; }

inline std::string to_csv(const FlowTrace& t) {
  std::string out = "n,distance,min_margin,sign_ok\n";
  for (const FlowStep& s : t.steps) {
    out += std::to_string(s.n) + "," + scalar_to_string(s.distance) + "," + scalar_to_string(s.min_margin) + "," +
           csv_bool(s.sign_ok) + "\n";
  }
  return out;
}

inline std::string to_csv(const SuiteReport& r) {
  std::string out = "index,kind,positive,nonnegative,all_nonzero,generic,failed_condition,witness,margin\n";
  for (const SuiteSample& s : r.samples) {
    std::string witness;
    if (s.cls.witness) witness = format_index_set(*s.cls.witness, r.N);
    out += std::to_string(s.index) + "," + s.kind + "," + csv_bool(s.cls.positive) + "," + csv_bool(s.cls.nonnegative) +
           "," + csv_bool(s.cls.all_nonzero) + "," + csv_bool(s.cls.generic) + "," +
           (s.cls.failed_condition ? s.cls.failed_condition->to_string() : "") + "," + witness + "," +
           scalar_to_string(s.cls.margin) + "\n";
  }
  return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace tpgrass
