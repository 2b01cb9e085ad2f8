// majo: decide and certify majorization between exact step functions, and
// build, classify and apply the stochastic operators that witness it.
//
// Exit codes: 0 success / relation holds, 1 relation fails, 2 input error,
// 3 internal inconsistency (the equivalent criteria disagreed).

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "majo/diagnostics.hpp"
#include "majo/error.hpp"
#include "majo/io.hpp"
#include "majo/majorization.hpp"
#include "majo/operators.hpp"
#include "majo/selftest.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kInputError = 2;
constexpr int kInconsistent = 3;

constexpr const char* kFormats = R"(File formats:
  .sfn   step function. First line 'total <rational>|inf', then '<value> <mass>'
         lines in any order. Rationals are 'p/q' or integers; '#' starts a
         comment. An alignment block 'partition <mass> ...' plus optional
         'tail <mass> x <count|inf>' switches value lines to atom order (the
         mass column becomes optional).
  .mat   'rows cols' then rows*cols rational entries, row-major.
  P      partition file: 'partition' and 'tail' lines as above.

Exit codes: 0 holds/success, 1 relation fails, 2 input error,
3 internal inconsistency.
Environment: MAJO_SEED overrides the selftest seed.)";

struct Loaded {
  majo::StepFunction function = majo::StepFunction::zero(majo::ExtendedReal(0));
  std::optional<majo::AlignedFunction> aligned;
};

Loaded load_sfn(const std::string& path) {
  majo::io::SfnDocument doc = majo::io::parse_sfn(majo::io::read_file(path));
  return {doc.function, doc.aligned};
}

json certificate_json(const majo::MajorizationVerdict& v) {
  if (!v.witness) return nullptr;
  const auto& c = *v.witness;
  return json{{"kind", c.kind == majo::FailureKind::Exceeds ? "exceeds" : "integral-mismatch"},
              {"point", c.at.point.str()},
              {"lhs", majo::to_string(c.at.lhs)},
              {"rhs", majo::to_string(c.at.rhs)}};
}

json verdict_json(const majo::MajorizationVerdict& v) {
  json checked = json::array();
  for (const auto& cp : v.checked) {
    checked.push_back(json::array({cp.point.str(), majo::to_string(cp.lhs), majo::to_string(cp.rhs)}));
  }
  return json{{"holds", v.holds}, {"certificate", certificate_json(v)}, {"checked", checked}};
}

std::string point_name(majo::Criterion c) {
  return c == majo::Criterion::Rearrangement ? "s" : "u";
}

std::string describe(const majo::MajorizationVerdict& v) {
  if (v.holds) {
    return "holds (" + std::to_string(v.checked.size()) + " breakpoints checked)";
  }
  const auto& c = *v.witness;
  if (c.kind == majo::FailureKind::IntegralMismatch) {
    return "fails: integrals differ, " + majo::to_string(c.at.lhs) + " != " + majo::to_string(c.at.rhs);
  }
  return "fails at " + point_name(v.criterion) + " = " + c.at.point.str() + ": " +
         majo::to_string(c.at.lhs) + " > " + majo::to_string(c.at.rhs);
}

// ----------------------------------------------------------------- check

struct CheckOptions {
  std::string f_path;
  std::string g_path;
  std::string criterion = "all";
  bool json = false;
  bool weak = false;
  bool timings = false;
};

std::vector<majo::MajorizationVerdict> run_criteria(const majo::StepFunction& f,
                                                    const majo::StepFunction& g,
                                                    const std::string& which, majo::Relation rel,
                                                    bool& consistent) {
  consistent = true;
  bool signed_input = !f.nonnegative() || !g.nonnegative();
  if (which == "rearr" || (which == "all" && signed_input)) {
    return {majo::rearrangement_criterion(f, g, rel)};
  }
  if (which == "hinge") return {majo::hinge_criterion(f, g, rel)};
  if (which == "tail") return {majo::tail_distribution_criterion(f, g, rel)};
  majo::CrossCheckReport rep = majo::cross_check(f, g, rel);
  consistent = rep.consistent;
  return {rep.verdicts.begin(), rep.verdicts.end()};
}

int run_check(const CheckOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  Loaded f = load_sfn(opt.f_path);
  Loaded g = load_sfn(opt.g_path);
  majo::Relation rel = opt.weak ? majo::Relation::Weak : majo::Relation::Strong;

  bool consistent = true;
  auto verdicts = run_criteria(f.function, g.function, opt.criterion, rel, consistent);
  bool holds = verdicts.front().holds;

  std::optional<std::vector<majo::MajorizationVerdict>> reverse;
  bool reverse_consistent = true;
  if (consistent && !holds) {
    reverse = run_criteria(g.function, f.function, opt.criterion, rel, reverse_consistent);
  }
  bool incomparable = reverse && !reverse->front().holds;
  auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);

  int code = !(consistent && reverse_consistent) ? kInconsistent : holds ? kHolds : kFails;
  std::string relation_name = opt.weak ? "weak" : "strong";

  if (opt.json) {
    json doc;
    doc["relation"] = relation_name;
    json per = json::object();
    for (const auto& v : verdicts) per[std::string(majo::to_string(v.criterion))] = verdict_json(v);
    doc["verdicts"] = per;
    doc["holds"] = holds;
    doc["consistent"] = consistent && reverse_consistent;
    doc["certificate"] = certificate_json(verdicts.front());
    if (reverse) {
      json rev = json::object();
      for (const auto& v : *reverse) rev[std::string(majo::to_string(v.criterion))] = verdict_json(v);
      doc["reverse"] = rev;
    } else {
      doc["reverse"] = nullptr;
    }
    doc["incomparable"] = incomparable;
    doc["witness_path"] = nullptr;
    if (opt.timings) doc["timings"] = json{{"total_ms", elapsed.count()}};
    std::cout << doc.dump(2) << "\n";
    return code;
  }

  std::cout << "relation: " << relation_name << "\n";
  for (const auto& v : verdicts) std::cout << majo::to_string(v.criterion) << ": " << describe(v) << "\n";
  if (verdicts.size() > 1) {
    std::cout << "cross-check: " << (consistent ? "consistent" : "INCONSISTENT") << "\n";
  }
  if (reverse) {
    std::cout << "reverse (g against f): " << describe(reverse->front()) << "\n";
    if (incomparable) std::cout << "incomparable: both directions fail\n";
    else std::cout << "g is majorized by f instead\n";
  }
  std::cout << (holds ? "majorized" : "not majorized") << "\n";
  if (opt.timings) std::cout << "time: " << elapsed.count() << " ms\n";
  return code;
}

// --------------------------------------------------------------- witness

int run_witness(const std::string& f_path, const std::string& g_path, const std::string& out,
                bool as_json) {
  Loaded f = load_sfn(f_path);
  Loaded g = load_sfn(g_path);
  majo::MajorizationVerdict v = majo::majorize(f.function, g.function);
  if (!v.holds) {
    if (as_json) {
      std::cout << json{{"verdicts", {{"rearrangement", verdict_json(v)}}},
                        {"certificate", certificate_json(v)},
                        {"witness_path", nullptr}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << "not majorized: " << describe(v) << "\n";
    }
    return kFails;
  }
  majo::WitnessChain w = majo::ds_witness(f.function, g.function);
  std::string partition_path;
  if (!out.empty()) {
    majo::io::write_file(out, majo::io::format_mat(w.product));
    partition_path = out + ".partition";
    majo::io::write_file(partition_path, "total " + w.source_partition.total_measure().str() + "\n" +
                                             majo::io::format_partition(w.source_partition));
  }
  std::string cls(majo::to_string(majo::classify_matrix(w.product)));

  if (as_json) {
    json steps = json::array();
    for (const auto& t : w.steps) {
      steps.push_back(json{{"j", t.j}, {"k", t.k}, {"lambda", majo::to_string(t.lambda)}});
    }
    json doc{{"verdicts", {{"rearrangement", verdict_json(v)}}},
             {"certificate", nullptr},
             {"witness_path", out.empty() ? json(nullptr) : json(out)},
             {"partition_path", partition_path.empty() ? json(nullptr) : json(partition_path)},
             {"atoms", w.source_partition.size()},
             {"atom_mass", w.source_partition.size() ? majo::to_string(w.source_partition.mass(0)) : "1"},
             {"class", cls},
             {"steps", steps}};
    std::cout << doc.dump(2) << "\n";
    return kHolds;
  }
  std::cout << "atoms: " << w.source_partition.size();
  if (w.source_partition.size() > 0) std::cout << " of mass " << majo::to_string(w.source_partition.mass(0));
  std::cout << "\n";
  for (const auto& t : w.steps) {
    std::cout << "T(" << t.j << ", " << t.k << ", lambda = " << majo::to_string(t.lambda) << ")\n";
  }
  std::cout << "class: " << cls << "\n";
  if (out.empty()) std::cout << majo::io::format_mat(w.product);
  else std::cout << "wrote " << out << " and " << partition_path << "\n";
  return kHolds;
}

// ------------------------------------------------------------- operators

int run_classify(const std::string& path, bool as_json) {
  majo::OperatorMatrix d = majo::io::parse_mat(majo::io::read_file(path));
  majo::OperatorClass c = majo::classify_matrix(d);
  if (as_json) {
    json rows = json::array();
    for (const auto& s : d.row_sums()) rows.push_back(majo::to_string(s));
    json cols = json::array();
    for (const auto& s : d.column_sums()) cols.push_back(majo::to_string(s));
    std::cout << json{{"class", majo::to_string(c)}, {"row_sums", rows}, {"column_sums", cols}}.dump(2)
              << "\n";
  } else {
    std::cout << majo::to_string(c) << "\n";
  }
  return kHolds;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) std::cout << text;
  else majo::io::write_file(out, text);
}

int run_lift(const std::string& p_path, const std::string& d_path, const std::string& out) {
  majo::Partition p = majo::io::parse_partition(majo::io::read_file(p_path));
  majo::OperatorMatrix d = majo::io::parse_mat(majo::io::read_file(d_path));
  majo::PartitionOperator op = majo::lift(p, d);
  std::cout << "# class on partition: " << majo::to_string(majo::classify(op)) << "\n";
  emit(majo::io::format_mat(op.values), out);
  return kHolds;
}

int run_kernel(const std::string& p_path, const std::string& d_path, const std::string& out) {
  majo::Partition p = majo::io::parse_partition(majo::io::read_file(p_path));
  majo::OperatorMatrix d = majo::io::parse_mat(majo::io::read_file(d_path));
  majo::StepKernel k = majo::matrix_to_kernel(p, d);
  std::cout << "# class: " << majo::to_string(majo::kernel_classify(k)) << "\n";
  std::cout << "# column integrals:";
  for (const auto& c : majo::kernel_column_integrals(k)) std::cout << " " << majo::to_string(c);
  std::cout << "\n# row integrals:";
  for (const auto& r : majo::kernel_row_integrals(k)) std::cout << " " << majo::to_string(r);
  std::cout << "\n";
  emit(majo::io::format_mat(k.values), out);
  return kHolds;
}

// Partition for a function given without an alignment block: explicit
// option, then the sidecar written by `witness`, then equal atoms spanning a
// finite space.
majo::Partition resolve_partition(const std::string& explicit_path, const std::string& d_path,
                                  const majo::OperatorMatrix& d, const majo::StepFunction& f) {
  if (!explicit_path.empty()) return majo::io::parse_partition(majo::io::read_file(explicit_path));
  fs::path sidecar = d_path + ".partition";
  if (fs::exists(sidecar)) return majo::io::parse_partition(majo::io::read_file(sidecar));
  if (f.total_measure().is_infinite()) {
    throw majo::Error(majo::ErrorCode::PartitionMisaligned,
                      "function on an infinite space needs --partition or an alignment block");
  }
  if (d.cols() == 0) throw majo::Error(majo::ErrorCode::DimensionMismatch, "matrix has no columns");
  return majo::Partition::equal(d.cols(), f.total_measure().value() / d.cols());
}

int run_apply(const std::string& d_path, const std::string& f_path, const std::string& p_path,
              const std::string& out, bool aligned_output) {
  majo::OperatorMatrix d = majo::io::parse_mat(majo::io::read_file(d_path));
  Loaded f = load_sfn(f_path);
  majo::AlignedFunction input = f.aligned ? *f.aligned
                                          : majo::align_rearranged(
                                                f.function, resolve_partition(p_path, d_path, d, f.function));
  const majo::Partition& dom = input.partition;
  majo::Partition cod = dom;
  if (d.rows() != d.cols()) {
    if (!dom.has_unbounded_tail() || !dom.equal_masses()) {
      throw majo::Error(majo::ErrorCode::DimensionMismatch,
                        "rectangular matrices need an equal-mass partition with an unbounded tail");
    }
    cod = majo::Partition(std::vector<majo::Rational>(d.rows(), *dom.tail_mass()), *dom.tail_mass(),
                          std::nullopt);
  }
  majo::AlignedFunction image = majo::apply(majo::to_value_basis(dom, cod, d), input);
  emit(aligned_output ? majo::io::format_sfn(image) : majo::io::format_sfn(image.to_step_function()), out);
  return kHolds;
}

// ------------------------------------------------------------------ equi

std::vector<majo::Rational> parse_delta_grid(const std::string& spec) {
  // "2^-a..2^-b" or a comma-separated list of rationals.
  std::vector<majo::Rational> out;
  if (auto dots = spec.find(".."); dots != std::string::npos && spec.rfind("2^-", 0) == 0) {
    std::string lo = spec.substr(3, dots - 3);
    std::string hi = spec.substr(dots + 2);
    if (hi.rfind("2^-", 0) != 0) {
      throw majo::Error(majo::ErrorCode::ParseError, "delta grid '" + spec + "' is not 2^-a..2^-b");
    }
    int a = std::stoi(lo);
    int b = std::stoi(hi.substr(3));
    for (int k = a; k <= b; ++k) out.emplace_back(majo::Integer(1), majo::Integer(1) << k);
    return out;
  }
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    out.push_back(majo::parse_rational(std::string_view(spec).substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

int run_equi(const std::string& f_path, const std::string& ops_dir, const std::string& grid_spec,
             bool as_json) {
  Loaded f = load_sfn(f_path);
  std::vector<fs::path> mats;
  for (const auto& entry : fs::directory_iterator(ops_dir)) {
    if (entry.path().extension() == ".mat") mats.push_back(entry.path());
  }
  std::sort(mats.begin(), mats.end());
  if (mats.empty()) throw majo::Error(majo::ErrorCode::EmptyFamily, "no .mat files in " + ops_dir);

  std::vector<majo::StepFunction> family;
  json ops = json::array();
  bool all_sds = true;
  for (const auto& m : mats) {
    majo::OperatorMatrix d = majo::io::parse_mat(majo::io::read_file(m));
    majo::AlignedFunction input =
        f.aligned ? *f.aligned
                  : majo::align_rearranged(f.function, resolve_partition("", m.string(), d, f.function));
    majo::Partition cod = input.partition;
    if (d.rows() != d.cols() && input.partition.has_unbounded_tail()) {
      cod = majo::Partition(std::vector<majo::Rational>(d.rows(), *input.partition.tail_mass()),
                            *input.partition.tail_mass(), std::nullopt);
    }
    majo::PartitionOperator op = majo::to_value_basis(input.partition, cod, d);
    majo::OperatorClass c = majo::classify(op);
    all_sds = all_sds && majo::at_least(c, majo::OperatorClass::SemiDoublyStochastic);
    family.push_back(majo::apply(op, input).to_step_function());
    ops.push_back(json{{"path", m.filename().string()}, {"class", majo::to_string(c)}});
  }

  std::vector<majo::Rational> grid = parse_delta_grid(grid_spec);
  json rows = json::array();
  bool ok = true;
  for (const auto& delta : grid) {
    majo::EquiIntegrabilityReport r = majo::equi_modulus(family, f.function, delta);
    ok = ok && r.within_bound;
    rows.push_back(json{{"delta", majo::to_string(r.delta)},
                        {"modulus", majo::to_string(r.modulus)},
                        {"bound", majo::to_string(r.bound)},
                        {"best_c", majo::to_string(r.best_c)},
                        {"within_bound", r.within_bound}});
  }

  if (as_json) {
    std::cout << json{{"family_size", family.size()},
                      {"operators", ops},
                      {"all_semi_doubly_stochastic", all_sds},
                      {"report", rows}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "family: " << family.size() << " operators"
              << (all_sds ? "" : " (some below semi-doubly stochastic; bound not guaranteed)") << "\n";
    std::cout << "delta\tmodulus\tbound\tc\n";
    for (const auto& r : rows) {
      std::cout << r["delta"].get<std::string>() << "\t" << r["modulus"].get<std::string>() << "\t"
                << r["bound"].get<std::string>() << "\t" << r["best_c"].get<std::string>()
                << (r["within_bound"].get<bool>() ? "" : "\tEXCEEDS") << "\n";
    }
  }
  return ok ? kHolds : kFails;
}

// -------------------------------------------------------------- rearrange

int run_rearrange(const std::string& path, bool as_json) {
  Loaded f = load_sfn(path);
  majo::StepFunction r = majo::rearrangement(f.function);
  if (as_json) {
    json pieces = json::array();
    for (const auto& p : r.pieces()) {
      pieces.push_back(json::array({majo::to_string(p.value), majo::to_string(p.mass)}));
    }
    json breaks = json::array();
    for (const auto& b : r.rearranged_breakpoints()) breaks.push_back(majo::to_string(b));
    std::cout << json{{"total", r.total_measure().str()},
                      {"pieces", pieces},
                      {"breakpoints", breaks},
                      {"integral", majo::to_string(majo::integral(r))}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << majo::io::format_sfn(r);
  }
  return kHolds;
}

// --------------------------------------------------------------- selftest

int run_selftest_cmd(std::uint64_t seed, std::size_t iterations, bool as_json) {
  if (const char* env = std::getenv("MAJO_SEED")) seed = std::stoull(env);
  auto results = majo::run_selftest(seed, iterations);
  std::size_t failed = 0;
  json suites = json::array();
  for (const auto& r : results) {
    failed += r.failed;
    suites.push_back(json{{"name", r.name}, {"passed", r.passed}, {"failed", r.failed},
                          {"first_failure", r.first_failure}});
  }
  if (as_json) {
    std::cout << json{{"seed", seed}, {"iterations", iterations}, {"suites", suites}}.dump(2) << "\n";
  } else {
    std::cout << "seed " << seed << "\n";
    for (const auto& r : results) {
      std::cout << (r.failed == 0 ? "PASS " : "FAIL ") << r.name << ": " << r.passed << " passed, "
                << r.failed << " failed\n";
      if (!r.first_failure.empty()) std::cout << "  " << r.first_failure << "\n";
    }
  }
  return failed == 0 ? kHolds : kInconsistent;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact majorization checks and doubly stochastic witnesses for step functions"};
  app.footer(kFormats);
  app.require_subcommand(1);

  bool as_json = false;

  CheckOptions check_opt;
  auto* check = app.add_subcommand("check", "Decide whether f is majorized by g");
  check->add_option("f", check_opt.f_path, "f.sfn")->required()->check(CLI::ExistingFile);
  check->add_option("g", check_opt.g_path, "g.sfn")->required()->check(CLI::ExistingFile);
  check->add_option("--criterion", check_opt.criterion, "rearr | hinge | tail | all")
      ->check(CLI::IsMember({"rearr", "hinge", "tail", "all"}));
  check->add_flag("--weak", check_opt.weak, "Drop the equal-integral clause");
  check->add_flag("--json", check_opt.json, "Machine-readable report");
  check->add_flag("--timings", check_opt.timings, "Include wall-clock timings");

  std::string f_path, g_path, out_path, p_path, d_path, ops_dir;
  auto* witness = app.add_subcommand("witness", "Doubly stochastic matrix D with D g = f");
  witness->add_option("f", f_path, "f.sfn")->required()->check(CLI::ExistingFile);
  witness->add_option("g", g_path, "g.sfn")->required()->check(CLI::ExistingFile);
  witness->add_option("-o,--output", out_path, "Write D here (and the partition to <D>.partition)");
  witness->add_flag("--json", as_json);

  auto* classify = app.add_subcommand("classify", "Markov / semi-doubly / doubly stochastic");
  classify->add_option("matrix", d_path, "D.mat")->required()->check(CLI::ExistingFile);
  classify->add_flag("--json", as_json);

  auto* liftc = app.add_subcommand("lift", "Matrix of Psi D Phi on P-aligned step functions");
  liftc->add_option("partition", p_path, "P")->required()->check(CLI::ExistingFile);
  liftc->add_option("matrix", d_path, "D.mat")->required()->check(CLI::ExistingFile);
  liftc->add_option("-o,--output", out_path);

  auto* kernel = app.add_subcommand("kernel", "Step kernel K(n, j) = d(n, j) / mass_n");
  kernel->add_option("partition", p_path, "P")->required()->check(CLI::ExistingFile);
  kernel->add_option("matrix", d_path, "D.mat")->required()->check(CLI::ExistingFile);
  kernel->add_option("-o,--output", out_path);

  bool aligned_output = false;
  auto* applyc = app.add_subcommand("apply", "Apply D to a step function");
  applyc->add_option("matrix", d_path, "D.mat")->required()->check(CLI::ExistingFile);
  applyc->add_option("f", f_path, "f.sfn")->required()->check(CLI::ExistingFile);
  applyc->add_option("--partition", p_path, "Partition for an unaligned f");
  applyc->add_option("-o,--output", out_path);
  applyc->add_flag("--aligned", aligned_output, "Print the result with its alignment block");

  std::string delta_grid = "2^-1..2^-8";
  auto* equi = app.add_subcommand("equi", "Small-set modulus of {S f} against its certified bound");
  equi->add_option("f", f_path, "f.sfn")->required()->check(CLI::ExistingFile);
  equi->add_option("--ops", ops_dir, "Directory of .mat operators")->required()->check(CLI::ExistingDirectory);
  equi->add_option("--delta-grid", delta_grid, "2^-a..2^-b or comma-separated rationals");
  equi->add_flag("--json", as_json);

  auto* rearrange = app.add_subcommand("rearrange", "Canonical decreasing rearrangement");
  rearrange->add_option("f", f_path, "f.sfn")->required()->check(CLI::ExistingFile);
  rearrange->add_flag("--json", as_json);

  std::uint64_t seed = 0;
  std::size_t iterations = 200;
  auto* selftest = app.add_subcommand("selftest", "Randomized invariant suite");
  selftest->add_option("--seed", seed, "RNG seed (MAJO_SEED overrides)");
  selftest->add_option("--iterations", iterations, "Cases per suite");
  selftest->add_flag("--json", as_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*check) return run_check(check_opt);
    if (*witness) return run_witness(f_path, g_path, out_path, as_json);
    if (*classify) return run_classify(d_path, as_json);
    if (*liftc) return run_lift(p_path, d_path, out_path);
    if (*kernel) return run_kernel(p_path, d_path, out_path);
    if (*applyc) return run_apply(d_path, f_path, p_path, out_path, aligned_output);
    if (*equi) return run_equi(f_path, ops_dir, delta_grid, as_json);
    if (*rearrange) return run_rearrange(f_path, as_json);
    if (*selftest) return run_selftest_cmd(seed, iterations, as_json);
  } catch (const majo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == majo::ErrorCode::InternalInconsistency ? kInconsistent : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
