#include "commands.hpp"

#include <atomic>
#include <filesystem>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "io.hpp"
#include "ngcut.hpp"
#include "packclass/errors.hpp"
#include "packclass/opp.hpp"
#include "packclass/oracle.hpp"
#include "packclass/packing_class.hpp"
#include "packclass/rational.hpp"
#include "packclass/solve.hpp"
#include "render.hpp"

namespace packclass::cli {

namespace {

std::string boxes(std::size_t n) { return std::to_string(n) + (n == 1 ? " box" : " boxes"); }

// Exits with a specific code after printing a message.
struct Exit {
  int code;
  std::string message;
};

struct Common {
  std::string instance;
  std::string output;
  bool drop_oversized = false;
  std::uint64_t max_nodes = 0;
  bool no_heuristic = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("instance", c.instance, "InstanceFile (JSON)")->required();
  cmd->add_option("-o,--output", c.output, "write the ResultFile here instead of stdout");
  cmd->add_flag("--drop-oversized", c.drop_oversized,
                "drop boxes that do not fit the container (with a warning) instead of failing");
  cmd->add_option("--max-nodes", c.max_nodes, "node limit per OPP search");
  cmd->add_flag("--no-heuristic", c.no_heuristic, "skip the packing heuristic before search");
}

std::vector<Rational> parse_list(const std::vector<std::string>& items, const char* what) {
  std::vector<Rational> out;
  for (const auto& s : items) {
    try {
      out.push_back(parse_rational(s));
    } catch (const Error& e) {
      throw Exit{kExitUsage, std::string(what) + ": " + e.what()};
    }
  }
  return out;
}

InstanceData load_data(const std::string& path) {
  return parse_instance(read_file(path), path);
}

Instance load_instance(const Common& c, std::ostream& err) {
  const InstanceData data = load_data(c.instance);
  if (!data.container) throw Exit{kExitUsage, c.instance + ": the instance has no container"};
  try {
    LoadedInstance loaded = make_instance(data, *data.container, c.drop_oversized);
    for (const auto& w : loaded.warnings) err << "warning: " << w << "\n";
    return std::move(loaded.instance);
  } catch (const Error& e) {
    std::string hint;
    if (e.kind() == ErrorKind::kInvalidInstance) hint = " (see --drop-oversized)";
    throw Exit{kExitUsage, c.instance + ": " + e.what() + hint};
  }
}

SearchLimits limits_of(const Common& c) {
  SearchLimits limits = default_limits();
  if (c.max_nodes > 0) limits.max_nodes = c.max_nodes;
  return limits;
}

SearchOptions options_of(const Common& c) {
  SearchOptions options;
  options.use_heuristic = !c.no_heuristic;
  return options;
}

void emit(const Json& doc, const std::string& path, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty()) {
    out << text;
  } else {
    write_file(path, text);
  }
}

Json header(const char* problem) {
  Json doc = Json::object();
  doc["format"] = 1;
  doc["problem"] = problem;
  return doc;
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::kFeasible: return kExitFeasible;
    case Verdict::kInfeasible: return kExitInfeasible;
    case Verdict::kResourceLimit: return kExitResourceLimit;
  }
  return kExitResourceLimit;
}

int cmd_opp(const Common& c, std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(c, err);
  const SearchOutcome r = solve_opp(inst, limits_of(c), options_of(c));
  Json doc = header("opp");
  doc["verdict"] = to_string(r.verdict);
  if (r.packing) doc["positions"] = packing_json(*r.packing);
  if (r.cls) doc["class"] = class_json(*r.cls);
  doc["stats"] = stats_json(r.stats);
  emit(doc, c.output, out);
  return verdict_exit(r.verdict);
}

int cmd_okp(const Common& c, std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(c, err);
  const OkpSolution r = solve_okp(inst, limits_of(c), options_of(c));
  Json doc = header("okp");
  doc["verdict"] = to_string(r.status);
  doc["value"] = rational_json(r.value);
  doc["chosen"] = r.chosen;
  doc["positions"] = packing_json(r.packing);
  doc["class"] = class_json(project_to_class(r.packing, inst));
  Json stats = stats_json(r.stats);
  stats["opp_calls"] = r.opp_calls;
  doc["stats"] = std::move(stats);
  Json dismissed = Json::array();
  for (const auto& d : r.dismissed) {
    dismissed.push_back(Json{{"boxes", d.boxes}, {"reason", d.reason}});
  }
  doc["dismissed"] = std::move(dismissed);
  emit(doc, c.output, out);
  return r.status == SolveStatus::kOptimal ? kExitFeasible : kExitResourceLimit;
}

int cmd_spp(const Common& c, const std::vector<std::string>& fixed_text, std::ostream& out,
            std::ostream& err) {
  const InstanceData data = load_data(c.instance);
  const std::vector<Rational> fixed = parse_list(fixed_text, "--fixed-dims");
  if (fixed.size() + 1 != data.d) {
    throw Exit{kExitUsage, "--fixed-dims needs " + std::to_string(data.d - 1) + " sizes"};
  }
  std::vector<Box> boxes;
  for (const auto& b : data.boxes) {
    bool fits = true;
    for (std::size_t i = 0; i < fixed.size(); ++i) fits = fits && b.size[i] <= fixed[i];
    if (!fits && c.drop_oversized) {
      err << "warning: dropping box '" << b.id << "': it does not fit the cross-section\n";
      continue;
    }
    boxes.push_back(b);
  }
  Json doc = header("spp");
  SppSolution r;
  try {
    r = solve_spp(boxes, fixed, limits_of(c), options_of(c));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kInfeasibleCrossSection) throw;
    doc["verdict"] = "infeasible";
    doc["reason"] = e.what();
    emit(doc, c.output, out);
    return kExitInfeasible;
  }
  doc["verdict"] = to_string(r.status);
  doc["height"] = rational_json(r.height);
  Json container = Json::array();
  for (const auto& w : fixed) container.push_back(rational_json(w));
  container.push_back(rational_json(r.height));
  doc["container"] = std::move(container);
  doc["positions"] = packing_json(r.packing);
  if (!boxes.empty()) {
    std::vector<Rational> full = fixed;
    full.push_back(r.height);
    doc["class"] = class_json(project_to_class(r.packing, Instance(boxes, full)));
  }
  Json probes = Json::array();
  for (const auto& p : r.probes) {
    probes.push_back(Json{{"height", rational_json(p.height)}, {"verdict", to_string(p.verdict)}});
  }
  doc["probes"] = std::move(probes);
  emit(doc, c.output, out);
  return r.status == SolveStatus::kOptimal ? kExitFeasible : kExitResourceLimit;
}

// Container for verify/render: --container, else the instance, else the
// result document's "container" (strip packing results carry it).
std::vector<Rational> pick_container(const InstanceData& data,
                                     const std::vector<std::string>& override_text,
                                     const std::string& result_path) {
  if (!override_text.empty()) return parse_list(override_text, "--container");
  if (data.container) return *data.container;
  if (!result_path.empty()) {
    const Json doc = parse_json(read_file(result_path), result_path);
    if (doc.is_object() && doc.contains("container") && doc["container"].is_array()) {
      std::vector<std::string> items;
      for (const auto& v : doc["container"]) {
        items.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      }
      return parse_list(items, "container");
    }
  }
  throw Exit{kExitUsage, "no container: give --container or use an instance that has one"};
}

int cmd_verify(const std::string& instance_path, const std::string& packing_path,
               const std::string& class_path, const std::vector<std::string>& container_text,
               std::ostream& out) {
  if (packing_path.empty() == class_path.empty()) {
    throw Exit{kExitUsage, "verify needs exactly one of --packing or --class"};
  }
  const InstanceData data = load_data(instance_path);
  const Instance inst(data.boxes, pick_container(data, container_text, packing_path));
  if (!packing_path.empty()) {
    const Packing p = parse_packing(read_file(packing_path), packing_path);
    ValidationReport report;
    try {
      report = validate_packing(p, inst);
    } catch (const Error& e) {
      out << "FAIL " << to_string(e.kind()) << ": " << e.what() << "\n";
      return 1;
    }
    for (const auto& v : report.violations) {
      if (v.kind == Violation::Kind::kOverlap) {
        out << "Overlap: '" << v.box << "' and '" << v.other << "'\n";
      } else {
        out << "Closedness: '" << v.box << "' leaves the container in dimension "
            << v.dimension + 1 << "\n";
      }
    }
    out << (report.valid ? "PASS" : "FAIL") << " packing of " << boxes(p.positions.size())
        << "\n";
    return report.valid ? 0 : 1;
  }
  const PackingClass cls = parse_class(read_file(class_path), class_path, inst.ids());
  ClassReport report;
  try {
    report = verify_packing_class(cls, inst);
  } catch (const Error& e) {
    out << "FAIL " << to_string(e.kind()) << ": " << e.what() << "\n";
    return 1;
  }
  auto names = [&](const std::vector<std::size_t>& vs) {
    std::string s;
    for (auto v : vs) s += (s.empty() ? "" : " ") + inst.box(v).id;
    return s;
  };
  for (std::size_t i = 0; i < report.p1.size(); ++i) {
    if (!report.p1[i].ok) {
      const auto& w = *report.p1[i].witness;
      out << "P1 dimension " << i + 1 << ": "
          << (w.kind == IntervalWitness::Kind::kChordlessCycle ? "chordless cycle "
                                                               : "asteroidal triple ")
          << names(w.vertices) << "\n";
    }
  }
  for (std::size_t i = 0; i < report.p2.size(); ++i) {
    if (!report.p2[i].ok) {
      out << "P2 dimension " << i + 1 << ": stable set " << names(report.p2[i].heaviest.vertices)
          << " is wider than the container\n";
    }
  }
  if (!report.p3_ok) {
    out << "P3: " << inst.box(report.p3_shared->first).id << " and "
        << inst.box(report.p3_shared->second).id << " overlap in every dimension\n";
  }
  out << (report.all_ok() ? "PASS" : "FAIL") << " packing class\n";
  return report.all_ok() ? 0 : 1;
}

int cmd_render(const std::string& instance_path, const std::string& result_path,
               const std::string& svg_path, const std::vector<std::string>& container_text) {
  const InstanceData data = load_data(instance_path);
  if (data.d != 2) {
    throw Exit{kExitData, "render needs d = 2, the instance has d = " + std::to_string(data.d)};
  }
  const Instance inst(data.boxes, pick_container(data, container_text, result_path));
  const Packing p = parse_packing(read_file(result_path), result_path);
  try {
    if (!validate_packing(p, inst).valid) throw Exit{kExitData, "the packing is not valid"};
  } catch (const Error& e) {
    throw Exit{kExitData, e.what()};
  }
  write_file(svg_path, render_svg(inst, p));
  return 0;
}

int cmd_convert(const std::string& from, const std::string& in_path, const std::string& out_path,
                std::ostream& out) {
  if (from != "ngcut") throw Exit{kExitUsage, "unsupported --from format '" + from + "'"};
  std::vector<NgcutInstance> instances;
  try {
    instances = parse_ngcut(read_file(in_path), in_path);
  } catch (const Error& e) {
    throw Exit{kExitData, e.what()};
  }
  const std::filesystem::path base(out_path);
  for (std::size_t k = 0; k < instances.size(); ++k) {
    std::filesystem::path target = base;
    if (instances.size() > 1) {
      target = base.parent_path() / (base.stem().string() + "-" + std::to_string(k + 1) +
                                     base.extension().string());
    }
    write_file(target.string(), instance_json(instances[k].data).dump(2) + "\n");
    out << "instance " << k + 1 << " (line " << instances[k].first_line << "): "
        << boxes(instances[k].data.boxes.size()) << ", "
        << describe_rules(instances[k].rules) << " -> " << target.string() << "\n";
  }
  if (instances.empty()) out << "no instances\n";
  return 0;
}

int cmd_oracle(const std::string& kind, const std::string& instance_path,
               const std::vector<std::string>& fixed_text, std::size_t cap,
               const std::string& output, std::ostream& out) {
  const InstanceData data = load_data(instance_path);
  Json doc = header(("oracle-" + kind).c_str());
  int code = 0;
  if (kind == "spp") {
    const std::vector<Rational> fixed = parse_list(fixed_text, "--fixed-dims");
    if (fixed.size() + 1 != data.d) throw Exit{kExitUsage, "--fixed-dims has the wrong length"};
    doc["height"] = rational_json(oracle::brute_force_min_height(data.boxes, fixed));
  } else {
    if (!data.container) throw Exit{kExitUsage, instance_path + ": the instance has no container"};
    const Instance inst(data.boxes, *data.container);
    if (kind == "opp") {
      const auto r = oracle::brute_force_opp(inst);
      doc["verdict"] = r.feasible ? "feasible" : "infeasible";
      if (r.packing) doc["positions"] = packing_json(*r.packing);
      code = r.feasible ? kExitFeasible : kExitInfeasible;
    } else if (kind == "okp") {
      doc["value"] = rational_json(oracle::brute_force_okp_value(inst));
    } else {
      const auto classes = oracle::enumerate_packing_classes(inst, cap);
      doc["count"] = classes.size();
      Json list = Json::array();
      for (const auto& cls : classes) list.push_back(class_json(cls));
      doc["classes"] = std::move(list);
      code = classes.empty() ? kExitInfeasible : kExitFeasible;
    }
  }
  emit(doc, output, out);
  return code;
}

struct SweepConfig {
  std::uint64_t seed = 1;
  std::size_t count = 100;
  std::size_t max_boxes = 4;
  std::int64_t max_size = 3;
  std::vector<std::string> container{"4", "4"};
  std::size_t jobs = 1;
  bool okp = false;
  std::string output;
};

int cmd_sweep(const SweepConfig& cfg, std::ostream& out) {
  const std::vector<Rational> container = parse_list(cfg.container, "--container");
  if (cfg.max_boxes == 0 || cfg.max_size < 1) throw Exit{kExitUsage, "empty sweep ranges"};
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<std::size_t> count(1, cfg.max_boxes);
  std::uniform_int_distribution<std::int64_t> side(1, cfg.max_size);
  std::vector<Instance> instances;
  while (instances.size() < cfg.count) {
    const std::size_t n = count(rng);
    std::vector<Box> boxes;
    bool fits = true;
    for (std::size_t b = 0; b < n; ++b) {
      Box box{"b" + std::to_string(b + 1), {}, std::nullopt};
      for (std::size_t i = 0; i < container.size(); ++i) {
        box.size.emplace_back(side(rng));
        fits = fits && box.size.back() <= container[i];
      }
      boxes.push_back(std::move(box));
    }
    if (fits) instances.emplace_back(std::move(boxes), container);
  }

  struct Row {
    bool opp_agree = false;
    bool okp_agree = true;
    Verdict verdict = Verdict::kResourceLimit;
  };
  std::vector<Row> rows(instances.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < instances.size(); k = next++) {
      const Instance& inst = instances[k];
      const SearchOutcome r = solve_opp(inst);
      const bool brute = oracle::brute_force_opp(inst).feasible;
      rows[k].verdict = r.verdict;
      rows[k].opp_agree = r.verdict != Verdict::kResourceLimit &&
                          (r.verdict == Verdict::kFeasible) == brute &&
                          (!r.packing || validate_packing(*r.packing, inst).valid);
      if (cfg.okp) {
        rows[k].okp_agree = solve_okp(inst).value == oracle::brute_force_okp_value(inst);
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < std::max<std::size_t>(cfg.jobs, 1); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Json doc = header("sweep");
  doc["seed"] = cfg.seed;
  std::size_t agree = 0, feasible = 0;
  Json mismatches = Json::array();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const bool ok = rows[k].opp_agree && rows[k].okp_agree;
    agree += ok;
    feasible += rows[k].verdict == Verdict::kFeasible;
    if (!ok) {
      Json boxes = Json::array();
      for (const auto& b : instances[k].boxes()) {
        Json size = Json::array();
        for (const auto& w : b.size) size.push_back(rational_json(w));
        boxes.push_back(std::move(size));
      }
      mismatches.push_back(Json{{"index", k}, {"sizes", std::move(boxes)}});
    }
  }
  doc["instances"] = rows.size();
  doc["feasible"] = feasible;
  doc["agree"] = agree;
  doc["mismatches"] = std::move(mismatches);
  emit(doc, cfg.output, out);
  return agree == rows.size() ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact orthogonal packing via packing classes"};
  app.require_subcommand(1);

  Common opp_args, okp_args, spp_args;
  auto* opp = app.add_subcommand("opp", "decide whether all boxes fit the container");
  add_common(opp, opp_args);
  auto* okp = app.add_subcommand("okp", "pack a maximum-value subset of the boxes");
  add_common(okp, okp_args);
  auto* spp = app.add_subcommand("spp", "minimal last container size for all boxes");
  add_common(spp, spp_args);
  std::vector<std::string> fixed_dims;
  spp->add_option("--fixed-dims", fixed_dims, "W1..W(d-1), comma separated")
      ->required()
      ->delimiter(',');

  std::string verify_instance, verify_packing, verify_class;
  std::vector<std::string> verify_container;
  auto* verify = app.add_subcommand("verify", "check a packing or a packing class");
  verify->add_option("instance", verify_instance, "InstanceFile")->required();
  verify->add_option("--packing", verify_packing, "ResultFile or {\"positions\": ...}");
  verify->add_option("--class", verify_class, "document with a \"class\" member");
  verify->add_option("--container", verify_container, "override the container")->delimiter(',');

  std::string render_instance, render_result, render_svg_path;
  std::vector<std::string> render_container;
  auto* render = app.add_subcommand("render", "draw a 2-D packing as SVG");
  render->add_option("instance", render_instance, "InstanceFile")->required();
  render->add_option("result", render_result, "ResultFile with positions")->required();
  render->add_option("svg", render_svg_path, "output SVG path")->required();
  render->add_option("--container", render_container, "override the container")->delimiter(',');

  std::string convert_from, convert_in, convert_out;
  auto* convert = app.add_subcommand("convert", "convert external instance files");
  convert->add_option("--from", convert_from, "input format (ngcut)")->required();
  convert->add_option("input", convert_in, "input file")->required();
  convert->add_option("output", convert_out,
                      "output InstanceFile; with several instances, <stem>-<k><ext>")
      ->required();

  std::string oracle_kind, oracle_instance, oracle_output;
  std::vector<std::string> oracle_fixed;
  std::size_t oracle_cap = 1000;
  auto* orc = app.add_subcommand("oracle", "brute-force reference answers for small inputs");
  orc->add_option("kind", oracle_kind, "opp, okp, spp or classes")
      ->required()
      ->check(CLI::IsMember({"opp", "okp", "spp", "classes"}));
  orc->add_option("instance", oracle_instance, "InstanceFile")->required();
  orc->add_option("--fixed-dims", oracle_fixed, "for spp")->delimiter(',');
  orc->add_option("--cap", oracle_cap, "maximum number of classes listed");
  orc->add_option("-o,--output", oracle_output, "write the result here instead of stdout");

  SweepConfig sweep_cfg;
  auto* sweep = app.add_subcommand("sweep", "compare the solver with the oracle on random instances");
  sweep->add_option("--seed", sweep_cfg.seed, "instance generator seed");
  sweep->add_option("--count", sweep_cfg.count, "number of instances");
  sweep->add_option("--max-boxes", sweep_cfg.max_boxes, "at most 5");
  sweep->add_option("--max-size", sweep_cfg.max_size, "largest side length");
  sweep->add_option("--container", sweep_cfg.container, "container sizes")->delimiter(',');
  sweep->add_option("--jobs", sweep_cfg.jobs, "worker threads");
  sweep->add_flag("--okp", sweep_cfg.okp, "also compare OKP optima");
  sweep->add_option("-o,--output", sweep_cfg.output, "write the summary here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*opp) return cmd_opp(opp_args, out, err);
    if (*okp) return cmd_okp(okp_args, out, err);
    if (*spp) return cmd_spp(spp_args, fixed_dims, out, err);
    if (*verify) {
      return cmd_verify(verify_instance, verify_packing, verify_class, verify_container, out);
    }
    if (*render) return cmd_render(render_instance, render_result, render_svg_path, render_container);
    if (*convert) return cmd_convert(convert_from, convert_in, convert_out, out);
    if (*orc) {
      return cmd_oracle(oracle_kind, oracle_instance, oracle_fixed, oracle_cap, oracle_output, out);
    }
    if (*sweep) return cmd_sweep(sweep_cfg, out);
  } catch (const Exit& e) {
    err << "error: " << e.message << "\n";
    return e.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace packclass::cli
