// Command-line front end for the qstab library.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qstab/qstab.hpp"

namespace {

using namespace qstab;
using nlohmann::json;

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kViolation = 3 };

struct Options {
  std::string format = "text";
  bool json() const { return format == "json"; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' || c == '[';
  }
  return false;
}

TropicalCurve load_curve(const std::string& path) {
  const auto text = read_file(path);
  return looks_like_json(text) ? io::curve_from_json(io::parse_json(text)) : io::parse_curve(text);
}

CombinatorialType load_type(const std::string& path) {
  const auto text = read_file(path);
  return looks_like_json(text) ? io::type_from_json(io::parse_json(text)) : io::parse_type(text);
}

QCondition load_condition(const std::string& path) { return io::condition_from_json(io::parse_json(read_file(path))); }

CubePoint load_cube(const std::string& path) { return io::cube_point_from_json(io::parse_json(read_file(path))); }

/// "smooth", "cycle:j" or "cycle:j:a,b,...".
CoreKind parse_core(const std::string& text) {
  if (text == "smooth") return CoreKind::smooth();
  if (text.rfind("cycle:", 0) != 0) throw ParseError("core must be 'smooth' or 'cycle:<j>[:<positions>]', got '" + text + "'");
  const auto rest = text.substr(6);
  const auto colon = rest.find(':');
  CoreKind core;
  try {
    core.cycle_length = std::stoi(rest.substr(0, colon));
    if (colon != std::string::npos) {
      std::stringstream list(rest.substr(colon + 1));
      std::string item;
      while (std::getline(list, item, ',')) core.attachment.push_back(std::stoi(item));
    }
  } catch (const std::logic_error&) {
    throw ParseError("malformed core '" + text + "'");
  }
  if (core.cycle_length < 1) throw ParseError("cycle length must be positive");
  return core;
}

std::string condition_text(const QCondition& q) {
  if (q.members().empty()) return "{}";
  std::string out;
  for (const auto& p : q.members()) out += (out.empty() ? "" : " ") + p.to_string();
  return out;
}

int cmd_count(const Options& opt, int n, bool symmetric, unsigned threads) {
  if (symmetric) {
    const auto conditions = symmetric_conditions(n);
    if (opt.json()) {
      json list = json::array();
      for (const auto& q : conditions) {
        auto j = io::condition_to_json(q);
        if (auto m = m_stable_level(q)) j["m_stable"] = *m;
        list.push_back(j);
      }
      std::cout << json{{"n", n}, {"symmetric", true}, {"count", conditions.size()}, {"conditions", list}}.dump(2) << "\n";
    } else {
      std::cout << conditions.size() << "\n";
      for (const auto& q : conditions) {
        std::cerr << (m_stable_level(q) ? "m=" + std::to_string(*m_stable_level(q)) : std::string("   ")) << "  "
                  << io::antichain_text(to_antichain(q)) << "\n";
      }
    }
    return kOk;
  }
  const auto start = std::chrono::steady_clock::now();
  CountProgress progress;
  if (n >= 5)
    progress = [](std::size_t done, std::size_t total) { std::cerr << "\rfirst elements " << done << "/" << total << std::flush; };
  const auto count = count_conditions(n, threads, progress);
  if (progress) std::cerr << "\n";
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (opt.json()) std::cout << json{{"n", n}, {"symmetric", false}, {"count", count}, {"seconds", seconds}}.dump(2) << "\n";
  else std::cout << count << "\n";
  return kOk;
}

int cmd_enumerate(const Options& opt, int n) {
  const auto conditions = enumerate_conditions(n);
  if (opt.json()) {
    json list = json::array();
    for (const auto& q : conditions) list.push_back(io::condition_to_json(q));
    std::cout << list.dump(2) << "\n";
  } else {
    for (const auto& q : conditions) std::cout << condition_text(q) << "\n";
  }
  return kOk;
}

int print_verdict(const Options& opt, const StabilityVerdict& v) {
  if (opt.json()) std::cout << io::verdict_to_json(v).dump(2) << "\n";
  else std::cout << (v.stable ? "stable" : "unstable: " + v.clause + ": " + v.reason) << "\n";
  return kOk;
}

int cmd_check(const Options& opt, const std::string& type_file, const std::string& q_file, const std::string& cube_file) {
  const auto t = load_type(type_file);
  if (!q_file.empty()) return print_verdict(opt, is_Q_stable(t, load_condition(q_file)));
  return print_verdict(opt, is_cP_stable(t, load_cube(cube_file)));
}

void print_type(const Options& opt, const CombinatorialType& t) {
  if (opt.json()) std::cout << io::type_to_json(t).dump(2) << "\n";
  else std::cout << io::print_type(t) << "\n";
}

int cmd_contract(const Options& opt, const std::string& curve_file, int radius, const std::string& q_file) {
  const auto g = load_curve(curve_file);
  if (!q_file.empty()) {
    print_type(opt, contract_for_Q(g, load_condition(q_file)));
    return kOk;
  }
  const auto radii = radial_structure(g).radii;
  if (radius < 0 || radius > static_cast<int>(radii.size()))
    throw ArgumentError("radius index must lie in 0.." + std::to_string(radii.size()));
  print_type(opt, contract_at_radius(g, radius == 0 ? MonoidElement{} : radii[static_cast<std::size_t>(radius - 1)]));
  return kOk;
}

PartitionChain load_chain(const std::string& text, int n) { return io::parse_chain(text, n > 0 ? std::optional<int>(n) : std::nullopt); }

int cmd_family(const Options& opt, const std::string& chain_text, int n, const std::string& core_text) {
  const auto chain = load_chain(chain_text, n);
  const auto family = contraction_family(chain, parse_core(core_text));
  if (opt.json()) {
    json list = json::array();
    for (const auto& t : family) list.push_back(io::type_to_json(t));
    std::cout << list.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < family.size(); ++i) std::cout << i << "  " << io::print_type(family[i]) << "\n";
  }
  return kOk;
}

int cmd_verify(const Options& opt, const std::string& chain_text, int n, const std::string& core_text, const std::string& q_file) {
  const auto chain = load_chain(chain_text, n);
  const auto index = verify_exactly_one(chain, parse_core(core_text), load_condition(q_file));
  if (opt.json()) std::cout << json{{"chain", chain.to_string()}, {"index", index}}.dump(2) << "\n";
  else std::cout << index << "\n";
  return kOk;
}

int cmd_cube(const Options& opt, int n, bool vertices, bool cells, const std::string& validate_file) {
  if (vertices) {
    const auto conditions = enumerate_conditions(n);
    json list = json::array();
    for (const auto& q : conditions) {
      const auto v = Q_to_vertex(q);
      if (opt.json()) list.push_back(io::cube_point_to_json(v));
      else std::cout << condition_text(q) << "\n";
    }
    if (opt.json()) std::cout << list.dump(2) << "\n";
    return kOk;
  }
  if (cells) {
    const auto all = enumerate_cells(n);
    if (opt.json()) {
      json list = json::array();
      for (const auto& c : all) list.push_back(io::cell_to_json(c));
      std::cout << list.dump(2) << "\n";
    } else {
      std::map<std::size_t, std::size_t> census;
      for (const auto& c : all) ++census[c.dimension()];
      for (const auto& [d, k] : census) std::cout << "dim " << d << ": " << k << "\n";
    }
    return kOk;
  }
  const auto c = load_cube(validate_file);
  if (c.n() != n) throw ArgumentError("cube point has n = " + std::to_string(c.n()) + " but --n is " + std::to_string(n));
  json sing = json::array(), curve = json::array();
  for (const auto& p : q_sing(c)) sing.push_back(io::partition_to_json(p));
  for (const auto& p : q_curve(c)) curve.push_back(io::partition_to_json(p));
  if (opt.json()) {
    std::cout << json{{"valid", true}, {"vertex", c.is_vertex()}, {"q_sing", sing}, {"q_curve", curve}}.dump(2) << "\n";
  } else {
    std::cout << "valid" << (c.is_vertex() ? " vertex" : "") << "\n";
    std::cout << "Q_sing:";
    for (const auto& p : q_sing(c)) std::cout << " " << p;
    std::cout << "\nQ_curve:";
    for (const auto& p : q_curve(c)) std::cout << " " << p;
    std::cout << "\n";
  }
  return kOk;
}

/// Exhaustive invariant sweep at one n; returns the number of failed checks.
int cmd_selftest(const Options& opt, int n) {
  if (n < 1 || n > 4) throw BoundsError("selftest supports 1 <= n <= 4");
  json report = json::array();
  int failures = 0;
  auto check = [&](const std::string& name, auto&& body) {
    std::size_t cases = 0;
    std::string problem;
    try {
      cases = body(problem);
    } catch (const std::exception& e) {
      problem = e.what();
    }
    const bool ok = problem.empty();
    failures += !ok;
    if (opt.json()) report.push_back({{"check", name}, {"cases", cases}, {"pass", ok}, {"detail", problem}});
    else std::cout << (ok ? "PASS " : "FAIL ") << name << " (" << cases << " cases)" << (ok ? "" : ": " + problem) << "\n";
  };
  const auto conditions = enumerate_conditions(n);
  const auto chains = enumerate_chains(n);

  check("antichain duality", [&](std::string& problem) {
    for (const auto& q : conditions)
      if (from_antichain(to_antichain(q)) != q) problem = "round trip failed for " + condition_text(q);
    return conditions.size();
  });
  check("partition type round trip", [&](std::string& problem) {
    std::size_t cases = 0;
    for (const auto& c : chains)
      for (const auto& k : core_kinds_for(c)) {
        ++cases;
        const auto g = build_test_curve(c, k);
        if (!is_stable(g) || !radial_structure(g).basic || partition_type(g) != c) problem = c.to_string() + " / " + k.to_string();
      }
    return cases;
  });
  check("exactly one contraction is stable", [&](std::string& problem) {
    std::size_t cases = 0;
    for (const auto& c : chains)
      for (const auto& k : core_kinds_for(c))
        for (const auto& q : conditions) {
          ++cases;
          verify_exactly_one(c, k, q);
        }
    (void)problem;
    return cases;
  });
  check("contraction levels", [&](std::string& problem) {
    std::size_t cases = 0;
    for (const auto& c : chains)
      for (const auto& k : core_kinds_for(c)) {
        const auto g = build_test_curve(c, k);
        for (const auto& r : radial_structure(g).radii) {
          ++cases;
          const auto t = contract_at_radius(g, r);
          const auto p = partition_at_radius(g, r);
          if (level_of_singularity(t, t.elliptic()->id) != p || t.elliptic()->branch_count() != static_cast<int>(p.block_count()))
            problem = c.to_string() + " at " + r.to_string();
        }
      }
    return cases;
  });
  check("universal radii", [&](std::string& problem) {
    std::size_t cases = 0;
    for (const auto& q : conditions) {
      if (alpha(n, beta(q)) != q) problem = "alpha(beta(Q)) differs for " + condition_text(q);
      for (const auto& c : chains)
        for (const auto& k : core_kinds_for(c)) {
          ++cases;
          const auto g = build_test_curve(c, k);
          if (!check_compatibility(q, g)) problem = "incompatible on " + c.to_string();
          contract_for_Q(g, q);
        }
    }
    return cases;
  });
  check("cube complex", [&](std::string& problem) {
    const auto types = enumerate_types(n);
    const auto cells = enumerate_cells(n);
    std::size_t vertices = 0;
    for (const auto& cell : cells) vertices += cell.dimension() == 0;
    if (vertices != conditions.size()) problem = "vertex count differs from the number of conditions";
    std::size_t cases = 0;
    for (const auto& q : conditions)
      for (const auto& t : types) {
        ++cases;
        if (is_Q_stable(t, q).stable != is_cP_stable(t, Q_to_vertex(q)).stable) problem = "vertex equivalence fails";
      }
    for (const auto& cell : cells) {
      const auto c = cell.sample();
      for (const auto& d : cell.corners())
        for (const auto& t : types) {
          ++cases;
          if (face_contains(c, d) && is_cP_stable(t, d) && !is_cP_stable(t, c)) problem = "face monotonicity fails";
        }
    }
    return cases;
  });
  if (opt.json()) std::cout << json{{"n", n}, {"checks", report}, {"failures", failures}}.dump(2) << "\n";
  return failures ? kViolation : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Q-stability conditions, tropical test curves and their contractions"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  int n = 0;
  bool symmetric = false;
  unsigned threads = 0;
  auto* count = app.add_subcommand("count-q", "Count the stability conditions on n markings");
  count->add_option("n", n, "Number of markings")->required();
  count->add_flag("--symmetric", symmetric, "Only S_n-invariant conditions");
  count->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* enumerate = app.add_subcommand("enumerate-q", "List every stability condition (n <= 4)");
  enumerate->add_option("n", n, "Number of markings")->required();

  std::string type_file, q_file, cube_file, curve_file, chain_text, core_text = "smooth", validate_file;
  int radius = -1;
  auto* check = app.add_subcommand("check-stability", "Decide stability of a combinatorial type");
  check->add_option("--type", type_file, "Type file (JSON or text)")->required();
  auto* check_q = check->add_option("--q", q_file, "Condition JSON");
  auto* check_cube = check->add_option("--cube", cube_file, "Cube point JSON");
  check_q->excludes(check_cube);
  check->require_option(2);

  auto* contract_cmd = app.add_subcommand("contract", "Contract a tropical curve at a radius");
  contract_cmd->add_option("--curve", curve_file, "Curve file (JSON or DSL)")->required();
  auto* radius_opt = contract_cmd->add_option("--radius", radius, "Radius index (0 = no contraction)");
  auto* contract_q = contract_cmd->add_option("--q", q_file, "Condition JSON selecting the radius");
  radius_opt->excludes(contract_q);
  contract_cmd->require_option(2);

  auto* family = app.add_subcommand("family", "Contractions of the test curve of a chain");
  family->add_option("--chain", chain_text, "Chain, e.g. \"1234 < 12|34\"")->required();
  family->add_option("--core", core_text, "smooth | cycle:<j>[:<positions>]");
  family->add_option("--n", n, "Number of markings (needed for the empty chain)");

  auto* verify = app.add_subcommand("verify-exactly-one", "Index of the unique Q-stable contraction");
  verify->add_option("--chain", chain_text, "Chain")->required();
  verify->add_option("--q", q_file, "Condition JSON")->required();
  verify->add_option("--core", core_text, "smooth | cycle:<j>[:<positions>]");
  verify->add_option("--n", n, "Number of markings");

  bool vertices = false, cells = false;
  auto* cube = app.add_subcommand("cube", "Cube complex reports");
  cube->add_option("--n", n, "Number of markings")->required();
  auto* v_flag = cube->add_flag("--vertices", vertices, "List vertices");
  auto* c_flag = cube->add_flag("--cells", cells, "List cells");
  auto* val_opt = cube->add_option("--validate", validate_file, "Validate a cube point JSON");
  v_flag->excludes(c_flag)->excludes(val_opt);
  c_flag->excludes(val_opt);

  int self_n = 3;
  auto* selftest = app.add_subcommand("selftest", "Exhaustive invariant sweep");
  selftest->add_option("--n", self_n, "Number of markings (1..4)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (cube->parsed() && !vertices && !cells && validate_file.empty()) {
    std::cerr << "cube: one of --vertices, --cells, --validate is required\n";
    return kUsage;
  }

  try {
    if (count->parsed()) return cmd_count(opt, n, symmetric, threads);
    if (enumerate->parsed()) return cmd_enumerate(opt, n);
    if (check->parsed()) return cmd_check(opt, type_file, q_file, cube_file);
    if (contract_cmd->parsed()) return cmd_contract(opt, curve_file, radius, q_file);
    if (family->parsed()) return cmd_family(opt, chain_text, n, core_text);
    if (verify->parsed()) return cmd_verify(opt, chain_text, n, core_text, q_file);
    if (cube->parsed()) return cmd_cube(opt, n, vertices, cells, validate_file);
    if (selftest->parsed()) return cmd_selftest(opt, self_n);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
