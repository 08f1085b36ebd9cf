#include "stratobs/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <regex>
#include <sstream>

namespace stratobs::cli {
namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

ExactReal parse_exact(const std::string& text, const char* flag) {
  try {
    return ExactReal::parse(text);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string(flag) + ": " + e.what());
  }
}

double parse_side(const std::string& text) {
  if (text == "pi") return std::numbers::pi;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("--plate: bad side length '" + text + "'");
  }
}

std::pair<std::uint64_t, std::uint64_t> parse_pair(const std::string& text, const char* flag) {
  static const std::regex re(R"(^(\d+)(?:[xX](\d+))?$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw ValidationError(std::string(flag) + ": expected N or MxN");
  const std::uint64_t a = std::stoull(m[1].str());
  const std::uint64_t b = m[2].matched ? std::stoull(m[2].str()) : a;
  if (a < 1 || b < 1) throw ValidationError(std::string(flag) + ": bounds must be >= 1");
  return {a, b};
}

WaveSystem make_system(const ExperimentConfig& cfg) {
  if (cfg.system == "beam") return WaveSystem::beam();
  if (cfg.system == "plate") {
    const auto sides = split(cfg.plate, ',');
    if (sides.size() != 2) throw ValidationError("--plate: expected a,b");
    const double a = parse_side(sides[0]), b = parse_side(sides[1]);
    if (!(a > 0) || !(b > 0)) throw ValidationError("--plate: sides must be positive");
    return WaveSystem::plate(a, b);
  }
  if (cfg.system == "string") {
    const ExactReal q = parse_exact(cfg.q, "--q");
    if (q.sign() < 0) throw ValidationError("--q must be >= 0");
    return WaveSystem::string(q);
  }
  throw ValidationError("--system must be string, beam or plate");
}

ModeLayout make_layout(const ExperimentConfig& cfg, const WaveSystem& sys) {
  const bool grid = cfg.modes.find_first_of("xX") != std::string::npos;
  const auto [m, n] = parse_pair(cfg.modes, "--modes");
  if (sys.type() == WaveSystem::Type::plate) return ModeLayout::grid(m, n);
  if (grid) throw ValidationError("--modes: MxN is only valid for plates");
  return ModeLayout::line(m);
}

ScanOptions scan_options(const ExperimentConfig& cfg) {
  ScanOptions o;
  o.execution = cfg.serial ? kernels::Execution::serial : kernels::Execution::parallel;
  if (cfg.precision == "192")
    o.precision = FloatPrecision::bits192;
  else if (cfg.precision != "128")
    throw ValidationError("--precision must be 128 or 192");
  return o;
}

double order_gap(const ExperimentConfig& cfg) {
  if (cfg.r < cfg.s) throw ValidationError("--orders: r must be >= s");
  return cfg.r - cfg.s;
}

ExactReal require_gap(const ExperimentConfig& cfg) {
  if (cfg.gap.empty()) throw ValidationError("--gap is required");
  return parse_exact(cfg.gap, "--gap");
}

std::filesystem::path prepare_out(const ExperimentConfig& cfg) {
  const std::filesystem::path dir(output_dir(cfg));
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

void write_json(const std::filesystem::path& path, const Json& body, const ExperimentConfig& cfg) {
  write_text_file(path.string(), with_header(body, cfg.to_json()).dump(2) + "\n");
  std::cout << path.string() << "\n";
}

void write_csv(const std::filesystem::path& path, const std::string& text) {
  write_text_file(path.string(), text);
  std::cout << path.string() << "\n";
}

CoefficientVector load_snapshot(const std::string& path) {
  try {
    return snapshot_from_json(read_json_file(path));
  } catch (const FormatError& e) {
    throw IoError(path + ": " + e.what());
  }
}

std::pair<std::vector<Role>, bool> parse_kinds(const std::string& text) {
  std::vector<Role> out;
  bool velocity = false;
  for (const auto& k : split(text, ',')) {
    if (k == "position" || k == "pos") {
      out.push_back(Role::position);
    } else if (k == "velocity" || k == "vel") {
      out.push_back(Role::velocity);
      velocity = true;
    } else {
      throw ValidationError("--kinds: unknown kind '" + k + "'");
    }
  }
  if (out.size() != 2) throw ValidationError("--kinds: expected two kinds");
  return {out, velocity};
}

/// Per-index (distance, scaled) rows for loaded strings, mixed rows and plates.
template <class Dist>
std::pair<std::vector<double>, std::vector<double>> float_profile(std::uint64_t count, const Dist& dist) {
  std::vector<double> d(count), w(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto [dv, weight] = dist(i + 1);
    d[i] = static_cast<double>(dv);
    w[i] = static_cast<double>(weight * dv);
  }
  return {d, w};
}

}  // namespace

Json ExperimentConfig::to_json() const {
  return {{"command", command}, {"system", system},   {"q", q},           {"plate", plate},
          {"theta", theta},     {"gap", gap},         {"times", times},   {"kinds", kinds},
          {"orders", {r, s}},   {"modes", modes},     {"kmax", kmax},     {"box", box},
          {"sigma", sigma},     {"trials", trials},   {"seed", seed},     {"tau", tau},
          {"delta", delta},     {"nmax", nmax},       {"precision", precision},
          {"serial", serial},   {"reference", reference}, {"inputs", inputs}};
}

namespace {

void bind(CLI::App& app, ExperimentConfig& cfg, std::string& orders) {
  app.add_option("command", cfg.command, "simulate | certify | reconstruct | construct | scan")->required();
  app.add_option("inputs", cfg.inputs, "snapshot files (reconstruct) or initial data files (simulate)");
  app.add_option("--system", cfg.system, "string | beam | plate");
  app.add_option("--q", cfg.q, "string load q >= 0 (ExactReal syntax)");
  app.add_option("--plate", cfg.plate, "plate sides a,b");
  app.add_option("--theta", cfg.theta, "plate: theta1,theta2 (ExactReal syntax)");
  app.add_option("--gap", cfg.gap, "(t0 - t1)/pi (ExactReal syntax)");
  app.add_option("--times", cfg.times, "observation times")->delimiter(',');
  app.add_option("--kinds", cfg.kinds, "row kinds, e.g. position,velocity");
  app.add_option("--orders", orders, "r,s");
  app.add_option("--modes", cfg.modes, "truncation N (MxN for plates)");
  app.add_option("--kmax", cfg.kmax, "scan bound");
  app.add_option("--box", cfg.box, "plate scan box MxN");
  app.add_option("--sigma", cfg.sigma, "noise scale");
  app.add_option("--trials", cfg.trials, "noise trials");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--tau", cfg.tau, "construct: target gap");
  app.add_option("--delta", cfg.delta, "construct: tolerance");
  app.add_option("--nmax", cfg.nmax, "construct: loaded-gap search depth");
  app.add_option("--precision", cfg.precision, "float scan precision: 128 or 192");
  app.add_flag("--serial", cfg.serial, "use the serial reference kernels");
  app.add_option("--out", cfg.out, std::string("output directory (default $") + kOutDirEnv + " or .)");
  app.add_option("--reference", cfg.reference, "reconstruct: initial position,velocity files for err columns");
}

void apply_orders(ExperimentConfig& cfg, const std::string& orders) {
  if (orders.empty()) return;
  const auto parts = split(orders, ',');
  if (parts.size() != 2) throw ValidationError("--orders: expected r,s");
  try {
    cfg.r = std::stod(parts[0]);
    cfg.s = std::stod(parts[1]);
  } catch (const std::exception&) {
    throw ValidationError("--orders: expected two numbers");
  }
}

}  // namespace

ExperimentConfig parse_args(int argc, const char* const* argv) {
  CLI::App app{"stratobs"};
  ExperimentConfig cfg;
  std::string orders;
  bind(app, cfg, orders);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    throw ValidationError(e.what());
  }
  apply_orders(cfg, orders);
  return cfg;
}

std::string output_dir(const ExperimentConfig& cfg) {
  if (!cfg.out.empty()) return cfg.out;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return ".";
}

int cmd_simulate(const ExperimentConfig& cfg) {
  const WaveSystem sys = make_system(cfg);
  const ModeLayout layout = make_layout(cfg, sys);
  ModalState state;
  if (cfg.inputs.size() == 2) {
    CoefficientVector y0 = load_snapshot(cfg.inputs[0]);
    CoefficientVector y1 = load_snapshot(cfg.inputs[1]);
    state = to_modal(y0, y1);
  } else if (cfg.inputs.empty()) {
    state = random_real_state(sys, layout, cfg.seed, cfg.s);
  } else {
    throw ValidationError("simulate takes either no inputs or initial position and velocity files");
  }

  std::vector<CoefficientVector> snaps;
  std::optional<ExactReal> gap;
  if (!cfg.gap.empty()) {
    gap = require_gap(cfg);
    for (auto& s : gap_snapshots(state, *gap).snapshots) snaps.push_back(std::move(s));
  } else {
    if (cfg.times.empty()) throw ValidationError("simulate needs --times or --gap");
    for (double t : cfg.times) snaps.push_back(evolve(state, t));
  }

  const auto dir = prepare_out(cfg);
  auto [y0, y1] = from_modal(state);
  write_json(dir / "initial_position.json", snapshot_to_json(y0), cfg);
  write_json(dir / "initial_velocity.json", snapshot_to_json(y1), cfg);
  for (std::size_t i = 0; i < snaps.size(); ++i)
    write_json(dir / ("snapshot_" + std::to_string(i) + ".json"), snapshot_to_json(snaps[i], gap), cfg);
  return kOk;
}

int cmd_certify(const ExperimentConfig& cfg) {
  const WaveSystem sys = make_system(cfg);
  const ScanOptions opts = scan_options(cfg);
  const double rs = order_gap(cfg);
  const auto [kinds, mixed] = parse_kinds(cfg.kinds);
  if (cfg.kmax < 1) throw ValidationError("--kmax must be >= 1");

  StrategicCertificate cert;
  std::vector<double> dist, scaled;
  if (sys.type() == WaveSystem::Type::plate) {
    const auto [m_max, n_max] = parse_pair(cfg.box, "--box");
    const double alpha = rs / 2.0;
    if (!cfg.theta.empty()) {
      const auto parts = split(cfg.theta, ',');
      if (parts.size() != 2) throw ValidationError("--theta: expected theta1,theta2");
      cert = certify_plate_theta(parse_exact(parts[0], "--theta"), parse_exact(parts[1], "--theta"), alpha, m_max,
                                 n_max, opts);
    } else {
      cert = certify_plate(require_gap(cfg), sys, alpha, m_max, n_max, opts);
    }
    const Float128 t1(cert.gap2->mid()), t2(cert.gap.mid());
    std::tie(dist, scaled) = float_profile(m_max * n_max, [&](std::uint64_t flat) {
      const Float128 m((flat - 1) / n_max + 1), n((flat - 1) % n_max + 1);
      return std::pair{kernels::float_distance(Float128(m * m * t1 + n * n * t2)), pow(m * m + n * n, Float128(alpha))};
    });
  } else {
    const ExactReal xi = require_gap(cfg);
    const bool beam = sys.type() == WaveSystem::Type::beam;
    const bool loaded = !beam && sys.load().sign() != 0;
    if (mixed) {
      cert = certify_mixed(xi, sys, rs, cfg.kmax, opts);
    } else if (loaded) {
      cert = certify_loaded(xi, sys.load(), cfg.kmax, opts);
    } else {
      cert = beam ? certify_beam(xi, rs, cfg.kmax, opts) : certify_string(xi, rs, cfg.kmax, opts);
      const FloorProfile p = floor_profile(xi, rs, cfg.kmax, opts,
                                           beam ? kernels::IndexMap::square : kernels::IndexMap::linear);
      dist = p.distance;
      scaled = p.scaled;
    }
    if (mixed || loaded) {
      const Float128 x(xi.mid()), q(sys.load().mid());
      const double alpha = loaded && !mixed ? 1.0 : rs;
      std::tie(dist, scaled) = float_profile(cfg.kmax, [&](std::uint64_t k) {
        const Float128 kk(k);
        const Float128 w = beam ? kk * kk : sqrt(kk * kk + q);
        const Float128 shift = mixed ? Float128(0.5) : Float128(0);
        return std::pair{kernels::float_distance(Float128(w * x + shift)), pow(kk, Float128(alpha))};
      });
    }
  }
  const auto dir = prepare_out(cfg);
  write_json(dir / "certificate.json", certificate_to_json(cert), cfg);
  write_csv(dir / "certificate.csv", certify_csv(dist, scaled));
  std::cout << "verdict " << verdict_name(cert.verdict) << " c_star " << format_double(cert.c_star) << "\n";
  return kOk;
}

int cmd_reconstruct(const ExperimentConfig& cfg) {
  if (cfg.inputs.size() < 2) throw ValidationError("reconstruct needs at least two snapshot files");
  SnapshotSet set;
  bool velocity = false;
  for (const auto& path : cfg.inputs) {
    set.snapshots.push_back(load_snapshot(path));
    velocity = velocity || set.snapshots.back().role == Role::velocity;
  }
  const auto exec = cfg.serial ? kernels::Execution::serial : kernels::Execution::parallel;
  const ReconstructionReport rep = velocity ? mixed_reconstruct(set, exec) : reconstruct(set, exec);

  std::optional<ModalState> ref;
  if (!cfg.reference.empty()) {
    const auto parts = split(cfg.reference, ',');
    if (parts.size() != 2) throw ValidationError("--reference: expected position,velocity files");
    ref = to_modal(load_snapshot(parts[0]), load_snapshot(parts[1]));
  }
  const auto dir = prepare_out(cfg);
  write_json(dir / "report.json", report_to_json(rep), cfg);
  write_csv(dir / "report.csv", reconstruct_csv(rep, ref ? &*ref : nullptr));
  if (!rep.singular_modes.empty()) {
    std::cerr << "stratobs: " << rep.singular_modes.size() << " singular mode(s), first "
              << rep.singular_modes.front().str() << "; partial report written\n";
    return kSingular;
  }
  return kOk;
}

int cmd_construct(const ExperimentConfig& cfg) {
  const ExactReal q = parse_exact(cfg.q, "--q");
  const auto dir = prepare_out(cfg);
  if (cfg.nmax > 0) {
    const auto res = loaded_gap_search(q, require_gap(cfg), cfg.nmax, cfg.kmax, scan_options(cfg));
    if (!res) throw ValidationError("no admissible shift within --nmax");
    write_json(dir / "loaded_gap.json", loaded_gap_to_json(*res), cfg);
    return kOk;
  }
  if (!(cfg.delta > 0)) throw ValidationError("--delta must be positive");
  const RationalGapCertificate cert = construct_rational_gap(cfg.tau, cfg.delta, q);
  write_json(dir / "gap_certificate.json", gap_certificate_to_json(cert), cfg);
  return kOk;
}

int cmd_scan(const ExperimentConfig& cfg) {
  const WaveSystem sys = make_system(cfg);
  const ModeLayout layout = make_layout(cfg, sys);
  const ExactReal xi = require_gap(cfg);
  double alpha = order_gap(cfg);
  if (sys.type() == WaveSystem::Type::plate) alpha /= 2.0;
  if (cfg.trials < 1) throw ValidationError("--trials must be >= 1");
  if (!(cfg.sigma >= 0)) throw ValidationError("--sigma must be >= 0");
  const auto exec = cfg.serial ? kernels::Execution::serial : kernels::Execution::parallel;

  const SensitivityProfile prof = sensitivity_profile(xi, sys, alpha, layout);
  const ModalState state = random_real_state(sys, layout, cfg.seed, cfg.s);
  Json body;
  body["kind"] = "scan";
  Json singular = Json::array();
  double worst = 0.0;
  for (const auto& e : prof.entries) {
    if (e.infinite)
      singular.push_back(e.index.str());
    else
      worst = std::max(worst, e.factor);
  }
  body["sensitivity"] = {{"c_star", prof.c_star},
                         {"within_bound", prof.within_bound},
                         {"max_factor", worst},
                         {"singular_modes", singular}};
  if (singular.empty())
    body["noise"] = noise_to_json(noise_experiment(state, xi, cfg.sigma, cfg.trials, cfg.seed, cfg.s, alpha, exec));
  const auto dir = prepare_out(cfg);
  write_csv(dir / "sensitivity.csv", sensitivity_csv(prof));
  write_json(dir / "scan.json", body, cfg);
  return singular.empty() ? kOk : kSingular;
}

int run(const ExperimentConfig& cfg) {
  try {
    if (cfg.command == "simulate") return cmd_simulate(cfg);
    if (cfg.command == "certify") return cmd_certify(cfg);
    if (cfg.command == "reconstruct") return cmd_reconstruct(cfg);
    if (cfg.command == "construct") return cmd_construct(cfg);
    if (cfg.command == "scan") return cmd_scan(cfg);
    throw ValidationError("unknown command '" + cfg.command + "'");
  } catch (const SingularModeError& e) {
    std::cerr << "stratobs: " << e.what() << "\n";
    return kSingular;
  } catch (const IoError& e) {
    std::cerr << "stratobs: " << e.what() << "\n";
    return kIo;
  } catch (const FormatError& e) {
    std::cerr << "stratobs: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "stratobs: " << e.what() << "\n";
    return kValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "stratobs: " << e.what() << "\n";
    return kValidation;
  } catch (const std::out_of_range& e) {
    std::cerr << "stratobs: " << e.what() << "\n";
    return kValidation;
  }
}

int main_entry(int argc, const char* const* argv) {
  CLI::App app{"stratobs: strategic observation times for strings, beams and plates"};
  ExperimentConfig cfg;
  std::string orders;
  bind(app, cfg, orders);
  try {
    app.parse(argc, argv);
    apply_orders(cfg, orders);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  } catch (const ValidationError& e) {
    std::cerr << "stratobs: " << e.what() << "\n";
    return kValidation;
  }
  return run(cfg);
}

}  // namespace stratobs::cli
