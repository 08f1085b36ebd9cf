#include "stratobs/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace stratobs {
namespace {

Json complex_to_json(Complex c) {
  if (c.imag() == 0.0) return c.real();
  return Json::array({c.real(), c.imag()});
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw FormatError("coefficient must be a number or [re, im]");
}

Json index_to_json(ModeIndex idx) {
  if (idx.two_dimensional()) return Json::array({idx.m, idx.n});
  return idx.m;
}

Json exact_to_json(const std::optional<ExactReal>& x) { return x ? Json(x->str()) : Json(nullptr); }

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string csv_value(double v) { return std::isnan(v) ? "nan" : format_double(v); }

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json with_header(const Json& body, const Json& config) {
  Json out;
  out["format_version"] = kFormatVersion;
  out["generator"] = {{"tool", kToolName}, {"version", kToolVersion}, {"config", config}};
  for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
  return out;
}

Json system_to_json(const WaveSystem& sys) {
  switch (sys.type()) {
    case WaveSystem::Type::beam: return {{"type", "beam"}};
    case WaveSystem::Type::plate: return {{"type", "plate"}, {"a", sys.side_a()}, {"b", sys.side_b()}};
    default: {
      Json j{{"type", "string"}, {"q", sys.load_value()}};
      if (sys.load().sign() != 0) j["q_exact"] = sys.load().str();
      return j;
    }
  }
}

WaveSystem system_from_json(const Json& j) {
  const std::string type = require(j, "type").get<std::string>();
  try {
    if (type == "beam") return WaveSystem::beam();
    if (type == "plate") return WaveSystem::plate(require(j, "a").get<double>(), require(j, "b").get<double>());
    if (type == "string") {
      if (j.contains("q_exact")) return WaveSystem::string(ExactReal::parse(j.at("q_exact").get<std::string>()));
      const double q = j.contains("q") ? j.at("q").get<double>() : 0.0;
      return WaveSystem::string(Rational::from_decimal(format_double(q)));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad system field: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bad system: ") + e.what());
  }
  throw FormatError("unknown system type: " + type);
}

Json snapshot_to_json(const CoefficientVector& v, const std::optional<ExactReal>& gap_over_pi) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["system"] = system_to_json(v.system);
  j["role"] = role_name(v.role);
  j["time"] = v.time;
  if (v.time_over_pi) j["time_over_pi"] = v.time_over_pi->str();
  j["modes"] = v.layout.plate ? Json::array({v.layout.rows, v.layout.cols}) : Json(v.layout.rows);
  Json coeffs = Json::array();
  for (const auto& c : v.coeffs) coeffs.push_back(complex_to_json(c));
  j["coefficients"] = std::move(coeffs);
  if (gap_over_pi) j["gap_over_pi"] = gap_over_pi->str();
  return j;
}

CoefficientVector snapshot_from_json(const Json& j) {
  try {
    if (require(j, "format_version").get<int>() != kFormatVersion) throw FormatError("unsupported format_version");
    CoefficientVector v;
    v.system = system_from_json(require(j, "system"));
    v.role = parse_role(require(j, "role").get<std::string>());
    v.time = require(j, "time").get<double>();
    if (j.contains("time_over_pi")) v.time_over_pi = ExactReal::parse(j.at("time_over_pi").get<std::string>());
    const Json& modes = require(j, "modes");
    if (modes.is_array()) {
      if (modes.size() != 2) throw FormatError("plate modes must be [M, N]");
      v.layout = ModeLayout::grid(modes[0].get<std::size_t>(), modes[1].get<std::size_t>());
    } else {
      v.layout = ModeLayout::line(modes.get<std::size_t>());
    }
    if (!v.system.compatible(v.layout)) throw FormatError("modes layout does not match the system");
    const Json& coeffs = require(j, "coefficients");
    if (!coeffs.is_array() || coeffs.size() != v.layout.size())
      throw FormatError("coefficient count does not match modes");
    for (const auto& c : coeffs) v.coeffs.push_back(complex_from_json(c));
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed snapshot: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("malformed snapshot: ") + e.what());
  }
}

Json certificate_to_json(const StrategicCertificate& c) {
  Json j;
  j["kind"] = "strategic-certificate";
  j["system"] = c.system;
  j["gap_over_pi"] = c.gap.str();
  j["gap_over_pi_value"] = c.gap.to_double();
  if (c.gap2) {
    j["theta1"] = c.gap2->str();
    j["theta2"] = c.gap.str();
  }
  j["exponent"] = c.exponent;
  j["scale"] = c.scale;
  j["scan"] = c.n_max ? Json{{"m_max", c.k_max}, {"n_max", c.n_max}} : Json{{"k_max", c.k_max}};
  j["c_star"] = c.c_star;
  j["c_star_exact"] = exact_to_json(c.c_star_exact);
  j["c_star_lower_bound"] = c.c_star_lower_bound;
  j["argmin"] = c.n_max ? Json::array({c.argmin, c.argmin_n}) : Json(c.argmin);
  j["precision_warning"] = c.precision_warning;
  j["K"] = c.K ? Json(to_string(*c.K)) : Json(nullptr);
  j["K_certain"] = c.K_certain;
  j["theoretical_floor"] = c.theoretical_floor ? Json(c.theoretical_floor->str()) : Json(nullptr);
  j["theoretical_floor_value"] = c.theoretical_floor ? Json(c.theoretical_floor->to_double()) : Json(nullptr);
  if (c.plate_reduction_N) j["plate_reduction_N"] = *c.plate_reduction_N;
  j["verdict"] = verdict_name(c.verdict);
  j["notes"] = c.notes;
  if (!c.dirichlet_witnesses.empty()) {
    Json w = Json::array();
    for (const auto& k : c.dirichlet_witnesses) w.push_back(to_string(k));
    j["dirichlet_witnesses"] = std::move(w);
  }
  if (c.loaded) {
    const LoadedDetails& L = *c.loaded;
    Json squares = Json::array();
    for (const auto& [k, x] : L.perfect_squares) squares.push_back({{"k", k}, {"root", x.str()}});
    j["loaded"] = {{"q", L.q.str()},
                   {"hypothesis", L.hypothesis},
                   {"perfect_squares", squares},
                   {"violated_at", L.violated_at ? Json(*L.violated_at) : Json(nullptr)},
                   {"sine_floor", L.sine_floor},
                   {"sine_argmin", L.sine_argmin},
                   {"perturbation_applies", L.perturbation_applies},
                   {"base_c", L.base_c},
                   {"q_max", L.q_max},
                   {"q_max_refined", L.q_max_refined},
                   {"c_prime", L.c_prime}};
  }
  return j;
}

Json report_to_json(const ReconstructionReport& r) {
  Json j;
  j["kind"] = "reconstruction-report";
  j["system"] = system_to_json(r.state.system);
  j["modes"] = r.state.layout.plate ? Json::array({r.state.layout.rows, r.state.layout.cols})
                                    : Json(r.state.layout.rows);
  Json singular = Json::array();
  for (const auto& s : r.singular_modes) singular.push_back(index_to_json(s));
  j["singular_modes"] = std::move(singular);
  j["worst_mode"] = r.modes.empty() ? Json(nullptr) : index_to_json(r.modes[r.worst_mode].index);
  j["worst_cond"] = r.worst_cond;
  j["max_residual"] = r.max_residual;
  j["noise_bound_note"] = "per-mode amplification ||T_k^{-1}|| is this tool's quantitative reading of the continuity remark";
  Json modes = Json::array();
  for (const auto& m : r.modes)
    modes.push_back({{"index", index_to_json(m.index)},
                     {"abs_det", m.abs_det},
                     {"cond", m.singular ? Json(nullptr) : Json(m.cond)},
                     {"inverse_norm", m.singular ? Json(nullptr) : Json(m.inverse_norm)},
                     {"residual", m.residual},
                     {"singular", m.singular},
                     {"phase_over_pi", m.phase_over_pi},
                     {"a", complex_to_json(m.a)},
                     {"b", complex_to_json(m.b)}});
  j["per_mode"] = std::move(modes);
  j["y0"] = snapshot_to_json(r.y0);
  j["y1"] = snapshot_to_json(r.y1);
  return j;
}

Json gap_certificate_to_json(const RationalGapCertificate& c) {
  Json j;
  j["kind"] = "rational-gap-certificate";
  j["tau"] = c.tau;
  j["delta"] = c.delta;
  j["q"] = c.q.str();
  j["branch"] = c.branch;
  j["base"] = {{"a", to_string(c.base.num())}, {"b", to_string(c.base.den())}};
  j["tau_prime_over_pi"] = {{"num", to_string(c.ratio.num())}, {"den", to_string(c.ratio.den())}};
  j["tau_prime"] = c.tau_prime;
  j["distance"] = c.distance;
  j["perturbed"] = c.perturbed;
  j["prime"] = c.prime ? Json(*c.prime) : Json(nullptr);
  j["power"] = c.power ? Json(*c.power) : Json(nullptr);
  j["scale"] = to_string(c.scale);
  Json sq = Json::array();
  for (std::size_t i = 0; i < c.square_ks.size(); ++i)
    sq.push_back({{"k", c.square_ks[i]}, {"x", to_string(c.x_values[i])}});
  j["perfect_squares"] = std::move(sq);
  return j;
}

Json noise_to_json(const NoiseReport& n) {
  return {{"kind", "noise-experiment"}, {"sigma", n.sigma},         {"trials", n.trials},
          {"seed", n.seed},             {"order", n.order},         {"alpha", n.alpha},
          {"mean_error", n.mean_error}, {"max_error", n.max_error}, {"rms_error", n.rms_error},
          {"prediction", n.prediction}, {"envelope", n.envelope},   {"c_star", n.c_star},
          {"ratio", n.ratio}};
}

Json loaded_gap_to_json(const LoadedGapResult& r) {
  return {{"kind", "loaded-gap"}, {"n", r.n},           {"xi_n", r.xi_n.str()}, {"gap", r.gap},
          {"nu", r.nu},           {"nu_raw", r.nu_raw}, {"safety", r.safety},   {"margin", r.margin},
          {"sine_floor", r.sine_floor}, {"sine_argmin", r.sine_argmin}};
}

std::string certify_csv(const std::vector<double>& distance, const std::vector<double>& scaled) {
  std::string out = "k,distance,scaled_floor\n";
  for (std::size_t i = 0; i < distance.size(); ++i)
    out += std::to_string(i + 1) + "," + csv_value(distance[i]) + "," + csv_value(scaled[i]) + "\n";
  return out;
}

std::string reconstruct_csv(const ReconstructionReport& r, const ModalState* reference) {
  std::string out = "k,abs_det,cond,err_a,err_b\n";
  const double nan = std::nan("");
  for (std::size_t i = 0; i < r.modes.size(); ++i) {
    const ModeReport& m = r.modes[i];
    const double ea = reference ? std::abs(m.a - reference->a[i]) : nan;
    const double eb = reference ? std::abs(m.b - reference->b[i]) : nan;
    out += std::to_string(i + 1) + "," + csv_value(m.abs_det) + "," + csv_value(m.cond) + "," + csv_value(ea) + "," +
           csv_value(eb) + "\n";
  }
  return out;
}

std::string sensitivity_csv(const SensitivityProfile& p) {
  std::string out = "k,factor,bound\n";
  for (std::size_t i = 0; i < p.entries.size(); ++i)
    out += std::to_string(i + 1) + "," + csv_value(p.entries[i].factor) + "," + csv_value(p.entries[i].bound) + "\n";
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError("cannot parse " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace stratobs
