#include "actk/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace actk {

using nlohmann::json;

ParamsConfig parse_params(const std::string& json_text) {
  json j = json::parse(json_text);
  ParamsConfig cfg;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "raw") {
    cfg.params.d = j.at("d").get<int>();
    cfg.params.kappa = j.at("kappa").get<std::vector<double>>();
    cfg.params.lambda = j.at("lambda").get<std::vector<double>>();
    cfg.params.delta = j.at("delta").get<double>();
  } else if (kind == "scaled") {
    ScaledParams sp;
    sp.V = j.at("V").get<double>();
    sp.D = j.at("D").get<double>();
    sp.kappa_prime = j.at("kappa_prime").get<std::vector<double>>();
    cfg.scaled = sp;
    cfg.params = sp.to_unscaled();
  } else {
    throw std::invalid_argument("params: kind must be 'raw' or 'scaled'");
  }
  cfg.params.validate();
  return cfg;
}

ParamsConfig load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_params(ss.str());
}

std::string params_to_json(const ParamsConfig& cfg) {
  json j;
  if (cfg.scaled) {
    j["kind"] = "scaled";
    j["V"] = cfg.scaled->V;
    j["D"] = cfg.scaled->D;
    j["kappa_prime"] = cfg.scaled->kappa_prime;
  } else {
    j["kind"] = "raw";
    j["d"] = cfg.params.d;
    j["kappa"] = cfg.params.kappa;
    j["lambda"] = cfg.params.lambda;
    j["delta"] = cfg.params.delta;
  }
  return j.dump();
}

void write_file_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for write: " + tmp);
    out << text;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed for: " + path);
}

namespace {
std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

void write_distribution_csv(const Distribution& dist, const std::string& path) {
  if (dist.log_prob.empty())
    throw std::invalid_argument("write_distribution_csv: empty distribution");
  const int d = dist.log_prob.begin()->first.d();
  std::ostringstream out;
  for (int i = 1; i <= d; ++i) out << "a" << i << ",";
  out << "n,log_prob,prob\n";
  for (const State& s : dist.sorted_states()) {
    for (int i = 0; i < d; ++i) out << s[i] << ",";
    const double lp = dist.log_prob.at(s);
    out << s.n() << "," << fmt17(lp) << "," << fmt17(std::exp(lp)) << "\n";
  }
  write_file_atomic(path, out.str());
}

Distribution read_distribution_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CSV: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path);
  // count species columns from header
  int d = 0;
  {
    std::istringstream hs(line);
    std::string col;
    while (std::getline(hs, col, ',')) {
      if (col.size() >= 2 && col[0] == 'a' && std::isdigit(col[1])) ++d;
    }
  }
  if (d == 0) throw std::runtime_error("CSV header has no species columns: " + path);
  const bool occupation = line.find("time_fraction") != std::string::npos;

  Distribution dist;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    State s;
    s.a.resize(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
      std::getline(ls, cell, ',');
      s[i] = std::stoi(cell);
    }
    std::getline(ls, cell, ',');  // n
    if (occupation) {
      std::getline(ls, cell, ',');
      double frac = std::stod(cell);
      if (frac > 0.0) dist.log_prob.emplace(s, std::log(frac));
    } else {
      std::getline(ls, cell, ',');
      dist.log_prob.emplace(s, std::stod(cell));
    }
  }
  dist.normalize();
  return dist;
}

void write_occupation_csv(const OccupationMeasure& occ, const std::string& path) {
  if (occ.weights.empty())
    throw std::invalid_argument("write_occupation_csv: empty measure");
  const int d = occ.weights.begin()->first.d();
  double total = 0.0;
  for (const auto& [s, w] : occ.weights) total += w;
  std::vector<State> states;
  states.reserve(occ.weights.size());
  for (const auto& [s, w] : occ.weights) states.push_back(s);
  std::sort(states.begin(), states.end(), [](const State& x, const State& y) {
    int nx = x.n(), ny = y.n();
    if (nx != ny) return nx < ny;
    return x < y;
  });
  std::ostringstream out;
  for (int i = 1; i <= d; ++i) out << "a" << i << ",";
  out << "n,time_fraction\n";
  for (const State& s : states) {
    for (int i = 0; i < d; ++i) out << s[i] << ",";
    out << s.n() << "," << fmt17(occ.weights.at(s) / total) << "\n";
  }
  write_file_atomic(path, out.str());
}

}  // namespace actk
