#include "sfcdf/grid.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sfcdf {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::runtime_error("grid file: bad number '" + item + "' for key '" + key + "'");
    }
    if (used != item.size()) {
      throw std::runtime_error("grid file: bad number '" + item + "' for key '" + key + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw std::runtime_error("grid file: empty value list for key '" + key + "'");
  return out;
}

template <class F>
double bisect_quantile(const F& cdf_at, double lo, double hi, double p) {
  for (int i = 0; i < 200 && (hi - lo) > 1e-13 * (1.0 + std::fabs(lo) + std::fabs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf_at(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

template <class F>
std::vector<double> kappa_span_impl(const F& cdf_at, double anchor, double scale, int count,
                                    double p_lo, double p_hi) {
  if (count < 1) throw std::invalid_argument("kappa_span: count must be positive");
  if (!(p_lo > 0.0 && p_lo < p_hi && p_hi < 1.0)) {
    throw std::invalid_argument("kappa_span: need 0 < p_lo < p_hi < 1");
  }
  const double lo = anchor - 50.0 * scale;
  const double hi = anchor + 50.0 * scale;
  const double k_lo = bisect_quantile(cdf_at, lo, hi, p_lo);
  const double k_hi = bisect_quantile(cdf_at, lo, hi, p_hi);
  std::vector<double> out;
  out.reserve(count);
  if (count == 1) {
    out.push_back(0.5 * (k_lo + k_hi));
    return out;
  }
  for (int i = 0; i < count; ++i) {
    out.push_back(k_lo + (k_hi - k_lo) * i / (count - 1));
  }
  return out;
}

} // namespace

GridSpec GridSpec::defaults() {
  GridSpec g;
  g.mu = {-8, -4, -2, -1, 1, 2, 4, 8};
  g.sigma_u = {0.25, 0.5, 1, 2, 4};
  g.sigma_v = {0.25, 0.5, 1, 2, 4};
  g.lambda = {0.25, 0.5, 1, 2, 4, 8};
  g.p = {0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99};
  return g;
}

GridSpec GridSpec::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("grid file: cannot open '" + path + "'");
  GridSpec g = defaults();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("grid file: line " + std::to_string(lineno) +
                               " is not 'key = v1,v2,...'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = line.substr(eq + 1);
    if (key == "mu") {
      g.mu = parse_list(val, key);
    } else if (key == "sigma_u") {
      g.sigma_u = parse_list(val, key);
    } else if (key == "sigma_v") {
      g.sigma_v = parse_list(val, key);
    } else if (key == "lambda") {
      g.lambda = parse_list(val, key);
    } else if (key == "p") {
      g.p = parse_list(val, key);
    } else {
      throw std::runtime_error("grid file: unknown key '" + key + "'");
    }
  }
  g.validate();
  return g;
}

void GridSpec::validate() const {
  auto all_positive = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(),
                       [](double x) { return std::isfinite(x) && x > 0.0; });
  };
  if (!all_positive(sigma_u) || !all_positive(sigma_v) || !all_positive(lambda)) {
    throw std::runtime_error("grid: scale lists must be positive");
  }
  for (double m : mu) {
    if (!std::isfinite(m)) throw std::runtime_error("grid: mu entries must be finite");
  }
  if (p.empty()) throw std::runtime_error("grid: p list must not be empty");
  double prev = 0.0;
  for (double q : p) {
    if (!(q > prev && q < 1.0)) {
      throw std::runtime_error("grid: p must be strictly increasing inside (0, 1)");
    }
    prev = q;
  }
}

std::vector<TnCell> tn_cells(const GridSpec& g) {
  std::vector<TnCell> cells;
  cells.reserve(g.mu.size() * g.sigma_u.size() * g.sigma_v.size());
  for (double mu : g.mu)
    for (double su : g.sigma_u)
      for (double sv : g.sigma_v) cells.push_back({mu, su, sv});
  return cells;
}

std::vector<ExpCell> exp_cells(const GridSpec& g) {
  std::vector<ExpCell> cells;
  cells.reserve(g.lambda.size() * g.sigma_v.size());
  for (double lam : g.lambda)
    for (double sv : g.sigma_v) cells.push_back({lam, sv});
  return cells;
}

std::vector<double> kappa_span(const TruncNormalParams& p, int count, double p_lo, double p_hi) {
  return kappa_span_impl([&](double k) { return tn_cdf_bvn(p, k); }, -std::max(p.mu(), 0.0),
                         p.sigma_u() + p.sigma_v(), count, p_lo, p_hi);
}

std::vector<double> kappa_span(const ExpParams& p, int count, double p_lo, double p_hi) {
  return kappa_span_impl([&](double k) { return exp_cdf_emg(p, k); }, 0.0,
                         p.sigma_v() + 1.0 / p.lambda(), count, p_lo, p_hi);
}

} // namespace sfcdf
