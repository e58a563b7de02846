#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "raagsep/errors.hpp"
#include "raagsep/matrix.hpp"
#include "raagsep/separation.hpp"

namespace raagsep {

// One-parameter word family w(m) = prefix base^m suffix over a fixed
// subgroup, sampled for m in [m_min, m_max].
struct GrowthFamily {
  std::string name;
  DefiningGraph graph;
  std::vector<Word> gens;
  Word prefix, base, suffix;
  int m_min = 1;
  int m_max = 12;

  Word sample(int m) const { return concat(concat(prefix, word_pow(base, m)), suffix); }
};

struct BenchRecord {
  int m = 0;
  int len = 0;             // geodesic length of the sample
  std::string kind;        // "permutation", "mod-p", or "error"
  long long p = 0;         // 0 unless mod-p
  double log_bound = 0.0;  // natural log of the certificate size bound
  double ms = 0.0;         // wall time of certificate construction

  bool operator==(const BenchRecord& o) const {
    return m == o.m && len == o.len && kind == o.kind && p == o.p &&
           log_bound == o.log_bound && ms == o.ms;
  }
};

// Separates every sample and records the certificate size. A sample that
// happens to fall inside H becomes an "error" record; a family all of whose
// samples are in H is rejected outright.
inline std::vector<BenchRecord> run_family(const GrowthFamily& fam,
                                           const FoldingConfig& fold_cfg = {}) {
  if (fam.m_min > fam.m_max) throw FamilyValidationError("empty sample range");
  RepresentationBundle rb(fam.graph, fam.gens, fold_cfg);
  bool any_outside = false;
  for (int m = fam.m_min; m <= fam.m_max; ++m)
    if (!rb.in_h(fam.sample(m))) any_outside = true;
  if (!any_outside)
    throw FamilyValidationError("every sample of family '" + fam.name +
                                "' lies in the subgroup");
  std::vector<BenchRecord> out;
  for (int m = fam.m_min; m <= fam.m_max; ++m) {
    const Word w = fam.sample(m);
    BenchRecord rec;
    rec.m = m;
    rec.len = static_cast<int>(geodesic_reduce(fam.graph, w).size());
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const SeparationCertificate cert = separate(rb, w);
      rec.kind = cert.kind == CertKind::Permutation ? "permutation" : "mod-p";
      rec.p = cert.p;
      rec.log_bound = log_bigint(cert.size_bound);
    } catch (const InH&) {
      rec.kind = "error";
    }
    const auto t1 = std::chrono::steady_clock::now();
    rec.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    out.push_back(std::move(rec));
  }
  return out;
}

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
  double half_slope_lo = 0.0;  // fit over the shorter-word half
  double half_slope_hi = 0.0;  // fit over the longer-word half
  bool stable = false;         // half slopes within 20% of the full slope
};

namespace detail {

inline std::pair<double, double> least_squares(const std::vector<double>& x,
                                               const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) sx += x[i], sy += y[i];
  const double mx = sx / n, my = sy / n;
  double num = 0, den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  if (den == 0) throw DegenerateFit("all sample lengths are equal");
  const double slope = num / den;
  return {slope, my - slope * mx};
}

}  // namespace detail

// Least-squares exponent of the size bound against word length in log-log
// coordinates, with a split-half stability check.
inline ExponentFit fit_exponent(const std::vector<BenchRecord>& recs) {
  std::vector<std::pair<double, double>> pts;
  for (const BenchRecord& r : recs)
    if (r.kind != "error")
      pts.emplace_back(std::log(static_cast<double>(r.len)), r.log_bound);
  if (pts.size() < 8)
    throw DegenerateFit("need at least 8 usable records to fit an exponent");
  std::sort(pts.begin(), pts.end());
  std::vector<double> x, y;
  for (auto [a, b] : pts) x.push_back(a), y.push_back(b);

  ExponentFit fit;
  auto [slope, intercept] = detail::least_squares(x, y);
  fit.slope = slope;
  fit.intercept = intercept;
  for (std::size_t i = 0; i < x.size(); ++i)
    fit.max_residual =
        std::max(fit.max_residual, std::abs(y[i] - (intercept + slope * x[i])));

  const std::size_t half = x.size() / 2;
  std::vector<double> xlo(x.begin(), x.begin() + half), ylo(y.begin(), y.begin() + half);
  std::vector<double> xhi(x.begin() + half, x.end()), yhi(y.begin() + half, y.end());
  fit.half_slope_lo = detail::least_squares(xlo, ylo).first;
  fit.half_slope_hi = detail::least_squares(xhi, yhi).first;
  const double scale = std::max(std::abs(fit.slope), 1e-9);
  fit.stable = std::abs(fit.half_slope_lo - fit.half_slope_hi) <= 0.20 * scale;
  return fit;
}

// CSV with exact round-tripping: doubles printed with max_digits10.
inline std::string emit_csv(const std::vector<BenchRecord>& recs) {
  std::string out = "m,len,kind,p,log_bound,ms\n";
  char buf[256];
  for (const BenchRecord& r : recs) {
    std::snprintf(buf, sizeof buf, "%d,%d,%s,%lld,%.17g,%.17g\n", r.m, r.len,
                  r.kind.c_str(), r.p, r.log_bound, r.ms);
    out += buf;
  }
  return out;
}

inline std::vector<BenchRecord> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "m,len,kind,p,log_bound,ms")
    throw ParseError("bad bench csv header");
  std::vector<BenchRecord> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cur;
    for (char ch : line) {
      if (ch == ',') f.push_back(std::exchange(cur, ""));
      else cur += ch;
    }
    f.push_back(cur);
    if (f.size() != 6)
      throw ParseError("bench csv line " + std::to_string(lineno) + ": want 6 fields");
    BenchRecord r;
    r.m = std::atoi(f[0].c_str());
    r.len = std::atoi(f[1].c_str());
    r.kind = f[2];
    r.p = std::atoll(f[3].c_str());
    r.log_bound = std::strtod(f[4].c_str(), nullptr);
    r.ms = std::strtod(f[5].c_str(), nullptr);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace raagsep
