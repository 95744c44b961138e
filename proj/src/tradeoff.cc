#include "seccache/tradeoff.h"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "seccache/combinatorics.h"

namespace seccache {

std::string_view to_string(PointSource source) {
  switch (source) {
    case PointSource::theorem1: return "theorem1";
    case PointSource::theorem2: return "theorem2";
    case PointSource::theorem3: return "theorem3";
    case PointSource::baseline_otp: return "baseline_otp";
    case PointSource::prior_work: return "prior_work";
    case PointSource::envelope: return "envelope";
  }
  return "?";
}

std::string_view to_string(ConverseConstraint::Kind kind) {
  switch (kind) {
    case ConverseConstraint::Kind::rate_floor: return "rate_floor";
    case ConverseConstraint::Kind::memory_floor: return "memory_floor";
    case ConverseConstraint::Kind::point_bound: return "point_bound";
    case ConverseConstraint::Kind::linear: return "linear";
    case ConverseConstraint::Kind::cache_floor_at_unit_rate: return "cache_floor_at_unit_rate";
  }
  return "?";
}

namespace {

void require_params(int N, int K) {
  if (N < 2 || K < 2) throw std::invalid_argument("tradeoff requires N >= 2 and K >= 2");
}

void require_t(int K, int t) {
  if (K < 3 || t < 1 || t > K - 2) throw std::invalid_argument("t must lie in [1, K-2]");
}

Rational R_of_t(int K, int t) { return Rational(K, t + 1); }

void push_unique(std::vector<TradeoffPoint>& out, TradeoffPoint p) {
  for (const auto& q : out)
    if (q == p) return;
  out.push_back(std::move(p));
}

// Cross product of (b - a) x (c - a); <= 0 means b is not strictly below ac.
Rational cross(const TradeoffPoint& a, const TradeoffPoint& b, const TradeoffPoint& c) {
  return (b.M - a.M) * (c.R - a.R) - (b.R - a.R) * (c.M - a.M);
}

}  // namespace

Rational theorem3_memory(int N, int K, int t) {
  require_t(K, t);
  const auto B = binomial(K, t) - binomial(K - 1, t - 1);
  return Rational(N * t, K - t) + 1 - Rational(1, B);
}

Rational prior_memory(int N, int K, int t) {
  require_t(K, t);
  return Rational(N * t, K - t) + 1;
}

std::vector<TradeoffPoint> achievable_points(int N, int K) {
  require_params(N, K);
  std::vector<TradeoffPoint> out;
  if (N == 2) {
    push_unique(out, {Rational(1), Rational(K - 1), "theorem1", PointSource::theorem1, {}});
  } else {
    push_unique(out, {Rational(1), Rational(K), "baseline_otp", PointSource::baseline_otp, {}});
  }
  for (int t = 1; t <= K - 2; ++t) {
    push_unique(out, {theorem3_memory(N, K, t), R_of_t(K, t), "theorem3(t=" + std::to_string(t) + ")",
                      PointSource::theorem3, t});
  }
  push_unique(out, {Rational((N - 1) * (K - 1)), Rational(1), "theorem2", PointSource::theorem2, {}});
  return out;
}

std::vector<TradeoffPoint> prior_work_points(int N, int K) {
  require_params(N, K);
  std::vector<TradeoffPoint> out;
  push_unique(out, {Rational(1), Rational(K), "prior(M=1)", PointSource::prior_work, {}});
  for (int t = 1; t <= K - 2; ++t) {
    push_unique(out, {prior_memory(N, K, t), R_of_t(K, t), "prior(t=" + std::to_string(t) + ")",
                      PointSource::prior_work, t});
  }
  push_unique(out, {Rational(N * (K - 1)), Rational(1), "prior(R=1)", PointSource::prior_work, {}});
  return out;
}

Envelope::Envelope(std::vector<TradeoffPoint> points) {
  if (points.empty()) throw std::invalid_argument("envelope of an empty point set");
  std::stable_sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
    return a.M != b.M ? a.M < b.M : a.R < b.R;
  });

  std::vector<TradeoffPoint> hull;
  for (auto& p : points) {
    if (!hull.empty() && hull.back().M == p.M) {
      dominated_.push_back(p);
      continue;
    }
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) {
      dominated_.push_back(hull.back());
      hull.pop_back();
    }
    hull.push_back(p);
  }

  // Beyond the first minimal-rate vertex the curve is flat.
  const auto best = std::min_element(hull.begin(), hull.end(),
                                     [](const auto& a, const auto& b) { return a.R < b.R; });
  dominated_.insert(dominated_.end(), best + 1, hull.end());
  hull.erase(best + 1, hull.end());
  vertices_ = std::move(hull);

  std::sort(dominated_.begin(), dominated_.end(), [](const auto& a, const auto& b) {
    return a.M != b.M ? a.M < b.M : a.R < b.R;
  });
}

Rational Envelope::eval(const Rational& M) const {
  if (M < vertices_.front().M) {
    throw std::domain_error("M=" + to_string(M) + " is left of the envelope");
  }
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    const auto& a = vertices_[i - 1];
    const auto& b = vertices_[i];
    if (M <= b.M) return a.R + (b.R - a.R) * (M - a.M) / (b.M - a.M);
  }
  return vertices_.back().R;
}

Rational Envelope::first_min_rate_memory() const { return vertices_.back().M; }

Envelope lower_convex_envelope(std::vector<TradeoffPoint> points) {
  return Envelope(std::move(points));
}

bool ConverseConstraint::applies_at(const Rational& M) const {
  return M >= m_lo && (!m_hi || M <= *m_hi);
}

std::optional<Rational> ConverseConstraint::rate_bound_at(const Rational& M) const {
  if (!applies_at(M) || beta == Rational(0)) return std::nullopt;
  return (gamma - alpha * M) / beta;
}

std::vector<ConverseConstraint> converse_constraints(int N, int K) {
  require_params(N, K);
  using Kind = ConverseConstraint::Kind;
  std::vector<ConverseConstraint> out;
  out.push_back({Kind::rate_floor, 0, 1, 1, 1, std::nullopt, "R >= 1"});
  out.push_back({Kind::memory_floor, 1, 0, 1, 1, std::nullopt, "M >= 1"});

  const int r_min = N == 2 ? K - 1 : K;
  out.push_back({Kind::point_bound, 0, 1, r_min, 1, Rational(1),
                 "R >= " + std::to_string(r_min) + " at M = 1"});

  const int m_min = (N - 1) * (K - 1);
  out.push_back({Kind::cache_floor_at_unit_rate, 1, 0, m_min, 1, std::nullopt,
                 "M >= " + std::to_string(m_min) + " at R = 1"});

  if (N == 2 && K >= 3) {
    // (K-1)(K-2) M + 2 R >= K(K-1), normalized to beta = 1.
    const Rational alpha((K - 1) * (K - 2), 2);
    const Rational gamma(K * (K - 1), 2);
    out.push_back({Kind::linear, alpha, 1, gamma, 1, Rational(K, K - 1),
                   to_string(alpha) + "M + R >= " + to_string(gamma) + " on [1," +
                       to_string(Rational(K, K - 1)) + "]"});
  }
  return out;
}

Rational rate_lower_bound(const std::vector<ConverseConstraint>& constraints, const Rational& M) {
  Rational best(1);
  for (const auto& c : constraints) {
    if (const auto r = c.rate_bound_at(M)) best = std::max(best, *r);
  }
  return best;
}

CurveData emit_curves(int N, int K, int grid) {
  require_params(N, K);
  if (grid < 2) throw std::invalid_argument("grid must be at least 2");
  CurveData data{N, K, lower_convex_envelope(achievable_points(N, K)),
                 lower_convex_envelope(prior_work_points(N, K)), converse_constraints(N, K), {}};
  const Rational span(N * (K - 1) - 1);
  for (int i = 0; i < grid; ++i) {
    const Rational M = 1 + span * Rational(i, grid - 1);
    data.samples.push_back({M, data.achievable.eval(M), data.prior.eval(M),
                            rate_lower_bound(data.converse, M)});
  }
  return data;
}

std::string curves_csv(const CurveData& data) {
  std::ostringstream out;
  out << "M_num,M_den,M_float,R_ach_float,R_prior_float,R_lb_float\n";
  char buf[64];
  auto g12 = [&](const Rational& r) {
    std::snprintf(buf, sizeof buf, "%.12g", to_double(r));
    return std::string(buf);
  };
  for (const auto& s : data.samples) {
    out << s.M.numerator() << ',' << s.M.denominator() << ',' << g12(s.M) << ',' << g12(s.R_ach)
        << ',' << g12(s.R_prior) << ',' << g12(s.R_lb) << '\n';
  }
  return out.str();
}

}  // namespace seccache
