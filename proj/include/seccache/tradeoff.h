// Memory-rate tradeoff: achievable points, convex envelopes under memory
// sharing, and the converse constraint set.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "seccache/rational.h"

namespace seccache {

enum class PointSource { theorem1, theorem2, theorem3, baseline_otp, prior_work, envelope };

std::string_view to_string(PointSource source);

struct TradeoffPoint {
  Rational M;
  Rational R;
  std::string label;
  PointSource source = PointSource::envelope;
  std::optional<int> t;

  friend bool operator==(const TradeoffPoint& a, const TradeoffPoint& b) {
    return a.M == b.M && a.R == b.R;
  }
};

/// Cache size of the secret-sharing scheme at parameter t.
Rational theorem3_memory(int N, int K, int t);
/// Cache size of the best previously known scheme at parameter t.
Rational prior_memory(int N, int K, int t);

/// The M=1 point, the R=1 point and, for K >= 3, one point per t in
/// [1, K-2]. Points with equal (M, R) are merged (first label wins).
std::vector<TradeoffPoint> achievable_points(int N, int K);
std::vector<TradeoffPoint> prior_work_points(int N, int K);

/// Lower convex envelope over M, extended right of the last vertex at
/// constant R.
class Envelope {
 public:
  explicit Envelope(std::vector<TradeoffPoint> points);

  const std::vector<TradeoffPoint>& vertices() const { return vertices_; }
  const std::vector<TradeoffPoint>& dominated() const { return dominated_; }
  /// R on the envelope. Throws std::domain_error for M left of the first
  /// vertex.
  Rational eval(const Rational& M) const;
  /// Smallest M with eval(M) equal to the minimal rate.
  Rational first_min_rate_memory() const;

 private:
  std::vector<TradeoffPoint> vertices_;
  std::vector<TradeoffPoint> dominated_;
};

/// Throws std::invalid_argument on an empty list.
Envelope lower_convex_envelope(std::vector<TradeoffPoint> points);

struct ConverseConstraint {
  enum class Kind { rate_floor, memory_floor, point_bound, linear, cache_floor_at_unit_rate };

  Kind kind = Kind::rate_floor;
  // alpha*M + beta*R >= gamma, valid for M in [m_lo, m_hi] (m_hi empty: unbounded).
  Rational alpha{0};
  Rational beta{0};
  Rational gamma{0};
  Rational m_lo{1};
  std::optional<Rational> m_hi;
  std::string label;

  bool applies_at(const Rational& M) const;
  /// Lower bound on R at M; empty when the constraint says nothing about R.
  std::optional<Rational> rate_bound_at(const Rational& M) const;
};

std::string_view to_string(ConverseConstraint::Kind kind);

std::vector<ConverseConstraint> converse_constraints(int N, int K);
/// Max over the applicable rate bounds at M (at least 1).
Rational rate_lower_bound(const std::vector<ConverseConstraint>& constraints, const Rational& M);

struct CurveSample {
  Rational M;
  Rational R_ach;
  Rational R_prior;
  Rational R_lb;
};

struct CurveData {
  int N = 0;
  int K = 0;
  Envelope achievable;
  Envelope prior;
  std::vector<ConverseConstraint> converse;
  std::vector<CurveSample> samples;
};

/// `grid` evenly spaced exact samples M_i = 1 + i (N(K-1) - 1) / (grid - 1).
/// Throws std::invalid_argument for grid < 2 or N, K < 2.
CurveData emit_curves(int N, int K, int grid);

/// Header plus one line per sample; floats with 12 significant digits.
std::string curves_csv(const CurveData& data);

}  // namespace seccache
