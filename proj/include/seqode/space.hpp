#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "seqode/anchor.hpp"

namespace seqode {

enum class SeminormKind { WeightedSum, WeightedSup };

/// A weighted sequence space given by a monotone family of weight rows
/// w_i(k), i >= 1, k >= 0, with seminorms
///   ||x||_i = sum_k w_i(k) |x_k|   (weighted-sum)  or
///   ||x||_i = sup_k w_i(k) |x_k|   (weighted-sup).
///
/// Weight families must be Hausdorff (every coordinate is seen by some row)
/// and nondecreasing in i. Tail summation additionally needs a geometric
/// domination certificate: a ratio rho_i < 1 with w_i(k+1) <= rho_i w_i(k)
/// for all k, or finite support per row.
class SpaceSpec {
 public:
  /// Power-series weights w_i(k) = r_i^k with r_i = 1 - 1/(i+1).
  static SpaceSpec power_series(SeminormKind kind = SeminormKind::WeightedSum,
                                std::string name = "power-series");
  /// Explicit finite weight table; rows[i-1][k] = w_i(k), zero beyond.
  /// Rows must be coordinatewise nondecreasing from one row to the next.
  static SpaceSpec table(std::vector<std::vector<double>> rows,
                         SeminormKind kind = SeminormKind::WeightedSum,
                         std::string name = "table");
  /// General weight rule. tail_ratio(i), when given, certifies
  /// w_i(k+1) <= tail_ratio(i) * w_i(k) for all k; without it (and without
  /// finite support) tail bounds against nonzero anchors are refused.
  static SpaceSpec custom(std::function<double(int, std::int64_t)> weight,
                          std::function<std::optional<double>(int)> tail_ratio,
                          std::function<std::optional<std::int64_t>(int)> support_end,
                          SeminormKind kind, std::string name);

  SeminormKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  double weight(int i, std::int64_t k) const;
  /// Certified ratio rho_i with w_i(k+1) <= rho_i * w_i(k) for all k,
  /// or nullopt when the row instead has finite support.
  std::optional<double> tail_ratio(int i) const;
  /// One past the last nonzero column, when the row has finite support.
  std::optional<std::int64_t> support_end(int i) const;

  /// Summability witness: whether sum_k w_i(k) * maj(k) is finite and
  /// certifiable for the anchor's majorant, for every row i <= max_index.
  bool summable(const AnchorSeq& a, int max_index = 8) const;

 private:
  SpaceSpec() = default;
  SeminormKind kind_ = SeminormKind::WeightedSum;
  std::string name_;
  std::function<double(int, std::int64_t)> weight_;
  std::function<std::optional<double>(int)> ratio_;
  std::function<std::optional<std::int64_t>(int)> support_;
};

struct TailZero {};
struct TailAnchor {
  AnchorSeq seq;
};
struct TailPinched {
  AnchorSeq lo, hi;
};
using Tail = std::variant<TailZero, TailAnchor, TailPinched>;

/// Pointwise upper/lower envelope of a tail, as anchors.
AnchorSeq tail_upper(const Tail& t);
AnchorSeq tail_lower(const Tail& t);
Tail tail_abs(const Tail& t);
Tail tail_add(const Tail& a, const Tail& b);
Tail tail_scale(const Tail& t, double c);
bool tail_point_valued(const Tail& t);

/// A truncated coefficient vector: an explicit prefix x_0..x_{N-1} plus a
/// symbolic tail for coordinates k >= N. The computable stand-in for an
/// element of the sequence space.
class CoeffVec {
 public:
  CoeffVec() : tail_(TailZero{}) {}
  explicit CoeffVec(std::vector<double> prefix, Tail tail = TailZero{});
  static CoeffVec zero() { return CoeffVec(); }
  static CoeffVec from_anchor(const AnchorSeq& a) {
    return CoeffVec({}, TailAnchor{a});
  }

  std::int64_t prefix_len() const { return static_cast<std::int64_t>(prefix_.size()); }
  const std::vector<double>& prefix() const { return prefix_; }
  const Tail& tail() const { return tail_; }

  /// Point value of coordinate k. Throws for pinched tails beyond the
  /// prefix, where the vector is an envelope rather than a point.
  double coord(std::int64_t k) const;
  double upper_coord(std::int64_t k) const;
  double lower_coord(std::int64_t k) const;

  friend CoeffVec operator+(const CoeffVec& a, const CoeffVec& b);
  friend CoeffVec operator-(const CoeffVec& a, const CoeffVec& b);
  friend CoeffVec operator*(double c, const CoeffVec& a);
  friend CoeffVec abs(const CoeffVec& a);

 private:
  std::vector<double> prefix_;
  Tail tail_;
};

struct SeminormValue {
  double value;       // exact contribution of the stored prefix
  double tail_bound;  // certified upper bound on any admissible tail part
};

/// Seminorm of the prefix plus a certified tail bound, computed to within
/// tail_tol by adaptive summation with ratio-majorized remainders.
/// Throws std::domain_error("tail not summable at index i") when the weight
/// row carries no usable domination certificate.
SeminormValue seminorm(const CoeffVec& x, int i, const SpaceSpec& spec,
                       double tail_tol = 1e-12);

struct CertifiedBool {
  bool holds = false;
  /// Leading coordinates checked exhaustively; INT64_MAX when the tail
  /// comparison is certified by anchor metadata for all k.
  std::int64_t certified_depth = 0;
  /// First violating coordinate when holds is false.
  std::optional<std::int64_t> witness_coord;
};

class OrderUndecidableError : public std::runtime_error {
 public:
  explicit OrderUndecidableError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Coordinatewise partial order x_k <= y_k. Prefix coordinates are compared
/// exactly (no tolerance); tails are decided by the anchor rule table
/// (zero <= nonneg, nonpos <= zero, nonpos <= nonneg, same anchor <= itself)
/// and otherwise sampled to sample_depth coordinates past the prefixes.
/// With require_certified, a merely-sampled "holds" is upgraded to
/// OrderUndecidableError("order undecidable beyond prefix").
CertifiedBool leq(const CoeffVec& x, const CoeffVec& y,
                  std::int64_t sample_depth = 10000,
                  bool require_certified = false);

/// Order interval [lo, hi]; construction verifies lo <= hi.
struct OrderInterval {
  CoeffVec lo, hi;
  OrderInterval(CoeffVec lo_, CoeffVec hi_);
  bool contains(const CoeffVec& x, std::int64_t sample_depth = 10000) const;
};

/// Diagonal multiplier x |-> (lambda_k x_k); bounded when lambda is.
struct DiagMult {
  std::function<double(std::int64_t)> lambda;
  double sup_norm;
  DiagMult(std::function<double(std::int64_t)> lambda_, double sup_norm_,
           std::int64_t verify_depth = 10000);
};

CoeffVec diag_apply(const DiagMult& m, const CoeffVec& x);

/// Coordinatewise supremum of a nonempty family below a common upper bound.
/// The result prefix is the exact pointwise max; the tail is pinched between
/// the pointwise max of the input tails and the upper bound's tail.
CoeffVec coordwise_sup(const std::vector<CoeffVec>& vs, const CoeffVec& upper);

}  // namespace seqode
