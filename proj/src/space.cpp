#include "seqode/space.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace seqode {

// ---------------------------------------------------------------------------
// SpaceSpec

SpaceSpec SpaceSpec::power_series(SeminormKind kind, std::string name) {
  SpaceSpec s;
  s.kind_ = kind;
  s.name_ = std::move(name);
  s.weight_ = [](int i, std::int64_t k) {
    const double r = 1.0 - 1.0 / (static_cast<double>(i) + 1.0);
    return std::pow(r, static_cast<double>(k));
  };
  s.ratio_ = [](int i) -> std::optional<double> {
    return 1.0 - 1.0 / (static_cast<double>(i) + 1.0);
  };
  s.support_ = [](int) -> std::optional<std::int64_t> { return std::nullopt; };
  return s;
}

SpaceSpec SpaceSpec::table(std::vector<std::vector<double>> rows, SeminormKind kind,
                           std::string name) {
  if (rows.empty()) throw std::invalid_argument("weight table needs at least one row");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (double w : rows[i])
      if (!(w >= 0.0)) throw std::invalid_argument("weights must be nonnegative");
    if (i > 0) {
      // Monotone family w_i <= w_{i+1}; shorter earlier rows count as zero.
      const auto& lo = rows[i - 1];
      const auto& hi = rows[i];
      for (std::size_t k = 0; k < lo.size(); ++k) {
        const double above = k < hi.size() ? hi[k] : 0.0;
        if (lo[k] > above)
          throw std::invalid_argument("weight rows must be nondecreasing in i");
      }
    }
  }
  auto shared = std::make_shared<std::vector<std::vector<double>>>(std::move(rows));
  SpaceSpec s;
  s.kind_ = kind;
  s.name_ = std::move(name);
  s.weight_ = [shared](int i, std::int64_t k) {
    const auto& row = (*shared)[std::min<std::size_t>(i - 1, shared->size() - 1)];
    if (k < 0 || static_cast<std::size_t>(k) >= row.size()) return 0.0;
    return row[static_cast<std::size_t>(k)];
  };
  s.ratio_ = [](int) -> std::optional<double> { return std::nullopt; };
  s.support_ = [shared](int i) -> std::optional<std::int64_t> {
    const auto& row = (*shared)[std::min<std::size_t>(i - 1, shared->size() - 1)];
    return static_cast<std::int64_t>(row.size());
  };
  return s;
}

SpaceSpec SpaceSpec::custom(std::function<double(int, std::int64_t)> weight,
                            std::function<std::optional<double>(int)> tail_ratio,
                            std::function<std::optional<std::int64_t>(int)> support_end,
                            SeminormKind kind, std::string name) {
  if (!weight) throw std::invalid_argument("weight rule required");
  SpaceSpec s;
  s.kind_ = kind;
  s.name_ = std::move(name);
  s.weight_ = std::move(weight);
  s.ratio_ = tail_ratio ? std::move(tail_ratio)
                        : [](int) -> std::optional<double> { return std::nullopt; };
  s.support_ = support_end ? std::move(support_end)
                           : [](int) -> std::optional<std::int64_t> { return std::nullopt; };
  return s;
}

double SpaceSpec::weight(int i, std::int64_t k) const {
  if (i < 1) throw std::invalid_argument("seminorm index must be >= 1");
  if (k < 0) throw std::invalid_argument("coordinate must be >= 0");
  return weight_(i, k);
}

std::optional<double> SpaceSpec::tail_ratio(int i) const { return ratio_(i); }
std::optional<std::int64_t> SpaceSpec::support_end(int i) const { return support_(i); }

bool SpaceSpec::summable(const AnchorSeq& a, int max_index) const {
  if (a.maj_coeff() == 0.0) return true;
  for (int i = 1; i <= max_index; ++i) {
    if (support_(i).has_value()) continue;  // finite support: trivially summable
    auto rho = ratio_(i);
    if (!rho || *rho >= 1.0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Tails

AnchorSeq tail_upper(const Tail& t) {
  if (std::holds_alternative<TailZero>(t)) return AnchorSeq::zero();
  if (const auto* a = std::get_if<TailAnchor>(&t)) return a->seq;
  return std::get<TailPinched>(t).hi;
}

AnchorSeq tail_lower(const Tail& t) {
  if (std::holds_alternative<TailZero>(t)) return AnchorSeq::zero();
  if (const auto* a = std::get_if<TailAnchor>(&t)) return a->seq;
  return std::get<TailPinched>(t).lo;
}

bool tail_point_valued(const Tail& t) {
  return !std::holds_alternative<TailPinched>(t);
}

Tail tail_abs(const Tail& t) {
  if (std::holds_alternative<TailZero>(t)) return TailZero{};
  if (const auto* a = std::get_if<TailAnchor>(&t)) return TailAnchor{abs(a->seq)};
  const auto& p = std::get<TailPinched>(t);
  // |x| for x in [lo, hi] lies in [0, max(|lo|, |hi|)].
  return TailPinched{AnchorSeq::zero(), max(abs(p.lo), abs(p.hi))};
}

Tail tail_add(const Tail& a, const Tail& b) {
  if (std::holds_alternative<TailZero>(a)) return b;
  if (std::holds_alternative<TailZero>(b)) return a;
  const bool pa = std::holds_alternative<TailPinched>(a);
  const bool pb = std::holds_alternative<TailPinched>(b);
  if (!pa && !pb)
    return TailAnchor{add(tail_upper(a), tail_upper(b))};
  return TailPinched{add(tail_lower(a), tail_lower(b)),
                     add(tail_upper(a), tail_upper(b))};
}

Tail tail_scale(const Tail& t, double c) {
  if (std::holds_alternative<TailZero>(t) || c == 0.0) return TailZero{};
  if (const auto* a = std::get_if<TailAnchor>(&t)) return TailAnchor{scale(a->seq, c)};
  const auto& p = std::get<TailPinched>(t);
  if (c >= 0.0) return TailPinched{scale(p.lo, c), scale(p.hi, c)};
  return TailPinched{scale(p.hi, c), scale(p.lo, c)};
}

// ---------------------------------------------------------------------------
// CoeffVec

namespace {

// Anchor rule table for a <= b: certified truth when decidable from
// metadata, nullopt otherwise.
std::optional<bool> anchor_order_certified(const AnchorSeq& a, const AnchorSeq& b) {
  if (same_anchor(a, b)) return true;
  if (a.is_zero() && b.sign() == Sign::Nonneg) return true;
  if (a.sign() == Sign::Nonpos && b.is_zero()) return true;
  if (a.sign() == Sign::Nonpos && b.sign() == Sign::Nonneg) return true;
  return std::nullopt;
}

}  // namespace

CoeffVec::CoeffVec(std::vector<double> prefix, Tail tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {
  for (double v : prefix_)
    if (!std::isfinite(v))
      throw std::invalid_argument("coefficient prefix entries must be finite");
  if (const auto* p = std::get_if<TailPinched>(&tail_)) {
    const auto cert = anchor_order_certified(p->lo, p->hi);
    if (!(cert.has_value() && *cert)) {
      const std::int64_t start = prefix_len();
      for (std::int64_t k = start; k < start + 10000; ++k)
        if (p->lo(k) > p->hi(k))
          throw std::invalid_argument("pinched tail requires lo <= hi; violated at k=" +
                                      std::to_string(k));
    }
  }
}

double CoeffVec::coord(std::int64_t k) const {
  if (k < 0) throw std::invalid_argument("coordinate must be >= 0");
  if (k < prefix_len()) return prefix_[static_cast<std::size_t>(k)];
  if (!tail_point_valued(tail_))
    throw std::domain_error("pinched tail has no point value at coordinate " +
                            std::to_string(k));
  return tail_upper(tail_)(k);
}

double CoeffVec::upper_coord(std::int64_t k) const {
  if (k < prefix_len()) return prefix_[static_cast<std::size_t>(k)];
  return tail_upper(tail_)(k);
}

double CoeffVec::lower_coord(std::int64_t k) const {
  if (k < prefix_len()) return prefix_[static_cast<std::size_t>(k)];
  return tail_lower(tail_)(k);
}

CoeffVec operator+(const CoeffVec& a, const CoeffVec& b) {
  const std::int64_t n = std::max(a.prefix_len(), b.prefix_len());
  std::vector<double> prefix(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k)
    prefix[static_cast<std::size_t>(k)] = a.coord(k) + b.coord(k);
  return CoeffVec(std::move(prefix), tail_add(a.tail_, b.tail_));
}

CoeffVec operator-(const CoeffVec& a, const CoeffVec& b) {
  return a + (-1.0 * b);
}

CoeffVec operator*(double c, const CoeffVec& a) {
  std::vector<double> prefix(a.prefix_.size());
  for (std::size_t k = 0; k < prefix.size(); ++k) prefix[k] = c * a.prefix_[k];
  return CoeffVec(std::move(prefix), tail_scale(a.tail_, c));
}

CoeffVec abs(const CoeffVec& a) {
  std::vector<double> prefix(a.prefix_.size());
  for (std::size_t k = 0; k < prefix.size(); ++k) prefix[k] = std::abs(a.prefix_[k]);
  return CoeffVec(std::move(prefix), tail_abs(a.tail_));
}

// ---------------------------------------------------------------------------
// Seminorms

namespace {

// Upper bound on sum_{k >= start} w_i(k) |mag(k)|: partial sums of the
// actual anchor magnitude plus a geometric remainder from the polynomial
// majorant; terminates once the remainder is <= tail_tol.
double tail_sum(const SpaceSpec& spec, int i, const AnchorSeq& mag,
                std::int64_t start, double tail_tol) {
  if (mag.maj_coeff() == 0.0) return 0.0;
  if (auto support = spec.support_end(i)) {
    long double s = 0.0L;
    for (std::int64_t k = start; k < *support; ++k)
      s += static_cast<long double>(spec.weight(i, k)) * std::abs(mag(k));
    return static_cast<double>(s);
  }
  auto rho = spec.tail_ratio(i);
  if (!rho || *rho >= 1.0)
    throw std::domain_error("tail not summable at index " + std::to_string(i));
  const double c = mag.maj_coeff();
  const int p = mag.maj_degree();
  long double s = 0.0L;
  for (std::int64_t k = start; k < start + 100000000; ++k) {
    const double kk = static_cast<double>(k);
    const double maj = spec.weight(i, k) * c * std::pow(kk + 1.0, p);
    // Ratio of consecutive majorant terms, decreasing in k.
    const double q = *rho * std::pow((kk + 2.0) / (kk + 1.0), p);
    if (q < 1.0) {
      const double remainder = maj * q / (1.0 - q);
      if (remainder <= tail_tol) {
        s += static_cast<long double>(spec.weight(i, k)) * std::abs(mag(k));
        return static_cast<double>(s) + remainder;
      }
    }
    s += static_cast<long double>(spec.weight(i, k)) * std::abs(mag(k));
  }
  throw std::runtime_error("tail summation did not terminate");
}

double tail_sup(const SpaceSpec& spec, int i, const AnchorSeq& mag,
                std::int64_t start, double tail_tol) {
  if (mag.maj_coeff() == 0.0) return 0.0;
  if (auto support = spec.support_end(i)) {
    double best = 0.0;
    for (std::int64_t k = start; k < *support; ++k)
      best = std::max(best, spec.weight(i, k) * std::abs(mag(k)));
    return best;
  }
  auto rho = spec.tail_ratio(i);
  if (!rho || *rho >= 1.0)
    throw std::domain_error("tail not summable at index " + std::to_string(i));
  const double c = mag.maj_coeff();
  const int p = mag.maj_degree();
  double best = 0.0;
  for (std::int64_t k = start; k < start + 100000000; ++k) {
    const double kk = static_cast<double>(k);
    const double maj = spec.weight(i, k) * c * std::pow(kk + 1.0, p);
    const double q = *rho * std::pow((kk + 2.0) / (kk + 1.0), p);
    // Once majorant terms are nonincreasing, the unscanned sup is <= maj.
    if (q <= 1.0 && (maj <= best || maj <= tail_tol)) return std::max(best, maj);
    best = std::max(best, spec.weight(i, k) * std::abs(mag(k)));
  }
  throw std::runtime_error("tail sup scan did not terminate");
}

AnchorSeq tail_magnitude(const Tail& t) {
  if (std::holds_alternative<TailZero>(t)) return AnchorSeq::zero();
  if (const auto* a = std::get_if<TailAnchor>(&t)) return abs(a->seq);
  const auto& p = std::get<TailPinched>(t);
  return max(abs(p.lo), abs(p.hi));
}

}  // namespace

SeminormValue seminorm(const CoeffVec& x, int i, const SpaceSpec& spec,
                       double tail_tol) {
  if (i < 1) throw std::invalid_argument("seminorm index must be >= 1");
  if (!(tail_tol > 0.0)) throw std::invalid_argument("tail_tol must be > 0");
  const std::int64_t n = x.prefix_len();
  double value = 0.0;
  if (spec.kind() == SeminormKind::WeightedSum) {
    long double s = 0.0L;
    for (std::int64_t k = 0; k < n; ++k)
      s += static_cast<long double>(spec.weight(i, k)) * std::abs(x.coord(k));
    value = static_cast<double>(s);
  } else {
    for (std::int64_t k = 0; k < n; ++k)
      value = std::max(value, spec.weight(i, k) * std::abs(x.coord(k)));
  }
  const AnchorSeq mag = tail_magnitude(x.tail());
  const double tail_bound = spec.kind() == SeminormKind::WeightedSum
                                ? tail_sum(spec, i, mag, n, tail_tol)
                                : tail_sup(spec, i, mag, n, tail_tol);
  return {value, tail_bound};
}

// ---------------------------------------------------------------------------
// Order

CertifiedBool leq(const CoeffVec& x, const CoeffVec& y, std::int64_t sample_depth,
                  bool require_certified) {
  const std::int64_t n = std::max(x.prefix_len(), y.prefix_len());
  CertifiedBool out;
  for (std::int64_t k = 0; k < n; ++k) {
    // Exact float comparison; no tolerance by design.
    if (x.upper_coord(k) > y.lower_coord(k)) {
      out.holds = false;
      out.certified_depth = k + 1;
      out.witness_coord = k;
      return out;
    }
  }
  const AnchorSeq ux = tail_upper(x.tail());
  const AnchorSeq ly = tail_lower(y.tail());
  auto certified = anchor_order_certified(ux, ly);
  if (certified.has_value() && *certified) {
    out.holds = true;
    out.certified_depth = std::numeric_limits<std::int64_t>::max();
    return out;
  }
  for (std::int64_t k = n; k < n + sample_depth; ++k) {
    if (ux(k) > ly(k)) {
      out.holds = false;
      out.certified_depth = k + 1;
      out.witness_coord = k;
      return out;
    }
  }
  if (require_certified)
    throw OrderUndecidableError("order undecidable beyond prefix");
  out.holds = true;
  out.certified_depth = n + sample_depth;
  return out;
}

OrderInterval::OrderInterval(CoeffVec lo_, CoeffVec hi_)
    : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (!leq(lo, hi).holds)
    throw std::invalid_argument("order interval requires lo <= hi");
}

bool OrderInterval::contains(const CoeffVec& x, std::int64_t sample_depth) const {
  return leq(lo, x, sample_depth).holds && leq(x, hi, sample_depth).holds;
}

// ---------------------------------------------------------------------------
// Diagonal multipliers

DiagMult::DiagMult(std::function<double(std::int64_t)> lambda_, double sup_norm_,
                   std::int64_t verify_depth)
    : lambda(std::move(lambda_)), sup_norm(sup_norm_) {
  if (!(sup_norm >= 0.0)) throw std::invalid_argument("sup_norm must be >= 0");
  for (std::int64_t k = 0; k < verify_depth; ++k)
    if (std::abs(lambda(k)) > sup_norm)
      throw std::invalid_argument("|lambda(k)| exceeds declared sup_norm at k=" +
                                  std::to_string(k));
}

CoeffVec diag_apply(const DiagMult& m, const CoeffVec& x) {
  std::vector<double> prefix(static_cast<std::size_t>(x.prefix_len()));
  for (std::int64_t k = 0; k < x.prefix_len(); ++k)
    prefix[static_cast<std::size_t>(k)] = m.lambda(k) * x.coord(k);
  if (std::holds_alternative<TailZero>(x.tail()))
    return CoeffVec(std::move(prefix), TailZero{});
  const AnchorSeq mag = std::holds_alternative<TailAnchor>(x.tail())
                            ? abs(std::get<TailAnchor>(x.tail()).seq)
                            : max(abs(tail_lower(x.tail())), abs(tail_upper(x.tail())));
  const AnchorSeq env = scale(mag, m.sup_norm);
  return CoeffVec(std::move(prefix), TailPinched{scale(env, -1.0), env});
}

// ---------------------------------------------------------------------------
// Coordinatewise supremum

CoeffVec coordwise_sup(const std::vector<CoeffVec>& vs, const CoeffVec& upper) {
  if (vs.empty()) throw std::invalid_argument("sup of empty set undefined");
  for (const auto& v : vs)
    if (!leq(v, upper).holds) throw std::invalid_argument("no upper bound");
  std::int64_t n = 0;
  for (const auto& v : vs) n = std::max(n, v.prefix_len());
  std::vector<double> prefix(static_cast<std::size_t>(n),
                             -std::numeric_limits<double>::infinity());
  for (const auto& v : vs)
    for (std::int64_t k = 0; k < n; ++k)
      prefix[static_cast<std::size_t>(k)] =
          std::max(prefix[static_cast<std::size_t>(k)], v.coord(k));

  bool all_same = true;
  for (const auto& v : vs) {
    if (std::holds_alternative<TailPinched>(v.tail()) ||
        std::holds_alternative<TailPinched>(vs.front().tail()) ||
        !same_anchor(tail_upper(v.tail()), tail_upper(vs.front().tail()))) {
      all_same = false;
      break;
    }
  }
  if (all_same) return CoeffVec(std::move(prefix), vs.front().tail());

  AnchorSeq lo = tail_lower(vs.front().tail());
  for (std::size_t j = 1; j < vs.size(); ++j)
    lo = max(lo, tail_lower(vs[j].tail()));
  return CoeffVec(std::move(prefix), TailPinched{lo, tail_upper(upper.tail())});
}

}  // namespace seqode
