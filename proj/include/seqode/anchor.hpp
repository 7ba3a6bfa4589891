#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

namespace seqode {

enum class Sign { Nonneg, Nonpos, Mixed };

/// A closed-form sequence k |-> a(k), k >= 0, used as the symbolic part of a
/// coefficient vector beyond its stored prefix. Anchors carry sign metadata
/// and a polynomial-power majorant |a(k)| <= maj_coeff * (k+1)^maj_degree
/// that tail-sum routines use to certify remainders.
///
/// Anchors form a small algebra (abs, scale, add, max) closed under the
/// majorant, so every vector the solver manipulates keeps a certifiable tail.
class AnchorSeq {
 public:
  static AnchorSeq zero();
  static AnchorSeq constant(double c);
  /// coeff * (k+1)^degree, degree >= 0.
  static AnchorSeq poly(double coeff, int degree);
  /// Escape hatch for fixtures: caller asserts the metadata.
  static AnchorSeq custom(std::function<double(std::int64_t)> rule, Sign sign,
                          double maj_coeff, int maj_degree, std::string label);

  double operator()(std::int64_t k) const;
  Sign sign() const;
  double maj_coeff() const;
  int maj_degree() const;
  bool is_zero() const;
  const std::string& label() const;

  /// Structural equality; custom anchors compare by node identity.
  friend bool same_anchor(const AnchorSeq& a, const AnchorSeq& b);

  friend AnchorSeq abs(const AnchorSeq& a);
  friend AnchorSeq scale(const AnchorSeq& a, double c);
  friend AnchorSeq add(const AnchorSeq& a, const AnchorSeq& b);
  friend AnchorSeq max(const AnchorSeq& a, const AnchorSeq& b);

 private:
  struct Node;
  explicit AnchorSeq(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace seqode
