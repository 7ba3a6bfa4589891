#include "seqode/anchor.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace seqode {

namespace {

enum class Kind { Poly, Abs, Scale, Add, Max, Custom };

Sign sign_of_coeff(double c) {
  if (c >= 0.0) return Sign::Nonneg;
  return Sign::Nonpos;
}

Sign flip(Sign s) {
  switch (s) {
    case Sign::Nonneg: return Sign::Nonpos;
    case Sign::Nonpos: return Sign::Nonneg;
    default: return Sign::Mixed;
  }
}

}  // namespace

struct AnchorSeq::Node {
  Kind kind;
  Sign sign;
  double maj_coeff;
  int maj_degree;
  std::string label;

  // Poly payload
  double coeff = 0.0;
  int degree = 0;
  // Scale payload
  double factor = 0.0;
  // Custom payload
  std::function<double(std::int64_t)> rule;
  // Children for Abs/Scale/Add/Max
  std::shared_ptr<const Node> a, b;

  double eval(std::int64_t k) const {
    switch (kind) {
      case Kind::Poly: {
        if (degree == 0) return coeff;
        return coeff * std::pow(static_cast<double>(k + 1), degree);
      }
      case Kind::Abs: return std::abs(a->eval(k));
      case Kind::Scale: return factor * a->eval(k);
      case Kind::Add: return a->eval(k) + b->eval(k);
      case Kind::Max: return std::max(a->eval(k), b->eval(k));
      case Kind::Custom: return rule(k);
    }
    return 0.0;
  }
};

AnchorSeq AnchorSeq::zero() { return poly(0.0, 0); }

AnchorSeq AnchorSeq::constant(double c) { return poly(c, 0); }

AnchorSeq AnchorSeq::poly(double coeff, int degree) {
  if (degree < 0) throw std::invalid_argument("anchor degree must be >= 0");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Poly;
  n->coeff = coeff;
  n->degree = degree;
  n->sign = sign_of_coeff(coeff);
  n->maj_coeff = std::abs(coeff);
  n->maj_degree = coeff == 0.0 ? 0 : degree;
  n->label = "poly(" + std::to_string(coeff) + "," + std::to_string(degree) + ")";
  return AnchorSeq(std::move(n));
}

AnchorSeq AnchorSeq::custom(std::function<double(std::int64_t)> rule, Sign sign,
                            double maj_coeff, int maj_degree, std::string label) {
  if (!rule) throw std::invalid_argument("anchor rule must be callable");
  if (maj_coeff < 0.0 || maj_degree < 0)
    throw std::invalid_argument("anchor majorant must be nonnegative");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Custom;
  n->rule = std::move(rule);
  n->sign = sign;
  n->maj_coeff = maj_coeff;
  n->maj_degree = maj_degree;
  n->label = std::move(label);
  return AnchorSeq(std::move(n));
}

double AnchorSeq::operator()(std::int64_t k) const { return node_->eval(k); }
Sign AnchorSeq::sign() const { return node_->sign; }
double AnchorSeq::maj_coeff() const { return node_->maj_coeff; }
int AnchorSeq::maj_degree() const { return node_->maj_degree; }
const std::string& AnchorSeq::label() const { return node_->label; }

bool AnchorSeq::is_zero() const {
  return node_->kind == Kind::Poly && node_->coeff == 0.0;
}

bool same_anchor(const AnchorSeq& x, const AnchorSeq& y) {
  const auto* a = x.node_.get();
  const auto* b = y.node_.get();
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Kind::Poly: return a->coeff == b->coeff && a->degree == b->degree;
    case Kind::Abs: return same_anchor(AnchorSeq(a->a), AnchorSeq(b->a));
    case Kind::Scale:
      return a->factor == b->factor && same_anchor(AnchorSeq(a->a), AnchorSeq(b->a));
    case Kind::Add:
    case Kind::Max:
      return same_anchor(AnchorSeq(a->a), AnchorSeq(b->a)) &&
             same_anchor(AnchorSeq(a->b), AnchorSeq(b->b));
    case Kind::Custom: return false;  // identity handled above
  }
  return false;
}

AnchorSeq abs(const AnchorSeq& x) {
  if (x.sign() == Sign::Nonneg) return x;
  auto n = std::make_shared<AnchorSeq::Node>();
  n->kind = Kind::Abs;
  n->a = x.node_;
  n->sign = Sign::Nonneg;
  n->maj_coeff = x.maj_coeff();
  n->maj_degree = x.maj_degree();
  n->label = "abs(" + x.label() + ")";
  return AnchorSeq(std::move(n));
}

AnchorSeq scale(const AnchorSeq& x, double c) {
  if (c == 1.0) return x;
  auto n = std::make_shared<AnchorSeq::Node>();
  n->kind = Kind::Scale;
  n->a = x.node_;
  n->factor = c;
  n->sign = c >= 0.0 ? x.sign() : flip(x.sign());
  if (c == 0.0) n->sign = Sign::Nonneg;
  n->maj_coeff = std::abs(c) * x.maj_coeff();
  n->maj_degree = x.maj_degree();
  n->label = "scale(" + x.label() + "," + std::to_string(c) + ")";
  return AnchorSeq(std::move(n));
}

AnchorSeq add(const AnchorSeq& x, const AnchorSeq& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  auto n = std::make_shared<AnchorSeq::Node>();
  n->kind = Kind::Add;
  n->a = x.node_;
  n->b = y.node_;
  if (x.sign() == y.sign())
    n->sign = x.sign();
  else
    n->sign = Sign::Mixed;
  n->maj_coeff = x.maj_coeff() + y.maj_coeff();
  n->maj_degree = std::max(x.maj_degree(), y.maj_degree());
  n->label = "add(" + x.label() + "," + y.label() + ")";
  return AnchorSeq(std::move(n));
}

AnchorSeq max(const AnchorSeq& x, const AnchorSeq& y) {
  if (same_anchor(x, y)) return x;
  auto n = std::make_shared<AnchorSeq::Node>();
  n->kind = Kind::Max;
  n->a = x.node_;
  n->b = y.node_;
  if (x.sign() == Sign::Nonneg || y.sign() == Sign::Nonneg)
    n->sign = Sign::Nonneg;
  else if (x.sign() == Sign::Nonpos && y.sign() == Sign::Nonpos)
    n->sign = Sign::Nonpos;
  else
    n->sign = Sign::Mixed;
  n->maj_coeff = std::max(x.maj_coeff(), y.maj_coeff());
  n->maj_degree = std::max(x.maj_degree(), y.maj_degree());
  n->label = "max(" + x.label() + "," + y.label() + ")";
  return AnchorSeq(std::move(n));
}

}  // namespace seqode
