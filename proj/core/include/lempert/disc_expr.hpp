#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lempert/complex_kernel.hpp"
#include "lempert/cover_map.hpp"

namespace lempert {

/// Immutable expression tree describing an analytic disc: a holomorphic map
/// from the unit disc into a plane domain or, through `pair`, into a product
/// of two of them. Subtrees are shared.
class DiscExpr {
 public:
  static DiscExpr identity();
  /// zeta -> e^{i theta} zeta
  static DiscExpr rotation(double theta);
  /// zeta -> c zeta
  static DiscExpr scale(Complex c);
  /// zeta -> moebius(alpha, zeta)
  static DiscExpr moebius(Complex alpha);
  static DiscExpr blaschke(BlaschkeProduct b);
  /// Normalized cover pi_z.
  static DiscExpr cover(CoverMap c);
  /// outer o inner; `inner` must be scalar-valued.
  static DiscExpr compose(DiscExpr outer, DiscExpr inner);
  /// zeta -> (first(zeta), second(zeta)).
  static DiscExpr pair(DiscExpr first, DiscExpr second);

  /// 1 for plane-valued expressions, 2 for pairs.
  [[nodiscard]] std::size_t arity() const;
  [[nodiscard]] std::vector<Complex> operator()(Complex zeta) const;
  /// Value of a scalar expression.
  [[nodiscard]] Complex scalar(Complex zeta) const;
  [[nodiscard]] std::string describe() const;

  struct Node;

 private:
  explicit DiscExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace lempert
