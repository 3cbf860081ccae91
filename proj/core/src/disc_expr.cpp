#include "lempert/disc_expr.hpp"

#include <cstdio>
#include <sstream>
#include <variant>

#include "lempert/errors.hpp"

namespace lempert {
namespace {

std::string format_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

}  // namespace

struct Rotation { double theta; };
struct Scale { Complex factor; };
struct Moebius { Complex alpha; };
struct Blaschke { BlaschkeProduct product; };
struct Cover { CoverMap map; };
struct Compose { DiscExpr outer; DiscExpr inner; };
struct Pair { DiscExpr first; DiscExpr second; };

struct DiscExpr::Node {
  std::variant<Rotation, Scale, Moebius, Blaschke, Cover, Compose, Pair> op;
};

DiscExpr DiscExpr::identity() { return rotation(0.0); }

DiscExpr DiscExpr::rotation(double theta) {
  return DiscExpr(std::make_shared<const Node>(Node{Rotation{theta}}));
}

DiscExpr DiscExpr::scale(Complex c) {
  return DiscExpr(std::make_shared<const Node>(Node{Scale{c}}));
}

DiscExpr DiscExpr::moebius(Complex alpha) {
  (void)DiscPoint(alpha);
  return DiscExpr(std::make_shared<const Node>(Node{Moebius{alpha}}));
}

DiscExpr DiscExpr::blaschke(BlaschkeProduct b) {
  return DiscExpr(std::make_shared<const Node>(Node{Blaschke{std::move(b)}}));
}

DiscExpr DiscExpr::cover(CoverMap c) {
  return DiscExpr(std::make_shared<const Node>(Node{Cover{std::move(c)}}));
}

DiscExpr DiscExpr::compose(DiscExpr outer, DiscExpr inner) {
  if (inner.arity() != 1) throw DomainError("cannot compose with a vector-valued inner map");
  return DiscExpr(std::make_shared<const Node>(Node{Compose{std::move(outer), std::move(inner)}}));
}

DiscExpr DiscExpr::pair(DiscExpr first, DiscExpr second) {
  return DiscExpr(std::make_shared<const Node>(Node{Pair{std::move(first), std::move(second)}}));
}

std::size_t DiscExpr::arity() const {
  return std::visit(
      [](const auto& op) -> std::size_t {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, Pair>) {
          return op.first.arity() + op.second.arity();
        } else if constexpr (std::is_same_v<T, Compose>) {
          return op.outer.arity();
        } else {
          return 1;
        }
      },
      node_->op);
}

std::vector<Complex> DiscExpr::operator()(Complex zeta) const {
  return std::visit(
      [zeta](const auto& op) -> std::vector<Complex> {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, Rotation>) {
          return {std::polar(1.0, op.theta) * zeta};
        } else if constexpr (std::is_same_v<T, Scale>) {
          return {op.factor * zeta};
        } else if constexpr (std::is_same_v<T, Moebius>) {
          return {lempert::moebius(op.alpha, zeta)};
        } else if constexpr (std::is_same_v<T, Blaschke>) {
          return {op.product(zeta)};
        } else if constexpr (std::is_same_v<T, Cover>) {
          return {op.map(zeta)};
        } else if constexpr (std::is_same_v<T, Compose>) {
          return op.outer(op.inner.scalar(zeta));
        } else {
          auto out = op.first(zeta);
          const auto tail = op.second(zeta);
          out.insert(out.end(), tail.begin(), tail.end());
          return out;
        }
      },
      node_->op);
}

Complex DiscExpr::scalar(Complex zeta) const {
  const auto v = (*this)(zeta);
  if (v.size() != 1) throw DomainError("expression is not scalar-valued");
  return v.front();
}

std::string DiscExpr::describe() const {
  return std::visit(
      [](const auto& op) -> std::string {
        using T = std::decay_t<decltype(op)>;
        std::ostringstream os;
        if constexpr (std::is_same_v<T, Rotation>) {
          char buf[64];
          std::snprintf(buf, sizeof buf, "rotation(%.17g)", op.theta);
          os << buf;
        } else if constexpr (std::is_same_v<T, Scale>) {
          os << "scale(" << format_complex(op.factor) << ")";
        } else if constexpr (std::is_same_v<T, Moebius>) {
          os << "moebius(" << format_complex(op.alpha) << ")";
        } else if constexpr (std::is_same_v<T, Blaschke>) {
          char buf[64];
          std::snprintf(buf, sizeof buf, "blaschke(phase=%.17g, zeros=[", op.product.phase());
          os << buf;
          for (std::size_t i = 0; i < op.product.zeros().size(); ++i) {
            os << (i ? ", " : "") << format_complex(op.product.zeros()[i]);
          }
          os << "])";
        } else if constexpr (std::is_same_v<T, Cover>) {
          os << "cover(" << op.map.domain().name() << ", base=" << format_complex(op.map.base_point())
             << ")";
        } else if constexpr (std::is_same_v<T, Compose>) {
          os << "(" << op.outer.describe() << " o " << op.inner.describe() << ")";
        } else {
          os << "(" << op.first.describe() << ", " << op.second.describe() << ")";
        }
        return os.str();
      },
      node_->op);
}

}  // namespace lempert
