#pragma once

// Radial functions S^{d-1} -> [0, inf]. A profile is an immutable tree:
// closed-form leaves carry an analytic evaluator, sampled leaves carry values
// on a sphere grid, and derived nodes combine operands lazily. Derived
// evaluation is exact: min(rho, c) is computed from the operand's value and
// nothing else, so truncate(A, eta) agrees with min(rho_A, eta) bit for bit.

#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "starbody/sphere_grid.hpp"
#include "starbody/xreal.hpp"

namespace starbody {

class RadialProfile {
 public:
  enum class Form { ClosedForm, Sampled, Derived };
  enum class Op { MinConstant, Reciprocal, Sum, Scale, MaxFamily };
  using Evaluator = std::function<XReal(const Direction&)>;

  static RadialProfile closed_form(std::string name, std::vector<double> params, Evaluator f) {
    auto n = std::make_shared<Node>();
    n->form = Form::ClosedForm;
    n->name = std::move(name);
    n->params = std::move(params);
    n->eval = std::move(f);
    return RadialProfile(std::move(n));
  }

  static RadialProfile constant(XReal c) {
    if (!xreal::is_valid(c)) throw std::invalid_argument("constant profile must lie in [0, inf]");
    return closed_form("constant", {c}, [c](const Direction&) { return c; });
  }

  /// Values at the grid directions; off-grid evaluation uses the nearest grid point.
  static RadialProfile sampled(std::shared_ptr<const SphereGrid> grid, std::vector<XReal> values) {
    if (!grid) throw std::invalid_argument("sampled profile needs a grid");
    if (values.size() != grid->size())
      throw std::invalid_argument("sampled profile: " + std::to_string(values.size()) + " values for " +
                                  std::to_string(grid->size()) + " grid directions");
    for (XReal v : values)
      if (!xreal::is_valid(v)) throw std::invalid_argument("sampled profile values must lie in [0, inf]");
    auto n = std::make_shared<Node>();
    n->form = Form::Sampled;
    n->name = "sampled";
    n->grid = std::move(grid);
    n->values = std::move(values);
    return RadialProfile(std::move(n));
  }

  static RadialProfile min_constant(const RadialProfile& p, double c) {
    return derived(Op::MinConstant, {p}, c);
  }

  /// 1/rho with 1/0 = inf and 1/inf = 0. The reciprocal of a reciprocal node
  /// returns the original operand, so the involution is exact.
  static RadialProfile reciprocal(const RadialProfile& p) {
    if (p.form() == Form::Derived && p.op() == Op::Reciprocal) return p.operands().front();
    return derived(Op::Reciprocal, {p}, 0.0);
  }

  static RadialProfile sum(const RadialProfile& a, const RadialProfile& b) { return derived(Op::Sum, {a, b}, 0.0); }

  static RadialProfile scaled(const RadialProfile& p, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("scale factor must be positive");
    return derived(Op::Scale, {p}, lambda);
  }

  static RadialProfile max_of(std::vector<RadialProfile> family) {
    if (family.empty()) throw std::invalid_argument("max_of needs at least one profile");
    return derived(Op::MaxFamily, std::move(family), 0.0);
  }

  XReal operator()(const Direction& theta) const { return evaluate(*node_, theta); }

  /// Values at every grid direction; sampled profiles on the same grid are returned as stored.
  std::vector<XReal> sample(const SphereGrid& grid) const {
    if (node_->form == Form::Sampled && node_->grid.get() == &grid) return node_->values;
    std::vector<XReal> out;
    out.reserve(grid.size());
    for (const auto& theta : grid) out.push_back((*this)(theta));
    return out;
  }

  Form form() const { return node_->form; }
  Op op() const { return node_->op; }
  const std::string& name() const { return node_->name; }
  const std::vector<double>& params() const { return node_->params; }
  double scalar() const { return node_->scalar; }
  const std::vector<RadialProfile>& operands() const { return node_->operands; }
  const std::shared_ptr<const SphereGrid>& grid() const { return node_->grid; }
  const std::vector<XReal>& values() const { return node_->values; }

  std::string describe() const {
    std::ostringstream os;
    describe(os, *node_);
    return os.str();
  }

 private:
  struct Node {
    Form form = Form::ClosedForm;
    std::string name;
    std::vector<double> params;
    Evaluator eval;
    std::shared_ptr<const SphereGrid> grid;
    std::vector<XReal> values;
    Op op = Op::MinConstant;
    double scalar = 0.0;
    std::vector<RadialProfile> operands;
  };

  explicit RadialProfile(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static RadialProfile derived(Op op, std::vector<RadialProfile> operands, double scalar) {
    auto n = std::make_shared<Node>();
    n->form = Form::Derived;
    n->op = op;
    n->scalar = scalar;
    n->operands = std::move(operands);
    return RadialProfile(std::move(n));
  }

  static XReal evaluate(const Node& n, const Direction& theta) {
    switch (n.form) {
      case Form::ClosedForm:
        return n.eval(theta);
      case Form::Sampled:
        return n.values[n.grid->nearest(theta)];
      case Form::Derived:
        break;
    }
    switch (n.op) {
      case Op::MinConstant:
        return xreal::truncate(n.operands[0](theta), n.scalar);
      case Op::Reciprocal:
        return xreal::reciprocal(n.operands[0](theta));
      case Op::Sum:
        return xreal::add(n.operands[0](theta), n.operands[1](theta));
      case Op::Scale:
        return xreal::scale(n.operands[0](theta), n.scalar);
      case Op::MaxFamily: {
        XReal best = 0.0;
        for (const auto& p : n.operands) best = std::max(best, p(theta));
        return best;
      }
    }
    return 0.0;
  }

  static void describe(std::ostream& os, const Node& n) {
    switch (n.form) {
      case Form::ClosedForm:
        os << n.name;
        if (!n.params.empty()) {
          os << '(';
          for (std::size_t i = 0; i < n.params.size(); ++i) os << (i ? "," : "") << n.params[i];
          os << ')';
        }
        return;
      case Form::Sampled:
        os << "sampled[" << n.values.size() << ']';
        return;
      case Form::Derived:
        break;
    }
    static constexpr const char* names[] = {"min", "recip", "sum", "scale", "max"};
    os << names[static_cast<int>(n.op)] << '(';
    for (std::size_t i = 0; i < n.operands.size(); ++i) {
      if (i) os << ',';
      describe(os, *n.operands[i].node_);
    }
    if (n.op == Op::MinConstant || n.op == Op::Scale) os << ',' << n.scalar;
    os << ')';
  }

  std::shared_ptr<const Node> node_;
};

}  // namespace starbody
