#include "krivine/lattice_term.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace krivine {

struct LatticeTerm::Node {
  Kind kind;
  std::size_t arity;
  std::vector<double> coeffs;
  double factor = 1.0;
  std::vector<LatticeTerm> children;
};

LatticeTerm::LatticeTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

LatticeTerm LatticeTerm::linear(std::vector<double> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("linear leaf needs at least one coefficient");
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw std::invalid_argument("linear leaf coefficients must be finite");
  }
  const std::size_t n = coeffs.size();
  return LatticeTerm(std::make_shared<const Node>(Node{Kind::linear, n, std::move(coeffs), 1.0, {}}));
}

LatticeTerm LatticeTerm::projection(std::size_t i, std::size_t n) {
  if (i >= n) throw std::out_of_range("projection index out of range");
  std::vector<double> c(n, 0.0);
  c[i] = 1.0;
  return linear(std::move(c));
}

LatticeTerm LatticeTerm::combine(Kind kind, std::vector<LatticeTerm> terms) {
  if (terms.empty()) throw std::invalid_argument("lattice term combination of zero operands");
  const std::size_t n = terms.front().arity();
  for (const auto& t : terms) {
    if (t.arity() != n) throw std::invalid_argument("lattice term operands differ in arity");
  }
  if (terms.size() == 1) return std::move(terms.front());
  return LatticeTerm(std::make_shared<const Node>(Node{kind, n, {}, 1.0, std::move(terms)}));
}

LatticeTerm LatticeTerm::sup(std::vector<LatticeTerm> terms) { return combine(Kind::sup, std::move(terms)); }
LatticeTerm LatticeTerm::inf(std::vector<LatticeTerm> terms) { return combine(Kind::inf, std::move(terms)); }
LatticeTerm LatticeTerm::add(std::vector<LatticeTerm> terms) { return combine(Kind::add, std::move(terms)); }

LatticeTerm LatticeTerm::sup(LatticeTerm a, LatticeTerm b) {
  return sup(std::vector<LatticeTerm>{std::move(a), std::move(b)});
}

LatticeTerm LatticeTerm::inf(LatticeTerm a, LatticeTerm b) {
  return inf(std::vector<LatticeTerm>{std::move(a), std::move(b)});
}

LatticeTerm LatticeTerm::scale(double factor, LatticeTerm term) {
  if (!std::isfinite(factor)) throw std::invalid_argument("scale factor must be finite");
  const std::size_t n = term.arity();
  return LatticeTerm(
      std::make_shared<const Node>(Node{Kind::scale, n, {}, factor, {std::move(term)}}));
}

LatticeTerm LatticeTerm::abs(LatticeTerm a) {
  auto neg = scale(-1.0, a);
  return sup(std::move(a), std::move(neg));
}

LatticeTerm::Kind LatticeTerm::kind() const { return node_->kind; }
std::size_t LatticeTerm::arity() const { return node_->arity; }
std::span<const double> LatticeTerm::coeffs() const { return node_->coeffs; }
double LatticeTerm::factor() const { return node_->factor; }
std::span<const LatticeTerm> LatticeTerm::children() const { return node_->children; }

double LatticeTerm::evaluate(std::span<const double> s) const {
  if (s.size() != arity()) throw std::invalid_argument("term evaluated at point of wrong arity");
  switch (node_->kind) {
    case Kind::linear: {
      double acc = 0.0;
      for (std::size_t i = 0; i < s.size(); ++i) acc += node_->coeffs[i] * s[i];
      return acc;
    }
    case Kind::sup: {
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& c : node_->children) best = std::max(best, c.evaluate(s));
      return best;
    }
    case Kind::inf: {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : node_->children) best = std::min(best, c.evaluate(s));
      return best;
    }
    case Kind::add: {
      double acc = 0.0;
      for (const auto& c : node_->children) acc += c.evaluate(s);
      return acc;
    }
    case Kind::scale:
      return node_->factor * node_->children.front().evaluate(s);
  }
  return 0.0;
}

HomogeneousFn LatticeTerm::to_function() const {
  return HomogeneousFn::trusted(arity(),
                                [t = *this](std::span<const double> s) { return t.evaluate(s); });
}

std::size_t LatticeTerm::depth() const {
  std::size_t d = 0;
  for (const auto& c : node_->children) d = std::max(d, c.depth());
  return d + 1;
}

std::size_t LatticeTerm::leaf_count() const {
  if (node_->kind == Kind::linear) return 1;
  std::size_t n = 0;
  for (const auto& c : node_->children) n += c.leaf_count();
  return n;
}

std::string LatticeTerm::to_string() const {
  std::ostringstream out;
  switch (node_->kind) {
    case Kind::linear: {
      out << '<';
      for (std::size_t i = 0; i < node_->coeffs.size(); ++i) {
        if (i) out << ',';
        out << node_->coeffs[i];
      }
      out << '>';
      break;
    }
    case Kind::scale:
      out << node_->factor << '*' << node_->children.front().to_string();
      break;
    default: {
      const char* op = node_->kind == Kind::sup ? " v " : node_->kind == Kind::inf ? " ^ " : " + ";
      out << '(';
      for (std::size_t i = 0; i < node_->children.size(); ++i) {
        if (i) out << op;
        out << node_->children[i].to_string();
      }
      out << ')';
    }
  }
  return out.str();
}

}  // namespace krivine
