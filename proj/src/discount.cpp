#include "sld/discount.hpp"

#include <stdexcept>

namespace sld {

struct DiscountFn::Node {
  Kind kind;
  Rational lambda;             // Exponential
  Rational factor;             // Scaled
  std::shared_ptr<const Node> inner;  // Scaled / Shifted / TableThenTail tail
  unsigned long shift = 0;     // Shifted
  std::vector<Rational> table; // TableThenTail
};

namespace {

Rational node_at(const DiscountFn::Node& n, unsigned long i);

Rational node_at(const DiscountFn::Node& n, unsigned long i) {
  using Kind = DiscountFn::Kind;
  switch (n.kind) {
    case Kind::Exponential:
      return n.lambda.pow(i);
    case Kind::Hyperbolic:
      return Rational(BigInt(1), BigInt(i) + 1);
    case Kind::Scaled:
      return n.factor * node_at(*n.inner, i);
    case Kind::Shifted:
      return node_at(*n.inner, i + n.shift);
    case Kind::TableThenTail:
      if (i < n.table.size())
        return n.table[i];
      return node_at(*n.inner, i);
  }
  throw std::logic_error("discount: bad kind");
}

unsigned long node_crossing(const DiscountFn::Node& n, const Rational& bound) {
  using Kind = DiscountFn::Kind;
  switch (n.kind) {
    case Kind::Exponential: {
      // smallest i with l^i <= bound
      unsigned long i = 0;
      Rational v = Rational::one();
      while (v > bound) {
        v *= n.lambda;
        ++i;
      }
      return i;
    }
    case Kind::Hyperbolic: {
      // 1/(i+1) <= b  iff  i+1 >= 1/b  iff  i >= ceil(den/num) - 1
      if (bound >= Rational::one())
        return 0;
      BigInt num = bound.numerator(), den = bound.denominator();
      BigInt q = den / num;
      if (q * num < den)
        ++q;  // ceiling
      return static_cast<unsigned long>(q - 1);
    }
    case Kind::Scaled:
      // c*g(i) <= b  iff  g(i) <= b/c
      return node_crossing(*n.inner, bound / n.factor);
    case Kind::Shifted: {
      // g(i+k) <= b: non-increasing, so the crossing set is upward closed
      unsigned long ci = node_crossing(*n.inner, bound);
      return ci <= n.shift ? 0 : ci - n.shift;
    }
    case Kind::TableThenTail: {
      for (unsigned long i = 0; i < n.table.size(); ++i)
        if (n.table[i] <= bound)
          return i;
      unsigned long ci = node_crossing(*n.inner, bound);
      return ci < n.table.size() ? n.table.size() : ci;
    }
  }
  throw std::logic_error("discount: bad kind");
}

bool node_positive(const DiscountFn::Node& n) {
  using Kind = DiscountFn::Kind;
  switch (n.kind) {
    case Kind::Exponential:
    case Kind::Hyperbolic:
      return true;
    case Kind::Scaled:
    case Kind::Shifted:
      return node_positive(*n.inner);
    case Kind::TableThenTail:
      for (const auto& r : n.table)
        if (r.is_zero())
          return false;
      return node_positive(*n.inner);
  }
  throw std::logic_error("discount: bad kind");
}

}  // namespace

DiscountFn DiscountFn::exponential(const Rational& lambda) {
  if (!(lambda > Rational::zero() && lambda < Rational::one()))
    throw std::invalid_argument("discount: exponential base must lie in (0,1)");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Exponential;
  n->lambda = lambda;
  return DiscountFn(std::move(n));
}

DiscountFn DiscountFn::hyperbolic() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Hyperbolic;
  return DiscountFn(std::move(n));
}

DiscountFn DiscountFn::scaled(const Rational& factor, const DiscountFn& inner) {
  if (!(factor > Rational::zero() && factor <= Rational::one()))
    throw std::invalid_argument("discount: scale factor must lie in (0,1]");
  if (factor.is_one())
    return inner;
  if (inner.kind() == Kind::Scaled) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Scaled;
    n->factor = factor * inner.factor();
    n->inner = inner.node_->inner;
    return DiscountFn(std::move(n));
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Scaled;
  n->factor = factor;
  n->inner = inner.node_;
  return DiscountFn(std::move(n));
}

DiscountFn DiscountFn::shifted(const DiscountFn& inner, unsigned long k) {
  return inner.shift(k);
}

DiscountFn DiscountFn::table_then_tail(std::vector<Rational> table, const DiscountFn& tail) {
  if (table.empty())
    throw std::invalid_argument("discount: table must be nonempty");
  for (const auto& r : table)
    if (!r.in_unit_interval())
      throw std::invalid_argument("discount: table entry outside [0,1]");
  for (size_t i = 0; i + 1 < table.size(); ++i)
    if (table[i] < table[i + 1])
      throw std::invalid_argument("discount: table entries must be non-increasing");
  if (table.back() < tail.at(table.size()))
    throw std::invalid_argument("discount: table must dominate the tail at the junction");
  auto n = std::make_shared<Node>();
  n->kind = Kind::TableThenTail;
  n->table = std::move(table);
  n->inner = tail.node_;
  return DiscountFn(std::move(n));
}

DiscountFn::Kind DiscountFn::kind() const { return node_->kind; }

Rational DiscountFn::at(unsigned long i) const { return node_at(*node_, i); }

DiscountFn DiscountFn::shift(unsigned long k) const {
  if (k == 0)
    return *this;
  switch (node_->kind) {
    case Kind::Exponential:
      return scaled(node_->lambda.pow(k), *this);
    case Kind::Scaled:
      return scaled(node_->factor, DiscountFn(node_->inner).shift(k));
    case Kind::Shifted:
      return DiscountFn(node_->inner).shift(node_->shift + k);
    case Kind::TableThenTail: {
      const auto& t = node_->table;
      DiscountFn tail(node_->inner);
      if (k >= t.size())
        return tail.shift(k);
      // d(i+k): remaining table entries, tail still indexed absolutely,
      // i.e. shifted by the same k.
      std::vector<Rational> rest(t.begin() + static_cast<long>(k), t.end());
      return table_then_tail(std::move(rest), tail.shift(k));
    }
    case Kind::Hyperbolic:
      break;
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Shifted;
  n->inner = node_;
  n->shift = k;
  return DiscountFn(std::move(n));
}

unsigned long DiscountFn::crossing_index(const Rational& bound) const {
  if (bound <= Rational::zero())
    throw std::invalid_argument("discount: crossing_index needs a positive bound");
  return node_crossing(*node_, bound);
}

bool DiscountFn::strictly_positive() const { return node_positive(*node_); }

bool DiscountFn::operator==(const DiscountFn& o) const {
  if (node_ == o.node_)
    return true;
  if (node_->kind != o.node_->kind)
    return false;
  switch (node_->kind) {
    case Kind::Exponential:
      return node_->lambda == o.node_->lambda;
    case Kind::Hyperbolic:
      return true;
    case Kind::Scaled:
      return node_->factor == o.node_->factor &&
             DiscountFn(node_->inner) == DiscountFn(o.node_->inner);
    case Kind::Shifted:
      return node_->shift == o.node_->shift &&
             DiscountFn(node_->inner) == DiscountFn(o.node_->inner);
    case Kind::TableThenTail:
      return node_->table == o.node_->table &&
             DiscountFn(node_->inner) == DiscountFn(o.node_->inner);
  }
  return false;
}

std::string DiscountFn::str() const {
  switch (node_->kind) {
    case Kind::Exponential:
      return "exp " + node_->lambda.str();
    case Kind::Hyperbolic:
      return "hyp";
    case Kind::Scaled:
      return "scale " + node_->factor.str() + " " + DiscountFn(node_->inner).str();
    case Kind::Shifted:
      return "shift " + std::to_string(node_->shift) + " " +
             DiscountFn(node_->inner).str();
    case Kind::TableThenTail: {
      std::string s = "table";
      for (const auto& r : node_->table)
        s += " " + r.str();
      s += " then " + DiscountFn(node_->inner).str();
      return s;
    }
  }
  return "?";
}

const Rational& DiscountFn::lambda() const {
  if (node_->kind != Kind::Exponential)
    throw std::logic_error("discount: not exponential");
  return node_->lambda;
}

const Rational& DiscountFn::factor() const {
  if (node_->kind != Kind::Scaled)
    throw std::logic_error("discount: not scaled");
  return node_->factor;
}

DiscountFn DiscountFn::inner() const {
  if (node_->kind == Kind::Exponential || node_->kind == Kind::Hyperbolic)
    throw std::logic_error("discount: no inner function");
  return DiscountFn(node_->inner);
}

unsigned long DiscountFn::shift_amount() const {
  if (node_->kind != Kind::Shifted)
    throw std::logic_error("discount: not shifted");
  return node_->shift;
}

const std::vector<Rational>& DiscountFn::table() const {
  if (node_->kind != Kind::TableThenTail)
    throw std::logic_error("discount: not table-then-tail");
  return node_->table;
}

}  // namespace sld
