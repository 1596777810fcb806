#include "statelift/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace statelift {

std::shared_ptr<const VariableSpace> VariableSpace::make(std::vector<VarDesc> vars) {
  std::stable_sort(vars.begin(), vars.end(), [](const VarDesc& a, const VarDesc& b) {
    if (a.stage != b.stage) return a.stage < b.stage;
    if (a.kind != b.kind) return a.kind < b.kind;  // Local before State
    return a.component < b.component;
  });
  auto sp = std::make_shared<VariableSpace>();
  sp->vars_ = std::move(vars);
  for (int i = 0; i < sp->size(); ++i) {
    auto& v = sp->vars_[i];
    if (v.name.empty()) {
      std::ostringstream os;
      os << (v.kind == VarKind::Local ? "x[" : "s[") << v.stage << "][" << v.component << "]";
      v.name = os.str();
    }
    auto key = std::make_tuple(v.stage, static_cast<int>(v.kind), v.component);
    if (!sp->index_.emplace(key, i).second)
      throw std::invalid_argument("duplicate variable " + v.name);
    sp->max_stage_ = std::max(sp->max_stage_, v.stage);
  }
  return sp;
}

int VariableSpace::id_of(int stage, VarKind kind, int component) const {
  auto it = index_.find(std::make_tuple(stage, static_cast<int>(kind), component));
  if (it == index_.end())
    throw std::out_of_range("no such variable: stage " + std::to_string(stage) +
                            " component " + std::to_string(component));
  return it->second;
}

bool VariableSpace::contains(int stage, VarKind kind, int component) const {
  return index_.count(std::make_tuple(stage, static_cast<int>(kind), component)) > 0;
}

std::vector<int> VariableSpace::state_ids(int stage) const {
  std::vector<int> ids;
  for (int c = 1; contains(stage, VarKind::State, c); ++c)
    ids.push_back(id_of(stage, VarKind::State, c));
  return ids;
}

std::vector<int> VariableSpace::local_ids(int stage) const {
  std::vector<int> ids;
  for (int c = 1; contains(stage, VarKind::Local, c); ++c)
    ids.push_back(id_of(stage, VarKind::Local, c));
  return ids;
}

MultiIndex::MultiIndex(std::vector<std::pair<int, int>> terms) {
  std::sort(terms.begin(), terms.end());
  for (auto& [v, e] : terms) {
    if (e < 0) throw std::invalid_argument("negative exponent");
    if (e == 0) continue;
    if (!terms_.empty() && terms_.back().first == v)
      terms_.back().second += e;
    else
      terms_.emplace_back(v, e);
    degree_ += e;
  }
}

MultiIndex MultiIndex::unit(int var, int exp) {
  return MultiIndex({{var, exp}});
}

int MultiIndex::exponent(int var) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), std::make_pair(var, 0));
  if (it != terms_.end() && it->first == var) return it->second;
  return 0;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  MultiIndex out;
  out.degree_ = degree_ + other.degree_;
  auto a = terms_.begin(), b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->first < b->first))
      out.terms_.push_back(*a++);
    else if (a == terms_.end() || b->first < a->first)
      out.terms_.push_back(*b++);
    else {
      out.terms_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return out;
}

std::string MultiIndex::to_string(const VariableSpace& space) const {
  if (terms_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (auto& [v, e] : terms_) {
    if (!first) os << "*";
    first = false;
    os << space.var(v).name;
    if (e > 1) os << "^" << e;
  }
  return os.str();
}

bool GrlexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
  // Same degree: the monomial with the larger exponent on the earliest
  // differing variable comes first.
  auto ia = a.terms().begin(), ib = b.terms().begin();
  while (ia != a.terms().end() && ib != b.terms().end()) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (ia->second != ib->second) return ia->second > ib->second;
    ++ia;
    ++ib;
  }
  return false;  // equal
}

namespace {
void enumerate_rec(std::span<const int> vars, int pos, int remaining, bool exact,
                   std::vector<std::pair<int, int>>& acc, std::vector<MultiIndex>& out) {
  if (pos == static_cast<int>(vars.size())) {
    if (!exact || remaining == 0) out.push_back(MultiIndex(acc));
    return;
  }
  int hi = remaining;
  for (int e = hi; e >= 0; --e) {
    if (e > 0) acc.emplace_back(vars[pos], e);
    enumerate_rec(vars, pos + 1, remaining - e, exact, acc, out);
    if (e > 0) acc.pop_back();
  }
}
}  // namespace

std::vector<MultiIndex> monomials_up_to(std::span<const int> vars, int k) {
  if (k < 0) throw std::invalid_argument("negative degree bound");
  std::vector<int> sorted(vars.begin(), vars.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<MultiIndex> out;
  std::vector<std::pair<int, int>> acc;
  for (int d = 0; d <= k; ++d)
    enumerate_rec(sorted, 0, d, /*exact=*/true, acc, out);
  return out;
}

long long binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Polynomial::Polynomial(VarSpacePtr space, std::map<MultiIndex, double, GrlexLess> terms)
    : space_(std::move(space)), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = (it->second == 0.0) ? terms_.erase(it) : std::next(it);
}

Polynomial Polynomial::constant(VarSpacePtr space, double c) {
  Polynomial p(std::move(space));
  p.add_term(MultiIndex{}, c);
  return p;
}

Polynomial Polynomial::variable(VarSpacePtr space, int var) {
  Polynomial p(std::move(space));
  p.add_term(MultiIndex::unit(var), 1.0);
  return p;
}

Polynomial Polynomial::monomial(VarSpacePtr space, MultiIndex mi, double c) {
  Polynomial p(std::move(space));
  p.add_term(mi, c);
  return p;
}

int Polynomial::degree() const {
  int d = 0;
  for (auto& [mi, c] : terms_) d = std::max(d, mi.total_degree());
  return d;
}

double Polynomial::coefficient(const MultiIndex& mi) const {
  auto it = terms_.find(mi);
  return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::add_term(const MultiIndex& mi, double c) {
  if (c == 0.0) return;
  auto [it, inserted] = terms_.emplace(mi, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

namespace {
void check_space(const Polynomial& p, const Polynomial& q) {
  if (p.space() && q.space() && p.space() != q.space())
    throw std::invalid_argument("polynomial variable-space mismatch");
}
}  // namespace

Polynomial Polynomial::operator+(const Polynomial& q) const {
  check_space(*this, q);
  Polynomial out = *this;
  if (!out.space_) out.space_ = q.space_;
  for (auto& [mi, c] : q.terms_) out.add_term(mi, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& q) const { return *this + q.scale(-1.0); }

Polynomial Polynomial::operator*(const Polynomial& q) const {
  check_space(*this, q);
  Polynomial out(space_ ? space_ : q.space_);
  for (auto& [ma, ca] : terms_)
    for (auto& [mb, cb] : q.terms_) out.add_term(ma + mb, ca * cb);
  return out;
}

Polynomial Polynomial::scale(double a) const {
  Polynomial out(space_);
  if (a == 0.0) return out;
  for (auto& [mi, c] : terms_) out.terms_.emplace(mi, c * a);
  return out;
}

Polynomial Polynomial::substitute(const std::unordered_map<int, Polynomial>& bindings) const {
  Polynomial out(space_);
  for (auto& [mi, c] : terms_) {
    Polynomial term = Polynomial::constant(space_, c);
    MultiIndex passthrough;
    for (auto& [v, e] : mi.terms()) {
      auto it = bindings.find(v);
      if (it == bindings.end()) {
        passthrough = passthrough + MultiIndex::unit(v, e);
      } else {
        Polynomial pw = Polynomial::constant(space_, 1.0);
        for (int i = 0; i < e; ++i) pw = pw * it->second;
        term = term * pw;
      }
    }
    if (!passthrough.empty()) term = term * Polynomial::monomial(space_, passthrough, 1.0);
    out = out + term;
  }
  return out;
}

double Polynomial::evaluate(const std::unordered_map<int, double>& point) const {
  double acc = 0.0;
  for (auto& [mi, c] : terms_) {
    double t = c;
    for (auto& [v, e] : mi.terms()) {
      auto it = point.find(v);
      if (it == point.end()) throw std::invalid_argument("unbound variable in evaluate");
      t *= std::pow(it->second, e);
    }
    acc += t;
  }
  return acc;
}

double Polynomial::evaluate(std::span<const double> point_by_id) const {
  double acc = 0.0;
  for (auto& [mi, c] : terms_) {
    double t = c;
    for (auto& [v, e] : mi.terms()) {
      if (v >= static_cast<int>(point_by_id.size()))
        throw std::invalid_argument("unbound variable in evaluate");
      t *= std::pow(point_by_id[v], e);
    }
    acc += t;
  }
  return acc;
}

Polynomial Polynomial::differentiate(int var) const {
  Polynomial out(space_);
  for (auto& [mi, c] : terms_) {
    int e = mi.exponent(var);
    if (e == 0) continue;
    std::vector<std::pair<int, int>> t;
    for (auto& [v, ex] : mi.terms())
      if (v != var)
        t.emplace_back(v, ex);
      else if (ex > 1)
        t.emplace_back(v, ex - 1);
    out.add_term(MultiIndex(std::move(t)), c * e);
  }
  return out;
}

Polynomial Polynomial::pruned(double tol) const {
  Polynomial out(space_);
  for (auto& [mi, c] : terms_)
    if (std::abs(c) > tol) out.terms_.emplace(mi, c);
  return out;
}

std::vector<int> Polynomial::support() const {
  std::vector<int> vars;
  for (auto& [mi, c] : terms_)
    for (auto& [v, e] : mi.terms()) vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [mi, c] : terms_) {
    if (!first) os << (c >= 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    os << std::abs(c);
    if (!mi.empty() && space_) os << "*" << mi.to_string(*space_);
  }
  return os.str();
}

Polynomial power_product(std::span<const Polynomial> fs, std::span<const int> alpha) {
  if (fs.size() != alpha.size()) throw std::invalid_argument("power_product: size mismatch");
  if (fs.empty()) throw std::invalid_argument("power_product: empty factor list");
  Polynomial out = Polynomial::constant(fs[0].space(), 1.0);
  for (size_t l = 0; l < fs.size(); ++l)
    for (int i = 0; i < alpha[l]; ++i) out = out * fs[l];
  return out;
}

}  // namespace statelift
