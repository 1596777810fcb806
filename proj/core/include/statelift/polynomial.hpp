#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace statelift {

/// Kind of a variable in a composition chain.
enum class VarKind : uint8_t { Local, State };

struct VarDesc {
  int stage = 0;       // 1-based stage index
  VarKind kind = VarKind::Local;
  int component = 1;   // 1-based within-stage component index
  std::string name;    // "x[i][j]" or "s[i][l]"
};

/// Ordered set of variables with dense ids 0..size()-1.
///
/// The ordering is stage-major with locals of stage i before states of
/// stage i, so the states of stage i-1 always precede the locals of
/// stage i. This fixes the monomial indexing used everywhere downstream.
class VariableSpace {
 public:
  static std::shared_ptr<const VariableSpace> make(std::vector<VarDesc> vars);

  int size() const { return static_cast<int>(vars_.size()); }
  const VarDesc& var(int id) const { return vars_.at(id); }

  /// Lookup by (stage, kind, component); throws if absent.
  int id_of(int stage, VarKind kind, int component) const;
  bool contains(int stage, VarKind kind, int component) const;

  /// Ids of all state components of a stage (empty if none).
  std::vector<int> state_ids(int stage) const;
  /// Ids of all local components of a stage.
  std::vector<int> local_ids(int stage) const;

  int max_stage() const { return max_stage_; }

 private:
  std::vector<VarDesc> vars_;
  std::map<std::tuple<int, int, int>, int> index_;
  int max_stage_ = 0;
};

using VarSpacePtr = std::shared_ptr<const VariableSpace>;

/// Sparse exponent vector. No zero exponents are stored; terms are kept
/// sorted by variable id.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<std::pair<int, int>> terms);

  static MultiIndex unit(int var, int exp = 1);

  int exponent(int var) const;
  int total_degree() const { return degree_; }
  bool empty() const { return terms_.empty(); }
  const std::vector<std::pair<int, int>>& terms() const { return terms_; }

  MultiIndex operator+(const MultiIndex& other) const;
  bool operator==(const MultiIndex& other) const { return terms_ == other.terms_; }

  std::string to_string(const VariableSpace& space) const;

 private:
  std::vector<std::pair<int, int>> terms_;  // (var id, exponent), id ascending
  int degree_ = 0;
};

/// Graded lexicographic order: lower total degree first; within a degree,
/// larger exponent on the smallest variable id first (x0^2 < x0 x1 < x1^2).
struct GrlexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// All multi-indices supported on `vars` with total degree <= k, in
/// graded-lex order. Length is C(|vars|+k, k).
std::vector<MultiIndex> monomials_up_to(std::span<const int> vars, int k);

/// C(n+k, k) as a checked 64-bit value.
long long binomial(int n, int k);

/// Sparse multivariate polynomial over a shared VariableSpace.
/// Immutable value semantics; zero coefficients are never stored.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(VarSpacePtr space) : space_(std::move(space)) {}
  Polynomial(VarSpacePtr space, std::map<MultiIndex, double, GrlexLess> terms);

  static Polynomial constant(VarSpacePtr space, double c);
  static Polynomial variable(VarSpacePtr space, int var);
  static Polynomial monomial(VarSpacePtr space, MultiIndex mi, double c);

  const VarSpacePtr& space() const { return space_; }
  const std::map<MultiIndex, double, GrlexLess>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  double coefficient(const MultiIndex& mi) const;
  double constant_term() const { return coefficient(MultiIndex{}); }

  Polynomial operator+(const Polynomial& q) const;
  Polynomial operator-(const Polynomial& q) const;
  Polynomial operator*(const Polynomial& q) const;
  Polynomial scale(double a) const;
  Polynomial operator-() const { return scale(-1.0); }

  /// Replace variables by polynomials; unbound variables pass through.
  Polynomial substitute(const std::unordered_map<int, Polynomial>& bindings) const;

  /// Evaluate at a full point; throws on an unbound variable.
  double evaluate(const std::unordered_map<int, double>& point) const;
  double evaluate(std::span<const double> point_by_id) const;

  Polynomial differentiate(int var) const;

  /// Drop coefficients with |c| <= tol (explicit request only; arithmetic
  /// keeps exact sparsity).
  Polynomial pruned(double tol = 1e-14) const;

  /// Variable ids appearing with a nonzero exponent.
  std::vector<int> support() const;

  std::string to_string() const;

 private:
  void add_term(const MultiIndex& mi, double c);

  VarSpacePtr space_;
  std::map<MultiIndex, double, GrlexLess> terms_;
};

/// prod_l fs[l]^{alpha_l}; `alpha` is indexed by position in `fs`.
Polynomial power_product(std::span<const Polynomial> fs, std::span<const int> alpha);

}  // namespace statelift
