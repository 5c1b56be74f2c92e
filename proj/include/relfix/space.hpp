#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "relfix/core.hpp"

namespace relfix {

// --------------------------------------------------------------------------
// FiniteSpace: a finite metric space given by an explicit distance table or
// derived from an embedding in R^m under a named norm. Immutable after
// construction; validation is a separate, explicit step.
// --------------------------------------------------------------------------

class FiniteSpace {
 public:
  static FiniteSpace from_matrix(std::vector<std::vector<double>> matrix,
                                 std::vector<std::string> labels = {}) {
    const std::size_t n = matrix.size();
    if (n == 0) throw InvalidInput("metric table is empty");
    std::vector<double> flat;
    flat.reserve(n * n);
    for (const auto& row : matrix) {
      if (row.size() != n) throw InvalidInput("metric table is not square");
      for (double v : row) {
        if (!std::isfinite(v)) throw InvalidInput("metric entry is not finite");
        flat.push_back(v);
      }
    }
    FiniteSpace s;
    s.n_ = n;
    s.dist_ = std::move(flat);
    s.labels_ = check_labels(std::move(labels), n);
    return s;
  }

  static FiniteSpace from_coords(std::vector<Vec> coords, Norm norm,
                                 std::vector<std::string> labels = {}) {
    const std::size_t n = coords.size();
    if (n == 0) throw InvalidInput("coordinate list is empty");
    const std::size_t dim = coords[0].size();
    if (dim == 0) throw InvalidInput("coordinate dimension is zero");
    for (const auto& p : coords) {
      if (p.size() != dim) throw InvalidInput("coordinate dimensions differ");
      for (double v : p)
        if (!std::isfinite(v)) throw InvalidInput("coordinate is not finite");
    }
    FiniteSpace s;
    s.n_ = n;
    s.dist_.resize(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = vec_dist(coords[i], coords[j], norm);
        s.dist_[i * n + j] = d;
        s.dist_[j * n + i] = d;
      }
    s.coords_ = std::move(coords);
    s.norm_ = norm;
    s.labels_ = check_labels(std::move(labels), n);
    return s;
  }

  std::size_t size() const { return n_; }
  double d(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }
  const std::vector<double>& table() const { return dist_; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool has_coords() const { return !coords_.empty(); }
  const std::vector<Vec>& coords() const { return coords_; }
  Norm norm() const { return norm_; }

  double diameter() const {
    double m = 0.0;
    for (double v : dist_) m = std::max(m, v);
    return m;
  }

 private:
  static std::vector<std::string> check_labels(std::vector<std::string> labels,
                                               std::size_t n) {
    if (!labels.empty() && labels.size() != n)
      throw InvalidInput("label count does not match point count");
    return labels;
  }

  std::size_t n_ = 0;
  std::vector<double> dist_;     // n*n row-major
  std::vector<Vec> coords_;      // empty unless embedding-backed
  Norm norm_ = Norm::L2;
  std::vector<std::string> labels_;
};

// --------------------------------------------------------------------------
// Metric validation. Violations are reported with the witnessing indices;
// nothing is repaired.
// --------------------------------------------------------------------------

struct MetricViolation {
  enum class Kind { Diagonal, Symmetry, Positivity, Triangle };
  Kind kind;
  std::size_t i = 0, j = 0, k = 0;
  double lhs = 0.0, rhs = 0.0;
};

struct ValidationReport {
  std::vector<MetricViolation> violations;
  bool valid() const { return violations.empty(); }
};

inline ValidationReport validate_metric(const FiniteSpace& space) {
  ValidationReport report;
  const std::size_t n = space.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (space.d(i, i) != 0.0)
      report.violations.push_back({MetricViolation::Kind::Diagonal, i, i, 0,
                                   space.d(i, i), 0.0});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (space.d(i, j) != space.d(j, i))
        report.violations.push_back({MetricViolation::Kind::Symmetry, i, j, 0,
                                     space.d(i, j), space.d(j, i)});
      if (!(space.d(i, j) > 0.0))
        report.violations.push_back({MetricViolation::Kind::Positivity, i, j, 0,
                                     space.d(i, j), 0.0});
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const double via = space.d(i, j) + space.d(j, k);
        if (space.d(i, k) > via + kRelTol * via)
          report.violations.push_back(
              {MetricViolation::Kind::Triangle, i, j, k, space.d(i, k), via});
      }
  return report;
}

// --------------------------------------------------------------------------
// Relation: a binary relation as an explicit boolean table. Transitivity is
// the only axiom ever checked; reflexivity and antisymmetry are deliberately
// not required.
// --------------------------------------------------------------------------

enum class RelationKind {
  ExplicitEdges,
  TotalIndexOrder,
  StrictIndexOrder,
  Universal,
  ComponentwiseLe,
};

inline const char* relation_kind_name(RelationKind k) {
  switch (k) {
    case RelationKind::ExplicitEdges:
      return "edges";
    case RelationKind::TotalIndexOrder:
      return "total-index-order";
    case RelationKind::StrictIndexOrder:
      return "strict-index-order";
    case RelationKind::Universal:
      return "universal";
    case RelationKind::ComponentwiseLe:
      return "componentwise-le";
  }
  return "edges";
}

class Relation {
 public:
  static Relation edges(std::size_t n,
                        const std::vector<std::array<std::size_t, 2>>& pairs) {
    Relation r(n, RelationKind::ExplicitEdges);
    for (const auto& p : pairs) {
      if (p[0] >= n || p[1] >= n)
        throw InvalidInput("relation edge index out of range");
      r.table_[p[0] * n + p[1]] = 1;
    }
    return r;
  }

  static Relation total_index_order(std::size_t n) {
    Relation r(n, RelationKind::TotalIndexOrder);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) r.table_[i * n + j] = 1;
    return r;
  }

  static Relation strict_index_order(std::size_t n) {
    Relation r(n, RelationKind::StrictIndexOrder);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) r.table_[i * n + j] = 1;
    return r;
  }

  static Relation universal(std::size_t n) {
    Relation r(n, RelationKind::Universal);
    std::fill(r.table_.begin(), r.table_.end(), std::uint8_t{1});
    return r;
  }

  // x <= y componentwise on an embedding; transitive by construction.
  static Relation componentwise_le(const std::vector<Vec>& coords) {
    const std::size_t n = coords.size();
    Relation r(n, RelationKind::ComponentwiseLe);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        bool le = true;
        for (std::size_t c = 0; c < coords[i].size() && le; ++c)
          le = coords[i][c] <= coords[j][c];
        r.table_[i * n + j] = le ? 1 : 0;
      }
    return r;
  }

  std::size_t size() const { return n_; }
  RelationKind kind() const { return kind_; }
  bool holds(std::size_t i, std::size_t j) const { return table_[i * n_ + j] != 0; }

  void set(std::size_t i, std::size_t j, bool v) {
    table_[i * n_ + j] = v ? 1 : 0;
  }

  std::vector<std::array<std::size_t, 2>> edge_list() const {
    std::vector<std::array<std::size_t, 2>> out;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (holds(i, j)) out.push_back({i, j});
    return out;
  }

  std::size_t edge_count() const {
    std::size_t c = 0;
    for (auto v : table_) c += v;
    return c;
  }

  bool operator==(const Relation& other) const {
    return n_ == other.n_ && table_ == other.table_;
  }

 private:
  Relation(std::size_t n, RelationKind kind)
      : n_(n), kind_(kind), table_(n * n, 0) {
    if (n == 0) throw InvalidInput("relation over empty point set");
  }

  std::size_t n_;
  RelationKind kind_;
  std::vector<std::uint8_t> table_;
};

struct TransitivityReport {
  std::vector<std::array<std::size_t, 3>> violations;  // (i, j, k) with i~j, j~k, not i~k
  bool valid() const { return violations.empty(); }
};

inline TransitivityReport validate_relation(const Relation& relation) {
  TransitivityReport report;
  const std::size_t n = relation.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!relation.holds(i, j)) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (relation.holds(j, k) && !relation.holds(i, k))
          report.violations.push_back({i, j, k});
    }
  return report;
}

// Warshall closure. A named repair, never applied implicitly by validation.
inline Relation transitive_closure(const Relation& relation) {
  const std::size_t n = relation.size();
  Relation out = Relation::edges(n, relation.edge_list());
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (!out.holds(i, k)) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (out.holds(k, j)) out.set(i, j, true);
    }
  return out;
}

enum class ComparabilityResult { LeftLe, RightLe, Both, Incomparable };

inline const char* comparability_name(ComparabilityResult c) {
  switch (c) {
    case ComparabilityResult::LeftLe:
      return "left-le";
    case ComparabilityResult::RightLe:
      return "right-le";
    case ComparabilityResult::Both:
      return "both";
    case ComparabilityResult::Incomparable:
      return "incomparable";
  }
  return "incomparable";
}

inline ComparabilityResult comparable(const Relation& relation, std::size_t x,
                                      std::size_t y) {
  if (x >= relation.size() || y >= relation.size())
    throw InvalidInput("comparable: point index out of range");
  const bool lr = relation.holds(x, y);
  const bool rl = relation.holds(y, x);
  if (lr && rl) return ComparabilityResult::Both;
  if (lr) return ComparabilityResult::LeftLe;
  if (rl) return ComparabilityResult::RightLe;
  return ComparabilityResult::Incomparable;
}

inline bool is_comparable(const Relation& relation, std::size_t x, std::size_t y) {
  return comparable(relation, x, y) != ComparabilityResult::Incomparable;
}

// --------------------------------------------------------------------------
// Self-map as a lookup table; totality is the invariance f: X -> X.
// --------------------------------------------------------------------------

class SelfMapTable {
 public:
  explicit SelfMapTable(std::vector<std::size_t> image) : image_(std::move(image)) {
    if (image_.empty()) throw InvalidInput("self-map table is empty");
    for (std::size_t v : image_)
      if (v >= image_.size())
        throw InvalidInput("self-map image out of range");
  }

  std::size_t size() const { return image_.size(); }
  std::size_t operator()(std::size_t i) const { return image_[i]; }
  const std::vector<std::size_t>& image() const { return image_; }

 private:
  std::vector<std::size_t> image_;
};

// --------------------------------------------------------------------------
// FiniteInstance: the universal finite test substrate.
// --------------------------------------------------------------------------

struct FiniteInstance {
  FiniteSpace space;
  Relation relation;
  SelfMapTable map;
  std::size_t x0;
  double epsilon;
  double k;

  std::size_t size() const { return space.size(); }
  double d(std::size_t i, std::size_t j) const { return space.d(i, j); }
  std::size_t f(std::size_t i) const { return map(i); }

  // Shape and range invariants; metric/relation axioms are separate reports.
  void check_shape() const {
    const std::size_t n = space.size();
    if (relation.size() != n)
      throw InvalidInput("relation size does not match space");
    if (map.size() != n) throw InvalidInput("map size does not match space");
    if (x0 >= n) throw InvalidInput("x0 out of range");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
      throw InvalidInput("epsilon must be positive");
    if (!(k > 0.0) || !(k < 1.0)) throw InvalidInput("k must lie in (0,1)");
  }
};

}  // namespace relfix
