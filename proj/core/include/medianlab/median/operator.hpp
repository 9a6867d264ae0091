#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "medianlab/metric/graph_space.hpp"

namespace medianlab {

enum class OperatorKind { kExactMedian, kProduct, kTriangleCenter, kSheared, kCustomTable };

std::string_view kind_name(OperatorKind kind);

using TernaryRule = std::function<Vertex(Vertex, Vertex, Vertex)>;

struct OperatorOptions {
  /// Rules are materialized into a dense n^3 table up to this many vertices.
  std::size_t table_cap = 128;
  /// Above the table cap, results are cached in an LRU memo of this many
  /// triples. Zero disables the memo (for rules cheaper than a lookup).
  std::size_t memo_capacity = 0;
  /// The rule is invariant under permutations of its arguments.
  bool symmetric = false;
};

/// Fully materialized operator values, x-major.
struct DenseTable {
  std::size_t n = 0;
  std::vector<std::uint16_t> values;

  Vertex operator()(Vertex x, Vertex y, Vertex z) const {
    return values[(static_cast<std::size_t>(x) * n + y) * n + z];
  }
};

/// A total map V^3 -> V on a GraphSpace. Cheap to copy; copies share state.
/// Evaluation is safe from any number of threads.
class TernaryOperator {
 public:
  TernaryOperator() = default;

  static TernaryOperator from_rule(SpacePtr space, OperatorKind kind, std::string label, TernaryRule rule,
                                   const OperatorOptions& options = {});

  Vertex operator()(Vertex x, Vertex y, Vertex z) const;

  const GraphSpace& space() const { return *state_->space; }
  const SpacePtr& space_ptr() const { return state_->space; }
  std::size_t size() const { return state_->space->size(); }
  OperatorKind kind() const { return state_->kind; }
  const std::string& label() const { return state_->label; }
  bool dense() const { return !state_->table.empty(); }
  bool symmetric() const { return state_->symmetric; }
  explicit operator bool() const { return static_cast<bool>(state_); }

  /// Dense table of every value. Reuses the stored table when there is one;
  /// otherwise evaluates all triples, throwing SizeCapExceeded above `cap`.
  DenseTable materialize(std::size_t cap) const;

 private:
  struct Memo;
  struct State {
    SpacePtr space;
    OperatorKind kind = OperatorKind::kCustomTable;
    std::string label;
    TernaryRule rule;
    std::vector<std::uint16_t> table;
    bool symmetric = false;
    std::shared_ptr<Memo> memo;
  };
  std::shared_ptr<const State> state_;
};

/// Largest vertex count a dense table (uint16 entries) can index.
inline constexpr std::size_t kMaxTableVertices = 65535;

}  // namespace medianlab
