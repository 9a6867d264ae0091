#include "medianlab/median/operator.hpp"

#include <list>
#include <mutex>
#include <unordered_map>

#include "medianlab/parallel.hpp"

namespace medianlab {

std::string_view kind_name(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::kExactMedian: return "exact-median";
    case OperatorKind::kProduct: return "product";
    case OperatorKind::kTriangleCenter: return "triangle-center";
    case OperatorKind::kSheared: return "sheared";
    case OperatorKind::kCustomTable: return "custom-table";
  }
  return "unknown";
}

struct TernaryOperator::Memo {
  using Key = std::uint64_t;
  std::size_t capacity = 0;
  std::mutex mutex;
  std::list<std::pair<Key, Vertex>> order;
  std::unordered_map<Key, std::list<std::pair<Key, Vertex>>::iterator> index;

  bool find(Key key, Vertex& out) {
    std::lock_guard lock(mutex);
    auto it = index.find(key);
    if (it == index.end()) return false;
    order.splice(order.begin(), order, it->second);
    out = it->second->second;
    return true;
  }

  void store(Key key, Vertex value) {
    std::lock_guard lock(mutex);
    if (index.count(key)) return;
    order.emplace_front(key, value);
    index.emplace(key, order.begin());
    if (order.size() > capacity) {
      index.erase(order.back().first);
      order.pop_back();
    }
  }
};

namespace {

void fill_table(std::size_t n, const TernaryRule& rule, bool symmetric, std::vector<std::uint16_t>& table) {
  table.assign(n * n * n, 0);
  map_chunks<char>(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t x = begin; x < end; ++x) {
      for (std::size_t y = symmetric ? x : 0; y < n; ++y) {
        for (std::size_t z = symmetric ? y : 0; z < n; ++z) {
          const auto v = static_cast<std::uint16_t>(
              rule(static_cast<Vertex>(x), static_cast<Vertex>(y), static_cast<Vertex>(z)));
          if (!symmetric) {
            table[(x * n + y) * n + z] = v;
            continue;
          }
          // A cell belongs to exactly one sorted triple, so chunks never collide.
          table[(x * n + y) * n + z] = v;
          table[(x * n + z) * n + y] = v;
          table[(y * n + x) * n + z] = v;
          table[(y * n + z) * n + x] = v;
          table[(z * n + x) * n + y] = v;
          table[(z * n + y) * n + x] = v;
        }
      }
    }
    return char{};
  });
}

}  // namespace

TernaryOperator TernaryOperator::from_rule(SpacePtr space, OperatorKind kind, std::string label, TernaryRule rule,
                                           const OperatorOptions& options) {
  auto state = std::make_shared<State>();
  const auto n = space->size();
  state->space = std::move(space);
  state->kind = kind;
  state->label = std::move(label);
  state->symmetric = options.symmetric;
  if (n <= options.table_cap && n <= kMaxTableVertices) {
    fill_table(n, rule, options.symmetric, state->table);
  } else {
    state->rule = std::move(rule);
    if (options.memo_capacity > 0) {
      state->memo = std::make_shared<Memo>();
      state->memo->capacity = options.memo_capacity;
    }
  }
  TernaryOperator op;
  op.state_ = std::move(state);
  return op;
}

Vertex TernaryOperator::operator()(Vertex x, Vertex y, Vertex z) const {
  const auto& s = *state_;
  const auto n = s.space->size();
  if (!s.table.empty()) return s.table[(static_cast<std::size_t>(x) * n + y) * n + z];
  if (!s.memo) return s.rule(x, y, z);
  const std::uint64_t key = (static_cast<std::uint64_t>(x) * n + y) * n + z;
  Vertex v = 0;
  if (s.memo->find(key, v)) return v;
  v = s.rule(x, y, z);
  s.memo->store(key, v);
  return v;
}

DenseTable TernaryOperator::materialize(std::size_t cap) const {
  const auto n = size();
  DenseTable out;
  out.n = n;
  if (dense()) {
    out.values = state_->table;
    return out;
  }
  if (n > cap || n > kMaxTableVertices)
    throw Error(ErrorCode::kSizeCapExceeded,
                "operator on " + std::to_string(n) + " vertices exceeds the table cap " + std::to_string(cap));
  fill_table(n, state_->rule, state_->symmetric, out.values);
  return out;
}

}  // namespace medianlab
