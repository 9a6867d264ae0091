#include "medianlab/median/table_io.hpp"

#include <charconv>
#include <sstream>

namespace medianlab {

namespace {

std::size_t packed_index(std::size_t i, std::size_t j, std::size_t k) {
  return k * (k + 1) * (k + 2) / 6 + j * (j + 1) / 2 + i;
}

void sort3(Vertex& a, Vertex& b, Vertex& c) {
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
}

}  // namespace

std::string serialize_operator_table(const TernaryOperator& op) {
  std::ostringstream out;
  out << "i,j,k,m\n";
  const auto n = static_cast<Vertex>(op.size());
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i; j < n; ++j)
      for (Vertex k = j; k < n; ++k) out << i << ',' << j << ',' << k << ',' << op(i, j, k) << '\n';
  return out.str();
}

TernaryOperator load_operator_table(SpacePtr space, std::string_view text, std::string label,
                                    const OperatorOptions& options) {
  const auto n = space->size();
  if (n > kMaxTableVertices) throw Error(ErrorCode::kSizeCapExceeded, "table operators need n <= 65535");
  constexpr std::uint16_t kMissing = 0xFFFF;
  auto packed = std::make_shared<std::vector<std::uint16_t>>(packed_index(0, 0, n), kMissing);

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (line == "i,j,k,m") continue;
    std::array<std::uint64_t, 4> f{};
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (std::size_t i = 0; i < 4; ++i) {
      auto [next, ec] = std::from_chars(p, end, f[i]);
      if (ec != std::errc{} || (i < 3 && (next == end || *next != ',')) || (i == 3 && next != end))
        throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": expected i,j,k,m");
      p = next + 1;
    }
    if (f[0] > f[1] || f[1] > f[2])
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": triples must satisfy i <= j <= k");
    if (f[2] >= n || f[3] >= n)
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": vertex out of range");
    auto& slot = (*packed)[packed_index(f[0], f[1], f[2])];
    if (slot != kMissing)
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": duplicate triple");
    slot = static_cast<std::uint16_t>(f[3]);
  }

  for (Vertex k = 0; k < n; ++k)
    for (Vertex j = 0; j <= k; ++j)
      for (Vertex i = 0; i <= j; ++i) {
        const auto v = (*packed)[packed_index(i, j, k)];
        if (v == kMissing)
          throw Error(ErrorCode::kParseError,
                      "table is missing triple (" + std::to_string(i) + "," + std::to_string(j) + "," +
                          std::to_string(k) + ")",
                      {i, j, k});
        const bool repeated_low = i == j;
        const bool repeated_high = j == k;
        if ((repeated_low && v != i) || (repeated_high && v != k))
          throw Error(ErrorCode::kM0Violated,
                      "m(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                          ") = " + std::to_string(v) + " breaks localisation",
                      {i, j, k});
      }

  auto opts = options;
  opts.symmetric = true;
  return TernaryOperator::from_rule(
      std::move(space), OperatorKind::kCustomTable, std::move(label),
      [packed](Vertex x, Vertex y, Vertex z) {
        sort3(x, y, z);
        return Vertex{(*packed)[packed_index(x, y, z)]};
      },
      opts);
}

}  // namespace medianlab
