#include "medianlab/common.hpp"

#include <atomic>
#include <charconv>

#include "medianlab/parallel.hpp"

namespace medianlab {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kSizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::kDisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::kInvalidEdge: return "InvalidEdge";
    case ErrorCode::kNotATree: return "NotATree";
    case ErrorCode::kNotMedianGraph: return "NotMedianGraph";
    case ErrorCode::kArityMismatch: return "ArityMismatch";
    case ErrorCode::kM0Violated: return "M0Violated";
    case ErrorCode::kEmptySubset: return "EmptySubset";
    case ErrorCode::kNoChain: return "NoChain";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kNoBarycentre: return "NoBarycentre";
    case ErrorCode::kSpaceMismatch: return "SpaceMismatch";
    case ErrorCode::kWindowOverflow: return "WindowOverflow";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kVerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) { return 2 + static_cast<int>(code); }

std::string Ratio::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Ratio Ratio::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
      throw Error(ErrorCode::kParseError, "bad rational: " + std::string(text));
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Ratio(parse_int(text));
  const auto den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::kParseError, "zero denominator: " + std::string(text));
  return Ratio(parse_int(text.substr(0, slash)), den);
}

std::string HalfInteger::str() const {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

namespace {
std::atomic<unsigned> g_threads{1};
}

void set_thread_count(unsigned k) { g_threads = std::max(1U, k); }
unsigned thread_count() { return g_threads; }

}  // namespace medianlab
