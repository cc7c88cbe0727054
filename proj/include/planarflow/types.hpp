#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace planarflow {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using DartId = std::int32_t;
using FaceId = std::int32_t;
using Capacity = std::int64_t;

inline constexpr VertexId kNoVertex = -1;
inline constexpr DartId kNoDart = -1;

// Edge e owns darts 2e (tail -> head as declared) and 2e + 1 (reversed).
constexpr DartId twin(DartId d) noexcept { return d ^ 1; }
constexpr EdgeId edge_of(DartId d) noexcept { return d >> 1; }
constexpr DartId forward_dart(EdgeId e) noexcept { return 2 * e; }
constexpr DartId backward_dart(EdgeId e) noexcept { return 2 * e + 1; }

enum class ErrorCode {
  non_embedding,
  dangling_dart,
  self_loop,
  not_connected,
  invalid_params,
  parse_error,
  cyclic_support,
  cannot_satisfy_bounds,
  too_many_sinks,
  search_failed,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::non_embedding: return "NonEmbedding";
    case ErrorCode::dangling_dart: return "DanglingDart";
    case ErrorCode::self_loop: return "SelfLoop";
    case ErrorCode::not_connected: return "NotConnected";
    case ErrorCode::invalid_params: return "InvalidParams";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::cyclic_support: return "CyclicSupport";
    case ErrorCode::cannot_satisfy_bounds: return "CannotSatisfyBounds";
    case ErrorCode::too_many_sinks: return "TooManySinks";
    case ErrorCode::search_failed: return "SearchFailed";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace planarflow
