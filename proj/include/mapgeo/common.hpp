#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mapgeo {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Width of the euclidean band around ρμ = 2π (vertices) or f = π (edge points).
inline constexpr double kTolAngle = 1e-9;

enum class ErrorCode {
  // map_core
  EdgeCrossing,
  LowValency,
  MuOutOfRange,
  DuplicateEdge,
  DegenerateEdge,
  Disconnected,
  UnknownVertex,
  UnknownEdge,
  UnknownFace,
  OutOfRange,
  Disconnects,
  AllFacesRemoved,
  // mline
  StartOnEdge,
  ZeroDirection,
  EmptyList,
  ValueOutOfRange,
  // polygon
  DegenerateTriangle,
  NegativeArea,
  ChainInconsistent,
  CenterOnEdge,
  InvalidArgument,
  // bundles
  EmptyCut,
  NonlinearFunction,
  // enumeration
  TooLarge,
  // pseudo_plane
  OutOfDomain,
  NoConvergence,
  VerticalTangent,
  NonMonotoneRho,
  OriginUndefined,
  NonFinite,
  NotElliptic,
  EmptySequence,
  NotSingular,
  BadParameters,
  PreconditionFailed,
  // io / cli
  SyntaxError,
  EmptyViewport,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EdgeCrossing: return "EdgeCrossing";
    case ErrorCode::LowValency: return "LowValency";
    case ErrorCode::MuOutOfRange: return "MuOutOfRange";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::DegenerateEdge: return "DegenerateEdge";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::UnknownFace: return "UnknownFace";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::Disconnects: return "Disconnects";
    case ErrorCode::AllFacesRemoved: return "AllFacesRemoved";
    case ErrorCode::StartOnEdge: return "StartOnEdge";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::NegativeArea: return "NegativeArea";
    case ErrorCode::ChainInconsistent: return "ChainInconsistent";
    case ErrorCode::CenterOnEdge: return "CenterOnEdge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyCut: return "EmptyCut";
    case ErrorCode::NonlinearFunction: return "NonlinearFunction";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::VerticalTangent: return "VerticalTangent";
    case ErrorCode::NonMonotoneRho: return "NonMonotoneRho";
    case ErrorCode::OriginUndefined: return "OriginUndefined";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotElliptic: return "NotElliptic";
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::NotSingular: return "NotSingular";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::EmptyViewport: return "EmptyViewport";
  }
  return "Unknown";
}

/// Every domain failure in the library is reported through this type; the
/// code is stable and the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

/// Elliptic / euclidean / hyperbolic trichotomy shared by map points and
/// pseudo-plane points.
enum class PointClass { Elliptic, Euclidean, Hyperbolic };

inline std::string_view to_string(PointClass c) {
  switch (c) {
    case PointClass::Elliptic: return "elliptic";
    case PointClass::Euclidean: return "euclidean";
    case PointClass::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

/// Classifies `value` against `flat` with the euclidean band `tol`.
inline PointClass classify_against(double value, double flat,
                                   double tol = kTolAngle) {
  if (value < flat - tol) return PointClass::Elliptic;
  if (value > flat + tol) return PointClass::Hyperbolic;
  return PointClass::Euclidean;
}

/// +1 elliptic, 0 euclidean, -1 hyperbolic.
inline int sign_of(PointClass c) {
  switch (c) {
    case PointClass::Elliptic: return 1;
    case PointClass::Euclidean: return 0;
    case PointClass::Hyperbolic: return -1;
  }
  return 0;
}

}  // namespace mapgeo
