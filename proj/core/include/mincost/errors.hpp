#pragma once

#include <stdexcept>
#include <string>

namespace mincost {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyDataset : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct DegenerateSimplex : Error { using Error::Error; };
struct NotRays : Error { using Error::Error; };
struct RaysNotObtuse : Error { using Error::Error; };
struct NoConvergence : Error {
  NoConvergence(const std::string& msg) : Error(msg) {}
};
struct AssumptionViolated : Error { using Error::Error; };
struct BallsOverlap : Error { using Error::Error; };
struct NotObtuse : Error { using Error::Error; };
struct NotAcute : Error { using Error::Error; };
struct A1Violated : Error { using Error::Error; };
struct A2Violated : Error { using Error::Error; };
struct EmptyBatch : Error { using Error::Error; };
struct DivergedLoss : Error { using Error::Error; };
struct IllConditioned : Error { using Error::Error; };
struct ModelShapeUnsupported : Error { using Error::Error; };
struct UnsupportedDensity : Error { using Error::Error; };
struct NoSignificantUnits : Error { using Error::Error; };
struct ConfigParse : Error { using Error::Error; };

}  // namespace mincost
