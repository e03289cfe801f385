#pragma once

#include <stdexcept>
#include <string>

namespace tropwall {

// Base class for all domain errors raised by the library. The CLI maps
// these to exit code 2; anything else is a usage or internal error.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// nilring
struct NotUnipotent final : Error {
    explicit NotUnipotent(const std::string& what) : Error("NotUnipotent: " + what) {}
};

// toric
struct UnknownFan final : Error {
    explicit UnknownFan(const std::string& name) : Error("UnknownFan: " + name) {}
};

enum class FanErrorKind { NotPrimitive, NotComplete, NotSmooth, NotFano };

struct FanInvariantError final : Error {
    FanErrorKind kind;
    int ray_index;  // offending ray position in the input list
    FanInvariantError(FanErrorKind k, int ray, const std::string& what)
        : Error(what), kind(k), ray_index(ray) {}
};

struct GenericityExhausted final : Error {
    explicit GenericityExhausted(const std::string& what)
        : Error("GenericityExhausted: " + what) {}
};

// scatter
struct DegenerateScene final : Error {
    std::string witness;  // compact JSON naming the colliding objects
    explicit DegenerateScene(const std::string& w) : Error("DegenerateScene: " + w), witness(w) {}
};

struct TangentialCrossing final : Error {
    explicit TangentialCrossing(const std::string& what)
        : Error("TangentialCrossing: " + what) {}
};

struct NondecomposableDiscrepancy final : Error {
    explicit NondecomposableDiscrepancy(const std::string& what)
        : Error("NondecomposableDiscrepancy: " + what) {}
};

// potential
struct PointOnWall final : Error {
    explicit PointOnWall(const std::string& what) : Error("PointOnWall: " + what) {}
};

struct TraceThroughVertex final : Error {
    explicit TraceThroughVertex(const std::string& what)
        : Error("TraceThroughVertex: " + what) {}
};

struct PathThroughVertex final : Error {
    explicit PathThroughVertex(const std::string& what)
        : Error("PathThroughVertex: " + what) {}
};

// sceneio
struct SchemaMismatch final : Error {
    explicit SchemaMismatch(const std::string& what) : Error("SchemaMismatch: " + what) {}
};

struct MalformedRational final : Error {
    explicit MalformedRational(const std::string& text)
        : Error("MalformedRational: \"" + text + "\"") {}
};

struct MalformedDocument final : Error {
    int line, column;
    MalformedDocument(int l, int c, const std::string& what)
        : Error("MalformedDocument at " + std::to_string(l) + ":" + std::to_string(c) + ": " +
                what),
          line(l), column(c) {}
};

struct InternalError final : Error {
    explicit InternalError(const std::string& what) : Error("internal error: " + what) {}
};

}  // namespace tropwall
