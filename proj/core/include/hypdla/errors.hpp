#pragma once

#include <stdexcept>
#include <string>

namespace hypdla {

struct EmptyAggregate : std::runtime_error {
    EmptyAggregate() : std::runtime_error("aggregate has no particles") {}
};

struct DegenerateBoundary : std::runtime_error {
    DegenerateBoundary() : std::runtime_error("exposed boundary length underflows") {}
};

struct StartInsideAggregate : std::runtime_error {
    StartInsideAggregate() : std::runtime_error("probe start lies inside an aggregate disk") {}
};

struct StartBelowFloor : std::runtime_error {
    StartBelowFloor() : std::runtime_error("probe start lies below the floor shell") {}
};

struct NoAcceptanceWithinBudget : std::runtime_error {
    explicit NoAcceptanceWithinBudget(long long trials)
        : std::runtime_error("no escape accepted within " + std::to_string(trials) + " trials") {}
};

struct SpacingFailure : std::runtime_error {
    SpacingFailure() : std::runtime_error("spiral spacing subdivision exceeded its budget") {}
};

struct InsufficientData : std::runtime_error {
    explicit InsufficientData(const std::string& what) : std::runtime_error(what) {}
};

struct MalformedRecord : std::runtime_error {
    long line;
    MalformedRecord(long line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

struct InvariantViolation : std::runtime_error {
    long index;
    InvariantViolation(long particle_index, const std::string& what)
        : std::runtime_error("particle " + std::to_string(particle_index) + ": " + what),
          index(particle_index) {}
};

}  // namespace hypdla
