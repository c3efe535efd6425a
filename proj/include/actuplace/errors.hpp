#pragma once

#include <stdexcept>
#include <string>

namespace actuplace {

enum class Err {
    MalformedInput,
    NotStronglyConnected,
    DimensionMismatch,
    NotGraphical,
    ConnectivityUnreachable,
    DisconnectedGrid,
    NonpositiveDamping,
    HorizonNonpositive,
    EpsNonpositive,
    SingularGramian,
    NodeAlreadyInSet,
    CardinalityExceeded,
    NotActuatable,
    TooManyExclusions,
    InfeasibleAtSize,
    KBelowMinimum,
    GroundSetTooLarge,
    NotIncreasing,
    DomainError,
    OrderingViolated,
    EnumerationTooLarge,
    Infeasible,
    NoFeasibleSample,
    SingularGramianEncountered,
    NonpositiveParameter,
    DeltaOutOfRange,
    DimensionConstraintViolated,
    UnknownCommand,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
public:
    Error(Err kind, const std::string& msg)
        : std::runtime_error(std::string(err_name(kind)) + ": " + msg), kind_(kind) {}

    Err kind() const { return kind_; }

private:
    Err kind_;
};

}  // namespace actuplace
