#ifndef REDIST_ERRORS_HPP
#define REDIST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace redist {

// Base class for all domain-level failures. CLI maps these to exit code 1.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string &msg) : std::runtime_error(msg) {}
};

struct ParseError : DomainError {
    explicit ParseError(const std::string &msg) : DomainError("parse error: " + msg) {}
};

struct InvalidEdgeError : DomainError {
    explicit InvalidEdgeError(const std::string &msg) : DomainError("invalid edge: " + msg) {}
};

struct NotConnectedError : DomainError {
    explicit NotConnectedError(const std::string &msg = "graph is not connected")
        : DomainError(msg) {}
};

struct NotBiconnectedError : DomainError {
    explicit NotBiconnectedError(const std::string &msg = "graph is not biconnected")
        : DomainError(msg) {}
};

struct BiconnectedError : DomainError {
    explicit BiconnectedError(const std::string &msg = "graph is biconnected, M is undefined")
        : DomainError(msg) {}
};

struct KOutOfRangeError : DomainError {
    explicit KOutOfRangeError(const std::string &msg = "k out of range") : DomainError(msg) {}
};

enum class SwitchErrorReason { NotAPath, SameDistrict, SourceNotShared, DisconnectsSource };

struct InvalidSwitchError : DomainError {
    SwitchErrorReason reason;
    InvalidSwitchError(SwitchErrorReason r, const std::string &msg)
        : DomainError("invalid switch: " + msg), reason(r) {}
};

struct IncontractibleDistrictError : DomainError {
    explicit IncontractibleDistrictError(const std::string &msg = "district is incontractible")
        : DomainError(msg) {}
};

struct InvalidTargetError : DomainError {
    explicit InvalidTargetError(const std::string &msg) : DomainError("invalid target: " + msg) {}
};

struct TooLargeError : DomainError {
    explicit TooLargeError(const std::string &msg) : DomainError("instance too large: " + msg) {}
};

struct UnknownSignatureError : DomainError {
    explicit UnknownSignatureError(const std::string &msg = "signature not present in switch graph")
        : DomainError(msg) {}
};

struct BadParamsError : DomainError {
    explicit BadParamsError(const std::string &msg) : DomainError("bad parameters: " + msg) {}
};

struct BadFormulaError : DomainError {
    explicit BadFormulaError(const std::string &msg) : DomainError("bad formula: " + msg) {}
};

struct NotSatisfyingError : DomainError {
    explicit NotSatisfyingError(const std::string &msg = "assignment does not satisfy the formula")
        : DomainError(msg) {}
};

struct WrongKindError : DomainError {
    explicit WrongKindError(const std::string &msg) : DomainError("wrong instance kind: " + msg) {}
};

struct MismatchedKError : DomainError {
    explicit MismatchedKError(const std::string &msg = "district maps have different k")
        : DomainError(msg) {}
};

struct NotPseudoCanonicalError : DomainError {
    explicit NotPseudoCanonicalError(const std::string &msg = "map is not pseudo-canonical")
        : DomainError(msg) {}
};

struct IncontractibleInputError : DomainError {
    explicit IncontractibleInputError(const std::string &msg = "input map is not contractible")
        : DomainError(msg) {}
};

struct PreconditionViolatedError : DomainError {
    explicit PreconditionViolatedError(const std::string &msg)
        : DomainError("precondition violated: " + msg) {}
};

struct InvalidPlanError : DomainError {
    explicit InvalidPlanError(const std::string &msg) : DomainError("invalid plan: " + msg) {}
};

} // namespace redist

#endif
