#include "stsrank/error.hpp"

namespace stsrank {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Resource: return "resource";
    case ErrorKind::UnknownConstant: return "unknown-constant";
    case ErrorKind::Containment: return "containment";
    case ErrorKind::Structure: return "structure";
    case ErrorKind::TheoremViolation: return "theorem-violation";
    case ErrorKind::Consistency: return "consistency";
    }
    return "unknown";
}

} // namespace stsrank
