#include "softpack/common.hpp"

namespace softpack {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidBody: return "InvalidBody";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DegeneratePosition: return "DegeneratePosition";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::BodyNotThreefold: return "BodyNotThreefold";
    case ErrorKind::ZeroAreaCell: return "ZeroAreaCell";
    case ErrorKind::NotAPacking: return "NotAPacking";
    case ErrorKind::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorKind::NumericalDegeneracy: return "NumericalDegeneracy";
    case ErrorKind::CoincidentCenters: return "CoincidentCenters";
    case ErrorKind::DegenerateDeformation: return "DegenerateDeformation";
    case ErrorKind::DegenerateQuadruple: return "DegenerateQuadruple";
    case ErrorKind::UniquenessViolation: return "UniquenessViolation";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind) {}

}  // namespace softpack
