#include "ffcount/errors.hpp"

namespace ffcount {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::InversionPresent: return "InversionPresent";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotOnFiber: return "NotOnFiber";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NoKernel: return "NoKernel";
    case ErrorCode::NotFinite: return "NotFinite";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::TruncationTooLow: return "TruncationTooLow";
    case ErrorCode::UnsupportedArity: return "UnsupportedArity";
    case ErrorCode::DominanceNotCertified: return "DominanceNotCertified";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InputError: return "InputError";
  }
  return "Unknown";
}

}  // namespace ffcount
