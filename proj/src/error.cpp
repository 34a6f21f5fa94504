#include "linml/error.hpp"

namespace linml {

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedLine: return "MalformedLine";
    case ErrorKind::NonAscendingIndex: return "NonAscendingIndex";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::LabelArityMismatch: return "LabelArityMismatch";
    case ErrorKind::InvalidRange: return "InvalidRange";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::Empty: return "Empty";
    case ErrorKind::KTooLarge: return "KTooLarge";
    case ErrorKind::EmptyNeighbors: return "EmptyNeighbors";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::NonFiniteLoss: return "NonFiniteLoss";
    case ErrorKind::EmptyGrid: return "EmptyGrid";
    case ErrorKind::DatasetNotFound: return "DatasetNotFound";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
  }
  return "Error";
}

ErrorCategory category(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidRange:
    case ErrorKind::KTooLarge:
    case ErrorKind::EmptyGrid:
    case ErrorKind::ConfigInvalid:
      return ErrorCategory::Config;
    case ErrorKind::SingularSystem:
    case ErrorKind::NonFiniteLoss:
      return ErrorCategory::Numeric;
    default:
      return ErrorCategory::Data;
  }
}

}  // namespace linml
