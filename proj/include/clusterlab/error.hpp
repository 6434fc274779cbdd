#pragma once

#include <stdexcept>
#include <string>

namespace clusterlab {

enum class Errc {
  UnsupportedTower,
  FieldMismatch,
  NotQuasiWeight,
  NotQuasiInteger,
  NotSignSkewSymmetric,
  CycleInconsistent,
  IncoherentColumn,
  IncoherentNode,
  IncoherentPattern,
  IncoherentInput,
  UndefinedTau,
  WordLeavesJ,
  HypothesisFails,
  UnknownType,
  DimensionTooLarge,
  ParseError,
  Internal,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::UnsupportedTower: return "UnsupportedTower";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::NotQuasiWeight: return "NotQuasiWeight";
    case Errc::NotQuasiInteger: return "NotQuasiInteger";
    case Errc::NotSignSkewSymmetric: return "NotSignSkewSymmetric";
    case Errc::CycleInconsistent: return "CycleInconsistent";
    case Errc::IncoherentColumn: return "IncoherentColumn";
    case Errc::IncoherentNode: return "IncoherentNode";
    case Errc::IncoherentPattern: return "IncoherentPattern";
    case Errc::IncoherentInput: return "IncoherentInput";
    case Errc::UndefinedTau: return "UndefinedTau";
    case Errc::WordLeavesJ: return "WordLeavesJ";
    case Errc::HypothesisFails: return "HypothesisFails";
    case Errc::UnknownType: return "UnknownType";
    case Errc::DimensionTooLarge: return "DimensionTooLarge";
    case Errc::ParseError: return "ParseError";
    case Errc::Internal: return "Internal";
  }
  return "?";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace clusterlab
