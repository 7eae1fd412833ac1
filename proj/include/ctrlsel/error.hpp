#pragma once

#include <stdexcept>
#include <string>

namespace ctrlsel {

enum class Errc {
  InvalidSystem,
  InfeasibleSystem,
  ZeroMaxCost,
  NonIntegralSolution,
  CertificateFailure,
  GroupingViolation,
  TooLarge,
  GenerationExhausted,
  Unbounded,
  Parse,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace ctrlsel
