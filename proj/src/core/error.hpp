#pragma once

#include <stdexcept>
#include <string>

namespace synccensus {

enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kDomain,
  kBudget,
  kSizeLimit,
  kIo,
  kSelfCheck,
  kInternal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace synccensus
