#pragma once

#include <stdexcept>
#include <string>

namespace travnet {

// Error taxonomy shared by the library and the CLI. The CLI maps kinds to
// process exit codes (config -> 2, stage_order -> 3, everything else -> 4).
class Error : public std::runtime_error {
 public:
  enum class Kind {
    validation,   // a domain value is out of its declared range
    config,       // inconsistent or unusable configuration
    stage_order,  // a pipeline stage ran before its prerequisite
    contract,     // an API precondition (shape, dimension) was violated
    io,           // filesystem / parse failure
    runtime,      // anything else (divergence, internal failure)
  };

  Error(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

[[noreturn]] inline void fail_validation(const std::string& msg) {
  throw Error(Error::Kind::validation, msg);
}
[[noreturn]] inline void fail_config(const std::string& msg) {
  throw Error(Error::Kind::config, msg);
}
[[noreturn]] inline void fail_stage_order(const std::string& msg) {
  throw Error(Error::Kind::stage_order, msg);
}
[[noreturn]] inline void fail_contract(const std::string& msg) {
  throw Error(Error::Kind::contract, msg);
}
[[noreturn]] inline void fail_io(const std::string& msg) {
  throw Error(Error::Kind::io, msg);
}
[[noreturn]] inline void fail_runtime(const std::string& msg) {
  throw Error(Error::Kind::runtime, msg);
}

}  // namespace travnet
