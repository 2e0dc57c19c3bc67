/*
 * Copyright 2026 The flashvault-sim authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * @file error.hpp
 * @brief Error codes and the exception type shared by every module.
 */

#ifndef FV_ERROR_HPP_
#define FV_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace fv {

enum class Errc {
    kWidthMismatch,
    kBadWidth,
    kNotAPermutation,
    kBadShiftAmount,
    kReductionDomain,
    kDivideByZero,
    kIllegalKeyLength,
    kUnknownAlgorithm,
    kBadNonce,
    kBadConfig,
    kBadState,
    kEmptyInput,
    kOutOfSpace,
    kUnmappedAddress,
    kIoError,
    kBoundViolation,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace fv

#endif  // FV_ERROR_HPP_
