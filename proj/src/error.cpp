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

#include "fv/error.hpp"

namespace fv {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::kWidthMismatch: return "width-mismatch";
        case Errc::kBadWidth: return "bad-width";
        case Errc::kNotAPermutation: return "not-a-permutation";
        case Errc::kBadShiftAmount: return "bad-shift-amount";
        case Errc::kReductionDomain: return "reduction-domain";
        case Errc::kDivideByZero: return "divide-by-zero";
        case Errc::kIllegalKeyLength: return "illegal-key-length";
        case Errc::kUnknownAlgorithm: return "unknown-algorithm";
        case Errc::kBadNonce: return "bad-nonce";
        case Errc::kBadConfig: return "bad-config";
        case Errc::kBadState: return "bad-state";
        case Errc::kEmptyInput: return "empty-input";
        case Errc::kOutOfSpace: return "out-of-space";
        case Errc::kUnmappedAddress: return "unmapped-address";
        case Errc::kIoError: return "io-error";
        case Errc::kBoundViolation: return "bound-violation";
    }
    return "unknown";
}

}  // namespace fv
