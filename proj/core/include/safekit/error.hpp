//
// Project safekit - Copyright 2026 The safekit Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef SAFEKIT_ERROR_HPP_
#define SAFEKIT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace safekit {

enum class ErrorKind {
  kSyntax,
  kUnclosedRing,
  kValence,
  kUnknownElement,
  kUnsupportedPrimitive,
  kFragmentationFailure,
  kNoAttachmentPoints,
  kBadAttachmentCount,
  kOutOfVocabularyPrompt,
  kEmptyCorpus,
  kTokenize,
  kModelFormat,
  kIo,
};

std::string_view error_kind_name(ErrorKind kind);

// Every fallible operation in the library throws this type; callers that
// need to branch on the failure inspect kind().
class Error: public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) { }

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace safekit

#endif  // SAFEKIT_ERROR_HPP_
