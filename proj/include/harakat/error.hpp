// Copyright 2026 The Harakat Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HARAKAT_ERROR_HPP
#define HARAKAT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace harakat {

// Root of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Errors that point at a position inside a single string.
class PositionedError : public Error {
 public:
  PositionedError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownSymbol : public PositionedError {
 public:
  explicit UnknownSymbol(std::size_t position)
      : PositionedError("unknown Buckwalter symbol", position) {}
};

class UnknownCodepoint : public PositionedError {
 public:
  explicit UnknownCodepoint(std::size_t position)
      : PositionedError("codepoint outside the Buckwalter table", position) {}
};

class OrphanMark : public PositionedError {
 public:
  explicit OrphanMark(std::size_t position)
      : PositionedError("diacritic without a host letter", position) {}
};

class DoubleVowel : public PositionedError {
 public:
  explicit DoubleVowel(std::size_t position)
      : PositionedError("second vowel mark on one letter", position) {}
};

// shadda+sukun, or a repeated shadda.
class InvalidMarkCombination : public PositionedError {
 public:
  explicit InvalidMarkCombination(std::size_t position)
      : PositionedError("invalid diacritic combination", position) {}
};

class IoError : public Error {
 public:
  using Error::Error;
};

class EncodingError : public Error {
 public:
  explicit EncodingError(std::size_t line)
      : Error("invalid UTF-8 on line " + std::to_string(line)), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class MalformedToken : public Error {
 public:
  MalformedToken(std::size_t line, std::size_t column, const std::string& detail)
      : Error("malformed token on line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + detail),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class EmptyCorpus : public Error {
 public:
  EmptyCorpus() : Error("corpus is empty") {}
};

class EmptyDataset : public Error {
 public:
  explicit EmptyDataset(const std::string& which)
      : Error(which + " dataset is empty") {}
};

class AnnotationMismatch : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class AlignmentError : public Error {
 public:
  AlignmentError(std::size_t sentence, std::size_t token, const std::string& detail)
      : Error("alignment error in sentence " + std::to_string(sentence) +
              ", token " + std::to_string(token) + ": " + detail),
        sentence_(sentence),
        token_(token) {}
  std::size_t sentence() const noexcept { return sentence_; }
  std::size_t token() const noexcept { return token_; }

 private:
  std::size_t sentence_;
  std::size_t token_;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class ModelVersionMismatch : public Error {
 public:
  using Error::Error;
};

class TokenTooLong : public Error {
 public:
  using Error::Error;
};

}  // namespace harakat

#endif  // HARAKAT_ERROR_HPP
