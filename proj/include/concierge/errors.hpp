// Copyright 2026 The Concierge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace concierge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedTerm : public Error {
 public:
  MalformedTerm(std::size_t position, const std::string& what);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class KbFormatError : public Error {
 public:
  KbFormatError(std::size_t line, const std::string& what);
  // 1-based line (CSV) or record number (JSON); 0 when the whole file is at
  // fault.
  std::size_t line() const { return line_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

class UnknownAttribute : public Error {
 public:
  explicit UnknownAttribute(const std::string& name)
      : Error("unknown attribute: " + name), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class EmptyIntersection : public Error {
 public:
  EmptyIntersection(std::string attribute, std::string concepts)
      : Error("preferences " + concepts + " share no " + attribute),
        attribute_(std::move(attribute)),
        concepts_(std::move(concepts)) {}
  const std::string& attribute() const { return attribute_; }
  const std::string& concepts() const { return concepts_; }

 private:
  std::string attribute_;
  std::string concepts_;
};

class NoPriorRecommendation : public Error {
 public:
  NoPriorRecommendation() : Error("no recommendation has been made yet") {}
};

class EmptyHistory : public Error {
 public:
  EmptyHistory() : Error("recommendation history is empty") {}
};

class IndexOutOfRange : public Error {
 public:
  IndexOutOfRange(std::size_t index, std::size_t size);
};

class BackendUnavailable : public Error {
 public:
  using Error::Error;
};

class UnknownSession : public Error {
 public:
  explicit UnknownSession(const std::string& id)
      : Error("unknown session: " + id) {}
};

class ServiceNotReady : public Error {
 public:
  using Error::Error;
};

class MessageRejected : public Error {
 public:
  using Error::Error;
};

class CorpusFormatError : public Error {
 public:
  CorpusFormatError(std::size_t line, const std::string& what);
};

}  // namespace concierge
