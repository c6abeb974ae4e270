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
#include "concierge/errors.hpp"

#include <fmt/format.h>

namespace concierge {

MalformedTerm::MalformedTerm(std::size_t position, const std::string& what)
    : Error(fmt::format("malformed term at {}: {}", position, what)), position_(position) {}

KbFormatError::KbFormatError(std::size_t line, const std::string& what)
    : Error(line == 0 ? "knowledgebase: " + what : fmt::format("knowledgebase record {}: {}", line, what)),
      line_(line),
      detail_(what) {}

IndexOutOfRange::IndexOutOfRange(std::size_t index, std::size_t size)
    : Error(fmt::format("history index {} outside 1..{}", index, size)) {}

CorpusFormatError::CorpusFormatError(std::size_t line, const std::string& what)
    : Error(line == 0 ? "corpus: " + what : fmt::format("corpus line {}: {}", line, what)) {}

}  // namespace concierge
