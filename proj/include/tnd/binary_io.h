// Copyright 2026 The toric-rbm Authors
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

#ifndef TND_BINARY_IO_H
#define TND_BINARY_IO_H

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tnd {

enum class FormatErrc {
    io,
    bad_magic,
    bad_version,
    bad_header,
    truncated_payload,
    lattice_mismatch,
};

const char *to_string(FormatErrc code);

/// Raised by every file reader and writer in the project.
class FormatError : public std::runtime_error {
  public:
    FormatError(FormatErrc code, const std::string &detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    FormatErrc code() const { return code_; }

  private:
    FormatErrc code_;
};

namespace binary {

static_assert(std::endian::native == std::endian::little, "file formats assume a little-endian host");

template <typename T>
void write(std::ostream &out, T value) {
    out.write(reinterpret_cast<const char *>(&value), sizeof(T));
}

/// Reads one value; a short read throws `on_short`.
template <typename T>
T read(std::istream &in, FormatErrc on_short) {
    T value{};
    in.read(reinterpret_cast<char *>(&value), sizeof(T));
    if (in.gcount() != std::streamsize(sizeof(T))) {
        throw FormatError(on_short, "unexpected end of file");
    }
    return value;
}

void read_magic(std::istream &in, const char (&magic)[5]);

}  // namespace binary

}  // namespace tnd

#endif
