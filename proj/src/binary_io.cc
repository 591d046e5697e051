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

#include "tnd/binary_io.h"

namespace tnd {

const char *to_string(FormatErrc code) {
    switch (code) {
        case FormatErrc::io:
            return "i/o error";
        case FormatErrc::bad_magic:
            return "bad magic";
        case FormatErrc::bad_version:
            return "unsupported version";
        case FormatErrc::bad_header:
            return "bad header";
        case FormatErrc::truncated_payload:
            return "truncated payload";
        case FormatErrc::lattice_mismatch:
            return "lattice mismatch";
    }
    return "unknown";
}

namespace binary {

void read_magic(std::istream &in, const char (&magic)[5]) {
    char got[4] = {};
    in.read(got, 4);
    if (in.gcount() != 4 || std::memcmp(got, magic, 4) != 0) {
        throw FormatError(FormatErrc::bad_magic, std::string("expected \"") + magic + "\"");
    }
}

}  // namespace binary

}  // namespace tnd
