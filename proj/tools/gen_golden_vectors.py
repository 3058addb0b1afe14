#!/usr/bin/env python3
# Copyright 2026 The Crosshash Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates tests/data/golden_vectors.json from the Python stdlib.

The vectors pin the identifier derivation chain against an implementation
that shares no code with the C++ library: hashlib/hmac here, the from-scratch
reference in tools/ref/ for the `vectors` subcommand, libsodium in the
library itself. All three must agree.

Usage: python3 tools/gen_golden_vectors.py [output-path]
"""

import hashlib
import hmac
import json
import struct
import sys

MINUTES_PER_DAY = 1440


def derive_rpi(tek: bytes, day: int, interval: int, rotation_minutes: int) -> bytes:
    intervals_per_day = MINUTES_PER_DAY // rotation_minutes
    count = (day * intervals_per_day + interval) & 0xFFFFFFFF
    return hashlib.sha256(tek + struct.pack("<I", count)).digest()[:16]


def hkdf_sha256(length: int, ikm: bytes, salt: bytes, info: bytes) -> bytes:
    if not salt:
        salt = b"\x00" * 32
    prk = hmac.new(salt, ikm, hashlib.sha256).digest()
    okm = b""
    block = b""
    counter = 1
    while len(okm) < length:
        block = hmac.new(prk, block + info + bytes([counter]), hashlib.sha256).digest()
        okm += block
        counter += 1
    return okm[:length]


def cross_hash(older: bytes, newer: bytes) -> bytes:
    return hkdf_sha256(16, older + newer, b"", b"CCIv1")


# RFC 5869 appendix A test cases, which anchor the HKDF construction itself.
RFC5869_CASES = [
    {
        "name": "rfc5869-a1",
        "ikm": bytes.fromhex("0b" * 22),
        "salt": bytes.fromhex("000102030405060708090a0b0c"),
        "info": bytes.fromhex("f0f1f2f3f4f5f6f7f8f9"),
        "length": 42,
    },
    {
        "name": "rfc5869-a2",
        "ikm": bytes(range(0x00, 0x50)),
        "salt": bytes(range(0x60, 0xB0)),
        "info": bytes(range(0xB0, 0x100)),
        "length": 82,
    },
    {
        "name": "rfc5869-a3",
        "ikm": bytes.fromhex("0b" * 22),
        "salt": b"",
        "info": b"",
        "length": 42,
    },
]

RPI_CASES = [
    {"tek": b"\x00" * 16, "day": 0, "interval": 0, "rotation_minutes": 10},
    {"tek": b"\x00" * 16, "day": 0, "interval": 1, "rotation_minutes": 10},
    {"tek": b"\x00" * 16, "day": 1, "interval": 0, "rotation_minutes": 10},
    {"tek": b"\x00" * 16, "day": 0, "interval": 143, "rotation_minutes": 10},
    {"tek": bytes(range(16)), "day": 5, "interval": 77, "rotation_minutes": 10},
    {"tek": bytes(range(16)), "day": 5, "interval": 200, "rotation_minutes": 5},
    {"tek": b"\xff" * 16, "day": 123456, "interval": 89, "rotation_minutes": 10},
]

CCI_CASES = [
    {"older": b"\x01" * 16, "newer": b"\x02" * 16},
    {"older": b"\x02" * 16, "newer": b"\x01" * 16},
    {"older": b"\x00" * 16, "newer": b"\x00" * 16},
    {
        # The first two RPI vectors chained, binding the two tables together.
        "older": derive_rpi(b"\x00" * 16, 0, 0, 10),
        "newer": derive_rpi(b"\x00" * 16, 0, 1, 10),
    },
    {"older": bytes(range(16)), "newer": bytes(range(0xF0, 0x100))},
]


def main() -> None:
    out_path = sys.argv[1] if len(sys.argv) > 1 else "tests/data/golden_vectors.json"
    doc = {
        "hkdf": [
            {
                "name": case["name"],
                "ikm": case["ikm"].hex(),
                "salt": case["salt"].hex(),
                "info": case["info"].hex(),
                "length": case["length"],
                "okm": hkdf_sha256(
                    case["length"], case["ikm"], case["salt"], case["info"]
                ).hex(),
            }
            for case in RFC5869_CASES
        ],
        "rpi": [
            {
                "tek": case["tek"].hex(),
                "day": case["day"],
                "interval": case["interval"],
                "rotation_minutes": case["rotation_minutes"],
                "rpi": derive_rpi(
                    case["tek"], case["day"], case["interval"], case["rotation_minutes"]
                ).hex(),
            }
            for case in RPI_CASES
        ],
        "cci": [
            {
                "older": case["older"].hex(),
                "newer": case["newer"].hex(),
                "cci": cross_hash(case["older"], case["newer"]).hex(),
            }
            for case in CCI_CASES
        ],
    }
    with open(out_path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {out_path}", file=sys.stderr)


if __name__ == "__main__":
    main()
