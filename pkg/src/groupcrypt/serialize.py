"""JSON helpers: big integers travel as decimal strings, digests as lowercase hex."""

from __future__ import annotations

import json
from typing import Any

from gmpy2 import mpz

from .polycyclic.platforms import HeisenbergLikeElement, MetabelianPlatform, UnitriangularMatrix


def int_to_str(x: int) -> str:
    # gmpy2 has no digit limit, unlike str(int) on recent CPython
    return mpz(x).digits(10)


def str_to_int(s: str) -> int:
    if not isinstance(s, str):
        raise ValueError(f"expected a decimal string, got {type(s).__name__}")
    return int(mpz(s.strip(), 10))


def heis_to_json(x: HeisenbergLikeElement) -> dict:
    return {"vec": [int_to_str(x.vec[0]), int_to_str(x.vec[1])], "shift": int_to_str(x.shift)}


def heis_from_json(platform: MetabelianPlatform, d: dict) -> HeisenbergLikeElement:
    return platform.element((str_to_int(d["vec"][0]), str_to_int(d["vec"][1])), str_to_int(d["shift"]))


def platform_to_json(platform: MetabelianPlatform) -> dict:
    return {"matrix": [[int_to_str(v) for v in row] for row in platform.matrix]}


def platform_from_json(d: dict) -> MetabelianPlatform:
    return MetabelianPlatform(tuple(tuple(str_to_int(v) for v in row) for row in d["matrix"]))


def unitri_to_json(u: UnitriangularMatrix) -> dict:
    return {"p": int_to_str(u.p), "rows": [[int_to_str(v) for v in row] for row in u.rows]}


def unitri_from_json(d: dict) -> UnitriangularMatrix:
    return UnitriangularMatrix(tuple(tuple(str_to_int(v) for v in row) for row in d["rows"]), str_to_int(d["p"]))


def dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
