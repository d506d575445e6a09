"""Private-key homomorphic encryption through a ring retraction.

Plaintexts live in ``R = Z_N``. Ciphertexts live in ``S = Z_N[t]/(t^d)``,
which contains ``R`` as the constants. The private ideal is ``I = (t)`` and
decryption is the retraction ``ρ: S -> R`` that evaluates at ``t = 0``.
Encryption adds a random element of ``I``, so sums and products of
ciphertexts decrypt to sums and products of plaintexts.

NOT SECURE. With the standard basis the constant coefficient of a
ciphertext is the plaintext. The optional private basis mix only hides that
from someone who reads the coordinates naively; it is a demonstration of the
public ring description, not a security mechanism.
"""

from __future__ import annotations

import csv
import hashlib
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import List, Optional, Sequence, Tuple

from .errors import OverflowRisk
from .serialize import int_to_str, str_to_int

SECURITY_NOTICE = "NOT SECURE: toy retract scheme for demonstrating the algebra only"
DEFAULT_DEGREE = 4

Vec = Tuple[int, ...]
Mat = Tuple[Tuple[int, ...], ...]


def _identity(d: int) -> Mat:
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))


def _mat_vec(a: Mat, v: Sequence[int], n: int) -> Vec:
    return tuple(sum(a[i][j] * v[j] for j in range(len(v))) % n for i in range(len(a)))


def _mat_mul(a: Mat, b: Mat, n: int) -> Mat:
    d = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(d)) % n for j in range(d)) for i in range(d))


def _unit_lower_inverse(a: Mat, n: int) -> Mat:
    """Inverse of a unit lower-triangular matrix by forward substitution; no division needed."""
    d = len(a)
    inv = [[0] * d for _ in range(d)]
    for j in range(d):
        inv[j][j] = 1
        for i in range(j + 1, d):
            inv[i][j] = -sum(a[i][k] * inv[k][j] for k in range(j, i)) % n
    return tuple(map(tuple, inv))


def _transpose(a: Mat) -> Mat:
    return tuple(zip(*a))


def truncated_mul(x: Sequence[int], y: Sequence[int], n: int) -> Vec:
    """Product in ``Z_n[t]/(t^d)`` in the standard basis ``1, t, ..., t^(d-1)``."""
    d = len(x)
    out = [0] * d
    for i, xi in enumerate(x):
        if xi:
            for j in range(d - i):
                out[i + j] += xi * y[j]
    return tuple(c % n for c in out)


def random_mix(rng: random.Random, n: int, d: int) -> Mat:
    """``L U`` with random unit-triangular factors: invertible modulo any ``n``."""
    lower = [[0] * d for _ in range(d)]
    upper = [[0] * d for _ in range(d)]
    for i in range(d):
        lower[i][i] = upper[i][i] = 1
        for j in range(i):
            lower[i][j] = rng.randrange(n)
            upper[j][i] = rng.randrange(n)
    return _mat_mul(tuple(map(tuple, lower)), tuple(map(tuple, upper)), n)


def _mix_inverse(p: Mat, n: int) -> Mat:
    # recover the LU factors (Doolittle; pivots are all 1) and invert each
    d = len(p)
    lower = [[int(i == j) for j in range(d)] for i in range(d)]
    upper = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            upper[i][j] = (p[i][j] - sum(lower[i][k] * upper[k][j] for k in range(i))) % n
        if upper[i][i] != 1:
            raise ValueError("basis mix must factor as unit lower times unit upper triangular")
        for j in range(i + 1, d):
            lower[j][i] = (p[j][i] - sum(lower[j][k] * upper[k][i] for k in range(i))) % n
    l_inv = _unit_lower_inverse(tuple(map(tuple, lower)), n)
    u_inv = _transpose(_unit_lower_inverse(_transpose(tuple(map(tuple, upper))), n))
    return _mat_mul(u_inv, l_inv, n)


def mix_digest(p: Mat) -> str:
    return hashlib.sha256(json.dumps([list(r) for r in p]).encode()).hexdigest()


@dataclass(frozen=True)
class Ciphertext:
    coeffs: Vec


@dataclass(frozen=True)
class PublicRing:
    """The public description of ``S``: modulus and multiplication table of its basis."""

    modulus: int
    degree: int
    table: Tuple[Tuple[Vec, ...], ...]
    digest: str

    def add(self, x: Ciphertext, y: Ciphertext) -> Ciphertext:
        return Ciphertext(tuple((a + b) % self.modulus for a, b in zip(x.coeffs, y.coeffs)))

    def mul(self, x: Ciphertext, y: Ciphertext) -> Ciphertext:
        n, d = self.modulus, self.degree
        out = [0] * d
        for i, xi in enumerate(x.coeffs):
            if not xi:
                continue
            for j, yj in enumerate(y.coeffs):
                if yj:
                    row = self.table[i][j]
                    c = xi * yj
                    for k in range(d):
                        out[k] += c * row[k]
        return Ciphertext(tuple(v % n for v in out))

    def header(self) -> dict:
        return {"N": int_to_str(self.modulus), "d": self.degree, "mix_digest": self.digest}

    def to_json(self) -> dict:
        d = self.header()
        d["table"] = [[[int_to_str(v) for v in cell] for cell in row] for row in self.table]
        d["notice"] = SECURITY_NOTICE
        return d

    @classmethod
    def from_json(cls, d: dict) -> "PublicRing":
        table = tuple(tuple(tuple(str_to_int(v) for v in cell) for cell in row) for row in d["table"])
        return cls(str_to_int(d["N"]), int(d["d"]), table, d["mix_digest"])


class RetractScheme:
    """Key holder: knows the basis mix, hence ``I`` and ``ρ``."""

    def __init__(self, modulus: int, degree: int = DEFAULT_DEGREE, mix: Optional[Mat] = None):
        if modulus < 2:
            raise ValueError("modulus must be at least 2")
        if degree < 1:
            raise ValueError("degree must be at least 1")
        self.modulus = modulus
        self.degree = degree
        self.mix = tuple(tuple(v % modulus for v in r) for r in mix) if mix is not None else _identity(degree)
        if len(self.mix) != degree or any(len(r) != degree for r in self.mix):
            raise ValueError(f"basis mix must be {degree}x{degree}")
        self.mix_inv = _mix_inverse(self.mix, modulus)
        self.public = self._public_ring()

    @classmethod
    def keygen(cls, rng: random.Random, modulus: int, degree: int = DEFAULT_DEGREE, mix: bool = True):
        return cls(modulus, degree, random_mix(rng, modulus, degree) if mix else None)

    def _public_ring(self) -> PublicRing:
        n, d = self.modulus, self.degree
        cols = [tuple(self.mix[r][c] for r in range(d)) for c in range(d)]
        table = tuple(
            tuple(_mat_vec(self.mix_inv, truncated_mul(cols[i], cols[j], n), n) for j in range(d)) for i in range(d)
        )
        return PublicRing(n, d, table, mix_digest(self.mix))

    # ring maps
    def to_standard(self, c: Ciphertext) -> Vec:
        return _mat_vec(self.mix, c.coeffs, self.modulus)

    def from_standard(self, v: Sequence[int]) -> Ciphertext:
        return Ciphertext(_mat_vec(self.mix_inv, v, self.modulus))

    def embed(self, u: int) -> Ciphertext:
        return self.from_standard((u % self.modulus,) + (0,) * (self.degree - 1))

    def retract(self, c: Ciphertext) -> int:
        """``ρ``: evaluate at ``t = 0``."""
        return self.to_standard(c)[0]

    def iso(self, r: int) -> int:
        """``φ: R' -> R``; the identity, since ``R`` is a retract of ``S``."""
        return r

    def noise(self, rng: random.Random) -> Ciphertext:
        """Random element of the private ideal ``(t)``."""
        return self.from_standard((0,) + tuple(rng.randrange(self.modulus) for _ in range(self.degree - 1)))

    def to_json(self) -> dict:
        return {
            "scheme": "retract Z_N[t]/(t^d)",
            "notice": SECURITY_NOTICE,
            "N": int_to_str(self.modulus),
            "d": self.degree,
            "mix": [[int_to_str(v) for v in r] for r in self.mix],
            "mix_digest": self.public.digest,
        }

    @classmethod
    def from_json(cls, d: dict) -> "RetractScheme":
        mix = tuple(tuple(str_to_int(v) for v in r) for r in d["mix"])
        scheme = cls(str_to_int(d["N"]), int(d["d"]), mix)
        if "mix_digest" in d and d["mix_digest"] != scheme.public.digest:
            raise ValueError("key file digest does not match its basis mix")
        return scheme


def encrypt(scheme: RetractScheme, u: int, rng: random.Random, zero_noise: bool = False) -> Ciphertext:
    c = scheme.embed(u)
    if zero_noise:
        return c
    return scheme.public.add(c, scheme.noise(rng))


def decrypt(scheme: RetractScheme, c: Ciphertext) -> int:
    return scheme.iso(scheme.retract(c))


def _ring(x) -> PublicRing:
    return x.public if isinstance(x, RetractScheme) else x


def ct_add(ring, c1: Ciphertext, c2: Ciphertext) -> Ciphertext:
    return _ring(ring).add(c1, c2)


def ct_mul(ring, c1: Ciphertext, c2: Ciphertext) -> Ciphertext:
    return _ring(ring).mul(c1, c2)


def ct_sum(ring, cts: Sequence[Ciphertext]) -> Ciphertext:
    ring = _ring(ring)
    acc = Ciphertext((0,) * ring.degree)
    for c in cts:
        acc = ring.add(acc, c)
    return acc


# --- database encoding -------------------------------------------------------


def centered(r: int, modulus: int) -> int:
    r %= modulus
    return r - modulus if r > modulus // 2 else r


def check_headroom(modulus: int, bound: int, growth: int = 1) -> None:
    """Values up to ``growth * bound`` in absolute value must survive the centered lift."""
    if modulus <= 2 * bound * growth:
        raise OverflowRisk(f"modulus {modulus} cannot hold results up to {growth * bound} in absolute value")


def encode_db(values: Sequence[int], modulus: int, bound: Optional[int] = None, growth: int = 1) -> List[int]:
    values = [int(v) for v in values]
    if bound is None:
        bound = max((abs(v) for v in values), default=0) + 1
    for v in values:
        if abs(v) >= bound:
            raise ValueError(f"value {v} exceeds the bound {bound}")
    check_headroom(modulus, bound, growth)
    return [v % modulus for v in values]


def decode_db(residues: Sequence[int], modulus: int) -> List[int]:
    return [centered(r, modulus) for r in residues]


def encrypted_mean(scheme: RetractScheme, cts: Sequence[Ciphertext], bound: int) -> Fraction:
    """Sum homomorphically, decrypt once, divide in the clear."""
    if not cts:
        raise ValueError("mean of an empty column")
    check_headroom(scheme.modulus, bound, len(cts))
    total = centered(decrypt(scheme, ct_sum(scheme.public, cts)), scheme.modulus)
    return Fraction(total, len(cts))


def column_mean_pipeline(scheme: RetractScheme, values: Sequence[int], rng: random.Random) -> Fraction:
    """``D -> R -> S -> R -> D`` for the mean of an integer column."""
    bound = max((abs(v) for v in values), default=0) + 1
    residues = encode_db(values, scheme.modulus, bound, growth=len(values))
    cts = [encrypt(scheme, r, rng) for r in residues]
    return encrypted_mean(scheme, cts, bound)


BUNDLED_DATASETS = {
    "blood_pressure": "systolic",
    "winter_temperatures": "low_c",
    "clinic_visits": "visits",
}


def bundled_dataset(name: str):
    """Path-like handle to one of the CSV files shipped with the package."""
    if name not in BUNDLED_DATASETS:
        raise ValueError(f"unknown dataset {name!r}; choose from {sorted(BUNDLED_DATASETS)}")
    return resources.files("groupcrypt") / "data" / f"{name}.csv"


def read_csv_column(path, column) -> List[int]:
    """Integer column by header name or 0-based index; bad cells report row and column."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    if isinstance(column, int) or (isinstance(column, str) and column.isdigit() and column not in header):
        idx = int(column)
        if not 0 <= idx < len(header):
            raise ValueError(f"{path}: no column {idx}")
    else:
        if column not in header:
            raise ValueError(f"{path}: no column named {column!r}")
        idx = header.index(column)
    out = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        cell = row[idx].strip() if idx < len(row) else ""
        try:
            out.append(int(cell))
        except ValueError:
            raise ValueError(f"{path}: row {lineno}, column {header[idx]!r}: {cell!r} is not an integer") from None
    return out


def ciphertexts_to_json(ring: PublicRing, cts: Sequence[Ciphertext], bound: Optional[int] = None) -> dict:
    """``bound`` (exclusive, on plaintext absolute values) lets a later mean check its headroom."""
    header = ring.header()
    if bound is not None:
        header["bound"] = int_to_str(bound)
    return {
        "header": header,
        "notice": SECURITY_NOTICE,
        "ciphertexts": [[int_to_str(v) for v in c.coeffs] for c in cts],
    }


def ciphertexts_from_json(d: dict) -> Tuple[dict, List[Ciphertext]]:
    header = d["header"]
    deg = int(header["d"])
    cts = []
    for c in d["ciphertexts"]:
        if len(c) != deg:
            raise ValueError(f"ciphertext has {len(c)} coefficients, header says {deg}")
        cts.append(Ciphertext(tuple(str_to_int(v) for v in c)))
    return header, cts
