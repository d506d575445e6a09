"""Polycyclic presentations and collection.

Generators are ``g_0 .. g_{n-1}``. ``conj_up[(i, j)]`` is the word for
``g_i^-1 g_j g_i`` and ``conj_down[(i, j)]`` the word for ``g_i g_j g_i^-1``
(both for ``i < j``, in generators above ``i``). ``powers[i]`` is the word for
``g_i^{r_i}`` when ``r_i`` is finite. Missing conjugation relations mean the
generators commute; a missing power relation means ``g_i^{r_i} = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import InconsistentPresentation
from ..words import Letter, Word, format_word, invert, parse_word

STEP_BUDGET = 10**6


@dataclass(frozen=True, eq=False)
class PcPresentation:
    n: int
    rel_orders: Tuple[Optional[int], ...]
    conj_up: Dict[Tuple[int, int], Word] = field(default_factory=dict)
    conj_down: Dict[Tuple[int, int], Word] = field(default_factory=dict)
    powers: Dict[int, Word] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "rel_orders", tuple(self.rel_orders))
        if len(self.rel_orders) != self.n:
            raise ValueError("need one relative order per generator")
        for r in self.rel_orders:
            if r is not None and r < 2:
                raise ValueError(f"finite relative orders must be >= 2, got {r}")
        for table in (self.conj_up, self.conj_down):
            for (i, j), w in table.items():
                if not 0 <= i < j < self.n:
                    raise ValueError(f"conjugation relation ({i}, {j}) needs 0 <= i < j < n")
                self._check_above(i, w)
        for i, w in self.powers.items():
            if self.rel_orders[i] is None:
                raise ValueError(f"power relation given for infinite generator {i}")
            self._check_above(i, w)
        for i, r in enumerate(self.rel_orders):
            if r is None:
                missing = [j for (k, j) in self.conj_up if k == i and (i, j) not in self.conj_down]
                if missing:
                    raise ValueError(f"infinite generator {i} needs conj_down relations for {missing}")

    def _check_above(self, i: int, w: Word) -> None:
        for g, _ in w:
            if not i < g < self.n:
                raise ValueError(f"relation word for generator {i} uses g_{g}; only g_{i + 1}.. allowed")

    @property
    def finite_indices(self) -> List[int]:
        return [i for i, r in enumerate(self.rel_orders) if r is not None]

    def identity(self) -> "PcElement":
        return PcElement((0,) * self.n, self)

    def generator(self, i: int) -> "PcElement":
        return self.element([int(j == i) for j in range(self.n)])

    def element(self, exponents: Sequence[int]) -> "PcElement":
        """Element ``g_0^{e_0} ... g_{n-1}^{e_{n-1}}``, collected."""
        return collect(self, element_word(exponents))

    # --- text format -------------------------------------------------------
    def to_text(self) -> str:
        lines = [str(self.n)]
        lines += [f"order {'inf' if r is None else r}" for r in self.rel_orders]
        for (i, j), w in sorted(self.conj_up.items()):
            lines.append(f"conj {i} {j} -> {format_word(w)}".rstrip())
        for (i, j), w in sorted(self.conj_down.items()):
            lines.append(f"conj- {i} {j} -> {format_word(w)}".rstrip())
        for i, w in sorted(self.powers.items()):
            lines.append(f"pow {i} -> {format_word(w)}".rstrip())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "PcPresentation":
        rows = [
            (no, line.split("#", 1)[0].strip()) for no, line in enumerate(text.splitlines(), 1)
        ]
        rows = [(no, line) for no, line in rows if line]
        if not rows or not rows[0][1].isdigit():
            raise ValueError("presentation must start with the generator count")
        n = int(rows[0][1])
        orders: List[Optional[int]] = []
        up: Dict[Tuple[int, int], Word] = {}
        down: Dict[Tuple[int, int], Word] = {}
        powers: Dict[int, Word] = {}
        for no, line in rows[1:]:
            head, arrow, rhs = line.partition("->")
            parts = head.split()
            try:
                if parts[0] == "order" and len(parts) == 2 and not rhs:
                    orders.append(None if parts[1] == "inf" else int(parts[1]))
                elif parts[0] in ("conj", "conj-") and len(parts) == 3 and arrow:
                    table = up if parts[0] == "conj" else down
                    table[(int(parts[1]), int(parts[2]))] = parse_word(rhs)
                elif parts[0] == "pow" and len(parts) == 2 and arrow:
                    powers[int(parts[1])] = parse_word(rhs)
                else:
                    raise ValueError(line)
            except (ValueError, IndexError) as exc:
                raise ValueError(f"line {no}: cannot parse {line!r}") from exc
        return cls(n, tuple(orders), up, down, powers)


@dataclass(frozen=True)
class PcElement:
    exponents: Tuple[int, ...]
    pres: Optional[PcPresentation] = field(default=None, compare=False, repr=False)

    def __mul__(self, other: "PcElement") -> "PcElement":
        return pc_mul(self.pres, self, other)

    def __pow__(self, k: int) -> "PcElement":
        return pc_pow(self.pres, self, k)

    def inv(self) -> "PcElement":
        return pc_inv(self.pres, self)

    def is_identity(self) -> bool:
        return not any(self.exponents)

    def word(self) -> Word:
        return element_word(self.exponents)


def element_word(exponents: Sequence[int]) -> Word:
    out: List[Letter] = []
    for i, e in enumerate(exponents):
        out.extend([(i, 1 if e > 0 else -1)] * abs(e))
    return tuple(out)


def _conj_word(pres: PcPresentation, k: int, j: int, sign: int) -> Word:
    """Word for ``g_j`` conjugated by ``g_k^sign`` (``g_k^-sign g_j g_k^sign``)."""
    table = pres.conj_up if sign > 0 else pres.conj_down
    return table.get((k, j), ((j, 1),))


def collect_from(
    pres: PcPresentation, start: Sequence[int], w: Sequence[Letter], budget: int = STEP_BUDGET
) -> Tuple[int, ...]:
    """Multiply the collected element ``start`` by the word ``w`` and collect.

    Collection from the left: each incoming letter ``g_k^s`` is moved past the
    already-collected tail ``g_{k+1}^{e_{k+1}} ...`` by conjugating that tail.
    """
    exps = list(start)
    todo: List[Letter] = list(reversed(w))
    orders = pres.rel_orders
    steps = 0
    while todo:
        steps += 1
        if steps > budget:
            raise InconsistentPresentation(f"collection exceeded {budget} steps")
        k, s = todo.pop()
        r = orders[k]
        if s < 0 and r is not None:
            todo.extend(reversed(((k, 1),) * (r - 1) + invert(pres.powers.get(k, ()))))
            continue
        tail = [(j, exps[j]) for j in range(k + 1, pres.n) if exps[j]]
        for j, _ in tail:
            exps[j] = 0
        exps[k] += s
        pending: List[Letter] = []
        if r is not None and exps[k] == r:
            exps[k] = 0
            pending.extend(pres.powers.get(k, ()))
        for j, e in tail:
            cw = _conj_word(pres, k, j, s)
            pending.extend((cw if e > 0 else invert(cw)) * abs(e))
        todo.extend(reversed(pending))
    return tuple(exps)


def collect(pres: PcPresentation, w: Sequence[Letter], budget: int = STEP_BUDGET) -> PcElement:
    for g, _ in w:
        if not 0 <= g < pres.n:
            raise ValueError(f"generator {g} out of range for a presentation on {pres.n} generators")
    return PcElement(collect_from(pres, (0,) * pres.n, w, budget), pres)


def pc_mul(pres: PcPresentation, x: PcElement, y: PcElement) -> PcElement:
    return PcElement(collect_from(pres, x.exponents, element_word(y.exponents)), pres)


def pc_inv(pres: PcPresentation, x: PcElement) -> PcElement:
    return collect(pres, invert(element_word(x.exponents)))


def pc_pow(pres: PcPresentation, x: PcElement, k: int) -> PcElement:
    if k < 0:
        x, k = pc_inv(pres, x), -k
    result = pres.identity()
    while k:
        if k & 1:
            result = pc_mul(pres, result, x)
        k >>= 1
        if k:
            x = pc_mul(pres, x, x)
    return result


def hirsch_length(pres: PcPresentation) -> int:
    return sum(1 for r in pres.rel_orders if r is None)


# --- shipped presentations -----------------------------------------------------


def symmetric3() -> PcPresentation:
    """S_3 on (a, b): a^2 = 1, b^3 = 1, b^a = b^2."""
    bb = ((1, 1), (1, 1))
    return PcPresentation(2, (2, 3), conj_up={(0, 1): bb}, conj_down={(0, 1): bb})


def dihedral8() -> PcPresentation:
    """D_4 of order 8 on (s, r, r^2): s^2 = 1, r^2 = c, c^2 = 1, r^s = r c."""
    return PcPresentation(
        3,
        (2, 2, 2),
        conj_up={(0, 1): ((1, 1), (2, 1))},
        conj_down={(0, 1): ((1, 1), (2, 1))},
        powers={1: ((2, 1),)},
    )


def free_abelian(k: int) -> PcPresentation:
    return PcPresentation(k, (None,) * k)


def z2_by_z(matrix: Sequence[Sequence[int]] = ((2, 1), (1, 1))) -> PcPresentation:
    """Z^2 ⋊_M Z on (t, e1, e2) with ``t^-1 e t = M^-1 e`` and ``t e t^-1 = M e``."""
    (a, b), (c, d) = matrix
    det = a * d - b * c
    if det not in (1, -1):
        raise ValueError("matrix must have determinant ±1")
    inv = ((d * det, -b * det), (-c * det, a * det))

    def vec_word(x: int, y: int) -> Word:
        return element_word((0, x, y))

    # column j of M is the image of e_j
    up = {(0, 1): vec_word(inv[0][0], inv[1][0]), (0, 2): vec_word(inv[0][1], inv[1][1])}
    down = {(0, 1): vec_word(a, c), (0, 2): vec_word(b, d)}
    return PcPresentation(3, (None, None, None), conj_up=up, conj_down=down)
