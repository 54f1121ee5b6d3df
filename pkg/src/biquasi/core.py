"""Exact finite algebra on the canonical carrier {0, ..., n-1}.

Cayley tables, brute-force group recognition, automorphism enumeration,
and affine-over-a-group biquasigroup specs realized as table pairs.
All checks are exhaustive; nothing is symbolic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

__all__ = [
    "CayleyTable",
    "FiniteGroup",
    "Permutation",
    "LinearSpec",
    "Biquasigroup",
    "TableFormatError",
    "make_table",
    "is_latin_square",
    "latin_violation",
    "group_structure",
    "center",
    "automorphisms",
    "is_automorphism",
    "negated",
    "realize",
    "parse_table_text",
    "parse_biquasigroup_text",
    "format_table",
    "format_biquasigroup",
]


class CayleyTable:
    """Immutable n x n operation table with entries in 0..n-1."""

    __slots__ = ("order", "rows")

    def __init__(self, rows) -> None:
        arr = np.array(rows, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"table must be square, got shape {arr.shape}")
        n = int(arr.shape[0])
        if n < 1:
            raise ValueError("table order must be at least 1")
        bad = np.argwhere((arr < 0) | (arr >= n))
        if bad.size:
            i, j = (int(v) for v in bad[0])
            raise ValueError(
                f"entry {int(arr[i, j])} at row {i}, column {j} is outside 0..{n - 1}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "order", n)
        object.__setattr__(self, "rows", arr)

    def __setattr__(self, name, value):
        raise AttributeError("CayleyTable is immutable")

    def __getitem__(self, xy) -> int:
        x, y = xy
        return int(self.rows[x, y])

    def diagonal(self) -> np.ndarray:
        return np.diagonal(self.rows)

    def flat(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.rows.ravel())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CayleyTable)
            and self.order == other.order
            and np.array_equal(self.rows, other.rows)
        )

    def __hash__(self) -> int:
        return hash((self.order, self.rows.tobytes()))

    def __repr__(self) -> str:
        return f"CayleyTable(order={self.order})"


def make_table(n: int, entries: Iterable[int]) -> CayleyTable:
    """Build a table from a row-major flat list of n*n entries."""
    if n < 1:
        raise ValueError("table order must be at least 1")
    values = [int(v) for v in entries]
    if len(values) != n * n:
        raise ValueError(f"expected {n * n} entries for order {n}, got {len(values)}")
    for idx, v in enumerate(values):
        if not 0 <= v < n:
            raise ValueError(f"entry {v} at index {idx} is outside 0..{n - 1}")
    return CayleyTable(np.array(values, dtype=np.int64).reshape(n, n))


def is_latin_square(t: CayleyTable) -> bool:
    """True iff every row and every column is a permutation of 0..n-1."""
    full = np.arange(t.order)
    return bool(
        np.all(np.sort(t.rows, axis=1) == full[None, :])
        and np.all(np.sort(t.rows, axis=0) == full[:, None])
    )


def latin_violation(t: CayleyTable) -> Optional[tuple[str, int]]:
    """First ('row'|'column', index) that is not a permutation, if any."""
    full = np.arange(t.order)
    for i in range(t.order):
        if not np.array_equal(np.sort(t.rows[i]), full):
            return ("row", i)
    for j in range(t.order):
        if not np.array_equal(np.sort(t.rows[:, j]), full):
            return ("column", j)
    return None


class FiniteGroup:
    """A Cayley table that passed the full group axioms.

    Construction brute-forces everything: Latin property, a two-sided
    identity, associativity over all triples, and inverses.  The
    ``commutative`` flag is the result of the symmetric-table check.
    """

    __slots__ = ("table", "identity", "inverse", "commutative")

    def __init__(self, table: CayleyTable) -> None:
        if not is_latin_square(table):
            raise ValueError("not a group: table is not a Latin square")
        rows = table.rows
        n = table.order
        full = np.arange(n)
        e = None
        for c in range(n):
            if np.array_equal(rows[c], full) and np.array_equal(rows[:, c], full):
                e = c
                break
        if e is None:
            raise ValueError("not a group: no two-sided identity element")
        # (x.y).z == x.(y.z) for all triples, as one vectorized comparison
        if not np.array_equal(rows[rows, :], rows[:, rows]):
            raise ValueError("not a group: operation is not associative")
        inverse = np.empty(n, dtype=np.int64)
        for x in range(n):
            inverse[x] = int(np.nonzero(rows[x] == e)[0][0])
        inverse.setflags(write=False)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "identity", e)
        object.__setattr__(self, "inverse", inverse)
        object.__setattr__(self, "commutative", bool(np.array_equal(rows, rows.T)))

    def __setattr__(self, name, value):
        raise AttributeError("FiniteGroup is immutable")

    @property
    def order(self) -> int:
        return self.table.order

    def add(self, x: int, y: int) -> int:
        return int(self.table.rows[x, y])

    def neg(self, x: int) -> int:
        return int(self.inverse[x])

    def sub(self, x: int, y: int) -> int:
        """x - y, defined as x + inverse(y)."""
        return int(self.table.rows[x, self.inverse[y]])

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, commutative={self.commutative})"


def group_structure(t: CayleyTable) -> Optional[FiniteGroup]:
    """The group view of a table, or None if the axioms fail."""
    try:
        return FiniteGroup(t)
    except ValueError:
        return None


def center(g: FiniteGroup) -> frozenset[int]:
    """Elements commuting with the whole carrier."""
    rows = g.table.rows
    return frozenset(
        int(c) for c in range(g.order) if np.array_equal(rows[c], rows[:, c])
    )


@dataclass(frozen=True)
class Permutation:
    """A bijection of 0..n-1, stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise ValueError(f"images {self.images} are not a bijection of 0..{n - 1}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @property
    def order(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))(x) = self(other(x))."""
        return Permutation(tuple(self.images[i] for i in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, v in enumerate(self.images):
            inv[v] = i
        return Permutation(tuple(inv))

    def as_array(self) -> np.ndarray:
        return np.array(self.images, dtype=np.int64)


def is_automorphism(p: Permutation, g: FiniteGroup) -> bool:
    """True iff p(x+y) = p(x)+p(y) for all x, y."""
    if p.order != g.order:
        return False
    arr = p.as_array()
    rows = g.table.rows
    return bool(np.array_equal(arr[rows], rows[np.ix_(arr, arr)]))


def negated(p: Permutation, g: FiniteGroup) -> Permutation:
    """The map x -> inverse(p(x)); written -p in additive notation."""
    return Permutation(tuple(int(g.inverse[v]) for v in p.images))


@lru_cache(maxsize=None)
def automorphisms(g: FiniteGroup) -> tuple[Permutation, ...]:
    """All automorphisms of g, lexicographically sorted by image tuple.

    Brute force over the n! permutations, pruned by the fact that an
    automorphism fixes the identity.  Capped at order 8; the catalog
    never goes beyond that.
    """
    n = g.order
    if n > 8:
        raise ValueError(f"automorphism enumeration is capped at order 8, got {n}")
    rows = g.table.rows
    e = g.identity
    found = []
    # itertools.permutations yields tuples in lexicographic order, so the
    # result is sorted and starts with the identity map.
    for images in itertools.permutations(range(n)):
        if images[e] != e:
            continue
        arr = np.array(images, dtype=np.int64)
        if np.array_equal(arr[rows], rows[np.ix_(arr, arr)]):
            found.append(Permutation(images))
    return tuple(found)


class Biquasigroup:
    """Two Latin tables on one carrier: operations circ and star."""

    __slots__ = ("circ", "star")

    def __init__(self, circ: CayleyTable, star: CayleyTable) -> None:
        if circ.order != star.order:
            raise ValueError(f"order mismatch: circ has {circ.order}, star has {star.order}")
        for name, t in (("circ", circ), ("star", star)):
            bad = latin_violation(t)
            if bad is not None:
                kind, idx = bad
                raise ValueError(
                    f"{name} table is not a Latin square: "
                    f"{kind} {idx} is not a permutation of 0..{t.order - 1}"
                )
        object.__setattr__(self, "circ", circ)
        object.__setattr__(self, "star", star)

    def __setattr__(self, name, value):
        raise AttributeError("Biquasigroup is immutable")

    @property
    def order(self) -> int:
        return self.circ.order

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Biquasigroup)
            and self.circ == other.circ
            and self.star == other.star
        )

    def __hash__(self) -> int:
        return hash((self.circ, self.star))

    def __repr__(self) -> str:
        return f"Biquasigroup(order={self.order})"


@dataclass(frozen=True)
class LinearSpec:
    """Parameters of a biquasigroup linear over a group.

    kind='middle' realizes  x circ y = phi(x) + a + psi(y),
                            x star y = alpha(x) + b + beta(y);
    kind='end' puts the constant last:
                            x circ y = phi(x) + psi(y) + a,
                            x star y = alpha(x) + beta(y) + b.

    All four permutations must be automorphisms of the group; this is
    checked pointwise at construction.
    """

    group: FiniteGroup
    phi: Permutation
    psi: Permutation
    a: int
    alpha: Permutation
    beta: Permutation
    b: int
    kind: str = "middle"

    def __post_init__(self):
        if self.kind not in ("middle", "end"):
            raise ValueError(f"kind must be 'middle' or 'end', got {self.kind!r}")
        n = self.group.order
        for c_name, c in (("a", self.a), ("b", self.b)):
            if not 0 <= c < n:
                raise ValueError(f"constant {c_name}={c} is outside 0..{n - 1}")
        rows = self.group.table.rows
        for name, p in (
            ("phi", self.phi),
            ("psi", self.psi),
            ("alpha", self.alpha),
            ("beta", self.beta),
        ):
            if p.order != n:
                raise ValueError(f"{name} acts on {p.order} elements, group has {n}")
            if not is_automorphism(p, self.group):
                x, y = _automorphism_violation(p, self.group)
                raise ValueError(
                    f"{name} is not an automorphism: {name}({x}+{y}) = "
                    f"{p(self.group.add(x, y))} but {name}({x})+{name}({y}) = "
                    f"{self.group.add(p(x), p(y))}"
                )


def _automorphism_violation(p: Permutation, g: FiniteGroup) -> tuple[int, int]:
    for x in range(g.order):
        for y in range(g.order):
            if p(g.add(x, y)) != g.add(p(x), p(y)):
                return x, y
    raise AssertionError("no violation found")


def realize(spec: LinearSpec) -> Biquasigroup:
    """Build the table pair a LinearSpec describes."""
    rows = spec.group.table.rows
    circ = _affine_table(rows, spec.phi.as_array(), spec.psi.as_array(), spec.a, spec.kind)
    star = _affine_table(rows, spec.alpha.as_array(), spec.beta.as_array(), spec.b, spec.kind)
    return Biquasigroup(CayleyTable(circ), CayleyTable(star))


def _affine_table(rows: np.ndarray, p: np.ndarray, q: np.ndarray, c: int, kind: str) -> np.ndarray:
    if kind == "middle":
        return rows[rows[p, c][:, None], q[None, :]]
    return rows[rows[np.ix_(p, q)], c]


# ---------------------------------------------------------------------------
# Magma text format
#
# Optional '#' comment lines; first non-comment line of a block is the
# order n, followed by n lines of n whitespace-separated integers.
# A biquasigroup file is two blocks separated by a blank line
# (first = circ, second = star).


class TableFormatError(ValueError):
    """Malformed magma text; carries the 1-based source line when known."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


def _scan_blocks(text: str) -> list[list[tuple[int, str]]]:
    blocks: list[list[tuple[int, str]]] = []
    current: list[tuple[int, str]] = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            if current:
                blocks.append(current)
                current = []
            continue
        current.append((no, line))
    if current:
        blocks.append(current)
    return blocks


def _parse_block(block: list[tuple[int, str]]) -> CayleyTable:
    (head_no, head), *rows = block
    try:
        n = int(head)
    except ValueError:
        raise TableFormatError(f"expected a table order, got {head!r}", head_no) from None
    if n < 1:
        raise TableFormatError(f"table order must be >= 1, got {n}", head_no)
    if len(rows) < n:
        last = block[-1][0]
        raise TableFormatError(f"expected {n} rows, found {len(rows)}", last)
    if len(rows) > n:
        raise TableFormatError(f"unexpected line after the {n} table rows", rows[n][0])
    entries = []
    for i, (no, line) in enumerate(rows):
        values = line.split()
        if len(values) != n:
            raise TableFormatError(f"row {i}: expected {n} values, got {len(values)}", no)
        for j, v in enumerate(values):
            try:
                x = int(v)
            except ValueError:
                raise TableFormatError(
                    f"row {i}, column {j}: {v!r} is not an integer", no
                ) from None
            if not 0 <= x < n:
                raise TableFormatError(
                    f"row {i}, column {j}: entry {x} is outside 0..{n - 1}", no
                )
            entries.append(x)
    return CayleyTable(np.array(entries, dtype=np.int64).reshape(n, n))


def parse_table_text(text: str) -> CayleyTable:
    """Parse a single-block magma file."""
    blocks = _scan_blocks(text)
    if not blocks:
        raise TableFormatError("empty input, expected one table block")
    if len(blocks) > 1:
        raise TableFormatError(
            f"expected one table block, found {len(blocks)}", blocks[1][0][0]
        )
    return _parse_block(blocks[0])


def parse_biquasigroup_text(text: str) -> Biquasigroup:
    """Parse a two-block biquasigroup file (circ block, blank line, star block)."""
    blocks = _scan_blocks(text)
    if len(blocks) != 2:
        line = blocks[2][0][0] if len(blocks) > 2 else None
        raise TableFormatError(
            f"expected two table blocks separated by a blank line, found {len(blocks)}",
            line,
        )
    circ = _parse_block(blocks[0])
    star = _parse_block(blocks[1])
    if circ.order != star.order:
        raise TableFormatError(
            f"order mismatch between blocks: {circ.order} vs {star.order}"
        )
    for name, t in (("first block (circ)", circ), ("second block (star)", star)):
        bad = latin_violation(t)
        if bad is not None:
            kind, idx = bad
            raise TableFormatError(
                f"{name}: {kind} {idx} is not a permutation of 0..{t.order - 1}"
            )
    return Biquasigroup(circ, star)


def format_table(t: CayleyTable, comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(str(t.order))
    lines.extend(" ".join(str(int(v)) for v in row) for row in t.rows)
    return "\n".join(lines) + "\n"


def format_biquasigroup(biq: Biquasigroup, comment: Optional[str] = None) -> str:
    return format_table(biq.circ, comment) + "\n" + format_table(biq.star)
