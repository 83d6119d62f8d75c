"""Finite label lattices.

A lattice is loaded from a small line-oriented config::

    -- the irrelevance lattice
    elements: bot, C, top
    order: bot <= C, C <= top
    c: C

The order is given by generating pairs; the tables hold its
reflexive-transitive closure. Joins and meets are found by exhaustive bound
search and every lattice law is verified at load time. ``bot`` and ``top``
are reserved aliases for the computed extremes when they are not themselves
element names.
"""

import hashlib
import itertools
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

from gradia.exceptions import LatticeError


def _order_key(elements: Sequence[str], table: Sequence[Sequence[bool]]) -> int:
    """Identify an ordered set, so equal orders share grades."""
    text = ",".join(elements) + "|" + "".join("1" if b else "0" for row in table for b in row)
    return int.from_bytes(hashlib.blake2b(text.encode(), digest_size=6).digest(), "big")


@dataclass(frozen=True, slots=True)
class Grade:
    """An element of one particular lattice."""

    id: int
    display_name: str = field(compare=False)
    owner: int = 0

    def __str__(self) -> str:
        return self.display_name


class Lattice:
    """A finite lattice with a designated compile-time grade C."""

    def __init__(
        self,
        elements: Sequence[str],
        leq_table: Sequence[Sequence[bool]],
        c_name: Optional[str] = None,
        name: str = "lattice",
    ):
        """Build a lattice from an already-closed order table.

        Prefer :meth:`from_pairs` or :func:`load_lattice`; this constructor
        still verifies every law.
        """
        self.name = name
        self.elements = list(elements)
        self.size = len(self.elements)
        self._leq = [list(row) for row in leq_table]
        self._owner = _order_key(self.elements, self._leq)
        self.grades = [Grade(i, n, self._owner) for i, n in enumerate(self.elements)]
        self._check_partial_order()
        self._join = [[self._bound(i, j, upper=True) for j in range(self.size)] for i in range(self.size)]
        self._meet = [[self._bound(i, j, upper=False) for j in range(self.size)] for i in range(self.size)]
        self.bot = self.grades[self._extreme(upper=False)]
        self.top = self.grades[self._extreme(upper=True)]
        self._check_laws()
        self.c = self.grade(c_name) if c_name is not None else self.top
        logging.debug(f"Loaded lattice {name} with {self.size} elements, C={self.c}")

    # Construction

    @classmethod
    def from_pairs(
        cls,
        elements: Sequence[str],
        pairs: Iterable[tuple[str, str]],
        c_name: Optional[str] = None,
        name: str = "lattice",
    ) -> "Lattice":
        """Close generating ``a <= b`` pairs reflexively and transitively."""
        if not elements:
            raise LatticeError("a lattice needs at least one element", "MissingBound")
        if len(set(elements)) != len(elements):
            raise LatticeError("duplicate element names", "Syntax")
        index = {n: i for i, n in enumerate(elements)}
        size = len(elements)
        table = [[i == j for j in range(size)] for i in range(size)]
        for lo, hi in pairs:
            for n in (lo, hi):
                if n not in index:
                    raise LatticeError(f"order mentions unknown element {n!r}", "UnknownElement")
            table[index[lo]][index[hi]] = True
        for k in range(size):
            for i in range(size):
                if table[i][k]:
                    for j in range(size):
                        if table[k][j]:
                            table[i][j] = True
        return cls(elements, table, c_name=c_name, name=name)

    def with_c(self, c: "Grade | str") -> "Lattice":
        """Same order, different designated grade C."""
        name = c.display_name if isinstance(c, Grade) else c
        return Lattice(self.elements, self._leq, c_name=name, name=self.name)

    # Validation

    def _check_partial_order(self) -> None:
        n = self.size
        for i in range(n):
            if not self._leq[i][i]:
                raise LatticeError(f"{self.elements[i]} is not below itself", "NotReflexive")
        for i, j in itertools.product(range(n), repeat=2):
            if i != j and self._leq[i][j] and self._leq[j][i]:
                raise LatticeError(
                    f"{self.elements[i]} and {self.elements[j]} are distinct but mutually ordered",
                    "NotAntisymmetric",
                )
        for i, j, k in itertools.product(range(n), repeat=3):
            if self._leq[i][j] and self._leq[j][k] and not self._leq[i][k]:
                raise LatticeError("order is not transitive", "NotTransitive")

    def _bound(self, i: int, j: int, upper: bool) -> int:
        if upper:
            candidates = [k for k in range(self.size) if self._leq[i][k] and self._leq[j][k]]
            best = [k for k in candidates if all(self._leq[k][m] for m in candidates)]
            kind = "join"
        else:
            candidates = [k for k in range(self.size) if self._leq[k][i] and self._leq[k][j]]
            best = [k for k in candidates if all(self._leq[m][k] for m in candidates)]
            kind = "meet"
        if len(best) != 1:
            raise LatticeError(
                f"{self.elements[i]} and {self.elements[j]} have no unique {kind}",
                "MissingBound",
            )
        return best[0]

    def _extreme(self, upper: bool) -> int:
        acc = 0
        table = self._join if upper else self._meet
        for k in range(1, self.size):
            acc = table[acc][k]
        return acc

    def _check_laws(self) -> None:
        rng = range(self.size)
        for x, y in itertools.product(rng, repeat=2):
            if self._join[x][y] != self._join[y][x] or self._meet[x][y] != self._meet[y][x]:
                raise LatticeError("join or meet is not commutative", "LawViolated")
            if self._leq[x][y] != (self._join[x][y] == y) or self._leq[x][y] != (self._meet[x][y] == x):
                raise LatticeError("order disagrees with join/meet", "LawViolated")
            if self._join[x][self._meet[x][y]] != x or self._meet[x][self._join[x][y]] != x:
                raise LatticeError("absorption fails", "LawViolated")
        for x in rng:
            if self._join[x][x] != x or self._meet[x][x] != x:
                raise LatticeError("join or meet is not idempotent", "LawViolated")
            if not (self._leq[self.bot.id][x] and self._leq[x][self.top.id]):
                raise LatticeError("extremes do not bound every element", "MissingBound")
        for x, y, z in itertools.product(rng, repeat=3):
            if self._join[self._join[x][y]][z] != self._join[x][self._join[y][z]]:
                raise LatticeError("join is not associative", "LawViolated")
            if self._meet[self._meet[x][y]][z] != self._meet[x][self._meet[y][z]]:
                raise LatticeError("meet is not associative", "LawViolated")

    # Queries

    def grade(self, name: str) -> Grade:
        """Resolve an element name or one of the ``bot``/``top`` aliases."""
        if name in self.elements:
            return self.grades[self.elements.index(name)]
        if name == "bot":
            return self.bot
        if name == "top":
            return self.top
        raise LatticeError(f"{name!r} is not an element of {self.name}", "UnknownElement")

    def has_grade(self, name: str) -> bool:
        return name in self.elements or name in ("bot", "top")

    def _own(self, g: Grade) -> int:
        if g.owner != self._owner:
            raise LatticeError(f"grade {g} belongs to another lattice", "UnknownElement")
        return g.id

    def leq(self, k: Grade, l: Grade) -> bool:
        return self._leq[self._own(k)][self._own(l)]

    def join(self, k: Grade, l: Grade) -> Grade:
        return self.grades[self._join[self._own(k)][self._own(l)]]

    def meet(self, k: Grade, l: Grade) -> Grade:
        return self.grades[self._meet[self._own(k)][self._own(l)]]

    def __iter__(self) -> Iterator[Grade]:
        return iter(self.grades)

    def __len__(self) -> int:
        return self.size

    def __contains__(self, g: object) -> bool:
        return isinstance(g, Grade) and g.owner == self._owner

    def __repr__(self) -> str:
        return f"Lattice({self.name!r}, {self.elements!r}, c={self.c})"

    def below(self, l: Grade) -> list[Grade]:
        """Every grade k with k <= l, in element order."""
        return [k for k in self.grades if self.leq(k, l)]

    def above(self, l: Grade) -> list[Grade]:
        return [k for k in self.grades if self.leq(l, k)]

    def describe(self) -> str:
        """Render back into the config format."""
        pairs = [
            f"{self.elements[i]} <= {self.elements[j]}"
            for i, j in itertools.product(range(self.size), repeat=2)
            if i != j and self._leq[i][j]
        ]
        return "\n".join(
            [
                f"elements: {', '.join(self.elements)}",
                f"order: {', '.join(pairs)}" if pairs else "order:",
                f"c: {self.c}",
            ]
        )


def load_lattice(config: str, name: str = "lattice") -> Lattice:
    """Parse a lattice config.

    Args:
        config: Config text (``elements:``, ``order:``, optional ``c:``)
        name: Name used in messages

    Returns:
        The validated lattice

    Raises:
        LatticeError: On syntax errors or violated lattice laws
    """
    elements: list[str] = []
    pairs: list[tuple[str, str]] = []
    c_name: Optional[str] = None
    for lineno, raw in enumerate(config.splitlines(), start=1):
        line = raw.split("--", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise LatticeError(f"line {lineno}: expected 'key: value'", "Syntax")
        key, value = key.strip().lower(), value.strip()
        items = [v.strip() for v in value.split(",") if v.strip()]
        if key == "elements":
            elements.extend(items)
        elif key == "order":
            for item in items:
                lo, le, hi = item.partition("<=")
                if not le or not lo.strip() or not hi.strip():
                    raise LatticeError(f"line {lineno}: expected 'a <= b', got {item!r}", "Syntax")
                pairs.append((lo.strip(), hi.strip()))
        elif key == "c":
            c_name = value
        else:
            raise LatticeError(f"line {lineno}: unknown key {key!r}", "Syntax")
    lattice = Lattice.from_pairs(elements, pairs, c_name=None, name=name)
    if c_name is not None:
        if not lattice.has_grade(c_name):
            raise LatticeError(f"c names a non-element {c_name!r}", "UnknownElement")
        lattice = lattice.with_c(c_name)
    return lattice


def load_lattice_file(path: Path) -> Lattice:
    """Read and parse a lattice config file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise LatticeError(f"cannot read lattice file {path}: {e}", "Unreadable") from e
    return load_lattice(text, name=Path(path).stem)


def resolve_lattice(source: str, lattices_dir: Path) -> Lattice:
    """Load a lattice given either a path or the name of a built-in."""
    path = Path(source)
    if path.suffix == ".lat" and path.exists():
        return load_lattice_file(path)
    builtin = lattices_dir / f"{path.stem}.lat"
    if builtin.exists():
        return load_lattice_file(builtin)
    raise LatticeError(f"no lattice file or built-in named {source!r}", "Unreadable")


def two_point() -> Lattice:
    return Lattice.from_pairs(["bot", "top"], [("bot", "top")], name="two_point")


def irrelevance() -> Lattice:
    """L_I: bot < C < top, with C the compile-time grade."""
    return Lattice.from_pairs(
        ["bot", "C", "top"], [("bot", "C"), ("C", "top")], c_name="C", name="li"
    )


def low_medium_high() -> Lattice:
    return Lattice.from_pairs(["L", "M", "H"], [("L", "M"), ("M", "H")], name="lmh")


def diamond() -> Lattice:
    return Lattice.from_pairs(
        ["bot", "a", "b", "top"],
        [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        name="diamond",
    )
