"""Graded typing contexts and their grade-only projections."""

from dataclasses import dataclass
from typing import Iterator

from gradia.lattice import Grade, Lattice
from gradia.syntax.terms import Term, shift


@dataclass(frozen=True, slots=True)
class Binding:
    name: str
    grade: Grade
    type: Term


@dataclass(frozen=True, slots=True)
class Context:
    """Omega: bindings ``x :^g A``, innermost last.

    Each type is scoped over the bindings before it; :meth:`lookup` shifts
    it into the scope of the whole context.
    """

    bindings: tuple[Binding, ...] = ()

    def extend(self, name: str, grade: Grade, type_: Term) -> "Context":
        return Context(self.bindings + (Binding(name, grade, type_),))

    def lookup(self, index: int) -> Binding:
        b = self.bindings[len(self.bindings) - 1 - index]
        return Binding(b.name, b.grade, shift(b.type, index + 1))

    def has(self, index: int) -> bool:
        return 0 <= index < len(self.bindings)

    def grades(self) -> "GradeContext":
        """The projection |Omega|."""
        return GradeContext(tuple((b.name, b.grade) for b in self.bindings))

    def truncate(self, lattice: Lattice, c: Grade) -> "Context":
        """C meet Omega: every binding grade met with ``c``."""
        return Context(
            tuple(Binding(b.name, lattice.meet(b.grade, c), b.type) for b in self.bindings)
        )

    def regrade(self, grade: Grade) -> "Context":
        """Every binding graded ``grade``."""
        return Context(tuple(Binding(b.name, grade, b.type) for b in self.bindings))

    def with_grade(self, index: int, grade: Grade) -> "Context":
        pos = len(self.bindings) - 1 - index
        b = self.bindings[pos]
        items = list(self.bindings)
        items[pos] = Binding(b.name, grade, b.type)
        return Context(tuple(items))

    def names(self) -> tuple[str, ...]:
        return tuple(b.name for b in self.bindings)

    def __len__(self) -> int:
        return len(self.bindings)

    def __iter__(self) -> Iterator[Binding]:
        return iter(self.bindings)


@dataclass(frozen=True, slots=True)
class GradeContext:
    """Phi: ``(name, grade)`` pairs, innermost last."""

    entries: tuple[tuple[str, Grade], ...] = ()

    def extend(self, name: str, grade: Grade) -> "GradeContext":
        return GradeContext(self.entries + ((name, grade),))

    def grade_of(self, index: int) -> Grade:
        return self.entries[len(self.entries) - 1 - index][1]

    def has(self, index: int) -> bool:
        return 0 <= index < len(self.entries)

    def truncate(self, lattice: Lattice, c: Grade) -> "GradeContext":
        return GradeContext(tuple((n, lattice.meet(g, c)) for n, g in self.entries))

    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.entries)

    def __len__(self) -> int:
        return len(self.entries)


EMPTY = Context()
EMPTY_GRADES = GradeContext()
