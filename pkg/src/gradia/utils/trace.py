"""Derivation traces rendered as rich trees."""

from contextlib import contextmanager
from typing import Callable, Iterator, Optional

from rich.tree import Tree


class Tracer:
    """Records one node per rule application, nested like the derivation."""

    enabled = True

    def __init__(self, label: str = "derivation"):
        self.root = Tree(label)
        self._stack: list[Tree] = [self.root]

    @contextmanager
    def rule(self, name: str, describe: Optional[Callable[[], str]] = None) -> Iterator[None]:
        text = f"{name}  {describe()}" if describe is not None else name
        node = self._stack[-1].add(text)
        self._stack.append(node)
        try:
            yield
        finally:
            self._stack.pop()

    def note(self, text: str) -> None:
        self._stack[-1].add(text)

    def rule_names(self) -> list[str]:
        """Rule names in pre-order, for tests and summaries."""
        names: list[str] = []

        def walk(node: Tree) -> None:
            for child in node.children:
                names.append(str(child.label).split("  ", 1)[0])
                walk(child)

        walk(self.root)
        return names


class NullTracer(Tracer):
    enabled = False

    def __init__(self):
        pass

    @contextmanager
    def rule(self, name: str, describe: Optional[Callable[[], str]] = None) -> Iterator[None]:
        yield

    def note(self, text: str) -> None:
        return None

    def rule_names(self) -> list[str]:
        return []


NULL_TRACER = NullTracer()
