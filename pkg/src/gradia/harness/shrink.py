"""Greedy shrinking of failing samples by single-node deletion."""

import logging
from typing import Callable, Iterator

from gradia.harness.generate import Sample
from gradia.syntax.terms import Term, children, lower, mentions, positions, replace_at


def deletions(t: Term) -> Iterator[Term]:
    """Every term obtained by replacing one node with one of its children.

    A child under binders is only promoted when it does not use them.
    """
    for path, node, _ in positions(t):
        for _, binders, child in children(node):
            if binders == 0:
                yield replace_at(t, path, child)
            elif not mentions(child, *range(binders)):
                yield replace_at(t, path, lower(child, binders))


def shrink(sample: Sample, fails: Callable[[Sample], bool], budget: int = 2000) -> Sample:
    """Delete nodes while ``fails`` still holds.

    The result is locally minimal unless ``budget`` evaluations ran out first.
    """
    current = sample
    evaluations = 0
    improved = True
    while improved:
        improved = False
        for i, term in enumerate(current.terms):
            for smaller in deletions(term):
                if evaluations >= budget:
                    logging.info(f"shrinking stopped after {budget} evaluations")
                    return current
                evaluations += 1
                candidate = current.with_terms(current.terms[:i] + (smaller,) + current.terms[i + 1 :])
                if fails(candidate):
                    current = candidate
                    improved = True
                    break
            if improved:
                break
    return current
