"""Checkers, evaluators and observation relations of the graded calculi."""

from gradia.calculi.grading import grade, indist, same_labels

__all__ = ["grade", "indist", "same_labels"]
