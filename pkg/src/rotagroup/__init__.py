"""Permutation groups generated by quarter-turns of k×k blocks in rectangle unions."""

from .classifier import GroupClass, predict, verify
from .figure import Figure, FigureSpec, RectPlacement, build_figure, load_figure, parse_figure, rectangle
from .group import BSGS, schreier_sims
from .perm import Permutation
from .solver import Arrangement, apply_word, is_solvable, solve
from .word import Word, evaluate, parse_word

__all__ = [
    "Arrangement",
    "BSGS",
    "Figure",
    "FigureSpec",
    "GroupClass",
    "Permutation",
    "RectPlacement",
    "Word",
    "apply_word",
    "build_figure",
    "evaluate",
    "is_solvable",
    "load_figure",
    "parse_figure",
    "parse_word",
    "predict",
    "rectangle",
    "schreier_sims",
    "solve",
    "verify",
]

__version__ = "0.1.0"
