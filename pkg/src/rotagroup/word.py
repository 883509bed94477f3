"""Words over rotation generators.

A word is a product of letters ``s<id>^<e>`` with ``e`` in {1, 2, 3}; every
generator is a quarter turn, so ``g⁻¹ == g³`` and exponents live mod 4.
Words may contain symbolic powers ``(w)^N`` and may share sub-words, which
keeps sifting output and ``(base)^(β/3)`` style words small in memory.

Evaluation order matches :mod:`rotagroup.perm`: the rightmost letter acts
first.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .perm import Permutation

__all__ = ["Letter", "Power", "Word", "evaluate", "parse_word"]

# product terms beyond this are wrapped as shared sub-words instead of copied
_INLINE_LIMIT = 64


class Letter(NamedTuple):
    gen: int
    exp: int

    def inverse(self) -> Letter:
        return Letter(self.gen, 4 - self.exp)


class Power:
    """``word ** exponent`` kept symbolic; a negative exponent means the inverse."""

    __slots__ = ("word", "exponent")

    def __init__(self, word: Word, exponent: int):
        self.word = word
        self.exponent = exponent

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Power)
            and self.exponent == other.exponent
            and (self.word is other.word or self.word == other.word)
        )

    def __hash__(self) -> int:
        return hash((id(self.word), self.exponent))

    def __repr__(self) -> str:
        return f"Power({self.word!r}, {self.exponent})"


Term = Letter | Power


def _normalize(terms: Iterable[Term]) -> tuple[Term, ...]:
    out: list[Term] = []
    for t in terms:
        if isinstance(t, Letter):
            e = t.exp % 4
            if e == 0:
                continue
            t = Letter(t.gen, e)
            while out and isinstance(out[-1], Letter) and out[-1].gen == t.gen:
                prev = out.pop()
                e = (prev.exp + t.exp) % 4
                if e == 0:
                    t = None
                    break
                t = Letter(t.gen, e)
            if t is not None:
                out.append(t)
        else:
            if t.exponent == 0 or not t.word.terms:
                continue
            out.append(t)
    return tuple(out)


class Word:
    """Product of letters and symbolic powers; immutable."""

    __slots__ = ("terms", "_length")

    def __init__(self, terms: Iterable[Term] = ()):
        self.terms = _normalize(terms)
        self._length: int | None = None

    @classmethod
    def letter(cls, gen: int, exp: int = 1) -> Word:
        return cls((Letter(gen, exp),))

    @classmethod
    def from_letters(cls, letters: Iterable[tuple[int, int]]) -> Word:
        return cls(Letter(g, e) for g, e in letters)

    @classmethod
    def product(cls, words: Iterable[Word]) -> Word:
        out = cls()
        for w in words:
            out = out * w
        return out

    def __mul__(self, other: Word) -> Word:
        a, b = self.terms, other.terms
        if len(a) + len(b) > _INLINE_LIMIT:
            if len(a) > _INLINE_LIMIT // 2:
                a = (Power(self, 1),)
            if len(b) > _INLINE_LIMIT // 2:
                b = (Power(other, 1),)
        return Word(a + b)

    def __pow__(self, e: int) -> Word:
        if e == 0 or not self.terms:
            return Word()
        if e == 1:
            return self
        if len(self.terms) == 1 and isinstance(self.terms[0], Letter):
            t = self.terms[0]
            return Word.letter(t.gen, t.exp * e)
        if e == -1:
            return self.inverse()
        return Word((Power(self, e),))

    def inverse(self) -> Word:
        inv: list[Term] = []
        for t in reversed(self.terms):
            if isinstance(t, Letter):
                inv.append(t.inverse())
            else:
                inv.append(Power(t.word, -t.exponent))
        return Word(inv)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        """Number of letters once every power is expanded."""
        if self._length is None:
            for node in _postorder(self):
                if node._length is None:
                    total = 0
                    for t in node.terms:
                        if isinstance(t, Letter):
                            total += 1
                        else:
                            total += abs(t.exponent) * t.word._length
                    node._length = total
        return self._length

    def generators(self) -> set[int]:
        gens: set[int] = set()
        for node in _postorder(self):
            gens.update(t.gen for t in node.terms if isinstance(t, Letter))
        return gens

    def relabel(self, mapping: dict[int, int]) -> Word:
        """Rename generators, e.g. ``{0: 1, 1: 0}`` swaps the two sites."""
        done: dict[int, Word] = {}
        for node in _postorder(self):
            terms = []
            for t in node.terms:
                if isinstance(t, Letter):
                    terms.append(Letter(mapping.get(t.gen, t.gen), t.exp))
                else:
                    terms.append(Power(done[id(t.word)], t.exponent))
            done[id(node)] = Word(terms)
        return done[id(self)]

    def iter_letters(self) -> Iterator[Letter]:
        """Expanded letters, without cross-boundary simplification."""
        # frame: [terms, next index, direction, repetitions left]
        stack = [[self.terms, 0, 1, 1]]
        while stack:
            frame = stack[-1]
            terms, idx, direction, reps = frame
            if idx >= len(terms):
                if reps > 1:
                    frame[1] = 0
                    frame[3] = reps - 1
                else:
                    stack.pop()
                continue
            frame[1] = idx + 1
            t = terms[idx] if direction > 0 else terms[len(terms) - 1 - idx]
            if isinstance(t, Letter):
                yield t if direction > 0 else t.inverse()
            else:
                d = direction if t.exponent > 0 else -direction
                stack.append([t.word.terms, 0, d, abs(t.exponent)])

    def letters(self, limit: int = 10_000_000) -> tuple[Letter, ...]:
        """Fully expanded and mod-4 normalized letters."""
        if len(self) > limit:
            raise ValueError(f"word expands to {len(self)} letters (limit {limit})")
        return Word(self.iter_letters()).terms

    def text(self) -> str:
        return _format_terms(self.terms)

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        s = self.text()
        if len(s) > 80:
            s = s[:77] + "..."
        return f"Word({s!r})"


def _postorder(root: Word) -> list[Word]:
    """Distinct sub-words of root, children before parents."""
    order: list[Word] = []
    seen: set[int] = set()
    stack: list[tuple[Word, bool]] = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for t in node.terms:
            if isinstance(t, Power) and id(t.word) not in seen:
                stack.append((t.word, False))
    return order


def _format_terms(terms: Sequence[Term]) -> str:
    parts = []
    for t in terms:
        if isinstance(t, Letter):
            parts.append(f"s{t.gen + 1}^{t.exp}")
        elif t.exponent == 1:
            parts.append(_format_terms(t.word.terms))
        else:
            parts.append(f"({_format_terms(t.word.terms)})^{t.exponent}")
    return " ".join(parts)


def evaluate(word: Word, gens: Sequence[Permutation]) -> Permutation:
    """The permutation a word denotes; shared sub-words are evaluated once."""
    n = gens[0].degree
    ident = np.arange(n, dtype=np.intp)
    letter_arr: dict[tuple[int, int], np.ndarray] = {}

    def letter_images(t: Letter) -> np.ndarray:
        key = (t.gen, t.exp)
        if key not in letter_arr:
            if not 0 <= t.gen < len(gens):
                raise ValueError(f"word uses unknown generator s{t.gen + 1}")
            letter_arr[key] = (gens[t.gen] ** t.exp).images
        return letter_arr[key]

    values: dict[int, np.ndarray] = {}
    for node in _postorder(word):
        r = ident
        for t in node.terms:
            if isinstance(t, Letter):
                r = r[letter_images(t)]
            else:
                sub = Permutation._wrap(values[id(t.word)].copy())
                r = r[(sub ** t.exponent).images]
        values[id(node)] = r
    return Permutation._wrap(np.array(values[id(word)], dtype=np.intp))


_TOKEN = re.compile(r"\s*(?:(s)(\d+)(?:\^(\d+))?|(\()|(\))\^(-?\d+)|(\)))")


def parse_word(text: str) -> Word:
    """Inverse of :meth:`Word.text`; accepts ``s<id>^<e>`` letters and ``(...)^N`` groups."""
    pos = 0
    stack: list[list[Term]] = [[]]
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse word at {text[pos:pos + 20]!r}")
        pos = m.end()
        if m.group(1):
            gen = int(m.group(2)) - 1
            if gen < 0:
                raise ValueError("generator ids start at 1")
            exp = int(m.group(3)) if m.group(3) else 1
            stack[-1].append(Letter(gen, exp))
        elif m.group(4):
            stack.append([])
        else:
            if len(stack) == 1:
                raise ValueError("unbalanced ')'")
            inner = Word(stack.pop())
            e = int(m.group(6)) if m.group(5) else 1
            stack[-1].append(Power(inner, e))
        while pos < len(text) and text[pos].isspace():
            pos += 1
    if len(stack) != 1:
        raise ValueError("unbalanced '('")
    return Word(stack[0])
