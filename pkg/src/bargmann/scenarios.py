"""Cyclic words and scenarios.

A word is a nonempty tuple of positive integer letters.  Two words related by
a cyclic rotation index the same multivariate trace, so every word is stored
in canonical form: the lexicographically least among its rotations.  Reflected
words are *not* identified (trace invariants of a tuple and of its reversal
are complex conjugates, not equal), so the quotient is by rotations only.

A scenario is a finite set of canonical words, kept sorted by (length,
lexicographic order); its letter set is the sorted union of the letters that
appear.
"""

from __future__ import annotations

import json
import operator
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from .errors import InvalidScenarioError, InvalidWordError, ResourceLimitError

Word = tuple[int, ...]

#: Hard ceiling on how many necklaces a full scenario may contain.
DEFAULT_NECKLACE_CAP = 10**6

__all__ = [
    "Word",
    "Scenario",
    "ScenarioTraits",
    "DEFAULT_NECKLACE_CAP",
    "canonical_form",
    "rotations",
    "build_scenario",
    "classify",
    "full_scenario",
    "event_graph_scenario",
    "necklace_count",
    "scenario_to_dict",
    "scenario_from_dict",
    "save_scenario",
    "load_scenario",
    "word_label",
    "word_labels",
]


def _check_word(word) -> Word:
    try:
        w = tuple(operator.index(letter) for letter in word)
    except TypeError:
        raise InvalidWordError(f"letters must be integers, got {word!r}") from None
    if not w:
        raise InvalidWordError("a word must contain at least one letter")
    if min(w) < 1:
        raise InvalidWordError(f"letters must be positive integers, got {w}")
    return w


def rotations(word) -> list[Word]:
    """All cyclic rotations of ``word``, starting with the word itself."""
    w = _check_word(word)
    return [w[i:] + w[:i] for i in range(len(w))]


def canonical_form(word) -> Word:
    """Lexicographically least cyclic rotation of ``word``.

    ``canonical_form((2, 1, 3))`` is ``(1, 3, 2)``: rotating, not sorting.
    Raises :class:`InvalidWordError` on empty words or bad letters.
    """
    w = _check_word(word)
    return min(w[i:] + w[:i] for i in range(len(w)))


@dataclass(frozen=True)
class Scenario:
    """An ordered set of canonical words over positive integer letters.

    Instances are built with :func:`build_scenario` (or the other scenario
    constructors), which guarantee the invariants: words canonical, distinct,
    sorted by (length, lexicographic); letters sorted and exactly the union
    of the words' letters.
    """

    words: tuple[Word, ...]
    letters: tuple[int, ...]

    @cached_property
    def _index(self) -> dict[Word, int]:
        return {w: i for i, w in enumerate(self.words)}

    def index(self, word) -> int:
        """Position of ``word`` (up to rotation) in :attr:`words`."""
        key = canonical_form(word)
        try:
            return self._index[key]
        except KeyError:
            raise KeyError(f"word {key} is not part of this scenario") from None

    def __contains__(self, word) -> bool:
        try:
            return canonical_form(word) in self._index
        except InvalidWordError:
            return False

    def __len__(self) -> int:
        return len(self.words)


@dataclass(frozen=True)
class ScenarioTraits:
    """Structural predicates of a scenario used as preconditions elsewhere."""

    length_homogeneous: bool
    word_length: int | None
    every_word_two_distinct_letters: bool
    contains_all_repeat_words: bool


def build_scenario(words: Iterable) -> Scenario:
    """Canonicalize, deduplicate and sort ``words`` into a :class:`Scenario`."""
    canon = {canonical_form(w) for w in words}
    if not canon:
        raise InvalidScenarioError("a scenario needs at least one word")
    ordered = tuple(sorted(canon, key=lambda w: (len(w), w)))
    letters = tuple(sorted({letter for w in ordered for letter in w}))
    return Scenario(words=ordered, letters=letters)


def classify(scenario: Scenario) -> ScenarioTraits:
    """Report the structural traits of ``scenario``.

    ``contains_all_repeat_words`` is the pointedness precondition: the
    scenario is length-homogeneous at some m and contains the length-m
    single-letter repeat of every one of its letters.
    """
    lengths = {len(w) for w in scenario.words}
    homogeneous = len(lengths) == 1
    m = lengths.pop() if homogeneous else None
    two_distinct = all(len(set(w)) >= 2 for w in scenario.words)
    if homogeneous:
        repeats = all((letter,) * m in scenario._index for letter in scenario.letters)
    else:
        repeats = False
    return ScenarioTraits(
        length_homogeneous=homogeneous,
        word_length=m,
        every_word_two_distinct_letters=two_distinct,
        contains_all_repeat_words=repeats,
    )


def _euler_phi(n: int) -> int:
    result = n
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def necklace_count(n_letters: int, length: int) -> int:
    """Number of cyclic equivalence classes of words of ``length`` over
    ``n_letters`` letters: (1/k) * sum over d|k of phi(d) * n^(k/d)."""
    if n_letters < 1 or length < 1:
        raise InvalidScenarioError("n_letters and length must be positive")
    total = 0
    for d in range(1, length + 1):
        if length % d == 0:
            total += _euler_phi(d) * n_letters ** (length // d)
    return total // length


def _necklaces_of_length(n_letters: int, length: int) -> list[Word]:
    """All canonical necklaces of exactly ``length`` over letters 1..n, in
    lexicographic order.

    Recursive prenecklace extension: slot t may copy the periodic letter
    a[t-p] (keeping period p) or grow past it (period becomes t); a completed
    word is a necklace exactly when its period divides the length.
    """
    out: list[Word] = []
    a = [0] * (length + 1)

    def extend(t: int, p: int) -> None:
        if t > length:
            if length % p == 0:
                out.append(tuple(a[i] + 1 for i in range(1, length + 1)))
            return
        a[t] = a[t - p]
        extend(t + 1, p)
        for letter in range(a[t - p] + 1, n_letters):
            a[t] = letter
            extend(t + 1, t)

    extend(1, 1)
    return out


def full_scenario(
    n_letters: int, max_length: int, cap: int = DEFAULT_NECKLACE_CAP
) -> Scenario:
    """Scenario of every necklace of length 1..``max_length`` over letters
    1..``n_letters``.

    Raises :class:`ResourceLimitError` when the total necklace count would
    exceed ``cap`` (counted first, via the divisor formula, before any
    enumeration happens).
    """
    if n_letters < 1 or max_length < 1:
        raise InvalidScenarioError("n_letters and max_length must be positive")
    total = sum(necklace_count(n_letters, k) for k in range(1, max_length + 1))
    if total > cap:
        raise ResourceLimitError(
            f"full scenario would hold {total} necklaces, above the cap {cap}"
        )
    words: list[Word] = []
    for k in range(1, max_length + 1):
        words.extend(_necklaces_of_length(n_letters, k))
    ordered = tuple(words)
    letters = tuple(range(1, n_letters + 1))
    return Scenario(words=ordered, letters=letters)


def event_graph_scenario(edges: Iterable) -> Scenario:
    """Scenario whose words are the two-letter edges of a simple graph.

    Each edge is a pair of distinct letters; self-loops are rejected, and
    duplicate or reversed edges collapse to one word.
    """
    words = []
    for edge in edges:
        e = _check_word(edge)
        if len(e) != 2:
            raise InvalidScenarioError(f"an edge needs exactly two letters, got {e}")
        if e[0] == e[1]:
            raise InvalidScenarioError(f"self-loop {e} is not an edge")
        words.append(e)
    if not words:
        raise InvalidScenarioError("an event graph needs at least one edge")
    return build_scenario(words)


# -- serialization ----------------------------------------------------------


def scenario_to_dict(scenario: Scenario) -> dict:
    return {"words": [list(w) for w in scenario.words]}


def scenario_from_dict(data) -> Scenario:
    if not isinstance(data, dict) or "words" not in data:
        raise InvalidScenarioError('scenario JSON must be {"words": [[...], ...]}')
    words = data["words"]
    if not isinstance(words, list):
        raise InvalidScenarioError('"words" must be a list of words')
    return build_scenario(words)


def save_scenario(scenario: Scenario, path) -> None:
    with open(path, "w") as fh:
        json.dump(scenario_to_dict(scenario), fh, indent=2)
        fh.write("\n")


def load_scenario(path) -> Scenario:
    with open(path) as fh:
        return scenario_from_dict(json.load(fh))


def word_label(word: Word, compact: bool) -> str:
    """Stable text key for a word: digits run together when every letter in
    play is a single digit, comma-separated otherwise."""
    sep = "" if compact else ","
    return sep.join(str(letter) for letter in word)


def word_labels(scenario: Scenario) -> list[str]:
    """Text keys for the scenario's words, in scenario order."""
    compact = max(scenario.letters) <= 9
    return [word_label(w, compact) for w in scenario.words]
