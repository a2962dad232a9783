"""Density operators, realizations, and multivariate trace invariants.

A realization assigns to each letter a positive semidefinite operator on one
shared finite-dimensional space.  The invariant of a word (l1, ..., lm) is
Tr(rho_l1 ... rho_lm): invariant under cyclic rotation of the word and under a
common unitary conjugation of the whole tuple, hence a property of the tuple's
relative geometry only.
"""

from __future__ import annotations

import json
import numbers
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DomainError,
    InvalidDistributionError,
    InvalidRealizationError,
    InvalidScenarioError,
    NotRealizableError,
    UnknownLetterError,
)
from .scenarios import Scenario, Word, canonical_form, classify

HERMITICITY_TOL = 1e-12
PSD_TOL = 1e-10  # least eigenvalue may undershoot zero by at most this
TRACE_TOL = 1e-10
DISTRIBUTION_TOL = 1e-12

__all__ = [
    "HERMITICITY_TOL",
    "PSD_TOL",
    "TRACE_TOL",
    "DISTRIBUTION_TOL",
    "DensityOperator",
    "Realization",
    "InvariantVector",
    "bargmann",
    "evaluate",
    "gram_invariants",
    "classical_point",
    "incoherent_realization",
    "obg_states",
    "designolle_pair",
    "bloch_qubit_pair",
    "direct_sum_mix",
    "shrink",
    "hadamard_combine",
    "pointedness_functional",
    "schatten2_distance_sq",
    "random_density",
    "realization_to_dict",
    "realization_from_dict",
    "save_states",
    "load_states",
    "gram_to_dict",
    "gram_from_dict",
    "save_gram",
    "load_gram",
]


@dataclass(frozen=True)
class DensityOperator:
    """A positive semidefinite operator, not necessarily of unit trace."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidRealizationError(f"operator must be square, got shape {m.shape}")
        gap = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
        if gap > HERMITICITY_TOL:
            raise InvalidRealizationError(
                f"operator is not hermitian: max |A - A^dag| = {gap:.3e}"
            )
        least = float(np.min(np.linalg.eigvalsh((m + m.conj().T) / 2)))
        if least < -PSD_TOL:
            raise InvalidRealizationError(
                f"operator is not positive semidefinite: least eigenvalue {least:.3e}"
            )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace(self) -> float:
        return float(self.matrix.trace().real)

    def is_normalized(self, tol: float = TRACE_TOL) -> bool:
        return abs(self.trace - 1.0) <= tol


class Realization:
    """Letter-indexed family of positive operators on one common space."""

    def __init__(self, operators: Mapping):
        ops: dict[int, DensityOperator] = {}
        for letter, op in operators.items():
            letter = int(letter)
            if letter < 1:
                raise InvalidRealizationError(f"letters must be positive, got {letter}")
            if not isinstance(op, DensityOperator):
                op = DensityOperator(np.asarray(op))
            ops[letter] = op
        if not ops:
            raise InvalidRealizationError("a realization needs at least one operator")
        dims = {op.dimension for op in ops.values()}
        if len(dims) != 1:
            raise InvalidRealizationError(
                f"operators must share one dimension, got {sorted(dims)}"
            )
        self._ops = dict(sorted(ops.items()))
        self.dimension = dims.pop()
        self.normalized = all(op.is_normalized() for op in self._ops.values())

    @property
    def letters(self) -> tuple[int, ...]:
        return tuple(self._ops)

    def __getitem__(self, letter: int) -> DensityOperator:
        try:
            return self._ops[letter]
        except KeyError:
            raise UnknownLetterError(
                f"letter {letter} has no operator (letters: {self.letters})"
            ) from None

    def matrix(self, letter: int) -> np.ndarray:
        return self[letter].matrix

    def items(self):
        return self._ops.items()

    def __repr__(self):
        return (
            f"Realization(letters={self.letters}, dimension={self.dimension}, "
            f"normalized={self.normalized})"
        )


@dataclass(frozen=True)
class InvariantVector:
    """Invariant values aligned with a scenario's word order."""

    scenario: Scenario
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        if v.shape != (len(self.scenario.words),):
            raise ValueError(
                f"need {len(self.scenario.words)} values, got shape {v.shape}"
            )
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __getitem__(self, word) -> complex:
        return complex(self.values[self.scenario.index(word)])

    def as_dict(self) -> dict[Word, complex]:
        return {w: complex(v) for w, v in zip(self.scenario.words, self.values)}

    @property
    def max_abs_imag(self) -> float:
        return float(np.max(np.abs(self.values.imag)))

    def real_vector(self, imag_tol: float = 1e-9) -> np.ndarray:
        """Real parts, guarded: raises if any imaginary part exceeds the tol."""
        if self.max_abs_imag > imag_tol:
            raise ValueError(
                f"invariant vector is not real within {imag_tol:g} "
                f"(max imaginary part {self.max_abs_imag:.3e})"
            )
        return self.values.real.copy()


def bargmann(realization: Realization, word) -> complex:
    """Trace of the word-ordered product of the realization's operators."""
    w = canonical_form(word)  # validates; the trace is rotation invariant
    matrices = [realization.matrix(letter) for letter in w]
    return complex(np.trace(reduce(np.matmul, matrices)))


def evaluate(realization: Realization, scenario: Scenario) -> InvariantVector:
    """Invariant vector of ``realization`` over all of ``scenario``'s words."""
    missing = [l for l in scenario.letters if l not in realization._ops]
    if missing:
        raise UnknownLetterError(
            f"realization lacks operators for letters {missing}"
        )
    values = np.array([bargmann(realization, w) for w in scenario.words])
    return InvariantVector(scenario=scenario, values=values)


def gram_invariants(gram, letters: Sequence[int], scenario: Scenario) -> InvariantVector:
    """Invariant vector of a pure tuple specified only through its gram matrix.

    ``gram[i, j]`` is the inner product <v_i|v_j> of the (unnormalized) state
    vectors in the order given by ``letters``.  For rank-one operators
    rho_l = |v_l><v_l| the word invariant collapses to the cycle product
    G[l1,l2] G[l2,l3] ... G[lm,l1], so no vectors need to be reconstructed.

    The matrix must be hermitian and positive semidefinite, otherwise no state
    tuple realizes it and :class:`NotRealizableError` is raised.
    """
    g = np.array(gram, dtype=complex)
    idx = {int(l): i for i, l in enumerate(letters)}
    if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] != len(idx):
        raise NotRealizableError(
            f"gram matrix shape {g.shape} does not match {len(idx)} letters"
        )
    if np.max(np.abs(g - g.conj().T)) > HERMITICITY_TOL:
        raise NotRealizableError("gram matrix is not hermitian")
    least = float(np.min(np.linalg.eigvalsh((g + g.conj().T) / 2)))
    if least < -PSD_TOL:
        raise NotRealizableError(
            f"gram matrix is not positive semidefinite: least eigenvalue {least:.3e}"
        )
    missing = [l for l in scenario.letters if l not in idx]
    if missing:
        raise UnknownLetterError(f"gram matrix lacks letters {missing}")
    values = []
    for w in scenario.words:
        prod = complex(1.0)
        for a, b in zip(w, w[1:] + w[:1]):
            prod *= g[idx[a], idx[b]]
        values.append(prod)
    return InvariantVector(scenario=scenario, values=np.array(values))


# -- classical (incoherent) models ------------------------------------------


def _check_distributions(distributions: Mapping) -> dict[int, np.ndarray]:
    dists: dict[int, np.ndarray] = {}
    size = None
    for letter, p in distributions.items():
        letter = int(letter)
        arr = np.array(p, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise InvalidDistributionError(
                f"distribution for letter {letter} must be a nonempty vector"
            )
        if size is None:
            size = arr.size
        elif arr.size != size:
            raise InvalidDistributionError(
                "all distributions must share one alphabet size"
            )
        if np.min(arr) < -DISTRIBUTION_TOL:
            raise InvalidDistributionError(
                f"distribution for letter {letter} has a negative entry"
            )
        if abs(float(arr.sum()) - 1.0) > DISTRIBUTION_TOL:
            raise InvalidDistributionError(
                f"distribution for letter {letter} sums to {arr.sum()!r}, not 1"
            )
        dists[letter] = arr
    if not dists:
        raise InvalidDistributionError("at least one distribution is required")
    return dists


def classical_point(distributions: Mapping, scenario: Scenario) -> InvariantVector:
    """Invariant vector of jointly diagonal states with the given diagonals.

    For each word the value is sum_k prod_i p^(l_i)_k: every letter occurrence
    contributes its own factor, so repeated letters enter with multiplicity.
    """
    dists = _check_distributions(distributions)
    missing = [l for l in scenario.letters if l not in dists]
    if missing:
        raise UnknownLetterError(f"no distribution for letters {missing}")
    values = []
    for w in scenario.words:
        prod = np.ones_like(next(iter(dists.values())))
        for letter in w:
            prod = prod * dists[letter]
        values.append(float(prod.sum()))
    return InvariantVector(scenario=scenario, values=np.array(values, dtype=complex))


def incoherent_realization(distributions: Mapping) -> Realization:
    """Diagonal realization with the given diagonals, in one shared basis."""
    dists = _check_distributions(distributions)
    return Realization({l: np.diag(p).astype(complex) for l, p in dists.items()})


# -- named state families ----------------------------------------------------


def obg_states(n: int, theta: float) -> Realization:
    """Tuple of n pure qubit states cos(theta/2)|0> + sin(theta/2) w^k |1>
    with w = exp(2 pi i / n), letters 1..n."""
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    theta = float(theta)
    ops = {}
    for k in range(n):
        phase = np.exp(2j * np.pi * k / n)
        vec = np.array([np.cos(theta / 2), np.sin(theta / 2) * phase])
        ops[k + 1] = np.outer(vec, vec.conj())
    return Realization(ops)


def designolle_pair(omega: float) -> Realization:
    """Interpolation between two fixed qubit pairs: the mixtures
    omega * (|0><0|, diag(1/3, 2/3)) + (1 - omega) * (|+><+|, diag_+-(1/4, 3/4)),
    taken letterwise.  Letters 1 and 2."""
    omega = float(omega)
    if not 0.0 <= omega <= 1.0:
        raise DomainError(f"omega must lie in [0, 1], got {omega}")
    ket0 = np.array([1.0, 0.0])
    ket1 = np.array([0.0, 1.0])
    plus = np.array([1.0, 1.0]) / np.sqrt(2.0)
    minus = np.array([1.0, -1.0]) / np.sqrt(2.0)

    def proj(v):
        return np.outer(v, v.conj())

    first = omega * proj(ket0) + (1 - omega) * proj(plus)
    second = omega * (proj(ket0) / 3 + 2 * proj(ket1) / 3) + (1 - omega) * (
        proj(plus) / 4 + 3 * proj(minus) / 4
    )
    return Realization({1: first, 2: second})


def bloch_qubit_pair(r: float, s: float, theta: float) -> Realization:
    """Qubit pair with Bloch vectors r * x_hat and s * (cos(theta) x_hat +
    sin(theta) z_hat); letters 1 and 2."""
    r, s, theta = float(r), float(s), float(theta)
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"r must lie in [0, 1], got {r}")
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"s must lie in [0, 1], got {s}")
    eye = np.eye(2, dtype=complex)
    sigma_x = np.array([[0, 1], [1, 0]], dtype=complex)
    sigma_z = np.array([[1, 0], [0, -1]], dtype=complex)
    rho1 = (eye + r * sigma_x) / 2
    rho2 = (eye + s * np.cos(theta) * sigma_x + s * np.sin(theta) * sigma_z) / 2
    return Realization({1: rho1, 2: rho2})


# -- combinators --------------------------------------------------------------


def _common_letters(r1: Realization, r2: Realization) -> tuple[int, ...]:
    if r1.letters != r2.letters:
        raise InvalidRealizationError(
            f"letter sets differ: {r1.letters} vs {r2.letters}"
        )
    return r1.letters


def direct_sum_mix(
    r1: Realization, r2: Realization, alpha: float, m: int
) -> Realization:
    """Blockwise mixture alpha^(1/m) rho_l (+) (1-alpha)^(1/m) sigma_l.

    For every word of length exactly m the invariant of the output equals
    alpha * Delta(r1) + (1 - alpha) * Delta(r2); the output is generally not
    normalized even when both inputs are.
    """
    letters = _common_letters(r1, r2)
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha}")
    if m < 1:
        raise DomainError(f"word length m must be positive, got {m}")
    a = alpha ** (1.0 / m)
    b = (1.0 - alpha) ** (1.0 / m)
    d1, d2 = r1.dimension, r2.dimension
    ops = {}
    for letter in letters:
        block = np.zeros((d1 + d2, d1 + d2), dtype=complex)
        block[:d1, :d1] = a * r1.matrix(letter)
        block[d1:, d1:] = b * r2.matrix(letter)
        ops[letter] = block
    return Realization(ops)


def shrink(
    r: Realization, nu: float, m: int, scenario: Scenario | None = None
) -> Realization:
    """Scale all length-m invariants by nu: nu^(1/m) rho_l (+) block on the
    letter's own basis vector.

    Valid for words of length exactly m that contain at least two distinct
    letters (otherwise the appended basis blocks contribute cross terms).
    Passing the target ``scenario`` checks that precondition; the realization
    itself must be normalized.
    """
    nu = float(nu)
    if not 0.0 <= nu <= 1.0:
        raise DomainError(f"nu must lie in [0, 1], got {nu}")
    if m < 1:
        raise DomainError(f"word length m must be positive, got {m}")
    if not r.normalized:
        raise InvalidRealizationError("shrink needs a normalized realization")
    if scenario is not None:
        traits = classify(scenario)
        if not (traits.length_homogeneous and traits.word_length == m):
            raise InvalidScenarioError(
                f"scenario words must all have length {m} for shrink"
            )
        if not traits.every_word_two_distinct_letters:
            raise InvalidScenarioError(
                "every scenario word needs two distinct letters: single-letter "
                "words pick up the appended basis block"
            )
    letters = r.letters
    d = r.dimension
    n = len(letters)
    scale = nu ** (1.0 / m)
    ops = {}
    for pos, letter in enumerate(letters):
        block = np.zeros((d + n, d + n), dtype=complex)
        block[:d, :d] = scale * r.matrix(letter)
        block[d + pos, d + pos] = 1.0 - scale
        ops[letter] = block
    return Realization(ops)


def hadamard_combine(r1: Realization, r2: Realization) -> Realization:
    """Letterwise tensor product; every word invariant multiplies:
    Delta(out, w) = Delta(r1, w) * Delta(r2, w)."""
    letters = _common_letters(r1, r2)
    return Realization(
        {l: np.kron(r1.matrix(l), r2.matrix(l)) for l in letters}
    )


# -- functionals --------------------------------------------------------------


def pointedness_functional(v: InvariantVector, scenario: Scenario | None = None) -> float:
    """Sum of the repeat-word coordinates, real part.

    Nonnegative on every quantum invariant vector (each term is a trace of a
    positive power).  Requires a length-homogeneous scenario containing the
    repeat word (l, ..., l) for each of its letters.
    """
    s = scenario if scenario is not None else v.scenario
    traits = classify(s)
    if not traits.contains_all_repeat_words:
        raise InvalidScenarioError(
            "scenario must be length-homogeneous and contain every letter's "
            "repeat word"
        )
    m = traits.word_length
    total = 0.0
    for letter in s.letters:
        total += v[(letter,) * m].real
    return total


def schatten2_distance_sq(r: Realization) -> float:
    """||rho_1 - rho_2||_2^2 via invariants: Tr rho_1^2 + Tr rho_2^2 - 2 Tr rho_1 rho_2."""
    t11 = bargmann(r, (1, 1)).real
    t22 = bargmann(r, (2, 2)).real
    t12 = bargmann(r, (1, 2)).real
    return t11 + t22 - 2.0 * t12


def random_density(dimension: int, rank: int | None = None, seed=None) -> DensityOperator:
    """Random density matrix G G^dag / Tr(G G^dag) with a complex Gaussian
    d x rank factor G; deterministic for a fixed seed."""
    if dimension < 1:
        raise DomainError(f"dimension must be positive, got {dimension}")
    if rank is None:
        rank = dimension
    if not 1 <= rank <= dimension:
        raise DomainError(f"rank must lie in 1..{dimension}, got {rank}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    g = rng.normal(size=(dimension, rank)) + 1j * rng.normal(size=(dimension, rank))
    m = g @ g.conj().T
    return DensityOperator(m / m.trace().real)


# -- serialization ------------------------------------------------------------


def _matrix_to_json(m: np.ndarray) -> dict:
    return {
        "re": [[float(x) for x in row] for row in m.real],
        "im": [[float(x) for x in row] for row in m.imag],
    }


def _matrix_from_json(entry) -> np.ndarray:
    if not isinstance(entry, dict) or "re" not in entry:
        raise InvalidRealizationError('matrix entries need {"re": [[...]], "im": [[...]]}')
    re = np.array(entry["re"], dtype=float)
    im = np.array(entry.get("im", np.zeros_like(re)), dtype=float)
    if re.shape != im.shape:
        raise InvalidRealizationError("re and im parts have different shapes")
    return re + 1j * im


def realization_to_dict(r: Realization) -> dict:
    return {
        "dimension": r.dimension,
        "normalized": r.normalized,
        "states": {str(l): _matrix_to_json(op.matrix) for l, op in r.items()},
    }


def realization_from_dict(data) -> Realization:
    if not isinstance(data, dict) or "states" not in data:
        raise InvalidRealizationError('states JSON must carry a "states" mapping')
    ops = {}
    for key, entry in data["states"].items():
        try:
            letter = int(key)
        except ValueError:
            raise InvalidRealizationError(f"state keys must be letters, got {key!r}") from None
        ops[letter] = _matrix_from_json(entry)
    r = Realization(ops)
    declared = data.get("dimension")
    if declared is not None and int(declared) != r.dimension:
        raise InvalidRealizationError(
            f"declared dimension {declared} but matrices have dimension {r.dimension}"
        )
    declared_norm = data.get("normalized")
    if declared_norm is True and not r.normalized:
        raise InvalidRealizationError("states declared normalized but traces differ from 1")
    return r


def save_states(r: Realization, path) -> None:
    with open(path, "w") as fh:
        json.dump(realization_to_dict(r), fh, indent=2)
        fh.write("\n")


def load_states(path) -> Realization:
    with open(path) as fh:
        return realization_from_dict(json.load(fh))


def gram_to_dict(gram, letters: Sequence[int]) -> dict:
    g = np.array(gram, dtype=complex)
    return {"letters": [int(l) for l in letters], **_matrix_to_json(g)}


def gram_from_dict(data) -> tuple[np.ndarray, list[int]]:
    if not isinstance(data, dict) or "letters" not in data:
        raise NotRealizableError('gram JSON must carry "letters", "re", "im"')
    letters = [int(l) for l in data["letters"]]
    g = _matrix_from_json(data)
    return g, letters


def save_gram(gram, letters: Sequence[int], path) -> None:
    with open(path, "w") as fh:
        json.dump(gram_to_dict(gram, letters), fh, indent=2)
        fh.write("\n")


def load_gram(path) -> tuple[np.ndarray, list[int]]:
    with open(path) as fh:
        return gram_from_dict(json.load(fh))
