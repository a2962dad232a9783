"""Density operators, invariant evaluation, combinators, serialization."""

import numpy as np
import pytest

from bargmann.errors import (
    DomainError,
    InvalidDistributionError,
    InvalidRealizationError,
    InvalidScenarioError,
    InvalidWordError,
    NotRealizableError,
    UnknownLetterError,
)
from bargmann.scenarios import build_scenario, full_scenario
from bargmann.states import (
    DensityOperator,
    Realization,
    bargmann,
    bloch_qubit_pair,
    classical_point,
    designolle_pair,
    direct_sum_mix,
    evaluate,
    gram_from_dict,
    gram_invariants,
    gram_to_dict,
    hadamard_combine,
    incoherent_realization,
    load_gram,
    load_states,
    obg_states,
    pointedness_functional,
    random_density,
    realization_from_dict,
    realization_to_dict,
    save_gram,
    save_states,
    schatten2_distance_sq,
    shrink,
)

KET0 = np.array([1.0, 0.0])
PLUS = np.array([1.0, 1.0]) / np.sqrt(2.0)
RIGHT = np.array([1.0, 1.0j]) / np.sqrt(2.0)  # (|0> + i|1>)/sqrt(2)


def proj(v):
    return np.outer(v, v.conj())


def pure_pair():
    return Realization({1: proj(KET0), 2: proj(PLUS)})


def pure_triple():
    return Realization({1: proj(KET0), 2: proj(PLUS), 3: proj(RIGHT)})


class TestDensityOperator:
    def test_accepts_density_matrix(self):
        op = DensityOperator(np.diag([0.25, 0.75]))
        assert op.dimension == 2
        assert op.trace == pytest.approx(1.0)
        assert op.is_normalized()

    def test_unnormalized_allowed(self):
        op = DensityOperator(np.diag([2.0, 1.0]))
        assert not op.is_normalized()
        assert op.trace == pytest.approx(3.0)

    def test_rejects_non_square(self):
        with pytest.raises(InvalidRealizationError):
            DensityOperator(np.ones((2, 3)))

    def test_rejects_non_hermitian(self):
        with pytest.raises(InvalidRealizationError):
            DensityOperator(np.array([[1.0, 1.0], [0.0, 1.0]]))

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(InvalidRealizationError):
            DensityOperator(np.array([[1.0, 0.9], [0.9, -0.5]]))

    def test_matrix_is_write_protected(self):
        op = DensityOperator(np.eye(2))
        with pytest.raises(ValueError):
            op.matrix[0, 0] = 5.0


class TestRealization:
    def test_basic_properties(self):
        r = pure_pair()
        assert r.letters == (1, 2)
        assert r.dimension == 2
        assert r.normalized

    def test_rejects_nonpositive_letters(self):
        with pytest.raises(InvalidRealizationError):
            Realization({0: np.eye(2)})

    def test_rejects_dimension_mismatch(self):
        with pytest.raises(InvalidRealizationError):
            Realization({1: np.eye(2), 2: np.eye(3) / 3})

    def test_rejects_empty(self):
        with pytest.raises(InvalidRealizationError):
            Realization({})

    def test_unknown_letter(self):
        r = pure_pair()
        with pytest.raises(UnknownLetterError):
            r[3]
        assert r.matrix(1)[0, 0] == pytest.approx(1.0)

    def test_letters_sorted(self):
        r = Realization({5: np.eye(2) / 2, 2: np.eye(2) / 2})
        assert r.letters == (2, 5)


class TestBargmann:
    def test_pure_overlap(self):
        r = pure_pair()
        assert bargmann(r, (1, 2)) == pytest.approx(0.5)

    def test_four_letter_words(self):
        r = pure_pair()
        assert bargmann(r, (1, 1, 2, 2)) == pytest.approx(0.5)
        assert bargmann(r, (1, 2, 1, 2)) == pytest.approx(0.25)

    def test_complex_value_and_conjugate_reversal(self):
        r = pure_triple()
        value = bargmann(r, (1, 2, 3))
        assert value == pytest.approx(0.25 + 0.25j, abs=1e-12)
        reverse = bargmann(r, (1, 3, 2))
        assert reverse == pytest.approx(np.conj(value), abs=1e-12)

    def test_rotation_gives_same_value(self):
        r = pure_triple()
        assert bargmann(r, (2, 3, 1)) == pytest.approx(bargmann(r, (1, 2, 3)))

    def test_single_letter_word_is_trace(self):
        r = Realization({1: np.diag([0.5, 2.0])})
        assert bargmann(r, (1,)) == pytest.approx(2.5)

    def test_invalid_word(self):
        with pytest.raises(InvalidWordError):
            bargmann(pure_pair(), ())


class TestEvaluate:
    def test_aligned_with_scenario_order(self):
        s = build_scenario([(1, 2, 1, 2), (1, 1, 2, 2)])
        v = evaluate(pure_pair(), s)
        assert v.values == pytest.approx([0.5, 0.25])
        assert v[(1, 2, 1, 2)] == pytest.approx(0.25)
        assert v[(2, 2, 1, 1)] == pytest.approx(0.5)  # rotation lookup

    def test_missing_letter(self):
        s = build_scenario([(1, 3)])
        with pytest.raises(UnknownLetterError):
            evaluate(pure_pair(), s)

    def test_real_vector_guard(self):
        s = build_scenario([(1, 2, 3)])
        v = evaluate(pure_triple(), s)
        with pytest.raises(ValueError):
            v.real_vector(imag_tol=1e-9)
        assert v.max_abs_imag == pytest.approx(0.25)

    def test_as_dict(self):
        s = build_scenario([(1, 2)])
        d = evaluate(pure_pair(), s).as_dict()
        assert set(d) == {(1, 2)}


class TestGramInvariants:
    def test_matches_matrix_route_on_fixed_triple(self):
        vecs = [KET0, PLUS, RIGHT]
        gram = np.array([[np.vdot(a, b) for b in vecs] for a in vecs])
        s = build_scenario([(1, 2), (1, 2, 3), (1, 3, 2)])
        via_gram = gram_invariants(gram, (1, 2, 3), s).values
        via_states = evaluate(pure_triple(), s).values
        assert via_gram == pytest.approx(via_states, abs=1e-12)

    def test_matches_matrix_route_on_random_pure_tuples(self):
        rng = np.random.default_rng(42)
        s = full_scenario(3, 3)
        for _ in range(25):
            d = int(rng.integers(2, 5))
            vecs = []
            for _ in range(3):
                v = rng.normal(size=d) + 1j * rng.normal(size=d)
                vecs.append(v / np.linalg.norm(v))
            gram = np.array([[np.vdot(a, b) for b in vecs] for a in vecs])
            r = Realization({i + 1: proj(v) for i, v in enumerate(vecs)})
            assert gram_invariants(gram, (1, 2, 3), s).values == pytest.approx(
                evaluate(r, s).values, abs=1e-10
            )

    def test_rejects_non_psd(self):
        bad = np.array([[1.0, 2.0], [2.0, 1.0]])  # eigenvalue -1
        with pytest.raises(NotRealizableError):
            gram_invariants(bad, (1, 2), build_scenario([(1, 2)]))

    def test_rejects_non_hermitian(self):
        bad = np.array([[1.0, 1.0], [0.0, 1.0]])
        with pytest.raises(NotRealizableError):
            gram_invariants(bad, (1, 2), build_scenario([(1, 2)]))

    def test_rejects_size_mismatch(self):
        with pytest.raises(NotRealizableError):
            gram_invariants(np.eye(3), (1, 2), build_scenario([(1, 2)]))

    def test_rejects_missing_letters(self):
        with pytest.raises(UnknownLetterError):
            gram_invariants(np.eye(2), (1, 2), build_scenario([(1, 3)]))


class TestClassicalPoint:
    def test_deterministic_assignment_reaches_vertex(self):
        s = build_scenario([(1, 2), (1, 3), (2, 3)])
        point = classical_point(
            {1: [1, 0], 2: [1, 0], 3: [0, 1]}, s
        ).real_vector()
        assert point == pytest.approx([1.0, 0.0, 0.0])

    def test_repeated_letters_enter_with_multiplicity(self):
        s = build_scenario([(1, 1, 2, 2), (1, 2, 1, 2)])
        p = [0.5, 0.5]
        point = classical_point({1: p, 2: p}, s).real_vector()
        assert point == pytest.approx([0.125, 0.125])

    def test_matches_incoherent_realization(self):
        s = build_scenario([(1, 2), (1, 3), (2, 3), (1, 2, 3), (1, 1, 2)])
        dists = {1: [0.5, 0.3, 0.2], 2: [0.2, 0.5, 0.3], 3: [0.1, 0.1, 0.8]}
        direct = classical_point(dists, s).values
        via_states = evaluate(incoherent_realization(dists), s).values
        assert direct == pytest.approx(via_states, abs=1e-12)

    def test_rejects_negative_entry(self):
        with pytest.raises(InvalidDistributionError):
            classical_point({1: [1.5, -0.5]}, build_scenario([(1, 1)]))

    def test_rejects_bad_sum(self):
        with pytest.raises(InvalidDistributionError):
            classical_point({1: [0.5, 0.4]}, build_scenario([(1, 1)]))

    def test_rejects_size_mismatch(self):
        with pytest.raises(InvalidDistributionError):
            classical_point({1: [1.0], 2: [0.5, 0.5]}, build_scenario([(1, 2)]))

    def test_rejects_missing_letter(self):
        with pytest.raises(UnknownLetterError):
            classical_point({1: [1.0]}, build_scenario([(1, 2)]))


class TestNamedFamilies:
    def test_obg_states_are_normalized_pure_qubits(self):
        r = obg_states(3, 0.7)
        assert r.letters == (1, 2, 3)
        assert r.dimension == 2 and r.normalized
        for letter in r.letters:
            m = r.matrix(letter)
            assert np.allclose(m @ m, m, atol=1e-12)  # rank-one projector

    def test_obg_rejects_bad_n(self):
        with pytest.raises(DomainError):
            obg_states(0, 0.5)

    def test_designolle_endpoints(self):
        r1 = designolle_pair(1.0)
        assert np.allclose(r1.matrix(1), proj(KET0), atol=1e-12)
        assert np.allclose(r1.matrix(2), np.diag([1 / 3, 2 / 3]), atol=1e-12)
        r0 = designolle_pair(0.0)
        assert np.allclose(r0.matrix(1), proj(PLUS), atol=1e-12)

    def test_designolle_domain(self):
        with pytest.raises(DomainError):
            designolle_pair(1.5)

    def test_bloch_pair_coincident_pure_states(self):
        r = bloch_qubit_pair(1.0, 1.0, 0.0)
        assert bargmann(r, (1, 1, 2, 2)) == pytest.approx(1.0)
        assert bargmann(r, (1, 2, 1, 2)) == pytest.approx(1.0)

    def test_bloch_pair_domain(self):
        with pytest.raises(DomainError):
            bloch_qubit_pair(1.2, 0.5, 0.0)
        with pytest.raises(DomainError):
            bloch_qubit_pair(0.5, -0.1, 0.0)


class TestCombinators:
    def random_pair(self, rng, letters=(1, 2), d=2):
        return Realization(
            {l: random_density(d, seed=rng).matrix for l in letters}
        )

    def test_direct_sum_mix_interpolates(self):
        rng = np.random.default_rng(3)
        s = build_scenario([(1, 1, 2, 2), (1, 2, 1, 2)])
        for _ in range(20):
            r1 = self.random_pair(rng)
            r2 = self.random_pair(rng, d=3)
            alpha = float(rng.uniform())
            mixed = evaluate(direct_sum_mix(r1, r2, alpha, 4), s).values
            target = alpha * evaluate(r1, s).values + (1 - alpha) * evaluate(r2, s).values
            assert mixed == pytest.approx(target, abs=1e-12)

    def test_direct_sum_mix_domain(self):
        r = pure_pair()
        with pytest.raises(DomainError):
            direct_sum_mix(r, r, 1.5, 4)
        with pytest.raises(DomainError):
            direct_sum_mix(r, r, 0.5, 0)

    def test_letter_mismatch(self):
        r1 = pure_pair()
        r2 = Realization({1: proj(KET0), 3: proj(PLUS)})
        with pytest.raises(InvalidRealizationError):
            direct_sum_mix(r1, r2, 0.5, 4)
        with pytest.raises(InvalidRealizationError):
            hadamard_combine(r1, r2)

    def test_shrink_scales(self):
        rng = np.random.default_rng(4)
        s = build_scenario([(1, 1, 2, 2), (1, 2, 1, 2)])
        for _ in range(20):
            r = self.random_pair(rng)
            nu = float(rng.uniform())
            shrunk = evaluate(shrink(r, nu, 4, scenario=s), s).values
            assert shrunk == pytest.approx(nu * evaluate(r, s).values, abs=1e-12)

    def test_shrink_requires_normalized(self):
        r = Realization({1: np.diag([2.0, 0.0]), 2: np.eye(2) / 2})
        with pytest.raises(InvalidRealizationError):
            shrink(r, 0.5, 2)

    def test_shrink_scenario_preconditions(self):
        r = pure_pair()
        with pytest.raises(InvalidScenarioError):
            shrink(r, 0.5, 2, scenario=build_scenario([(1, 2), (1, 2, 2)]))
        with pytest.raises(InvalidScenarioError):
            shrink(r, 0.5, 2, scenario=build_scenario([(1, 1), (1, 2)]))

    def test_shrink_domain(self):
        with pytest.raises(DomainError):
            shrink(pure_pair(), 1.5, 4)

    def test_hadamard_multiplies(self):
        rng = np.random.default_rng(5)
        s = full_scenario(2, 3)
        for _ in range(20):
            r1 = self.random_pair(rng)
            r2 = self.random_pair(rng, d=3)
            had = evaluate(hadamard_combine(r1, r2), s).values
            assert had == pytest.approx(
                evaluate(r1, s).values * evaluate(r2, s).values, abs=1e-12
            )


class TestPointedness:
    def test_requires_repeat_words(self):
        s = build_scenario([(1,), (2,), (1, 2)])
        r = pure_pair()
        v = evaluate(r, s)
        with pytest.raises(InvalidScenarioError):
            pointedness_functional(v)

    def test_sum_of_purities(self):
        s = build_scenario([(1, 1), (2, 2), (1, 2)])
        r = Realization({1: np.diag([0.5, 0.5]), 2: proj(PLUS)})
        v = evaluate(r, s)
        assert pointedness_functional(v) == pytest.approx(1.5)

    def test_nonnegative_on_random_tuples(self):
        rng = np.random.default_rng(6)
        s = build_scenario([(1, 1, 1), (2, 2, 2), (1, 1, 2)])
        for _ in range(50):
            r = Realization(
                {
                    1: random_density(3, seed=rng).matrix * float(rng.uniform(0.1, 2)),
                    2: random_density(3, seed=rng).matrix * float(rng.uniform(0.1, 2)),
                }
            )
            assert pointedness_functional(evaluate(r, s)) >= -1e-12


class TestSchatten2:
    def test_identity_against_eigenvalues(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            d = int(rng.integers(2, 5))
            r = Realization(
                {1: random_density(d, seed=rng).matrix, 2: random_density(d, seed=rng).matrix}
            )
            eigs = np.linalg.eigvalsh(r.matrix(1) - r.matrix(2))
            assert schatten2_distance_sq(r) == pytest.approx(
                float(np.sum(eigs**2)), abs=1e-10
            )

    def test_zero_for_identical_states(self):
        r = Realization({1: proj(PLUS), 2: proj(PLUS)})
        assert schatten2_distance_sq(r) == pytest.approx(0.0, abs=1e-12)


class TestRandomDensity:
    def test_normalized_and_psd(self):
        op = random_density(4, seed=0)
        assert op.is_normalized()
        assert np.min(np.linalg.eigvalsh(op.matrix)) >= -1e-12

    def test_deterministic_for_seed(self):
        a = random_density(3, seed=123).matrix
        b = random_density(3, seed=123).matrix
        assert np.array_equal(a, b)

    def test_rank_control(self):
        op = random_density(4, rank=1, seed=5)
        eigs = np.linalg.eigvalsh(op.matrix)
        assert np.sum(eigs > 1e-9) == 1

    def test_domain(self):
        with pytest.raises(DomainError):
            random_density(0)
        with pytest.raises(DomainError):
            random_density(2, rank=3)


class TestSerialization:
    def test_realization_round_trip(self):
        r = pure_triple()
        back = realization_from_dict(realization_to_dict(r))
        for letter in r.letters:
            assert np.array_equal(back.matrix(letter), r.matrix(letter))

    def test_imaginary_part_optional(self):
        r = realization_from_dict({"states": {"1": {"re": [[1.0, 0.0], [0.0, 0.0]]}}})
        assert r.matrix(1)[0, 0] == 1.0

    def test_declared_dimension_checked(self):
        data = realization_to_dict(pure_pair())
        data["dimension"] = 3
        with pytest.raises(InvalidRealizationError):
            realization_from_dict(data)

    def test_declared_normalized_checked(self):
        data = {
            "normalized": True,
            "states": {"1": {"re": [[2.0, 0.0], [0.0, 0.0]]}},
        }
        with pytest.raises(InvalidRealizationError):
            realization_from_dict(data)

    def test_bad_letter_key(self):
        with pytest.raises(InvalidRealizationError):
            realization_from_dict({"states": {"x": {"re": [[1.0]]}}})

    def test_shape_mismatch(self):
        with pytest.raises(InvalidRealizationError):
            realization_from_dict(
                {"states": {"1": {"re": [[1.0]], "im": [[0.0, 0.0]]}}}
            )

    def test_states_file_round_trip(self, tmp_path):
        path = tmp_path / "states.json"
        save_states(pure_triple(), path)
        back = load_states(path)
        for letter in (1, 2, 3):
            assert np.allclose(back.matrix(letter), pure_triple().matrix(letter))

    def test_gram_file_round_trip(self, tmp_path):
        gram = np.array([[1.0, 0.5 + 0.25j], [0.5 - 0.25j, 1.0]])
        path = tmp_path / "gram.json"
        save_gram(gram, [1, 2], path)
        back, letters = load_gram(path)
        assert letters == [1, 2]
        assert np.allclose(back, gram)

    def test_gram_missing_letters_key(self):
        with pytest.raises(NotRealizableError):
            gram_from_dict({"re": [[1.0]], "im": [[0.0]]})

    def test_gram_to_dict_shape(self):
        d = gram_to_dict(np.eye(2), [1, 2])
        assert d["letters"] == [1, 2]
        assert d["re"] == [[1.0, 0.0], [0.0, 1.0]]
