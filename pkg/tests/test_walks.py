import dataclasses
import functools

import numpy as np
import pytest

from algebra.words import c_len, com, invert
from algebra.zn import ZnVec
from boundary.ends import classify_end, empirical_end
from config.config import STABLE_WINDOW_FRACTION
from tests.helpers import word
from utils.errors import DomainError, ExperimentAbortedError
from walks.cones import (
    ConeMeasure,
    MassBound,
    check_abort,
    empirical_cone_measure,
    dirac_convergence_profile,
    run_ensemble,
    stationarity_residual,
    tabulate_cones,
    translated_cone,
)
from walks.harmonic import harmonic_cone_measure, hitting_probabilities
from walks.measure import Nondegeneracy, check_nondegenerate, make_measure, reflect, uniform_symmetric
from walks.paths import (
    WalkPath,
    _Agreement,
    boundary_point,
    checkpoint_indices,
    detect_S_subsequence,
    drift,
    replay,
    sample_path,
)

SEED = 20240611


def _table(measure):
    return {str(g): w for g, w in zip(measure.support, measure.weights)}


class TestMeasures:
    def test_uniform_symmetric(self, free_ab):
        mu = uniform_symmetric(free_ab.group)
        assert sorted(_table(mu)) == ["a", "a^-1", "b", "b^-1"]
        assert all(w == pytest.approx(0.25) for w in mu.weights)

    def test_reflect(self, free_ab):
        mu = uniform_symmetric(free_ab.group)
        assert _table(reflect(mu)) == pytest.approx(_table(mu))
        ab = make_measure([(free_ab.group.word_element("a b"), 1.0)])
        assert _table(reflect(ab)) == {"b^-1 a^-1": 1.0}

    def test_make_measure_merges_and_normalizes(self, free_ab):
        a = free_ab.group.element("a")
        mu = make_measure([(a, 1.0), (a, 1.0), (free_ab.group.element("b"), 2.0)])
        assert _table(mu) == {"a": 0.5, "b": 0.5}

    def test_weights_must_be_positive(self, free_ab):
        with pytest.raises(DomainError):
            make_measure([(free_ab.group.element("a"), 0.0)])
        with pytest.raises(DomainError):
            make_measure([])

    def test_nondegeneracy(self, free_ab):
        g = free_ab.group
        assert check_nondegenerate(uniform_symmetric(g), g, 1) is Nondegeneracy.CONFIRMED
        only_a = make_measure([(g.element("a"), 1.0)])
        assert check_nondegenerate(only_a, g, 4) is Nondegeneracy.UNKNOWN
        mixed = make_measure([(g.word_element(t), 1.0) for t in ("a b", "b^-1", "a^-1")])
        assert check_nondegenerate(mixed, g, 3) is Nondegeneracy.CONFIRMED


class TestPaths:
    def test_zero_steps(self, free_ab):
        path = sample_path(free_ab.measure, SEED, 0)
        assert path.steps == 0
        assert path.final.is_empty
        assert drift(path) == 0.0

    def test_same_seed_same_path(self, not_min):
        p = sample_path(not_min.measure, SEED, 500, walk_index=3)
        q = sample_path(not_min.measure, SEED, 500, walk_index=3)
        assert np.array_equal(p.increments, q.increments)
        assert p.checkpoints == q.checkpoints

    def test_walk_index_changes_the_stream(self, free_ab):
        p = sample_path(free_ab.measure, SEED, 200, walk_index=0)
        q = sample_path(free_ab.measure, SEED, 200, walk_index=1)
        assert not np.array_equal(p.increments, q.increments)

    def test_checkpoints_agree_with_a_full_replay(self, not_min):
        path = sample_path(not_min.measure, SEED, 300)
        taus = replay(not_min.measure, path)
        for i, tau in path.checkpoints:
            assert taus[i] == tau

    def test_checkpoint_ladder(self):
        marks = checkpoint_indices(1000)
        assert marks[:4] == [0, 1, 2, 4]
        assert marks[-1] == 1000
        assert sum(1 for m in marks if m >= 875) >= 30

    def test_constant_walk_has_a_type_one_end(self, free_ab):
        mu = make_measure([(free_ab.group.element("a"), 1.0)])
        path = sample_path(mu, SEED, 64)
        assert path.final == word("(a)^64", 1)
        end = boundary_point(path)
        assert classify_end(end) == 1
        assert all(str(w) == " ".join(["a"] * w.length.coords[0]) for w in end.chain)

    def test_constant_walk_has_no_s_subsequence(self, not_min):
        mu = make_measure([(not_min.group.element("a"), 1.0)])
        evidence = detect_S_subsequence(sample_path(mu, SEED, 100))
        assert not evidence

    def test_pairwise_agreement_shortcut_matches_c_len(self, not_min):
        path = sample_path(not_min.measure, SEED, 400, walk_index=1)
        words = [w for _, w in path.checkpoints]
        agree = _Agreement(words, path.final)
        for a in range(len(words)):
            for b in range(a + 1, len(words)):
                assert agree(a, b) == c_len(words[a], words[b])

    @pytest.mark.parametrize("walk_index", range(4))
    def test_s_evidence_agreements_are_the_direct_ones(self, not_min, walk_index):
        path = sample_path(not_min.measure, SEED, 600, walk_index=walk_index)
        evidence = detect_S_subsequence(path, min_indices=2)
        taus = dict(path.checkpoints)
        picks = evidence.indices
        for j, (i, k) in enumerate(zip(picks, picks[1:])):
            assert evidence.forward[j] == c_len(taus[i], taus[k])
            assert evidence.backward[j] == c_len(invert(taus[i]), invert(taus[k]))
            assert evidence.hbar[j] < evidence.hbar[j + 1]
        assert list(evidence.forward) == sorted(set(evidence.forward))

    def test_end_is_the_prefix_shared_by_the_final_window(self, free_ab):
        path = sample_path(free_ab.measure, SEED, 1000)
        end = boundary_point(path)
        marks = path.checkpoints
        start = max(1, min(len(marks) - 2, int(len(marks) * (1 - STABLE_WINDOW_FRACTION))))
        assert end.deepest == functools.reduce(com, [w for _, w in marks[start:]])

    def test_cone_membership_settles_along_refined_chains(self, free_ab):
        cones = [g.word for g in free_ab.group.ball_enumerate(2) if g.word.length == ZnVec.of(2)]
        assert len(cones) == 12
        for walk_index in range(6):
            path = sample_path(free_ab.measure, SEED, 2000, walk_index=walk_index)
            coarse, fine = boundary_point(path, 0.5), boundary_point(path, 0.25)
            for end in (coarse, fine):
                for x in cones:
                    verdicts = {c_len(s, x) == x.length for s in end.chain if x.length <= s.length}
                    assert len(verdicts) <= 1
            if coarse.deepest.length >= ZnVec.of(2):
                inside = [x for x in cones if c_len(coarse.deepest, x) == x.length]
                assert len(inside) == 1
                assert c_len(fine.deepest, inside[0]) == inside[0].length

    def test_free_group_drift(self, free_ab):
        outcomes = run_ensemble(free_ab.measure, 50, 2000, SEED)
        assert 0.45 < float(np.mean([o.drift for o in outcomes])) < 0.55


class TestEnsembles:
    def test_thread_count_does_not_change_outcomes(self, not_min):
        one = run_ensemble(not_min.measure, 12, 300, SEED, threads=1, s_evidence=True)
        three = run_ensemble(not_min.measure, 12, 300, SEED, threads=3, s_evidence=True)
        assert [(o.final_length, o.s_picks, o.end_type) for o in one] == [
            (o.final_length, o.s_picks, o.end_type) for o in three
        ]

    def test_s_evidence_is_opt_in(self, not_min):
        plain = run_ensemble(not_min.measure, 3, 200, SEED)
        assert all(o.s_picks is None for o in plain)
        searched = run_ensemble(not_min.measure, 3, 200, SEED, s_evidence=True)
        assert all(isinstance(o.s_picks, int) for o in searched)
        assert [o.final_length for o in plain] == [o.final_length for o in searched]

    def test_abort_threshold(self, free_ab):
        outcomes = run_ensemble(free_ab.measure, 10, 200, SEED)
        assert check_abort(outcomes) <= 0.1
        lost = [dataclasses.replace(o, end=None) for o in outcomes[:2]] + outcomes[2:]
        with pytest.raises(ExperimentAbortedError):
            check_abort(lost)

    def test_tabulated_cones_partition_each_sphere(self, free_ab):
        outcomes = run_ensemble(free_ab.measure, 40, 500, SEED)
        nu = tabulate_cones([o.end for o in outcomes], 2, 1)
        assert sum(nu.sphere(1).values()) == pytest.approx(1.0)
        assert sum(nu.sphere(2).values()) == pytest.approx(1.0)

    def test_empirical_cone_measure(self, free_ab):
        nu = empirical_cone_measure(free_ab.measure, 40, 500, 1, SEED)
        assert nu.walks == 40
        assert sum(nu.sphere(1).values()) == pytest.approx(1.0)
        with pytest.raises(DomainError):
            empirical_cone_measure(free_ab.measure, 10, 100, 0, SEED)


class TestHarmonicMeasure:
    def test_free_group_cone_masses(self, free_ab):
        nu = harmonic_cone_measure(free_ab.group, free_ab.measure, 2)
        assert nu.mass(word("a", 1)) == pytest.approx(1 / 4)
        assert nu.mass(word("a b", 1)) == pytest.approx(1 / 12)
        assert sum(nu.sphere(1).values()) == pytest.approx(1.0)
        assert sum(nu.sphere(2).values()) == pytest.approx(1.0)

    def test_empirical_cone_measure(self, free_ab):
        nu = empirical_cone_measure(free_ab.measure, 40, 500, 1, SEED)
        assert nu.walks == 40
        assert sum(nu.sphere(1).values()) == pytest.approx(1.0)
        with pytest.raises(DomainError):
            empirical_cone_measure(free_ab.measure, 10, 100, 0, SEED)

    def test_hitting_probabilities(self, free_ab):
        f = hitting_probabilities(free_ab.group, free_ab.measure)
        assert all(p == pytest.approx(1 / 3) for p in f.values())

    def test_recurrent_walk_has_no_harmonic_measure(self, z_line):
        with pytest.raises(DomainError):
            harmonic_cone_measure(z_line.group, z_line.measure, 1)

    def test_exact_measure_is_stationary(self, free_ab):
        nu = harmonic_cone_measure(free_ab.group, free_ab.measure, 3)
        rows = stationarity_residual(nu, free_ab.measure)
        assert rows
        assert max(r.residual for r in rows) < 1e-12

    def test_point_mass_is_not_stationary(self, free_ab):
        a, aa = word("a", 1), word("a a", 1)
        nu = ConeMeasure(1, 2, {a: 1.0, aa: 1.0})
        rows = stationarity_residual(nu, free_ab.measure, [a])
        assert rows[0].residual == pytest.approx(0.5)

    def test_translated_cone(self):
        assert translated_cone(word("b", 1), word("a", 1)) == (word("b a", 1), False)
        assert translated_cone(word("a^-1", 1), word("a", 1)) == (word("a^-1", 1), True)

    def test_dirac_profile_of_the_constant_walk(self, free_ab):
        nu = harmonic_cone_measure(free_ab.group, free_ab.measure, 2)
        mu = make_measure([(free_ab.group.element("a"), 1.0)])
        path = sample_path(mu, SEED, 64)
        profile = dirac_convergence_profile(path, nu, 1)
        masses = [r.mass for r in profile]
        assert masses[0] == pytest.approx(1 / 4)
        assert masses[1] == pytest.approx(3 / 4)
        assert masses[-1] == pytest.approx(11 / 12)
        assert masses == sorted(masses)

    def test_deep_complements_are_lower_bounds(self, free_ab):
        mu = make_measure([(free_ab.group.element("a"), 1.0)])
        path = sample_path(mu, SEED, 64)
        shallow = dirac_convergence_profile(path, harmonic_cone_measure(free_ab.group, free_ab.measure, 2), 1)
        deep = dirac_convergence_profile(path, harmonic_cone_measure(free_ab.group, free_ab.measure, 8), 1)
        assert [r.bound for r in shallow[:3]] == [MassBound.EXACT] * 3
        assert shallow[-1].bound is MassBound.LOWER
        for s, d in zip(shallow, deep):
            if d.step <= 8:
                assert d.bound is MassBound.EXACT
                assert s.mass <= d.mass + 1e-12
        # U_(a^-4) has mass 1/4 * (1/3)^3
        assert deep[3].step == 4 and deep[3].mass == pytest.approx(1 - 1 / 108)

    def test_deep_cones_are_upper_bounds(self, free_ab):
        nu = harmonic_cone_measure(free_ab.group, free_ab.measure, 2)
        checkpoints = ((0, word("ε", 1)), (3, word("b^-1 b^-1 b^-1", 1)))
        path = WalkPath(SEED, 0, np.zeros(3, dtype=np.int64), checkpoints)
        end = empirical_end([word("a", 1), word("a a", 1)], 1)
        profile = dirac_convergence_profile(path, nu, 1, end)
        assert profile[0] == (0, pytest.approx(1 / 4), MassBound.EXACT)
        assert profile[1].bound is MassBound.UPPER
        # read at U_(b b), above the true 1/4 * (1/3)^3
        assert profile[1].mass == pytest.approx(1 / 12)
        assert profile[1].mass > 1 / 108


def test_zn_lengths_stay_in_the_walk_dimension(not_min):
    outcomes = run_ensemble(not_min.measure, 5, 200, SEED)
    assert all(o.final_length.n == 2 for o in outcomes)
    assert all(isinstance(o.final_length, ZnVec) for o in outcomes)
