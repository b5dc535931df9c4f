"""Synthetic corpus generator: determinism, structure, separability."""

import numpy as np
import pytest

from gestrec import EASY_SPEC, ExtraTreesClassifier, SynthSpec, extract_all, generate


def small_spec(**overrides):
    base = dict(
        users=3,
        gestures=4,
        samples_per_gesture_per_user=5,
        length_range=(20, 40),
        user_speed_jitter=0.2,
        noise_sigma=0.1,
        user_style_offset=0.4,
        seed=5,
    )
    base.update(overrides)
    return SynthSpec(**base)


class TestStructure:
    def test_counts_and_meta(self):
        spec = small_spec()
        ds = generate(spec)
        assert len(ds.samples) == spec.total_samples == 60
        assert ds.meta.users == 3
        assert ds.meta.gestures == 4
        assert ds.meta.samples_per_gesture == 5
        assert ds.meta.total_samples == 60

    def test_identities_form_full_grid(self):
        ds = generate(small_spec())
        seen = {(s.user, s.gesture, s.trial) for s in ds.samples}
        want = {
            (u, g, t)
            for u in range(1, 4)
            for g in range(1, 5)
            for t in range(1, 6)
        }
        assert seen == want

    def test_lengths_within_range_and_varying(self):
        spec = small_spec(length_range=(24, 48), user_speed_jitter=0.3)
        ds = generate(spec)
        lengths = [s.n for s in ds.samples]
        assert min(lengths) >= 24
        assert max(lengths) <= 48
        assert len(set(lengths)) > 1

    def test_no_jitter_gives_fixed_midpoint_length(self):
        spec = small_spec(user_speed_jitter=0.0, length_range=(20, 40))
        ds = generate(spec)
        assert {s.n for s in ds.samples} == {30}

    def test_inactive_axes_are_exactly_zero_without_noise(self):
        # Class axis counts cycle 1, 2, 3, 1: classes 1 and 4 keep two
        # silent axes, class 2 keeps one.
        ds = generate(small_spec(noise_sigma=0.0))
        by_class = {}
        for s in ds.samples:
            silent = [np.all(s.readings[:, a] == 0.0) for a in range(3)]
            by_class.setdefault(s.gesture, silent)
        assert sum(by_class[1]) == 2
        assert sum(by_class[2]) == 1
        assert sum(by_class[3]) == 0
        assert sum(by_class[4]) == 2

    def test_noise_touches_every_axis(self):
        ds = generate(small_spec(noise_sigma=0.2))
        s = ds.samples[0]
        assert not np.any(np.all(s.readings == 0.0, axis=0))


class TestDeterminism:
    def test_bit_identical_regeneration(self):
        spec = small_spec()
        a = generate(spec)
        b = generate(spec)
        assert len(a.samples) == len(b.samples)
        for sa, sb in zip(a.samples, b.samples):
            assert sa.identity == sb.identity
            assert np.array_equal(sa.readings, sb.readings)

    def test_seed_changes_values(self):
        a = generate(small_spec(seed=5))
        b = generate(small_spec(seed=6))
        assert not np.array_equal(a.samples[0].readings, b.samples[0].readings)

    def test_users_differ_when_style_is_on(self):
        ds = generate(small_spec(user_style_offset=0.5, noise_sigma=0.0))
        u1 = next(s for s in ds.samples if (s.user, s.gesture, s.trial) == (1, 1, 1))
        u2 = next(s for s in ds.samples if (s.user, s.gesture, s.trial) == (2, 1, 1))
        if u1.n == u2.n:
            assert not np.array_equal(u1.readings, u2.readings)

    def test_degenerate_spec_makes_identical_trials(self):
        # No jitter, no noise, no style: every trial of a class is the
        # same deterministic curve for every user.
        ds = generate(
            small_spec(user_speed_jitter=0.0, noise_sigma=0.0, user_style_offset=0.0)
        )
        reference = {}
        for s in ds.samples:
            if s.gesture in reference:
                assert np.array_equal(s.readings, reference[s.gesture])
            else:
                reference[s.gesture] = s.readings


class TestSeparability:
    def test_noiseless_corpus_is_learnable(self):
        spec = small_spec(noise_sigma=0.0, user_style_offset=0.2)
        matrix = extract_all(generate(spec))
        model = ExtraTreesClassifier(n_trees=30, seed=1).fit(matrix.X, matrix.gestures)
        pred = model.predict(matrix.X)
        assert float((pred == matrix.gestures).mean()) == 1.0


class TestValidation:
    def test_easy_spec_is_frozen(self):
        assert EASY_SPEC.users == 8
        assert EASY_SPEC.gestures == 8
        assert EASY_SPEC.samples_per_gesture_per_user == 10
        assert EASY_SPEC.total_samples == 640
        with pytest.raises(AttributeError):
            EASY_SPEC.seed = 0

    def test_invalid_specs_rejected(self):
        with pytest.raises(ValueError):
            small_spec(length_range=(4, 40))
        with pytest.raises(ValueError):
            small_spec(length_range=(40, 20))
        with pytest.raises(ValueError):
            small_spec(users=0)
        with pytest.raises(ValueError):
            small_spec(user_speed_jitter=-0.1)
        with pytest.raises(ValueError):
            small_spec(noise_sigma=-0.1)
        with pytest.raises(ValueError):
            small_spec(user_style_offset=-0.1)
