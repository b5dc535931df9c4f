"""Data model, canonical manifest I/O, and raw-tree adapter tests."""

import json
import warnings

import numpy as np
import pytest

from gestrec.data import (
    SONY_ADAPTER,
    UWAVE_ADAPTER,
    AdapterConfig,
    Dataset,
    GestureSample,
    load_adapter_config,
    load_manifest,
    load_sony_tree,
    load_uwave_tree,
    save_manifest,
    strip_timestamps,
)
from gestrec.errors import DataError


def sample(user=1, gesture=1, trial=1, day=None, n=6, seed=0):
    rng = np.random.default_rng(seed + user * 100 + gesture * 10 + trial)
    return GestureSample(
        user=user, gesture=gesture, trial=trial, day=day,
        readings=rng.normal(size=(n, 3)),
    )


class TestGestureSample:
    def test_accepts_minimum_length(self):
        s = sample(n=4)
        assert s.n == 4
        assert s.readings.shape == (4, 3)

    def test_rejects_short_sequences(self):
        with pytest.raises(ValueError, match="too short"):
            sample(n=3)

    def test_rejects_bad_shape(self):
        with pytest.raises(ValueError, match="shape"):
            GestureSample(user=1, gesture=1, trial=1,
                          readings=np.zeros((5, 2)))

    def test_rejects_non_finite(self):
        readings = np.zeros((5, 3))
        readings[2, 1] = np.inf
        with pytest.raises(ValueError, match="non-finite"):
            GestureSample(user=1, gesture=1, trial=1, readings=readings)

    def test_rejects_nonpositive_ids(self):
        with pytest.raises(ValueError):
            sample(user=0)
        with pytest.raises(ValueError):
            sample(day=0)

    def test_readings_are_immutable(self):
        s = sample()
        with pytest.raises(ValueError):
            s.readings[0, 0] = 9.9

    def test_axis_views(self):
        s = sample()
        assert np.array_equal(s.gx, s.readings[:, 0])
        assert np.array_equal(s.gz, s.readings[:, 2])


class TestStripTimestamps:
    def test_default_keeps_last_three_columns(self):
        rows = [[10.0, 0.1, 0.2, 0.3], [11.0, 0.4, 0.5, 0.6]]
        assert strip_timestamps(rows) == [(0.1, 0.2, 0.3), (0.4, 0.5, 0.6)]

    def test_explicit_columns(self):
        rows = [[0.1, 99.0, 0.2, 0.3]]
        assert strip_timestamps(rows, [1]) == [(0.1, 0.2, 0.3)]

    def test_values_pass_through_bit_identical(self):
        v = 0.1 + 0.2  # not exactly representable as 0.3
        out = strip_timestamps([[1.0, v, 2.0, 3.0]])
        assert out[0][0] == v

    def test_three_column_rows_need_no_stripping(self):
        rows = [[1.0, 2.0, 3.0]]
        assert strip_timestamps(rows) == [(1.0, 2.0, 3.0)]
        assert strip_timestamps(rows, []) == [(1.0, 2.0, 3.0)]

    def test_non_monotone_timestamps_warn_but_keep_order(self):
        rows = [[5.0, 1.0, 1.0, 1.0], [3.0, 2.0, 2.0, 2.0]]
        with pytest.warns(UserWarning, match="non-monotone"):
            out = strip_timestamps(rows)
        assert out == [(1.0, 1.0, 1.0), (2.0, 2.0, 2.0)]

    def test_empty_input(self):
        assert strip_timestamps([]) == []

    def test_ragged_rows_rejected(self):
        with pytest.raises(ValueError, match="columns"):
            strip_timestamps([[1.0, 2.0, 3.0, 4.0], [1.0, 2.0, 3.0]])

    def test_wrong_residual_width_rejected(self):
        with pytest.raises(ValueError):
            strip_timestamps([[1.0, 2.0]], [0])
        with pytest.raises(ValueError):
            strip_timestamps([[1.0, 2.0, 3.0, 4.0, 5.0]], [0])


class TestDataset:
    def test_meta_derivation(self):
        samples = [
            sample(user=u, gesture=g, trial=t, day=d)
            for u in (1, 2) for g in (1, 2, 3) for t in (1, 2) for d in (1, 2)
        ]
        ds = Dataset.from_samples(samples)
        assert ds.meta.users == 2
        assert ds.meta.gestures == 3
        assert ds.meta.samples_per_gesture == 2
        assert ds.meta.days == 2
        assert ds.meta.total_samples == 24
        assert ds.meta.summary() == "U=2 N_G=3 S_G=2 N_D=2 N_GS=24"

    def test_dayless_meta(self):
        ds = Dataset.from_samples([sample(gesture=g, trial=t)
                                   for g in (1, 2) for t in (1, 2)])
        assert ds.meta.days is None
        assert "N_D=-" in ds.meta.summary()

    def test_duplicate_identity_rejected(self):
        with pytest.raises(DataError, match="duplicate"):
            Dataset.from_samples([sample(), sample()])

    def test_sparse_user_ids_rejected(self):
        with pytest.raises(DataError, match="dense"):
            Dataset.from_samples([sample(user=1), sample(user=3)])

    def test_sparse_gesture_ids_rejected(self):
        with pytest.raises(DataError, match="dense"):
            Dataset.from_samples([sample(gesture=2)])

    def test_partial_day_labels_rejected(self):
        with pytest.raises(DataError, match="day"):
            Dataset.from_samples([sample(trial=1, day=1), sample(trial=2)])

    def test_unbalanced_grid_warns_and_counts(self):
        samples = [sample(gesture=1, trial=t) for t in (1, 2, 3)]
        samples.append(sample(gesture=2, trial=1))
        with pytest.warns(UserWarning, match="unbalanced"):
            ds = Dataset.from_samples(samples)
        assert ds.per_cell_counts() == {(1, 1): 3, (1, 2): 1}

    def test_empty_dataset(self):
        ds = Dataset.from_samples([])
        assert ds.meta.total_samples == 0
        assert ds.samples == ()


class TestManifestRoundTrip:
    def make_dataset(self):
        return Dataset.from_samples([
            sample(user=u, gesture=g, trial=t, n=4 + t)
            for u in (1, 2) for g in (1, 2) for t in (1, 2, 3)
        ])

    def test_save_load_is_bit_identical(self, tmp_path):
        ds = self.make_dataset()
        manifest = save_manifest(ds, tmp_path / "out")
        back = load_manifest(manifest)
        assert back.meta == ds.meta
        for a, b in zip(ds.samples, back.samples):
            assert a.identity == b.identity
            assert np.array_equal(a.readings, b.readings)

    def test_resave_is_byte_identical(self, tmp_path):
        ds = self.make_dataset()
        m1 = save_manifest(ds, tmp_path / "a")
        m2 = save_manifest(load_manifest(m1), tmp_path / "b")
        assert m1.read_bytes() == m2.read_bytes()
        for s in load_manifest(m1).samples:
            rel = f"samples/u{s.user:02d}_g{s.gesture:02d}_t{s.trial:03d}.csv"
            assert (tmp_path / "a" / rel).read_bytes() == (
                tmp_path / "b" / rel
            ).read_bytes()

    def test_day_column_round_trip(self, tmp_path):
        ds = Dataset.from_samples([sample(trial=t, day=d)
                                   for t in (1, 2) for d in (1, 2)])
        back = load_manifest(save_manifest(ds, tmp_path))
        assert [s.day for s in back.samples] == [1, 2, 1, 2]

    def test_missing_manifest(self, tmp_path):
        with pytest.raises(DataError, match="not found"):
            load_manifest(tmp_path / "nope.csv")

    def test_bad_header(self, tmp_path):
        p = tmp_path / "m.csv"
        p.write_text("user,gesture,trial\n")
        with pytest.raises(DataError, match="header"):
            load_manifest(p)

    def test_malformed_row_reports_line(self, tmp_path):
        p = tmp_path / "m.csv"
        p.write_text("user,gesture,trial,day,file\nx,1,1,,f.csv\n")
        with pytest.raises(DataError, match=r"m\.csv:2"):
            load_manifest(p)

    def test_missing_sample_file(self, tmp_path):
        p = tmp_path / "m.csv"
        p.write_text("user,gesture,trial,day,file\n1,1,1,,gone.csv\n")
        with pytest.raises(DataError, match="not found"):
            load_manifest(p)

    def test_short_sample_rejected(self, tmp_path):
        (tmp_path / "s.csv").write_text("gx,gy,gz\n1,2,3\n4,5,6\n")
        p = tmp_path / "m.csv"
        p.write_text("user,gesture,trial,day,file\n1,1,1,,s.csv\n")
        with pytest.raises(DataError, match="too short"):
            load_manifest(p)

    def test_malformed_sample_value_reports_file_line(self, tmp_path):
        (tmp_path / "s.csv").write_text(
            "gx,gy,gz\n1,2,3\n1,oops,3\n1,2,3\n1,2,3\n"
        )
        p = tmp_path / "m.csv"
        p.write_text("user,gesture,trial,day,file\n1,1,1,,s.csv\n")
        with pytest.raises(DataError, match=r"s\.csv:3"):
            load_manifest(p)


class TestUwaveAdapter:
    def test_loads_tree(self, make_uwave_tree):
        root = make_uwave_tree(users=2, days=2, gestures=3, trials=2)
        ds = load_uwave_tree(root)
        assert ds.meta.summary() == "U=2 N_G=3 S_G=2 N_D=2 N_GS=24"
        assert all(s.day in (1, 2) for s in ds.samples)

    def test_ordering_is_deterministic(self, make_uwave_tree):
        root = make_uwave_tree()
        a = load_uwave_tree(root)
        b = load_uwave_tree(root)
        assert [s.identity for s in a.samples] == [s.identity for s in b.samples]
        ids = [(s.user, s.day, s.gesture, s.trial) for s in a.samples]
        assert ids == sorted(ids)

    def test_unmatched_txt_file_rejected(self, make_uwave_tree):
        root = make_uwave_tree()
        (root / "U1" / "stray.txt").write_text("1 2 3\n")
        with pytest.raises(DataError, match="does not match"):
            load_uwave_tree(root)

    def test_non_sample_files_ignored(self, make_uwave_tree):
        root = make_uwave_tree()
        (root / "README.md").write_text("notes\n")
        load_uwave_tree(root)  # no error

    def test_empty_tree_rejected(self, tmp_path):
        (tmp_path / "empty").mkdir()
        with pytest.raises(DataError, match="no sample files"):
            load_uwave_tree(tmp_path / "empty")

    def test_malformed_row_reports_file_and_line(self, make_uwave_tree):
        root = make_uwave_tree()
        victim = root / "U1" / "1" / "1-1.txt"
        lines = victim.read_text().splitlines()
        lines[4] = "1.0 bad 3.0"
        victim.write_text("\n".join(lines) + "\n")
        with pytest.raises(DataError, match=r"1-1\.txt:5"):
            load_uwave_tree(root)


class TestSonyAdapter:
    def test_loads_tree_and_strips_timestamps(self, make_sony_tree):
        root = make_sony_tree(users=2, gestures=2, trials=2, n=10)
        ds = load_sony_tree(root)
        assert ds.meta.summary() == "U=2 N_G=2 S_G=2 N_D=- N_GS=8"
        assert all(s.day is None for s in ds.samples)
        assert all(s.n == 10 for s in ds.samples)
        # g-values must be in plausible range, not timestamp magnitudes
        assert max(float(np.max(np.abs(s.readings))) for s in ds.samples) < 50

    def test_g_values_bit_identical_to_source(self, make_sony_tree):
        root = make_sony_tree(users=1, gestures=1, trials=1, n=5)
        raw = (root / "U1" / "1-1.txt").read_text().splitlines()
        want = [tuple(float(v) for v in line.split()[3:]) for line in raw]
        ds = load_sony_tree(root)
        got = [tuple(r) for r in ds.samples[0].readings.tolist()]
        assert got == want


class TestAdapterConfig:
    def test_pattern_must_name_captures(self):
        with pytest.raises(ValueError, match="captures"):
            AdapterConfig(path_pattern=r"(?P<user>\d+)\.txt")

    def test_load_from_json(self, tmp_path):
        p = tmp_path / "adapter.json"
        p.write_text(json.dumps({
            "path_pattern": r"(?P<user>\d+)/(?P<gesture>\d+)-(?P<trial>\d+)\.dat",
            "timestamp_columns": [0],
            "sample_suffix": ".dat",
        }))
        cfg = load_adapter_config(p)
        assert cfg.timestamp_columns == (0,)
        assert cfg.sample_suffix == ".dat"

    def test_custom_config_drives_tree_loading(self, tmp_path):
        cfg = AdapterConfig(
            path_pattern=r"(?P<user>\d+)/(?P<gesture>\d+)-(?P<trial>\d+)\.dat",
            timestamp_columns=(0,),
            sample_suffix=".dat",
        )
        d = tmp_path / "tree" / "1"
        d.mkdir(parents=True)
        rows = "\n".join(f"{i} 0.1 0.2 0.3" for i in range(6))
        (d / "1-1.dat").write_text(rows + "\n")
        from gestrec.data import load_sample_tree

        ds = load_sample_tree(tmp_path / "tree", cfg)
        assert ds.samples[0].n == 6
        assert ds.samples[0].readings[0].tolist() == [0.1, 0.2, 0.3]

    def test_unknown_keys_rejected(self, tmp_path):
        p = tmp_path / "adapter.json"
        p.write_text(json.dumps({"path_pattern": "x", "bogus": 1}))
        with pytest.raises(DataError, match="unknown"):
            load_adapter_config(p)

    def test_invalid_json_rejected(self, tmp_path):
        p = tmp_path / "adapter.json"
        p.write_text("{not json")
        with pytest.raises(DataError, match="JSON"):
            load_adapter_config(p)

    def test_builtin_patterns_compile(self):
        assert UWAVE_ADAPTER.timestamp_columns == ()
        assert SONY_ADAPTER.timestamp_columns == (0, 1, 2)


class TestBalanceObservation:
    def test_loader_observes_rather_than_assumes_balance(self, make_uwave_tree):
        root = make_uwave_tree(users=2, days=1, gestures=2, trials=2)
        (root / "U2" / "1" / "2-2.txt").unlink()
        with pytest.warns(UserWarning, match="unbalanced"):
            ds = load_uwave_tree(root)
        counts = ds.per_cell_counts()
        assert counts[(2, 2)] == 1
        assert counts[(1, 1)] == 2
