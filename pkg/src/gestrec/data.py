"""Gesture dataset model: types, canonical manifest I/O, raw-tree adapters.

A gesture sample is an ordered sequence of tri-axial accelerometer
g-values with a (user, gesture, trial[, day]) identity. The only
preprocessing applied anywhere is removal of timestamp columns; g-values
pass through bit-identical and sequences keep their natural lengths.

The canonical on-disk layout is a UTF-8 manifest CSV with header
``user,gesture,trial,day,file`` where ``file`` points to a per-sample CSV
(header ``gx,gy,gz``, one row per reading). Raw uWave- and Sony-style
trees are translated into this form by pattern-configured adapters.
"""

from __future__ import annotations

import csv
import json
import re
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DataError

__all__ = [
    "AxisTriple",
    "GestureSample",
    "DatasetMeta",
    "Dataset",
    "AdapterConfig",
    "UWAVE_ADAPTER",
    "SONY_ADAPTER",
    "strip_timestamps",
    "load_manifest",
    "save_manifest",
    "load_sample_tree",
    "load_uwave_tree",
    "load_sony_tree",
    "load_adapter_config",
]

# One accelerometer reading: (gx, gy, gz) in g-units.
AxisTriple = tuple[float, float, float]

# Fourth moments and lagged correlation need at least this many readings.
MIN_READINGS = 4

MANIFEST_HEADER = ["user", "gesture", "trial", "day", "file"]
SAMPLE_HEADER = ["gx", "gy", "gz"]


@dataclass(frozen=True)
class GestureSample:
    """One variable-length tri-axial gesture recording."""

    user: int
    gesture: int
    trial: int
    readings: np.ndarray  # (n, 3) float64, read-only
    day: int | None = None

    def __post_init__(self):
        r = np.asarray(self.readings, dtype=np.float64)
        if r.ndim != 2 or r.shape[1] != 3:
            raise ValueError(f"readings must have shape (n, 3), got {r.shape}")
        if r.shape[0] < MIN_READINGS:
            raise ValueError(
                f"sample too short: {r.shape[0]} readings < {MIN_READINGS}"
            )
        if not np.isfinite(r).all():
            raise ValueError("readings contain non-finite values")
        r = r.copy()
        r.flags.writeable = False
        object.__setattr__(self, "readings", r)
        for name in ("user", "gesture", "trial"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.day is not None and self.day < 1:
            raise ValueError("day must be >= 1 when present")

    @property
    def n(self) -> int:
        return self.readings.shape[0]

    @property
    def gx(self) -> np.ndarray:
        return self.readings[:, 0]

    @property
    def gy(self) -> np.ndarray:
        return self.readings[:, 1]

    @property
    def gz(self) -> np.ndarray:
        return self.readings[:, 2]

    @property
    def identity(self) -> tuple:
        return (self.user, self.gesture, self.trial, self.day)


@dataclass(frozen=True)
class DatasetMeta:
    """Dataset attribute counts: U users, N_G gestures, S_G samples per
    gesture cell, optional N_D days, and the loaded sample total."""

    users: int
    gestures: int
    samples_per_gesture: int
    total_samples: int
    days: int | None = None

    def summary(self) -> str:
        nd = str(self.days) if self.days is not None else "-"
        return (
            f"U={self.users} N_G={self.gestures} S_G={self.samples_per_gesture} "
            f"N_D={nd} N_GS={self.total_samples}"
        )


@dataclass(frozen=True)
class Dataset:
    """Ordered, immutable collection of gesture samples plus counts."""

    meta: DatasetMeta
    samples: tuple[GestureSample, ...]

    @staticmethod
    def from_samples(samples: Iterable[GestureSample]) -> "Dataset":
        """Build a dataset, derive its meta counts and check invariants:
        unique identities, user and gesture ids dense from 1."""
        samples = tuple(samples)
        seen = set()
        for s in samples:
            if s.identity in seen:
                raise DataError(
                    f"duplicate sample identity (user={s.user}, gesture={s.gesture},"
                    f" trial={s.trial}, day={s.day})"
                )
            seen.add(s.identity)
        if not samples:
            return Dataset(DatasetMeta(0, 0, 0, 0, None), samples)

        users = sorted({s.user for s in samples})
        gestures = sorted({s.gesture for s in samples})
        if users != list(range(1, users[-1] + 1)):
            raise DataError(f"user ids are not dense in 1..{users[-1]}: {users}")
        if gestures != list(range(1, gestures[-1] + 1)):
            raise DataError(
                f"gesture ids are not dense in 1..{gestures[-1]}: {gestures}"
            )
        days = [s.day for s in samples if s.day is not None]
        n_days = max(days) if days else None
        if days and len(days) != len(samples):
            raise DataError("day index present on some samples but not all")

        meta = DatasetMeta(
            users=users[-1],
            gestures=gestures[-1],
            samples_per_gesture=max(s.trial for s in samples),
            total_samples=len(samples),
            days=n_days,
        )
        expected = meta.users * meta.gestures * meta.samples_per_gesture
        if n_days is not None:
            expected *= n_days
        if expected != meta.total_samples:
            warnings.warn(
                f"sample total {meta.total_samples} does not match the balanced "
                f"grid U*N_G*S_G{'*N_D' if n_days else ''} = {expected}; "
                "per-cell counts are unbalanced",
                stacklevel=3,
            )
        return Dataset(meta, samples)

    def per_cell_counts(self) -> dict[tuple[int, int], int]:
        """Actual sample count per (user, gesture) cell; balance across
        cells is observed, never assumed."""
        counts: dict[tuple[int, int], int] = {}
        for s in self.samples:
            key = (s.user, s.gesture)
            counts[key] = counts.get(key, 0) + 1
        return counts


def strip_timestamps(
    raw_rows: Sequence[Sequence[float]],
    timestamp_columns: Sequence[int] | None = None,
) -> list[AxisTriple]:
    """Drop timestamp columns, keeping g-values bit-identical and in order.

    ``timestamp_columns`` gives the indices to remove; None means every
    column except the last three. Non-monotone timestamps only warn:
    reordering would alter the g-value sequence, which is not permitted.
    """
    rows = [tuple(float(v) for v in row) for row in raw_rows]
    if not rows:
        return []

    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ValueError(f"row {i} has {len(row)} columns, expected {width}")

    if timestamp_columns is None:
        if width < 3:
            raise ValueError(f"rows have {width} columns, need at least 3")
        ts_cols = list(range(width - 3))
    else:
        ts_cols = sorted(set(int(c) for c in timestamp_columns))
        if any(c < 0 or c >= width for c in ts_cols):
            raise ValueError(f"timestamp column out of range for width {width}")
        if width - len(ts_cols) != 3:
            raise ValueError(
                f"{width} columns minus {len(ts_cols)} timestamps leaves "
                f"{width - len(ts_cols)}, expected exactly 3 g-value columns"
            )

    if ts_cols:
        t0 = ts_cols[0]
        stamps = [row[t0] for row in rows]
        if any(b < a for a, b in zip(stamps, stamps[1:])):
            warnings.warn(
                "non-monotone timestamps; row order preserved as given",
                stacklevel=2,
            )

    keep = [c for c in range(width) if c not in ts_cols]
    return [(row[keep[0]], row[keep[1]], row[keep[2]]) for row in rows]


def _read_sample_csv(path: Path) -> np.ndarray:
    if not path.is_file():
        raise DataError("sample file not found", path=path)
    triples: list[AxisTriple] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError("empty sample file", path=path) from None
        if [h.strip() for h in header] != SAMPLE_HEADER:
            raise DataError(
                f"bad sample header {header!r}, expected {SAMPLE_HEADER}",
                path=path,
                line=1,
            )
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise DataError(
                    f"expected 3 columns, got {len(row)}", path=path, line=lineno
                )
            try:
                triples.append((float(row[0]), float(row[1]), float(row[2])))
            except ValueError:
                raise DataError(
                    f"malformed g-value in {row!r}", path=path, line=lineno
                ) from None
    return np.array(triples, dtype=np.float64).reshape(len(triples), 3)


def _make_sample(user, gesture, trial, day, readings, path, line=None) -> GestureSample:
    try:
        return GestureSample(
            user=user, gesture=gesture, trial=trial, day=day, readings=readings
        )
    except ValueError as exc:
        raise DataError(str(exc), path=path, line=line) from None


def load_manifest(path) -> Dataset:
    """Load a canonical manifest CSV into a Dataset (manifest order)."""
    path = Path(path)
    if not path.is_file():
        raise DataError("manifest not found", path=path)
    base = path.parent
    samples: list[GestureSample] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError("empty manifest", path=path) from None
        if [h.strip() for h in header] != MANIFEST_HEADER:
            raise DataError(
                f"bad manifest header {header!r}, expected {MANIFEST_HEADER}",
                path=path,
                line=1,
            )
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 5:
                raise DataError(
                    f"expected 5 columns, got {len(row)}", path=path, line=lineno
                )
            try:
                user = int(row[0])
                gesture = int(row[1])
                trial = int(row[2])
                day = int(row[3]) if row[3].strip() else None
            except ValueError:
                raise DataError(
                    f"malformed identity in {row!r}", path=path, line=lineno
                ) from None
            readings = _read_sample_csv(base / row[4])
            samples.append(
                _make_sample(user, gesture, trial, day, readings, path, lineno)
            )
    try:
        return Dataset.from_samples(samples)
    except DataError as exc:
        raise DataError(f"{exc} (while loading manifest)", path=path) from None


def _sample_filename(s: GestureSample) -> str:
    name = f"u{s.user:02d}_g{s.gesture:02d}_t{s.trial:03d}"
    if s.day is not None:
        name += f"_d{s.day:02d}"
    return name + ".csv"


def save_manifest(dataset: Dataset, out_dir) -> Path:
    """Write a Dataset as manifest.csv plus per-sample CSVs under
    ``samples/``. Floats are written with shortest round-trip repr, so a
    save/load cycle is bit-identical and re-saving is byte-identical.
    """
    out_dir = Path(out_dir)
    sample_dir = out_dir / "samples"
    sample_dir.mkdir(parents=True, exist_ok=True)
    manifest = out_dir / "manifest.csv"
    with open(manifest, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(",".join(MANIFEST_HEADER) + "\n")
        for s in dataset.samples:
            rel = f"samples/{_sample_filename(s)}"
            day = "" if s.day is None else str(s.day)
            fh.write(f"{s.user},{s.gesture},{s.trial},{day},{rel}\n")
            with open(out_dir / rel, "w", newline="\n", encoding="utf-8") as sf:
                sf.write(",".join(SAMPLE_HEADER) + "\n")
                for gx, gy, gz in s.readings.tolist():
                    sf.write(f"{gx!r},{gy!r},{gz!r}\n")
    return manifest


@dataclass(frozen=True)
class AdapterConfig:
    """Pattern configuration translating a raw sample tree to the
    canonical form.

    ``path_pattern`` is a regex matched against each sample file's
    POSIX-style path relative to the tree root, with named captures
    ``user``, ``gesture``, ``trial`` and optionally ``day``.
    ``timestamp_columns`` are the column indices removed from every raw
    row. Files whose name ends in ``sample_suffix`` must match the
    pattern; other files are ignored.
    """

    path_pattern: str
    timestamp_columns: tuple[int, ...] = ()
    sample_suffix: str = ".txt"
    delimiter: str = "whitespace"  # or a literal delimiter such as ","

    required_groups = ("user", "gesture", "trial")

    def __post_init__(self):
        groups = set(re.compile(self.path_pattern).groupindex)
        missing = [g for g in self.required_groups if g not in groups]
        if missing:
            raise ValueError(f"path_pattern lacks named captures: {missing}")


# Raw uWave-style tree: per-user directories of per-day directories of
# per-sample "x y z" text files, no timestamp columns.
UWAVE_ADAPTER = AdapterConfig(
    path_pattern=r"U(?P<user>\d+)/(?P<day>\d+)/(?P<gesture>\d+)-(?P<trial>\d+)\.txt",
)

# Raw Sony-style tree: per-user directories of per-sample text files whose
# rows carry three clock-source timestamps before the g-values.
SONY_ADAPTER = AdapterConfig(
    path_pattern=r"U(?P<user>\d+)/(?P<gesture>\d+)-(?P<trial>\d+)\.txt",
    timestamp_columns=(0, 1, 2),
)


def load_adapter_config(path) -> AdapterConfig:
    """Read an adapter config from a JSON key-value file."""
    path = Path(path)
    if not path.is_file():
        raise DataError("adapter config not found", path=path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DataError(f"invalid JSON: {exc}", path=path) from None
    known = {"path_pattern", "timestamp_columns", "sample_suffix", "delimiter"}
    unknown = set(raw) - known
    if unknown:
        raise DataError(f"unknown adapter config keys: {sorted(unknown)}", path=path)
    if "path_pattern" not in raw:
        raise DataError("adapter config must set path_pattern", path=path)
    raw["timestamp_columns"] = tuple(raw.get("timestamp_columns", ()))
    try:
        return AdapterConfig(**raw)
    except (ValueError, re.error) as exc:
        raise DataError(str(exc), path=path) from None


def _parse_raw_rows(path: Path, config: AdapterConfig) -> list[list[float]]:
    rows: list[list[float]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split() if config.delimiter == "whitespace" else line.split(
                config.delimiter
            )
            try:
                rows.append([float(p) for p in parts])
            except ValueError:
                raise DataError(
                    f"malformed row {line!r}", path=path, line=lineno
                ) from None
    if not rows:
        raise DataError("empty sample file", path=path)
    return rows


def load_sample_tree(root, config: AdapterConfig) -> Dataset:
    """Walk a raw sample tree and load every matching file.

    Samples are ordered by (user, day, gesture, trial), so two loads of
    the same tree always agree.
    """
    root = Path(root)
    if not root.is_dir():
        raise DataError("sample tree root not found", path=root)
    pattern = re.compile(config.path_pattern)
    matched: list[tuple[tuple, Path, dict]] = []
    for p in sorted(root.rglob("*")):
        if not p.is_file() or not p.name.endswith(config.sample_suffix):
            continue
        rel = p.relative_to(root).as_posix()
        m = pattern.fullmatch(rel)
        if m is None:
            raise DataError(
                f"file name does not match adapter pattern {config.path_pattern!r}",
                path=p,
            )
        groups = m.groupdict()
        ident = {k: int(v) for k, v in groups.items() if v is not None}
        key = (
            ident["user"],
            ident.get("day", 0),
            ident["gesture"],
            ident["trial"],
        )
        matched.append((key, p, ident))
    if not matched:
        raise DataError(f"no sample files matched under {root}")

    samples = []
    for _, path, ident in sorted(matched, key=lambda t: t[0]):
        raw = _parse_raw_rows(path, config)
        try:
            triples = strip_timestamps(raw, list(config.timestamp_columns))
        except ValueError as exc:
            raise DataError(str(exc), path=path) from None
        readings = np.array(triples, dtype=np.float64).reshape(len(triples), 3)
        samples.append(
            _make_sample(
                ident["user"],
                ident["gesture"],
                ident["trial"],
                ident.get("day"),
                readings,
                path,
            )
        )
    return Dataset.from_samples(samples)


def load_uwave_tree(root, config: AdapterConfig | None = None) -> Dataset:
    """Load a uWave-style raw tree (per-user/per-day directories)."""
    return load_sample_tree(root, config or UWAVE_ADAPTER)


def load_sony_tree(root, config: AdapterConfig | None = None) -> Dataset:
    """Load a Sony-style raw tree (multi-timestamp rows, no day level)."""
    return load_sample_tree(root, config or SONY_ADAPTER)
