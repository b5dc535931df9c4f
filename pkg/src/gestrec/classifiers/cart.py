"""Binary CART trees shared by the tree-ensemble classifiers.

Two builders live here. The classification builder draws candidate
splits at random (attribute subset plus one uniform threshold each) and
keeps the best Gini decrease; it grows nodes until pure or unsplittable
and stores class-probability leaves. The regression builder scans every
feature exactly, maximizing the least-squares gain with midpoint
thresholds, up to a fixed depth; leaf values come from a caller-supplied
function of the leaf's row indices.

The split predicate is ``x[feature] <= threshold`` goes left, everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Node",
    "apply_tree",
    "build_random_split_tree",
    "build_regression_tree",
    "tree_depth",
    "node_to_dict",
    "node_from_dict",
]


@dataclass(slots=True)
class Node:
    """Tree node; ``feature < 0`` marks a leaf carrying ``value``."""

    feature: int = -1
    threshold: float = 0.0
    left: "Node | None" = None
    right: "Node | None" = None
    value: object = None


def apply_tree(node: Node, x: np.ndarray):
    """Route one sample to its leaf and return the leaf value."""
    while node.feature >= 0:
        node = node.left if x[node.feature] <= node.threshold else node.right
    return node.value


def tree_depth(node: Node) -> int:
    if node.feature < 0:
        return 0
    return 1 + max(tree_depth(node.left), tree_depth(node.right))


def _gini(counts: np.ndarray, n: int) -> float:
    p = counts / n
    return 1.0 - float(p @ p)


def build_random_split_tree(
    X: np.ndarray,
    y: np.ndarray,
    n_classes: int,
    k_features: int,
    min_samples_split: int,
    rng: np.random.Generator,
) -> Node:
    """Grow a fully developed classification tree with randomized splits.

    At each node, ``k_features`` distinct attributes are drawn uniformly
    (constant ones simply yield no candidate), one threshold per
    attribute is drawn uniformly in the node-local [min, max), and the
    candidate with the largest Gini impurity decrease wins; ties keep
    the earliest candidate drawn. Leaves hold probability vectors.

    Parameters
    ----------
    X : (n, d) float array
    y : (n,) int array of class indices in [0, n_classes)
    """
    d = X.shape[1]
    k = min(k_features, d)

    def grow(idx: np.ndarray) -> Node:
        labels = y[idx]
        counts = np.bincount(labels, minlength=n_classes)
        n = idx.size
        if n < min_samples_split or counts.max() == n:
            return Node(value=counts / n)

        parent = _gini(counts, n)
        rows = X[idx]
        best_gain = 0.0
        best: tuple[int, float, np.ndarray] | None = None
        for f in rng.choice(d, size=k, replace=False):
            col = rows[:, f]
            lo = col.min()
            hi = col.max()
            if not lo < hi:
                continue
            thr = rng.uniform(lo, hi)
            if thr >= hi:  # uniform() can round up to hi
                thr = lo
            mask = col <= thr
            n_left = int(mask.sum())
            cl = np.bincount(labels[mask], minlength=n_classes)
            cr = counts - cl
            gain = parent - (
                n_left * _gini(cl, n_left) + (n - n_left) * _gini(cr, n - n_left)
            ) / n
            if gain > best_gain:
                best_gain = gain
                best = (int(f), float(thr), mask)
        if best is None:
            return Node(value=counts / n)
        f, thr, mask = best
        return Node(
            feature=f,
            threshold=thr,
            left=grow(idx[mask]),
            right=grow(idx[~mask]),
        )

    return grow(np.arange(X.shape[0]))


def build_regression_tree(
    X: np.ndarray,
    r: np.ndarray,
    max_depth: int,
    leaf_value,
) -> Node:
    """Grow an exact greedy least-squares regression tree.

    Every feature is scanned in index order; within a feature every
    boundary between distinct consecutive sorted values is scored by the
    squared-error decrease, with the threshold at the midpoint. Ties
    keep the lowest feature index and, within a feature, the smallest
    split position. Nodes with no strictly positive gain, or at
    ``max_depth``, become leaves with value ``leaf_value(row_indices)``.
    """

    def grow(idx: np.ndarray, depth: int) -> Node:
        n = idx.size
        if depth >= max_depth or n < 2:
            return Node(value=float(leaf_value(idx)))

        rows = X[idx]
        targets = r[idx]
        order = np.argsort(rows, axis=0, kind="stable")
        sorted_vals = np.take_along_axis(rows, order, axis=0)
        cs = np.cumsum(targets[order], axis=0)
        total = cs[-1, 0]

        # Gain of splitting after sorted position i (n_left = i + 1):
        # sum_L^2/n_L + sum_R^2/n_R - total^2/n, maximized.
        n_left = np.arange(1, n, dtype=np.float64)[:, None]
        sums_l = cs[:-1]
        gains = sums_l**2 / n_left + (total - sums_l) ** 2 / (n - n_left)
        gains -= total**2 / n
        gains[sorted_vals[:-1] == sorted_vals[1:]] = -np.inf

        per_feat_pos = np.argmax(gains, axis=0)
        per_feat_gain = gains[per_feat_pos, np.arange(rows.shape[1])]
        f = int(np.argmax(per_feat_gain))
        if not per_feat_gain[f] > 0.0:
            return Node(value=float(leaf_value(idx)))
        i = int(per_feat_pos[f])
        v1 = sorted_vals[i, f]
        v2 = sorted_vals[i + 1, f]
        thr = (v1 + v2) / 2.0
        if thr >= v2:  # midpoint rounded up between adjacent floats
            thr = v1
        mask = rows[:, f] <= thr
        return Node(
            feature=f,
            threshold=float(thr),
            left=grow(idx[mask], depth + 1),
            right=grow(idx[~mask], depth + 1),
        )

    return grow(np.arange(X.shape[0]), 0)


def node_to_dict(node: Node) -> dict:
    """Nested-dict form for model files; leaf values become lists or floats."""
    if node.feature < 0:
        v = node.value
        if isinstance(v, np.ndarray):
            return {"p": [float(x) for x in v]}
        return {"v": float(v)}
    return {
        "f": node.feature,
        "t": node.threshold,
        "l": node_to_dict(node.left),
        "r": node_to_dict(node.right),
    }


def node_from_dict(obj: dict) -> Node:
    if "f" in obj:
        return Node(
            feature=int(obj["f"]),
            threshold=float(obj["t"]),
            left=node_from_dict(obj["l"]),
            right=node_from_dict(obj["r"]),
        )
    if "p" in obj:
        return Node(value=np.array(obj["p"], dtype=np.float64))
    return Node(value=float(obj["v"]))
