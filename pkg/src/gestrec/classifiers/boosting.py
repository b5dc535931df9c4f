"""Gradient boosting with softmax loss for gesture classification.

Scores start at the per-class log-priors. Each stage fits one exact
greedy regression tree per class to that class's residual (one-hot minus
softmax probability); leaf values are a single Newton step
``sum(residual) / sum(p * (1 - p))`` over the leaf's rows, and enter the
score with a ``learning_rate`` factor. The training log-loss is checked
to be non-increasing stage over stage while fitting.

Trees are depth-limited and rectangular, so prediction flattens the
whole ensemble into index arrays and routes samples with ``max_depth``
vectorized gather steps instead of per-node pointer chasing.
"""

from __future__ import annotations

import numpy as np

from ..errors import NumericError
from ..features import FEATURE_ORDER_VERSION
from .cart import Node, apply_tree, build_regression_tree

__all__ = ["GradientBoostingClassifier"]

# Tolerance for the non-increasing training-loss assertion; pure float
# noise on an already converged fit must not trip it.
_LOSS_SLACK = 1e-9


def _softmax(scores: np.ndarray) -> np.ndarray:
    z = scores - scores.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True)


def _log_loss(scores: np.ndarray, y_idx: np.ndarray) -> float:
    z = scores - scores.max(axis=1, keepdims=True)
    log_p = z - np.log(np.exp(z).sum(axis=1, keepdims=True))
    return float(-log_p[np.arange(len(y_idx)), y_idx].mean())


class _FlatTrees:
    """All stage trees as padded arrays for vectorized routing.

    Leaves point to themselves, so stepping ``max_depth`` times parks
    every sample at its leaf regardless of the leaf's actual depth.
    """

    def __init__(self, trees: list[Node], max_depth: int):
        flat = [self._flatten(t) for t in trees]
        width = max(len(f) for f in flat)
        t = len(flat)
        self.feature = np.zeros((t, width), dtype=np.intp)
        self.threshold = np.zeros((t, width))
        self.left = np.zeros((t, width), dtype=np.intp)
        self.right = np.zeros((t, width), dtype=np.intp)
        self.value = np.zeros((t, width))
        self.steps = max_depth
        self.n_trees = t
        for i, nodes in enumerate(flat):
            for j, (f, thr, l, r, v) in enumerate(nodes):
                self.feature[i, j] = max(f, 0)
                self.threshold[i, j] = thr
                self.left[i, j] = l
                self.right[i, j] = r
                self.value[i, j] = v
        # Flat (tree, node) -> row offsets so routing can gather once.
        base = np.arange(t, dtype=np.intp) * width
        self._feature = self.feature.ravel()
        self._threshold = self.threshold.ravel()
        self._left = (self.left + base[:, None]).ravel()
        self._right = (self.right + base[:, None]).ravel()
        self._value = self.value.ravel()
        self._start = base

    @staticmethod
    def _flatten(root: Node) -> list[tuple]:
        nodes: list[tuple] = []

        def visit(node: Node) -> int:
            j = len(nodes)
            nodes.append(None)
            if node.feature < 0:
                nodes[j] = (-1, 0.0, j, j, float(node.value))
            else:
                l = visit(node.left)
                r = visit(node.right)
                nodes[j] = (node.feature, node.threshold, l, r, 0.0)
            return j

        visit(root)
        return nodes

    def apply_one(self, x: np.ndarray) -> np.ndarray:
        pos = self._start
        for _ in range(self.steps):
            go_left = x[self._feature[pos]] <= self._threshold[pos]
            pos = np.where(go_left, self._left[pos], self._right[pos])
        return self._value[pos]


class GradientBoostingClassifier:
    """Stagewise additive softmax-loss model over regression trees.

    Parameters
    ----------
    n_stages : int
        Boosting rounds; each adds one tree per class.
    learning_rate : float in (0, 1]
        Shrinkage applied to every leaf value.
    max_depth : int
        Depth cap of the per-stage regression trees.
    seed : int
        Recorded for provenance; the exact greedy fit is deterministic,
        so the seed never influences the model.
    """

    kind = "gradient_boosting"

    def __init__(
        self,
        n_stages: int = 100,
        learning_rate: float = 0.1,
        max_depth: int = 3,
        seed: int = 0,
    ):
        if n_stages < 1:
            raise ValueError("n_stages must be >= 1")
        if not 0.0 < learning_rate <= 1.0:
            raise ValueError("learning_rate must be in (0, 1]")
        if max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        self.n_stages = n_stages
        self.learning_rate = learning_rate
        self.max_depth = max_depth
        self.seed = seed
        self.feature_order_version = FEATURE_ORDER_VERSION
        self.classes_: np.ndarray | None = None
        self.n_features_: int | None = None
        self.initial_scores_: np.ndarray | None = None
        self.stages_: list[list[Node]] = []
        self._flat: _FlatTrees | None = None

    def fit(self, X, y) -> "GradientBoostingClassifier":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y)
        if X.ndim != 2 or X.shape[0] != y.shape[0]:
            raise ValueError("X must be (n, d) with one label per row")
        n = X.shape[0]
        if n < 2:
            raise ValueError("need at least 2 training rows")
        self.classes_, y_idx = np.unique(y, return_inverse=True)
        self.n_features_ = X.shape[1]
        k = len(self.classes_)

        # Every class in classes_ occurs in y, so all priors are positive.
        priors = np.bincount(y_idx, minlength=k) / n
        self.initial_scores_ = np.log(priors)
        onehot = np.zeros((n, k))
        onehot[np.arange(n), y_idx] = 1.0

        scores = np.tile(self.initial_scores_, (n, 1))
        loss = _log_loss(scores, y_idx)
        self.stages_ = []
        for stage in range(self.n_stages):
            p = _softmax(scores)
            residual = onehot - p
            stage_trees: list[Node] = []
            for c in range(k):
                r_c = residual[:, c]
                pq = p[:, c] * (1.0 - p[:, c])

                def newton_leaf(idx, r_c=r_c, pq=pq) -> float:
                    denom = pq[idx].sum()
                    if denom <= 0.0:
                        return 0.0
                    return r_c[idx].sum() / denom

                tree = build_regression_tree(X, r_c, self.max_depth, newton_leaf)
                stage_trees.append(tree)
                scores[:, c] += self.learning_rate * np.array(
                    [apply_tree(tree, x) for x in X]
                )
            self.stages_.append(stage_trees)
            new_loss = _log_loss(scores, y_idx)
            if new_loss > loss + _LOSS_SLACK:
                raise NumericError(
                    f"training log-loss increased at stage {stage + 1}: "
                    f"{loss:.12g} -> {new_loss:.12g}"
                )
            loss = new_loss
        self._rebuild_flat()
        return self

    def _rebuild_flat(self):
        trees = [t for stage in self.stages_ for t in stage]
        self._flat = _FlatTrees(trees, self.max_depth)

    def decision_function(self, X) -> np.ndarray:
        if self.initial_scores_ is None:
            raise ValueError("classifier is not fitted")
        X = np.asarray(X, dtype=np.float64)
        single = X.ndim == 1
        if single:
            X = X[None, :]
        if X.shape[1] != self.n_features_:
            raise ValueError(
                f"expected {self.n_features_} features, got {X.shape[1]}"
            )
        k = len(self.classes_)
        out = np.tile(self.initial_scores_, (X.shape[0], 1))
        for i, x in enumerate(X):
            leaf_vals = self._flat.apply_one(x)
            out[i] += self.learning_rate * leaf_vals.reshape(self.n_stages, k).sum(
                axis=0
            )
        return out[0] if single else out

    def staged_scores(self, X) -> np.ndarray:
        """Scores after each stage, shape (n_stages, n, n_classes).

        Exposes the additive recursion itself so it can be checked
        stage by stage against an independent reference.
        """
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        k = len(self.classes_)
        scores = np.tile(self.initial_scores_, (X.shape[0], 1))
        out = np.empty((self.n_stages, X.shape[0], k))
        for s, stage in enumerate(self.stages_):
            for c, tree in enumerate(stage):
                scores[:, c] += self.learning_rate * np.array(
                    [apply_tree(tree, x) for x in X]
                )
            out[s] = scores
        return out

    def predict(self, X):
        scores = self.decision_function(X)
        if scores.ndim == 1:
            return self.classes_[int(np.argmax(scores))]
        return self.classes_[np.argmax(scores, axis=1)]
