"""From-scratch classifiers over the fixed gesture feature vector."""

from .boosting import GradientBoostingClassifier
from .extra_trees import ExtraTreesClassifier
from .ridge import RidgeClassifier
from .store import FORMAT_TAG, load_model, save_model

__all__ = [
    "ExtraTreesClassifier",
    "GradientBoostingClassifier",
    "RidgeClassifier",
    "save_model",
    "load_model",
    "FORMAT_TAG",
    "CLASSIFIER_KINDS",
    "make_classifier",
]

CLASSIFIER_KINDS = {
    "et": ExtraTreesClassifier,
    "gb": GradientBoostingClassifier,
    "rc": RidgeClassifier,
}


def make_classifier(kind: str, seed: int = 0, **hyper):
    """Build a default-configured classifier by short name (et, gb, rc)."""
    try:
        cls = CLASSIFIER_KINDS[kind]
    except KeyError:
        raise ValueError(
            f"unknown classifier {kind!r}, expected one of {sorted(CLASSIFIER_KINDS)}"
        ) from None
    return cls(seed=seed, **hyper)
