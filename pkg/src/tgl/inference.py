"""Label inference for test nodes of a partially labeled citation graph.

The decision cascade per test node:

  1. neighbor stage: labels of cited nodes that belong to the extended
     training set (training plus validation), weighted by content similarity;
  2. peer stage: when no neighbor evidence exists, labels of a label-diverse
     pool of training peers, keeping only strictly positive weights;
  3. fallback: the most frequent training label with weight 1.0.

Exactly one stage decides each node, by weighted vote. Test labels are never
read during inference; they exist only to score accuracy afterwards.
"""

from __future__ import annotations

import math
import time
from collections import defaultdict
from dataclasses import dataclass
from itertools import islice, zip_longest
from typing import Iterable, NamedTuple, Optional, Sequence

from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from . import _parallel
from .gff import Dataset, NodeRecord
from .similarity import (
    DEFAULT_FOREST_SPLIT_DEPTH,
    DEFAULT_MAX_TERMLET_SIZE,
    MEASURES,
    check_measure,
    score,
)

NEIGHBOR_KINDS = ("plain", "diverse", "none")


class EmptyTrainingSetError(ValueError):
    """No training or validation records to learn from."""


class EmptyTestSetError(ValueError):
    """Nothing to evaluate."""


class EmptyEvidenceError(ValueError):
    """A vote was requested over an empty evidence list."""


class UnknownNodeError(KeyError):
    """Node id not present in the dataset."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown node"


class NotATestNodeError(ValueError):
    """Inference only applies to test-split nodes."""


@dataclass(frozen=True)
class Params:
    """Run configuration for the inference cascade."""

    similarity: str = "jaccard_node"
    max_neighbor_nodes: int = 100
    max_peer_nodes: int = 4
    neighbor_kind: str = "plain"
    max_termlet_size: int = DEFAULT_MAX_TERMLET_SIZE
    forest_split_depth: int = DEFAULT_FOREST_SPLIT_DEPTH

    def __post_init__(self):
        check_measure(self.similarity)
        if self.neighbor_kind not in NEIGHBOR_KINDS:
            raise ValueError(
                f"unknown neighbor kind {self.neighbor_kind!r}; choose from {', '.join(NEIGHBOR_KINDS)}"
            )
        for name in ("max_neighbor_nodes", "max_peer_nodes", "max_termlet_size", "forest_split_depth"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")

    def as_dict(self) -> dict:
        return {
            "similarity": self.similarity,
            "max_neighbor_nodes": self.max_neighbor_nodes,
            "max_peer_nodes": self.max_peer_nodes,
            "neighbor_kind": self.neighbor_kind,
            "max_termlet_size": self.max_termlet_size,
            "forest_split_depth": self.forest_split_depth,
        }


class WeightedLabel(NamedTuple):
    label: int
    weight: float


@dataclass(frozen=True)
class PeerPool:
    """Training node ids grouped by label, capped per label, ids ascending."""

    by_label: dict[int, tuple[int, ...]]

    def __len__(self) -> int:
        return sum(len(v) for v in self.by_label.values())

    def ids(self) -> Iterable[int]:
        """Pooled ids, ascending by label then by id."""
        for label in sorted(self.by_label):
            yield from self.by_label[label]


class EvalResult(NamedTuple):
    accuracy: float
    correct: int
    total: int
    elapsed: float


def extended_training_ids(d: Dataset) -> frozenset[int]:
    """Training and validation ids merged; test ids are never included."""
    return frozenset(d.tr_ids).union(d.va_ids)


def most_freq_class(d: Dataset) -> int:
    """Most frequent label over the extended training set, ties to the smallest."""
    if not d.label_histogram:
        raise EmptyTrainingSetError("no training or validation records")
    return max(d.label_histogram.items(), key=lambda kv: (kv[1], -kv[0]))[0]


def select_diverse_peers(d: Dataset, p: Params) -> PeerPool:
    """First max_peer_nodes extended-training ids per label, ascending by id."""
    by_label: dict[int, list[int]] = {}
    for i in sorted(d.tr_ids + d.va_ids):
        label = d[i].label
        bucket = by_label.setdefault(label, [])
        if len(bucket) < p.max_peer_nodes:
            bucket.append(i)
    return PeerPool({y: tuple(v) for y, v in sorted(by_label.items())})


def _diverse_order(records: Sequence[NodeRecord]) -> list[NodeRecord]:
    """Round-robin over label buckets, ascending label, stable within bucket."""
    buckets: dict[int, list[NodeRecord]] = {}
    for rec in records:
        buckets.setdefault(rec.label, []).append(rec)
    ordered = []
    for round_ in zip_longest(*(buckets[y] for y in sorted(buckets))):
        ordered.extend(rec for rec in round_ if rec is not None)
    return ordered


def neighbor_evidence(
    d: Dataset, node: NodeRecord, p: Params, *, ext_ids: Optional[frozenset[int]] = None
) -> list[WeightedLabel]:
    """Weighted labels of the node's extended-training neighbors.

    Neighbors are visited in stored order (round-robin across labels when
    neighbor_kind is diverse) and emission stops at max_neighbor_nodes pairs.
    Zero weights are kept: a dissimilar neighbor still occupies the stage.
    """
    if p.neighbor_kind == "none":
        raise ValueError("neighbor stage is disabled by neighbor_kind=none")
    if ext_ids is None:
        ext_ids = extended_training_ids(d)
    qualifying = [d[m] for m in node.neighbors if m in ext_ids]
    if p.neighbor_kind == "diverse":
        qualifying = _diverse_order(qualifying)
    return [
        WeightedLabel(rec.label, score(p.similarity, node.content, rec.content, p))
        for rec in islice(qualifying, p.max_neighbor_nodes)
    ]


def peer_evidence(d: Dataset, node: NodeRecord, pool: PeerPool, p: Params) -> list[WeightedLabel]:
    """Weighted labels of pooled peers, keeping strictly positive weights only."""
    out = []
    for pid in pool.ids():
        rec = d[pid]
        w = score(p.similarity, node.content, rec.content, p)
        if w > 0:
            out.append(WeightedLabel(rec.label, w))
    return out


def vote_for_best_label(evidence: Sequence[WeightedLabel]) -> int:
    """Label with the greatest total weight; ties go to the greatest label."""
    if not evidence:
        raise EmptyEvidenceError("cannot vote over empty evidence")
    groups: dict[int, list[float]] = defaultdict(list)
    for label, weight in evidence:
        groups[label].append(weight)
    # fsum is exactly rounded, so totals do not depend on evidence order.
    return max(groups.items(), key=lambda kv: (math.fsum(kv[1]), kv[0]))[0]


def infer_with_trace(
    d: Dataset,
    node: NodeRecord,
    pool: PeerPool,
    p: Params,
    *,
    ext_ids: Optional[frozenset[int]] = None,
    freq_class: Optional[int] = None,
    neighbors_only: bool = False,
) -> tuple[str, list[WeightedLabel], Optional[int]]:
    """Run the cascade for one test node, reporting the deciding stage.

    Returns (stage, evidence, label) with stage one of neighbor/peer/fallback.
    With neighbors_only=True the later stages are disabled and a node without
    neighbor evidence comes back as ("none", [], None).
    """
    if node.split != "te":
        raise NotATestNodeError(f"node {node.id} is in split {node.split!r}, not te")
    if ext_ids is None:
        ext_ids = extended_training_ids(d)
    if p.neighbor_kind != "none":
        evidence = neighbor_evidence(d, node, p, ext_ids=ext_ids)
        if evidence:
            return "neighbor", evidence, vote_for_best_label(evidence)
    if neighbors_only:
        return "none", [], None
    evidence = peer_evidence(d, node, pool, p)
    if evidence:
        return "peer", evidence, vote_for_best_label(evidence)
    if freq_class is None:
        freq_class = most_freq_class(d)
    return "fallback", [WeightedLabel(freq_class, 1.0)], freq_class


def infer_label(d: Dataset, node: NodeRecord, pool: PeerPool, p: Params) -> int:
    """The label the cascade assigns to a test node."""
    label = infer_with_trace(d, node, pool, p)[2]
    assert label is not None
    return label


def _infer_one(payload, node_id: int) -> Optional[int]:
    d, p, pool, ext_ids, freq_class, neighbors_only = payload
    return infer_with_trace(
        d, d[node_id], pool, p, ext_ids=ext_ids, freq_class=freq_class, neighbors_only=neighbors_only
    )[2]


def predict_labels(
    d: Dataset,
    p: Params,
    ids: Optional[Sequence[int]] = None,
    *,
    workers: int = 1,
    neighbors_only: bool = False,
) -> dict[int, Optional[int]]:
    """Inferred label per test node id (all test nodes when ids is None)."""
    if ids is None:
        ids = d.te_ids
    else:
        for i in ids:
            if i not in d:
                raise UnknownNodeError(i)
    ext_ids = extended_training_ids(d)
    pool = select_diverse_peers(d, p)
    freq_class = most_freq_class(d) if d.label_histogram else None
    payload = (d, p, pool, ext_ids, freq_class, neighbors_only)
    labels = _parallel.map_items(_infer_one, payload, ids, workers=workers)
    return dict(zip(ids, labels))


def evaluate_accuracy(
    d: Dataset, p: Params, *, workers: int = 1, neighbors_only: bool = False
) -> EvalResult:
    """Fraction of test nodes whose inferred label matches the held one.

    Held test labels are consulted only for this final comparison. With
    neighbors_only=True, nodes the neighbor stage cannot decide count as
    wrong.
    """
    if not d.te_ids:
        raise EmptyTestSetError("dataset has no test records")
    start = time.perf_counter()
    predicted = predict_labels(d, p, workers=workers, neighbors_only=neighbors_only)
    correct = sum(1 for i in d.te_ids if predicted[i] == d[i].label)
    elapsed = time.perf_counter() - start
    total = len(d.te_ids)
    return EvalResult(correct / total, correct, total, elapsed)


class TermGraphClassifier(BaseEstimator):
    """Estimator-style facade over the inference cascade.

    fit() absorbs a Dataset's extended training split (peer pool, majority
    class); predict() infers labels for test node ids; score() is test-split
    accuracy. Parameters mirror the engine's Params and are picked up by
    get_params/set_params, so the class composes with scikit-learn tooling.
    """

    def __init__(
        self,
        similarity: str = "jaccard_node",
        max_neighbor_nodes: int = 100,
        max_peer_nodes: int = 4,
        neighbor_kind: str = "plain",
        max_termlet_size: int = DEFAULT_MAX_TERMLET_SIZE,
        forest_split_depth: int = DEFAULT_FOREST_SPLIT_DEPTH,
        workers: int = 1,
    ):
        self.similarity = similarity
        self.max_neighbor_nodes = max_neighbor_nodes
        self.max_peer_nodes = max_peer_nodes
        self.neighbor_kind = neighbor_kind
        self.max_termlet_size = max_termlet_size
        self.forest_split_depth = forest_split_depth
        self.workers = workers

    def _make_params(self) -> Params:
        return Params(
            similarity=self.similarity,
            max_neighbor_nodes=self.max_neighbor_nodes,
            max_peer_nodes=self.max_peer_nodes,
            neighbor_kind=self.neighbor_kind,
            max_termlet_size=self.max_termlet_size,
            forest_split_depth=self.forest_split_depth,
        )

    def fit(self, dataset: Dataset, y=None):
        params = self._make_params()
        if not dataset.label_histogram:
            raise EmptyTrainingSetError("no training or validation records")
        self.dataset_ = dataset
        self.params_ = params
        self.pool_ = select_diverse_peers(dataset, params)
        self.most_frequent_class_ = most_freq_class(dataset)
        self.classes_ = tuple(range(dataset.num_labels))
        return self

    def _check_fitted(self):
        if not hasattr(self, "params_"):
            raise NotFittedError("call fit(dataset) before predicting")

    def predict(self, ids: Optional[Sequence[int]] = None) -> list[int]:
        """Labels for the given test ids, or for the whole test split."""
        self._check_fitted()
        d = self.dataset_
        if ids is None:
            ids = d.te_ids
        labels = predict_labels(d, self.params_, ids, workers=self.workers)
        return [labels[i] for i in ids]

    def predict_one(self, node_id: int) -> tuple[str, list[WeightedLabel], int]:
        """Stage, evidence and label for a single test node."""
        self._check_fitted()
        d = self.dataset_
        if node_id not in d:
            raise UnknownNodeError(node_id)
        stage, evidence, label = infer_with_trace(
            d, d[node_id], self.pool_, self.params_, freq_class=self.most_frequent_class_
        )
        assert label is not None
        return stage, evidence, label

    def score(self, ids: Optional[Sequence[int]] = None, y: Optional[Sequence[int]] = None) -> float:
        """Accuracy against held labels (or a provided label sequence)."""
        self._check_fitted()
        d = self.dataset_
        if ids is None:
            ids = d.te_ids
        predicted = self.predict(ids)
        held = [d[i].label for i in ids] if y is None else list(y)
        if len(held) != len(predicted):
            raise ValueError("y length does not match the number of ids")
        if not held:
            raise EmptyTestSetError("nothing to score")
        return sum(1 for a, b in zip(predicted, held) if a == b) / len(held)
