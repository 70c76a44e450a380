"""Dataset dissection: intrinsic ceilings on what any predictor can reach.

network_limits bounds neighbor-driven accuracy: a test node is only guessable
from the graph when some cited node in the extended training set already
carries its label. content_coverage measures how many test nodes have at
least one sufficiently similar training peer under a given measure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import _parallel
from .gff import Dataset, NodeRecord
from .inference import EmptyTestSetError, NotATestNodeError, Params, extended_training_ids
from .similarity import check_measure, score


@dataclass(frozen=True)
class LimitReport:
    """A guessable/total count with its exact ratio."""

    guessable: int
    total: int
    ratio: float
    kind: str  # "network" | "content"
    measure: Optional[str] = None
    threshold: Optional[float] = None


def network_guessable(
    d: Dataset, node: NodeRecord, *, ext_ids: Optional[frozenset[int]] = None
) -> bool:
    """True when some extended-training neighbor carries the node's own label."""
    if node.split != "te":
        raise NotATestNodeError(f"node {node.id} is in split {node.split!r}, not te")
    if ext_ids is None:
        ext_ids = extended_training_ids(d)
    return any(m in ext_ids and d[m].label == node.label for m in node.neighbors)


def network_limits(d: Dataset) -> LimitReport:
    """Upper bound on accuracy achievable from the link structure alone."""
    if not d.te_ids:
        raise EmptyTestSetError("dataset has no test records")
    ext_ids = extended_training_ids(d)
    guessable = sum(1 for i in d.te_ids if network_guessable(d, d[i], ext_ids=ext_ids))
    total = len(d.te_ids)
    return LimitReport(guessable, total, guessable / total, "network")


def _has_similar_peer(payload, node_id: int) -> bool:
    d, measure, threshold, params, peer_ids = payload
    content = d[node_id].content
    for j in peer_ids:
        if score(measure, content, d[j].content, params) >= threshold:
            return True
    return False


def content_coverage(
    d: Dataset,
    measure: str,
    threshold: float,
    params: Optional[Params] = None,
    sample: Optional[int] = None,
    *,
    peer_side: str = "trva",
    workers: int = 1,
) -> LimitReport:
    """Fraction of test nodes with a training peer scoring at or above threshold.

    The scan stops at the first witness per node. `sample` restricts the test
    side to its first ids, keeping the quadratic cost bounded; peer_side picks
    tr or tr+va as the comparison pool.
    """
    check_measure(measure)
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    if peer_side not in ("tr", "trva"):
        raise ValueError("peer_side must be 'tr' or 'trva'")
    if not d.te_ids:
        raise EmptyTestSetError("dataset has no test records")
    te_ids = d.te_ids if sample is None else d.te_ids[: max(0, sample)]
    peer_ids = d.tr_ids if peer_side == "tr" else d.tr_ids + d.va_ids
    payload = (d, measure, threshold, params, peer_ids)
    hits = _parallel.map_items(_has_similar_peer, payload, te_ids, workers=workers)
    guessable = sum(hits)
    total = len(te_ids)
    ratio = guessable / total if total else 0.0
    return LimitReport(guessable, total, ratio, "content", measure, threshold)


def render_limit_report(r: LimitReport) -> str:
    """One human-readable line; ratios at four decimal places."""
    if r.kind == "network":
        return f"network_only -> {r.ratio:.4f} = {r.guessable}/{r.total}"
    return f"{r.measure}-{r.threshold:g} -> {r.ratio:.4f} = {r.guessable}/{r.total}"
