"""Deterministic synthetic citation datasets for desk-scale testing.

Randomness comes from splitmix64, a fixed public-domain 64-bit generator,
so a config reproduces the same bytes on any platform or implementation:

    state += 0x9e3779b97f4a7c15                      (mod 2^64)
    z = state
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9         (mod 2^64)
    z = (z ^ (z >> 27)) * 0x94d049bb133111eb         (mod 2^64)
    output = z ^ (z >> 31)

Floats are output/2^64 scaled into [0, 1); bounded ints use the multiply-
shift reduction (output * n) >> 64.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

from .gff import NodeRecord, write_gff
from .terms import Atom, Compound, GroundTerm

_MASK = (1 << 64) - 1


class SplitMix64:
    """The splitmix64 generator; see the module docstring for the recipe."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        return self.next_u64() / (1 << 64)

    def randrange(self, n: int) -> int:
        if n <= 0:
            raise ValueError("randrange bound must be positive")
        return (self.next_u64() * n) >> 64

    def choice(self, seq):
        return seq[self.randrange(len(seq))]

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]


@dataclass(frozen=True)
class SynthConfig:
    """Generator knobs; equal configs produce byte-identical files."""

    nodes: int
    labels: int
    out_degree: int = 3
    homophily: float = 0.5
    vocab_per_label: int = 6
    noise: float = 0.0
    tr_frac: float = 0.6
    va_frac: float = 0.2
    te_frac: float = 0.2
    seed: int = 0

    def __post_init__(self):
        if self.nodes < 1 or self.labels < 1 or self.vocab_per_label < 1:
            raise ValueError("nodes, labels and vocab_per_label must be positive")
        if self.out_degree < 0:
            raise ValueError("out_degree must be non-negative")
        for name in ("homophily", "noise"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if abs(self.tr_frac + self.va_frac + self.te_frac - 1.0) > 1e-9:
            raise ValueError("split fractions must sum to 1")


def _split_of(i: int, cfg: SynthConfig) -> str:
    c1 = round(cfg.tr_frac * cfg.nodes)
    c2 = round((cfg.tr_frac + cfg.va_frac) * cfg.nodes)
    if i < c1:
        return "tr"
    if i < c2:
        return "va"
    return "te"


def _symbol(rng: SplitMix64, own_label: int, cfg: SynthConfig) -> str:
    label = own_label
    if cfg.labels > 1 and rng.random() < cfg.noise:
        other = rng.randrange(cfg.labels - 1)
        label = other + 1 if other >= own_label else other
    return f"w{label}_{rng.randrange(cfg.vocab_per_label)}"


def _content_term(rng: SplitMix64, label: int, cfg: SynthConfig) -> GroundTerm:
    # Small shallow trees: a root symbol over a mix of atoms and unary pairs.
    count = 3 + rng.randrange(5)
    symbols = [_symbol(rng, label, cfg) for _ in range(count)]
    args: list[GroundTerm] = []
    j = 1
    while j < count:
        if j + 1 < count and rng.random() < 0.35:
            args.append(Compound(symbols[j], [Atom(symbols[j + 1])]))
            j += 2
        else:
            args.append(Atom(symbols[j]))
            j += 1
    return Compound(symbols[0], args)


def generate_records(cfg: SynthConfig) -> list[NodeRecord]:
    """Materialize the synthetic dataset as node records, ids 0..nodes-1."""
    rng = SplitMix64(cfg.seed)
    labels = [rng.randrange(cfg.labels) for _ in range(cfg.nodes)]
    earlier_by_label: dict[int, list[int]] = {y: [] for y in range(cfg.labels)}
    records = []
    for i in range(cfg.nodes):
        label = labels[i]
        targets: list[int] = []
        if i > 0:
            for _ in range(cfg.out_degree):
                same = earlier_by_label[label]
                if rng.random() < cfg.homophily and same:
                    t = same[rng.randrange(len(same))]
                else:
                    t = rng.randrange(i)
                if t not in targets:
                    targets.append(t)
        content = _content_term(rng, label, cfg)
        records.append(NodeRecord(i, _split_of(i, cfg), label, content, tuple(targets)))
        earlier_by_label[label].append(i)
    return records


def generate_gff_text(cfg: SynthConfig) -> str:
    buf = io.StringIO()
    write_gff(generate_records(cfg), buf)
    return buf.getvalue()


def write_synth(cfg: SynthConfig, path) -> int:
    """Write the synthetic GFF file; returns the clause count."""
    records = generate_records(cfg)
    with open(path, "w", encoding="utf-8") as fh:
        return write_gff(records, fh)
