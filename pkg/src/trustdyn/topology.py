"""Seeded generators for influence matrices and per-agent parameters."""

import enum
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidRange, InvalidSpec
from .linalg import row_normalize

# Fixed substream index per quantity; keep stable, outputs depend on it.
STREAMS = {"W": 0, "A": 1, "B": 2, "T0": 3, "T1": 4}


class Kind(str, enum.Enum):
    RANDOM = "random"
    ECHO_CHAMBER = "echo_chamber"
    STAR = "star"

    def __str__(self):
        return self.value


class RngStream:
    """PCG64 generators keyed by ``(seed, quantity)``.

    Every call to :meth:`generator` returns a fresh generator positioned at
    the start of the named substream, so drawing ``W`` never shifts ``A`` or
    ``B`` even if ``n`` changes.
    """

    algorithm = "PCG64/SeedSequence"

    def __init__(self, seed):
        self.seed = int(seed)
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")

    def generator(self, name):
        key = STREAMS[name] if isinstance(name, str) else int(name)
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(self.seed, spawn_key=(key,))))

    def __repr__(self):
        return f"RngStream(seed={self.seed})"


@dataclass(frozen=True)
class TopologySpec:
    kind: Kind = Kind.RANDOM
    n: int = 5
    seed: int = 0
    clusters: int = 2
    intra_range: tuple = (0.5, 1.0)
    inter_range: tuple = (0.01, 0.05)
    hub_index: int = 0
    hub_weight: float = 0.8

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "intra_range", tuple(map(float, self.intra_range)))
        object.__setattr__(self, "inter_range", tuple(map(float, self.inter_range)))

    def problems(self):
        out = []
        if self.n < 1:
            out.append("n must be >= 1")
        if self.kind is Kind.STAR:
            if self.n < 2:
                out.append("star topology needs n >= 2")
            if not 0 <= self.hub_index < max(self.n, 1):
                out.append(f"hub_index {self.hub_index} out of range")
            if not 0.0 <= self.hub_weight <= 1.0:
                out.append("hub_weight must lie in [0,1]")
        if self.kind is Kind.ECHO_CHAMBER:
            if self.clusters < 1 or self.n % self.clusters:
                out.append(f"n={self.n} is not divisible by clusters={self.clusters}")
            for name in ("intra_range", "inter_range"):
                lo, hi = getattr(self, name)
                if not 0.0 <= lo <= hi:
                    out.append(f"{name} must satisfy 0 <= lo <= hi")
        return out

    def cluster_labels(self):
        """Cluster index per agent (contiguous equal blocks; all zeros unless echo chamber)."""
        if self.kind is Kind.ECHO_CHAMBER:
            return np.arange(self.n) // (self.n // self.clusters)
        return np.zeros(self.n, dtype=int)


def generate_W(spec, rng=None):
    """Row-stochastic influence matrix for ``spec``.

    * random: every entry ``U(0,1)``, then row-normalized;
    * echo chamber: contiguous clusters, same-cluster entries (self included)
      from ``intra_range``, others from ``inter_range``, then row-normalized;
    * star: the hub listens to everyone equally; each peripheral agent puts
      ``hub_weight`` on the hub and splits the rest evenly over all other
      agents, itself included.
    """
    problems = spec.problems()
    if problems:
        raise InvalidSpec("; ".join(problems))
    rng = rng or RngStream(spec.seed)
    n = spec.n
    gen = rng.generator("W")

    if spec.kind is Kind.RANDOM:
        return row_normalize(gen.uniform(0.0, 1.0, size=(n, n)))

    if spec.kind is Kind.ECHO_CHAMBER:
        labels = spec.cluster_labels()
        same = labels[:, None] == labels[None, :]
        intra = gen.uniform(*spec.intra_range, size=(n, n))
        inter = gen.uniform(*spec.inter_range, size=(n, n))
        return row_normalize(np.where(same, intra, inter))

    h = spec.hub_index
    W = np.full((n, n), (1.0 - spec.hub_weight) / (n - 1))
    W[:, h] = spec.hub_weight
    W[h, :] = 1.0 / n
    return W


def _uniform(n, bounds, rng, stream):
    lo, hi = map(float, bounds)
    if not (np.isfinite(lo) and np.isfinite(hi)) or lo > hi:
        raise InvalidRange(f"invalid range ({lo}, {hi})")
    return rng.generator(stream).uniform(lo, hi, size=n)


def sample_A(n, bounds=(0.4, 0.9), rng=None):
    """Susceptibility diagonal, i.i.d. uniform on ``bounds``."""
    if not 0.0 <= bounds[0] <= bounds[1] <= 1.0:
        raise InvalidRange(f"susceptibility range {bounds} must lie within [0,1]")
    return _uniform(n, bounds, rng or RngStream(0), "A")


def sample_B(n, bounds=(-0.05, 0.05), rng=None):
    """Reactivity diagonal, i.i.d. uniform on ``bounds`` (sign is the caller's choice)."""
    return _uniform(n, bounds, rng or RngStream(0), "B")


def sample_trust(n, bounds=(0.0, 2.0), rng=None, which="T0"):
    return _uniform(n, bounds, rng or RngStream(0), which)
