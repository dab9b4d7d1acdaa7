"""Experiment configuration, sensitivity scans and topology comparison."""

import copy
import csv
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import _tolerances as tol
from .equilibrium import solve
from .exceptions import ParseError, TrustDynError, ValidationError
from .model import InitialConditions, ModelParams, Network, validate
from .simulate import run
from .stability import PARAMETERS, find_boundary, spectrum
from .svg import emit_svg
from .topology import Kind, RngStream, TopologySpec, generate_W, sample_A, sample_B, sample_trust

DEFAULT_SEED = 2

SCAN_COLUMNS = ("param", "rho", "stable", "verdict", "mean_T_final", "mean_S_final",
                "converged_at", "mean_T_star", "mean_S_star")


@dataclass
class TopologyConfig:
    kind: str = "random"
    clusters: int = 2
    intra_range: list = field(default_factory=lambda: [0.5, 1.0])
    inter_range: list = field(default_factory=lambda: [0.01, 0.05])
    hub_index: int = 0
    hub_weight: float = 0.8


@dataclass
class SamplingConfig:
    A: list = field(default_factory=lambda: [0.4, 0.9])
    B: list = field(default_factory=lambda: [-0.05, 0.05])
    T0: list = field(default_factory=lambda: [0.0, 2.0])
    T1: list = field(default_factory=lambda: [0.0, 2.0])
    S0: float = 0.1


@dataclass
class RunConfig:
    max_steps: int = tol.MAX_STEPS
    conv_tol: float = tol.CONV_TOL
    div_threshold: float = tol.DIV_THRESHOLD


@dataclass
class ScanConfig:
    param: str = "alpha"
    lo: float = 0.0
    hi: float = 0.5
    count: int = 101

    def grid(self):
        """``lo + k (hi - lo) / (count - 1)`` for ``k = 0 .. count-1``."""
        return [self.lo + k * (self.hi - self.lo) / (self.count - 1) for k in range(self.count)]


@dataclass
class OutputConfig:
    directory: str = "out"
    formats: list = field(default_factory=lambda: ["csv"])


@dataclass
class ExperimentConfig:
    n: int = 5
    seed: int = DEFAULT_SEED
    mu: object = 0.1
    alpha: float = 0.005
    beta: float = 0.4
    gamma: float = 0.5
    topology: TopologyConfig = field(default_factory=TopologyConfig)
    sampling: SamplingConfig = field(default_factory=SamplingConfig)
    run: RunConfig = field(default_factory=RunConfig)
    scan: ScanConfig = None
    output: OutputConfig = field(default_factory=OutputConfig)

    def to_dict(self):
        return asdict(self)

    def params(self):
        return ModelParams(self.mu, self.alpha, self.beta, self.gamma)

    def topology_spec(self, kind=None):
        t = self.topology
        return TopologySpec(kind or t.kind, self.n, self.seed, t.clusters,
                            tuple(t.intra_range), tuple(t.inter_range), t.hub_index, t.hub_weight)

    def build(self, kind=None):
        """Draw ``(params, network, initial conditions, spec)`` from the seed.

        A, B, T0 and T1 come from their own substreams, so changing the
        topology kind leaves them untouched.
        """
        rng = RngStream(self.seed)
        spec = self.topology_spec(kind)
        s = self.sampling
        net = Network(generate_W(spec, rng), sample_A(self.n, s.A, rng), sample_B(self.n, s.B, rng))
        init = InitialConditions(T1=sample_trust(self.n, s.T1, rng, "T1"),
                                 T0=sample_trust(self.n, s.T0, rng, "T0"), S0=s.S0)
        return self.params(), net, init, spec

    def problems(self):
        out = []
        if not isinstance(self.n, int) or self.n < 1:
            out.append("n must be a positive integer")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            out.append("seed must be an integer in [0, 2**64)")
        if not 0.0 < self.gamma < 1.0:
            out.append(f"gamma must lie in open interval (0,1), got {self.gamma}")
        for name in ("alpha", "beta"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                out.append(f"{name} must lie in [0,1], got {getattr(self, name)}")
        mu = np.asarray(self.mu, dtype=float)
        if mu.ndim > 1 or (mu.ndim == 1 and mu.shape[0] != self.n):
            out.append(f"mu must be a scalar or a vector of length n={self.n}")
        elif np.any(mu < 0):
            out.append("mu entries must be >= 0")
        for name in ("A", "B", "T0", "T1"):
            bounds = getattr(self.sampling, name)
            if len(bounds) != 2 or not bounds[0] <= bounds[1]:
                out.append(f"sampling.{name} must be [lo, hi] with lo <= hi")
        a_lo, a_hi = self.sampling.A
        if not 0.0 <= a_lo <= a_hi <= 1.0:
            out.append("sampling.A must lie within [0,1]")
        try:
            Kind(self.topology.kind)
            if isinstance(self.n, int):
                out.extend(f"topology: {p}" for p in self.topology_spec().problems())
        except ValueError:
            out.append(f"topology.kind must be one of {[k.value for k in Kind]}")
        r = self.run
        if r.max_steps < 1 or r.conv_tol <= 0 or r.div_threshold <= 0:
            out.append("run: max_steps, conv_tol and div_threshold must be positive")
        if self.scan is not None:
            if self.scan.param not in PARAMETERS:
                out.append(f"scan.param must be one of {PARAMETERS}")
            if self.scan.count < 2:
                out.append("scan.count must be >= 2")
            if not self.scan.lo < self.scan.hi:
                out.append("scan.lo must be < scan.hi")
        bad = set(self.output.formats) - {"csv", "svg"}
        if bad:
            out.append(f"output.formats: unknown {sorted(bad)}")
        return out


_SECTIONS = {"topology": TopologyConfig, "sampling": SamplingConfig, "run": RunConfig,
             "scan": ScanConfig, "output": OutputConfig}
_INTS = {"n", "seed", "clusters", "hub_index", "max_steps", "count"}


def _coerce(key, value, where):
    if key in _INTS:
        if isinstance(value, bool) or not isinstance(value, (int, float)) or value != int(value):
            raise ValidationError([f"{where}{key} must be an integer"])
        return int(value)
    return value


def config_from_dict(data):
    """Build and validate a config from a parsed JSON tree; unknown keys are rejected."""
    if not isinstance(data, dict):
        raise ValidationError(["config root must be an object"])
    top = {f for f in ExperimentConfig.__dataclass_fields__}
    unknown = sorted(set(data) - top)
    if unknown:
        raise ValidationError([f"unknown key {k!r}" for k in unknown])
    kwargs = {}
    for key, value in data.items():
        if key in _SECTIONS:
            if value is None and key == "scan":
                kwargs[key] = None
                continue
            cls = _SECTIONS[key]
            if not isinstance(value, dict):
                raise ValidationError([f"{key} must be an object"])
            unknown = sorted(set(value) - set(cls.__dataclass_fields__))
            if unknown:
                raise ValidationError([f"unknown key {key}.{k}" for k in unknown])
            kwargs[key] = cls(**{k: _coerce(k, v, f"{key}.") for k, v in value.items()})
        else:
            kwargs[key] = _coerce(key, value, "")
    try:
        cfg = ExperimentConfig(**kwargs)
        problems = cfg.problems()
    except (TypeError, ValueError) as exc:
        raise ValidationError([str(exc)]) from exc
    if problems:
        raise ValidationError(problems)
    return cfg


def load_config(path):
    """Read a JSON config; every omitted key takes its default value."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return config_from_dict(data)


def dump_config(cfg, path=None):
    text = json.dumps(cfg.to_dict(), indent=2, sort_keys=True) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


PRESETS = {
    "default": {},
    "alpha-scan": {"alpha": 0.005, "beta": 0.4, "gamma": 0.5,
                   "scan": {"param": "alpha", "lo": 0.0, "hi": 0.5, "count": 101}},
    "beta-scan": {"alpha": 0.05, "beta": 0.4, "gamma": 0.5,
                  "sampling": {"B": [0.01, 0.05]},
                  "scan": {"param": "beta", "lo": 0.0, "hi": 1.0, "count": 101}},
    "gamma-scan": {"alpha": 0.05, "beta": 0.3, "gamma": 0.5,
                   "sampling": {"B": [0.01, 0.05]},
                   "scan": {"param": "gamma", "lo": 0.0, "hi": 1.0, "count": 101}},
    "topology": {"n": 10, "alpha": 0.05, "beta": 0.35, "gamma": 0.5,
                 "sampling": {"B": [0.01, 0.05]}},
}


def preset(name, **overrides):
    data = copy.deepcopy(PRESETS[name])
    data.update(overrides)
    return config_from_dict(data)


# --------------------------------------------------------------------------- scans

@dataclass
class ScanRow:
    param_value: float
    rho: float
    stable: bool
    verdict: str
    mean_T_final: float
    mean_S_final: float
    converged_at: int = None
    mean_T_star: float = float("nan")
    mean_S_star: float = float("nan")


def _num(x):
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def write_csv(path, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([v if isinstance(v, str) else _num(v) for v in row])
    return path


def _scan_point(name, value, params, net, init, run_cfg):
    p = params.replace(**{name: value})
    rho = float("nan")
    try:
        rho = spectrum(p, net).rho
        traj = run(init, p, net, run_cfg.max_steps, run_cfg.conv_tol, run_cfg.div_threshold)
    except TrustDynError as exc:
        return ScanRow(value, rho, rho < 1.0, f"error: {type(exc).__name__}", math.nan, math.nan)
    row = ScanRow(value, rho, rho < 1.0, str(traj.verdict),
                  float(traj.final.T.mean()), float(traj.final.S.mean()), traj.converged_at)
    try:
        eq = solve(p, net, init.T1)
        row.mean_T_star = float(eq.T_star.mean())
        row.mean_S_star = float(eq.S_star.mean())
    except (TrustDynError, ValueError):
        pass
    return row


def sensitivity_scan(cfg, write=True):
    """Sweep one coupling over ``cfg.scan``, holding every matrix fixed.

    Each row records the spectral radius, the simulated outcome (final means
    of ``T`` and ``S``) and the closed-form equilibrium means. Returns
    ``(rows, csv_path)``; ``csv_path`` is ``None`` when ``write`` is false.
    """
    if cfg.scan is None:
        raise ValidationError(["config has no scan block"])
    params, net, init, _ = cfg.build()
    rows = [_scan_point(cfg.scan.param, x, params, net, init, cfg.run) for x in cfg.scan.grid()]
    path = None
    if write:
        out = Path(cfg.output.directory)
        path = write_csv(out / f"scan_{cfg.scan.param}.csv", SCAN_COLUMNS,
                         [[getattr(r, f) for f in ScanRow.__dataclass_fields__] for r in rows])
        if "svg" in cfg.output.formats:
            xs = [r.param_value for r in rows]
            emit_svg({"rho": (xs, [r.rho for r in rows])},
                     f"spectral radius vs {cfg.scan.param}", out / f"scan_{cfg.scan.param}_rho.svg")
            emit_svg({"mean S final": (xs, [r.mean_S_final for r in rows]),
                      "mean T final": (xs, [r.mean_T_final for r in rows])},
                     f"final means vs {cfg.scan.param}", out / f"scan_{cfg.scan.param}_final.svg",
                     clip=cfg.run.div_threshold)
    return rows, path


# ------------------------------------------------------------------------ topology

@dataclass
class TopologyOutcome:
    kind: Kind
    network: Network = None
    init: InitialConditions = None
    trajectory: object = None
    rho: float = float("nan")
    groups: dict = field(default_factory=dict)
    boundaries: dict = field(default_factory=dict)
    error: str = None

    def group_means(self, which="T"):
        """Per-group mean of ``T`` (or ``S``) at every recorded step."""
        data = getattr(self.trajectory, which)
        return {name: data[:, idx].mean(axis=1) for name, idx in self.groups.items()}


def _groups(spec):
    n = spec.n
    if spec.kind is Kind.ECHO_CHAMBER:
        labels = spec.cluster_labels()
        return {f"cluster{c}": np.flatnonzero(labels == c) for c in range(spec.clusters)}
    if spec.kind is Kind.STAR:
        return {"hub": np.array([spec.hub_index]),
                "periphery": np.array([i for i in range(n) if i != spec.hub_index])}
    return {"all": np.arange(n)}


def topology_compare(cfg, write=True, kinds=tuple(Kind)):
    """Run every topology on the same seed and compare dynamics and boundaries.

    Returns ``{kind: TopologyOutcome}``. Failures are recorded per topology.
    With ``write`` set, one trajectory CSV per topology and a
    ``topology_summary.csv`` go to ``cfg.output.directory``.
    """
    out = Path(cfg.output.directory)
    report = {}
    for kind in kinds:
        kind = Kind(kind)
        outcome = TopologyOutcome(kind)
        report[kind] = outcome
        try:
            params, net, init, spec = cfg.build(kind)
            outcome.network, outcome.init = net, init
            outcome.groups = _groups(spec)
            outcome.rho = spectrum(params, net).rho
            outcome.trajectory = run(init, params, net, cfg.run.max_steps,
                                     cfg.run.conv_tol, cfg.run.div_threshold)
        except (TrustDynError, ValueError) as exc:
            outcome.error = f"{type(exc).__name__}: {exc}"
            continue
        for name in ("beta", "gamma", "alpha"):
            try:
                outcome.boundaries[name] = find_boundary(name, params, net, (0.0, 1.0)).critical_value
            except TrustDynError:
                outcome.boundaries[name] = float("nan")

    if write:
        summary = []
        for kind, o in report.items():
            if o.error is None:
                _write_topology(out, o, cfg)
            verdict = o.error or str(o.trajectory.verdict)
            summary.append([kind.value, o.rho, o.rho < 1.0, verdict,
                            o.boundaries.get("beta", math.nan), o.boundaries.get("gamma", math.nan),
                            o.boundaries.get("alpha", math.nan)])
        write_csv(out / "topology_summary.csv",
                  ("topology", "rho", "stable", "verdict", "beta_star", "gamma_star", "alpha_star"),
                  summary)
    return report


def _write_topology(out, o, cfg):
    traj = o.trajectory
    n = o.network.n
    means = o.group_means("T")
    header = (["t"] + [f"T{i}" for i in range(n)] + [f"S{i}" for i in range(n)]
              + [f"mean_T_{g}" for g in means])
    rows = [[int(t)] + list(traj.T[k]) + list(traj.S[k]) + [m[k] for m in means.values()]
            for k, t in enumerate(traj.times)]
    write_csv(out / f"topology_{o.kind.value}.csv", header, rows)
    if "svg" in cfg.output.formats:
        times = traj.times
        emit_svg({f"T{i}": (times, traj.T[:, i]) for i in range(n)},
                 f"trust trajectories ({o.kind.value}, rho={o.rho:.4f})",
                 out / f"topology_{o.kind.value}_trust.svg", clip=cfg.run.div_threshold)
        emit_svg({f"S{i}": (times, traj.S[:, i]) for i in range(n)},
                 f"event intensity ({o.kind.value})",
                 out / f"topology_{o.kind.value}_events.svg", clip=cfg.run.div_threshold)


def write_trajectory(path, traj):
    n = traj.final.n
    header = (["t"] + [f"T{i}" for i in range(n)] + [f"S{i}" for i in range(n)]
              + [f"H{i}" for i in range(n)])
    rows = [[s.t] + list(s.T) + list(s.S) + list(s.H) for s in traj.states]
    return write_csv(path, header, rows)


def check(cfg):
    """Model-level diagnostics for the network and initial conditions drawn from ``cfg``."""
    params, net, init, _ = cfg.build()
    return validate(net, params, init)

