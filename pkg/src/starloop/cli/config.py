"""Run configuration: defaults < JSON config file < command-line flags."""

import json
from dataclasses import asdict, dataclass, field, fields

from ..errors import ConfigError

DEFAULT_TOLERANCES = {
    "moyal": 1e-12,
    "associativity": 1e-9,
    "boundary_homomorphism": 1e-10,
    "trace_property": 1e-9,
    "trace_defect": 1e-6,
    "profile_independence": 1e-6,
    "quadrature_convergence": 1e-8,
    "truncation_stability": 1e-9,
    "integer": 1e-3,
    "agreement": 2e-3,
    "cocycle": 1e-6,
    "jacobi": 1e-7,
    "group_cocycle": 1e-3,
    "det_unipotent": 1e-10,
    "det_multiplicative": 1e-6,
    "path_independence": 1e-6,
    "fuzzy_commutator": 1e-13,
    "casimir": 1e-12,
    "fuzzy_cocycle": 1e-6,
    "deform_block": 1e-12,
    "lundberg": 1e-10,
}


@dataclass
class RunConfig:
    order_k: int = 2
    m_max: int = 10
    nr: int = 48
    ntheta: int = 64
    nt: int = 64
    s0: float = 0.2
    seed: int = 0
    jobs: int = 1
    out: str = None
    spin: float = 1.0
    repeats: int = 2
    modes: list = field(default_factory=lambda: [2, -2])
    amplitudes: list = field(default_factory=lambda: [0.2, 0.1, 0.05])
    cutoffs: list = field(default_factory=lambda: [1, 2, 3, 4])
    tolerances: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("order_k", "m_max", "nr", "ntheta", "nt", "jobs", "repeats"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ConfigError(f"{name} must be a positive integer, got {v!r}")
        if not 0.0 < self.s0 < 1.0:
            raise ConfigError("s0 must lie in (0, 1)")
        if self.order_k > 4:
            raise ConfigError("order_k above 4 is not supported")
        unknown = set(self.tolerances) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise ConfigError(f"unknown tolerance keys: {sorted(unknown)}")
        for k, v in self.tolerances.items():
            if not isinstance(v, (int, float)) or v <= 0:
                raise ConfigError(f"tolerance {k} must be positive")
        if len(self.modes) != 2:
            raise ConfigError("modes must be a pair [m, k]")
        if max(abs(int(m)) for m in self.modes) > self.m_max:
            raise ConfigError(f"mode numbers must satisfy |m| <= m_max = {self.m_max}")
        if self.spin < 0 or float(2 * self.spin) != int(2 * self.spin):
            raise ConfigError("spin must be a nonnegative half-integer")
        if not self.amplitudes or any(a <= 0 for a in self.amplitudes):
            raise ConfigError("amplitudes must be positive")
        if sorted(self.cutoffs) != list(self.cutoffs) or min(self.cutoffs) < 1:
            raise ConfigError("cutoffs must be ascending positive integers")

    def tol(self, key):
        return self.tolerances.get(key, DEFAULT_TOLERANCES[key])

    def to_dict(self):
        d = asdict(self)
        d["tolerances"] = {k: self.tol(k) for k in sorted(DEFAULT_TOLERANCES)}
        return d


def _known():
    return {f.name for f in fields(RunConfig)}


def load_config(path=None, overrides=None):
    data = {}
    if path is not None:
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
    unknown = set(data) - _known()
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    data.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        return RunConfig(**data)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
