"""Runtime defaults.

Every field can be overridden with an environment variable ``TWISTCODE_<FIELD>``
(upper case), and the CLI flags override both.

=================  =======  =====================================================
field              default  meaning
=================  =======  =====================================================
seed               0        seed for hom-basis probe matrices
dim_cap            2048     largest q**n handled by the code factory
group_cap          100000   largest group the enumerator will build
conductor_cap      240      largest cyclotomic conductor
t_cap              6        largest t for t-group scans
distance_cap       4        largest error weight searched by measure_distance
kl_tol             1e-7     Knill-Laflamme residual tolerance
equivariance_tol   1e-8     tolerance for f^n(g) V = V lam(g) and transversality
projector_tol      1e-9     tolerance for projector and isometry identities
=================  =======  =====================================================
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

from .errors import ValidationError

DIM_CAP_LIMIT = 4096
ENV_PREFIX = "TWISTCODE_"


@dataclass(frozen=True)
class Config:
    seed: int = 0
    dim_cap: int = 2048
    group_cap: int = 100_000
    conductor_cap: int = 240
    t_cap: int = 6
    distance_cap: int = 4
    kl_tol: float = 1e-7
    equivariance_tol: float = 1e-8
    projector_tol: float = 1e-9

    def __post_init__(self):
        for name in ("kl_tol", "equivariance_tol", "projector_tol"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"{name} must be positive")
        if not 1 <= self.dim_cap <= DIM_CAP_LIMIT:
            raise ValidationError(f"dim_cap must lie in 1..{DIM_CAP_LIMIT}")
        if not 0 <= self.t_cap <= 6:
            raise ValidationError("t_cap must lie in 0..6")
        if not 1 <= self.distance_cap <= 4:
            raise ValidationError("distance_cap must lie in 1..4")

    @classmethod
    def from_env(cls, environ=None, **overrides) -> Config:
        environ = os.environ if environ is None else environ
        values = {}
        for f in dataclasses.fields(cls):
            raw = environ.get(ENV_PREFIX + f.name.upper())
            if raw is not None:
                try:
                    values[f.name] = float(raw) if f.type == "float" else int(raw)
                except ValueError:
                    raise ValidationError(f"{ENV_PREFIX}{f.name.upper()}={raw!r} is not a number") from None
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)
