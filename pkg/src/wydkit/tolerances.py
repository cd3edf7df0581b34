"""Numerical tolerances used by every check in the package.

Defaults can be overridden through environment variables named
``WYDKIT_TOL_<FIELD>`` (for example ``WYDKIT_TOL_Q=1e-8``); explicit
arguments always win over the environment.
"""

import os
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    herm: float = 1e-10   # hermiticity defect, relative to max(1, |x|_max)
    lin: float = 1e-10    # linear-algebra identities
    norm: float = 1e-9    # |tau(rho) - 1|
    psd: float = 1e-12    # eigenvalue clamping window, relative
    q: float = 1e-9       # inequality quantities, relative to max(1, var_a var_b)
    orc: float = 1e-8     # trace side vs. measure side of the gap

    @classmethod
    def from_env(cls, environ=None, **overrides):
        environ = os.environ if environ is None else environ
        values = {}
        for f in fields(cls):
            raw = environ.get(f"WYDKIT_TOL_{f.name.upper()}")
            if raw is not None:
                values[f.name] = float(raw)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def with_(self, **overrides):
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


DEFAULT = Tolerances()
