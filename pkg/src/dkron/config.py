"""Session-wide knobs.

The values here are read by the computational modules when a caller does not
pass an explicit argument. The CLI replaces ``settings`` once at start-up.
"""
from dataclasses import dataclass, replace
import os


@dataclass(frozen=True)
class SessionConfig:
    q: int = 3
    precision: int = 60
    enum_cap: int = 10**7
    ext_bound: int = 6
    ram_bound: int = 4
    fmt: str = "json"
    seed: int = 0

    def __post_init__(self):
        from .errors import DkronError
        if self.precision < 20:
            raise DkronError("precision must be at least 20")
        if self.fmt not in ("json", "tsv"):
            raise DkronError("format must be json or tsv")


def _from_env():
    cfg = SessionConfig()
    p = os.environ.get("DKRON_PRECISION")
    if p:
        cfg = replace(cfg, precision=int(p))
    return cfg


settings = _from_env()


def use(cfg):
    global settings
    settings = cfg
    return cfg
