"""Size caps for the generators and enumerations.

``NERVUS_CAP`` overrides them as comma-separated ``name=value`` pairs, e.g.
``NERVUS_CAP="cantor=14,solenoid=8192"``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from .errors import CapExceededError, MalformedInputError


@dataclass(frozen=True)
class Caps:
    cantor: int = 12  # max Cantor level
    carpet: int = 4  # max carpet level
    sponge: int = 2  # max sponge level
    solenoid: int = 4096  # max vertices on the finest solenoid cycle
    splittings: int = 1024  # max enumerated splittings

    @classmethod
    def from_env(cls, environ=None) -> "Caps":
        raw = (os.environ if environ is None else environ).get("NERVUS_CAP", "").strip()
        if not raw:
            return cls()
        names = {f.name for f in fields(cls)}
        updates = {}
        for item in raw.split(","):
            name, sep, value = item.partition("=")
            name = name.strip()
            if not sep or name not in names:
                raise MalformedInputError(f"bad NERVUS_CAP entry {item!r}; known caps: {sorted(names)}")
            try:
                updates[name] = int(value)
            except ValueError:
                raise MalformedInputError(f"NERVUS_CAP value for {name} is not an integer") from None
        return replace(cls(), **updates)


def require(value: int, cap: int, what: str) -> None:
    if value > cap:
        raise CapExceededError(f"{what} = {value} exceeds the cap of {cap} (raise it via NERVUS_CAP)")
