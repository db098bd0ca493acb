from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field


@dataclass
class VerifyReport:
    """Outcome of one verification check.

    ``passed`` is ``max_defect < tolerance`` for defect-style checks; a few
    checks add further conditions and record them in ``details``.
    """

    check: str
    params: dict
    passed: bool
    max_defect: float
    tolerance: float
    elapsed: float = 0.0
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["max_defect"] = _jsonable(self.max_defect)
        out["details"] = {k: _jsonable(v) for k, v in self.details.items()}
        return out


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    if hasattr(v, "item"):
        return v.item()
    return v
