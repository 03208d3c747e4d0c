"""Audit entries, reports and their JSON / CSV forms."""

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

SIG_DIGITS = 12

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_REFUSED = "precondition_failed"
STATUS_INFO = "info"


def round_sig(value, digits=SIG_DIGITS):
    """Round a float to a fixed number of significant digits (non-finite values pass through)."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    v = float(value)
    if not math.isfinite(v) or v == 0.0:
        return v
    return float(f"{v:.{digits}g}")


def _round_tree(obj):
    if isinstance(obj, dict):
        return {k: _round_tree(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_tree(v) for v in obj]
    if isinstance(obj, float):
        return round_sig(obj)
    return obj


@dataclass
class AuditEntry:
    """One inequality evaluated for one configuration."""

    id: str
    alpha: float
    wavelet: str
    function: str
    params: dict
    lhs: float
    rhs: float
    ratio: float
    status: str
    tolerance: float
    orientation: str
    diagnostics: dict = field(default_factory=dict)
    note: str = ""

    def __post_init__(self):
        self.alpha = round_sig(self.alpha)
        self.lhs = round_sig(self.lhs)
        self.rhs = round_sig(self.rhs)
        self.ratio = round_sig(self.ratio)
        self.tolerance = round_sig(self.tolerance)
        self.params = _round_tree(dict(self.params))
        self.diagnostics = _round_tree(dict(self.diagnostics))

    @property
    def passed(self):
        return self.status == STATUS_PASS


@dataclass
class AuditReport:
    entries: list = field(default_factory=list)
    settings: dict = field(default_factory=dict)

    def counts(self):
        out = {STATUS_PASS: 0, STATUS_FAIL: 0, STATUS_REFUSED: 0, STATUS_INFO: 0}
        for e in self.entries:
            out[e.status] = out.get(e.status, 0) + 1
        return out

    @property
    def all_passed(self):
        return all(e.status != STATUS_FAIL for e in self.entries)

    def failures(self):
        return [e for e in self.entries if e.status == STATUS_FAIL]

    def to_dict(self):
        return {
            "settings": _round_tree(self.settings),
            "counts": self.counts(),
            "entries": [asdict(e) for e in self.entries],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data):
        entries = [AuditEntry(**e) for e in data.get("entries", [])]
        return cls(entries, data.get("settings", {}))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["id", "alpha", "wavelet", "function", "params", "lhs", "rhs", "ratio",
                         "status", "tolerance", "orientation"])
        for e in self.entries:
            params = ";".join(f"{k}={_fmt(v)}" for k, v in sorted(e.params.items()))
            writer.writerow([e.id, _fmt(e.alpha), e.wavelet, e.function, params, _fmt(e.lhs),
                             _fmt(e.rhs), _fmt(e.ratio), e.status, _fmt(e.tolerance), e.orientation])
        return buf.getvalue()


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.{SIG_DIGITS}g}"
    if isinstance(v, (list, tuple)):
        return "[" + " ".join(_fmt(x) for x in v) + "]"
    return str(v)
