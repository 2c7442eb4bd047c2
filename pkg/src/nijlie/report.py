"""Violation reports shared by every checker."""
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    identity: str
    indices: tuple = ()
    lhs: object = None
    rhs: object = None

    def describe(self):
        s = f"{self.identity} at {self.indices}"
        if self.lhs is not None or self.rhs is not None:
            s += f": lhs={_fmt(self.lhs)} rhs={_fmt(self.rhs)}"
        return s

    def to_data(self):
        return {
            "identity": self.identity,
            "indices": list(self.indices),
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
        }


def _fmt(v):
    if isinstance(v, tuple):
        return "(" + ", ".join(str(a) for a in v) + ")"
    return str(v)


def _jsonable(v):
    if v is None:
        return None
    if isinstance(v, (tuple, list)):
        return [_jsonable(a) for a in v]
    if isinstance(v, (int, str, bool)):
        return v
    return str(v)


@dataclass
class Report:
    """Collected violations of a check.  ``ok`` iff nothing was violated."""

    subject: str
    violations: list = field(default_factory=list)
    flags: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.violations

    def add(self, identity, indices=(), lhs=None, rhs=None):
        self.violations.append(Violation(identity, tuple(indices), lhs, rhs))

    def extend(self, other, prefix=None):
        for v in other.violations:
            name = f"{prefix}.{v.identity}" if prefix else v.identity
            self.violations.append(Violation(name, v.indices, v.lhs, v.rhs))
        return self

    def failed(self, identity):
        return [v for v in self.violations if v.identity == identity]

    def identities(self):
        return sorted({v.identity for v in self.violations})

    def first(self):
        return self.violations[0] if self.violations else None

    def summary(self):
        head = f"{self.subject}: {'PASS' if self.ok else 'FAIL'}"
        lines = [head]
        for k in sorted(self.flags):
            lines.append(f"  {k} = {self.flags[k]}")
        for v in self.violations[:50]:
            lines.append("  " + v.describe())
        if len(self.violations) > 50:
            lines.append(f"  ... {len(self.violations) - 50} more")
        return "\n".join(lines)

    def to_data(self):
        return {
            "subject": self.subject,
            "ok": self.ok,
            "flags": {k: _jsonable(v) for k, v in sorted(self.flags.items())},
            "violations": [v.to_data() for v in self.violations],
        }

    def __repr__(self):
        return f"Report({self.subject!r}, ok={self.ok}, violations={len(self.violations)})"
