"""Monotone chains of ideals with verified containments and stabilization."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FrobcalcError, UnstabilizedError
from .groebner import Ideal

ASCENDING = "ascending"
DESCENDING = "descending"


@dataclass
class ChainReport:
    """A chain ``ideals[i]`` sitting at index value ``levels[i]``.

    ``stabilization_index`` is the first level s with ideal_s equal to the
    next ideal; ``overshoot`` counts further steps confirmed equal.
    ``containments[i]`` records the verified relation between steps i, i+1.
    ``exact`` marks chains whose stabilization is forced (the step map is a
    fixed monotone operator, so one repeat means constant from then on).
    """

    direction: str
    label: str = "e"
    levels: list = field(default_factory=list)
    ideals: list = field(default_factory=list)
    containments: list = field(default_factory=list)
    stabilization_index: int | None = None
    overshoot: int = 0
    exact: bool = False

    @property
    def stable(self) -> bool:
        return self.stabilization_index is not None

    @property
    def stable_ideal(self) -> Ideal:
        if self.stabilization_index is None:
            raise UnstabilizedError("chain has not stabilized", self)
        return self.ideals[self.levels.index(self.stabilization_index)]

    @property
    def last_level(self):
        return self.levels[-1] if self.levels else None

    def verify(self) -> bool:
        """Re-check every adjacent containment and the recorded stabilization."""
        for a, b in zip(self.ideals, self.ideals[1:]):
            ok = a.issubset(b) if self.direction == ASCENDING else b.issubset(a)
            if not ok:
                return False
        if self.stabilization_index is not None:
            tail = self.ideals[self.levels.index(self.stabilization_index):]
            if len(tail) < 2 + self.overshoot:
                return False
            if not all(tail[0] == J for J in tail[1:]):
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "direction": self.direction,
            "index_name": self.label,
            "levels": list(self.levels),
            "ideals": [J.basis_dict() for J in self.ideals],
            "containments_verified": list(self.containments),
            "stabilization_index": self.stabilization_index,
            "overshoot": self.overshoot,
            "exact": self.exact,
        }


def run_chain(step, level_of, max_steps, direction, *, overshoot=1, label="e", exact=False):
    """Evaluate ``step(i)`` for i = 0, 1, ... until the chain is stable.

    Stable means ideal_i == ideal_{i+1} with ``i + 1 < max_steps``, followed
    by ``overshoot`` further equal steps (those may run past the budget).
    Every adjacent containment in the declared direction is checked by
    membership; a violation raises, since only a wrong computation can
    produce one.  Without a stable stretch, :class:`UnstabilizedError` is
    raised carrying the partial report.
    """
    report = ChainReport(direction, label=label, exact=exact)
    run_from = None  # step index where the current run of equal ideals began
    i = 0
    while True:
        J = step(i)
        level = level_of(i)
        if report.ideals:
            prev = report.ideals[-1]
            ok = prev.issubset(J) if direction == ASCENDING else J.issubset(prev)
            if not ok:
                raise FrobcalcError(
                    f"{direction} chain broken between {label}={report.levels[-1]} and {label}={level}"
                )
            report.containments.append(True)
            if J == prev:
                if run_from is None:
                    run_from = i - 1
            else:
                run_from = None
        report.ideals.append(J)
        report.levels.append(level)
        if run_from is not None and i - run_from >= 1 + overshoot:
            report.stabilization_index = report.levels[run_from]
            report.overshoot = i - run_from - 1
            return report
        if run_from is None and i + 1 >= max_steps:
            raise UnstabilizedError(
                f"chain did not stabilize within {max_steps} steps ({label} <= {level})", report
            )
        i += 1
