"""Deterministic fresh-name supply shared by the whole package.

Names are drawn by suffixing a base with a monotone counter (``y``, ``y0``,
``y1``, ...), so identical runs produce identical output.  The counter start
can be offset through the HERBNET_SEED environment variable (see cli).
"""

from __future__ import annotations


class FreshNames:
    """Hands out names not in a (growing) set of taken names."""

    def __init__(self, taken: set[str] | None = None, start: int = 0):
        self.taken = set(taken) if taken else set()
        self.start = start

    def reserve(self, name: str) -> None:
        self.taken.add(name)

    def fresh(self, base: str) -> str:
        if base and base not in self.taken:
            self.taken.add(base)
            return base
        n = self.start
        while f"{base}{n}" in self.taken:
            n += 1
        name = f"{base}{n}"
        self.taken.add(name)
        return name

    def fresh_pair(self, base: str) -> tuple[str, str]:
        """Two related fresh names (used when a binder is duplicated)."""
        first = self.fresh(f"{base}#0")
        second = self.fresh(f"{base}#1")
        return first, second
