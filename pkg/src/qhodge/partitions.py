"""Generalised partitions (dominant weights of GL(N)) and group families."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import total_ordering

__all__ = ["GenPartition", "GroupSpec", "Window", "enumerate_partitions", "FAMILIES"]

FAMILIES = ("glq", "slq", "oq", "soq", "spq")


@total_ordering
@dataclass(frozen=True)
class GenPartition:
    """A weakly decreasing integer tuple, possibly with negative parts."""
    parts: tuple

    def __post_init__(self):
        p = tuple(int(x) for x in self.parts)
        object.__setattr__(self, "parts", p)
        if any(a < b for a, b in zip(p, p[1:])):
            raise ValueError(f"parts must be weakly decreasing: {p}")

    @classmethod
    def of(cls, *parts):
        return cls(tuple(parts))

    @classmethod
    def parse(cls, s: str, N: int | None = None):
        """Parse "2,-1" or "(2,-1)"; zeros are inserted between the
        nonnegative and the negative parts up to N parts."""
        s = s.strip().strip("()[]")
        parts = [int(x) for x in s.replace(" ", "").split(",") if x != ""]
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {s}")
        if N is not None:
            if len(parts) > N:
                raise ValueError(f"{s!r} has more than {N} parts")
            pos = [x for x in parts if x >= 0]
            neg = [x for x in parts if x < 0]
            parts = pos + [0] * (N - len(parts)) + neg
        return cls(tuple(parts))

    @classmethod
    def zero(cls, N):
        return cls((0,) * N)

    @property
    def N(self):
        return len(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __lt__(self, other):
        return self.parts < other.parts

    def __str__(self):
        return ",".join(str(x) for x in self.parts)

    def label(self):
        return "(" + ",".join(str(x) for x in self.parts) + ")"

    @property
    def size(self) -> int:
        """|lambda|, the sum of the parts."""
        return sum(self.parts)

    @property
    def box_count(self) -> int:
        """Number of boxes counting positive and negative ones."""
        return sum(abs(x) for x in self.parts)

    @property
    def is_nonnegative(self) -> bool:
        return not self.parts or self.parts[-1] >= 0

    def boxes(self):
        """Signed boxes: (row, col, sign) with 1-based row and col.

        Positive parts contribute boxes in columns 1..lambda_i, negative
        parts boxes in columns 0, -1, ..., lambda_i + 1.
        """
        out = []
        for i, l in enumerate(self.parts, start=1):
            if l > 0:
                out.extend((i, j, 1) for j in range(1, l + 1))
            elif l < 0:
                out.extend((i, j, -1) for j in range(0, l, -1))
        return out

    def contents(self):
        """(content, sign) for every box; content = col - row."""
        return [(j - i, s) for i, j, s in self.boxes()]

    def signed_content_sum(self) -> int:
        return sum(s * c for c, s in self.contents())

    def n(self) -> int:
        """n(lambda) = sum (i-1) lambda_i."""
        return sum((i - 1) * l for i, l in enumerate(self.parts, start=1))

    def conjugate(self):
        if not self.is_nonnegative:
            raise ValueError("conjugate is defined for nonnegative partitions")
        m = self.parts[0] if self.parts else 0
        return tuple(sum(1 for l in self.parts if l >= j) for j in range(1, m + 1))

    def n_conjugate(self) -> int:
        return sum((j - 1) * c for j, c in enumerate(self.conjugate(), start=1))

    def shift(self, k: int):
        """lambda + (k^N)."""
        return GenPartition(tuple(x + k for x in self.parts))

    def multiplicities(self):
        """m_i = lambda_i - lambda_{i+1} for i = 1..N-1."""
        p = self.parts
        return tuple(p[i] - p[i + 1] for i in range(len(p) - 1))


@dataclass(frozen=True)
class GroupSpec:
    family: str
    N: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown group family {self.family!r}")
        if self.N < 1:
            raise ValueError("N must be positive")
        if self.family in ("oq", "soq", "spq") and self.N < 3:
            raise ValueError("orthogonal and symplectic families need N >= 3")
        if self.family == "spq" and self.N % 2:
            raise ValueError("the symplectic family needs even N")

    @property
    def is_gl_type(self):
        return self.family in ("glq", "slq")

    @property
    def epsilon(self) -> int:
        """+1 for orthogonal families, -1 for symplectic."""
        if self.family in ("oq", "soq"):
            return 1
        if self.family == "spq":
            return -1
        raise ValueError("epsilon is defined for B, C, D families")

    def admits(self, lam: GenPartition) -> bool:
        """Membership of the label set for irreducible corepresentations."""
        if lam.N != self.N:
            return False
        f = self.family
        if f == "glq":
            return True
        if not lam.is_nonnegative:
            return False
        if f == "slq":
            return lam.parts[-1] == 0
        conj = lam.conjugate()
        c1 = conj[0] if conj else 0
        c2 = conj[1] if len(conj) > 1 else 0
        if f == "oq":
            return c1 + c2 <= self.N
        if f == "spq":
            return c1 <= self.N // 2
        return c1 <= self.N // 2  # soq


@dataclass(frozen=True)
class Window:
    """Finite enumeration window: bound on box count and/or on |parts|."""
    max_boxes: int | None = None
    max_part: int | None = None

    def __post_init__(self):
        if self.max_boxes is None and self.max_part is None:
            raise ValueError("a window needs max_boxes or max_part")
        for v in (self.max_boxes, self.max_part):
            if v is not None and v < 0:
                raise ValueError("window bounds must be nonnegative")

    def contains(self, lam: GenPartition) -> bool:
        if self.max_boxes is not None and lam.box_count > self.max_boxes:
            return False
        if self.max_part is not None and any(abs(x) > self.max_part for x in lam.parts):
            return False
        return True


def enumerate_partitions(group: GroupSpec, window: Window):
    """All admissible labels in the window, in lexicographic order."""
    bound = window.max_part if window.max_part is not None else window.max_boxes
    if window.max_boxes is not None:
        bound = min(bound, window.max_boxes)
    lo = -bound if group.family == "glq" else 0
    vals = range(bound, lo - 1, -1)
    out = []
    for combo in itertools.combinations_with_replacement(vals, group.N):
        lam = GenPartition(tuple(combo))
        if window.contains(lam) and group.admits(lam):
            out.append(lam)
    out.sort()
    return out
