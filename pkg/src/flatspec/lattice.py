"""Cubic-lattice shells: exact enumeration of the integer vectors with a
given squared norm, and of the sub-shell fixed by a signed permutation.

The eigenvalue parameter throughout is the integer squared norm N (the
actual Laplace eigenvalue being 4*pi^2*N).  The cubic lattice is self-dual,
so shells serve for both the lattice and its dual.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache

from .bieberbach import SignedPermutation

DEFAULT_SHELL_CAP = 10_000
SHELL_CAP_ENV = "FLATSPEC_SHELL_CAP"

IntVector = tuple[int, ...]


class ShellCapExceeded(RuntimeError):
    """Requested squared norm is above the configured cap."""


def shell_cap() -> int:
    """Active cap on the squared norm; FLATSPEC_SHELL_CAP overrides."""
    raw = os.environ.get(SHELL_CAP_ENV)
    if raw is None:
        return DEFAULT_SHELL_CAP
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{SHELL_CAP_ENV} must be an integer, got {raw!r}") from exc
    if value < 0:
        raise ValueError(f"{SHELL_CAP_ENV} must be nonnegative, got {value}")
    return value


@dataclass(frozen=True)
class Shell:
    """All integer vectors of squared norm ``norm_sq`` in dimension ``dim``,
    in lexicographic order (hence closed under negation)."""

    dim: int
    norm_sq: int
    vectors: tuple[IntVector, ...]

    @property
    def count(self) -> int:
        return len(self.vectors)

    def to_json(self) -> dict:
        return {
            "n": self.dim,
            "N": self.norm_sq,
            "count": self.count,
            "vectors": [list(v) for v in self.vectors],
        }


def shell_vectors(n: int, norm_sq: int, cap: int | None = None) -> Shell:
    """The shell of squared norm ``norm_sq`` in Z^n."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if norm_sq < 0:
        raise ValueError(f"squared norm must be >= 0, got {norm_sq}")
    limit = shell_cap() if cap is None else cap
    if norm_sq > limit:
        raise ShellCapExceeded(
            f"squared norm {norm_sq} exceeds the shell cap {limit} "
            f"(raise via {SHELL_CAP_ENV} or the cap argument)"
        )
    return _shell(n, norm_sq)


@lru_cache(maxsize=None)
def _shell(n: int, norm_sq: int) -> Shell:
    out: list[IntVector] = []
    prefix: list[int] = []

    def extend(remaining: int, slots: int) -> None:
        if slots == 1:
            root = math.isqrt(remaining)
            if root * root == remaining:
                if root == 0:
                    out.append((*prefix, 0))
                else:
                    out.append((*prefix, -root))
                    out.append((*prefix, root))
            return
        bound = math.isqrt(remaining)
        for value in range(-bound, bound + 1):
            prefix.append(value)
            extend(remaining - value * value, slots - 1)
            prefix.pop()

    extend(norm_sq, n)
    return Shell(n, norm_sq, tuple(out))


def fixed_vectors(shell: Shell, b: SignedPermutation) -> tuple[IntVector, ...]:
    """The sub-list of shell vectors v with Bv = v, in shell order."""
    if b.dim != shell.dim:
        raise ValueError(f"dimension mismatch: shell dim {shell.dim}, matrix dim {b.dim}")
    return _fixed(shell.dim, shell.norm_sq, b)


@lru_cache(maxsize=None)
def _fixed(n: int, norm_sq: int, b: SignedPermutation) -> tuple[IntVector, ...]:
    # A fixed vector is constant*eps on each positive cycle and zero on the
    # rest, so enumerate one integer per positive cycle.
    positive = [(indices, eps, len(indices)) for indices, eps, sigma in b.cycles() if sigma == 1]
    if not positive:
        return (((0,) * n,) if norm_sq == 0 else ())
    found: list[IntVector] = []
    values: list[int] = []

    def assign(k: int, remaining: int) -> None:
        if k == len(positive):
            if remaining == 0:
                vector = [0] * n
                for (indices, eps, _), value in zip(positive, values):
                    for j, e in zip(indices, eps):
                        vector[j] = value * e
                found.append(tuple(vector))
            return
        length = positive[k][2]
        bound = math.isqrt(remaining // length)
        for value in range(-bound, bound + 1):
            values.append(value)
            assign(k + 1, remaining - length * value * value)
            values.pop()

    assign(0, norm_sq)
    return tuple(sorted(found))


def fixed_space_dim(b: SignedPermutation) -> int:
    """dim ker(B - Id), exactly: the number of cycles with sign product +1."""
    return sum(1 for _indices, _eps, sigma in b.cycles() if sigma == 1)
