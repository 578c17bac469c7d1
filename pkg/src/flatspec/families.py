"""Constructors for the built-in manifold families.

* the one-generator family with holonomy Z2 (parameters j, h: j swap
  blocks, h sign flips, translation e_n/2);
* diagonal-type groups from explicit sign columns and half-integer
  translations, including the Hantzsche-Wendt groups;
* the {0, 1/2}-array family with holonomy Z2^(n-1) and first Betti
  number one, parameterized by the free strict upper triangle;
* a named catalog of fixed example groups (dimensions 3, 4, 6), embedded
  verbatim rather than re-derived.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import as_quarter, mod1
from .bieberbach import (
    BieberbachGroup,
    GroupValidationError,
    IsometryElement,
    SignedPermutation,
    expand_holonomy,
    is_torsion_free,
    validate,
)

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

#: largest n for which the full Z2^(n-1) array family may be enumerated
DEFAULT_KN_CAP = 8


def _require(group: BieberbachGroup) -> BieberbachGroup:
    # Constructors guarantee closure/cocycle via expansion; torsion is the
    # check that can genuinely fail, so test it cheaply and only build the
    # full report on failure.
    if not is_torsion_free(group):
        raise GroupValidationError(validate(group))
    return group


# ---------------------------------------------------------------------------
# the Z2 family


def z2_linear(n: int, j: int, h: int) -> SignedPermutation:
    """diag(J,...,J, -1,...,-1, 1,...,1) with j swap blocks and h sign flips."""
    perm = list(range(n))
    signs = [1] * n
    for k in range(j):
        perm[2 * k], perm[2 * k + 1] = 2 * k + 1, 2 * k
    for i in range(2 * j, 2 * j + h):
        signs[i] = -1
    return SignedPermutation(tuple(perm), tuple(signs))


def z2_parameters(n: int) -> list[tuple[int, int]]:
    """All (j, h) with 0 <= j <= [(n-1)/2], 0 <= h < n - 2j, j + h != 0."""
    if n < 2:
        raise ValueError(f"the family needs dimension >= 2, got n={n}")
    return [
        (j, h)
        for j in range((n - 1) // 2 + 1)
        for h in range(n - 2 * j)
        if j + h != 0
    ]


def z2_group(n: int, j: int, h: int, name: str | None = None) -> BieberbachGroup:
    """The group generated by z2_linear(n, j, h) composed with L_{e_n/2}."""
    if (j, h) not in z2_parameters(n):
        raise ValueError(f"invalid parameters j={j}, h={h} for n={n}")
    translation = tuple(HALF if i == n - 1 else Fraction(0) for i in range(n))
    generator = IsometryElement(z2_linear(n, j, h), translation)
    group = expand_holonomy([generator], n, name=name or f"M[{j},{h}]")
    return _require(group)


def z2_family(n: int) -> list[BieberbachGroup]:
    """Every diffeomorphism class with holonomy Z2 over the cubic lattice."""
    return [z2_group(n, j, h) for j, h in z2_parameters(n)]


def z2_family_size(n: int) -> int:
    """Closed-form cardinality (n - [(n-1)/2]) * ([(n-1)/2] + 1) - 1."""
    half = (n - 1) // 2
    return (n - half) * (half + 1) - 1


# ---------------------------------------------------------------------------
# diagonal-type groups


def diagonal_group(sign_columns, translations, name: str | None = None) -> BieberbachGroup:
    """Group generated by diagonal sign matrices with the given translations.

    Raises GroupValidationError carrying the full report if any structural
    check fails (used to build Hantzsche-Wendt groups and the dimension-3
    Z2^2 trio).
    """
    columns = [tuple(col) for col in sign_columns]
    shifts = [tuple(as_quarter(t) for t in trans) for trans in translations]
    if len(columns) != len(shifts):
        raise ValueError("need exactly one translation per sign column")
    if not columns:
        raise ValueError("need at least one generator column")
    n = len(columns[0])
    generators = [
        IsometryElement(SignedPermutation.diagonal(col), trans)
        for col, trans in zip(columns, shifts)
    ]
    group = expand_holonomy(generators, n, name=name)
    report = validate(group)
    if not report.accepted:
        raise GroupValidationError(report)
    return group


def hw_linear(n: int, i: int) -> SignedPermutation:
    """The diagonal matrix fixing e_i (1-based) and negating every other axis."""
    return SignedPermutation.diagonal(tuple(1 if k == i - 1 else -1 for k in range(n)))


# Translation vectors (in half units) of sample Hantzsche-Wendt groups:
# generator i uses hw_linear(n, i) and translates by row i below.  The
# first entry per dimension is the classical chain b_i = (e_i + e_{i+1})/2;
# the others were found by search over {0, 1/2} translations, each
# re-validated at construction time.
_HW_DATA: dict[int, tuple[tuple[tuple[int, ...], ...], ...]] = {
    5: (
        (
            (1, 1, 0, 0, 0),
            (0, 1, 1, 0, 0),
            (0, 0, 1, 1, 0),
            (0, 0, 0, 1, 1),
        ),
        (
            (1, 0, 0, 0, 0),
            (0, 1, 1, 0, 0),
            (0, 0, 1, 1, 0),
            (0, 0, 0, 1, 1),
        ),
        (
            (1, 0, 0, 0, 0),
            (0, 1, 1, 0, 0),
            (0, 0, 1, 1, 0),
            (1, 0, 0, 1, 1),
        ),
    ),
    7: (
        (
            (1, 1, 0, 0, 0, 0, 0),
            (0, 1, 1, 0, 0, 0, 0),
            (0, 0, 1, 1, 0, 0, 0),
            (0, 0, 0, 1, 1, 0, 0),
            (0, 0, 0, 0, 1, 1, 0),
            (0, 0, 0, 0, 0, 1, 1),
        ),
        (
            (1, 0, 1, 0, 0, 0, 1),
            (0, 1, 0, 0, 0, 1, 0),
            (0, 1, 1, 0, 1, 0, 0),
            (1, 0, 1, 1, 0, 1, 1),
            (0, 0, 0, 0, 1, 0, 1),
            (1, 0, 0, 0, 1, 1, 0),
        ),
        (
            (1, 0, 1, 0, 0, 0, 0),
            (0, 1, 1, 0, 0, 1, 0),
            (0, 0, 1, 1, 1, 1, 0),
            (0, 1, 1, 1, 0, 0, 0),
            (0, 0, 0, 1, 1, 1, 1),
            (0, 1, 0, 1, 0, 1, 0),
        ),
    ),
}


def hw_groups(n: int) -> tuple[BieberbachGroup, ...]:
    """Built-in Hantzsche-Wendt groups in odd dimension n."""
    if n == 3:
        return (catalog("hw3/M1"),)
    if n not in _HW_DATA:
        raise ValueError(f"no built-in Hantzsche-Wendt data in dimension {n}")
    groups = []
    for index, rows in enumerate(_HW_DATA[n], start=1):
        columns = [tuple(1 if k == i else -1 for k in range(n)) for i in range(n - 1)]
        translations = [tuple(Fraction(x, 2) for x in row) for row in rows]
        groups.append(
            diagonal_group(columns, translations, name=f"hw{n}/H{index}")
        )
    return tuple(groups)


# ---------------------------------------------------------------------------
# the {0, 1/2} array family with holonomy Z2^(n-1)


@dataclass(frozen=True)
class GhwArray:
    """n x n array over {0, 1/2}: column i holds the translation of the i-th
    generator (which negates only axis i), column n the derived translation
    of the product of all generators.

    Forced entries: subdiagonal (i+1, i) = 1/2, diagonal zero except
    (n, n) = 1/2, zero below the subdiagonal; every row carries an even
    number of 1/2 entries, equivalently the last column is the sum of the
    others mod 1.
    """

    n: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = self.n
        if n < 2:
            raise ValueError(f"arrays need n >= 2, got {n}")
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise ValueError(f"entries must form an {n}x{n} array")
        for row in self.entries:
            for value in row:
                if value not in (0, HALF):
                    raise ValueError(f"entries must be 0 or 1/2, got {value}")
        for c in range(n - 1):
            if self.entries[c + 1][c] != HALF:
                raise ValueError(f"subdiagonal entry ({c + 2},{c + 1}) must be 1/2")
            if self.entries[c][c] != 0:
                raise ValueError(f"diagonal entry ({c + 1},{c + 1}) must be 0")
            for r in range(c + 2, n):
                if self.entries[r][c] != 0:
                    raise ValueError(f"entry ({r + 1},{c + 1}) below the subdiagonal must be 0")
        if self.entries[n - 1][n - 1] != HALF:
            raise ValueError(f"entry ({n},{n}) must be 1/2")
        for r in range(n):
            derived = mod1(sum(self.entries[r][c] for c in range(n - 1)))
            if self.entries[r][n - 1] != derived:
                raise ValueError(
                    f"row {r + 1} has an odd number of 1/2 entries: "
                    "the last column must be the sum of the others mod 1"
                )

    @classmethod
    def from_rows(cls, rows) -> "GhwArray":
        entries = tuple(tuple(as_quarter(v) for v in row) for row in rows)
        return cls(len(entries), entries)

    @classmethod
    def from_bits(cls, n: int, bits) -> "GhwArray":
        """Array with the free entries (r, c), r < c <= n-2 (0-based, in
        lexicographic order) set from the 0/1 bit vector."""
        bits = tuple(int(b) for b in bits)
        positions = free_positions(n)
        if len(bits) != len(positions):
            raise ValueError(f"need {len(positions)} bits for n={n}, got {len(bits)}")
        rows = [[Fraction(0)] * n for _ in range(n)]
        for c in range(n - 1):
            rows[c + 1][c] = HALF
        for (r, c), bit in zip(positions, bits):
            rows[r][c] = HALF if bit else Fraction(0)
        for r in range(n):
            rows[r][n - 1] = mod1(sum(rows[r][c] for c in range(n - 1)))
        return cls(n, tuple(tuple(row) for row in rows))

    def column(self, c: int) -> tuple[Fraction, ...]:
        return tuple(self.entries[r][c] for r in range(self.n))

    def bits(self) -> tuple[int, ...]:
        return tuple(int(2 * self.entries[r][c]) for r, c in free_positions(self.n))

    def bit_string(self) -> str:
        return "".join(str(b) for b in self.bits())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rows": [[str(v) if v else 0 for v in row] for row in self.entries],
        }


def free_positions(n: int) -> list[tuple[int, int]]:
    """0-based free entry positions: r < c <= n-2, lexicographic."""
    return [(r, c) for r in range(n - 1) for c in range(r + 1, n - 1)]


def free_parameter_count(n: int) -> int:
    return (n - 1) * (n - 2) // 2


def kn_group_from_array(array: GhwArray, name: str | None = None) -> BieberbachGroup:
    """The torsion-free group read off an array: generator i negates axis i
    and translates by column i."""
    n = array.n
    generators = []
    for c in range(n - 1):
        signs = tuple(-1 if k == c else 1 for k in range(n))
        generators.append(IsometryElement(SignedPermutation.diagonal(signs), array.column(c)))
    if name is None:
        bit_string = array.bit_string()
        name = f"K{n}[{bit_string}]" if bit_string else f"K{n}"
    return _require(expand_holonomy(generators, n, name=name))


def kn_arrays(n: int, cap: int = DEFAULT_KN_CAP):
    """All arrays for dimension n, lexicographic in the free bit vector."""
    if n < 2:
        raise ValueError(f"the family needs n >= 2, got {n}")
    if n > cap:
        raise ValueError(f"dimension {n} exceeds the family cap {cap}")
    for bits in itertools.product((0, 1), repeat=free_parameter_count(n)):
        yield GhwArray.from_bits(n, bits)


def kn_family(n: int, cap: int = DEFAULT_KN_CAP) -> list[BieberbachGroup]:
    """All 2^((n-1)(n-2)/2) groups, each validated torsion-free."""
    return [kn_group_from_array(array) for array in kn_arrays(n, cap)]


# ---------------------------------------------------------------------------
# named catalog


def torus(n: int) -> BieberbachGroup:
    """The trivial-holonomy group of the n-torus."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    return expand_holonomy([], n, name=f"T^{n}")


def _jtilde_pairs(n: int, pairs) -> tuple[list[int], list[int]]:
    """perm/signs arrays with a rotation block (e_a -> -e_b, e_b -> e_a) on
    each listed 0-based pair."""
    perm = list(range(n))
    signs = [1] * n
    for a, b in pairs:
        perm[a], perm[b] = b, a
        signs[a], signs[b] = -1, 1
    return perm, signs


def _dim6_z4z2_generators() -> list[IsometryElement]:
    perm, signs = _jtilde_pairs(6, [(0, 1), (2, 3)])
    b1 = SignedPermutation(tuple(perm), tuple(signs))
    t1 = tuple(QUARTER if i == 4 else Fraction(0) for i in range(6))
    b2 = SignedPermutation.diagonal((-1, -1, 1, 1, 1, 1))
    t2 = tuple(HALF if i == 5 else Fraction(0) for i in range(6))
    return [IsometryElement(b1, t1), IsometryElement(b2, t2)]


def _dim6_z4z2_prime_generators() -> list[IsometryElement]:
    perm, signs = _jtilde_pairs(6, [(0, 1)])
    signs[2], signs[3], signs[4], signs[5] = 1, -1, -1, 1
    b1 = SignedPermutation(tuple(perm), tuple(signs))
    t1 = tuple(QUARTER if i == 5 else Fraction(0) for i in range(6))
    b2 = SignedPermutation.diagonal((-1, -1, -1, 1, -1, 1))
    t2 = tuple(HALF if i in (3, 4) else Fraction(0) for i in range(6))
    return [IsometryElement(b1, t1), IsometryElement(b2, t2)]


def _hw3_data():
    half = HALF
    zero = Fraction(0)
    return {
        "hw3/M1": (
            [(-1, -1, 1), (-1, 1, -1)],
            [(half, zero, half), (zero, half, zero)],
        ),
        "hw3/M2": (
            [(-1, -1, 1), (1, -1, 1)],
            [(zero, half, half), (zero, zero, half)],
        ),
        "hw3/M3": (
            [(-1, -1, 1), (1, -1, 1)],
            [(zero, half, half), (half, zero, zero)],
        ),
    }


_Z2_CATALOG = {
    "dim3/m10": (3, 1, 0),
    "dim3/m02": (3, 0, 2),
    "dim3/m01": (3, 0, 1),
    "dim4/m11": (4, 1, 1),
    "dim4/m10": (4, 1, 0),
    "dim4/m03": (4, 0, 3),
    "dim4/m02": (4, 0, 2),
    "dim4/m01": (4, 0, 1),
}


def catalog_names() -> list[str]:
    names = list(_Z2_CATALOG)
    names += ["hw3/M1", "hw3/M2", "hw3/M3"]
    names += ["dim6/z4z2_M", "dim6/z4z2_Mp", "dim6/z4_M", "dim6/z4_Mp"]
    return names


@lru_cache(maxsize=None)
def catalog(name: str) -> BieberbachGroup:
    """The named example group, built from its embedded data and validated."""
    if name in _Z2_CATALOG:
        n, j, h = _Z2_CATALOG[name]
        return z2_group(n, j, h, name=name)
    hw3 = _hw3_data()
    if name in hw3:
        columns, translations = hw3[name]
        return diagonal_group(columns, translations, name=name)
    if name == "dim6/z4z2_M":
        return _require(expand_holonomy(_dim6_z4z2_generators(), 6, name=name))
    if name == "dim6/z4z2_Mp":
        return _require(expand_holonomy(_dim6_z4z2_prime_generators(), 6, name=name))
    if name == "dim6/z4_M":
        return _require(expand_holonomy(_dim6_z4z2_generators()[:1], 6, name=name))
    if name == "dim6/z4_Mp":
        return _require(expand_holonomy(_dim6_z4z2_prime_generators()[:1], 6, name=name))
    raise KeyError(f"unknown catalog name {name!r}; known names: {', '.join(catalog_names())}")
