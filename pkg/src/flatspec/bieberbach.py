"""Bieberbach groups over the cubic lattice Z^n.

Linear parts are signed permutations (exactly the orthogonal matrices that
stabilize Z^n), translation parts are rational vectors reduced mod 1 with
coordinates in {0, 1/4, 1/2, 3/4}.  A group is held as one representative
per coset of the translation lattice, identity first.

Conventions, fixed once and used everywhere:

* column action: ``B e_j = signs[j] * e_{perm[j]}``;
* an isometry ``B L_b`` maps x to ``B(x + b)``, hence products compose as
  ``(Ba L_a)(Bb L_b) = (Ba Bb) L_{Bb^-1 a + b}`` with the translation
  reduced mod 1.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .arith import as_quarter, format_rational, mod1, parse_rational

#: largest holonomy group expand_holonomy will build
HOLONOMY_CAP = 2**16


class HolonomyExpansionError(ValueError):
    """Raised when generator closure blows up or translations conflict."""


class GroupValidationError(ValueError):
    """Raised when a candidate group fails structural validation."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__(report.summary())


@dataclass(frozen=True)
class SignedPermutation:
    """An orthogonal automorphism of Z^n: B e_j = signs[j] * e_{perm[j]}.

    ``perm`` holds 0-based images; the JSON interchange form is 1-based.
    """

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        n = len(self.perm)
        if len(self.signs) != n:
            raise ValueError("perm and signs must have equal length")
        if sorted(self.perm) != list(range(n)):
            raise ValueError(f"perm {self.perm} is not a permutation of 0..{n - 1}")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @property
    def dim(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def diagonal(cls, signs) -> "SignedPermutation":
        signs = tuple(signs)
        return cls(tuple(range(len(signs))), signs)

    def is_identity(self) -> bool:
        return all(s == 1 for s in self.signs) and self.perm == tuple(range(self.dim))

    def is_diagonal(self) -> bool:
        return self.perm == tuple(range(self.dim))

    def apply(self, vector):
        """Image of a coordinate vector (entries int or Fraction)."""
        if len(vector) != self.dim:
            raise ValueError("dimension mismatch")
        out = [0] * self.dim
        for j, (target, sign) in enumerate(zip(self.perm, self.signs)):
            out[target] = sign * vector[j]
        return tuple(out)

    def compose(self, other: "SignedPermutation") -> "SignedPermutation":
        """Matrix product self o other."""
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return _compose(self, other)

    def inverse(self) -> "SignedPermutation":
        return _inverse(self)

    def cycles(self):
        """Cycle data: tuples (indices, eps, sign_product).

        ``indices`` follows the orbit j -> perm[j]; ``eps[t]`` is the product
        of the signs met strictly before step t, so a cycle with sign product
        +1 has fixed vectors proportional to sum(eps[t] * e_{indices[t]}).
        """
        return _cycles(self)

    def order(self) -> int:
        result = 1
        for indices, _eps, sigma in self.cycles():
            length = len(indices)
            result = math.lcm(result, length if sigma == 1 else 2 * length)
        return result

    def det(self) -> int:
        sign = 1
        for indices, _eps, sigma in self.cycles():
            sign *= sigma * (-1) ** (len(indices) - 1)
        return sign

    def trace(self) -> int:
        return sum(self.signs[j] for j in range(self.dim) if self.perm[j] == j)

    def to_json(self) -> dict:
        return {"perm": [p + 1 for p in self.perm], "signs": list(self.signs)}

    @classmethod
    def from_json(cls, obj: dict) -> "SignedPermutation":
        perm = tuple(int(p) - 1 for p in obj["perm"])
        signs = tuple(int(s) for s in obj["signs"])
        return cls(perm, signs)

    def __str__(self) -> str:
        cols = ",".join(f"{'-' if s < 0 else ''}e{t + 1}" for t, s in zip(self.perm, self.signs))
        return f"[{cols}]"


# few distinct linear parts occur per session, so product and inverse tables
# stay small while holonomy expansion hits them constantly
@lru_cache(maxsize=None)
def _compose(a: SignedPermutation, b: SignedPermutation) -> SignedPermutation:
    perm = tuple(a.perm[b.perm[j]] for j in range(a.dim))
    signs = tuple(b.signs[j] * a.signs[b.perm[j]] for j in range(a.dim))
    return SignedPermutation(perm, signs)


@lru_cache(maxsize=None)
def _inverse(b: SignedPermutation) -> SignedPermutation:
    perm = [0] * b.dim
    signs = [1] * b.dim
    for j, (target, sign) in enumerate(zip(b.perm, b.signs)):
        perm[target] = j
        signs[target] = sign
    return SignedPermutation(tuple(perm), tuple(signs))


@lru_cache(maxsize=None)
def _cycles(b: SignedPermutation):
    n = b.dim
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        indices = []
        eps = []
        j = start
        e = 1
        while True:
            seen[j] = True
            indices.append(j)
            eps.append(e)
            e *= b.signs[j]
            j = b.perm[j]
            if j == start:
                break
        out.append((tuple(indices), tuple(eps), e))
    return tuple(out)


@dataclass(frozen=True)
class IsometryElement:
    """A Euclidean isometry B L_b with B a signed permutation and b taken
    mod 1 with coordinates in {0, 1/4, 1/2, 3/4}."""

    linear: SignedPermutation
    translation: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.translation) != self.linear.dim:
            raise ValueError("translation length must equal the dimension")
        reduced = tuple(mod1(as_quarter(t)) for t in self.translation)
        object.__setattr__(self, "translation", reduced)

    @property
    def dim(self) -> int:
        return self.linear.dim

    @classmethod
    def identity(cls, n: int) -> "IsometryElement":
        return cls(SignedPermutation.identity(n), (Fraction(0),) * n)

    def is_identity(self) -> bool:
        return self.linear.is_identity() and all(t == 0 for t in self.translation)

    def compose(self, other: "IsometryElement") -> "IsometryElement":
        """(Ba L_a)(Bb L_b) = (Ba Bb) L_{Bb^-1 a + b}."""
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        linear = self.linear.compose(other.linear)
        shifted = other.linear.inverse().apply(self.translation)
        translation = tuple((a + b) % 1 for a, b in zip(shifted, other.translation))
        return _raw_isometry(linear, translation)

    def inverse(self) -> "IsometryElement":
        linear = self.linear.inverse()
        moved = self.linear.apply(self.translation)
        return _raw_isometry(linear, tuple((-t) % 1 for t in moved))

    def sort_key(self):
        return (self.linear.perm, self.linear.signs, self.translation)

    def key_string(self) -> str:
        perm = ",".join(str(p + 1) for p in self.linear.perm)
        signs = ",".join("+" if s > 0 else "-" for s in self.linear.signs)
        trans = ",".join(str(format_rational(t)) for t in self.translation)
        return f"{perm}|{signs}|{trans}"

    def to_json(self) -> dict:
        obj = self.linear.to_json()
        obj["translation"] = [format_rational(t) for t in self.translation]
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "IsometryElement":
        linear = SignedPermutation.from_json(obj)
        translation = tuple(parse_rational(t) for t in obj.get("translation", []))
        if not translation:
            translation = (Fraction(0),) * linear.dim
        return cls(linear, translation)

    def __str__(self) -> str:
        trans = ",".join(str(format_rational(t)) for t in self.translation)
        return f"{self.linear}L[{trans}]"


def _raw_isometry(linear: SignedPermutation, translation: tuple[Fraction, ...]) -> IsometryElement:
    # bypasses the normalizing constructor; callers must pass translations
    # already reduced mod 1 on the quarter grid (true for products and
    # inverses of reduced elements)
    elem = object.__new__(IsometryElement)
    object.__setattr__(elem, "linear", linear)
    object.__setattr__(elem, "translation", translation)
    return elem


@dataclass(frozen=True)
class BieberbachGroup:
    """A candidate Bieberbach group: one representative per coset of the
    translation lattice, identity first, plus the generators it came from."""

    dim: int
    holonomy: tuple[IsometryElement, ...]
    generators: tuple[IsometryElement, ...] = ()
    name: str | None = None

    @property
    def order(self) -> int:
        """|F|, the holonomy group order."""
        return len(self.holonomy)

    def linear_parts(self) -> tuple[SignedPermutation, ...]:
        return tuple(e.linear for e in self.holonomy)

    def label(self) -> str:
        return self.name if self.name else f"group(dim={self.dim},|F|={self.order})"

    def renamed(self, name: str) -> "BieberbachGroup":
        return replace(self, name=name)

    def canonical_key(self) -> str:
        """Deterministic serialization; equal keys iff identical coset
        representative sets."""
        return ";".join(e.key_string() for e in sorted(self.holonomy, key=IsometryElement.sort_key))

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "name": self.name,
            "generators": [g.to_json() for g in self.generators],
        }

    def __str__(self) -> str:
        return f"{self.label()}: " + ", ".join(str(e) for e in self.holonomy)


def group_from_json(obj: dict) -> BieberbachGroup:
    """Rebuild a group from the JSON interchange form by re-expanding its
    generators."""
    dim = int(obj["dim"])
    generators = [IsometryElement.from_json(g) for g in obj.get("generators", [])]
    return expand_holonomy(generators, dim, name=obj.get("name"))


def expand_holonomy(
    generators,
    dim: int,
    name: str | None = None,
    cap: int = HOLONOMY_CAP,
) -> BieberbachGroup:
    """Breadth-first closure of the generators' linear parts modulo Z^n.

    Keeps one representative per linear part (the identity's translation is
    0 by construction).  Raises HolonomyExpansionError if two products demand
    different translations mod 1 for the same linear part, or if the closure
    exceeds ``cap``.
    """
    gens = tuple(generators)
    for g in gens:
        if g.dim != dim:
            raise ValueError(f"generator dimension {g.dim} != {dim}")
    identity = IsometryElement.identity(dim)
    reps: dict[SignedPermutation, IsometryElement] = {identity.linear: identity}
    queue = deque([identity])
    while queue:
        elem = queue.popleft()
        for gen in gens:
            prod = elem.compose(gen)
            known = reps.get(prod.linear)
            if known is None:
                if len(reps) >= cap:
                    raise HolonomyExpansionError(
                        f"holonomy closure exceeded the cap of {cap} elements"
                    )
                reps[prod.linear] = prod
                queue.append(prod)
            elif known.translation != prod.translation:
                raise HolonomyExpansionError(
                    "inconsistent cocycle: linear part "
                    f"{prod.linear} carries translations {known.translation} and "
                    f"{prod.translation} mod 1"
                )
    return BieberbachGroup(dim=dim, holonomy=tuple(reps.values()), generators=gens, name=name)


def coset_is_torsion_free(element: IsometryElement) -> bool:
    """True iff no isometry in element * Z^n has finite order.

    With p_B the orthogonal projection onto the fixed space of B, the coset
    of B L_b contains torsion iff p_B(b) lies in p_B(Z^n); per positive
    cycle of B that is the condition sum(eps * b) in Z, so the coset is
    torsion free iff some positive cycle gives a non-integer sum.
    """
    for indices, eps, sigma in element.linear.cycles():
        if sigma != 1:
            continue
        total = sum((e * element.translation[j] for j, e in zip(indices, eps)), Fraction(0))
        if total.denominator != 1:
            return True
    return False


def is_torsion_free(group: BieberbachGroup) -> bool:
    """Standard criterion applied to every non-identity representative."""
    return all(
        coset_is_torsion_free(elem) for elem in group.holonomy if not elem.linear.is_identity()
    )


def torsion_witness(group: BieberbachGroup) -> IsometryElement | None:
    for elem in group.holonomy:
        if elem.linear.is_identity():
            continue
        if not coset_is_torsion_free(elem):
            return elem
    return None


@dataclass(frozen=True)
class HolonomyClass:
    """Isomorphism data for the finite holonomy group."""

    order: int
    abelian: bool
    elementary_rank: int | None
    description: str

    @property
    def is_elementary_abelian_2(self) -> bool:
        return self.elementary_rank is not None


def _partitions(total: int, largest: int | None = None):
    if total == 0:
        yield ()
        return
    if largest is None:
        largest = total
    for part in range(min(total, largest), 0, -1):
        for rest in _partitions(total - part, part):
            yield (part,) + rest


def _abelian_candidates(order: int):
    """All abelian groups of the given order, as primary cyclic factors."""
    factors = {}
    m = order
    p = 2
    while p * p <= m:
        while m % p == 0:
            factors[p] = factors.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        factors[m] = factors.get(m, 0) + 1
    per_prime = []
    for p, a in sorted(factors.items()):
        per_prime.append([tuple(p**part for part in parts) for parts in _partitions(a)])
    for combo in itertools.product(*per_prime):
        yield tuple(sorted((d for group in combo for d in group), reverse=True))


def _order_statistics(cyclic_factors) -> tuple[int, ...]:
    stats = []
    for element in itertools.product(*(range(d) for d in cyclic_factors)):
        stats.append(math.lcm(*(d // math.gcd(d, a) for d, a in zip(cyclic_factors, element))))
    return tuple(sorted(stats))


def classify_holonomy(group: BieberbachGroup) -> HolonomyClass:
    """Classify F: elementary abelian 2-groups exactly, other small abelian
    groups by isomorphism type (order statistics determine abelian groups)."""
    parts = group.linear_parts()
    m = len(parts)
    orders = sorted(b.order() for b in parts)
    abelian = all(
        a.compose(b) == b.compose(a) for a, b in itertools.combinations(parts, 2)
    )
    if abelian and all(o <= 2 for o in orders):
        rank = m.bit_length() - 1
        if 2**rank == m:
            if rank == 0:
                description = "trivial"
            elif rank == 1:
                description = "Z2"
            else:
                description = f"Z2^{rank}"
            return HolonomyClass(m, True, rank, description)
    if abelian and m <= 16:
        ours = tuple(orders)
        for factors in _abelian_candidates(m):
            if _order_statistics(factors) == ours:
                description = " x ".join(f"Z{d}" for d in factors)
                return HolonomyClass(m, True, None, description)
    kind = "abelian" if abelian else "nonabelian"
    return HolonomyClass(m, abelian, None, f"{kind} of order {m}")


def is_diagonal_type(group: BieberbachGroup) -> bool:
    """All linear parts diagonal sign matrices and all translations in (1/2)Z^n."""
    return all(e.linear.is_diagonal() for e in group.holonomy) and all(
        t.denominator in (1, 2) for e in group.holonomy for t in e.translation
    )


def is_orientable(group: BieberbachGroup) -> bool:
    return all(e.linear.det() == 1 for e in group.holonomy)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the structural checks; accepted iff closure, cocycle
    consistency and torsion-freeness all hold."""

    dim: int
    name: str | None
    closure: bool
    cocycle: bool
    torsion_free: bool
    holonomy_order: int
    holonomy: str
    elementary_rank: int | None
    diagonal_type: bool
    orientable: bool
    error: str | None = None

    @property
    def accepted(self) -> bool:
        return self.closure and self.cocycle and self.torsion_free

    def summary(self) -> str:
        if self.accepted:
            return f"accepted: holonomy {self.holonomy} of order {self.holonomy_order}"
        failed = [
            label
            for label, ok in (
                ("closure", self.closure),
                ("cocycle", self.cocycle),
                ("torsion-free", self.torsion_free),
            )
            if not ok
        ]
        detail = f" ({self.error})" if self.error else ""
        return "rejected: failed " + ", ".join(failed) + detail

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "name": self.name,
            "accepted": self.accepted,
            "closure": self.closure,
            "cocycle": self.cocycle,
            "torsion_free": self.torsion_free,
            "holonomy_order": self.holonomy_order,
            "holonomy": self.holonomy,
            "elementary_rank": self.elementary_rank,
            "diagonal_type": self.diagonal_type,
            "orientable": self.orientable,
            "error": self.error,
        }


def validate(group: BieberbachGroup) -> ValidationReport:
    """Re-verify closure and cocycle consistency pairwise, then check
    torsion-freeness and report the structural classification."""
    by_linear = {e.linear: e for e in group.holonomy}
    closure = True
    cocycle = True
    detail = None
    identity_rep = by_linear.get(SignedPermutation.identity(group.dim))
    if identity_rep is None or any(t != 0 for t in identity_rep.translation):
        cocycle = False
        detail = "identity coset missing or carries a nonzero translation"
    for a in group.holonomy:
        for b in group.holonomy:
            prod = a.compose(b)
            known = by_linear.get(prod.linear)
            if known is None:
                closure = False
                detail = detail or f"product {a}*{b} leaves the representative set"
            elif known.translation != prod.translation:
                cocycle = False
                detail = detail or (
                    f"product {a}*{b} demands translation {prod.translation} for "
                    f"{prod.linear}, stored {known.translation}"
                )
    torsion_free = is_torsion_free(group) if closure and cocycle else False
    if closure and cocycle and not torsion_free:
        witness = torsion_witness(group)
        detail = detail or f"coset of {witness} contains an element of finite order"
    cls = classify_holonomy(group)
    return ValidationReport(
        dim=group.dim,
        name=group.name,
        closure=closure,
        cocycle=cocycle,
        torsion_free=torsion_free,
        holonomy_order=group.order,
        holonomy=cls.description,
        elementary_rank=cls.elementary_rank,
        diagonal_type=is_diagonal_type(group),
        orientable=is_orientable(group),
        error=detail,
    )


def validate_generators(
    generators, dim: int, name: str | None = None
) -> tuple[BieberbachGroup | None, ValidationReport]:
    """Expand and validate; expansion failures become a rejecting report."""
    try:
        group = expand_holonomy(generators, dim, name=name)
    except (HolonomyExpansionError, ValueError) as exc:
        report = ValidationReport(
            dim=dim,
            name=name,
            closure=False,
            cocycle=False,
            torsion_free=False,
            holonomy_order=0,
            holonomy="unknown",
            elementary_rank=None,
            diagonal_type=False,
            orientable=False,
            error=str(exc),
        )
        return None, report
    report = validate(group)
    return (group if report.accepted else None), report


def require_valid(group: BieberbachGroup) -> BieberbachGroup:
    """Return the group if accepted, else raise GroupValidationError."""
    report = validate(group)
    if not report.accepted:
        raise GroupValidationError(report)
    return group
