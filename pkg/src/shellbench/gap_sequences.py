"""Generation and canonicalization of Shellsort gap sequences.

Four families are provided:

* ``tokuda``      - the closed form ceil(((9/4)^k - 1) / (9/4 - 1)).
* ``pratt``       - ordered products p^x * q^y below the array size.
* ``ciura``       - the fixed empirically optimized lists for 128 / 1000 /
  large arrays, extended geometrically by ratio 9/4 once exhausted.
* ``template_a`` / ``template_b`` - the two parameterized generating
  functions whose parameters the grid optimizer searches:

      k_A(i) = floor((a^floor(i/b) * c^floor(i/d))^f + e),  i = 0, 1, ...
      k_B(i) = floor(a * b^(i/c) + d),                      i = 0, 1, ...

  Template B's literal form floors the exponent (floor(i/c)); that variant
  is available behind ``exponent_floor=True`` but does not reproduce the
  reference initial terms, so the smooth exponent is the default.

Every generator returns a strictly increasing sequence that starts at 1 and
stays below the requested array size.  Template evaluation prepends 1 when
the function itself never produces it and deduplicates the plateaus the
floored exponents create; parameters whose floored values ever decrease
raise :class:`DegenerateSequenceError` (such candidates are dropped and
counted by the optimizer), while parameters that stall on a constant value
simply end the sequence.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence


class EmptySequenceError(ValueError):
    """No gap fits below the requested array size."""


class DegenerateSequenceError(ValueError):
    """Template parameters produce a non-increasing gap list."""


@dataclass(frozen=True)
class GapSequence:
    """A named, strictly increasing gap list starting at 1."""

    name: str
    gaps: tuple[int, ...]

    def __post_init__(self):
        if not self.gaps:
            raise EmptySequenceError(f"{self.name}: empty gap list")
        if self.gaps[0] != 1:
            raise ValueError(f"{self.name}: first gap must be 1, got {self.gaps[0]}")
        if any(b <= a for a, b in zip(self.gaps, self.gaps[1:])):
            raise ValueError(f"{self.name}: gaps must be strictly increasing: {self.gaps}")

    def __len__(self) -> int:
        return len(self.gaps)

    def __iter__(self):
        return iter(self.gaps)

    def truncated(self, n: int) -> "GapSequence":
        """The same sequence restricted to gaps below ``n``."""
        kept = tuple(g for g in self.gaps if g < n)
        if not kept:
            raise EmptySequenceError(f"{self.name}: no gap fits below n={n}")
        if kept == self.gaps:
            return self
        return GapSequence(self.name, kept)


def canonical_key(gaps) -> str:
    """Deterministic text key, equal iff the gap lists are equal.

    Used by the grid optimizer to deduplicate parameter tuples that generate
    the same sequence (e.g. swapping the (a, b) and (c, d) pairs of template
    A changes nothing).
    """
    seq = tuple(getattr(gaps, "gaps", gaps))
    return ",".join(str(int(g)) for g in seq)


@dataclass(frozen=True)
class PrattBasePair:
    """Coprime bases (p, q) for ordered-product sequences."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 2 or self.q < 2:
            raise ValueError(f"bases must be >= 2, got ({self.p}, {self.q})")

    @property
    def coprime(self) -> bool:
        return math.gcd(self.p, self.q) == 1

    @property
    def frobenius_number(self) -> int:
        """Largest offset not representable as a nonnegative combination of p and q."""
        if not self.coprime:
            raise ValueError(f"({self.p}, {self.q}) are not coprime")
        return self.p * self.q - self.p - self.q


class CiuraVariant(Enum):
    C128 = "128"
    C1000 = "1000"
    LARGE = "large"


_CIURA_LISTS = {
    CiuraVariant.C128: (1, 4, 9, 24, 85, 126),
    CiuraVariant.C1000: (1, 4, 10, 23, 57, 156, 409, 995),
    CiuraVariant.LARGE: (1, 4, 10, 23, 57, 132, 301, 701, 1750),
}


def tokuda(n: int) -> GapSequence:
    """Gaps ceil(((9/4)^k - 1) / (9/4 - 1)) for k = 1, 2, ... while below n."""
    if n < 2:
        raise EmptySequenceError(f"tokuda needs n >= 2, got {n}")
    gaps = []
    k = 1
    while True:
        # exact integer ceil of ((9/4)^k - 1) / (5/4) = (9^k - 4^k) / (5 * 4^(k-1))
        den = 5 * 4 ** (k - 1)
        value = -((4 ** k - 9 ** k) // den)
        if value >= n:
            break
        gaps.append(value)
        k += 1
    return GapSequence("tokuda", tuple(gaps))


def pratt(bases: "PrattBasePair | tuple[int, int]", n: int) -> GapSequence:
    """Sorted products p^x * q^y in [1, n).  Non-coprime bases only warn."""
    if not isinstance(bases, PrattBasePair):
        bases = PrattBasePair(*bases)
    if n < 2:
        raise EmptySequenceError(f"pratt needs n >= 2, got {n}")
    if not bases.coprime:
        warnings.warn(
            f"bases ({bases.p}, {bases.q}) are not coprime; the remaining-inversion "
            "structure of the presorted array is not bounded by a Frobenius number",
            stacklevel=2,
        )
    values = set()
    x = 1
    while x < n:
        y = x
        while y < n:
            values.add(y)
            y *= bases.q
        x *= bases.p
    return GapSequence(f"pratt-{bases.p}{bases.q}", tuple(sorted(values)))


def _ceil_times_9_over_4(x: int) -> int:
    return -((-9 * x) // 4)


def ciura(variant: CiuraVariant, n: int, extension_rounding: str = "ceil") -> GapSequence:
    """Fixed Ciura list truncated below n, then extended geometrically.

    The extension multiplies the last term by 9/4 repeatedly; rounding is
    configurable ("ceil", "round", "floor") and defaults to ceiling for
    consistency with the Tokuda closed form.
    """
    if n < 2:
        raise EmptySequenceError(f"ciura needs n >= 2, got {n}")
    if not isinstance(variant, CiuraVariant):
        variant = CiuraVariant(str(variant))
    gaps = [g for g in _CIURA_LISTS[variant] if g < n]
    if not gaps:
        gaps = [1]
    while True:
        last = gaps[-1]
        if extension_rounding == "ceil":
            nxt = _ceil_times_9_over_4(last)
        elif extension_rounding == "floor":
            nxt = (9 * last) // 4
        elif extension_rounding == "round":
            nxt = round(last * 2.25)
        else:
            raise ValueError(f"unknown rounding rule: {extension_rounding!r}")
        if nxt >= n:
            break
        gaps.append(nxt)
    name = {CiuraVariant.C128: "ciura-128", CiuraVariant.C1000: "ciura-1000",
            CiuraVariant.LARGE: "ciura-large"}[variant]
    return GapSequence(name, tuple(gaps))


@dataclass(frozen=True)
class TemplateParamsA:
    """Parameters (a, b, c, d, e, f) of the six-parameter template."""

    a: float
    b: float
    c: float
    d: float
    e: int
    f: float

    def as_tuple(self) -> tuple[float, float, float, float, int, float]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)


@dataclass(frozen=True)
class TemplateParamsB:
    """Parameters (a, b, c, d) of the four-parameter template.

    ``exponent_floor=True`` uses floor(i/c) in the exponent; the default
    smooth exponent i/c is the variant that reproduces the reference
    initial terms.
    """

    a: float
    b: float
    c: float
    d: int
    exponent_floor: bool = False

    def as_tuple(self) -> tuple[float, float, float, int]:
        return (self.a, self.b, self.c, self.d)


_STALL_LIMIT = 1000


def _generate_template(value_at: Callable[[int], float], n: int, label: str) -> GapSequence:
    """Evaluate ``value_at`` for i = 0, 1, ... and assemble a valid gap list.

    Stops at the first value >= n.  Consecutive equal floored values are
    plateaus of the floored exponents and are deduplicated; a strict decrease
    is degenerate; a plateau that never breaks within the stall limit ends
    the sequence (constant templates thus collapse to [1]).
    """
    values: list[int] = []
    stall = 0
    i = 0
    while True:
        try:
            v = value_at(i)
        except OverflowError:
            break  # the next value is far beyond any array size
        if math.isnan(v):
            raise DegenerateSequenceError(f"{label}: template evaluates to NaN at i={i}")
        if v >= n:
            break
        k = math.floor(v)
        if not values:
            values.append(k)
        elif k == values[-1]:
            stall += 1
            if stall > _STALL_LIMIT:
                break
        elif k < values[-1]:
            raise DegenerateSequenceError(
                f"{label}: value decreases at i={i} ({values[-1]} -> {k})"
            )
        else:
            values.append(k)
            stall = 0
        i += 1
    gaps = [g for g in values if g >= 2]
    return GapSequence(label, (1, *gaps))


def template_a(params: TemplateParamsA, n: int, name: str | None = None) -> GapSequence:
    """Instantiate k_A(i) = floor((a^floor(i/b) * c^floor(i/d))^f + e) below n."""
    a, b, c, d, e, f = params.as_tuple()
    if b <= 0 or d <= 0:
        raise DegenerateSequenceError(f"template-a: divisors must be positive, got b={b}, d={d}")
    if a < 0 or c < 0 or f <= 0 or e < 0:
        raise DegenerateSequenceError(f"template-a: invalid parameters {params.as_tuple()}")
    if n < 2:
        raise EmptySequenceError(f"template-a needs n >= 2, got {n}")

    def value_at(i: int) -> float:
        base = a ** math.floor(i / b) * c ** math.floor(i / d)
        return base ** f + e

    return _generate_template(value_at, n, name or "template-a")


def template_b(params: TemplateParamsB, n: int, name: str | None = None) -> GapSequence:
    """Instantiate k_B(i) = floor(a * b^(i/c) + d) below n.

    With ``params.exponent_floor`` the exponent is floor(i/c) instead, which
    is retained only to document that it does not reproduce the reference
    initial terms.
    """
    a, b, c, d = params.as_tuple()
    if c <= 0:
        raise DegenerateSequenceError(f"template-b: divisor c must be positive, got {c}")
    if a < 0 or b < 0 or d < 0:
        raise DegenerateSequenceError(f"template-b: invalid parameters {params.as_tuple()}")
    if n < 2:
        raise EmptySequenceError(f"template-b needs n >= 2, got {n}")

    if params.exponent_floor:
        def value_at(i: int) -> float:
            return a * b ** math.floor(i / c) + d
    else:
        def value_at(i: int) -> float:
            return a * b ** (i / c) + d

    return _generate_template(value_at, n, name or "template-b")


# Reference optimized parameter tuples for the two templates.
OURS_A128_COMP = TemplateParamsA(2.6321, 1.6841, 2.1570, 0.7360, 3, 0.7630)
OURS_A1000_COMP = TemplateParamsA(3.5789, 2.6316, 3.8158, 2.1579, 3, 0.7632)
OURS_A1000_TIME = TemplateParamsA(2.75, 2.75, 3.7142, 2.4286, 2, 0.7429)
OURS_B10000_COMP = TemplateParamsB(4.0816, 8.5714, 2.2449, 0)


def _named(name: str, builder) -> Callable[[int], GapSequence]:
    def build(n: int) -> GapSequence:
        seq = builder(n)
        return GapSequence(name, seq.gaps)

    return build


SEQUENCE_CATALOG: dict[str, Callable[[int], GapSequence]] = {
    "tokuda": tokuda,
    "pratt-23": _named("pratt-23", lambda n: pratt(PrattBasePair(2, 3), n)),
    "pratt-25": _named("pratt-25", lambda n: pratt(PrattBasePair(2, 5), n)),
    "pratt-34": _named("pratt-34", lambda n: pratt(PrattBasePair(3, 4), n)),
    "ciura-128": lambda n: ciura(CiuraVariant.C128, n),
    "ciura-1000": lambda n: ciura(CiuraVariant.C1000, n),
    "ciura-large": lambda n: ciura(CiuraVariant.LARGE, n),
    "ours-a128-comp": _named("ours-a128-comp", lambda n: template_a(OURS_A128_COMP, n)),
    "ours-a1000-comp": _named("ours-a1000-comp", lambda n: template_a(OURS_A1000_COMP, n)),
    "ours-a1000-time": _named("ours-a1000-time", lambda n: template_a(OURS_A1000_TIME, n)),
    "ours-b10000-comp": _named("ours-b10000-comp", lambda n: template_b(OURS_B10000_COMP, n)),
}


def _parse_adhoc(name: str, n: int) -> GapSequence:
    kind, _, arglist = name.partition(":")
    parts = [p.strip() for p in arglist.split(",") if p.strip()]
    try:
        if kind == "template-a":
            if len(parts) != 6:
                raise ValueError("template-a takes 6 parameters: a,b,c,d,e,f")
            a, b, c, d = (float(parts[i]) for i in range(4))
            e = int(parts[4])
            f = float(parts[5])
            return template_a(TemplateParamsA(a, b, c, d, e, f), n, name=name)
        if kind == "template-b":
            if len(parts) != 4:
                raise ValueError("template-b takes 4 parameters: a,b,c,d")
            return template_b(
                TemplateParamsB(float(parts[0]), float(parts[1]), float(parts[2]), int(parts[3])),
                n,
                name=name,
            )
    except (ValueError, DegenerateSequenceError) as exc:
        raise ValueError(f"cannot build sequence {name!r}: {exc}") from exc
    raise KeyError(name)


def sequence_by_name(name: str, n: int) -> GapSequence:
    """Resolve a catalog name or an ad-hoc template spec for array size ``n``.

    Catalog names: tokuda, pratt-23, pratt-25, pratt-34, ciura-128,
    ciura-1000, ciura-large, ours-a128-comp, ours-a1000-comp,
    ours-a1000-time, ours-b10000-comp.  Ad-hoc: "template-a:a,b,c,d,e,f"
    and "template-b:a,b,c,d".
    """
    key = name.lower()
    if key in SEQUENCE_CATALOG:
        return SEQUENCE_CATALOG[key](n)
    if key.startswith("template-a:") or key.startswith("template-b:"):
        return _parse_adhoc(key, n)
    raise KeyError(f"unknown sequence name: {name!r}")
