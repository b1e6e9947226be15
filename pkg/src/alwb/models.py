"""Concrete pointed Abelian lattice-ordered groups and the standard MV-algebra.

All arithmetic is exact: chain elements are `fractions.Fraction` or `int`,
lexicographic elements are integer pairs, product elements are tuples of
factor elements, MV elements are rationals inside [0, 1].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ModelError
from .formulas import (
    BINARY, Consecution, ConstF, ConstT, Formula, Fus, Impl, Join, Meet, Var,
    consecution_variables,
)

__all__ = [
    "Model", "RationalChain", "IntegerChain", "LexZZ", "Product", "MVUnit",
    "Element", "Assignment", "evaluate", "is_designated", "refutes",
    "scale_iso", "search_counterexample", "check_strongly_decreasing",
    "build_sd_sequence", "parse_model_spec", "model_spec", "parse_element",
    "format_element",
]

Element = object
Assignment = Mapping[int, Element]


class Model:
    """Base class; concrete models provide the primitive operations."""

    __slots__ = ()

    # every subclass defines: coerce, zero/add/neg (group models), leq,
    # join, meet, impl_value, fus_value, t_value, f_value, designated,
    # norm, grid

    def impl_value(self, a, b):
        return self.add(b, self.neg(a))

    def fus_value(self, a, b):
        return self.add(a, b)

    def t_value(self):
        return self.zero()

    def join(self, a, b):
        return a if self.leq(b, a) else b

    def meet(self, a, b):
        return a if self.leq(a, b) else b

    def designated(self, a) -> bool:
        return self.leq(self.zero(), a)

    def grid(self, bound: int) -> list[Element]:
        raise ModelError(f"bounded search is not defined for {model_spec(self)}")


@dataclass(frozen=True)
class RationalChain(Model):
    """The rationals as a totally ordered group, optionally pointed."""

    point: Fraction | None = None

    def __post_init__(self):
        if self.point is not None:
            object.__setattr__(self, "point", Fraction(self.point))

    def coerce(self, x):
        try:
            return Fraction(x)
        except (TypeError, ValueError):
            raise ModelError(f"{x!r} is not a rational element") from None

    def zero(self):
        return Fraction(0)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def leq(self, a, b) -> bool:
        return a <= b

    def f_value(self):
        if self.point is None:
            raise ModelError("unpointed model: f has no value")
        return self.point

    def norm(self, x):
        return abs(x)

    def grid(self, bound: int):
        return [Fraction(k) for k in range(-bound, bound + 1)]


@dataclass(frozen=True)
class IntegerChain(Model):
    """The integers as a totally ordered group, optionally pointed."""

    point: int | None = None

    def __post_init__(self):
        if self.point is not None and not isinstance(self.point, int):
            raise ModelError("integer chain points must be integers")

    def coerce(self, x):
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return int(x)
        raise ModelError(f"{x!r} is not an integer element")

    def zero(self):
        return 0

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def leq(self, a, b) -> bool:
        return a <= b

    def f_value(self):
        if self.point is None:
            raise ModelError("unpointed model: f has no value")
        return self.point

    def norm(self, x):
        return abs(x)

    def grid(self, bound: int):
        return list(range(-bound, bound + 1))


@dataclass(frozen=True)
class LexZZ(Model):
    """Z x Z with componentwise addition and lexicographic order."""

    point: tuple[int, int] | None = None

    def __post_init__(self):
        if self.point is not None:
            object.__setattr__(self, "point", self.coerce(self.point))

    def coerce(self, x):
        if (isinstance(x, tuple) and len(x) == 2
                and all(isinstance(c, int) for c in x)):
            return x
        raise ModelError(f"{x!r} is not an integer pair")

    def zero(self):
        return (0, 0)

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def neg(self, a):
        return (-a[0], -a[1])

    def leq(self, a, b) -> bool:
        return a <= b  # tuple comparison is lexicographic

    def f_value(self):
        if self.point is None:
            raise ModelError("unpointed model: f has no value")
        return self.point

    def norm(self, x):
        return max(abs(x[0]), abs(x[1]))

    def grid(self, bound: int):
        rng = range(-bound, bound + 1)
        return [(a, b) for a in rng for b in rng]


@dataclass(frozen=True)
class Product(Model):
    """Direct product; operations, order and designation are componentwise."""

    factors: tuple[Model, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ModelError("a product needs at least one factor")

    def coerce(self, x):
        if not isinstance(x, tuple) or len(x) != len(self.factors):
            raise ModelError(f"{x!r} does not have {len(self.factors)} components")
        return tuple(m.coerce(c) for m, c in zip(self.factors, x))

    def zero(self):
        return tuple(m.zero() for m in self.factors)

    def add(self, a, b):
        return tuple(m.add(u, v) for m, u, v in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(m.neg(u) for m, u in zip(self.factors, a))

    def leq(self, a, b) -> bool:
        return all(m.leq(u, v) for m, u, v in zip(self.factors, a, b))

    def join(self, a, b):
        return tuple(m.join(u, v) for m, u, v in zip(self.factors, a, b))

    def meet(self, a, b):
        return tuple(m.meet(u, v) for m, u, v in zip(self.factors, a, b))

    def impl_value(self, a, b):
        return tuple(m.impl_value(u, v) for m, u, v in zip(self.factors, a, b))

    def fus_value(self, a, b):
        return tuple(m.fus_value(u, v) for m, u, v in zip(self.factors, a, b))

    def t_value(self):
        return tuple(m.t_value() for m in self.factors)

    def f_value(self):
        return tuple(m.f_value() for m in self.factors)

    def designated(self, a) -> bool:
        return all(m.designated(u) for m, u in zip(self.factors, a))

    def norm(self, x):
        return max(m.norm(u) for m, u in zip(self.factors, x))

    def grid(self, bound: int):
        return [tuple(c) for c in
                itertools.product(*(m.grid(bound) for m in self.factors))]


@dataclass(frozen=True)
class MVUnit(Model):
    """The standard MV-algebra on [0, 1]; designated value is 1."""

    def coerce(self, x):
        try:
            value = Fraction(x)
        except (TypeError, ValueError):
            raise ModelError(f"{x!r} is not a rational element") from None
        if not 0 <= value <= 1:
            raise ModelError(f"{x} lies outside [0, 1]")
        return value

    def leq(self, a, b) -> bool:
        return a <= b

    def impl_value(self, a, b):
        return min(Fraction(1), 1 - a + b)

    def fus_value(self, a, b):
        return max(Fraction(0), a + b - 1)

    def t_value(self):
        return Fraction(1)

    def f_value(self):
        return Fraction(0)

    def designated(self, a) -> bool:
        return a >= 1

    def norm(self, x):
        return abs(x)


def evaluate(model: Model, assignment: Assignment, formula: Formula):
    """Homomorphic evaluation of a formula under an assignment."""
    values = {v: model.coerce(x) for v, x in assignment.items()}
    return _evaluate(model, values, formula)


def _evaluate(model: Model, values: dict, formula: Formula):
    if isinstance(formula, Var):
        try:
            return values[formula.index]
        except KeyError:
            raise ModelError(f"variable p{formula.index} unassigned") from None
    if isinstance(formula, ConstT):
        return model.t_value()
    if isinstance(formula, ConstF):
        return model.f_value()
    left = _evaluate(model, values, formula.left)
    right = _evaluate(model, values, formula.right)
    if isinstance(formula, Impl):
        return model.impl_value(left, right)
    if isinstance(formula, Fus):
        return model.fus_value(left, right)
    if isinstance(formula, Join):
        return model.join(left, right)
    return model.meet(left, right)


def is_designated(model: Model, element: Element) -> bool:
    return model.designated(model.coerce(element))


def refutes(model: Model, assignment: Assignment, consecution: Consecution) -> bool:
    """True iff the assignment makes every premise designated but not the
    conclusion, i.e. it is a counterexample witness."""
    values = {v: model.coerce(x) for v, x in assignment.items()}
    for premise in consecution.premises:
        if not model.designated(_evaluate(model, values, premise)):
            return False
    return not model.designated(_evaluate(model, values, consecution.conclusion))


def scale_iso(q, x):
    """Multiply a rational element by q > 0; maps the chain pointed at a
    isomorphically onto the chain pointed at q*a."""
    factor = Fraction(q)
    if factor <= 0:
        raise ValueError("scale factor must be positive")
    return factor * Fraction(x)


def search_counterexample(model: Model, consecution: Consecution,
                          bound: int) -> dict | None:
    """Exhaustive refutation search with all coordinates in [-bound, bound].

    Assignments are enumerated in increasing max-norm, so the first (and
    returned) witness is norm-minimal.  A miss is *not* a validity proof.
    """
    if bound < 0:
        raise ValueError("bound must be a natural number")
    var_list = sorted(consecution_variables(consecution))
    for radius in range(bound + 1):
        shell = model.grid(radius)
        for combo in itertools.product(shell, repeat=len(var_list)):
            norm = max((model.norm(x) for x in combo), default=0)
            if norm != radius:
                continue
            assignment = dict(zip(var_list, combo))
            if refutes(model, assignment, consecution):
                return assignment
        if not var_list:
            break
    return None


def _is_group_chain(model: Model) -> bool:
    return isinstance(model, (RationalChain, IntegerChain, LexZZ))


def _scalar(model: Model, n: int, x):
    if isinstance(model, LexZZ):
        return (n * x[0], n * x[1])
    return n * x


def check_strongly_decreasing(model: Model, prefix: Sequence[Element],
                              n_cap: int) -> bool:
    """Check n_i * a_{i+1} >= a_i >= 2 * a_{i+1} for consecutive pairs,
    with the multiplier n_i searched in [4, n_cap]."""
    if not _is_group_chain(model):
        raise ModelError("strongly decreasing sequences live in chain models")
    if n_cap < 4:
        raise ValueError("n_cap must be at least 4")
    if not prefix:
        raise ValueError("the sequence prefix must be nonempty")
    elems = [model.coerce(a) for a in prefix]
    for a, b in zip(elems, elems[1:]):
        if not model.leq(_scalar(model, 2, b), a):
            return False
        # n |-> n*b is monotone, so the two endpoints decide the bounded
        # existential over n in [4, n_cap]
        if not (model.leq(a, _scalar(model, 4, b))
                or model.leq(a, _scalar(model, n_cap, b))):
            return False
    return True


def build_sd_sequence(model: RationalChain, start, length: int) -> tuple:
    """A halving sequence (start, start/2, ...); strongly decreasing with
    multiplier 4."""
    if not isinstance(model, RationalChain):
        raise ModelError("halving sequences are built over the rational chain")
    first = Fraction(start)
    if first <= 0:
        raise ValueError("start must be positive")
    if length < 1:
        raise ValueError("length must be at least 1")
    return tuple(first / 2 ** i for i in range(length))


# ---------------------------------------------------------------------------
# model/element naming used by the CLI and by witness reports

def parse_model_spec(text: str) -> Model:
    """Parse strings like "Q", "Q@-1", "Z@2", "ZxZ@(0,0)", "MV" or
    products such as "Q@-1 x Q@0" (factors separated by " x ")."""
    parts = [p.strip() for p in text.split(" x ")]
    if len(parts) > 1:
        return Product(tuple(parse_model_spec(p) for p in parts))
    spec = parts[0]
    kind, _, point = spec.partition("@")
    kind = kind.strip()
    point = point.strip()
    try:
        if kind == "MV":
            if point:
                raise ModelError("MV carries no point")
            return MVUnit()
        if kind == "Q":
            return RationalChain(Fraction(point)) if point else RationalChain()
        if kind == "Z":
            return IntegerChain(int(point)) if point else IntegerChain()
        if kind == "ZxZ":
            if not point:
                return LexZZ()
            if not (point.startswith("(") and point.endswith(")")):
                raise ValueError(point)
            a, b = point[1:-1].split(",")
            return LexZZ((int(a), int(b)))
    except (ValueError, ZeroDivisionError) as exc:
        raise ModelError(f"bad model spec {text!r}: {exc}") from None
    raise ModelError(f"unknown model spec {text!r}")


def model_spec(model: Model) -> str:
    if isinstance(model, MVUnit):
        return "MV"
    if isinstance(model, Product):
        return " x ".join(model_spec(m) for m in model.factors)
    if isinstance(model, RationalChain):
        return "Q" if model.point is None else f"Q@{model.point}"
    if isinstance(model, IntegerChain):
        return "Z" if model.point is None else f"Z@{model.point}"
    if isinstance(model, LexZZ):
        if model.point is None:
            return "ZxZ"
        return f"ZxZ@({model.point[0]},{model.point[1]})"
    raise ModelError(f"unknown model {model!r}")


def _split_components(text: str) -> list[str]:
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return parts


def parse_element(model: Model, text: str) -> Element:
    """Parse an element literal matching the model's shape."""
    text = text.strip()
    try:
        if isinstance(model, (RationalChain, MVUnit)):
            return model.coerce(Fraction(text))
        if isinstance(model, IntegerChain):
            return model.coerce(int(text))
        if isinstance(model, (LexZZ, Product)):
            if not (text.startswith("(") and text.endswith(")")):
                raise ValueError(text)
            parts = _split_components(text[1:-1])
            if isinstance(model, LexZZ):
                if len(parts) != 2:
                    raise ValueError(text)
                return model.coerce((int(parts[0]), int(parts[1])))
            if len(parts) != len(model.factors):
                raise ValueError(text)
            return tuple(parse_element(m, p)
                         for m, p in zip(model.factors, parts))
    except (ValueError, ZeroDivisionError) as exc:
        raise ModelError(f"bad element {text!r}: {exc}") from None
    raise ModelError(f"unknown model {model!r}")


def format_element(element: Element) -> str:
    if isinstance(element, tuple):
        return "(" + ",".join(format_element(c) for c in element) + ")"
    return str(element)
