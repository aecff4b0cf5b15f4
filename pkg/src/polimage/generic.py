"""Evaluation of free polynomials on generic and concrete 2x2 matrices.

The generic evaluation substitutes an independent commutative indeterminate
for each of the 4m matrix entries, giving exact polynomial entries whose
vanishing/centrality can be decided symbolically.  Symbolic work is capped
by a stored-monomial budget; past it callers are expected to fall back to
seeded probabilistic evaluation, whose per-trial false-negative bound is
reported explicitly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from polimage.fields import FieldSpec, QQ, Scalar
from polimage.freealg import FreePoly
from polimage.matalg import Mat2, ConeKind, cone_classify, ratio_invariant, ratio_key

DEFAULT_TERM_BUDGET = 10 ** 6
DEFAULT_PROBE_PRIME = 2 ** 31 - 1


class TermBudgetExceeded(RuntimeError):
    """Symbolic expansion crossed the stored-monomial budget."""

    def __init__(self, count: int, budget: int):
        super().__init__(
            f"symbolic expansion reached {count} monomials (budget {budget}); "
            "rerun in probabilistic mode")
        self.count = count
        self.budget = budget


Expo = tuple[int, ...]


class ComPoly:
    """Sparse commutative polynomial: exponent vector -> nonzero Scalar."""

    __slots__ = ("nvars", "field", "terms")

    def __init__(self, nvars: int, field: FieldSpec, terms: dict[Expo, Scalar] | None = None):
        self.nvars = nvars
        self.field = field
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if not c.is_zero():
                    self.terms[e] = c

    @classmethod
    def zero(cls, nvars: int, field: FieldSpec) -> "ComPoly":
        return cls(nvars, field)

    @classmethod
    def constant(cls, c: Scalar, nvars: int) -> "ComPoly":
        return cls(nvars, c.field, {(0,) * nvars: c})

    @classmethod
    def variable(cls, i: int, nvars: int, field: FieldSpec) -> "ComPoly":
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, field, {e: field.one()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, ComPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, self.field, frozenset(self.terms.items())))

    def __add__(self, other: "ComPoly") -> "ComPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            c = c if s is None else s + c
            if c.is_zero():
                out.pop(e, None)
            else:
                out[e] = c
        return ComPoly(self.nvars, self.field, out)

    def __neg__(self) -> "ComPoly":
        return ComPoly(self.nvars, self.field, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "ComPoly") -> "ComPoly":
        return self + (-other)

    def mul(self, other: "ComPoly", budget: int | None = None) -> "ComPoly":
        out: dict[Expo, Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                c = c if s is None else s + c
                if c.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = c
            if budget is not None and len(out) > budget:
                raise TermBudgetExceeded(len(out), budget)
        return ComPoly(self.nvars, self.field, out)

    def __mul__(self, other):
        if isinstance(other, ComPoly):
            return self.mul(other)
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "ComPoly":
        if isinstance(c, int):
            c = self.field.from_int(c)
        if c.is_zero():
            return ComPoly.zero(self.nvars, self.field)
        return ComPoly(self.nvars, self.field, {e: k * c for e, k in self.terms.items()})

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def lead(self) -> tuple[Expo, Scalar]:
        """Leading term under graded lexicographic order; zero poly raises."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=lambda t: (sum(t), t))
        return e, self.terms[e]

    def evaluate(self, point: list[Scalar]) -> Scalar:
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates")
        acc = self.field.zero()
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    v = v * point[i] ** k
            acc = acc + v
        return acc

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, key=lambda t: (sum(t), t)):
            mono = "*".join(f"u{i}^{k}" if k > 1 else f"u{i}"
                            for i, k in enumerate(e) if k)
            c = self.terms[e]
            bits.append(f"{c}" if not mono else f"{c}*{mono}")
        return " + ".join(bits)

    __repr__ = __str__


class GenericMat:
    """2x2 matrix with ComPoly entries."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: ComPoly, b: ComPoly, c: ComPoly, d: ComPoly):
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def zero(cls, nvars: int, field: FieldSpec) -> "GenericMat":
        z = ComPoly.zero(nvars, field)
        return cls(z, z, z, z)

    @classmethod
    def generic(cls, block: int, nvars: int, field: FieldSpec) -> "GenericMat":
        """The generic matrix whose entries are indeterminates
        4*block .. 4*block+3 (block is 0-based)."""
        base = 4 * block
        return cls(*(ComPoly.variable(base + k, nvars, field) for k in range(4)))

    def add(self, other: "GenericMat") -> "GenericMat":
        return GenericMat(self.a + other.a, self.b + other.b,
                          self.c + other.c, self.d + other.d)

    def mul(self, other: "GenericMat", budget: int | None = None) -> "GenericMat":
        return GenericMat(
            self.a.mul(other.a, budget) + self.b.mul(other.c, budget),
            self.a.mul(other.b, budget) + self.b.mul(other.d, budget),
            self.c.mul(other.a, budget) + self.d.mul(other.c, budget),
            self.c.mul(other.b, budget) + self.d.mul(other.d, budget),
        )

    def scale(self, c: Scalar) -> "GenericMat":
        return GenericMat(self.a.scale(c), self.b.scale(c), self.c.scale(c), self.d.scale(c))

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def trace(self) -> ComPoly:
        return self.a + self.d

    def det(self, budget: int | None = None) -> ComPoly:
        return self.a.mul(self.d, budget) - self.b.mul(self.c, budget)

    def term_count(self) -> int:
        return sum(len(e.terms) for e in self.entries())

    def substitute(self, mats: list[Mat2]) -> Mat2:
        """Plug concrete matrices into the generic entries."""
        point: list[Scalar] = []
        for mt in mats:
            point.extend(mt.entries_vector())
        return Mat2(self.a.evaluate(point), self.b.evaluate(point),
                    self.c.evaluate(point), self.d.evaluate(point))


def generic_eval(p: FreePoly, budget: int = DEFAULT_TERM_BUDGET) -> GenericMat:
    """Evaluate p at m independent generic matrices.

    Words are expanded left to right with collection after every product;
    a constant term contributes c*I.  Raises TermBudgetExceeded as soon as
    any intermediate entry grows past the budget.
    """
    nvars = 4 * p.m
    gens = [GenericMat.generic(i, nvars, p.field) for i in range(p.m)]
    acc = GenericMat.zero(nvars, p.field)
    for w, c in p.sorted_terms():
        if not w:
            cp = ComPoly.constant(c, nvars)
            z = ComPoly.zero(nvars, p.field)
            acc = acc.add(GenericMat(cp, z, z, cp))
            continue
        cur = gens[w[0] - 1]
        for i in w[1:]:
            cur = cur.mul(gens[i - 1], budget)
        acc = acc.add(cur.scale(c))
        count = max(len(e.terms) for e in acc.entries())
        if count > budget:
            raise TermBudgetExceeded(count, budget)
    return acc


def is_identically_zero(P: GenericMat) -> bool:
    return all(e.is_zero() for e in P.entries())


def is_central(P: GenericMat) -> bool:
    """Off-diagonal entries vanish and the diagonal entries agree."""
    return P.b.is_zero() and P.c.is_zero() and (P.a - P.d).is_zero()


def is_trace_zero(P: GenericMat) -> bool:
    return P.trace().is_zero()


@dataclass(frozen=True)
class Proportionality:
    proportional: bool
    ratio: Scalar | None = None
    degenerate: bool = False
    witnesses: tuple[Expo, ...] = ()

    def to_json(self):
        return {
            "proportional": self.proportional,
            "ratio": None if self.ratio is None else str(self.ratio),
            "degenerate": self.degenerate,
            "witnesses": [list(e) for e in self.witnesses],
        }


def proportionality(tau: ComPoly, delta: ComPoly) -> Proportionality:
    """Decide whether tau = c * delta for a constant c.

    Zero cases carry a degenerate flag: delta = 0 with tau != 0 cannot be
    proportional, both zero counts as Proportional(0).  Otherwise c is read
    off the graded-lex leading terms and verified exactly; failures report
    witness exponent vectors.
    """
    if delta.is_zero():
        if tau.is_zero():
            return Proportionality(True, tau.field.zero(), degenerate=True)
        return Proportionality(False, None, degenerate=True, witnesses=(tau.lead()[0],))
    if tau.is_zero():
        return Proportionality(True, tau.field.zero())
    e_t, c_t = tau.lead()
    e_d, c_d = delta.lead()
    if e_t != e_d:
        return Proportionality(False, witnesses=(e_t, e_d))
    c = c_t / c_d
    diff = tau - delta.scale(c)
    if diff.is_zero():
        return Proportionality(True, c)
    return Proportionality(False, witnesses=(diff.lead()[0],))


# -- concrete evaluation -------------------------------------------------------


def eval_on_matrices(p: FreePoly, mats: list[Mat2]) -> Mat2:
    """Exact evaluation of p at concrete matrices over p's field."""
    if len(mats) != p.m:
        raise ValueError(f"expected {p.m} matrices, got {len(mats)}")
    for mt in mats:
        if mt.field != p.field:
            raise ValueError("matrix field differs from coefficient field")
    acc = Mat2.zero(p.field)
    for w, c in p.sorted_terms():
        if not w:
            acc = acc + Mat2.identity(p.field).scale(c)
            continue
        cur = mats[w[0] - 1]
        for i in w[1:]:
            cur = cur * mats[i - 1]
        acc = acc + cur.scale(c)
    return acc


def random_mat2(field: FieldSpec, rng: random.Random, lo: int = 0, hi: int | None = None) -> Mat2:
    """Uniform matrix over F_q, or integer-entry matrix in [lo, hi] over Q."""
    if field.char > 0:
        p = field.char

        def draw() -> Scalar:
            if field.degree == 1:
                return field.from_int(rng.randrange(p))
            return Scalar(field, (rng.randrange(p), rng.randrange(p)))

        return Mat2(draw(), draw(), draw(), draw())
    if hi is None:
        lo, hi = -9, 9
    return Mat2.from_ints(field, rng.randint(lo, hi), rng.randint(lo, hi),
                          rng.randint(lo, hi), rng.randint(lo, hi))


@dataclass
class ProbeReport:
    """Summary of seeded random evaluations over a prime field."""

    prime: int
    seed: int
    trials: int
    degree: int
    false_negative_bound: str
    all_zero: bool = True
    all_central: bool = True
    all_trace_zero: bool = True
    constant_ratio: bool = True
    ratio_values: list[str] = dc_field(default_factory=list)
    cone_counts: dict[str, int] = dc_field(default_factory=dict)
    witnesses: dict[str, dict] = dc_field(default_factory=dict)

    def to_json(self):
        return {
            "prime": self.prime,
            "seed": self.seed,
            "trials": self.trials,
            "degree": self.degree,
            "false_negative_bound": self.false_negative_bound,
            "all_zero": self.all_zero,
            "all_central": self.all_central,
            "all_trace_zero": self.all_trace_zero,
            "constant_ratio": self.constant_ratio,
            "ratio_values": list(self.ratio_values),
            "cone_counts": dict(sorted(self.cone_counts.items())),
            "witnesses": {k: v for k, v in sorted(self.witnesses.items())},
        }


def _witness(mats: list[Mat2], value: Mat2) -> dict:
    return {"args": [str(mt) for mt in mats], "value": str(value)}


def probabilistic_probe(p: FreePoly, trials: int, prime: int = DEFAULT_PROBE_PRIME,
                        seed: int = 0) -> ProbeReport:
    """Evaluate p at uniformly random matrix tuples over F_prime.

    The seed is mandatory input and recorded, so reports are reproducible.
    Requires prime > 2 * deg(p); each zero-style conclusion has per-trial
    false-negative probability at most deg(p) * 4m / prime.
    """
    deg = p.degree()
    if prime <= 2 * deg:
        raise ValueError(f"prime {prime} must exceed twice the degree {deg}")
    if trials < 1:
        raise ValueError("at least one trial required")
    field = FieldSpec(prime)
    q = p.coerce(field)
    rng = random.Random(seed)
    from fractions import Fraction
    bound = Fraction(deg * 4 * p.m, prime)
    report = ProbeReport(prime=prime, seed=seed, trials=trials, degree=deg,
                         false_negative_bound=str(bound))
    ratios: set[str] = set()
    first_ratio_sample: dict[str, dict] = {}
    for _ in range(trials):
        mats = [random_mat2(field, rng) for _ in range(p.m)]
        val = eval_on_matrices(q, mats)
        cone = cone_classify(val)
        report.cone_counts[cone.kind.value] = report.cone_counts.get(cone.kind.value, 0) + 1
        if not val.is_zero():
            if report.all_zero:
                report.all_zero = False
                report.witnesses.setdefault("nonzero", _witness(mats, val))
        if not val.is_scalar():
            if report.all_central:
                report.all_central = False
                report.witnesses.setdefault("non_central", _witness(mats, val))
        if not val.trace().is_zero():
            if report.all_trace_zero:
                report.all_trace_zero = False
                report.witnesses.setdefault("nonzero_trace", _witness(mats, val))
        if cone.kind == ConeKind.NILPOTENT:
            report.witnesses.setdefault("nilpotent_nonzero", _witness(mats, val))
        r = ratio_invariant(val)
        key = ratio_key(r)
        if key != "undefined":
            if key not in ratios:
                ratios.add(key)
                first_ratio_sample[key] = _witness(mats, val)
            if len(ratios) == 2 and "distinct_ratios" not in report.witnesses:
                pair = sorted(ratios)
                report.witnesses["distinct_ratios"] = {
                    "first": first_ratio_sample[pair[0]],
                    "second": first_ratio_sample[pair[1]],
                    "ratios": pair,
                }
    report.constant_ratio = len(ratios) <= 1
    report.ratio_values = sorted(ratios)
    return report
