"""Noncommutative polynomials in x1..xm with exact coefficients.

A polynomial is a finite map from words (tuples of 1-based variable indices)
to nonzero scalars.  Words multiply by concatenation; nothing commutes.
The text format understood by :func:`parse_poly` is

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := coeff ['*' factor ...] | factor ('*' factor)*
    factor := var | '[' expr ',' expr ']' | '(' expr ')' | factor '^' k
    var    := 'x' posint        coeff := int | int '/' posint

with '[a,b]' expanding to a*b - b*a and '^k' (k >= 1) to k-fold repetition.
A bare coefficient is kept as a constant term; downstream classification
rejects constant terms, the algebra itself allows them.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product

from polimage.fields import FieldSpec, QQ, Scalar

Word = tuple[int, ...]


class PolyParseError(ValueError):
    """Syntax error with the 0-based offset where parsing failed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


def _word_key(w: Word):
    return (len(w), w)


class FreePoly:
    __slots__ = ("m", "field", "terms")

    def __init__(self, m: int, field: FieldSpec, terms: dict[Word, Scalar] | None = None):
        if m < 0:
            raise ValueError("variable count must be >= 0")
        self.m = m
        self.field = field
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if not c.is_zero():
                    self.terms[w] = c

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, m: int, field: FieldSpec = QQ) -> "FreePoly":
        return cls(m, field)

    @classmethod
    def constant(cls, c: Scalar, m: int) -> "FreePoly":
        return cls(m, c.field, {(): c})

    @classmethod
    def variable(cls, i: int, m: int, field: FieldSpec = QQ) -> "FreePoly":
        if not 1 <= i <= m:
            raise ValueError(f"variable x{i} out of range for m={m}")
        return cls(m, field, {(i,): field.one()})

    # -- ring operations ----------------------------------------------------

    def _check(self, other: "FreePoly"):
        if self.m != other.m or self.field != other.field:
            raise ValueError("operands disagree on variable count or field")

    def __add__(self, other: "FreePoly") -> "FreePoly":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            c = c if s is None else s + c
            if c.is_zero():
                out.pop(w, None)
            else:
                out[w] = c
        return FreePoly(self.m, self.field, out)

    def __neg__(self) -> "FreePoly":
        return FreePoly(self.m, self.field, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "FreePoly") -> "FreePoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        self._check(other)
        out: dict[Word, Scalar] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                s = out.get(w)
                c = c if s is None else s + c
                if c.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = c
        return FreePoly(self.m, self.field, out)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "FreePoly":
        if isinstance(c, int):
            c = self.field.from_int(c)
        elif isinstance(c, Fraction):
            c = self.field.from_fraction(c)
        if c.is_zero():
            return FreePoly.zero(self.m, self.field)
        return FreePoly(self.m, self.field, {w: k * c for w, k in self.terms.items()})

    def __pow__(self, k: int) -> "FreePoly":
        if k < 1:
            raise ValueError("exponent must be >= 1")
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, FreePoly):
            return NotImplemented
        return self.m == other.m and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, self.field, frozenset(self.terms.items())))

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Word, Scalar]]:
        """Terms in the canonical (length, lexicographic) word order."""
        return sorted(self.terms.items(), key=lambda kv: _word_key(kv[0]))

    def constant_term(self) -> Scalar:
        return self.terms.get((), self.field.zero())

    def has_constant_term(self) -> bool:
        return () in self.terms

    def degree(self) -> int:
        """Maximal word length (0 for the zero polynomial)."""
        return max((len(w) for w in self.terms), default=0)

    def multidegree(self, w: Word) -> tuple[int, ...]:
        counts = [0] * self.m
        for i in w:
            counts[i - 1] += 1
        return tuple(counts)

    def is_multilinear(self) -> bool:
        """True when every word is a permutation of (1, ..., m)."""
        full = tuple(range(1, self.m + 1))
        return all(tuple(sorted(w)) == full for w in self.terms)

    def coerce(self, field: FieldSpec) -> "FreePoly":
        """Map coefficients into another field of compatible characteristic."""
        if field == self.field:
            return self
        if self.field.char == 0:
            if field.char == 0:
                return self
            out = {}
            for w, c in self.terms.items():
                out[w] = field.from_fraction(c.val)
            return FreePoly(self.m, field, out)
        if field.char != self.field.char:
            raise ValueError(f"cannot move coefficients from {self.field} to {field}")
        if self.field.degree == 1 and field.degree == 2:
            return FreePoly(self.m, field, {w: Scalar(field, (c.val, 0)) for w, c in self.terms.items()})
        raise ValueError(f"cannot move coefficients from {self.field} to {field}")

    def evaluate(self, args: list):
        """Evaluate by substituting one object per variable.

        Arguments must support +, * and .scale(Scalar), and the list must
        supply a value for every variable (the caller picks the ring).
        Returns None for the zero polynomial; constant terms are rejected
        since there is no ring unit to attach them to.
        """
        if len(args) != self.m:
            raise ValueError(f"expected {self.m} arguments, got {len(args)}")
        if self.has_constant_term():
            raise ValueError("cannot evaluate a constant term without a unit; strip it first")
        acc = None
        for w, c in self.sorted_terms():
            cur = args[w[0] - 1]
            for i in w[1:]:
                cur = cur * args[i - 1]
            cur = cur.scale(c)
            acc = cur if acc is None else acc + cur
        return acc

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"FreePoly({format_poly(self)!r}, m={self.m}, field={self.field})"


# -- text format -------------------------------------------------------------


def _coeff_str(c: Scalar) -> str:
    s = str(c)
    if "+" in s[1:] or "*" in s:
        return f"({s})"  # extension coefficients are not round-trippable
    return s


def format_poly(p: FreePoly) -> str:
    if p.is_zero():
        return "0"
    chunks: list[str] = []
    for w, c in p.sorted_terms():
        neg = False
        if p.field.char == 0 and c.val < 0:
            neg, c = True, -c
        factors = []
        run_var, run_len = None, 0
        for i in (*w, None):
            if i == run_var:
                run_len += 1
                continue
            if run_var is not None:
                factors.append(f"x{run_var}" if run_len == 1 else f"x{run_var}^{run_len}")
            run_var, run_len = i, 1
        body = "*".join(factors)
        if not body:
            body = _coeff_str(c)
        elif not c.is_one():
            body = f"{_coeff_str(c)}*{body}"
        if not chunks:
            chunks.append(f"-{body}" if neg else body)
        else:
            chunks.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(chunks)


class _Parser:
    def __init__(self, text: str, m: int, field: FieldSpec):
        self.text = text
        self.m = m
        self.field = field
        self.pos = 0

    def error(self, msg: str):
        raise PolyParseError(msg, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected '{ch}'")
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def expr(self) -> FreePoly:
        sign = 1
        if self.peek() in ("+", "-"):
            if self.peek() == "-":
                sign = -1
            self.pos += 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.pos += 1
            t = self.term()
            acc = acc - t if op == "-" else acc + t
        return acc

    def term(self) -> FreePoly:
        ch = self.peek()
        coeff = None
        if ch.isdigit():
            num = self.integer()
            den = 1
            if self.peek() == "/":
                self.pos += 1
                den = self.integer()
                if den == 0:
                    self.error("zero denominator")
            coeff = Fraction(num, den)
            if self.peek() != "*":
                # bare constant term
                return FreePoly.constant(self.field.from_fraction(coeff), self.m)
            self.pos += 1
        acc = self.factor()
        while self.peek() == "*":
            self.pos += 1
            acc = acc * self.factor()
        if coeff is not None:
            acc = acc.scale(coeff)
        return acc

    def factor(self) -> FreePoly:
        ch = self.peek()
        if ch == "x":
            self.pos += 1
            at = self.pos
            idx = self.integer()
            if idx < 1 or idx > self.m:
                self.pos = at
                self.error(f"variable x{idx} not among the {self.m} declared")
            out = FreePoly.variable(idx, self.m, self.field)
        elif ch == "[":
            self.pos += 1
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take("]")
            out = a * b - b * a
        elif ch == "(":
            self.pos += 1
            out = self.expr()
            self.take(")")
        else:
            self.error("expected a variable, '[', '(' or a coefficient")
        while self.peek() == "^":
            self.pos += 1
            at = self.pos
            k = self.integer()
            if k < 1:
                self.pos = at
                self.error("exponent must be >= 1")
            out = out ** k
        return out

    def parse(self) -> FreePoly:
        self.skip_ws()
        if self.pos == len(self.text):
            self.error("empty input")
        out = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("trailing input")
        return out


def parse_poly(text: str, m: int, field: FieldSpec = QQ) -> FreePoly:
    """Parse the textual polynomial format over m declared variables."""
    return _Parser(text, m, field).parse()


# -- weights and homogeneity --------------------------------------------------


class HomogeneityReport:
    """Outcome of a semi-homogeneity check.

    ``degree`` is the common weighted degree when the check passes,
    ``offenders`` a pair of words with different weighted degrees when
    it fails.
    """

    __slots__ = ("degree", "offenders")

    def __init__(self, degree, offenders=None):
        self.degree = degree
        self.offenders = offenders

    @property
    def ok(self) -> bool:
        return self.offenders is None

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return f"HomogeneityReport(degree={self.degree})"
        return f"HomogeneityReport(offenders={self.offenders})"


def weighted_degree(w: Word, weights: tuple[int, ...]) -> int:
    return sum(weights[i - 1] for i in w)


def semi_homogeneous_check(p: FreePoly, weights: tuple[int, ...]) -> HomogeneityReport:
    """Check that every word of p has the same weighted degree under weights."""
    if len(weights) != p.m:
        raise ValueError(f"weight vector length {len(weights)} != {p.m} variables")
    first_word = None
    d = 0
    for w, _ in p.sorted_terms():
        dw = weighted_degree(w, weights)
        if first_word is None:
            first_word, d = w, dw
        elif dw != d:
            return HomogeneityReport(None, (first_word, w))
    return HomogeneityReport(d)


def _rational_nullspace(rows: list[list[Fraction]], n: int) -> list[list[Fraction]]:
    # row-reduce and read off a nullspace basis via the free columns
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    basis = []
    pivot_set = set(pivots)
    for free in range(n):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * n
        vec[free] = Fraction(1)
        for row_idx, col in enumerate(pivots):
            vec[col] = -mat[row_idx][free]
        basis.append(vec)
    return basis


def _to_int_vector(vec: list[Fraction]) -> tuple[int, ...]:
    from math import gcd, lcm

    denom = lcm(*(f.denominator for f in vec)) if vec else 1
    ints = [int(f * denom) for f in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    for v in ints:
        if v != 0:
            if v < 0:
                ints = [-x for x in ints]
            break
    return tuple(ints)


def infer_weights(p: FreePoly) -> list[tuple[int, ...]]:
    """Weight vectors making p semi-homogeneous.

    Solves the linear system equating weighted degrees of all words and
    returns small integer representatives of a solution basis, all-positive
    vectors first.  When the all-ones vector solves the system it is
    included explicitly.  Empty when only w = 0 works.
    """
    words = [w for w, _ in p.sorted_terms()]
    if len(words) <= 1:
        base = [tuple(1 if j == i else 0 for j in range(p.m)) for i in range(p.m)]
    else:
        d0 = p.multidegree(words[0])
        rows = []
        for w in words[1:]:
            d = p.multidegree(w)
            rows.append([Fraction(a - b) for a, b in zip(d, d0)])
        base = [_to_int_vector(v) for v in _rational_nullspace(rows, p.m)]
    out: list[tuple[int, ...]] = []
    ones = tuple([1] * p.m)
    if p.m and semi_homogeneous_check(p, ones).ok:
        out.append(ones)
    for vec in base:
        if vec not in out and any(vec):
            out.append(vec)
    out.sort(key=lambda v: (not all(x > 0 for x in v), v))
    return out


def weighted_parts(p: FreePoly, weights: tuple[int, ...]) -> list[tuple[int, FreePoly]]:
    """Split p into its weighted-degree components, ascending by degree."""
    if len(weights) != p.m:
        raise ValueError(f"weight vector length {len(weights)} != {p.m} variables")
    buckets: dict[int, dict[Word, Scalar]] = {}
    for w, c in p.terms.items():
        buckets.setdefault(weighted_degree(w, weights), {})[w] = c
    return [(d, FreePoly(p.m, p.field, t)) for d, t in sorted(buckets.items())]


# -- linearization -------------------------------------------------------------


def multilinearize(p: FreePoly) -> FreePoly:
    """Full linearization of a completely homogeneous polynomial.

    Each variable of degree d is replaced by d fresh variables (consecutive
    blocks, in variable order) and only the part linear in every fresh
    variable is kept.  Substituting the block variables back to the original
    one multiplies p by the product of the d_i factorials.
    """
    if p.is_zero():
        return p
    degs = None
    for w in p.terms:
        d = p.multidegree(w)
        if degs is None:
            degs = d
        elif d != degs:
            raise ValueError(f"not completely homogeneous: multidegrees {degs} and {d}")
    assert degs is not None
    offsets = []
    total = 0
    for d in degs:
        offsets.append(total)
        total += d
    out: dict[Word, Scalar] = {}
    for w, c in p.terms.items():
        positions: dict[int, list[int]] = {}
        for pos, var in enumerate(w):
            positions.setdefault(var, []).append(pos)
        variables = sorted(positions)
        for assignment in product(*(permutations(range(degs[v - 1])) for v in variables)):
            new_word = [0] * len(w)
            for var, perm in zip(variables, assignment):
                for occ, pos in enumerate(positions[var]):
                    new_word[pos] = offsets[var - 1] + perm[occ] + 1
            key = tuple(new_word)
            s = out.get(key)
            v = c if s is None else s + c
            if v.is_zero():
                out.pop(key, None)
            else:
                out[key] = v
    return FreePoly(total, p.field, out)


def compose(p: FreePoly, subs: list[FreePoly]) -> FreePoly:
    """Substitute a polynomial for each variable of p."""
    if len(subs) != p.m:
        raise ValueError(f"expected {p.m} substitutions, got {len(subs)}")
    if not subs:
        return p
    m2, field = subs[0].m, subs[0].field
    for s in subs:
        if s.m != m2 or s.field != field:
            raise ValueError("substitution polynomials disagree on variable count or field")
    acc = FreePoly.zero(m2, field)
    for w, c in p.sorted_terms():
        if not w:
            acc = acc + FreePoly.constant(c, m2)
            continue
        cur = subs[w[0] - 1]
        for i in w[1:]:
            cur = cur * subs[i - 1]
        acc = acc + cur.scale(c)
    return acc


def relabel(p: FreePoly, mapping: dict[int, int], m2: int | None = None) -> FreePoly:
    """Rename variables; mapping sends old indices to new ones."""
    m2 = m2 if m2 is not None else p.m
    out: dict[Word, Scalar] = {}
    for w, c in p.terms.items():
        key = tuple(mapping[i] for i in w)
        s = out.get(key)
        v = c if s is None else s + c
        if not v.is_zero():
            out[key] = v
        else:
            out.pop(key, None)
    return FreePoly(m2, p.field, out)


# -- named constructions -------------------------------------------------------


def _perm_sign(perm: tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, cyc = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            cyc += 1
        if cyc % 2 == 0:
            sign = -sign
    return sign


def standard_poly(k: int, field: FieldSpec = QQ) -> FreePoly:
    """Alternating sum over all orderings of x1..xk."""
    if k < 1:
        raise ValueError("k must be >= 1")
    terms: dict[Word, Scalar] = {}
    one = field.one()
    for perm in permutations(range(k)):
        word = tuple(i + 1 for i in perm)
        terms[word] = one if _perm_sign(perm) == 1 else -one
    return FreePoly(k, field, terms)


def capelli_poly(t: int, field: FieldSpec = QQ) -> FreePoly:
    """Alternating polynomial with interleaving slots:

    sum over orderings s of sgn(s) * x_{s(1)} y_1 x_{s(2)} y_2 ... x_{s(t)}
    in t + (t-1) variables, the y_j numbered t+1 .. 2t-1.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    m = 2 * t - 1
    terms: dict[Word, Scalar] = {}
    one = field.one()
    for perm in permutations(range(t)):
        word: list[int] = []
        for slot, i in enumerate(perm):
            word.append(i + 1)
            if slot < t - 1:
                word.append(t + slot + 1)
        terms[tuple(word)] = one if _perm_sign(perm) == 1 else -one
    return FreePoly(m, field, terms)
