"""Exact sparse multivariate polynomials over Z and determinants of small
polynomial matrices.

A :class:`WeightPoly` stores its terms as ``{exponent tuple: coefficient}``
over an ordered tuple of variable names.  Coefficients are Python ints, so
nothing ever overflows.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


class VariableMismatch(ValueError):
    """Two polynomials (or a polynomial and an assignment) disagree on variables."""


class PolySyntaxError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.column = column


class InexactDivision(ArithmeticError):
    """A division that was supposed to be exact left a remainder.

    Only raised from fraction-free elimination, where it means a bug."""


@dataclass(frozen=True, eq=False)
class WeightPoly:
    variables: tuple[str, ...]
    terms: Mapping[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        k = len(self.variables)
        if len(set(self.variables)) != k:
            raise ValueError(f"duplicate variable names in {self.variables}")
        clean = {}
        for exps, coef in self.terms.items():
            exps = tuple(exps)
            if len(exps) != k:
                raise ValueError(f"exponent vector {exps} does not match {k} variables")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if coef:
                clean[exps] = int(coef)
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "terms", clean)

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> WeightPoly:
        return cls(tuple(variables), {})

    @classmethod
    def const(cls, variables: Sequence[str], c: int) -> WeightPoly:
        return cls(tuple(variables), {(0,) * len(variables): c})

    @classmethod
    def one(cls, variables: Sequence[str]) -> WeightPoly:
        return cls.const(variables, 1)

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> WeightPoly:
        variables = tuple(variables)
        if name not in variables:
            raise VariableMismatch(f"unknown variable {name!r}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exps: 1})

    @classmethod
    def monomial(cls, variables: Sequence[str], coef: int = 1, **powers: int) -> WeightPoly:
        variables = tuple(variables)
        unknown = set(powers) - set(variables)
        if unknown:
            raise VariableMismatch(f"unknown variables {sorted(unknown)}")
        exps = tuple(powers.get(v, 0) for v in variables)
        return cls(variables, {exps: coef})

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficients(self) -> list[int]:
        return list(self.terms.values())

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in descending lexicographic exponent order."""
        return sorted(self.terms.items(), reverse=True)

    def leading_term(self) -> tuple[tuple[int, ...], int]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms)
        return exps, self.terms[exps]

    def _check(self, other: WeightPoly) -> None:
        if self.variables != other.variables:
            raise VariableMismatch(f"variables {self.variables} != {other.variables}")

    def _coerce(self, other) -> WeightPoly:
        if isinstance(other, WeightPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return WeightPoly.const(self.variables, other)
        return NotImplemented

    def with_variables(self, variables: Sequence[str]) -> WeightPoly:
        """Re-express over a superset (or reordering) of the current variables."""
        variables = tuple(variables)
        missing = [v for v in self.variables if v not in variables]
        if missing:
            nonzero = {v for exps in self.terms for v, e in zip(self.variables, exps) if e}
            if nonzero & set(missing):
                raise VariableMismatch(f"cannot drop variables {missing}")
        index = {v: i for i, v in enumerate(self.variables)}
        out = {}
        for exps, coef in self.terms.items():
            out[tuple(exps[index[v]] if v in index else 0 for v in variables)] = coef
        return WeightPoly(variables, out)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for exps, coef in other.terms.items():
            out[exps] = out.get(exps, 0) + coef
        return WeightPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return WeightPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, ...], int] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(i + j for i, j in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return WeightPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> WeightPoly:
        if n < 0:
            raise ValueError("negative power")
        result = WeightPoly.one(self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div(self, other: WeightPoly) -> WeightPoly:
        """Quotient of an exact division; raises InexactDivision otherwise."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead_e, lead_c = other.leading_term()
        rem = dict(self.terms)
        quot: dict[tuple[int, ...], int] = {}
        while rem:
            e = max(rem)
            c = rem[e]
            shift = tuple(a - b for a, b in zip(e, lead_e))
            if any(s < 0 for s in shift) or c % lead_c:
                raise InexactDivision(f"{self} is not divisible by {other}")
            q = c // lead_c
            quot[shift] = q
            for oe, oc in other.terms.items():
                te = tuple(a + b for a, b in zip(oe, shift))
                v = rem.get(te, 0) - q * oc
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return WeightPoly(self.variables, quot)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == WeightPoly.const(self.variables, other).terms
        if not isinstance(other, WeightPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # -- evaluation -------------------------------------------------------

    def evaluate(self, assignment: Mapping[str, int]) -> int:
        missing = [v for v in self.variables if v not in assignment]
        if missing:
            raise VariableMismatch(f"no value for variables {missing}")
        values = [assignment[v] for v in self.variables]
        total = 0
        for exps, coef in self.terms.items():
            term = coef
            for val, e in zip(values, exps):
                if e:
                    term *= val ** e
            total += term
        return total

    def substitute(self, assignment: Mapping[str, int]) -> WeightPoly:
        """Specialise some variables to integers; the variable list is kept."""
        unknown = set(assignment) - set(self.variables)
        if unknown:
            raise VariableMismatch(f"unknown variables {sorted(unknown)}")
        out: dict[tuple[int, ...], int] = {}
        for exps, coef in self.terms.items():
            new = []
            for v, e in zip(self.variables, exps):
                if v in assignment:
                    coef *= assignment[v] ** e
                    new.append(0)
                else:
                    new.append(e)
            key = tuple(new)
            out[key] = out.get(key, 0) + coef
        return WeightPoly(self.variables, out)

    # -- text -------------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"WeightPoly({format_poly(self)!r}, variables={self.variables})"


def format_poly(p: WeightPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i, (exps, coef) in enumerate(p.sorted_terms()):
        factors = []
        for v, e in zip(p.variables, exps):
            if e == 1:
                factors.append(v)
            elif e > 1:
                factors.append(f"{v}^{e}")
        mag = abs(coef)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if i == 0:
            parts.append(("-" if coef < 0 else "") + body)
        else:
            parts.append((" - " if coef < 0 else " + ") + body)
    return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\^)|(\*)|([+-]))")


def parse_poly(text: str, variables: Sequence[str]) -> WeightPoly:
    """Parse ``<int>*var^k*... +/- ...`` into a polynomial over ``variables``.

    A factor may be an integer or a variable with an optional ``^<uint>``.
    """
    variables = tuple(variables)
    index = {v: i for i, v in enumerate(variables)}
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m:
            bad = len(stripped[:pos]) + len(stripped[pos:]) - len(stripped[pos:].lstrip())
            raise PolySyntaxError(f"unexpected character {stripped[bad]!r}", bad + 1)
        kind = ("int", "name", "^", "*", "sign")[m.lastindex - 1]
        tokens.append((kind, m.group(m.lastindex), m.start(m.lastindex) + 1))
        pos = m.end()
    if not tokens:
        raise PolySyntaxError("empty polynomial", 1)

    terms: dict[tuple[int, ...], int] = {}
    i = 0

    def expect_factor(i):
        if i >= len(tokens):
            raise PolySyntaxError("expected a factor", len(text) + 1)
        kind, val, col = tokens[i]
        if kind == "int":
            return ("int", int(val)), i + 1
        if kind == "name":
            if val not in index:
                raise PolySyntaxError(f"unknown variable {val!r}", col)
            power = 1
            if i + 1 < len(tokens) and tokens[i + 1][0] == "^":
                if i + 2 >= len(tokens) or tokens[i + 2][0] != "int":
                    raise PolySyntaxError("expected exponent after '^'", tokens[i + 1][2])
                power = int(tokens[i + 2][1])
                return ("var", (val, power)), i + 3
            return ("var", (val, power)), i + 1
        raise PolySyntaxError(f"unexpected {val!r}", col)

    first = True
    while i < len(tokens):
        sign = 1
        if tokens[i][0] == "sign":
            sign = -1 if tokens[i][1] == "-" else 1
            i += 1
        elif not first:
            raise PolySyntaxError(f"expected '+' or '-', got {tokens[i][1]!r}", tokens[i][2])
        first = False
        coef = sign
        exps = [0] * len(variables)
        factor, i = expect_factor(i)
        while True:
            if factor[0] == "int":
                coef *= factor[1]
            else:
                name, power = factor[1]
                exps[index[name]] += power
            if i < len(tokens) and tokens[i][0] == "*":
                factor, i = expect_factor(i + 1)
            else:
                break
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coef
    return WeightPoly(variables, terms)


# -- matrices -------------------------------------------------------------


@dataclass(frozen=True)
class PolyMatrix:
    entries: tuple[tuple[WeightPoly, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        if n:
            vs = rows[0][0].variables
            if any(e.variables != vs for r in rows for e in r):
                raise VariableMismatch("matrix entries use different variable lists")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def swap_rows(self, i: int, j: int) -> PolyMatrix:
        rows = list(self.entries)
        rows[i], rows[j] = rows[j], rows[i]
        return PolyMatrix(tuple(rows))

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries)


def det(m: PolyMatrix | Sequence[Sequence[WeightPoly]], variables: Sequence[str] | None = None,
        method: str = "auto") -> WeightPoly:
    """Exact determinant.

    ``method`` is ``"cofactor"``, ``"bareiss"`` or ``"auto"`` (cofactor up to
    8x8).  The empty matrix has determinant 1, which needs ``variables``.
    """
    if not isinstance(m, PolyMatrix):
        m = PolyMatrix(tuple(tuple(r) for r in m))
    n = m.n
    if n == 0:
        if variables is None:
            raise ValueError("variables are required for the 0x0 determinant")
        return WeightPoly.one(variables)
    if method == "auto":
        method = "cofactor" if n <= 8 else "bareiss"
    if method == "cofactor":
        return _det_cofactor(m)
    if method == "bareiss":
        return _det_bareiss(m)
    raise ValueError(f"unknown method {method!r}")


def _det_cofactor(m: PolyMatrix) -> WeightPoly:
    # Laplace expansion along rows, memoised on the set of remaining columns.
    n = m.n
    vs = m[0, 0].variables
    memo: dict[int, WeightPoly] = {}

    def minor(row: int, cols: int) -> WeightPoly:
        if row == n:
            return WeightPoly.one(vs)
        if cols in memo:
            return memo[cols]
        total = WeightPoly.zero(vs)
        sign = 1
        for j in range(n):
            if cols >> j & 1:
                entry = m[row, j]
                if not entry.is_zero():
                    sub = minor(row + 1, cols & ~(1 << j))
                    term = entry * sub
                    total = total + term if sign > 0 else total - term
                sign = -sign
        memo[cols] = total
        return total

    return minor(0, (1 << n) - 1)


def _det_bareiss(m: PolyMatrix) -> WeightPoly:
    n = m.n
    vs = m[0, 0].variables
    a = [list(r) for r in m.entries]
    sign = 1
    prev = WeightPoly.one(vs)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return WeightPoly.zero(vs)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
            a[i][k] = WeightPoly.zero(vs)
        prev = a[k][k]
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def int_matrix(rows: Iterable[Iterable[int]], variables: Sequence[str] = ()) -> PolyMatrix:
    return PolyMatrix(tuple(tuple(WeightPoly.const(variables, c) for c in r) for r in rows))
