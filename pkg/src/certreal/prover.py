"""Proving strict inequalities, and deciding a class of universally
quantified arithmetic sentences by real-number encoding.

prove() semi-decides a parsed strict-inequality query.  It can run on
the approximation backend (deepening certified approximations), the
interval backend (deepening outward enclosures), or both, in which
case the verdicts are cross-checked and a disagreement is an engine
bug reported as ConformanceError.

Every decisive outcome doubles as a certificate: the enclosures it
carries separate by exact dyadic comparison, and verify_outcome()
re-checks that without re-running any analysis.

The pi01 functions decide universally quantified statements about a
decidable predicate P over the naturals by encoding them as a real:

    S = sum of 2**-n over all n where P(n) holds.

S equals 2 exactly when P holds everywhere; the first failure at n*
pulls S at least 2**-n* below 2.  Semi-deciding S < 2 therefore finds
failing predicates (and a bounded search then locates the least
counterexample), while a true universal statement makes S = 2 and the
comparison runs to budget exhaustion.  That end state is reported
honestly as NoCounterexampleBelowBound: the sweep proves no
counterexample exists below roughly the precision bound, and nothing
beyond that.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import creal, intervals, lang
from .creal import (CReal, Exhausted, ProofOutcome, Proved, Refuted,
                    TraceStep, cmp_semidecide, const, deepening_schedule,
                    series_sum)
from .dyadic import BigDyadic
from .errors import (ConformanceError, DomainUndetermined, ParseError,
                     ResourceExhausted)

DEFAULT_MAX_PRECISION = 4096
DEFAULT_PI01_MAX_PRECISION = 256


def prove(query, *, start_precision: int = 1,
          max_precision: int = DEFAULT_MAX_PRECISION,
          backend: str = "approx",
          domain_budget: lang.DomainBudget | None = None) -> ProofOutcome:
    """Semi-decide a strict inequality.

    ``query`` is a lang.Query or its source text.  Proved means the
    stated inequality holds; Refuted means the reverse strict
    inequality holds; Exhausted means no decision within the precision
    budget (equal sides always end there).  Domain side conditions are
    discharged during elaboration and their errors propagate.
    """
    if isinstance(query, str):
        query = lang.parse_query(query)
    if not isinstance(query, lang.Query):
        raise TypeError("prove expects a comparison query")
    if backend == "creal":
        # accepted alias: the approximation backend lives in the creal
        # module and is sometimes named after it
        backend = "approx"
    if backend not in ("approx", "interval", "both"):
        raise ValueError(f"unknown backend {backend!r}")

    lhs_c = lang.elaborate(query.lhs, domain_budget)
    rhs_c = lang.elaborate(query.rhs, domain_budget)

    if backend == "approx":
        return _prove_approx(lhs_c, rhs_c, query.relation,
                             start_precision, max_precision)
    if backend == "interval":
        return _prove_interval(query.lhs, query.rhs, query.relation,
                               start_precision, max_precision)
    oa = _prove_approx(lhs_c, rhs_c, query.relation,
                       start_precision, max_precision)
    oi = _prove_interval(query.lhs, query.rhs, query.relation,
                         start_precision, max_precision)
    return _merge_outcomes(oa, oi, query)


def _prove_approx(lhs_c: CReal, rhs_c: CReal, relation: str,
                  start_k: int, max_k: int) -> ProofOutcome:
    if relation == "<":
        return cmp_semidecide(lhs_c, rhs_c, start_k, max_k)
    # x > y is semi-decided as y < x, then presented in query orientation
    out = cmp_semidecide(rhs_c, lhs_c, start_k, max_k)
    return _swap_orientation(out, ">")


def _swap_orientation(out: ProofOutcome, relation: str) -> ProofOutcome:
    trace = tuple(TraceStep(s.precision, s.rhs, s.lhs, s.backend)
                  for s in out.trace)
    if isinstance(out, Exhausted):
        return Exhausted(out.max_precision, trace, relation)
    cls = Proved if isinstance(out, Proved) else Refuted
    return cls(out.precision, out.rhs_enclosure, out.lhs_enclosure,
               trace, relation)


def _prove_interval(lhs_e, rhs_e, relation: str,
                    start_k: int, max_k: int) -> ProofOutcome:
    trace = []
    for k in deepening_schedule(start_k, max_k):
        try:
            li = intervals.eval_interval(lhs_e, k).interval
            ri = intervals.eval_interval(rhs_e, k).interval
        except DomainUndetermined:
            # a sign condition is still ambiguous at this precision;
            # deepen and retry
            continue
        trace.append(TraceStep(k, li, ri, "interval"))
        if relation == "<":
            if li.hi < ri.lo:
                return Proved(k, li, ri, tuple(trace), "<")
            if ri.hi < li.lo:
                return Refuted(k, li, ri, tuple(trace), "<")
        else:
            if li.lo > ri.hi:
                return Proved(k, li, ri, tuple(trace), ">")
            if ri.lo > li.hi:
                return Refuted(k, li, ri, tuple(trace), ">")
    return Exhausted(max_k, tuple(trace), relation)


def _merge_outcomes(oa: ProofOutcome, oi: ProofOutcome,
                    query) -> ProofOutcome:
    decisive_a = not isinstance(oa, Exhausted)
    decisive_i = not isinstance(oi, Exhausted)
    if decisive_a and decisive_i and type(oa) is not type(oi):
        raise ConformanceError({
            "query": lang.format_expr(query),
            "approx_outcome": str(oa),
            "interval_outcome": str(oi),
            "approx_trace": [_step_jsonable(s) for s in oa.trace],
            "interval_trace": [_step_jsonable(s) for s in oi.trace],
        })
    primary = oa if decisive_a else oi
    trace = tuple(oa.trace) + tuple(oi.trace)
    if isinstance(primary, Exhausted):
        return Exhausted(primary.max_precision, trace, primary.relation)
    cls = type(primary)
    return cls(primary.precision, primary.lhs_enclosure,
               primary.rhs_enclosure, trace, primary.relation)


def verify_outcome(out: ProofOutcome) -> bool:
    """Re-check an outcome's certificate by exact dyadic comparison.

    No approximation is re-run: this only inspects the enclosures and
    the trace the outcome already carries.
    """
    steps = list(out.trace)
    if not steps:
        return False
    for a, b in zip(steps, steps[1:]):
        if a.backend == b.backend and a.precision >= b.precision:
            return False
    if isinstance(out, Exhausted):
        # no step may already separate in either direction
        for s in steps:
            if s.lhs.hi < s.rhs.lo or s.rhs.hi < s.lhs.lo:
                return False
        return True
    le, re_ = out.lhs_enclosure, out.rhs_enclosure
    matching = [s for s in steps
                if s.precision == out.precision
                and s.lhs == le and s.rhs == re_]
    if not matching:
        return False
    if out.relation == "<":
        want_lhs_below = isinstance(out, Proved)
    else:
        want_lhs_below = isinstance(out, Refuted)
    if want_lhs_below:
        return le.hi < re_.lo
    return re_.hi < le.lo


# -- trace serialization --------------------------------------------------

def _dyadic_jsonable(d: BigDyadic) -> dict:
    # mantissa as a string: arbitrary precision survives any JSON parser
    return {"m": str(d.mantissa), "e": d.exponent}


def _interval_jsonable(iv: intervals.Interval) -> dict:
    return {"lo": _dyadic_jsonable(iv.lo), "hi": _dyadic_jsonable(iv.hi)}


def _step_jsonable(s: TraceStep) -> dict:
    return {
        "precision": s.precision,
        "backend": s.backend,
        "lhs": _interval_jsonable(s.lhs),
        "rhs": _interval_jsonable(s.rhs),
    }


def outcome_jsonable(out: ProofOutcome, include_trace: bool = True) -> dict:
    """Bit-exact JSON-ready rendering of an outcome (no floats)."""
    if isinstance(out, Exhausted):
        d = {
            "outcome": "exhausted",
            "relation": out.relation,
            "max_precision": out.max_precision,
        }
    else:
        d = {
            "outcome": "proved" if isinstance(out, Proved) else "refuted",
            "relation": out.relation,
            "precision": out.precision,
            "lhs": _interval_jsonable(out.lhs_enclosure),
            "rhs": _interval_jsonable(out.rhs_enclosure),
        }
    if include_trace:
        d["trace"] = [_step_jsonable(s) for s in out.trace]
    return d


# -- the Pi-0-1 predicate language ---------------------------------------

class Pi01Pred:
    """A decidable predicate over the naturals, from a small closed
    language: integer arithmetic (+ - * ^ with literal nonnegative
    exponents), comparisons (= != < <= > >=), divisibility (d | e),
    and boolean connectives (not, and, or) over the variable n.
    """

    __slots__ = ("text", "_fn")

    def __init__(self, text: str, fn):
        self.text = text
        self._fn = fn

    def evaluate(self, n: int) -> bool:
        if not isinstance(n, int) or n < 0:
            raise ValueError("the predicate variable ranges over n >= 0")
        return bool(self._fn(n))

    def __repr__(self):
        return f"Pi01Pred({self.text!r})"


class _PredParser:
    _KEYWORDS = ("not", "and", "or", "n")

    def __init__(self, src: str):
        self.src = src
        self.toks = self._lex(src)
        self.pos = 0

    @staticmethod
    def _lex(src):
        toks = []
        i, n = 0, len(src)
        two_char = ("!=", "<=", ">=")
        while i < n:
            ch = src[i]
            if ch in " \t\r\n":
                i += 1
                continue
            if src[i:i + 2] in two_char:
                toks.append((src[i:i + 2], i))
                i += 2
                continue
            if ch in "+-*^()|<>=":
                toks.append((ch, i))
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < n and src[j].isdigit():
                    j += 1
                toks.append(("num", i, int(src[i:j])))
                i = j
                continue
            if ch.isalpha():
                j = i
                while j < n and src[j].isalpha():
                    j += 1
                word = src[i:j]
                if word not in _PredParser._KEYWORDS:
                    raise ParseError(i, f"unknown word {word!r} "
                                         f"in predicate")
                toks.append((word, i))
                i = j
                continue
            raise ParseError(i, f"unexpected character {ch!r} in predicate")
        toks.append(("eof", n))
        return toks

    def peek(self):
        return self.toks[self.pos]

    def take(self, kind):
        t = self.toks[self.pos]
        if t[0] != kind:
            raise ParseError(t[1], f"expected {kind!r} in predicate")
        self.pos += 1
        return t

    def parse(self):
        fn = self.parse_or()
        t = self.peek()
        if t[0] != "eof":
            raise ParseError(t[1], "trailing input in predicate")
        return fn

    def parse_or(self):
        fn = self.parse_and()
        while self.peek()[0] == "or":
            self.pos += 1
            rhs = self.parse_and()
            lhs = fn
            fn = lambda n, a=lhs, b=rhs: a(n) or b(n)
        return fn

    def parse_and(self):
        fn = self.parse_not()
        while self.peek()[0] == "and":
            self.pos += 1
            rhs = self.parse_not()
            lhs = fn
            fn = lambda n, a=lhs, b=rhs: a(n) and b(n)
        return fn

    def parse_not(self):
        if self.peek()[0] == "not":
            self.pos += 1
            inner = self.parse_not()
            return lambda n, a=inner: not a(n)
        return self.parse_atom()

    def parse_atom(self):
        # a parenthesis may open either a boolean group or an arithmetic
        # operand; try the comparison reading first and backtrack
        save = self.pos
        try:
            return self.parse_comparison()
        except ParseError:
            self.pos = save
        self.take("(")
        fn = self.parse_or()
        self.take(")")
        return fn

    _CMPS = {
        "=": lambda a, b: a == b,
        "!=": lambda a, b: a != b,
        "<": lambda a, b: a < b,
        "<=": lambda a, b: a <= b,
        ">": lambda a, b: a > b,
        ">=": lambda a, b: a >= b,
    }

    def parse_comparison(self):
        a = self.parse_arith()
        t = self.peek()
        if t[0] in self._CMPS:
            self.pos += 1
            b = self.parse_arith()
            op = self._CMPS[t[0]]
            return lambda n, x=a, y=b, o=op: o(x(n), y(n))
        if t[0] == "|":
            self.pos += 1
            b = self.parse_arith()
            # d | e: d divides e; 0 divides only 0
            return lambda n, x=a, y=b: (
                y(n) == 0 if x(n) == 0 else y(n) % x(n) == 0)
        raise ParseError(t[1], "expected a comparison operator")

    def parse_arith(self):
        fn = self.parse_arith_term()
        while self.peek()[0] in ("+", "-"):
            op = self.take(self.peek()[0])[0]
            rhs = self.parse_arith_term()
            lhs = fn
            if op == "+":
                fn = lambda n, a=lhs, b=rhs: a(n) + b(n)
            else:
                fn = lambda n, a=lhs, b=rhs: a(n) - b(n)
        return fn

    def parse_arith_term(self):
        fn = self.parse_arith_pow()
        while self.peek()[0] == "*":
            self.pos += 1
            rhs = self.parse_arith_pow()
            lhs = fn
            fn = lambda n, a=lhs, b=rhs: a(n) * b(n)
        return fn

    def parse_arith_pow(self):
        fn = self.parse_arith_atom()
        if self.peek()[0] == "^":
            self.pos += 1
            t = self.take("num")
            exp = t[2]
            base = fn
            fn = lambda n, a=base, e=exp: a(n) ** e
        return fn

    def parse_arith_atom(self):
        t = self.peek()
        if t[0] == "num":
            self.pos += 1
            return lambda n, v=t[2]: v
        if t[0] == "n":
            self.pos += 1
            return lambda n: n
        if t[0] == "-":
            self.pos += 1
            inner = self.parse_arith_atom()
            return lambda n, a=inner: -a(n)
        if t[0] == "(":
            self.pos += 1
            fn = self.parse_arith()
            self.take(")")
            return fn
        raise ParseError(t[1], "expected a number, n, or '(' in predicate")


def parse_predicate(src: str) -> Pi01Pred:
    """Parse the predicate language into an evaluable Pi01Pred."""
    return Pi01Pred(src, _PredParser(src).parse())


# -- the encoding pipeline ------------------------------------------------

def pi01_sum(pred: Pi01Pred) -> CReal:
    """The real S = sum over n of (2**-n if P(n) else 0).

    S = 2 exactly when P holds for every n; a first failure at n*
    leaves S <= 2 - 2**-n*.  The geometric tail gives the explicit
    bound: everything from index k+2 on contributes at most 2**-k.
    """
    if not isinstance(pred, Pi01Pred):
        raise TypeError("pi01_sum expects a parsed predicate")
    return series_sum(
        lambda n: const(1, 1 << n) if pred.evaluate(n) else const(0),
        lambda k: k + 2,
    )


def witness_search(pred: Pi01Pred, cap: int = 1_000_000) -> int:
    """Least n with P(n) false, by linear scan up to cap."""
    for n in range(cap):
        if not pred.evaluate(n):
            return n
    raise ResourceExhausted(
        f"no counterexample in the first {cap} naturals; raise the cap "
        f"if the comparison stage says one exists")


@dataclass(frozen=True, slots=True)
class Counterexample:
    """The universal statement fails, and n is its least counterexample."""

    n: int
    comparison: ProofOutcome

    def __str__(self):
        return f"Counterexample: n = {self.n}"


@dataclass(frozen=True, slots=True)
class NoCounterexampleBelowBound:
    """The bounded sweep found no counterexample.  NOT a proof of truth:
    it rules out counterexamples below roughly max_precision and says
    nothing about larger n."""

    max_precision: int
    comparison: ProofOutcome

    def __str__(self):
        return (f"No counterexample below the precision bound "
                f"2^-{self.max_precision} (not a proof)")


def pi01_decide(pred, *, start_precision: int = 1,
                max_precision: int = DEFAULT_PI01_MAX_PRECISION,
                witness_cap: int = 1_000_000):
    """Decide 'P(n) for all n' as far as a bounded sweep can.

    Encodes the statement as the real S (see pi01_sum) and semi-decides
    S < 2.  A proof of S < 2 means some P(n) fails, and the least such
    n is then found by direct search and returned as a Counterexample.
    Budget exhaustion returns NoCounterexampleBelowBound, which is the
    honest reading of a sweep that cannot distinguish S = 2 from
    S very close to 2.
    """
    if isinstance(pred, str):
        pred = parse_predicate(pred)
    s = pi01_sum(pred)
    out = cmp_semidecide(s, const(2), start_precision, max_precision)
    if isinstance(out, Proved):
        return Counterexample(witness_search(pred, witness_cap), out)
    if isinstance(out, Exhausted):
        return NoCounterexampleBelowBound(max_precision, out)
    # S > 2 is impossible: the series is bounded by the full geometric
    # sum.  Refuted here means a broken approximation; fail loudly.
    raise ConformanceError({
        "predicate": pred.text,
        "outcome": str(out),
        "detail": "encoded sum compared above 2",
    })
