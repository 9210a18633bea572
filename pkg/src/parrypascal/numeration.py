"""Parry numeration systems: beta-expansions of 1, the Parry automaton and the
canonical Bertrand sequence ``U_beta`` with greedy representations.

Words are tuples of integer digits, most significant digit first.  The empty
tuple is the empty word.
"""
from __future__ import annotations

import bisect
import math
import threading
from dataclasses import dataclass, field
from typing import Iterator, Sequence

Word = tuple[int, ...]

EMPTY: Word = ()


class BetaSpecError(ValueError):
    """Raised for a malformed or invalid expansion of 1."""


class InadmissibleSpecError(BetaSpecError):
    """The quasi-greedy expansion has a shift that is lexicographically larger."""

    def __init__(self, shift: int, message: str | None = None):
        self.shift = shift
        super().__init__(message or f"shift {shift} of d*(1) exceeds d*(1)")


class ConvergenceError(RuntimeError):
    pass


# -- words -----------------------------------------------------------------


def parse_word(text: str) -> Word:
    """Parse ``"1010"``, ``"2,10,0"`` or ``""``/``"ε"`` into a word.

    Comma-separated input is needed as soon as a digit exceeds 9.
    """
    text = text.strip()
    if text in ("", "ε", "eps"):
        return EMPTY
    try:
        if "," in text:
            digits = tuple(int(tok) for tok in text.split(","))
        else:
            digits = tuple(int(ch) for ch in text)
    except ValueError:
        raise ValueError(f"not a word: {text!r}") from None
    if any(d < 0 for d in digits):
        raise ValueError(f"negative digit in {text!r}")
    return digits


def format_word(word: Sequence[int], empty: str = "ε") -> str:
    if not word:
        return empty
    if all(d < 10 for d in word):
        return "".join(map(str, word))
    return ",".join(map(str, word))


def genealogical_key(word: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    return (len(word), tuple(word))


# -- eventually periodic words ---------------------------------------------


@dataclass(frozen=True)
class PeriodicWord:
    """The infinite word ``prefix · period^ω`` (``period`` empty means ``0^ω``)."""

    prefix: Word
    period: Word = ()

    def digit(self, j: int) -> int:
        """The ``j``-th digit, 1-based."""
        if j < 1:
            raise IndexError(j)
        if j <= len(self.prefix):
            return self.prefix[j - 1]
        if not self.period:
            return 0
        return self.period[(j - 1 - len(self.prefix)) % len(self.period)]

    def head(self, n: int) -> Word:
        return tuple(self.digit(j) for j in range(1, n + 1))

    def evaluate(self, x: float) -> float:
        """Value of ``0.w`` in base ``x``, tail summed as a geometric series."""
        total = 0.0
        scale = 1.0
        for d in self.prefix:
            scale /= x
            total += d * scale
        if self.period:
            block = 0.0
            s = 1.0
            for d in self.period:
                s /= x
                block += d * s
            total += scale * block / (1.0 - s)
        return total

    def __str__(self) -> str:
        head = format_word(self.prefix, empty="")
        if not self.period:
            return head or "0"
        return f"{head}({format_word(self.period)})^ω"


# -- expansion of 1 ----------------------------------------------------------


@dataclass(frozen=True)
class BetaExpansionSpec:
    """Digits of ``d_beta(1) = t_1 ... t_m (t_{m+1} ... t_{m+k})^ω``.

    An empty ``period`` means the expansion is finite.  Instances built through
    :func:`parse_beta_spec` are normalized and admissible; the constructor only
    stores the digits.
    """

    preperiod: Word
    period: Word = ()

    @property
    def is_finite(self) -> bool:
        return not self.period

    @property
    def m(self) -> int:
        return len(self.preperiod)

    @property
    def k(self) -> int:
        return len(self.period)

    @property
    def t1(self) -> int:
        return (self.preperiod + self.period)[0]

    @property
    def digits(self) -> Word:
        """``t_1 ... t_{m+k}``, the digits labelling the automaton."""
        return self.preperiod + self.period

    def word(self) -> PeriodicWord:
        return PeriodicWord(self.preperiod, self.period)

    def __str__(self) -> str:
        # an empty preperiod is written as one unrolled period so the text re-parses
        pre = ",".join(map(str, self.preperiod or self.period))
        if self.period:
            return f"{pre};{','.join(map(str, self.period))}"
        return pre


def _primitive_root(word: Word) -> Word:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d]
    return word


def normalize_spec(preperiod: Sequence[int], period: Sequence[int]) -> BetaExpansionSpec:
    """Bring ``(m, k)`` to its minimal form.

    The period is reduced to its primitive root, then the preperiod is trimmed
    while its last digit can be absorbed by rotating the period.  A period made
    of zeros only is a finite expansion in disguise.
    """
    pre = tuple(preperiod)
    per = tuple(period)
    if per and not any(per):
        per = ()
        while pre and pre[-1] == 0:
            pre = pre[:-1]
    if per:
        per = _primitive_root(per)
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = (per[-1],) + per[:-1]
    if not pre and not per:
        raise BetaSpecError("expansion of 1 has no non-zero digit")
    return BetaExpansionSpec(pre, per)


def quasi_greedy_expansion(spec: BetaExpansionSpec) -> PeriodicWord:
    """``d*_beta(1)``: a finite ``t_1...t_m`` becomes ``(t_1...t_{m-1}(t_m - 1))^ω``."""
    if spec.is_finite:
        t = spec.preperiod
        return PeriodicWord((), t[:-1] + (t[-1] - 1,))
    return spec.word()


def validate_admissibility(spec: BetaExpansionSpec) -> None:
    """Raise :class:`InadmissibleSpecError` unless every left shift of
    ``d*(1)`` is lexicographically at most ``d*(1)``.

    Both words are periodic from position ``m`` on, so a window of ``m + 2k``
    digits decides the comparison.
    """
    if spec.is_finite:
        if not spec.preperiod:
            raise BetaSpecError("empty expansion")
        if spec.preperiod[-1] == 0:
            raise BetaSpecError("finite expansion must end with a non-zero digit")
    if spec.t1 < 1:
        raise BetaSpecError("first digit t_1 must be at least 1")
    dstar = quasi_greedy_expansion(spec)
    if not any(dstar.prefix + dstar.period):
        raise BetaSpecError("d*(1) = 0^ω, which would make beta = 1")
    m, k = len(dstar.prefix), len(dstar.period)
    window = m + 2 * k
    reference = dstar.head(window)
    for shift in range(1, m + k):
        shifted = tuple(dstar.digit(shift + j) for j in range(1, window + 1))
        if shifted > reference:
            raise InadmissibleSpecError(shift)
    if spec.is_finite:
        # d*(1) alone cannot tell 11 from 1011 (both give (10)^ω); the finite
        # greedy expansion must also dominate its own shifts strictly.
        t = spec.preperiod
        for shift in range(1, len(t)):
            tail = t[shift:] + (0,) * shift
            if tail >= t:
                raise InadmissibleSpecError(
                    shift, f"shift {shift} of d(1) is not below d(1); not a greedy expansion"
                )


def parse_beta_spec(text: str) -> BetaExpansionSpec:
    """Parse ``"t1,...,tm[;t(m+1),...,t(m+k)]"`` into a normalized, admissible spec.

    >>> parse_beta_spec("2;1")
    BetaExpansionSpec(preperiod=(2,), period=(1,))
    """
    if text is None or not text.strip():
        raise BetaSpecError("empty expansion string")
    parts = text.strip().split(";")
    if len(parts) > 2:
        raise BetaSpecError(f"at most one ';' allowed: {text!r}")

    def digits(chunk: str, what: str) -> Word:
        chunk = chunk.strip()
        if not chunk:
            raise BetaSpecError(f"empty {what} in {text!r}")
        out = []
        for tok in chunk.split(","):
            tok = tok.strip()
            if not tok.isdigit():
                raise BetaSpecError(f"bad digit {tok!r} in {text!r}")
            out.append(int(tok))
        return tuple(out)

    pre = digits(parts[0], "preperiod")
    per = digits(parts[1], "period") if len(parts) == 2 else ()
    t1 = pre[0]
    if t1 < 1:
        raise BetaSpecError("first digit t_1 must be at least 1")
    for d in pre + per:
        if d > t1:
            raise BetaSpecError(f"digit {d} out of range: all digits must be <= t_1 = {t1}")
    spec = normalize_spec(pre, per)
    validate_admissibility(spec)
    return spec


def beta_value(spec: BetaExpansionSpec, tol: float = 1e-12, max_iter: int = 200) -> float:
    """The root ``beta > 1`` of ``0.d*(1) = 1`` by bisection on ``(1, t_1 + 1]``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    dstar = quasi_greedy_expansion(spec)

    def f(x: float) -> float:
        return dstar.evaluate(x) - 1.0

    lo, hi = 1.0 + 1e-9, float(spec.t1 + 1)
    f_hi = f(hi)
    if abs(f_hi) <= tol:
        return hi
    if f(lo) <= 0 or f_hi > 0:
        raise ConvergenceError("root not bracketed")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if abs(fm) <= tol:
            return mid
        if fm > 0:
            lo = mid
        else:
            hi = mid
    raise ConvergenceError(f"bisection did not reach |f| <= {tol} in {max_iter} steps")


# -- automaton ----------------------------------------------------------------


@dataclass(frozen=True)
class ParryAutomaton:
    """Deterministic automaton whose path labels from state 0 are ``0*L_U``.

    ``transitions[state][digit]`` is the target state or ``None``.  All states
    are final.
    """

    state_count: int
    transitions: tuple[tuple[int | None, ...], ...]
    initial: int = 0

    @property
    def alphabet_size(self) -> int:
        return len(self.transitions[0])

    def step(self, state: int | None, digit: int) -> int | None:
        if state is None or not 0 <= digit < self.alphabet_size:
            return None
        return self.transitions[state][digit]

    def run(self, word: Sequence[int], state: int | None = None) -> int | None:
        """State reached after reading ``word``, or ``None`` if it is blocked."""
        s = self.initial if state is None else state
        for d in word:
            s = self.step(s, d)
            if s is None:
                return None
        return s

    def accepts(self, word: Sequence[int]) -> bool:
        return self.run(word) is not None

    def edges(self) -> list[tuple[int, int, int]]:
        return [
            (src, d, dst)
            for src, row in enumerate(self.transitions)
            for d, dst in enumerate(row)
            if dst is not None
        ]


def build_automaton(spec: BetaExpansionSpec) -> ParryAutomaton:
    t = spec.digits
    n = len(t)
    alphabet = spec.t1 + 1
    rows: list[list[int | None]] = [[None] * alphabet for _ in range(n)]
    for i in range(1, n + 1):
        src, ti = i - 1, t[i - 1]
        for d in range(ti):
            rows[src][d] = 0
        if i < n:
            rows[src][ti] = i
        elif not spec.is_finite:
            rows[src][ti] = spec.m  # back-edge into the period
    return ParryAutomaton(n, tuple(tuple(r) for r in rows))


# -- numeration systems ---------------------------------------------------------


class _GreedySystem:
    """Greedy representation against an increasing integer sequence ``u``."""

    def u(self, n: int) -> int:  # pragma: no cover - abstract
        raise NotImplementedError

    def _values_up_to(self, bound: int) -> list[int]:
        """Prefix ``U(0..l)`` of the sequence with ``U(l) > bound``."""
        i = 0
        while self.u(i) <= bound:
            i += 1
        return self._cache[: i + 1]

    def rep(self, n: int) -> Word:
        """Normal (greedy) representation of ``n``; ``rep(0)`` is the empty word."""
        if n < 0:
            raise ValueError("n must be non-negative")
        if n == 0:
            return EMPTY
        values = self._values_up_to(n)
        length = bisect.bisect_right(values, n)
        digits = []
        for j in range(length - 1, -1, -1):
            q, n = divmod(n, values[j])
            digits.append(q)
        return tuple(digits)

    def val(self, word: Sequence[int]) -> int:
        """Numerical value ``sum d_j U(j)``; the word need not be normal."""
        L = len(word)
        return sum(d * self.u(L - 1 - i) for i, d in enumerate(word) if d)


class NumerationSystem(_GreedySystem):
    """The Parry-Bertrand numeration system ``U_beta`` attached to ``d_beta(1)``.

    Immutable apart from the lazily extended, lock-protected cache of ``U``
    values, so instances can be shared between threads.
    """

    def __init__(self, spec: BetaExpansionSpec, tol: float = 1e-12):
        validate_admissibility(spec)
        self.spec = spec
        self.tol = tol
        self.automaton = build_automaton(spec)
        self.quasi_greedy = quasi_greedy_expansion(spec)
        self.beta = beta_value(spec, tol)
        self.c_beta = c_beta(self.quasi_greedy)
        self._lock = threading.Lock()
        self._cache: list[int] = []
        self._t = spec.digits

    @classmethod
    def from_string(cls, text: str, tol: float = 1e-12) -> "NumerationSystem":
        return cls(parse_beta_spec(text), tol)

    def __repr__(self) -> str:
        return f"NumerationSystem({str(self.spec)!r}, beta={self.beta:.10g})"

    @property
    def alphabet(self) -> range:
        return range(self.spec.t1 + 1)

    def _next_value(self) -> int:
        c, t, i = self._cache, self._t, len(self._cache)
        spec = self.spec
        n_rec = len(t)
        if i < n_rec:
            return sum(t[j - 1] * c[i - j] for j in range(1, i + 1)) + 1
        value = sum(t[j - 1] * c[i - j] for j in range(1, n_rec + 1))
        if not spec.is_finite:
            k = spec.k
            value += c[i - k] - sum(t[j - 1] * c[i - k - j] for j in range(1, spec.m + 1))
        return value

    def u(self, n: int) -> int:
        if n < 0:
            raise ValueError("n must be non-negative")
        if n >= len(self._cache):
            with self._lock:
                while n >= len(self._cache):
                    self._cache.append(self._next_value())
        return self._cache[n]

    def u_sequence(self, n: int) -> list[int]:
        """``[U(0), ..., U(n)]``."""
        self.u(n)
        return self._cache[: n + 1]

    def is_in_language(self, word: Sequence[int], allow_leading_zeros: bool = False) -> bool:
        if not word:
            return True
        if not allow_leading_zeros and word[0] == 0:
            return False
        return self.automaton.accepts(word)

    def iter_language(self) -> Iterator[Word]:
        """Words of ``L_U`` in genealogical order, read off the automaton.

        Same-length words in lexicographic order are the children, digit by
        digit, of the previous level taken in lexicographic order.
        """
        yield EMPTY
        aut = self.automaton
        level = [
            ((d,), s) for d in self.alphabet if d > 0 and (s := aut.step(0, d)) is not None
        ]
        while level:
            for w, _ in level:
                yield w
            level = [
                (w + (d,), s2)
                for w, s in level
                for d in self.alphabet
                if (s2 := aut.step(s, d)) is not None
            ]

    def enumerate_language(self, count: int) -> list[Word]:
        if count < 0:
            raise ValueError("count must be non-negative")
        out = []
        if count == 0:
            return out
        for w in self.iter_language():
            out.append(w)
            if len(out) == count:
                break
        return out

    def growth_constant_estimate(self, n: int) -> float:
        """``U(n) / beta**n``, which tends to the dominant coefficient of ``U``."""
        return math.exp(math.log(self.u(n)) - n * math.log(self.beta))

    def base_beta_value(self, digits: Sequence[int], tail: PeriodicWord | None = None) -> float:
        """``0.w`` in base beta, optionally followed by an infinite ``tail``."""
        beta = self.beta
        total, scale = 0.0, 1.0
        for d in digits:
            scale /= beta
            total += d * scale
        if tail is not None:
            total += scale * tail.evaluate(beta)
        return total


def c_beta(dstar: PeriodicWord) -> int:
    """Longest run of zeros in ``d*(1)``: preperiod plus two periods covers the seam."""
    best = run = 0
    for d in dstar.prefix + dstar.period * 2:
        run = run + 1 if d == 0 else 0
        best = max(best, run)
    return best


@dataclass
class CustomLinearSystem(_GreedySystem):
    """A user-supplied linear numeration system.

    ``U(n + k) = coeffs[k-1] U(n + k - 1) + ... + coeffs[0] U(n)`` with
    ``U(0..k-1) = init``.
    """

    coeffs: tuple[int, ...]
    init: tuple[int, ...]
    _cache: list[int] = field(default_factory=list, init=False, repr=False)

    def __post_init__(self):
        self.coeffs = tuple(self.coeffs)
        self.init = tuple(self.init)
        if len(self.coeffs) != len(self.init) or not self.init:
            raise ValueError("need as many initial values as recurrence coefficients")
        if self.init[0] != 1:
            raise ValueError("U(0) must be 1")
        self._cache = list(self.init)
        # strictly increasing is checked on a short prefix
        for i in range(1, 4 * len(self.init) + 4):
            if self.u(i) <= self.u(i - 1):
                raise ValueError("sequence must be strictly increasing")

    def u(self, n: int) -> int:
        k = len(self.init)
        while n >= len(self._cache):
            c = self._cache
            c.append(sum(a * c[-k + i] for i, a in enumerate(self.coeffs)))
        return self._cache[n]

    def is_normal(self, word: Sequence[int]) -> bool:
        """Is ``word`` the greedy representation of its own value?"""
        return tuple(word) == self.rep(self.val(word))
