"""Automatic ±1 sequences: substitution fixed points, recurrences, kernels."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "ResourceError",
    "SubstitutionSystem",
    "SignSequence",
    "KernelReport",
    "PAPERFOLDING",
    "RUDIN_SHAPIRO",
    "max_work",
    "expand_substitution",
    "iterate_word",
    "apply_coding",
    "sequence_prefix",
    "get_sequence",
    "cross_check_definitions",
    "iota_conjugacy_check",
    "running_fold",
    "arithmetic_subsequence",
    "kernel_estimate",
    "parse_substitution",
    "load_substitution",
    "prefix_to_text",
    "prefix_from_text",
]

DEFAULT_MAX_WORK = 2**20


class ResourceError(RuntimeError):
    """A requested word, prefix or table exceeds the configured cap."""


def max_work() -> int:
    """Largest word/prefix length we agree to build.

    ``STIELTJES_MAX_WORK`` overrides the default of 2**20.
    """
    env = os.environ.get("STIELTJES_MAX_WORK")
    return int(env) if env else DEFAULT_MAX_WORK


def _guard(n: int, what: str) -> None:
    cap = max_work()
    if n > cap:
        raise ResourceError(f"{what} of length {n} exceeds the cap {cap} (set STIELTJES_MAX_WORK)")


@dataclass(frozen=True)
class SubstitutionSystem:
    letters: tuple[str, ...]
    rules: Mapping[str, str]
    coding: Mapping[str, int]
    seed: str

    def __post_init__(self):
        letters = set(self.letters)
        if len(letters) != len(self.letters):
            raise ValueError("duplicate letters")
        for a in self.letters:
            if len(a) != 1:
                raise ValueError(f"letters must be single characters, got {a!r}")
        if set(self.rules) != letters:
            raise ValueError("every letter needs exactly one rule")
        for a, img in self.rules.items():
            if not img:
                raise ValueError(f"rule for {a!r} has an empty image")
            bad = set(img) - letters
            if bad:
                raise ValueError(f"rule {a} -> {img} uses unknown letters {sorted(bad)}")
        if set(self.coding) != letters:
            raise ValueError("coding must be total on the letters")
        if any(v not in (-1, 1) for v in self.coding.values()):
            raise ValueError("coding values must be -1 or +1")
        if self.seed not in letters:
            raise ValueError(f"seed {self.seed!r} is not a letter")
        if not self.rules[self.seed].startswith(self.seed):
            raise ValueError(f"rule for seed {self.seed!r} must begin with it (prolongable)")


PAPERFOLDING = SubstitutionSystem(
    letters=("a", "b", "c", "d"),
    rules={"a": "ab", "b": "cb", "c": "ad", "d": "cd"},
    coding={"a": 1, "b": 1, "c": -1, "d": -1},
    seed="a",
)

RUDIN_SHAPIRO = SubstitutionSystem(
    letters=("a", "b", "c", "d"),
    rules={"a": "ab", "b": "ac", "c": "db", "d": "dc"},
    coding={"a": 1, "b": 1, "c": -1, "d": -1},
    seed="a",
)


def iterate_word(system: SubstitutionSystem, word: str, n: int) -> str:
    """Apply the substitution ``n`` times to an arbitrary word."""
    if n < 0:
        raise ValueError("iteration count must be >= 0")
    rules = system.rules
    for _ in range(n):
        grown = sum(len(rules[a]) for a in word)
        _guard(grown, "word")
        word = "".join(rules[a] for a in word)
    return word


def expand_substitution(system: SubstitutionSystem, n: int) -> str:
    if len(system.rules[system.seed]) < 2:
        raise ValueError("seed image must have length >= 2 for the word to grow")
    return iterate_word(system, system.seed, n)


def apply_coding(system: SubstitutionSystem, word: str) -> np.ndarray:
    code = system.coding
    return np.fromiter((code[a] for a in word), dtype=np.int64, count=len(word))


# -- recurrence definitions ---------------------------------------------------

def _paperfolding(n: int) -> np.ndarray:
    p = np.empty(n, dtype=np.int64)
    p[0] = 1
    # p[2k] for k >= 1 is +1 when k is even (p_{4k}) and -1 when odd (p_{4k+2})
    even = np.arange(2, n, 2)
    p[2::2] = np.where((even // 2) % 2 == 0, 1, -1)
    filled = 1
    while filled < n:
        hi = min(2 * filled, n)
        odd = np.arange(filled | 1, hi, 2)
        p[odd] = p[odd // 2]
        filled = hi
    return p


def _rudin_shapiro(n: int) -> np.ndarray:
    r = np.empty(n, dtype=np.int64)
    r[0] = 1
    filled = 1
    while filled < n:
        hi = min(2 * filled, n)
        idx = np.arange(filled, hi)
        half = idx // 2
        sign = np.where((idx % 2 == 1) & (half % 2 == 1), -1, 1)
        r[idx] = sign * r[half]
        filled = hi
    return r


_RECURRENCES: dict[str, Callable[[int], np.ndarray]] = {
    "paperfolding": _paperfolding,
    "rudin-shapiro": _rudin_shapiro,
}

_SYSTEMS = {"paperfolding": PAPERFOLDING, "rudin-shapiro": RUDIN_SHAPIRO}


def sequence_prefix(seq_name: str, length: int) -> np.ndarray:
    """First ``length`` terms from the defining recurrences."""
    if length < 1:
        raise ValueError("length must be >= 1")
    try:
        gen = _RECURRENCES[seq_name]
    except KeyError:
        raise KeyError(f"unknown sequence {seq_name!r}; known: {sorted(_RECURRENCES)}") from None
    _guard(length, "prefix")
    out = gen(length)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class SignSequence:
    """A named ±1 sequence with an eagerly materialized prefix.

    ``rule(n)`` must return the first ``n`` terms; :meth:`extend` builds a new
    object rather than mutating this one.
    """

    name: str
    prefix: np.ndarray = field(repr=False)
    rule: Callable[[int], np.ndarray] | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        arr = np.asarray(self.prefix, dtype=np.int64)
        if arr.ndim != 1 or not np.all(np.abs(arr) == 1):
            raise ValueError("sign sequences take values in {-1, +1}")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "prefix", arr)

    def __len__(self):
        return len(self.prefix)

    def __getitem__(self, i):
        return self.prefix[i]

    def __eq__(self, other):
        if not isinstance(other, SignSequence):
            return NotImplemented
        return self.name == other.name and np.array_equal(self.prefix, other.prefix)

    def __hash__(self):
        return hash((self.name, self.prefix.tobytes()))

    def extend(self, n: int) -> "SignSequence":
        if n <= len(self):
            return self
        if self.rule is None:
            raise ValueError(f"{self.name}: prefix of {len(self)} terms cannot be extended")
        return SignSequence(self.name, self.rule(n), self.rule)

    def values(self, n: int) -> np.ndarray:
        """First ``n`` values, extending through the rule when possible."""
        return self.extend(n).prefix[:n]

    @classmethod
    def from_substitution(cls, system: SubstitutionSystem, n: int, name: str = "custom") -> "SignSequence":
        def rule(k: int) -> np.ndarray:
            word = system.seed
            while len(word) < k:
                word = iterate_word(system, word, 1)
            return apply_coding(system, word[:k])

        return cls(name, rule(n), rule)


def get_sequence(seq_name: str, length: int) -> SignSequence:
    return SignSequence(seq_name, sequence_prefix(seq_name, length), lambda k: sequence_prefix(seq_name, k))


def as_values(seq, n: int) -> np.ndarray:
    """First ``n`` terms of a SignSequence or any integer array-like."""
    if isinstance(seq, SignSequence):
        return seq.values(n)
    arr = np.asarray(seq)
    if len(arr) < n:
        raise ValueError(f"sequence has {len(arr)} terms, {n} needed")
    return arr[:n]


def cross_check_definitions(seq_name: str, n: int, system: SubstitutionSystem | None = None) -> bool:
    """Do the substitution and the recurrence give the same prefix?"""
    if n < 1:
        raise ValueError("n must be >= 1")
    system = system or _SYSTEMS[seq_name]
    coded = apply_coding(system, expand_substitution(system, n))
    return bool(np.array_equal(coded, sequence_prefix(seq_name, len(coded))))


def iota_conjugacy_check(n: int) -> bool:
    """Check rho(s^n(a)) = -rho(s^n(d)) and rho(s^n(b)) = -rho(s^n(c)) for Rudin-Shapiro."""
    sysm = RUDIN_SHAPIRO
    img = {a: apply_coding(sysm, iterate_word(sysm, a, n)) for a in "abcd"}
    return bool(np.array_equal(img["a"], -img["d"]) and np.array_equal(img["b"], -img["c"]))


def running_fold(seq, op: Callable, length: int) -> list:
    """``[y_1, ..., y_length]`` where ``y_n`` folds the first ``n`` terms with ``op``."""
    vals = as_values(seq, length)
    out = []
    acc = None
    for v in vals:
        v = int(v)
        acc = v if acc is None else op(acc, v)
        out.append(acc)
    return out


def arithmetic_subsequence(seq, s: int, t: int, length: int) -> np.ndarray:
    """``(a_{s*n + t})`` for ``n < length``."""
    if s < 0 or t < 0:
        raise ValueError("s and t must be nonnegative")
    last = s * (length - 1) + t
    vals = as_values(seq, last + 1)
    return vals[t : last + 1 : s] if s else np.full(length, vals[t])


@dataclass(frozen=True)
class KernelReport:
    k: int
    depth: int
    classes: tuple[tuple[int, int], ...]
    comparison_length: int
    saturated: bool
    counts_by_level: tuple[int, ...] = ()

    @property
    def size(self) -> int:
        return len(self.classes)


def kernel_estimate(values: Sequence[int], k: int, depth: int, window: int) -> KernelReport:
    """Distinct subsequences ``(a_{k^i n + j})_{n < window}`` for ``i <= depth``.

    ``counts_by_level[i]`` is the cumulative class count after level ``i``.
    Saturation only means the last level added nothing; it is not a proof.
    """
    if k < 2:
        raise ValueError("kernel base must be >= 2")
    vals = np.asarray(values)
    if window * k**depth > len(vals):
        raise ValueError(
            f"need {window * k**depth} terms for depth {depth} and window {window}, have {len(vals)}"
        )
    seen: dict[bytes, tuple[int, int]] = {}
    counts = []
    new_at_last = 0
    for i in range(depth + 1):
        step = k**i
        added = 0
        for j in range(step):
            key = np.ascontiguousarray(vals[j : j + step * window : step]).tobytes()
            if key not in seen:
                seen[key] = (i, j)
                added += 1
        counts.append(len(seen))
        new_at_last = added
    return KernelReport(
        k=k,
        depth=depth,
        classes=tuple(seen.values()),
        comparison_length=window,
        saturated=(new_at_last == 0 and depth > 0),
        counts_by_level=tuple(counts),
    )


# -- text formats ---------------------------------------------------------------

def parse_substitution(text: str) -> SubstitutionSystem:
    """Parse the ``letters:/rule:/code:/seed:`` config format."""
    letters = None
    rules: dict[str, str] = {}
    coding: dict[str, int] = {}
    seed = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ValueError(f"line {lineno}: expected 'key: value', got {raw!r}")
        key, rest = key.strip(), rest.strip()
        if key == "letters":
            letters = tuple(rest.split())
        elif key == "rule":
            lhs, arrow, rhs = rest.partition("->")
            if not arrow:
                raise ValueError(f"line {lineno}: rule needs '->'")
            rules[lhs.strip()] = "".join(rhs.split())
        elif key == "code":
            lhs, eq, rhs = rest.partition("=")
            if not eq:
                raise ValueError(f"line {lineno}: code needs '='")
            coding[lhs.strip()] = int(rhs)
        elif key == "seed":
            seed = rest
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    if letters is None or seed is None:
        raise ValueError("config needs 'letters:' and 'seed:' lines")
    return SubstitutionSystem(letters, rules, coding, seed)


def load_substitution(path) -> SubstitutionSystem:
    with open(path) as fh:
        return parse_substitution(fh.read())


def prefix_to_text(values: Iterable[int]) -> str:
    return " ".join(str(int(v)) for v in values)


def prefix_from_text(text: str) -> np.ndarray:
    vals = np.array([int(t) for t in text.split()], dtype=np.int64)
    if not np.all(np.abs(vals) == 1):
        raise ValueError("prefix values must be -1 or +1")
    return vals
