"""Symmetric circulant rows over the integers/rationals and the conference-pair search.

A symmetric circulant is determined by its palindromic first row, so everything
here works on rows; full matrices are materialized only when a caller needs one
(determinants, linear solves).  The search enumerates sign patterns for a pair
of circulants (A, D) with A having a zero leading entry, looking for
a*a + d*d = (2k-1)e0 under cyclic convolution — equivalently C^2 = (2k-1)I for
the block matrix C = [[A, D], [D, -A]].
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from itertools import product
from typing import NamedTuple

from .exact import Rational, SizeMismatchError, solve_linear, transpose

Row = tuple  # first row of a circulant; entries int or Fraction


class MalformedPatternError(ValueError):
    """Sign pattern violates the (aRow, dRow) shape constraints."""


class SingularCirculantError(ZeroDivisionError):
    """The circulant has no inverse."""


class BothSingularError(ZeroDivisionError):
    """Neither A + aI nor D + bI is invertible."""


class CacheCorruptError(ValueError):
    """A pair-cache file failed schema or conference validation."""


class ConferencePair(NamedTuple):
    k: int
    a_row: Row
    d_row: Row


def circulant_matrix(row):
    """k x k matrix M with M[i][j] = row[(j - i) % k]."""
    k = len(row)
    return [[row[(j - i) % k] for j in range(k)] for i in range(k)]


def is_palindromic(row) -> bool:
    k = len(row)
    return all(row[i] == row[k - i] for i in range(1, k))


def circulant_multiply(a: Row, b: Row) -> Row:
    """First row of circ(a) · circ(b), i.e. the cyclic convolution of the rows."""
    if len(a) != len(b):
        raise SizeMismatchError(f"rows of size {len(a)} and {len(b)}")
    k = len(a)
    return tuple(sum(a[i] * b[(j - i) % k] for i in range(k)) for j in range(k))


def _check_pattern(p: ConferencePair) -> None:
    k = p.k
    if len(p.a_row) != k or len(p.d_row) != k:
        raise MalformedPatternError("row lengths do not match k")
    if p.a_row[0] != 0:
        raise MalformedPatternError("aRow must start with 0")
    if any(v not in (-1, 1) for v in p.a_row[1:]):
        raise MalformedPatternError("aRow tail must be +-1")
    if any(v not in (-1, 1) for v in p.d_row):
        raise MalformedPatternError("dRow must be +-1 throughout")
    if not (is_palindromic(p.a_row) and is_palindromic(p.d_row)):
        raise MalformedPatternError("rows must be palindromic")


def is_conference(p: ConferencePair) -> bool:
    """True iff a*a + d*d = (2k-1)·e0, the conference condition C² = (n-1)I."""
    _check_pattern(p)
    k = p.k
    aa = circulant_multiply(p.a_row, p.a_row)
    dd = circulant_multiply(p.d_row, p.d_row)
    target = (2 * k - 1,) + (0,) * (k - 1)
    return tuple(x + y for x, y in zip(aa, dd)) == target


def _palindromic_row(k: int, head, signs) -> Row:
    # signs fill positions 1..floor((k-1)/2) and their mirrors; even k has a
    # self-mirrored middle slot that takes one extra sign.
    row = [head] + [0] * (k - 1)
    half = (k - 1) // 2
    for i in range(1, half + 1):
        row[i] = signs[i - 1]
        row[k - i] = signs[i - 1]
    if k % 2 == 0:
        row[k // 2] = signs[half]
    return tuple(row)


def free_sign_counts(k: int) -> tuple[int, int]:
    """(number of free signs in aRow, in dRow) for the palindromic layout."""
    tail = (k - 1) // 2 + (1 if k % 2 == 0 else 0)
    return tail, tail + 1


def search_conference_pairs(k: int, *, brute_force: bool = False) -> list[ConferencePair]:
    """All conference pairs over the palindromic sign parameterization.

    Results come in lexicographic order of the combined sign tuple
    (aRow signs, then dRow head and body) with -1 ordered before +1, which
    pins deterministic pair indices t1, t2, ...

    The default strategy is meet-in-the-middle: bucket aRow candidates by the
    complement vector (2k-1)e0 - a*a and join dRow candidates against their own
    autocorrelation d*d.  ``brute_force=True`` scans all 2^k sign tuples
    directly instead (auditing aid; identical output, order included).
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    na, nd = free_sign_counts(k)
    target = (2 * k - 1,) + (0,) * (k - 1)

    if brute_force:
        found = []
        for signs in product((-1, 1), repeat=na + nd):
            a = _palindromic_row(k, 0, signs[:na])
            d = _palindromic_row(k, signs[na], signs[na + 1:])
            aa = circulant_multiply(a, a)
            dd = circulant_multiply(d, d)
            if tuple(x + y for x, y in zip(aa, dd)) == target:
                found.append(ConferencePair(k, a, d))
        return found

    buckets: dict[Row, list[tuple]] = {}
    for asigns in product((-1, 1), repeat=na):
        a = _palindromic_row(k, 0, asigns)
        aa = circulant_multiply(a, a)
        need = tuple(t - x for t, x in zip(target, aa))
        buckets.setdefault(need, []).append((asigns, a))
    joined = []
    for dsigns in product((-1, 1), repeat=nd):
        d = _palindromic_row(k, dsigns[0], dsigns[1:])
        dd = circulant_multiply(d, d)
        for asigns, a in buckets.get(dd, ()):
            joined.append((asigns + dsigns, ConferencePair(k, a, d)))
    joined.sort(key=lambda t: t[0])
    return [p for _, p in joined]


def circulant_inverse(row: Row) -> Row:
    """First row of the inverse circulant, exact.

    Solves conv(r, row) = e0 for r, which in matrix form is circ(row)' r = e0.
    """
    k = len(row)
    m = transpose(circulant_matrix(row))
    e0 = [[Fraction(1 if i == 0 else 0)] for i in range(k)]
    try:
        col = solve_linear(m, e0)
    except Exception as exc:
        raise SingularCirculantError("circulant is singular") from exc
    return tuple(r[0] for r in col)


def _add_scalar(row: Row, c) -> Row:
    """Row of circ(row) + c·I."""
    return (row[0] + c,) + tuple(row[1:])


def compute_N(p: ConferencePair, a: Rational, b: Rational, alpha: int) -> Row:
    """First row of N = (D + bI)^{-1}(A − aI), falling back to (A + aI)^{-1}(bI − D).

    The D-pivot form is preferred whenever D + bI is invertible; with b = 0
    it specializes to N = D^{-1}(A − αI).
    """
    k = p.k
    if Fraction(a) ** 2 + Fraction(b) ** 2 != alpha * alpha or alpha * alpha != 2 * k - 1:
        raise ValueError("need a^2 + b^2 = alpha^2 = 2k - 1")
    try:
        inv = circulant_inverse(_add_scalar(p.d_row, b))
    except SingularCirculantError:
        pass
    else:
        rhs = _add_scalar(p.a_row, -a)
        return circulant_multiply(inv, rhs)
    try:
        inv = circulant_inverse(_add_scalar(p.a_row, a))
    except SingularCirculantError:
        raise BothSingularError("A + aI and D + bI are both singular") from None
    rhs = _add_scalar(tuple(-v for v in p.d_row), b)
    return circulant_multiply(inv, rhs)


# --- JSON cache -------------------------------------------------------------

def save_pairs(path: str, k: int, pairs: list[ConferencePair]) -> None:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    doc = {"k": k, "pairs": [{"aRow": list(p.a_row), "dRow": list(p.d_row)} for p in pairs]}
    with open(path, "w") as fh:
        json.dump(doc, fh)


def load_pairs(path: str) -> list[ConferencePair]:
    """Read a pair cache, re-validating every entry against the conference condition."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CacheCorruptError(f"unreadable cache {path}: {exc}") from exc
    if not isinstance(doc, dict) or "k" not in doc or "pairs" not in doc:
        raise CacheCorruptError(f"bad cache schema in {path}")
    k = doc["k"]
    pairs = []
    try:
        for entry in doc["pairs"]:
            p = ConferencePair(k, tuple(entry["aRow"]), tuple(entry["dRow"]))
            if not is_conference(p):
                raise CacheCorruptError(f"non-conference pair in {path}")
            pairs.append(p)
    except CacheCorruptError:
        raise
    except (TypeError, KeyError, ValueError) as exc:
        raise CacheCorruptError(f"bad pair entry in {path}: {exc}") from exc
    return pairs
