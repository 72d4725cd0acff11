"""Truth tables and structural analysis of Boolean functions.

A function f on n variables is stored as an integer bitmask: bit m of
``bits`` holds f(m), where bit (i-1) of the input code m is the value of
variable x_i (so x_1 is the least-significant bit of the code).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

__all__ = [
    "TruthTable",
    "NpnTransform",
    "MultilinearPoly",
    "MonotoneNormalForm",
    "parse_function",
    "table_and",
    "table_or",
    "table_parity",
    "table_nae",
    "table_exact",
    "table_threshold",
    "DEPTH_MAX_ARITY",
    "MULTILINEAR_MAX_ARITY",
    "NPN_MAX_ARITY",
]

DEPTH_MAX_ARITY = 12
MULTILINEAR_MAX_ARITY = 20
NPN_MAX_ARITY = 6


# ---------------------------------------------------------------------------
# cached per-arity bit masks

_var_masks_cache: dict[int, list[int]] = {}
_weight_masks_cache: dict[int, list[int]] = {}
_popcnt_cache: dict[int, np.ndarray] = {}


def _var_masks(n: int) -> list[int]:
    """masks[p] has bit m set iff bit p of m is 1, over all m < 2**n."""
    got = _var_masks_cache.get(n)
    if got is not None:
        return got
    size = 1 << n
    masks = []
    for p in range(n):
        blk = 1 << p
        seg = ((1 << blk) - 1) << blk  # one block of ones per period 2*blk
        period = blk << 1
        while period < size:
            seg |= seg << period
            period <<= 1
        masks.append(seg)
    _var_masks_cache[n] = masks
    return masks


def _popcnt(n: int) -> np.ndarray:
    got = _popcnt_cache.get(n)
    if got is None:
        got = np.bitwise_count(np.arange(1 << n, dtype=np.uint64)).astype(np.uint8)
        _popcnt_cache[n] = got
    return got


def _weight_masks(n: int) -> list[int]:
    got = _weight_masks_cache.get(n)
    if got is None:
        pc = _popcnt(n)
        got = [_pack_values((pc == w).astype(np.uint8)) for w in range(n + 1)]
        _weight_masks_cache[n] = got
    return got


def _unpack_values(bits: int, n: int) -> np.ndarray:
    """Table bits -> uint8 array of length 2**n."""
    size = 1 << n
    nbytes = max(1, size >> 3)
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:size]


def _pack_values(values: np.ndarray) -> int:
    raw = np.packbits(values.astype(np.uint8), bitorder="little").tobytes()
    return int.from_bytes(raw, "little")


def _restrict_bits(bits: int, n: int, p: int, b: int) -> int:
    """Fix bit position p of the input code to b and compact to arity n-1."""
    masks = _var_masks(n)
    full = (1 << (1 << n)) - 1
    blk = 1 << p
    if b:
        bits >>= blk
    # entries now sit where bit p of the code is 0; merge block pairs upward
    cur = p
    while cur < n - 1:
        s = 1 << cur
        a = ~masks[cur] & ~masks[cur + 1] & full
        bits = (bits & a) | ((bits >> s) & (a << s))
        cur += 1
    return bits & ((1 << (1 << (n - 1))) - 1)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NpnTransform:
    """Variable permutation + input negations + optional output negation.

    Applying t to f yields g with g(x) = out ^ f(y), where old variable j
    (0-based) reads y_j = x[perm[j]] ^ bit j of flips.
    """

    perm: tuple[int, ...]
    flips: int = 0
    negate_output: int = 0

    @classmethod
    def identity(cls, n: int) -> "NpnTransform":
        return cls(tuple(range(n)), 0, 0)

    def input_code(self, m: int) -> int:
        c = 0
        for j, src in enumerate(self.perm):
            c |= (((m >> src) & 1) << j)
        return c ^ self.flips

    def apply(self, f: "TruthTable") -> "TruthTable":
        n = f.arity
        if len(self.perm) != n:
            raise ValueError("transform arity %d does not match table arity %d"
                             % (len(self.perm), n))
        out = 0
        for m in range(1 << n):
            v = f.value(self.input_code(m)) ^ self.negate_output
            out |= v << m
        return TruthTable(n, out)

    def compose(self, first: "NpnTransform") -> "NpnTransform":
        """Transform equal to applying `first`, then self."""
        if len(self.perm) != len(first.perm):
            raise ValueError("cannot compose transforms of different arity")
        perm = tuple(self.perm[first.perm[j]] for j in range(len(first.perm)))
        flips = 0
        for j in range(len(first.perm)):
            fj = ((first.flips >> j) & 1) ^ ((self.flips >> first.perm[j]) & 1)
            flips |= fj << j
        return NpnTransform(perm, flips,
                            self.negate_output ^ first.negate_output)

    def inverse(self) -> "NpnTransform":
        n = len(self.perm)
        inv = [0] * n
        for j, src in enumerate(self.perm):
            inv[src] = j
        flips = 0
        for k in range(n):
            flips |= ((self.flips >> inv[k]) & 1) << k
        return NpnTransform(tuple(inv), flips, self.negate_output)


_perm_codes_cache: dict[int, tuple[list[tuple[int, ...]], np.ndarray]] = {}


def _perm_codes(n: int):
    """All n! permutations with their code-permutation arrays."""
    got = _perm_codes_cache.get(n)
    if got is not None:
        return got
    size = 1 << n
    bm = ((np.arange(size)[:, None] >> np.arange(n)[None, :]) & 1).astype(np.uint8)
    pows = (1 << np.arange(n)).astype(np.int64)
    perms = list(itertools.permutations(range(n)))
    codes = np.empty((len(perms), size), dtype=np.int64)
    for t, perm in enumerate(perms):
        codes[t] = bm[:, list(perm)] @ pows
    got = (perms, codes)
    _perm_codes_cache[n] = got
    return got


def _npn_canonical(f: "TruthTable") -> tuple["TruthTable", NpnTransform]:
    n = f.arity
    if n > NPN_MAX_ARITY:
        raise ValueError("npn canonicalization supports arity <= %d, got %d"
                         % (NPN_MAX_ARITY, n))
    size = 1 << n
    perms, codes = _perm_codes(n)
    values = _unpack_values(f.bits, n)
    weights = np.left_shift(np.uint64(1),
                            np.arange(size - 1, -1, -1, dtype=np.uint64))
    fullkey = np.uint64((1 << size) - 1) if size < 64 else np.uint64(0xFFFFFFFFFFFFFFFF)
    best = None
    for flips in range(size):
        keys = values[codes ^ flips] @ weights
        negkeys = fullkey - keys
        i1 = int(np.argmin(keys))
        i2 = int(np.argmin(negkeys))
        for key, idx, neg in ((int(keys[i1]), i1, 0), (int(negkeys[i2]), i2, 1)):
            if best is None or key < best[0]:
                best = (key, flips, idx, neg)
    _, flips, pidx, neg = best
    t = NpnTransform(perms[pidx], flips, neg)
    return t.apply(f), t


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MultilinearPoly:
    """The unique multilinear polynomial agreeing with f on {0,1}^n.

    coeffs maps a variable-set bitmask to its exact integer coefficient;
    zero coefficients are omitted.
    """

    arity: int
    coeffs: dict[int, int]

    def coeff(self, mask: int) -> int:
        return self.coeffs.get(mask, 0)

    @property
    def degree(self) -> int:
        if not self.coeffs:
            return 0
        return max(s.bit_count() for s in self.coeffs)

    def evaluate(self, m: int) -> int:
        # a monomial contributes iff all its variables are set in m
        return sum(c for s, c in self.coeffs.items() if s & ~m == 0)


@dataclass(frozen=True)
class MonotoneNormalForm:
    """Prime DNF terms and prime CNF clauses of a monotone function.

    Terms and clauses are frozensets of 1-based variable indices; both
    collections are antichains, sorted for deterministic output.
    """

    arity: int
    dnf_terms: tuple[frozenset[int], ...]
    cnf_clauses: tuple[frozenset[int], ...]

    def eval_dnf(self, m: int) -> int:
        for term in self.dnf_terms:
            if all((m >> (i - 1)) & 1 for i in term):
                return 1
        return 0

    def eval_cnf(self, m: int) -> int:
        for clause in self.cnf_clauses:
            if not any((m >> (i - 1)) & 1 for i in clause):
                return 0
        return 1

    def dnf_table(self) -> "TruthTable":
        bits = 0
        for m in range(1 << self.arity):
            bits |= self.eval_dnf(m) << m
        return TruthTable(self.arity, bits)

    def cnf_table(self) -> "TruthTable":
        bits = 0
        for m in range(1 << self.arity):
            bits |= self.eval_cnf(m) << m
        return TruthTable(self.arity, bits)


# ---------------------------------------------------------------------------


class TruthTable:
    """Immutable truth table of a Boolean function on `arity` variables."""

    __slots__ = ("arity", "bits")

    def __init__(self, arity: int, bits: int):
        if arity < 0:
            raise ValueError("arity must be >= 0")
        if bits < 0 or bits >> (1 << arity):
            raise ValueError("table bits out of range for arity %d" % arity)
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, *a):
        raise AttributeError("TruthTable is immutable")

    def __eq__(self, other):
        return (isinstance(other, TruthTable)
                and other.arity == self.arity and other.bits == self.bits)

    def __hash__(self):
        return hash((self.arity, self.bits))

    def __repr__(self):
        return "TruthTable(%d, 0x%x)" % (self.arity, self.bits)

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_values(cls, values) -> "TruthTable":
        values = list(values)
        n = (len(values) - 1).bit_length()
        if len(values) != 1 << n:
            raise ValueError("value list length must be a power of two")
        bits = 0
        for m, v in enumerate(values):
            if v not in (0, 1):
                raise ValueError("table entries must be 0 or 1")
            bits |= v << m
        return cls(n, bits)

    @classmethod
    def from_profile(cls, profile) -> "TruthTable":
        """Build the symmetric function with value profile (b_0, ..., b_n)."""
        profile = tuple(profile)
        n = len(profile) - 1
        if n < 0 or any(b not in (0, 1) for b in profile):
            raise ValueError("profile must be a nonempty 0/1 vector")
        arr = np.asarray(profile, dtype=np.uint8)[_popcnt(n)]
        return cls(n, _pack_values(arr))

    # -- basics -------------------------------------------------------------

    def value(self, m: int) -> int:
        if m < 0 or m >> self.arity:
            raise ValueError("input code %d out of range for arity %d"
                             % (m, self.arity))
        return (self.bits >> m) & 1

    @property
    def size(self) -> int:
        return 1 << self.arity

    def popcount(self) -> int:
        return self.bits.bit_count()

    def is_constant(self) -> bool:
        return self.bits == 0 or self.bits == (1 << self.size) - 1

    def complement(self) -> "TruthTable":
        return TruthTable(self.arity, self.bits ^ ((1 << self.size) - 1))

    def values(self) -> np.ndarray:
        return _unpack_values(self.bits, self.arity)

    # -- restrictions -------------------------------------------------------

    def _check_var(self, i: int):
        if not 1 <= i <= self.arity:
            raise ValueError("variable index %d out of range 1..%d"
                             % (i, self.arity))

    def restrict(self, i: int, b: int) -> "TruthTable":
        """Fix x_i = b; remaining variables keep their relative order."""
        self._check_var(i)
        if b not in (0, 1):
            raise ValueError("restriction value must be 0 or 1")
        return TruthTable(self.arity - 1,
                          _restrict_bits(self.bits, self.arity, i - 1, b))

    def substitute_xor(self, i: int, j: int, c: int) -> "TruthTable":
        """Impose x_j = x_i xor c (i < j after swap); drops variable j."""
        if i == j:
            raise ValueError("xor substitution needs two distinct variables")
        if i > j:
            i, j = j, i
        self._check_var(i)
        self._check_var(j)
        if c not in (0, 1):
            raise ValueError("xor value must be 0 or 1")
        n = self.arity
        r0 = _restrict_bits(self.bits, n, j - 1, c)       # where x_i = 0
        r1 = _restrict_bits(self.bits, n, j - 1, 1 ^ c)   # where x_i = 1
        m1 = _var_masks(n - 1)[i - 1]
        full = (1 << (1 << (n - 1))) - 1
        return TruthTable(n - 1, (r0 & ~m1 & full) | (r1 & m1))

    def negate_var(self, i: int) -> "TruthTable":
        """Negate input x_i: result(x) = f(x with x_i flipped)."""
        self._check_var(i)
        blk = 1 << (i - 1)
        m1 = _var_masks(self.arity)[i - 1]
        full = (1 << self.size) - 1
        m0 = ~m1 & full
        return TruthTable(self.arity,
                          ((self.bits >> blk) & m0) | ((self.bits << blk) & m1))

    def is_dead(self, i: int) -> bool:
        self._check_var(i)
        blk = 1 << (i - 1)
        mask0 = ~_var_masks(self.arity)[i - 1] & ((1 << self.size) - 1)
        return (((self.bits >> blk) ^ self.bits) & mask0) == 0

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.arity + 1) if not self.is_dead(i))

    def drop_dead(self) -> tuple["TruthTable", tuple[int, ...]]:
        """Remove dead variables; returns (table, kept original indices)."""
        kept = self.support()
        t = self
        for i in range(self.arity, 0, -1):
            if i not in kept:
                t = t.restrict(i, 0)
        return t, kept

    # -- structure ----------------------------------------------------------

    def symmetric_profile(self):
        """Profile (b_0, ..., b_n) if f is symmetric, else None."""
        masks = _weight_masks(self.arity)
        profile = []
        for wm in masks:
            sect = self.bits & wm
            if sect == 0:
                profile.append(0)
            elif sect == wm:
                profile.append(1)
            else:
                return None
        return tuple(profile)

    def is_monotone(self) -> bool:
        masks = _var_masks(self.arity)
        full = (1 << self.size) - 1
        for p in range(self.arity):
            blk = 1 << p
            lowpos = ~masks[p] & full
            if self.bits & ~(self.bits >> blk) & lowpos:
                return False
        return True

    def prime_normal_forms(self) -> MonotoneNormalForm:
        """Prime DNF/CNF of a monotone, non-constant function."""
        if self.is_constant():
            raise ValueError("normal forms are defined for non-constant input")
        if not self.is_monotone():
            raise ValueError("normal forms require a monotone function")
        n = self.arity
        masks = _var_masks(n)
        full = (1 << self.size) - 1
        ones = self.bits
        zeros = ~self.bits & full
        minimal = ones
        maximal = zeros
        for p in range(n):
            blk = 1 << p
            # drop 1-points whose predecessor (bit p cleared) is also 1
            minimal &= ~((ones << blk) & masks[p])
            # drop 0-points whose successor (bit p set) is also 0
            maximal &= ~((zeros >> blk) & (~masks[p] & full))
        terms = []
        rest = minimal
        while rest:
            low = rest & -rest
            m = low.bit_length() - 1
            terms.append(frozenset(i + 1 for i in range(n) if (m >> i) & 1))
            rest ^= low
        clauses = []
        rest = maximal & full
        while rest:
            low = rest & -rest
            m = low.bit_length() - 1
            clauses.append(frozenset(i + 1 for i in range(n)
                                     if not (m >> i) & 1))
            rest ^= low
        key = lambda s: tuple(sorted(s))
        return MonotoneNormalForm(n, tuple(sorted(terms, key=key)),
                                  tuple(sorted(clauses, key=key)))

    # -- polynomial ---------------------------------------------------------

    def _moebius(self) -> np.ndarray:
        if self.arity > MULTILINEAR_MAX_ARITY:
            raise ValueError("multilinear transform supports arity <= %d"
                             % MULTILINEAR_MAX_ARITY)
        arr = self.values().astype(np.int64)
        for i in range(self.arity):
            a = arr.reshape(-1, 2, 1 << i)
            a[:, 1, :] -= a[:, 0, :]
        return arr

    def multilinear(self) -> MultilinearPoly:
        arr = self._moebius()
        nz = np.nonzero(arr)[0]
        return MultilinearPoly(self.arity,
                               {int(s): int(arr[s]) for s in nz})

    def degree(self) -> int:
        arr = self._moebius()
        nz = arr != 0
        if not nz.any():
            return 0
        return int(_popcnt(self.arity)[nz].max())

    def decision_tree_depth(self) -> int:
        """Minimum depth of a classical decision tree computing f exactly."""
        if self.arity > DEPTH_MAX_ARITY:
            raise ValueError("decision tree depth supports arity <= %d, got %d"
                             % (DEPTH_MAX_ARITY, self.arity))
        return _depth(self.bits, self.arity)

    # -- isomorphism --------------------------------------------------------

    def npn_canonical(self) -> tuple["TruthTable", NpnTransform]:
        """Lexicographically smallest table over the NPN orbit of f."""
        return _npn_canonical(self)

    def is_and_isomorphic(self) -> bool:
        """True iff f is AND with some inputs/output negated (single 1 or 0)."""
        if self.arity == 0:
            return False
        pc = self.popcount()
        return pc == 1 or pc == self.size - 1

    # -- text ---------------------------------------------------------------

    def to_bin_text(self) -> str:
        return "bin:" + "".join(str(self.value(m)) for m in range(self.size))

    def to_hex_text(self) -> str:
        if self.arity < 2:
            return self.to_bin_text()
        width = self.size // 4
        return "hex:%0*x" % (width, self.bits)


# ---------------------------------------------------------------------------
# decision tree depth with an exact-value search

_depth_memo: dict[tuple[int, int], int] = {}


def _table_degree(bits: int, n: int) -> int:
    arr = _unpack_values(bits, n).astype(np.int64)
    for i in range(n):
        a = arr.reshape(-1, 2, 1 << i)
        a[:, 1, :] -= a[:, 0, :]
    nz = arr != 0
    if not nz.any():
        return 0
    return int(_popcnt(n)[nz].max())


def _depth(bits: int, n: int) -> int:
    full = (1 << (1 << n)) - 1
    if bits == 0 or bits == full:
        return 0
    # odd popcount makes the top polynomial coefficient odd, hence degree n,
    # and no tree can be shallower than the degree
    if bits.bit_count() & 1:
        return n
    key = (n, bits)
    got = _depth_memo.get(key)
    if got is not None:
        return got
    lb = max(1, _table_degree(bits, n))
    best = n  # querying every variable always works
    for p in range(n):
        d0 = _depth(_restrict_bits(bits, n, p, 0), n - 1)
        if 1 + d0 >= best:
            continue
        d1 = _depth(_restrict_bits(bits, n, p, 1), n - 1)
        cand = 1 + max(d0, d1)
        if cand < best:
            best = cand
            if best == lb:
                break
    _depth_memo[key] = best
    return best


# ---------------------------------------------------------------------------
# named families

def symmetric_decision_depth(profile) -> int:
    """Exact decision tree depth for the symmetric function with the given
    weight profile (b_0, ..., b_n).

    Any query maps a symmetric function to the two symmetric functions
    with the prefix and suffix profiles, and by symmetry the choice of
    variable cannot matter, so the optimum satisfies
    d(b) = 1 + max(d(prefix), d(suffix)).
    """
    profile = tuple(profile)
    if any(b not in (0, 1) for b in profile) or not profile:
        raise ValueError("profile must be a nonempty 0/1 vector")
    memo: dict = {}

    def d(win: tuple) -> int:
        if min(win) == max(win):
            return 0
        got = memo.get(win)
        if got is None:
            got = 1 + max(d(win[:-1]), d(win[1:]))
            memo[win] = got
        return got

    return d(profile)


def table_and(n: int) -> TruthTable:
    return TruthTable.from_profile([0] * n + [1])


def table_or(n: int) -> TruthTable:
    return TruthTable.from_profile([0] + [1] * n)


def table_parity(n: int) -> TruthTable:
    return TruthTable.from_profile([w & 1 for w in range(n + 1)])


def table_nae(n: int) -> TruthTable:
    if n < 2:
        raise ValueError("not-all-equal needs arity >= 2")
    return TruthTable.from_profile([0] + [1] * (n - 1) + [0])


def table_exact(n: int, k: int) -> TruthTable:
    if not 0 <= k <= n:
        raise ValueError("exact-k threshold out of range")
    return TruthTable.from_profile([1 if w == k else 0 for w in range(n + 1)])


def table_threshold(n: int, k: int) -> TruthTable:
    if not 1 <= k <= n:
        raise ValueError("threshold out of range")
    return TruthTable.from_profile([1 if w >= k else 0 for w in range(n + 1)])


# ---------------------------------------------------------------------------
# textual function formats

def parse_function(text: str) -> TruthTable:
    """Parse bin:/hex:/profile:/formula: function descriptions."""
    if ":" not in text:
        raise ValueError(
            "function must use one of the prefixes bin:, hex:, profile:, formula:")
    kind, _, body = text.partition(":")
    kind = kind.strip()
    body = body.strip()
    if kind == "bin":
        if not body or any(ch not in "01" for ch in body):
            raise ValueError("bin: expects a string of 0/1 characters")
        n = (len(body) - 1).bit_length()
        if len(body) != 1 << n or len(body) < 2:
            raise ValueError("bin: length must be 2**n for some n >= 1")
        return TruthTable.from_values(int(ch) for ch in body)
    if kind == "hex":
        try:
            bits = int(body, 16)
        except ValueError:
            raise ValueError("hex: expects hexadecimal digits") from None
        nbits = 4 * len(body)
        n = (nbits - 1).bit_length()
        if nbits != 1 << n:
            raise ValueError("hex: digit count must be a power of two")
        return TruthTable(n, bits)
    if kind == "profile":
        parts = [p.strip() for p in body.split(",")]
        if not all(p in ("0", "1") for p in parts):
            raise ValueError("profile: expects comma-separated 0/1 entries")
        return TruthTable.from_profile(int(p) for p in parts)
    if kind == "formula":
        from . import formula
        return formula.to_table(formula.parse_formula(body))
    raise ValueError("unknown function format %r" % kind)
