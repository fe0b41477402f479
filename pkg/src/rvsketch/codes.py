"""Binary linear codes: BCH and random-generator constructions.

Every code carries a generator matrix G (n x k), a parity-check matrix H
((n-k) x n) derived from it, and a precomputed left inverse of G for
message recovery. Codes with t >= 1 get a coset-leader syndrome table at
construction and decode by table lookup; t = 0 codes decode by exact
membership. Codewords are BitStrings of length n; position i of a word is
coefficient x^(i-1) in the polynomial view used by the BCH construction.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Dict, Optional

import numpy as np

from .bitcore import (BitString, CapacityError, DimensionError,
                      ParameterError, SeededRng)


class InversionError(ValueError):
    """Message inversion was asked for a word that is not a codeword."""


# ---------------------------------------------------------------------------
# GF(2) dense matrix helpers (uint8 arrays, XOR row ops)

def gf2_rref(M: np.ndarray, augment: int = 0):
    """Reduced row echelon form over GF(2).

    Pivots are searched in all but the last `augment` columns; row
    operations apply to the full width. Returns (R, pivot_cols).
    """
    R = (np.asarray(M, dtype=np.uint8) & 1).copy()
    rows, cols = R.shape
    pivot_cols = []
    r = 0
    for c in range(cols - augment):
        hit = np.nonzero(R[r:, c])[0]
        if hit.size == 0:
            continue
        p = r + hit[0]
        if p != r:
            R[[r, p]] = R[[p, r]]
        others = np.nonzero(R[:, c])[0]
        for o in others:
            if o != r:
                R[o] ^= R[r]
        pivot_cols.append(c)
        r += 1
        if r == rows:
            break
    return R, pivot_cols


def gf2_rank(M: np.ndarray) -> int:
    _, pivots = gf2_rref(M)
    return len(pivots)


def gf2_nullspace(A: np.ndarray) -> np.ndarray:
    """Basis of {x : A x = 0} over GF(2), one vector per row."""
    A = np.asarray(A, dtype=np.uint8)
    _, n = A.shape
    R, pivots = gf2_rref(A)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for idx, f in enumerate(free):
        basis[idx, f] = 1
        for r, p in enumerate(pivots):
            basis[idx, p] = R[r, f]
    return basis


def gf2_left_inverse(G: np.ndarray) -> np.ndarray:
    """L with L G = I_k for a full-column-rank n x k matrix G."""
    n, k = G.shape
    aug = np.concatenate([G.T, np.eye(k, dtype=np.uint8)], axis=1)
    R, pivots = gf2_rref(aug, augment=k)
    if len(pivots) != k:
        raise ParameterError("generator matrix is rank deficient")
    L = np.zeros((k, n), dtype=np.uint8)
    for r, p in enumerate(pivots):
        L[:, p] = R[r, n:]
    return L


def _pack_cols(M: np.ndarray) -> np.ndarray:
    """Pack each column of a 0/1 matrix into a uint64 (row i -> bit i)."""
    rows, cols = M.shape
    if rows > 64:
        raise CapacityError("packed columns limited to 64 rows")
    weights = (np.uint64(1) << np.arange(rows, dtype=np.uint64))
    return (M.astype(np.uint64).T * weights).sum(axis=1, dtype=np.uint64)


# ---------------------------------------------------------------------------
# Polynomial arithmetic over GF(2), ints as coefficient masks (bit i = x^i)

def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _polymod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


# Primitive polynomials for the supported extension fields.
_PRIMITIVE_POLY = {3: 0b1011, 4: 0b10011, 5: 0b100101, 6: 0b1000011}


def _gf_tables(m: int):
    size = 1 << m
    poly = _PRIMITIVE_POLY[m]
    exp = [0] * (size - 1)
    log = [0] * size
    x = 1
    for i in range(size - 1):
        exp[i] = x
        log[x] = i
        x <<= 1
        if x & size:
            x ^= poly
    return exp, log


def _cyclotomic_coset(i: int, n: int) -> frozenset:
    out = set()
    j = i % n
    while j not in out:
        out.add(j)
        j = (2 * j) % n
    return frozenset(out)


def _minimal_poly(coset, m: int, exp, log) -> int:
    """Product of (x + alpha^j) over the coset; coefficients land in GF(2)."""
    n = (1 << m) - 1

    def mul(a, b):
        if a == 0 or b == 0:
            return 0
        return exp[(log[a] + log[b]) % n]

    coeffs = [1]
    for j in sorted(coset):
        root = exp[j % n]
        nxt = [0] * (len(coeffs) + 1)
        for p, c in enumerate(coeffs):
            if c:
                nxt[p + 1] ^= c
                nxt[p] ^= mul(c, root)
        coeffs = nxt
    mask = 0
    for p, c in enumerate(coeffs):
        if c not in (0, 1):
            raise AssertionError("minimal polynomial left the base field")
        if c:
            mask |= 1 << p
    return mask


# ---------------------------------------------------------------------------

_TABLE_PATTERN_CAP = 2_000_000


class LinearCode:
    """[n, k] binary linear code with bounded-distance syndrome decoding.

    t is the decoding radius honored by `decode`; the coset-leader table is
    built up to that radius at construction. d (true minimum distance) is
    computed lazily on request.
    """

    def __init__(self, G: np.ndarray, t: int, kind: str, param: Optional[int] = None):
        G = np.ascontiguousarray(np.asarray(G, dtype=np.uint8) & 1)
        n, k = G.shape
        if k > n:
            raise ParameterError(f"dimension k={k} exceeds blocklength n={n}")
        if t < 0:
            raise ParameterError("decoding radius must be non-negative")
        self.G = G
        self.n = n
        self.k = k
        self.t = t
        self.kind = kind
        self.param = param
        self._d: Optional[int] = None
        self.H = gf2_nullspace(G.T) if k < n else np.zeros((0, n), dtype=np.uint8)
        if gf2_rank(G) != k:
            raise ParameterError("generator matrix is rank deficient")
        self._L = gf2_left_inverse(G)
        # Packed parity columns drive the int-keyed syndrome fast path;
        # codes with more than 64 check bits fall back to the matrix product.
        if self.H.shape[0] <= 64:
            self._h_cols = _pack_cols(self.H) if self.H.shape[0] else np.zeros(
                n, dtype=np.uint64)
        else:
            self._h_cols = None
        self.G.flags.writeable = False
        self.H.flags.writeable = False
        self._table: Dict[int, np.ndarray] = {}
        if t > 0:
            self._build_table()

    # -- construction internals ------------------------------------------

    def _build_table(self):
        n, r, t = self.n, self.n - self.k, self.t
        if r > 24:
            raise CapacityError(
                f"coset-leader table needs n-k <= 24, got {r}")
        total = sum(math.comb(n, w) for w in range(t + 1))
        if total > _TABLE_PATTERN_CAP:
            raise CapacityError(
                f"{total} correctable patterns exceed the table cap")
        cols = [int(c) for c in self._h_cols]
        table: Dict[int, np.ndarray] = {}
        for w in range(t + 1):
            for supp in combinations(range(n), w):
                s = 0
                for j in supp:
                    s ^= cols[j]
                if s in table:
                    raise ParameterError(
                        f"radius {t} exceeds the code's packing: syndrome collision")
                leader = np.zeros(n, dtype=np.uint8)
                leader[list(supp)] = 1
                leader.flags.writeable = False
                table[s] = leader
        self._table = table

    # -- array-level fast paths (used by the recovery loop) ---------------

    def _syndrome_int(self, word_bits: np.ndarray) -> int:
        if self.H.shape[0] == 0:
            return 0
        sel = self._h_cols[word_bits.view(np.bool_)]
        if sel.size == 0:
            return 0
        return int(np.bitwise_xor.reduce(sel))

    def _is_codeword_bits(self, word_bits: np.ndarray) -> bool:
        if self._h_cols is not None:
            return self._syndrome_int(word_bits) == 0
        return not ((self.H @ word_bits.astype(np.int64)) & 1).any()

    def _decode_bits(self, word_bits: np.ndarray) -> Optional[np.ndarray]:
        if self.t == 0:
            return word_bits if self._is_codeword_bits(word_bits) else None
        s = self._syndrome_int(word_bits)
        if s == 0:
            return word_bits
        leader = self._table.get(s)
        if leader is None:
            return None
        return word_bits ^ leader

    def _invert_bits(self, codeword_bits: np.ndarray) -> np.ndarray:
        return ((self._L @ codeword_bits.astype(np.int64)) & 1).astype(np.uint8)

    # -- misc --------------------------------------------------------------

    @property
    def d(self) -> Optional[int]:
        """True minimum distance if already computed (see min_distance_bruteforce)."""
        return self._d

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (self.t == other.t and self.kind == other.kind
                and np.array_equal(self.G, other.G))

    def __repr__(self) -> str:
        return f"LinearCode[{self.n},{self.k},t={self.t}]({self.kind})"


# ---------------------------------------------------------------------------
# Constructions

def bch_code(m_prime: int, t: int) -> LinearCode:
    """Narrow-sense binary BCH code of blocklength 2^m' - 1.

    The generator polynomial is the product of the distinct minimal
    polynomials of alpha^1..alpha^2t, so n - k <= m'*t and the design
    distance is at least 2t + 1. Supported m' are 3..6; the coset-leader
    decoder caps the useful range anyway.
    """
    if m_prime not in _PRIMITIVE_POLY:
        raise ParameterError(
            f"m_prime must be one of {sorted(_PRIMITIVE_POLY)}, got {m_prime}")
    if not 1 <= t < 2 ** (m_prime - 1):
        raise ParameterError(
            f"need 1 <= t < 2^(m_prime-1) = {2 ** (m_prime - 1)}, got {t}")
    n = (1 << m_prime) - 1
    exp, log = _gf_tables(m_prime)
    seen = set()
    g = 1
    for i in range(1, 2 * t + 1):
        coset = _cyclotomic_coset(i, n)
        if coset in seen:
            continue
        seen.add(coset)
        g = _clmul(g, _minimal_poly(coset, m_prime, exp, log))
    k = n - (g.bit_length() - 1)
    if k < 1:
        raise ParameterError("generator polynomial consumed the whole blocklength")

    # Systematic encoding: message occupies the high coefficients,
    # parity = (x^(n-k) m(x)) mod g(x) fills the low ones.
    shift = n - k
    G = np.zeros((n, k), dtype=np.uint8)
    for j in range(k):
        poly = (1 << (shift + j)) ^ _polymod(1 << (shift + j), g)
        for i in range(n):
            G[i, j] = (poly >> i) & 1
    return LinearCode(G, t, kind="bch", param=m_prime)


def random_linear_code(n: int, k: int, rng: SeededRng) -> LinearCode:
    """Uniform full-rank n x k generator matrix, decoding radius 0."""
    if not 1 <= k <= n:
        raise ParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
    while True:
        G = rng.integers(0, 2, size=(n, k), dtype=np.uint8)
        if gf2_rank(G) == k:
            return LinearCode(G, t=0, kind="random", param=rng.seed)


def code_from_spec(spec: str, rng: SeededRng) -> LinearCode:
    """Parse "m:t" / "bch:m:t" / "random:n:k" into a code."""
    parts = spec.strip().split(":")
    try:
        if parts[0] == "random" and len(parts) == 3:
            return random_linear_code(int(parts[1]), int(parts[2]), rng)
        if parts[0] == "bch" and len(parts) == 3:
            return bch_code(int(parts[1]), int(parts[2]))
        if len(parts) == 2:
            return bch_code(int(parts[0]), int(parts[1]))
    except ValueError as exc:
        raise ParameterError(f"bad code spec {spec!r}: {exc}") from exc
    raise ParameterError(f"bad code spec {spec!r}")


# ---------------------------------------------------------------------------
# Operations

def encode(code: LinearCode, msg: BitString) -> BitString:
    """G * msg over GF(2)."""
    if len(msg) != code.k:
        raise DimensionError(f"message length {len(msg)} != k = {code.k}")
    out = (code.G @ msg.bits.astype(np.int64)) & 1
    return BitString._wrap(out.astype(np.uint8))


def syndrome(code: LinearCode, word: BitString) -> BitString:
    """H * word over GF(2); all-zeros exactly for codewords."""
    if len(word) != code.n:
        raise DimensionError(f"word length {len(word)} != n = {code.n}")
    out = (code.H @ word.bits.astype(np.int64)) & 1
    return BitString._wrap(out.astype(np.uint8))


def decode(code: LinearCode, word: BitString) -> Optional[BitString]:
    """Unique codeword within distance t, or None if there is none.

    For t = 0 codes this is an exact membership test.
    """
    if len(word) != code.n:
        raise DimensionError(f"word length {len(word)} != n = {code.n}")
    out = code._decode_bits(word.bits)
    if out is None:
        return None
    return BitString._wrap(np.ascontiguousarray(out, dtype=np.uint8))


def invert_message(code: LinearCode, codeword: BitString) -> BitString:
    """The unique msg with encode(code, msg) == codeword."""
    if len(codeword) != code.n:
        raise DimensionError(f"word length {len(codeword)} != n = {code.n}")
    if not code._is_codeword_bits(codeword.bits):
        raise InversionError("input is not a codeword")
    out = code._invert_bits(codeword.bits)
    return BitString._wrap(out.astype(np.uint8))


def codewords_packed(code: LinearCode) -> np.ndarray:
    """All 2^k codewords as packed uint64 words, Gray-code order (guard k <= 20)."""
    if code.k > 20:
        raise CapacityError(f"codeword enumeration guarded at k <= 20, got {code.k}")
    if code.n > 64:
        raise CapacityError("packed enumeration limited to n <= 64")
    g_cols = _pack_cols(code.G)
    out = np.zeros(1 << code.k, dtype=np.uint64)
    v = np.uint64(0)
    for i in range(1, 1 << code.k):
        v = v ^ g_cols[(i & -i).bit_length() - 1]
        out[i] = v
    return out


def min_distance_bruteforce(code: LinearCode) -> int:
    """Exact minimum distance by enumerating all nonzero codewords."""
    words = codewords_packed(code)
    d = int(np.bitwise_count(words[1:]).min())
    code._d = d
    return d


# ---------------------------------------------------------------------------
# Serialization: header plus a row-major hex dump of G. H, the left inverse
# and the decode table are reconstructed on load.

def code_to_text(code: LinearCode) -> str:
    g_hex = np.packbits(code.G.reshape(-1), bitorder="little").tobytes().hex()
    param = "-" if code.param is None else str(code.param)
    return "\n".join([
        "linear-code v1",
        f"kind: {code.kind}",
        f"n: {code.n}",
        f"k: {code.k}",
        f"t: {code.t}",
        f"param: {param}",
        f"G: {g_hex}",
    ]) + "\n"


def code_from_text(text: str) -> LinearCode:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    if not lines or lines[0] != "linear-code v1":
        raise ParameterError("unrecognized code serialization header")
    fields = {}
    for ln in lines[1:]:
        key, _, val = ln.partition(":")
        fields[key.strip()] = val.strip()
    try:
        kind = fields["kind"]
        n, k, t = int(fields["n"]), int(fields["k"]), int(fields["t"])
        param = None if fields["param"] == "-" else int(fields["param"])
        raw = bytes.fromhex(fields["G"])
    except (KeyError, ValueError) as exc:
        raise ParameterError(f"bad code serialization: {exc}") from exc
    if len(raw) != (n * k + 7) // 8:
        raise ParameterError("G hex dump has the wrong length")
    flat = np.unpackbits(np.frombuffer(raw, dtype=np.uint8),
                         count=n * k, bitorder="little")
    return LinearCode(flat.reshape(n, k), t=t, kind=kind, param=param)
