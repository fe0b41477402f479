"""Independent brute-force oracles used to pin expected values.

Everything here recomputes results from first principles (enumeration,
exhaustive search, direct matrix products) and deliberately avoids the
library's decode tables, packed fast paths and sampling helpers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, product

import numpy as np


def all_codewords_matrix(G: np.ndarray) -> np.ndarray:
    """All 2^k codewords as an (2^k, n) uint8 matrix, message order."""
    n, k = G.shape
    msgs = np.arange(1 << k, dtype=np.uint32)
    bits = ((msgs[:, None] >> np.arange(k, dtype=np.uint32)) & 1).astype(np.uint8)
    return (bits @ G.T.astype(np.int64) & 1).astype(np.uint8)


def pack_rows(M: np.ndarray) -> np.ndarray:
    """Pack each row of a 0/1 matrix into a uint64 (column i -> bit i)."""
    weights = np.uint64(1) << np.arange(M.shape[1], dtype=np.uint64)
    return (M.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)


def nearest_codeword(codewords_packed: np.ndarray, word_packed: int, t: int):
    """Bounded-distance decode by scanning every codeword.

    Returns (codeword_packed, distance) for the closest codeword when its
    distance is at most t, else None. Assumes the minimum within radius t
    is unique (true whenever the code's distance exceeds 2t).
    """
    dists = np.bitwise_count(codewords_packed ^ np.uint64(word_packed))
    idx = int(dists.argmin())
    if int(dists[idx]) <= t:
        return int(codewords_packed[idx]), int(dists[idx])
    return None


def min_distance_exhaustive(G: np.ndarray) -> int:
    """Minimum nonzero codeword weight by scanning every message."""
    cw = all_codewords_matrix(G)
    return int(cw[1:].sum(axis=1).min())


def exhaustive_rv_distance_mean(w: str, w_prime: str, n: int) -> Fraction:
    """Exact mean RV distance over every index vector in [k*]^n.

    Pure-python string indexing; independent of the sampling code.
    """
    k_star = len(w)
    total = 0
    count = 0
    for N in product(range(1, k_star + 1), repeat=n):
        d = sum(1 for i in N if w[i - 1] != w_prime[i - 1])
        total += d
        count += 1
    return Fraction(total, count)


def exhaustive_position_disagreement(w: str, w_prime: str, n: int, pos: int) -> Fraction:
    """Exact P(output position pos differs) over every index vector."""
    k_star = len(w)
    hits = 0
    count = 0
    for N in product(range(1, k_star + 1), repeat=n):
        hits += w[N[pos - 1] - 1] != w_prime[N[pos - 1] - 1]
        count += 1
    return Fraction(hits, count)


def min_n_direct_search(delta: int, eps: float, start: int = 1) -> int:
    """Smallest n with exp(-2 n eps^2) <= 2^-delta, by scanning upward."""
    n = start
    while math.exp(-2.0 * n * eps * eps) > 2.0 ** (-delta):
        n += 1
    return n


def first_accepting_candidate(sk, w_prime, weight, inner, outer):
    """Re-run one weight class of the recovery loop through the public API.

    Uses sample_bits/decode/invert_message and plain python slicing only;
    returns (rank, recovered_bitstring) or None. Independent of the
    recover module's scanning machinery.
    """
    from rvsketch import (BitString, decode, invert_message, sample_bits,
                          zero_pad_prefix)

    p = sk.params
    prefix_len = p.k - p.n_star
    rank = 0
    for supp in combinations(range(p.k_star), weight):
        bits = w_prime.bits.copy()
        for j in supp:
            bits[j] ^= 1
        we = BitString(bits)
        phi = sample_bits(we, sk.N)
        c = decode(outer, sk.ss ^ phi)
        if c is not None:
            v_star = invert_message(outer, c)
            if v_star.prefix(prefix_len).weight == 0:
                v_syn = v_star.suffix(p.n_star)
                c_star = decode(inner, v_syn ^ zero_pad_prefix(we, p.n_star - p.k_star))
                if c_star is not None:
                    return rank, invert_message(inner, c_star)
        rank += 1
    return None
