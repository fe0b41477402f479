"""How index-driven bit sampling stretches a word while preserving its
normalized hamming distance.

Two 16-bit words at distance 4 are sampled at 512 public random positions.
Each sampled position disagrees with probability 4/16, so the expected
distance between the two 512-bit resilient vectors is 512 * 4/16 = 128.
We check the law empirically and then watch both concentration tails
collapse under the exp(-2 n eps^2) envelope.
"""

from fractions import Fraction

from rvsketch import (BitString, SeededRng, empirical_rv_distance,
                      exceedance_frequencies, expected_rv_distance,
                      gen_index_vector, sample_bits, similarity)

rng = SeededRng(2024)

w = rng.random_bits(16)
flips = rng.subset(16, 4)
wp_bits = w.bits.copy()
wp_bits[flips] ^= 1
w_prime = BitString(wp_bits)

print(f"w        = {w}")
print(f"w'       = {w_prime}")
print(f"similarity(w, w') = {similarity(w, w_prime)}  (collision rate per position)")

N = gen_index_vector(16, 512, rng)
phi = sample_bits(w, N)
phi_prime = sample_bits(w_prime, N)
observed = sum(a != b for a, b in zip(phi.bits, phi_prime.bits))
print(f"\none sampled pair: ||phi xor phi'|| = {observed}")
print(f"exact expectation over index vectors = "
      f"{expected_rv_distance(w, w_prime, 512)}")

mean, std = empirical_rv_distance(w, w_prime, 512, 20_000, SeededRng(7))
print(f"20k fresh index vectors: mean = {mean:.3f}, stddev = {std:.3f}")

print("\nconcentration tails at xi = 1/4, eps = 1/8:")
for n in (128, 512):
    r = exceedance_frequencies(16, n, Fraction(1, 4), Fraction(1, 8),
                               50_000, SeededRng(11))
    print(f"  n = {n:4d}: P(similar | far) = {r.similar_given_far:.2e},  "
          f"P(distant | near) = {r.distant_given_near:.2e},  "
          f"envelope = {r.bound:.2e}")
