"""Seeded Monte-Carlo experiments with CSV output.

Four kinds:

  lsh          sampled RV distance against the exact expectation n*d/k*
  correctness  sketch/recover round-trips against the 1 - 2^-(k-n*) floor
  false_accept decoy recovery iterations against the 2^-(k-n*) prefix rate
  complexity   exhausted-enumeration iteration counts against C(k*, m)

Per-trial seeds are derived as seed xor trial_index (trial indices are
global within one experiment; the base seed is whitened through a fixed
64-bit mix first), so execution order cannot change any row and rerunning
a config reproduces its CSV byte-for-byte.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np
from scipy.stats import binomtest

from .analysis import binary_entropy, false_accept_rate
from .bitcore import BitString, ParameterError, SeededRng
from .codes import code_from_spec, random_linear_code
from .lsh import gen_index_vector
from .recover import recover_fixed, recover_sweep
from .sketch import SketchParams, as_fraction, make_sketch

CSV_SCHEMA = "rvsketch-experiment-csv v1"

_KINDS = ("lsh", "correctness", "false_accept", "complexity")

_MASK64 = (1 << 64) - 1


def _mix64(x: int) -> int:
    # splitmix64 finalizer: bijective, so distinct derived seeds stay
    # distinct while nearby base seeds decorrelate
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def _trial_rng(seed: int, trial: int) -> SeededRng:
    """Generator for one trial: whitened base seed xor trial_index.

    Whitening first keeps nearby user seeds from sharing trial-seed sets
    (small seeds xor small trial indices otherwise permute one another).
    """
    return SeededRng(_mix64(seed & _MASK64) ^ trial)


@dataclass
class ExperimentConfig:
    kind: str
    trials: int = 0          # 0 selects the kind's default
    seed: int = 1
    out: Optional[Union[str, Path]] = None
    # lsh
    k_star: int = 16
    distance: int = 4
    n: int = 512
    # correctness
    inner_spec: str = "bch:4:2"
    outer_spec: str = "bch:5:3"
    eps_ss: Union[str, Fraction] = Fraction(1, 14)
    w_prime_distance: int = 1
    # false_accept
    deltas: Sequence[int] = (1, 3, 6)
    min_iterations: int = 10_000
    decoy_weight: int = 3
    # complexity
    grid_k: Sequence[int] = (8, 12, 16)
    grid_eps: Sequence[Union[str, Fraction]] = ("1/8", "1/4", "1/2")

    def resolved_trials(self) -> int:
        if self.trials:
            return self.trials
        return {"lsh": 10_000, "correctness": 1_000,
                "false_accept": 0, "complexity": 3}[self.kind]

    def validate(self):
        if self.kind not in _KINDS:
            raise ParameterError(f"unknown experiment kind {self.kind!r}")
        if self.trials < 0:
            raise ParameterError("trials must be >= 1 (or 0 for the default)")
        if self.kind != "false_accept" and self.resolved_trials() < 1:
            raise ParameterError("trials must be >= 1")
        if self.kind == "false_accept" and self.min_iterations < 1:
            raise ParameterError("min_iterations must be >= 1")


def _config_comment(cfg: ExperimentConfig, extra: str = "") -> List[str]:
    base = (f"kind={cfg.kind} seed={cfg.seed} trials={cfg.resolved_trials()}")
    return [base + (" " + extra if extra else "")]


def _write_csv(path, comments: List[str], header: List[str], rows: List[list]):
    path = Path(path)
    with path.open("w", newline="") as f:
        f.write(f"# {CSV_SCHEMA}\n")
        for line in comments:
            f.write(f"# {line}\n")
        writer = csv.writer(f)
        writer.writerow(header)
        writer.writerows(rows)


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LshResult:
    trials: int
    mean: float
    expected: float
    tolerance: float   # 3 sigma / sqrt(trials), sigma^2 = n p (1-p)
    passed: bool


def run_lsh_experiment(cfg: ExperimentConfig) -> LshResult:
    trials = cfg.resolved_trials()
    k_star, d, n = cfg.k_star, cfg.distance, cfg.n
    if not 0 <= d <= k_star:
        raise ParameterError("distance must lie in [0, k_star]")
    diff = np.zeros(k_star, dtype=np.uint8)
    diff[:d] = 1
    samples = np.empty(trials, dtype=np.int64)
    for t in range(trials):
        rng = _trial_rng(cfg.seed, t)
        draws = rng.integers(0, k_star, size=n, dtype=np.uint32)
        samples[t] = int(diff[draws].sum())
    p = d / k_star
    expected = n * p
    sigma = math.sqrt(n * p * (1.0 - p))
    tolerance = 3.0 * sigma / math.sqrt(trials)
    mean = float(samples.mean())
    result = LshResult(trials=trials, mean=mean, expected=expected,
                       tolerance=tolerance, passed=abs(mean - expected) <= tolerance)
    if cfg.out:
        rows = [[t, int(s), "", "", "", ""] for t, s in enumerate(samples)]
        rows.append(["summary", "", f"{mean:.6f}", f"{expected:.6f}",
                     f"{tolerance:.6f}", int(result.passed)])
        _write_csv(cfg.out, _config_comment(
            cfg, f"k_star={k_star} distance={d} n={n}"),
            ["trial", "rv_distance", "mean", "expected", "tolerance", "passed"],
            rows)
    return result


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CorrectnessResult:
    trials: int
    successes: int
    rate: float
    floor: float             # 1 - 2^-(k-n*)
    pvalue_below: float      # one-sided binomial: evidence the rate < floor
    passed: bool


def run_correctness_experiment(cfg: ExperimentConfig) -> CorrectnessResult:
    trials = cfg.resolved_trials()
    eps_ss = as_fraction(cfg.eps_ss)
    base = SeededRng(cfg.seed)
    inner = code_from_spec(cfg.inner_spec, base.spawn(101))
    outer = code_from_spec(cfg.outer_spec, base.spawn(102))
    params = SketchParams.from_codes(inner, outer, eps_ss)
    delta = params.k - params.n_star
    floor = 1.0 - float(false_accept_rate(params.k, params.n_star))

    rows = []
    successes = 0
    for t in range(trials):
        rng = _trial_rng(cfg.seed, t)
        w = rng.spawn(1).random_bits(params.k_star)
        N = gen_index_vector(params.k_star, params.n, rng.spawn(2))
        sk = make_sketch(w, N, eps_ss, params, rng.spawn(3))
        flip = rng.spawn(4).subset(params.k_star, cfg.w_prime_distance)
        wp_bits = w.bits.copy()
        wp_bits[flip] ^= 1
        report = recover_sweep(sk, BitString(wp_bits), inner, outer)
        ok = report.outcome == w
        successes += ok
        rows.append([t, int(ok), report.iterations_used,
                     "" if report.accepted_weight is None else report.accepted_weight,
                     report.false_accepts_observed, "", "", "", ""])

    rate = successes / trials
    pvalue_below = binomtest(successes, trials, floor, alternative="less").pvalue
    passed = rate >= floor or pvalue_below > 0.01
    result = CorrectnessResult(trials=trials, successes=successes, rate=rate,
                               floor=floor, pvalue_below=pvalue_below, passed=passed)
    if cfg.out:
        rows.append(["summary", successes, "", "", "", f"{rate:.6f}",
                     f"{floor:.6f}", f"{pvalue_below:.6g}", int(passed)])
        _write_csv(cfg.out, _config_comment(
            cfg, f"inner={cfg.inner_spec} outer={cfg.outer_spec} "
                 f"eps_ss={eps_ss} w_prime_distance={cfg.w_prime_distance} "
                 f"k_minus_n_star={delta}"),
            ["trial", "success", "iterations", "accepted_weight",
             "false_accepts", "rate", "floor", "pvalue_below", "passed"],
            rows)
    return result


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FalseAcceptResult:
    delta: int
    iterations: int
    prefix_accepts: int
    rate: float
    expected: float          # 2^-delta
    passed: bool             # within a factor of two of expected


def run_false_accept_experiment(cfg: ExperimentConfig) -> List[FalseAcceptResult]:
    """Decoy recoveries against fresh random codes, one section per delta.

    The outer code is square (k = n), so the first decode always returns and
    every iteration exercises the zero-prefix test. The probe string sits at
    maximum distance from the sketched secret, so acceptances are decoys.
    """
    k_star, n_star = 8, 10
    eps_ss = Fraction(1, 2 * k_star)
    results = []
    rows = []
    trial = 0  # global row index across deltas, used for seed derivation
    for delta in cfg.deltas:
        n = n_star + delta
        total_iters = 0
        accepts = 0
        batch = 0
        while total_iters < cfg.min_iterations:
            rng = _trial_rng(cfg.seed, trial)
            inner = random_linear_code(n_star, k_star, rng.spawn(1))
            outer = random_linear_code(n, n, rng.spawn(2))
            params = SketchParams.from_codes(inner, outer, eps_ss)
            w = rng.spawn(3).random_bits(k_star)
            N = gen_index_vector(k_star, n, rng.spawn(4))
            sk = make_sketch(w, N, eps_ss, params, rng.spawn(5))
            w_far = BitString(1 - w.bits)
            report = recover_fixed(sk, w_far, Fraction(cfg.decoy_weight, k_star),
                                   inner, outer)
            events = report.false_accepts_observed + (1 if report.succeeded else 0)
            total_iters += report.iterations_used
            accepts += events
            rows.append([delta, batch, report.iterations_used, events,
                         "", "", ""])
            trial += 1
            batch += 1
        rate = accepts / total_iters
        expected = float(false_accept_rate(n, n_star))
        passed = expected / 2 <= rate <= expected * 2
        results.append(FalseAcceptResult(delta=delta, iterations=total_iters,
                                         prefix_accepts=accepts, rate=rate,
                                         expected=expected, passed=passed))
        rows.append([delta, "summary", total_iters, accepts,
                     f"{rate:.6f}", f"{expected:.6f}", int(passed)])
    if cfg.out:
        _write_csv(cfg.out, _config_comment(
            cfg, f"k_star={k_star} n_star={n_star} deltas={list(cfg.deltas)} "
                 f"decoy_weight={cfg.decoy_weight} min_iterations={cfg.min_iterations}"),
            ["delta", "batch", "iterations", "prefix_accepts",
             "rate", "expected", "passed"],
            rows)
    return results


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComplexityCell:
    k_star: int
    eps_rec: Fraction
    weight: int
    iterations_max: int
    expected: int            # C(k*, weight), exact
    entropy_bound: float     # 2^(k* h2(eps_rec))
    passed: bool


def run_complexity_experiment(cfg: ExperimentConfig) -> List[ComplexityCell]:
    """Exhaust the enumeration on unrecoverable probes and count iterations.

    Codes are sized so that stray completions are out of reach (outer
    membership rate 2^-16), making the full C(k*, m) sweep observable.
    """
    repeats = cfg.resolved_trials()
    cells = []
    rows = []
    trial = 0
    for k_star in cfg.grid_k:
        for eps in cfg.grid_eps:
            eps = as_fraction(eps)
            weight = int(k_star * eps)
            expected = math.comb(k_star, weight)
            bound = 2.0 ** (k_star * binary_entropy(eps))
            worst = 0
            for r in range(repeats):
                rng = _trial_rng(cfg.seed, trial)
                inner = random_linear_code(k_star + 8, k_star, rng.spawn(1))
                outer = random_linear_code(k_star + 28, k_star + 12, rng.spawn(2))
                params = SketchParams.from_codes(
                    inner, outer, Fraction(1, 2 * k_star))
                w = rng.spawn(3).random_bits(k_star)
                N = gen_index_vector(k_star, params.n, rng.spawn(4))
                sk = make_sketch(w, N, params.eps_ss, params, rng.spawn(5))
                w_far = BitString(1 - w.bits)
                report = recover_fixed(sk, w_far, eps, inner, outer)
                worst = max(worst, report.iterations_used)
                rows.append([k_star, str(eps), weight, r,
                             report.iterations_used, expected,
                             f"{bound:.3f}", ""])
                trial += 1
            passed = (worst == expected) and (expected <= bound)
            cells.append(ComplexityCell(k_star=k_star, eps_rec=eps, weight=weight,
                                        iterations_max=worst, expected=expected,
                                        entropy_bound=bound, passed=passed))
            rows.append([k_star, str(eps), weight, "summary", worst,
                         expected, f"{bound:.3f}", int(passed)])
    if cfg.out:
        _write_csv(cfg.out, _config_comment(
            cfg, f"grid_k={list(cfg.grid_k)} grid_eps={[str(e) for e in cfg.grid_eps]}"),
            ["k_star", "eps_rec", "weight", "trial", "iterations",
             "expected", "entropy_bound", "passed"],
            rows)
    return cells


# ---------------------------------------------------------------------------

def run_experiment(cfg: ExperimentConfig):
    cfg.validate()
    runner = {
        "lsh": run_lsh_experiment,
        "correctness": run_correctness_experiment,
        "false_accept": run_false_accept_experiment,
        "complexity": run_complexity_experiment,
    }[cfg.kind]
    return runner(cfg)
