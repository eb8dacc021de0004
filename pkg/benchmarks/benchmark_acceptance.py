"""Runtime benchmarks for infotheory-epi.

Targets:
- Doubled-inequality fuzz, 10,000 pairs: < 30s
- Truncated Gaussian machinery on the sigma grid: < 10s
- Cited families up to n = 30: < 5s
"""

from __future__ import annotations

import time
from collections.abc import Callable

from infotheory.epi.harness import run_fuzz, run_lemma4_checks, run_special_cases


def timed(func: Callable[[], object]) -> tuple[float, object]:
    """Run func once and return (elapsed seconds, result)."""
    start = time.perf_counter()
    result = func()
    return time.perf_counter() - start, result


def report(label: str, elapsed: float, target: float, passed: bool) -> None:
    status = "PASS" if elapsed < target and passed else "FAIL"
    checks = "ok" if passed else "FAILED"
    print(f"  {label}: {elapsed:.2f}s (target: <{target:g}s, checks {checks}) [{status}]")


def main() -> None:
    """Run benchmarks and report results."""
    print("infotheory-epi Runtime Benchmarks")
    print("=" * 50)
    print()

    print("Benchmark 1: Doubled inequality on 10,000 seeded pairs")
    elapsed, fuzz = timed(lambda: run_fuzz(10_000, (1, 8), seed=0))
    report("Fuzz", elapsed, 30.0, fuzz.passed)
    print(f"  min slack {fuzz.min_slack:.3e}, singleton draws {fuzz.singleton_draws}")
    print()

    print("Benchmark 2: Truncated Gaussian machinery, alpha_z = 1")
    elapsed, summaries = timed(lambda: run_lemma4_checks(1.0))
    report("Lemma 4 checks", elapsed, 10.0, all(s.passed for s in summaries))
    for s in summaries:
        print(f"    {s.name:<20} cases={s.cases:<4} worst={s.worst:+.3e}")
    print()

    print("Benchmark 3: Binomial and integer-uniform families, n <= 30")
    elapsed, families = timed(lambda: run_special_cases(30))
    report("Families", elapsed, 5.0, families.passed)
    print(f"  rows {len(families.rows)}")


if __name__ == "__main__":
    main()
