"""Freezes reference values for the two-sample tests.

Generates 20 seeded sample pairs and evaluates them with scipy, which acts as
the independent reference for the C++ Welch t-test and F-test. Output goes to
tests/data/stats_reference.json; the C++ tests read the samples and the
expected statistic / df / p-value from there.

    python3 tests/oracles/gen_stats_reference.py
"""

import json
import pathlib

import numpy as np
from scipy import stats

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "stats_reference.json"


def welch_df(a, b):
    va = np.var(a, ddof=1) / len(a)
    vb = np.var(b, ddof=1) / len(b)
    return (va + vb) ** 2 / (va**2 / (len(a) - 1) + vb**2 / (len(b) - 1))


def main():
    cases = []
    for seed in range(20):
        rng = np.random.default_rng(1000 + seed)
        na = int(rng.integers(5, 300))
        nb = int(rng.integers(5, 450))
        # Density-like magnitudes: means in the hundreds to low thousands.
        mean_a = float(rng.uniform(500, 1500))
        mean_b = mean_a + float(rng.normal(0, 150))
        sd_a = float(rng.uniform(80, 250))
        sd_b = float(rng.uniform(80, 500))
        a = rng.normal(mean_a, sd_a, na).tolist()
        b = rng.normal(mean_b, sd_b, nb).tolist()

        t = stats.ttest_ind(a, b, equal_var=False)
        f_stat = float(np.var(a, ddof=1) / np.var(b, ddof=1))
        dfn, dfd = na - 1, nb - 1
        f_p = float(min(1.0, 2.0 * min(stats.f.cdf(f_stat, dfn, dfd), stats.f.sf(f_stat, dfn, dfd))))
        cases.append(
            {
                "seed": 1000 + seed,
                "a": a,
                "b": b,
                "welch": {"statistic": float(t.statistic), "df": float(welch_df(a, b)), "p_value": float(t.pvalue)},
                "f_test": {"statistic": f_stat, "df1": dfn, "df2": dfd, "p_value": f_p},
            }
        )
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps({"generator": "scipy " + __import__("scipy").__version__, "cases": cases}, indent=1))
    print(f"wrote {len(cases)} cases to {OUT}")


if __name__ == "__main__":
    main()
