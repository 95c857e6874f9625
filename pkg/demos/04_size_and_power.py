"""
Size and power at n = 10000
===========================

Uniform samples check that the test holds its nominal 5% level. Von Mises
samples (mean 0, concentration 0.3) compare the power of exact P-values
against the stale n = 1000 critical value of 136.94 degrees.
"""

from raospacing.sim import ExperimentConfig, run_experiment

REPS = 1000
STALE = 136.94

for alternative, kappa in (("uniform", 0.0), ("von_mises", 0.3)):
    for method in ("gram_charlier", "fixed_critical_value"):
        cfg = ExperimentConfig(
            n=10_000,
            reps=REPS,
            alpha=0.05,
            alternative=alternative,
            kappa=kappa,
            seed=2025,
            method=method,
            fixed_critical_value_deg=STALE if method == "fixed_critical_value" else None,
        )
        rep = run_experiment(cfg)
        low, high = rep.wilson_ci_95
        print(
            f"{alternative:<10} {method:<21} reject {rep.reject:>4}/{rep.reps}"
            f"  rate {rep.rejection_rate:.3f}  95% CI ({low:.3f}, {high:.3f})"
        )
