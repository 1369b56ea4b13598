"""Learning a simplex from noisy uniform samples."""

from ._simplexlearn import (
    Simplex,
    SimplexLearnError,
    __version__,
    generate,
    learn,
    lemma3_bound,
    min_samples_lemma1,
    min_samples_selection,
    run_cli,
    sample_complexity_thm2,
    sample_complexity_thm3,
    standard_simplex,
    tv,
    tv_noisy_vs_clean,
)

__all__ = [
    "Simplex",
    "SimplexLearnError",
    "__version__",
    "generate",
    "learn",
    "lemma3_bound",
    "min_samples_lemma1",
    "min_samples_selection",
    "run_cli",
    "sample_complexity_thm2",
    "sample_complexity_thm3",
    "standard_simplex",
    "tv",
    "tv_noisy_vs_clean",
]
