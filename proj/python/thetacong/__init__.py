"""Congruences for r-colored partitions modulo primes."""

from ._core import (
    ThetacongError,
    abnormal_verify,
    brute_verify,
    build_f,
    dim_cusp_forms,
    dim_modular_forms,
    eta_pow,
    etafamily_verify,
    figure_pairs,
    inv_mod,
    kronecker,
    pr_exact,
    pr_mod,
    ramanujan_check,
    reduce_modulus,
    search,
    sigma,
    theta_detect_f,
)

__all__ = [name for name in dir() if not name.startswith("_")]
