"""Weakly Krull and related properties of affine monoids and their monoid algebras."""

__version__ = "0.1.0"

from .monoid import (AffineMonoid, FractionalIdeal, Verdict, analyze, build,
                     classify_t_primes, divisor_class_group, ideal_dual,
                     is_gcd, is_generalized_krull, is_krull, is_weakly_factorial,
                     is_weakly_krull, localization_membership, membership,
                     prime_spectrum, primary_component_exponents, root_closure,
                     v_closure, wk_oracle_direct)

__all__ = [
    "AffineMonoid", "FractionalIdeal", "Verdict", "analyze", "build",
    "classify_t_primes", "divisor_class_group", "ideal_dual", "is_gcd",
    "is_generalized_krull", "is_krull", "is_weakly_factorial", "is_weakly_krull",
    "localization_membership", "membership", "prime_spectrum",
    "primary_component_exponents", "root_closure", "v_closure", "wk_oracle_direct",
]
