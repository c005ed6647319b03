"""Arithmetic of a∘b = a + b - 3ab on the integers.

The map Σ(a) = 1 - 3a turns ∘ into ordinary multiplication on 1 + 3Z,
so factoring under ∘ is factoring within that multiplicative monoid.
"""
from ellgrp.rings import circ_factor, euclid_witness, is_circ_prime, sigma

print("∘-primes in [-10, 14]:", [a for a in range(-10, 15) if a and is_circ_prime(a)])

for a in (12, 43, -8, 100, 2024):
    f = circ_factor(a)
    print(f"{a:5d}: Σ = {sigma(a):6d}  ->  " + " ∘ ".join(map(str, f.factors)))

ps = [1, 2, 4, 6]
w = euclid_witness(ps)
print(f"\na ∘-prime outside {ps}: {w} (Σ = {sigma(w)})")
