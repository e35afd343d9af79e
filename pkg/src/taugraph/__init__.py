"""tau-factorizations and tau-irreducible divisor graphs over concrete domains."""
