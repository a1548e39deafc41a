"""Distance spectral radius conditions for perfect matchings."""
