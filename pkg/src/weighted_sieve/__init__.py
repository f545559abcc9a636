"""Numerical weighted-sieve constants and exact representation counts."""
