"""Exact-arithmetic verification of Hecke eigenvalue tables over totally
real abelian fields: projective Frobenius orders, surjectivity certificates
via the subgroup classification of PGL2, Dedekind zeta values and Shimura
curve areas, and root-discriminant bounds."""

__version__ = "0.1.0"
