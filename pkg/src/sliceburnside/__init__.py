"""Exact computations with Burnside and slice Burnside idempotents of small
finite groups: Möbius functions of subgroup lattices, the deflation
constants m_{G,N}, m_{G,S,N} and m°_{G,S,N}, B-groups, T- and T°-slices,
and the largest quotient T°-slice of a slice."""

__version__ = "0.1.0"
